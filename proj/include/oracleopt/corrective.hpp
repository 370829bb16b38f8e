#pragma once

#include <optional>
#include <vector>

#include "oracleopt/geometry.hpp"

namespace oracleopt {

/// How a solver replaces its plain segment projection.
struct UpdateStrategy {
  enum class Kind {
    SegmentOnly,
    FullyCorrective,      // exact projection onto conv(A) every `frequency` iterations
    PartiallyCorrective,  // projection onto the current support plus the new atom
    SegmentPlusNonneg,    // packing only: segment search on dist(f, q - R^n_+)
  };

  Kind kind = Kind::SegmentOnly;
  int frequency = 1;
  int support_cap = 0;  // 0 selects 2 * dimension
  std::optional<int> sparsify_every;

  static UpdateStrategy segment_only() { return {}; }
  static UpdateStrategy fully_corrective(int k) {
    UpdateStrategy s;
    s.kind = Kind::FullyCorrective;
    s.frequency = k;
    return s;
  }
  static UpdateStrategy partially_corrective(int cap = 0) {
    UpdateStrategy s;
    s.kind = Kind::PartiallyCorrective;
    s.support_cap = cap;
    return s;
  }
  static UpdateStrategy nonneg() {
    UpdateStrategy s;
    s.kind = Kind::SegmentPlusNonneg;
    return s;
  }
  /// Table presets: 0 disables corrective steps, k > 0 runs one every k-th iteration.
  static UpdateStrategy from_frequency(int k) {
    return k == 0 ? segment_only() : fully_corrective(k);
  }

  /// Throws InvalidArgument on k < 1 or a cap below 2.
  void validate() const;
};

/// A point written as weights over an atom list, plus an optional
/// nonnegative slack: point = sum_i weights_i atoms_i - slack.
struct Combination {
  Vec point;
  std::vector<double> weights;
  Vec slack;
};

struct MinNormResult {
  Vec q;                        // projection of the target
  std::vector<double> weights;  // simplex weights over the atoms
  Vec slack;                    // q = sum weights * atoms - slack; zero unless recession_nonneg
  bool converged = true;
  int major_cycles = 0;
};

/// Euclidean projection of `target` onto conv(atoms), or onto
/// conv(atoms) - R^n_+ when `recession_nonneg` is set, by Wolfe's
/// minimum-norm-point active-set scheme applied to conv(atoms) - target
/// (with the negative unit vectors as rays). `warm_start` weights, when
/// given, seed the initial corral.
MinNormResult min_norm_point(const Vec& target, const std::vector<Vec>& atoms,
                             bool recession_nonneg,
                             const std::vector<double>* warm_start = nullptr);

/// q = projection of f_next onto conv(atoms) (minus R^n_+ if nonneg).
Combination fully_corrective_update(const std::vector<Vec>& atoms,
                                    const std::vector<double>& weights, const Vec& f_next,
                                    bool nonneg);

/// Projection of f_next onto conv(S) where S is the support of `weights`
/// plus `new_atom`, truncated to `cap` atoms by weight (new_atom always kept).
Combination partially_corrective_update(const std::vector<Vec>& atoms,
                                        const std::vector<double>& weights, int new_atom,
                                        const Vec& f_next, int cap, bool nonneg);

struct SparsifyResult {
  Vec q;
  std::vector<double> weights;
  double step = 0.0;  // lambda* of the ray q + lambda (f - q)
};

/// Moves q toward f as far as conv(atoms) allows and returns a basic
/// representation of the new point (at most n nonzero weights unless f
/// itself is reached).
SparsifyResult sparsify(const Vec& q, const Vec& f, const std::vector<Vec>& atoms,
                        const std::vector<double>& weights);

/// Minimizer of dist(f_next, q - R^n_+) over q in [q_t, v].
OrthantSegmentPoint nonneg_corrective_update(const Vec& f_next, const Vec& q_t, const Vec& v);

/// sum_i weights_i atoms_i.
Vec combine(const std::vector<Vec>& atoms, const std::vector<double>& weights);

}  // namespace oracleopt
