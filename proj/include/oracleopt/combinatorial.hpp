#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oracleopt/lp.hpp"
#include "oracleopt/oracle.hpp"

namespace oracleopt {

/// Simple undirected graph. Edges are stored with first < second.
struct Graph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  /// Normalizes, deduplicates and validates the edge list.
  Graph(int n, const std::vector<std::pair<int, int>>& edge_list);

  int num_edges() const { return static_cast<int>(edges.size()); }
  std::vector<std::vector<int>> adjacency() const;
};

/// DIMACS edge format: "c" comments, one "p edge n m" (or "p col n m")
/// header, then "e u v" lines with 1-based nodes.
Graph parse_dimacs(std::string_view text);
Graph read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment = {});

/// Union of the edges of r uniformly sampled node triples.
Graph generate_triangle_instance(int n_nodes, int n_triangles, std::uint64_t seed);
/// G(n, p).
Graph generate_random_graph(int n_nodes, double edge_probability, std::uint64_t seed);

inline constexpr int kDefaultOddSetCap = 9;

struct OddSetCut {
  std::vector<int> nodes;  // sorted
  double violation = 0.0;  // x(E[U]) - (|U| - 1) / 2
};

/// Most violated odd-set inequality among connected node sets of the
/// support graph with 3 <= |U| <= max_set_size. Exact whenever x satisfies
/// the degree constraints. Ties go to the lexicographically smallest set.
std::optional<OddSetCut> most_violated_oddset(const Graph& g, const Vec& x, int max_set_size,
                                              bool* cap_binding = nullptr);

/// Odd-set separation; the returned row is scaled to right-hand side 1.
SeparationResult separate_oddset(const Graph& g, const Vec& x, int max_set_size = kDefaultOddSetCap);

struct CliqueCut {
  std::vector<int> nodes;  // sorted
  double weight = 0.0;
};

/// Maximum-weight clique under node weights x (nonpositive weights are
/// ignored), by branch and bound with a greedy coloring bound.
CliqueCut max_weight_clique(const Graph& g, const Vec& x);

SeparationResult separate_clique(const Graph& g, const Vec& x);

enum class InitialRows { UpperBoundsOnly, Basic };

/// Matching polytope over the edge variables. Rows: nonnegativity, x_e <= 1,
/// degree rows and odd-set rows, most violated first.
class MatchingOracle final : public SeparationOracle {
 public:
  explicit MatchingOracle(Graph g, int max_set_size = kDefaultOddSetCap);

  SeparationResult separate(const Vec& x) const override;
  Eigen::Index dimension() const override { return graph_.num_edges(); }
  double outer_radius() const override;
  std::optional<double> inner_radius() const override;

  const Graph& graph() const { return graph_; }
  /// Inside verdicts given while some support component exceeded the cap.
  int cap_binding_count() const { return cap_binding_.load(); }

 private:
  Graph graph_;
  int max_set_size_;
  std::vector<std::vector<int>> incident_;
  mutable std::atomic<int> cap_binding_{0};
};

/// Stable set polytope relaxed by all clique inequalities.
class StableSetOracle final : public SeparationOracle {
 public:
  explicit StableSetOracle(Graph g);

  SeparationResult separate(const Vec& x) const override;
  Eigen::Index dimension() const override { return graph_.num_nodes; }
  double outer_radius() const override;
  std::optional<double> inner_radius() const override;

  const Graph& graph() const { return graph_; }

 private:
  Graph graph_;
};

/// Upper bounds, plus degree rows for Basic.
std::vector<Constraint> matching_initial_rows(const Graph& g, InitialRows preset);
/// Upper bounds, plus edge rows for Basic.
std::vector<Constraint> stable_set_initial_rows(const Graph& g, InitialRows preset);

/// max <1, x> over x >= 0 and the given rows.
LinearProgram packing_lp(Eigen::Index dim, const std::vector<Constraint>& rows);

/// Exact maximum matching size by memoized enumeration; at most 24 nodes.
double brute_force_matching_opt(const Graph& g);
/// Maximum matching size by Edmonds' algorithm.
double max_matching_size(const Graph& g);
/// Edge indicator of a maximum matching.
Vec maximum_matching_indicator(const Graph& g);
/// Optimum of the clique relaxation over all maximal cliques; at most 30 nodes.
double clique_relaxation_opt(const Graph& g);
LpSolution clique_relaxation_solution(const Graph& g);
/// All maximal cliques, each sorted.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

}  // namespace oracleopt
