#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "oracleopt/trace.hpp"

namespace oracleopt::detail {

// LP stop-bound bookkeeping shared by the solvers. The bound only changes
// when new rows were separated, so it is recomputed lazily.
class LpTracker {
 public:
  explicit LpTracker(const StopRule& stop) : stop_(stop) {}

  // The LP bound when it was (re)computed at this row.
  std::optional<double> update(const std::vector<Constraint>& separated, int iteration) {
    if (!stop_.lp) return std::nullopt;
    const LpStopRule& rule = *stop_.lp;
    if (value_ && iteration % rule.every != 0) return std::nullopt;
    if (value_ && seen_ == separated.size()) return value_;
    value_ = lp_stop_bound(rule.base, separated);
    seen_ = separated.size();
    return value_;
  }

  bool reached() const {
    if (!stop_.lp || !value_) return false;
    const double ref = stop_.lp->reference_opt;
    return *value_ <= stop_.lp->factor * ref + 1e-9 * std::max(1.0, std::abs(ref));
  }

  std::optional<double> value() const { return value_; }

 private:
  const StopRule& stop_;
  std::optional<double> value_;
  std::size_t seen_ = 0;
};

}  // namespace oracleopt::detail
