#pragma once

#include <stdexcept>
#include <string>

namespace fdalloc {

/// Thrown when a problem instance has an empty feasible set.
class InfeasibleError : public std::runtime_error {
 public:
  enum class Reason {
    PairPowerCeiling,   // a pair cannot meet its quality floors within the power caps
    TotalBandwidth,     // the per-pair minimum bandwidths exceed the system bandwidth
    TargetUnreachable,  // an inversion target cannot be met within its search ceiling
    QualityFloor,       // a baseline cannot meet a minimum-quality constraint
  };

  InfeasibleError(Reason reason, std::string what, int pair_index = -1)
      : std::runtime_error(std::move(what)), reason_(reason), pair_index_(pair_index) {}

  Reason reason() const { return reason_; }
  /// Index of the offending pair, or -1 when not pair-specific.
  int pair_index() const { return pair_index_; }

 private:
  Reason reason_;
  int pair_index_;
};

/// Thrown by the boundary projection when no peak-power pattern admits a
/// solution; signals a contract violation (the queried point lies below the
/// reach of the feasible region).
class NoFeasiblePatternError : public std::runtime_error {
 public:
  explicit NoFeasiblePatternError(std::string what) : std::runtime_error(std::move(what)) {}
};

}  // namespace fdalloc
