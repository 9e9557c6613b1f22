#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fdalloc/ec_model.hpp"
#include "fdalloc/mo_solver.hpp"
#include "fdalloc/quality.hpp"

namespace fdalloc {

/// All per-pair physical, QoS and quality parameters. User 1 transmits the
/// quality_1 stream at power p1 (decoded under self-interference mu_2*p2 at
/// its peer), and symmetrically for user 2.
struct PairSpec {
  double theta_1, theta_2;  ///< QoS exponents (1/bit)
  double mu_1, mu_2;        ///< self-interference suppression factors, in (0,1]
  double p1_max, p2_max;    ///< peak transmit powers (W)
  double w_1, w_2;          ///< objective weights in [0,1]
  QualityModel quality_1, quality_2;
  ChannelModel channel;

  void validate() const;

  double theta(int user) const { return user == 0 ? theta_1 : theta_2; }
  double p_max(int user) const { return user == 0 ? p1_max : p2_max; }
  double weight(int user) const { return user == 0 ? w_1 : w_2; }
  const QualityModel& quality(int user) const { return user == 0 ? quality_1 : quality_2; }
  /// Suppression factor entering user `user`'s kernel (the peer's).
  double mu_other(int user) const { return user == 0 ? mu_2 : mu_1; }
};

struct SystemSpec {
  std::vector<PairSpec> pairs;
  double total_bw;  ///< Hz
  double n0;        ///< W/Hz
  double tc;        ///< s
  double eps = 1e-3;

  void validate() const;
  int num_pairs() const { return static_cast<int>(pairs.size()); }
  int dimension() const { return 2 * num_pairs(); }
  LinkRadioParams radio(int pair, int user) const;
};

/// Physical allocation and the per-user performance it achieves.
/// Vector index convention matches the solver coordinates: user i of pair k
/// sits at (i-1)*K + k (0-based: i*K + k).
struct Allocation {
  std::vector<double> bw;     // K
  std::vector<double> p1, p2; // K each
  std::vector<double> rates;  // 2K, bit/s
  std::vector<double> psnr;   // 2K, dB
  double weighted_sum_quality = 0.0;
};

/// Checks the allocation invariants (bandwidth budget, power caps, quality
/// floors); throws std::logic_error naming the first violation.
void validate_allocation(const Allocation& alloc, const SystemSpec& spec);

/// Objective in kernel coordinates:
///   sum_k sum_i w_ik * [a_ik * ln(ln(Y)/(theta_ik*tc)/1000) + b_ik].
/// Coordinates at or below 1 with positive weight map to -inf.
double phi(std::span<const double> y, const SystemSpec& spec);

struct InitBox {
  Point origin;  ///< u = componentwise max(V_min, 1)
  Point vertex;  ///< v' = componentwise max of the kernel over the feasible set
};

/// Enclosing-box initialization: per-pair minimum bandwidths with one power
/// pinned at peak, feasibility checks, then the componentwise kernel maxima
/// at each pair's maximal bandwidth. Throws InfeasibleError.
InitBox init_polyblock(const SystemSpec& spec);

struct FdProjection {
  double lambda;
  Point point;       // lambda*(y-u)+u
  Allocation alloc;  // boundary-supporting allocation
};

/// Boundary projection along the ray from `origin` through y: enumerates the
/// 2^K peak-power patterns, solves each pattern's 2K+1 equations for
/// (lambda, free powers, bandwidths), and keeps the admissible pattern with
/// the largest lambda. Throws NoFeasiblePatternError.
FdProjection project(std::span<const double> y, const SystemSpec& spec,
                     std::span<const double> origin);

/// True iff y is at or above both floors and some allocation dominates it
/// (projection scale >= 1 - 1e-9).
bool feasibility_check(std::span<const double> y, const SystemSpec& spec);

/// MoProblem adapter for the full-duplex allocation problem.
class FdMoProblem : public MoProblem {
 public:
  explicit FdMoProblem(SystemSpec spec);  // throws InfeasibleError

  int dimension() const override { return spec_.dimension(); }
  double objective(std::span<const double> y) const override { return phi(y, spec_); }
  Projection project(std::span<const double> y) const override;
  bool feasible(std::span<const double> y, double tol) const override;
  Point origin() const override { return box_.origin; }
  Point initial_vertex() const override { return box_.vertex; }

  const SystemSpec& spec() const { return spec_; }
  const InitBox& box() const { return box_; }
  FdProjection project_full(std::span<const double> y) const;

 private:
  SystemSpec spec_;
  InitBox box_;
};

/// End-to-end solve: initialization, polyblock iteration, and recovery of
/// the physical allocation behind the final solution.
std::pair<Allocation, SolverReport> solve_fd(const SystemSpec& spec);
std::pair<Allocation, SolverReport> solve_fd(const SystemSpec& spec, SolverOptions options);

namespace detail {

enum class PairSolveMethod { NewtonWithFallback, PureBisection };

struct PairSystemSolution {
  double bw;
  double p_free;
};

/// Solves the per-pair two-equation system at fixed targets: user `pin`
/// transmits at peak power, and (bandwidth, free power) are chosen so both
/// users' log-kernels hit (ln_t1, ln_t2). Returns nullopt when the targets
/// need more than `bw_ceiling` of bandwidth. The free power is solved
/// without a cap; admissibility is the caller's decision.
std::optional<PairSystemSolution> solve_pair_system(
    const PairSpec& pair, const SystemSpec& sys, int pin, double ln_t1, double ln_t2,
    double bw_hint, double bw_ceiling,
    PairSolveMethod method = PairSolveMethod::NewtonWithFallback,
    const PairSystemSolution* warm_start = nullptr);

}  // namespace detail

}  // namespace fdalloc
