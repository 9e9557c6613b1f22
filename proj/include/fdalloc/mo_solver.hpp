#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fdalloc/errors.hpp"

namespace fdalloc {

using Point = std::vector<double>;

/// Maximization of an increasing objective over the intersection of a
/// compact normal set G and a closed conormal set, posed through oracles.
class MoProblem {
 public:
  virtual ~MoProblem() = default;

  virtual int dimension() const = 0;

  /// Increasing objective; may return -inf outside its domain.
  virtual double objective(std::span<const double> y) const = 0;

  struct Projection {
    double lambda;  // scale along the ray from the origin u through y
    Point point;    // lambda*(y-u)+u, on the upper boundary of G
  };

  /// Projection of y onto the upper boundary of G along the ray from the
  /// origin. Defined for y >= origin componentwise.
  virtual Projection project(std::span<const double> y) const = 0;

  /// Membership oracle for the feasible set at the given tolerance.
  virtual bool feasible(std::span<const double> y, double tol) const = 0;

  /// Ray origin u (feasible floor).
  virtual Point origin() const = 0;

  /// Vertex of the smallest box known to enclose the feasible set.
  /// Throws InfeasibleError when the feasible set is empty.
  virtual Point initial_vertex() const = 0;
};

enum class SolveStatus { Converged, Infeasible, IterationCap };

struct TraceRow {
  long iteration;
  double upper_bound;
  double best_value;
  std::size_t vertex_count;
};

struct SolverReport {
  Point best_point;
  double best_value = 0.0;
  std::vector<TraceRow> trace;
  double gap = 0.0;
  long iterations = 0;
  SolveStatus status = SolveStatus::Converged;
};

/// Per-iteration view handed to an observer; spans are valid only during the
/// callback.
struct IterationEvent {
  long iteration;
  std::span<const double> selected_vertex;
  double selected_value;
  std::span<const Point> vertices_before;  // proper vertex set before the cut
  std::span<const Point> vertices_after;   // vertex set after cut + prune
  std::span<const double> projection;      // boundary point x (empty if lambda >= 1)
  double lambda;
  double best_value;
};

struct SolverOptions {
  double eps = 1e-3;
  long max_iter = 100000;
  /// false: stop on |Phi(Y_j) - Omega_j| <= eps (the normative rule);
  /// true: stop on (1+eps)*Omega_j >= Phi(Y_j).
  bool relative_gap = false;
  /// Relative tolerance for dominance/equality comparisons between vertices.
  double dominance_rtol = 1e-12;
  /// Exact improper-vertex sweeps are run periodically while the vertex set
  /// is at most this large; local pruning is always applied.
  std::size_t full_prune_limit = 4096;
  std::function<void(const IterationEvent&)> observer;
};

/// Vertex replacement of the polyblock cut: returns
/// (T \ T*) u { v + (x_j - v_j) e_j : v in T*, j = 1..n }.
/// Preconditions: T* is a subset of `vertices` (by value) and x <= v
/// componentwise for every v in T*; violation throws std::invalid_argument.
std::vector<Point> cut_polyblock(const std::vector<Point>& vertices,
                                 const std::vector<Point>& tstar, std::span<const double> x);

/// Retains exactly the maximal elements under componentwise <= (with relative
/// tolerance); exact duplicates collapse to one representative.
std::vector<Point> remove_improper(std::vector<Point> vertices, double rtol = 1e-12);

/// Point-in-polyblock membership: true iff some vertex dominates p.
bool polyblock_contains(std::span<const Point> vertices, std::span<const double> p,
                        double rtol = 1e-12);

/// Polyblock outer approximation: iteratively selects the best vertex,
/// projects it onto the upper boundary, updates the incumbent, and cuts the
/// enclosing polyblock until the bound gap falls below eps.
SolverReport solve(const MoProblem& problem, const SolverOptions& options = {});

}  // namespace fdalloc
