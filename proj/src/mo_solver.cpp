#include "fdalloc/mo_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdalloc {

namespace {

double cmp_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

// a >= b componentwise within relative tolerance.
bool dominates(std::span<const double> a, std::span<const double> b, double rtol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i] - rtol * cmp_scale(a[i], b[i])) return false;
  return true;
}

bool strictly_greater(std::span<const double> a, std::span<const double> b, double rtol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] <= b[i] + rtol * cmp_scale(a[i], b[i])) return false;
  return true;
}

bool nearly_equal(std::span<const double> a, std::span<const double> b, double rtol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > rtol * cmp_scale(a[i], b[i])) return false;
  return true;
}

}  // namespace

std::vector<Point> cut_polyblock(const std::vector<Point>& vertices,
                                 const std::vector<Point>& tstar, std::span<const double> x) {
  const std::size_t n = x.size();
  for (const auto& v : tstar) {
    if (v.size() != n) throw std::invalid_argument("cut_polyblock: dimension mismatch");
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] > v[j] + 1e-12 * cmp_scale(x[j], v[j]))
        throw std::invalid_argument("cut_polyblock: projection point exceeds a cut vertex");
  }
  auto in_tstar = [&](const Point& v) {
    return std::any_of(tstar.begin(), tstar.end(), [&](const Point& t) { return t == v; });
  };
  std::vector<Point> out;
  out.reserve(vertices.size() + tstar.size() * n);
  for (const auto& v : vertices)
    if (!in_tstar(v)) out.push_back(v);
  for (const auto& v : tstar) {
    for (std::size_t j = 0; j < n; ++j) {
      Point child = v;
      child[j] = x[j];
      out.push_back(std::move(child));
    }
  }
  return out;
}

std::vector<Point> remove_improper(std::vector<Point> vertices, double rtol) {
  std::vector<bool> drop(vertices.size(), false);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = 0; j < vertices.size() && !drop[i]; ++j) {
      if (i == j) continue;
      if (!dominates(vertices[j], vertices[i], rtol)) continue;
      if (nearly_equal(vertices[i], vertices[j], rtol)) {
        drop[i] = j < i;  // collapse duplicates onto the first occurrence
      } else {
        drop[i] = true;
      }
    }
  }
  std::vector<Point> out;
  out.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!drop[i]) out.push_back(std::move(vertices[i]));
  return out;
}

bool polyblock_contains(std::span<const Point> vertices, std::span<const double> p, double rtol) {
  return std::any_of(vertices.begin(), vertices.end(),
                     [&](const Point& v) { return dominates(v, p, rtol); });
}

SolverReport solve(const MoProblem& problem, const SolverOptions& options) {
  if (!(options.eps > 0.0)) throw std::domain_error("solve: eps must be > 0");
  SolverReport report;
  Point origin = problem.origin();
  Point v0;
  try {
    v0 = problem.initial_vertex();
  } catch (const InfeasibleError&) {
    report.status = SolveStatus::Infeasible;
    return report;
  }
  const std::size_t n = v0.size();
  const double rtol = options.dominance_rtol;

  std::vector<Point> verts{v0};
  std::vector<double> phi{problem.objective(v0)};

  double cbv = -std::numeric_limits<double>::infinity();
  Point cbs;

  long j = 0;
  while (j < options.max_iter) {
    ++j;
    // Select the vertex maximizing the objective (first index on ties).
    std::size_t best = 0;
    for (std::size_t i = 1; i < verts.size(); ++i)
      if (phi[i] > phi[best]) best = i;
    const double ub = phi[best];
    const Point selected = verts[best];

    auto proj = problem.project(selected);

    std::vector<Point> before;
    if (options.observer) before = verts;

    if (proj.lambda >= 1.0 - 1e-9) {
      // Selected vertex lies on (or inside) the upper boundary: it maximizes
      // the objective over a set containing the feasible region and is
      // itself attainable.
      cbv = ub;
      cbs = selected;
      report.trace.push_back({j, ub, cbv, verts.size()});
      if (options.observer) {
        options.observer({j, selected, ub, before, verts, {}, proj.lambda, cbv});
      }
      report.gap = 0.0;
      report.status = SolveStatus::Converged;
      break;
    }

    const Point& x = proj.point;
    const double fx = problem.objective(x);
    if (fx >= cbv) {
      cbv = fx;
      cbs = x;
    }

    // Cut every vertex strictly dominating the boundary point.
    std::vector<std::size_t> cut_idx;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (strictly_greater(verts[i], x, rtol)) cut_idx.push_back(i);

    std::vector<Point> children;
    children.reserve(cut_idx.size() * n);
    for (std::size_t ci : cut_idx) {
      for (std::size_t d = 0; d < n; ++d) {
        Point child = verts[ci];
        child[d] = x[d];
        children.push_back(std::move(child));
      }
    }

    if (cut_idx.empty()) {
      // Numerical impasse: the boundary point touches the selected vertex in
      // some coordinate, so the cut cannot exclude it. Drop the vertex to
      // guarantee progress.
      cut_idx.push_back(best);
    }

    // Remove cut vertices (descending order keeps indices valid).
    for (auto it = cut_idx.rbegin(); it != cut_idx.rend(); ++it) {
      verts[*it] = std::move(verts.back());
      verts.pop_back();
      phi[*it] = phi.back();
      phi.pop_back();
    }

    // Prune children against each other; against the surviving set too while
    // it is small enough for exact maintenance.
    std::vector<bool> drop(children.size(), false);
    for (std::size_t a = 0; a < children.size(); ++a) {
      for (std::size_t b = 0; b < children.size() && !drop[a]; ++b) {
        if (a == b) continue;
        if (!dominates(children[b], children[a], rtol)) continue;
        drop[a] = nearly_equal(children[a], children[b], rtol) ? (b < a) : true;
      }
      if (!drop[a] && verts.size() <= options.full_prune_limit)
        drop[a] = std::any_of(verts.begin(), verts.end(),
                              [&](const Point& v) { return dominates(v, children[a], rtol); });
    }
    std::vector<Point> kept;
    kept.reserve(children.size());
    for (std::size_t a = 0; a < children.size(); ++a)
      if (!drop[a]) kept.push_back(std::move(children[a]));
    if (verts.size() <= options.full_prune_limit) {
      for (std::size_t i = 0; i < verts.size();) {
        const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Point& c) {
          return dominates(c, verts[i], rtol) && !nearly_equal(c, verts[i], rtol);
        });
        if (dominated) {
          verts[i] = std::move(verts.back());
          verts.pop_back();
          phi[i] = phi.back();
          phi.pop_back();
        } else {
          ++i;
        }
      }
    }
    for (auto& c : kept) {
      phi.push_back(problem.objective(c));
      verts.push_back(std::move(c));
    }

    report.trace.push_back({j, ub, cbv, verts.size()});
    if (options.observer) {
      options.observer({j, selected, ub, before, verts, x, proj.lambda, cbv});
    }

    const bool done = options.relative_gap ? ((1.0 + options.eps) * cbv >= ub)
                                           : (ub - cbv <= options.eps);
    if (done || verts.empty()) {
      report.gap = verts.empty() ? 0.0 : ub - cbv;
      report.status = SolveStatus::Converged;
      break;
    }
    if (j == options.max_iter) {
      report.gap = ub - cbv;
      report.status = SolveStatus::IterationCap;
    }
  }

  report.best_point = cbs;
  report.best_value = cbv;
  report.iterations = j;
  return report;
}

}  // namespace fdalloc
