#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fdalloc/mo_solver.hpp"

using namespace fdalloc;

namespace {

// G = [0, c] in one dimension, maximize y.
class Toy1D : public MoProblem {
 public:
  explicit Toy1D(double c) : c_(c) {}
  int dimension() const override { return 1; }
  double objective(std::span<const double> y) const override { return y[0]; }
  Projection project(std::span<const double> y) const override {
    return {c_ / y[0], {c_}};
  }
  bool feasible(std::span<const double> y, double tol) const override {
    return y[0] <= c_ * (1.0 + tol);
  }
  Point origin() const override { return {0.0}; }
  Point initial_vertex() const override { return {c_}; }

 private:
  double c_;
};

// G = unit disc (intersected with the nonnegative quadrant), maximize y1+y2.
class Disc2D : public MoProblem {
 public:
  int dimension() const override { return 2; }
  double objective(std::span<const double> y) const override { return y[0] + y[1]; }
  Projection project(std::span<const double> y) const override {
    const double norm = std::hypot(y[0], y[1]);
    const double lambda = norm > 0.0 ? 1.0 / norm : 1e9;
    return {lambda, {y[0] * lambda, y[1] * lambda}};
  }
  bool feasible(std::span<const double> y, double tol) const override {
    return std::hypot(y[0], y[1]) <= 1.0 + tol;
  }
  Point origin() const override { return {0.0, 0.0}; }
  Point initial_vertex() const override { return {1.0, 1.0}; }
};

class InfeasibleProblem : public Toy1D {
 public:
  InfeasibleProblem() : Toy1D(1.0) {}
  Point initial_vertex() const override {
    throw InfeasibleError(InfeasibleError::Reason::TotalBandwidth, "empty");
  }
};

Point pt(std::initializer_list<double> v) { return Point(v); }

}  // namespace

TEST_CASE("cut_polyblock hand example") {
  std::vector<Point> verts{pt({4.0, 4.0})};
  std::vector<Point> tstar{pt({4.0, 4.0})};
  auto out = cut_polyblock(verts, tstar, pt({2.0, 3.0}));
  REQUIRE(out.size() == 2);
  std::sort(out.begin(), out.end());
  CHECK(out[0] == pt({2.0, 4.0}));
  CHECK(out[1] == pt({4.0, 3.0}));
}

TEST_CASE("cut at the vertex itself reproduces it after improper-removal") {
  std::vector<Point> verts{pt({4.0, 4.0})};
  std::vector<Point> tstar{pt({4.0, 4.0})};
  auto out = cut_polyblock(verts, tstar, pt({4.0, 4.0}));
  REQUIRE(out.size() == 2);
  auto proper = remove_improper(out);
  REQUIRE(proper.size() == 1);
  CHECK(proper[0] == pt({4.0, 4.0}));
}

TEST_CASE("cut_polyblock rejects a projection point above a cut vertex") {
  std::vector<Point> verts{pt({4.0, 4.0})};
  std::vector<Point> tstar{pt({4.0, 4.0})};
  CHECK_THROWS_AS(cut_polyblock(verts, tstar, pt({2.0, 5.0})), std::invalid_argument);
}

TEST_CASE("cut containment against a membership brute force") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(u(rng) * 3);  // dimension 2..4
    std::vector<Point> verts;
    for (int v = 0; v < 4; ++v) {
      Point p(n);
      for (auto& x : p) x = 1.0 + 4.0 * u(rng);
      verts.push_back(p);
    }
    verts = remove_improper(verts);
    // cut the vertex with the largest sum through an interior point x <= v*
    auto best = std::max_element(verts.begin(), verts.end(), [](const Point& a, const Point& b) {
      double sa = 0.0, sb = 0.0;
      for (double x : a) sa += x;
      for (double x : b) sb += x;
      return sa < sb;
    });
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = (*best)[i] * (0.3 + 0.6 * u(rng));
    std::vector<Point> tstar;
    for (const auto& v : verts) {
      bool greater = true;
      for (int i = 0; i < n; ++i) greater = greater && v[i] > x[i];
      if (greater) tstar.push_back(v);
    }
    if (tstar.empty()) continue;
    auto next = cut_polyblock(verts, tstar, x);

    int checked = 0;
    for (int s = 0; s < 500; ++s) {
      Point p(n);
      for (int i = 0; i < n; ++i) p[i] = 5.2 * u(rng);
      if (!polyblock_contains(verts, p)) continue;
      bool below_x_somewhere = false;
      for (int i = 0; i < n; ++i) below_x_somewhere = below_x_somewhere || p[i] <= x[i];
      if (below_x_somewhere) {
        CHECK(polyblock_contains(next, p));
        ++checked;
      }
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("remove_improper") {
  SUBCASE("dominated vertex dropped") {
    auto out = remove_improper({pt({1.0, 2.0}), pt({2.0, 2.0})});
    REQUIRE(out.size() == 1);
    CHECK(out[0] == pt({2.0, 2.0}));
  }
  SUBCASE("antichain unchanged") {
    std::vector<Point> anti{pt({3.0, 1.0}), pt({2.0, 2.0}), pt({1.0, 3.0})};
    auto out = remove_improper(anti);
    CHECK(out.size() == 3);
  }
  SUBCASE("duplicates collapse to one") {
    auto out = remove_improper({pt({1.0, 1.0}), pt({1.0, 1.0})});
    CHECK(out.size() == 1);
  }
  SUBCASE("matches the quadratic dominance oracle on random sets") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> verts;
    for (int i = 0; i < 1000; ++i) verts.push_back(pt({u(rng), u(rng), u(rng)}));
    auto fast = remove_improper(verts);
    // oracle: keep exactly the non-dominated points
    std::vector<Point> oracle;
    for (const auto& a : verts) {
      bool dominated = false;
      for (const auto& b : verts) {
        if (&a == &b || b == a) continue;
        dominated = b[0] >= a[0] && b[1] >= a[1] && b[2] >= a[2];
        if (dominated) break;
      }
      if (!dominated) oracle.push_back(a);
    }
    std::sort(fast.begin(), fast.end());
    std::sort(oracle.begin(), oracle.end());
    CHECK(fast == oracle);
  }
}

TEST_CASE("1-D toy converges in one iteration") {
  Toy1D prob(3.5);
  const SolverReport rep = solve(prob, [] { SolverOptions o; o.eps = 1e-6; return o; }());
  CHECK(rep.status == SolveStatus::Converged);
  CHECK(rep.iterations == 1);
  CHECK(rep.best_value == doctest::Approx(3.5));
  CHECK(rep.gap == 0.0);
}

TEST_CASE("2-D disc converges to the symmetric optimum") {
  Disc2D prob;
  const double eps = 1e-4;
  const SolverReport rep = solve(prob, [&] { SolverOptions o; o.eps = eps; return o; }());
  CHECK(rep.status == SolveStatus::Converged);
  CHECK(rep.best_value <= std::sqrt(2.0) + 1e-9);
  CHECK(rep.best_value >= std::sqrt(2.0) - eps);
  CHECK(std::hypot(rep.best_point[0], rep.best_point[1]) == doctest::Approx(1.0).epsilon(1e-6));

  SUBCASE("trace invariants") {
    double prev_ub = std::numeric_limits<double>::infinity();
    double prev_cbv = -std::numeric_limits<double>::infinity();
    for (const auto& tr : rep.trace) {
      CHECK(tr.upper_bound <= prev_ub + 1e-12);
      CHECK(tr.best_value >= prev_cbv - 1e-12);
      CHECK(tr.best_value <= tr.upper_bound + 1e-12);
      prev_ub = tr.upper_bound;
      prev_cbv = tr.best_value;
    }
    CHECK(rep.gap <= eps);
  }
}

TEST_CASE("solver events: selection is the argmax and polyblocks nest") {
  Disc2D prob;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SolverOptions opts;
  opts.eps = 1e-3;
  int iterations_seen = 0;
  opts.observer = [&](const IterationEvent& ev) {
    ++iterations_seen;
    // selected vertex attains the maximum objective over the vertex set
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : ev.vertices_before) best = std::max(best, prob.objective(v));
    CHECK(ev.selected_value == doctest::Approx(best).epsilon(1e-12));
    // every point of the new polyblock lies in the old one
    for (int s = 0; s < 100; ++s) {
      Point p{1.5 * u(rng), 1.5 * u(rng)};
      if (polyblock_contains(ev.vertices_after, p)) CHECK(polyblock_contains(ev.vertices_before, p));
    }
    // feasible samples stay inside the new polyblock
    for (int s = 0; s < 100; ++s) {
      const double ang = u(rng) * 1.5707963, r = u(rng);
      Point p{r * std::cos(ang), r * std::sin(ang)};
      CHECK(polyblock_contains(ev.vertices_after, p));
    }
    // every incumbent is feasible
    if (!ev.projection.empty()) CHECK(prob.feasible(ev.projection, 1e-8));
  };
  solve(prob, opts);
  CHECK(iterations_seen > 3);
}

TEST_CASE("infeasible initializer reports Infeasible") {
  InfeasibleProblem prob;
  const SolverReport rep = solve(prob, [] { SolverOptions o; o.eps = 1e-3; return o; }());
  CHECK(rep.status == SolveStatus::Infeasible);
  CHECK(rep.best_point.empty());
}

TEST_CASE("iteration cap reports the honest gap") {
  Disc2D prob;
  SolverOptions opts;
  opts.eps = 1e-12;
  opts.max_iter = 5;
  const SolverReport rep = solve(prob, opts);
  CHECK(rep.status == SolveStatus::IterationCap);
  CHECK(rep.iterations == 5);
  CHECK(rep.gap > 0.0);
}

TEST_CASE("relative gap termination rule") {
  Disc2D prob;
  SolverOptions opts;
  opts.eps = 1e-3;
  opts.relative_gap = true;
  const SolverReport rep = solve(prob, opts);
  CHECK(rep.status == SolveStatus::Converged);
  CHECK(rep.gap <= opts.eps * (1.0 + rep.best_value));
}
