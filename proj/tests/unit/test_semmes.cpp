#include <doctest.h>

#include "bvlab/bvcalc.hpp"
#include "bvlab/domains.hpp"
#include "bvlab/functions.hpp"
#include "bvlab/semmes.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

using namespace bvlab;

namespace {

constexpr double pi = std::numbers::pi;

// Second coordinate by the three displayed cases, first match wins.
double casewise(double x1, double y1, double s, double t) {
  const double z = x1 + t;
  if (y1 - z >= z * z) return t <= z * z && z <= 1 ? s * t : s * z * z;
  return -s * (t + x1 - y1);
}

// 1/2 int over A of dz / g(z1) on |z2| < g(z1): the occupation of the
// family, since s -> s g(z1) sweeps the column at speed g.
double occupation_oracle(const CurveFamily& f, const Rect& A) {
  const int n = 20000;
  const double a1 = std::max(A.min().x(), f.x1), a2 = std::min(A.max().x(), f.y1);
  if (a2 <= a1) return 0.0;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double z1 = a1 + (a2 - a1) * (k + 0.5) / n;
    const double t = z1 - f.x1;
    const double g = std::min({t, z1 * z1, f.y1 - z1});
    const double len = std::max(0.0, std::min(g, A.max().y()) - std::max(-g, A.min().y()));
    total += 0.5 * len / g * (a2 - a1) / n;
  }
  return total;
}

}  // namespace

TEST_CASE("family construction") {
  const auto f = build_family(0.2, 0.8, 64, 512);
  REQUIRE(f.curves.size() == 64);
  double total = 0;
  for (double a : f.alpha) total += a;
  CHECK(total == doctest::Approx(1.0));
  for (const auto& c : f.curves) {
    CHECK((c.points.front() - f.x()).norm() < 1e-14);
    CHECK((c.points.back() - f.y()).norm() < 1e-14);
  }
  CHECK(max_distance_to_closure(f) == 0.0);
  const auto [lo, hi] = speed_range(f);
  CHECK(lo >= 1.0 - 1e-12);
  CHECK(hi <= f.speed_bound);

  // s = 0 is the axis segment.
  const auto g = build_family(0.2, 0.8, 1, 100);
  CHECK(g.curves[0].s == 0.0);
  for (const auto& p : g.curves[0].points) CHECK(p.y() == 0.0);
}

TEST_CASE("case sequence for x1 = 0.2, y1 = 0.8") {
  // Pencil until t = (x1 + t)^2, parabola until y1 - z1 = z1^2, then the
  // converging pencil.
  const double x1 = 0.2, y1 = 0.8;
  const double t_a = (0.6 - std::sqrt(0.2)) / 2;
  const double z_b = (-1 + std::sqrt(1 + 4 * y1)) / 2;
  for (double t : {0.01, 0.05, t_a - 1e-6})
    CHECK(semmes_case(x1, y1, t) == SemmesCase::pencil);
  for (double t : {t_a + 1e-6, 0.2, z_b - x1 - 1e-6}) {
    CHECK(semmes_case(x1, y1, t) == SemmesCase::parabola);
    // (x1 + t, t) has left the closure.
    CHECK_FALSE(CuspParams{}.in_closure(Point(x1 + t, t)));
    const Point p = semmes_point(x1, y1, 0.5, t);
    CHECK(p.y() == doctest::Approx(0.5 * p.x() * p.x()));
  }
  for (double t : {z_b - x1 + 1e-6, 0.5, 0.6})
    CHECK(semmes_case(x1, y1, t) == SemmesCase::converging);

  const auto f = build_family(x1, y1, 16, 400);
  CHECK_FALSE(f.casewise_jump);
  for (const auto& c : f.curves)
    for (size_t k = 0; k < c.points.size(); ++k)
      CHECK(c.points[k].y() == doctest::Approx(casewise(x1, y1, c.s, c.points[k].x() - x1)).epsilon(1e-12));
}

TEST_CASE("the casewise formula jumps when the two pencils meet directly") {
  // x1 >= 1/4: no parabola phase, so the pencil from x meets the converging
  // case at a height below y1 - z1.
  const double x1 = 0.3, y1 = 0.9;
  const auto f = build_family(x1, y1, 8, 512);
  CHECK(f.casewise_jump);
  const double z_b = (-1 + std::sqrt(1 + 4 * y1)) / 2;
  const double t = z_b - x1 + 1e-9;
  // jump of height z_b^2 - (z_b - x1) at s = 1
  CHECK(std::abs(casewise(x1, y1, 1, t) - casewise(x1, y1, 1, t - 2e-9)) ==
        doctest::Approx(z_b * z_b - (z_b - x1)).epsilon(1e-6));
  // The returned curves stay continuous and inside the closure.
  const auto [lo, hi] = speed_range(f);
  CHECK(hi <= f.speed_bound);
  CHECK(max_distance_to_closure(f) == 0.0);
  CHECK_FALSE(build_family(0.05, 0.95).casewise_jump);
}

TEST_CASE("endpoint errors") {
  CHECK_THROWS_WITH_AS(build_family(Point(0.2, 0.01), Point(0.8, 0)), "endpoints must lie on the cusp axis", Error);
  CHECK_THROWS_AS(build_family(0.8, 0.2), Error);
  CHECK_THROWS_AS(build_family(0.0, 0.5), Error);
  CHECK_THROWS_AS(build_family(0.2, 1.0), Error);
  CHECK_NOTHROW(build_family(Point(0.2, 0), Point(0.8, 0)));
}

TEST_CASE("occupation against the column oracle") {
  for (auto [x1, y1] : {std::pair{0.05, 0.95}, std::pair{0.2, 0.8}}) {
    const auto f1 = build_family(x1, y1, 256, 512);
    const auto f4 = build_family(x1, y1, 1024, 2048);
    for (const Rect& A : tip_rectangles(f1, 50)) {
      const double o = occupation_oracle(f1, A);
      const double tol = 2 * f1.dt / A.sizes().x();
      CHECK(curve_occupation(f1, A) == doctest::Approx(o).epsilon(tol));
      CHECK(curve_occupation(f4, A) == doctest::Approx(o).epsilon(tol / 4 + 2e-3));
    }
  }
  const auto f = build_family(0.2, 0.8);
  CHECK(curve_occupation(f, Rect()) == 0.0);
  CHECK(curve_occupation(f, Rect(Point(0.5, 0.4), Point(0.6, 0.5))) == 0.0);
}

TEST_CASE("parabola regime occupation is half the z1^-2 integral") {
  const auto f = build_family(0.05, 0.95, 512, 4096);
  // z1 in (0.1, 0.5) is inside the parabola phase for these endpoints.
  REQUIRE(semmes_case(0.05, 0.95, 0.05) == SemmesCase::parabola);
  REQUIRE(semmes_case(0.05, 0.95, 0.45) == SemmesCase::parabola);
  const Rect A(Point(0.1, -0.01), Point(0.5, 0.02));
  const int n = 40000;
  double I = 0;
  for (int k = 0; k < n; ++k) {
    const double z1 = 0.1 + 0.4 * (k + 0.5) / n;
    const double len = std::max(0.0, std::min(z1 * z1, 0.02) - std::max(-z1 * z1, -0.01));
    I += len / (z1 * z1) * 0.4 / n;
  }
  CHECK(curve_occupation(f, A) == doctest::Approx(0.5 * I).epsilon(0.01));
}

TEST_CASE("ball masses in the cusp") {
  const CuspParams plain;
  // Small balls at an axis point lie inside Omega.
  CHECK(cusp_ball_mass(plain, 0.5, 0.05) == doctest::Approx(pi * 0.0025).epsilon(1e-4));
  // Large balls hold the whole cusp: int_0^1 2 z^2 = 2/3.
  CHECK(cusp_ball_mass(plain, 0.5, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-4));
  CuspParams w;
  w.alpha = -1;
  // int_0^1 2 asinh(z) dz
  CHECK(cusp_ball_mass(w, 0.5, 2.0) == doctest::Approx(2 * (std::asinh(1.0) - std::sqrt(2.0) + 1)).epsilon(1e-4));
  CuspParams g;
  g.alpha = -0.5;  // generic exponent path against the closed forms' limit
  CHECK(cusp_ball_mass(g, 0.5, 0.01) == doctest::Approx(pi * 1e-4 / std::sqrt(0.5)).epsilon(2e-3));
  // Table interpolation.
  const RieszKernel k(plain, 0.2);
  for (double r : {1e-3, 0.03, 0.3, 0.9})
    CHECK(k.ball_mass(r) == doctest::Approx(cusp_ball_mass(plain, 0.2, r)).epsilon(1e-3));
}

TEST_CASE("Riesz kernel lower bound in the parabola regime") {
  for (auto [x1, y1] : {std::pair{0.05, 0.95}, std::pair{0.1, 0.9}, std::pair{0.2, 0.8}}) {
    const auto rep = kernel_lower_bound_check(build_family(x1, y1, 4, 64), 100);
    CHECK(rep.points.size() == 100);
    CHECK(rep.min_ratio >= 0.95);
    for (const auto& z : rep.points) CHECK(semmes_case(x1, y1, z.x() - x1) == SemmesCase::parabola);
  }
  CHECK_THROWS_AS(kernel_lower_bound_check(build_family(0.3, 0.9, 4, 64)), Error);
}

TEST_CASE("Semmes constant over tip rectangles") {
  for (double alpha : {0.0, -1.0}) {
    CuspParams cp;
    cp.alpha = alpha;
    for (auto [x1, y1] : {std::pair{0.05, 0.95}, std::pair{0.2, 0.8}}) {
      const auto f = build_family(x1, y1, 256, 512, cp);
      const auto rects = tip_rectangles(f, 50);
      REQUIRE(rects.size() == 50);
      const auto c = check_semmes_condition(f, rects);
      const auto d = check_semmes_condition(build_family(x1, y1, 512, 1024, cp), rects);
      CHECK(std::isfinite(c.C));
      CHECK(c.C > 0);
      CHECK(c.violations.empty());
      CHECK(d.C == doctest::Approx(c.C).epsilon(0.25));
      for (size_t a = 0; a < rects.size(); ++a) CHECK(c.lhs[a] <= c.C * c.rhs[a] * (1 + 1e-12));
    }
  }
  // Empty and off-cusp sets.
  const auto f = build_family(0.2, 0.8, 32, 64);
  const auto c = check_semmes_condition(f, {Rect(), Rect(Point(0.5, 0.4), Point(0.6, 0.5))});
  CHECK(c.lhs[0] == 0.0);
  CHECK(c.rhs[1] == 0.0);
  CHECK(c.violations.empty());
  CHECK(c.C == 0.0);
  CHECK(to_json(c)["ratio"].size() == 2);
}

TEST_CASE("polyline export") {
  const auto f = build_family(0.2, 0.8, 3, 10);
  const auto path = (std::filesystem::temp_directory_path() / "bvlab_semmes.csv").string();
  write_family_csv(f, path);
  std::ifstream in(path);
  std::string line;
  int n = 0;
  std::getline(in, line);
  CHECK(line == "curve,s,t,x1,x2,case");
  while (std::getline(in, line)) ++n;
  CHECK(n == 3 * 11);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_family_csv(f, "/nonexistent/dir/f.csv"), Error);
}

TEST_CASE("direct Poincare check on the cusp with lambda = 2") {
  const auto cusp = make_domain("exterior_cusp", 1.0 / 256);
  std::vector<Ball> balls;
  for (double x : {0.15, 0.3, 0.5, 0.7, 0.9})
    for (double r : {0.05, 0.1}) balls.emplace_back(Point(x, 0), r);
  for (const char* spec : {"coordinate:k=1", "tent", "half_indicator:a=0.5"}) {
    const auto rep = poincare_BV_check(sample_function(spec, cusp), balls, 2);
    CHECK(std::isfinite(rep.max_constant));
    for (bool v : rep.violations) CHECK_FALSE(v);
  }
}
