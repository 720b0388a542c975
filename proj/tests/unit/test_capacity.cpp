#include <doctest.h>

#include "bvlab/capacity.hpp"
#include "bvlab/domains.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace bvlab;

namespace {

constexpr double pi = std::numbers::pi;

GridSpace square_grid(double half, double h, Weight w = {}) {
  const auto n = static_cast<Index>(std::llround(2 * half / h));
  return GridSpace(Point(-half, -half), n, n, h, w);
}

CellMask disk_cells(const GridSpace& s, const Point& c, double r) {
  CellMask a = CellMask::Constant(s.nx(), s.ny(), false);
  s.for_each_in_ball(Ball(c, r), [&](Index i, Index j) { a(i, j) = true; });
  return a;
}

ScalarField field(const GridSpace& s, const std::function<double(const Point&)>& f) {
  RealField v(s.nx(), s.ny());
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i) v(i, j) = f(s.center(i, j));
  return ScalarField(s, v);
}

void check_feasible(const CapacityValue& c, const CellMask& A, const std::optional<Ball>& b) {
  const auto& s = c.minimizer.space;
  const CellMask n = dilate_one_cell(A);
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i) {
      const double v = c.minimizer.values(i, j);
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
      if (n(i, j)) REQUIRE(v == 1.0);
      if (b && !b->dilate(2.0).contains(s.center(i, j))) REQUIRE(v == 0.0);
    }
}

}  // namespace

TEST_CASE("relative capacity of a disk") {
  // Any admissible set contains B(0, 1/2), so the optimum is that disk and
  // the value is its perimeter.
  const double h = 1.0 / 128;
  const auto s = square_grid(2.0625, h);
  const CellMask A = disk_cells(s, Point(0, 0), 0.5 + 1e-9);
  const Ball B(Point(0, 0), 1.0);
  const auto c = capacity(s, A, CapacityKind::rcap, B);
  CHECK(c.value == doctest::Approx(pi).epsilon(0.07));
  CHECK(c.value == doctest::Approx(capacity_functional(c.minimizer, CapacityKind::rcap)).epsilon(1e-9));
  CHECK(c.value == std::min(c.parametric_value, c.variational_value));
  CHECK(c.variational_value == doctest::Approx(c.parametric_value).epsilon(0.05));
  CHECK(c.iterations > 0);
  CHECK(c.final_gap < 1e-3 * c.initial_gap);
  check_feasible(c, A, B);

  // Radially symmetric indicators containing the fixed set: the cheapest
  // is the smallest one.
  const CellMask n = dilate_one_cell(A);
  double brute = std::numeric_limits<double>::infinity();
  for (double rho = 0.5; rho <= 0.6; rho += h / 8) {
    const CellMask e = disk_cells(s, Point(0, 0), rho);
    if ((n && !e).any()) continue;
    brute = std::min(brute, capacity_functional(ScalarField(s, e.cast<double>()), CapacityKind::rcap));
  }
  CHECK(c.value <= brute * 1.0001);
  CHECK(c.value >= 0.95 * brute);
}

TEST_CASE("BV capacity of disks") {
  // For small disks the disk itself wins: P + area.
  const double h = 1.0 / 128;
  const auto s = square_grid(1.0, h);
  for (double r : {0.1, 0.25, 0.4}) {
    const CellMask A = disk_cells(s, Point(0.1, -0.05), r);
    const auto c = capacity(s, A, CapacityKind::cap);
    const double rr = r + h;  // one-cell neighbourhood
    CHECK(c.value == doctest::Approx(2 * pi * rr + pi * rr * rr).epsilon(0.05));
    CHECK(c.value == doctest::Approx(capacity_functional(c.minimizer, CapacityKind::cap)).epsilon(1e-9));
    check_feasible(c, A, std::nullopt);
  }
}

TEST_CASE("empty sets and errors") {
  const auto s = square_grid(1.0, 1.0 / 32);
  const CellMask none = CellMask::Constant(s.nx(), s.ny(), false);
  CHECK(capacity(s, none, CapacityKind::cap).value == 0.0);
  CHECK(capacity(s, none, CapacityKind::rcap, Ball(Point(0, 0), 0.4)).value == 0.0);

  const CellMask A = disk_cells(s, Point(0, 0), 0.2);
  CHECK_THROWS_AS(capacity(s, A, CapacityKind::rcap), Error);
  CHECK_THROWS_AS(capacity(s, A, CapacityKind::rcap, Ball(Point(0.5, 0), 0.2)), Error);  // A not in B
  CHECK_THROWS_AS(capacity(s, A, CapacityKind::rcap, Ball(Point(0, 0), 0.6)), Error);    // 2B off the grid
  // A tight B is fine: 2B still holds the neighbourhood of A.
  CHECK_NOTHROW(capacity(s, A, CapacityKind::rcap, Ball(Point(0, 0), 0.21)));
  CapacityParams off;
  off.parametric = off.variational = false;
  CHECK_THROWS_AS(capacity(s, A, CapacityKind::cap, std::nullopt, off), Error);
  const CellMask edge = disk_cells(s, Point(-1, 0), 0.2);
  CHECK_THROWS_AS(capacity(s, edge, CapacityKind::cap), Error);
}

TEST_CASE("monotone in the set, decreasing in the ball") {
  const double h = 1.0 / 64;
  const auto s = square_grid(2.0, h);
  const Ball B(Point(0, 0), 0.9);
  const CellMask a1 = disk_cells(s, Point(0.1, 0), 0.2);
  CellMask a2 = a1 || disk_cells(s, Point(-0.3, 0.2), 0.25);
  CellMask a3 = a2;
  a3.block(s.nx() / 2 - 10, s.ny() / 2 - 30, 20, 60).setConstant(true);
  double prev_cap = 0, prev_rcap = 0;
  for (const CellMask* a : std::vector<const CellMask*>{&a1, &a2, &a3}) {
    const double c = capacity(s, *a, CapacityKind::cap).value;
    const double r = capacity(s, *a, CapacityKind::rcap, B).value;
    CHECK(prev_cap <= c * 1.02);
    CHECK(prev_rcap <= r * 1.02);
    CHECK(r <= c);
    prev_cap = c;
    prev_rcap = r;
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double R : {0.5, 0.7, 0.9}) {
    const double r = capacity(s, a1, CapacityKind::rcap, Ball(Point(0.1, 0), R)).value;
    CHECK(r <= prev * 1.02);
    prev = r;
  }
}

TEST_CASE("solver output passes the coarea rounding test") {
  const double h = 1.0 / 64;
  const auto s = square_grid(1.5, h);
  // Two disks close enough that filling the gap might pay.
  const CellMask A = disk_cells(s, Point(-0.2, 0), 0.15) || disk_cells(s, Point(0.2, 0), 0.15);
  CapacityParams p;
  p.parametric = false;
  for (CapacityKind k : {CapacityKind::cap, CapacityKind::rcap}) {
    const std::optional<Ball> B = k == CapacityKind::rcap ? std::optional<Ball>(Ball(Point(0, 0), 0.7)) : std::nullopt;
    const auto c = capacity(s, A, k, B, p);
    CHECK(c.method == CapacityMethod::variational);
    check_feasible(c, A, B);
    double best_level = std::numeric_limits<double>::infinity();
    for (int t = 1; t < 64; ++t) {
      const ScalarField e(s, (c.minimizer.values > t / 64.0).cast<double>());
      best_level = std::min(best_level, capacity_functional(e, k));
    }
    CHECK(c.value >= best_level * 0.98);
    const auto both = capacity(s, A, k, B);
    CHECK(both.value <= c.value);
  }
}

TEST_CASE("neighbourhoods against bare compact sets") {
  // A disk and a four-cell-wide bar: dropping the neighbourhood lowers the
  // capacity by a bounded factor. Thinner sets are below grid resolution.
  const double h = 1.0 / 64;
  const auto s = square_grid(1.5, h);
  CellMask seg = CellMask::Constant(s.nx(), s.ny(), false);
  seg.block(s.nx() / 2 - 20, s.ny() / 2 - 2, 40, 4).setConstant(true);
  CapacityParams bare;
  bare.neighborhood = false;
  for (const CellMask& A : std::vector<CellMask>{disk_cells(s, Point(0, 0), 0.3), seg}) {
    for (CapacityKind k : {CapacityKind::cap, CapacityKind::rcap}) {
      const std::optional<Ball> B = k == CapacityKind::rcap ? std::optional<Ball>(Ball(Point(0, 0), 0.7)) : std::nullopt;
      const double with = capacity(s, A, k, B).value;
      const double without = capacity(s, A, k, B, bare).value;
      CHECK(with >= without * 0.999);
      CHECK(with <= 2.0 * without);
    }
  }
}

TEST_CASE("Maz'ya inequality on a ring function") {
  // u = 0 on B(0, 1/2), rising to 1 at |x| = 3/2; B = B(0, 1).
  std::vector<MazyaReport> reps;
  for (double h : {1.0 / 32, 1.0 / 64}) {
    const auto s = square_grid(2.5, h);
    const auto u = field(s, [](const Point& p) { return std::clamp(p.norm() - 0.5, 0.0, 1.0); });
    const auto r = mazya_check(u, Ball(Point(0, 0), 1.0), 1.0);
    CHECK(r.Q == doctest::Approx(2).epsilon(0.05));
    CHECK(r.q == doctest::Approx(r.Q / (r.Q - 1)));
    CHECK_FALSE(r.vacuous);
    CHECK_FALSE(r.violation);
    CHECK(r.lhs > 0);
    CHECK(r.cap > r.rcap);
    // S is the disk of radius about 1/2 - 4h; rcap ~ perimeter of its neighbourhood
    const double rho = std::sqrt(double(r.zero_cells) / pi) * h + h;
    CHECK(r.rcap == doctest::Approx(2 * pi * rho).epsilon(0.1));
    CHECK(r.C_cap > 0);
    CHECK(r.C_rcap > 0);
    reps.push_back(r);
  }
  CHECK(reps[1].C_cap == doctest::Approx(reps[0].C_cap).epsilon(0.2));
  CHECK(reps[1].C_rcap == doctest::Approx(reps[0].C_rcap).epsilon(0.2));

  const auto s = square_grid(2.5, 1.0 / 32);
  const auto zero = mazya_check(field(s, [](const Point&) { return 0.0; }), Ball(Point(0, 0), 1.0), 1.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.C_cap == 0.0);
  CHECK_FALSE(zero.violation);
  const auto one = mazya_check(field(s, [](const Point&) { return 1.0; }), Ball(Point(0, 0), 1.0), 1.0);
  CHECK(one.vacuous);
  CHECK(one.zero_cells == 0);
}

TEST_CASE("zero sets exclude jump points") {
  const double h = 1.0 / 64;
  const auto s = square_grid(1.0, h);
  const auto jump = field(s, [](const Point& p) { return p.x() > 0 ? 1.0 : 0.0; });
  const CellMask z = zero_set(jump, Ball(Point(0, 0), 0.5));
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i)
      if (z(i, j)) {
        REQUIRE(s.center(i, j).x() <= h / 2 - 4 * h + 1e-12);  // nonzero centres start at h/2
        REQUIRE(s.center(i, j).norm() < 0.5);
      }
  CHECK(z.count() > 0);
}

TEST_CASE("mass exponent on weighted grids") {
  const auto plain = square_grid(2.0, 1.0 / 64);
  CHECK(local_mass_exponent(plain, Ball(Point(0.2, 0.1), 0.5)) == doctest::Approx(2).epsilon(0.05));
  const auto weighted = square_grid(2.0, 1.0 / 64, Weight::power(-1));
  const double Q = local_mass_exponent(weighted, Ball(Point(0, 0), 0.5));
  CHECK(Q > 1.2);
  CHECK(Q < 2.1);
  const auto u = field(weighted, [](const Point& p) { return std::max(0.0, p.x() - 0.1); });
  const auto r = mazya_check(u, Ball(Point(0, 0), 0.5), 1.0);
  CHECK_FALSE(r.vacuous);
  CHECK_FALSE(r.violation);
  CHECK(std::isfinite(r.C_cap));
  CHECK(r.C_rcap > 0);
}

TEST_CASE("measure-largeness Sobolev inequality") {
  const double h = 1.0 / 64;
  const auto s = square_grid(2.0, h);
  const Ball B(Point(0, 0), 0.5);
  const auto tent = field(s, [](const Point& p) { return std::max(0.0, std::min(p.x(), 0.5 - p.norm())); });
  const auto r = measure_largeness_sobolev_check(tent, B, 1.0);
  CHECK(r.mass_ratio == doctest::Approx(0.5).epsilon(0.05));
  CHECK(std::isfinite(r.C));
  CHECK(r.C > 0);
  CHECK(r.blow_up == doctest::Approx(1.0 / (1.0 - std::sqrt(r.mass_ratio))).epsilon(0.05));

  CHECK(measure_largeness_sobolev_check(field(s, [](const Point&) { return 0.0; }), B, 1.0).lhs == 0.0);
  CHECK_THROWS_AS(measure_largeness_sobolev_check(field(s, [](const Point&) { return 1.0; }), B, 1.0), Error);

  // Zero set shrinking to a small disk: u = (|x| - a)+ against the radial
  // continuum values of lhs, mass ratio and ||Du||(B(0, 1)) = pi (1 - a^2).
  std::vector<double> blow;
  for (double a : {0.3, 0.2, 0.1}) {
    const auto u = field(s, [a](const Point& p) { return std::max(0.0, p.norm() - a); });
    const auto rep = measure_largeness_sobolev_check(u, B, 1.0);
    REQUIRE(rep.q == doctest::Approx(2).epsilon(0.05));
    const int n = 4000;
    double m2 = 0;
    for (int k = 0; k < n; ++k) {
      const double rho = a + (0.5 - a) * (k + 0.5) / n;
      m2 += (rho - a) * (rho - a) * 2 * pi * rho * (0.5 - a) / n;
    }
    const double lhs = std::sqrt(m2 / (pi * 0.25));
    const double ratio = 1 - 4 * a * a;
    const double bl = 1 / (1 - std::sqrt(ratio));
    const double C = lhs / (0.5 * bl * (1 - a * a));
    CHECK(rep.mass_ratio == doctest::Approx(ratio).epsilon(0.05));
    CHECK(rep.lhs == doctest::Approx(lhs).epsilon(0.05));
    CHECK(rep.C == doctest::Approx(C).epsilon(0.15));
    blow.push_back(rep.blow_up);
  }
  CHECK(blow[2] > blow[1]);
  CHECK(blow[1] > blow[0]);
}

TEST_CASE("capacity JSON") {
  const auto s = square_grid(1.0, 1.0 / 32);
  const auto c = capacity(s, disk_cells(s, Point(0, 0), 0.2), CapacityKind::rcap, Ball(Point(0, 0), 0.3));
  const auto j = to_json(c);
  CHECK(j["kind"] == "rcap_BV");
  CHECK(j["value"].get<double>() == c.value);
  CHECK((j["method"] == "parametric" || j["method"] == "variational"));
}
