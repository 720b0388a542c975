#include <doctest.h>

#include "bvlab/functions.hpp"
#include "bvlab/whitney.hpp"

#include <cmath>
#include <random>

using namespace bvlab;

namespace {

// Overlap by testing every cell against every ball.
int brute_overlap(const WhitneyCover& c, double tau) {
  const GridSpace& s = c.domain.space;
  int best = 0;
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i) {
      int n = 0;
      for (const Ball& b : c.balls) n += b.dilate(tau).contains(s.center(i, j));
      best = std::max(best, n);
    }
  return best;
}

// u_W from the definition: plain loops for the ball means and the bumps.
RealField brute_u_W(const ScalarField& u, const WhitneyCover& c) {
  const GridSpace& s = c.domain.space;
  std::vector<double> mean;
  for (const Ball& b : c.balls) {
    double num = 0, den = 0;
    for (Index j = 0; j < s.ny(); ++j)
      for (Index i = 0; i < s.nx(); ++i)
        if (c.domain.inside(i, j) && b.contains(s.center(i, j))) {
          num += u.values(i, j) * s.mass()(i, j);
          den += s.mass()(i, j);
        }
    mean.push_back(num / den);
  }
  RealField out = RealField::Zero(s.nx(), s.ny());
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i) {
      if (!c.domain.inside(i, j)) continue;
      double num = 0, den = 0;
      for (size_t k = 0; k < c.balls.size(); ++k) {
        const Ball& b = c.balls[k];
        const double t = (s.center(i, j) - b.center).norm();
        const double psi = t <= b.radius ? 1.0 : std::max(0.0, 2.0 - t / b.radius);
        num += mean[k] * psi;
        den += psi;
      }
      out(i, j) = num / den;
    }
  return out;
}

double l1_diff(const ScalarField& a, const ScalarField& b) {
  return ScalarField(a.space, a.values - b.values, a.support && b.support).l1();
}

}  // namespace

TEST_CASE("radius rule at the square's centre") {
  const double h = 1.0 / 64;
  const auto sq = make_domain("unit_square", h);
  const auto c = build_cover(sq, std::numeric_limits<double>::infinity(), 1.0);
  double rmax = 0;
  for (const Ball& b : c.balls) rmax = std::max(rmax, b.radius);
  CHECK(rmax == doctest::Approx(0.025).epsilon(h / 0.5));
  CHECK(rmax <= 0.025);
  CHECK(c.excluded.empty());
  CHECK_THROWS_AS(build_cover(sq, 0.1, 0.5), Error);
  DomainMask empty = sq;
  empty.inside.setConstant(false);
  CHECK_THROWS_AS(build_cover(empty, 0.1, 1.0), Error);
}

TEST_CASE("cover properties hold exactly") {
  const double h = 1.0 / 128;
  for (const char* name : {"unit_square", "disk", "exterior_cusp"}) {
    const auto om = make_domain(name, h);
    for (double lam : {1.0, 2.0})
      for (double R : {0.25, 1.0 / 16, 1.0 / 64}) {
        CAPTURE(name);
        CAPTURE(lam);
        CAPTURE(R);
        const auto c = build_cover(om, R, lam);
        const auto chk = verify_cover(c);
        CHECK(chk.covering);
        CHECK(chk.radius_rule);
        CHECK(chk.comparable);
        CHECK(chk.separated);
        CHECK(chk.pairs_checked > 0);
      }
  }
}

TEST_CASE("overlap count matches brute force and ignores the scale") {
  const auto sq = make_domain("unit_square", 1.0 / 48);
  const auto c = build_cover(sq, 0.25, 1.0);
  CHECK(c.overlap_C0 == brute_overlap(c, 5.0));
  CHECK(overlap_count(c, 1.0) == brute_overlap(c, 1.0));

  const auto big = make_domain("unit_square", 1.0 / 128);
  const int c4 = build_cover(big, 1.0 / 4, 1.0).overlap_C0;
  const int c8 = build_cover(big, 1.0 / 8, 1.0).overlap_C0;
  const int c16 = build_cover(big, 1.0 / 16, 1.0).overlap_C0;
  CHECK(std::abs(c4 - c8) <= 1);
  CHECK(std::abs(c4 - c16) <= 1);
  // Measured C0 on the unit square at lambda = 1, refined once.
  const int fine = build_cover(make_domain("unit_square", 1.0 / 256), 0.25, 1.0).overlap_C0;
  CHECK(c4 > 1);
  CHECK(std::abs(fine - c4) <= 0.2 * c4);
}

TEST_CASE("cusp balls shrink towards the tip") {
  const double h = 1.0 / 256;
  const auto cusp = make_domain("exterior_cusp", h);
  const auto c = build_cover(cusp, 0.25, 1.0);
  int near_tip = 0;
  for (const Ball& b : c.balls) {
    const double x1 = b.center.x();
    if (x1 > 0.4) continue;
    ++near_tip;
    // The wall |y| = x1^2 is within x1^2 of the axis point.
    CHECK(20.0 * b.radius <= x1 * x1 + h);
  }
  CHECK(near_tip > 0);
  CHECK(verify_cover(c).separated);

  const auto excl = build_cover(cusp, 0.25, 1.0, 4 * h);
  CHECK(!excl.excluded.empty());
  CHECK(verify_cover(excl).covering);
}

TEST_CASE("partition of unity") {
  const double h = 1.0 / 64;
  const auto disk = make_domain("disk", h);

  SUBCASE("one ball over everything") {
    WhitneyCover one{disk, RealField::Zero(disk.space.nx(), disk.space.ny()), {Ball(Point(0, 0), 2.0)},
                     {*disk.space.locate(Point(0, 0))}, 2.0, 1.0, 1, {}};
    const PartitionOfUnity p(one);
    const auto phi = p.phi(0);
    CHECK(static_cast<Index>(phi.size()) == disk.count());
    for (const auto& [cell, v] : phi) CHECK(v == 1.0);
  }

  const auto c = build_cover(disk, 0.25, 1.0);
  const PartitionOfUnity p(c);
  RealField total = RealField::Zero(disk.space.nx(), disk.space.ny());
  for (size_t j = 0; j < c.balls.size(); ++j)
    for (const auto& [cell, v] : p.phi(j)) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      total(cell.i, cell.j) += v;
    }

  std::mt19937_64 rng(7);
  std::vector<Cell> cells;
  for (Index j = 0; j < disk.space.ny(); ++j)
    for (Index i = 0; i < disk.space.nx(); ++i)
      if (disk.inside(i, j)) cells.push_back({i, j});
  std::uniform_int_distribution<size_t> pick(0, cells.size() - 1);
  double worst = 0;
  for (int k = 0; k < 1000000; ++k) {
    const Cell& q = cells[pick(rng)];
    worst = std::max(worst, std::abs(total(q.i, q.j) - 1.0));
  }
  CHECK(worst <= 1e-12);

  // Support in 2B_j, every ball against every cell.
  bool contained = true;
  for (size_t j = 0; j < c.balls.size(); ++j)
    for (Index b = 0; b < disk.space.ny(); ++b)
      for (Index a = 0; a < disk.space.nx(); ++a) {
        const Point y = disk.space.center(a, b);
        if (p.psi(j, y) > 0 && !c.balls[j].dilate(2.0).contains(y)) contained = false;
      }
  CHECK(contained);

  const double lip = p.lipschitz_constant();
  CHECK(lip > 0);
  CHECK(lip < 5);
  const auto fine = make_domain("disk", h / 2);
  const auto cf = build_cover(fine, 0.25, 1.0);
  CHECK(PartitionOfUnity(cf).lipschitz_constant(3) == doctest::Approx(lip).epsilon(0.5));
}

TEST_CASE("discrete convolution") {
  const double h = 1.0 / 32;
  const auto sq = make_domain("unit_square", h);
  const auto c = build_cover(sq, 1.0 / 16, 1.0);
  const PartitionOfUnity p(c);

  SUBCASE("matches the definition") {
    for (const char* f : {"coordinate:k=1", "half_indicator:a=0.5", "bump"}) {
      const auto u = sample_function(f, sq);
      const auto conv = discrete_convolution(u, p);
      const RealField ref = brute_u_W(u, c);
      CHECK(sq.inside.select((conv.u_W.values - ref).abs(), 0.0).maxCoeff() <= 1e-12);
    }
  }

  SUBCASE("constants, linearity, order") {
    const auto k = discrete_convolution(sample_function("constant:c=2.5", sq), p);
    CHECK(sq.inside.select((k.u_W.values - 2.5).abs(), 0.0).maxCoeff() <= 1e-12);

    const auto u = sample_function("coordinate:k=1", sq);
    const auto v = sample_function("bump", sq);
    const ScalarField w(sq.space, 2 * u.values - 3 * v.values, sq.inside);
    const auto cu = discrete_convolution(u, p), cv = discrete_convolution(v, p), cw = discrete_convolution(w, p);
    CHECK(sq.inside.select((cw.u_W.values - 2 * cu.u_W.values + 3 * cv.u_W.values).abs(), 0.0).maxCoeff() <=
          1e-12);
    const ScalarField upper(sq.space, u.values + v.values, sq.inside);
    const auto cup = discrete_convolution(upper, p);
    CHECK((sq.inside && cup.u_W.values < cu.u_W.values).count() == 0);
  }

  SUBCASE("error bound for a unit-slope function") {
    // |u_B - u(y)| <= 2 r_j whenever y is in 2B_j, and the phi_j average it.
    const auto u = sample_function("coordinate:k=1", sq);
    const auto conv = discrete_convolution(u, p);
    RealField bound = RealField::Zero(sq.space.nx(), sq.space.ny());
    for (size_t j = 0; j < c.balls.size(); ++j)
      p.for_each_support_cell(j, [&](Index a, Index b, double) {
        bound(a, b) = std::max(bound(a, b), 2 * c.balls[j].radius);
      });
    CHECK((sq.inside && (conv.u_W.values - u.values).abs() > bound + 1e-12).count() == 0);
  }
}

TEST_CASE("discrete convolutions converge as the scale drops") {
  const double h = 1.0 / 512;
  const auto sq = make_domain("unit_square", h, {}, 8 * h);
  for (const char* f : {"coordinate:k=1", "tent", "half_indicator:a=0.5"}) {
    CAPTURE(f);
    const auto u = sample_function(f, sq);
    const RealField tv = variation_density(u);
    const double tvu = tv.sum();
    double prev = std::numeric_limits<double>::infinity();
    std::vector<double> g_ratio;
    for (double R : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
      const auto c = build_cover(sq, R, 1.0);
      const auto conv = discrete_convolution(u, PartitionOfUnity(c), &tv);
      const double err = l1_diff(conv.u_W, u);
      CHECK(err < prev);
      prev = err;
      g_ratio.push_back((conv.upper_gradient * sq.space.mass()).sum() / tvu);
    }
    const auto [lo, hi] = std::minmax_element(g_ratio.begin(), g_ratio.end());
    CHECK(*lo > 1.0);
    CHECK(*hi / *lo < 3.0);
  }
}

TEST_CASE("chain estimate near the boundary") {
  double C[2] = {0, 0};
  int k = 0;
  for (double h : {1.0 / 128, 1.0 / 256}) {
    const auto sq = make_domain("unit_square", h);
    for (const char* f : {"coordinate:k=1", "tent", "bump", "constant:c=1"}) {
      const auto u = sample_function(f, sq);
      const RealField tv = variation_density(u);
      for (double R : {1.0 / 32, 1.0 / 64}) {
        const auto c = build_cover(sq, R, 1.0);
        const auto conv = discrete_convolution(u, PartitionOfUnity(c), &tv);
        for (const auto& s : sq.boundary_samples(12))
          for (double r : {1.0 / 8, 1.0 / 16})
            C[k] = std::max(C[k], boundary_chain_ratio(u, conv.u_W, tv, s.point, r));
      }
    }
    ++k;
  }
  CHECK(std::isfinite(C[0]));
  CHECK(C[0] > 0);
  CHECK(C[1] == doctest::Approx(C[0]).epsilon(0.3));
}

TEST_CASE("truncation") {
  const auto sq = make_domain("unit_square", 1.0 / 64);
  const auto u = sample_function("coordinate:k=1", sq);
  CHECK((truncate(u, 2.0).values == u.values).all());
  const auto lo = truncate(u, 0.3), hi = truncate(u, 0.6);
  CHECK((lo.values <= hi.values).all());
  CHECK(lo.values.abs().maxCoeff() <= 0.3);
  CHECK_THROWS_AS(truncate(u, 0.0), Error);

  // Coarea tail: ||D(u - u_n)|| = int_n^max P({u > t}) dt. For |x|^-1/2 on the
  // weighted cusp P({u > t}) = 2 t^-2, and the grid caps u at a^-1/2.
  const double h = 1.0 / 1024;
  const auto cusp = make_domain("exterior_cusp", h, Weight::power(-1));
  const auto p = sample_function("radial_power:alpha=-0.5", cusp);
  const double a = std::sqrt(h / 2);
  double prev = std::numeric_limits<double>::infinity();
  for (double n : {2.0, 3.0, 4.0}) {
    CAPTURE(n);
    const ScalarField tail(cusp.space, p.values - truncate(p, n).values, p.support);
    const double tv = total_variation(tail).total;
    const double bv = tail.l1() + tv;
    CHECK(tv == doctest::Approx(2 * (1 / n - std::sqrt(a))).epsilon(0.1));
    CHECK(bv < prev);
    prev = bv;
  }
}

TEST_CASE("pasted approximations") {
  const double h = 1.0 / 256;
  const auto sq = make_domain("unit_square", h);
  std::vector<WhitneyCover> covers;
  for (double R : {1.0 / 16, 1.0 / 32, 1.0 / 64}) covers.push_back(build_cover(sq, R, 1.0));

  const auto smooth = pasted_approximation(sample_function("bump", sq), covers, 8 * h, Point(0.5, 0.5));
  CHECK(smooth.tv_gap.back() <= 0.05);

  const auto jump = pasted_approximation(sample_function("half_indicator:a=0.5", sq), covers, 8 * h,
                                         Point(0.5, 0.5));
  CHECK(jump.l1_gap.back() <= jump.l1_gap.front());
  CHECK(jump.l1_gap.back() < 1e-3);
  CHECK(jump.tv_gap.back() <= 0.10);

  CHECK_THROWS_AS(pasted_approximation(sample_function("bump", sq), covers, 1.2, Point(0.5, 0.5)), Error);
}

TEST_CASE("compactly supported approximation") {
  const double h = 1.0 / 256;
  const auto sq = make_domain("unit_square", h);
  const auto tent = sample_function("tent", sq);
  double prev_l1 = std::numeric_limits<double>::infinity(), prev_tv = prev_l1;
  for (double delta : {32 * h, 16 * h, 8 * h}) {
    const auto r = compact_support_approximation(tent, sq, delta, 1.0 / 32);
    CHECK(r.l1_gap < prev_l1);
    CHECK(r.tv_gap < prev_tv);
    prev_l1 = r.l1_gap;
    prev_tv = r.tv_gap;
    // Nothing survives within delta of the complement.
    const RealField d = r.field.values;
    bool clean = true;
    for (Index j = 0; j < sq.space.ny(); ++j)
      for (Index i = 0; i < sq.space.nx(); ++i) {
        const Point x = sq.space.center(i, j);
        const double dist = std::min({x.x(), 1 - x.x(), x.y(), 1 - x.y()});
        if (sq.inside(i, j) && dist < delta - h && d(i, j) != 0.0) clean = false;
      }
    CHECK(clean);
  }
  CHECK_THROWS_WITH_AS(compact_support_approximation(sample_function("constant:c=1", sq), sq, 8 * h, 1.0 / 32),
                       "not in BV0", Error);
  const auto zero = compact_support_approximation(sample_function("constant:c=0", sq), sq, 8 * h, 1.0 / 32);
  CHECK(zero.l1_gap == 0.0);
  CHECK(zero.tv_gap == 0.0);
  CHECK(zero.field.values.abs().maxCoeff() == 0.0);
}

TEST_CASE("cover serialisation") {
  const auto sq = make_domain("unit_square", 1.0 / 32);
  const auto c = build_cover(sq, 1.0 / 8, 2.0);
  const auto j = to_json(c);
  CHECK(j["lambda"] == 2.0);
  CHECK(j["scale_R"] == 0.125);
  CHECK(j["balls"].size() == c.balls.size());
  CHECK(j["balls"][0][2] == c.balls[0].radius);
  CHECK(to_json(build_cover(sq, std::numeric_limits<double>::infinity(), 1.0))["scale_R"] == "inf");
}
