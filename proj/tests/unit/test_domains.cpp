#include <doctest.h>

#include "bvlab/distance.hpp"
#include "bvlab/domains.hpp"
#include "bvlab/hausdorff.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

using namespace bvlab;

TEST_CASE("catalog rasterisation") {
  const auto sq = make_domain("unit_square", 1.0 / 512);
  CHECK(sq.count() == 512 * 512);

  const auto cusp = make_domain("exterior_cusp:beta=2", 1.0 / 512);
  const double area = mu(cusp.space, cusp.inside);
  CHECK(area == doctest::Approx(2.0 / 3).epsilon(0.02));

  const auto strip = make_domain(parse_domain_spec("strip:i=4"), cusp.space);
  for (Index j = 0; j < strip.space.ny(); ++j)
    for (Index i = 0; i < strip.space.nx(); ++i) {
      const Point c = strip.space.center(i, j);
      REQUIRE(strip.inside(i, j) == (c.x() > 0 && c.x() < 0.25 && std::abs(c.y()) < c.x() * c.x()));
    }
  CHECK((strip.inside && !cusp.inside).count() == 0);

  const auto slit = make_domain("slit_disk", 1.0 / 256);
  const auto c = slit.space.locate(Point(0.5, 0));
  REQUIRE(c);
  CHECK(std::abs(slit.space.center(c->i, c->j).y()) < 1e-12);
  CHECK_FALSE(slit.inside(c->i, c->j));
  CHECK(slit.inside(c->i, c->j + 1));
  CHECK(slit.inside(c->i, c->j - 1));

  const auto koch = make_domain("koch_prefix:level=3", 1.0 / 256);
  // Snowflake area: triangle area * (1 + 3/5 (1 - (4/9)^k)).
  const double tri = std::sqrt(3.0) / 4;
  CHECK(mu(koch.space, koch.inside) == doctest::Approx(tri * (1 + 0.6 * (1 - std::pow(4.0 / 9, 3)))).epsilon(0.02));

  const auto cantor = make_domain("cantor_complement:level=2", 1.0 / 243);
  CHECK(mu(cantor.space, cantor.inside) == doctest::Approx(1 - std::pow(4.0 / 9, 2)).epsilon(0.01));
}

TEST_CASE("domain errors and parsing") {
  CHECK_THROWS_WITH_AS(make_domain("cantor_complement:level=5", 1.0 / 256), "under-resolved domain", Error);
  CHECK_THROWS_WITH_AS(make_domain("koch_prefix:level=5", 1.0 / 256), "under-resolved domain", Error);
  CHECK_THROWS_AS(make_domain("blob", 1.0 / 64), Error);
  CHECK_THROWS_AS(parse_domain_spec("disk:r"), Error);
  const auto s = parse_domain_spec("exterior_cusp:beta=3");
  CHECK(s.kind == "exterior_cusp");
  CHECK(s.param("beta", 2) == 3);
  CHECK(parse_domain_spec(s.str()).params == s.params);
}

TEST_CASE("boundary samples lie on the analytic boundary") {
  const auto cusp = make_domain("exterior_cusp", 1.0 / 128);
  const auto samples = cusp.boundary_samples(21);
  CHECK(samples.size() == 21);
  CHECK(samples.front().part == "tip");
  for (const auto& s : samples) {
    const Point& p = s.point;
    if (s.part == "wall") CHECK(std::abs(std::abs(p.y()) - p.x() * p.x()) < 1e-12);
    if (s.part == "edge") CHECK(p.x() == 1.0);
  }
  const auto slit = make_domain("slit_disk", 1.0 / 128);
  for (const auto& s : slit.boundary_samples(20, "slit")) CHECK(s.point.y() == 0.0);
  for (const auto& s : slit.boundary_samples(20, "arc")) CHECK(s.point.norm() == doctest::Approx(1.0));
}

TEST_CASE("measure-theoretic boundary") {
  const double h = 1.0 / 256;
  const auto disk = make_domain("disk:r=0.5", h);
  const auto star = measure_theoretic_boundary(disk, {16 * h, 8 * h, 4 * h});
  const auto topo = topological_boundary(disk);
  CHECK(star.cells.count() > 0);
  CHECK((star.cells && !topo.cells).count() == 0);
  for (const auto& p : star.points()) CHECK(std::abs(p.norm() - 0.5) <= 1.5 * h);

  DomainMask full = disk;
  full.inside.setConstant(true);
  CHECK(measure_theoretic_boundary(full, {8 * h, 4 * h}).cells.count() == 0);

  // The slit is invisible to density once the radii see past one cell row.
  const double hs = 1.0 / 512;
  const auto slit = make_domain("slit_disk", hs);
  const auto sstar = measure_theoretic_boundary(slit, {32 * hs, 16 * hs});
  for (double x : {0.3, 0.5, 0.7}) {
    const auto c = slit.space.locate(Point(x, 0));
    REQUIRE(c);
    CHECK(topological_boundary(slit).cells(c->i, c->j));
    CHECK_FALSE(sstar.cells(c->i, c->j));
  }
}

TEST_CASE("measure density condition") {
  const double h = 1.0 / 256;
  const std::vector<double> radii{1.0 / 8, 1.0 / 16, 1.0 / 32};
  const auto sq = make_domain("unit_square", h);
  auto rep = check_measure_density(sq, {Point(0, 0), Point(1, 1), Point(0.5, 0), Point(1, 0.3)}, radii);
  CHECK(rep.c_m == doctest::Approx(0.25).epsilon(0.05));
  CHECK(rep.failures.empty());
  CHECK(rep.gamma <= 0.5);

  const auto cusp = make_domain("exterior_cusp", 1.0 / 512);
  rep = check_measure_density(cusp, {Point(0, 0)}, {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32});
  CHECK(rep.failures.size() == 1);

  const auto slit = make_domain("slit_disk", 1.0 / 512);
  rep = check_measure_density(slit, {Point(0.5, 0)}, {1.0 / 8, 1.0 / 16, 1.0 / 32});
  CHECK(rep.c_m == doctest::Approx(1.0).epsilon(0.03));

  const auto icusp = make_domain("interior_cusp", 1.0 / 256);
  rep = check_measure_density(icusp, sample_points(icusp.boundary_samples(30)), radii);
  CHECK(rep.failures.empty());
  CHECK(rep.c_m > 0.2);
}

TEST_CASE("codimension boundary condition") {
  const double h = 1.0 / 256;
  const auto sq = make_domain("unit_square", h);
  const auto rep = check_codim_boundary(sq, sample_points(sq.boundary_samples(12)), {1.0 / 8, 1.0 / 16});
  CHECK(rep.C_bdry > 0.5);
  CHECK(rep.C_bdry < 3.0);

  // Finer snowflake prefixes carry more boundary per ball.
  double prev = 0;
  for (int level : {1, 3, 5}) {
    const auto k = make_domain("koch_prefix:level=" + std::to_string(level), 1.0 / 1024);
    const auto r = check_codim_boundary(k, sample_points(k.boundary_samples(6)), {1.0 / 16});
    CAPTURE(level);
    CHECK(r.C_bdry > prev);
    prev = r.C_bdry;
  }
}

TEST_CASE("shrunken domains") {
  const double h = 1.0 / 256;
  const auto sq = make_domain("unit_square", h);
  const auto s1 = shrink_domain(sq, 0.1);
  for (Index j = 0; j < s1.space.ny(); ++j)
    for (Index i = 0; i < s1.space.nx(); ++i) {
      if (!s1.inside(i, j)) continue;
      const Point c = s1.space.center(i, j);
      REQUIRE(c.minCoeff() > 0.1 - h);
      REQUIRE(c.maxCoeff() < 0.9 + h);
    }
  CHECK(s1.count() == doctest::Approx(0.64 / (h * h)).epsilon(0.02));
  const auto s2 = shrink_domain(sq, 0.2);
  CHECK((s2.inside && !s1.inside).count() == 0);
  CHECK_THROWS_WITH_AS(shrink_domain(sq, 0.6), "over-shrunk", Error);

  const auto cusp = make_domain("exterior_cusp", 1.0 / 512);
  const auto cs = shrink_domain(cusp, 0.1);
  double xmin = 1;
  for (const auto& p : cell_centers(cs.space, cs.inside)) xmin = std::min(xmin, p.x());
  CHECK(xmin > 0.3);
  CHECK(xmin < 0.45);

  // Boundary of the shrunken set stays away from the complement.
  const RealField d = distance_to_complement(cusp.space, cusp.inside);
  const auto bd = topological_boundary(cs);
  for (Index k = 0; k < d.size(); ++k)
    if (bd.cells(k) && cusp.inside(k)) REQUIRE(d(k) >= 0.1 - h * std::sqrt(2.0));
}

TEST_CASE("distance transform matches brute force") {
  const auto icusp = make_domain("interior_cusp", 1.0 / 32);
  const auto& s = icusp.space;
  const RealField d = distance_to_complement(s, icusp.inside);
  for (Index j = 0; j < s.ny(); j += 3)
    for (Index i = 0; i < s.nx(); i += 3) {
      if (!icusp.inside(i, j)) continue;
      double best = 1e9;
      for (Index jj = -1; jj <= s.ny(); ++jj)
        for (Index ii = -1; ii <= s.nx(); ++ii) {
          if (s.in_grid(ii, jj) && icusp.inside(ii, jj)) continue;
          best = std::min(best, std::hypot(double(ii - i), double(jj - j)) * s.h());
        }
      REQUIRE(d(i, j) == doctest::Approx(best - 0.5 * s.h()).epsilon(1e-12));
    }
}

TEST_CASE("PGM import") {
  const GridSpace s(Point(0, 0), 4, 3, 0.25);
  const std::string path = "bvlab_test_mask.pgm";
  {
    std::ofstream out(path);
    out << "P2\n# mask\n4 3\n255\n0 0 0 255\n0 255 0 0\n255 0 0 0\n";
  }
  const auto m = import_pgm_mask(path, s);
  CHECK(m.count() == 3);
  CHECK(m.inside(3, 2));  // top-right pixel
  CHECK(m.inside(1, 1));
  CHECK(m.inside(0, 0));
  std::remove(path.c_str());
  CHECK_THROWS_AS(import_pgm_mask("does_not_exist.pgm", s), Error);
}

TEST_CASE("Cantor samples lie on the boundary of the complement") {
  // Corners of the unit square belong to C x C; nearby points of the outer
  // edge are swallowed by removed squares.
  const auto shape = make_shape(parse_domain_spec("cantor_complement:level=3"));
  const double side = 1.0 / 27, eps = side / 50;
  for (const char* part : {"edge", "dust"}) {
    const auto samples = shape->samples_on(part, 24);
    CHECK_FALSE(samples.empty());
    for (const auto& s : samples) {
      CAPTURE(s.point);
      CHECK_FALSE(shape->contains(s.point));
      int near = 0;
      for (double dx : {-eps, 0.0, eps})
        for (double dy : {-eps, 0.0, eps}) near += shape->contains(s.point + Point(dx, dy));
      CHECK(near > 0);
    }
  }
  for (const auto& s : shape->samples_on("edge", 24)) {
    CHECK_FALSE((s.point - Point(1, 0)).norm() < side);
    CHECK_FALSE((s.point - Point(0, 1)).norm() < side);
  }
}
