// Experiment registry and statement catalog for the runner.

#include "bvlab/capacity.hpp"
#include "bvlab/expcli.hpp"
#include "bvlab/functions.hpp"
#include "bvlab/hausdorff.hpp"
#include "bvlab/semmes.hpp"
#include "bvlab/traces.hpp"
#include "bvlab/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace bvlab {

namespace {

constexpr double pi = std::numbers::pi;

std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Weight weight_of(const RunContext& ctx, Weight fallback = {}) {
  const auto& w = ctx.config().weight;
  if (!w) return fallback;
  if (*w == "constant") return Weight::constant();
  return Weight::power(std::stod(w->substr(6)));
}

GridSpace square_grid(double half, double h, Weight w = {}) {
  const auto n = static_cast<Index>(std::llround(2 * half / h));
  return GridSpace(Point(-half, -half), n, n, h, w);
}

DomainMask whole(const GridSpace& s) { return DomainMask{s, CellMask::Constant(s.nx(), s.ny(), true), "plane", nullptr}; }

ScalarField field(const GridSpace& s, const std::function<double(const Point&)>& f) {
  RealField v(s.nx(), s.ny());
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i) v(i, j) = f(s.center(i, j));
  return ScalarField(s, v);
}

CellMask disk_cells(const GridSpace& s, const Point& c, double r) {
  CellMask a = CellMask::Constant(s.nx(), s.ny(), false);
  s.for_each_in_ball(Ball(c, r), [&](Index i, Index j) { a(i, j) = true; });
  return a;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

// ---- preliminaries ------------------------------------------------------

void doubling_plane(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const std::vector<Point> centers{Point(0, 0), Point(0.3, 0.2), Point(-0.4, 0.1), Point(0.2, -0.5)};
  const auto radii = ctx.radii(dyadic_radii(0.25, 8 * h));
  const auto plain = square_grid(1.0, h);
  const auto rep = estimate_doubling(plain, nullptr, centers, radii);
  ctx.add({.name = "doubling_constant_plane", .statement = "doubling_condition",
           .status = verdict(std::abs(rep.doubling_constant - 4) <= ctx.tol("doubling", 0.5)),
           .lhs = rep.doubling_constant, .rhs = 4, .constant = rep.doubling_constant, .tolerance = 0.05,
           .refinement = true, .note = "mu(2B)/mu(B) of Lebesgue measure is 4"});
  ctx.add({.name = "mass_exponent_plane", .statement = "mass_bound_exponent",
           .status = verdict(std::abs(rep.mass_exponent - 2) <= ctx.tol("exponent", 0.1)), .lhs = rep.mass_exponent,
           .rhs = 2, .constant = rep.mass_exponent, .tolerance = 0.05, .refinement = true});
  const auto w = square_grid(1.0, h, Weight::power(-1));
  const auto rw = estimate_doubling(w, nullptr, centers, radii);
  ctx.add({.name = "doubling_constant_inverse_distance", .statement = "doubling_condition",
           .status = verdict(rw.doubling_constant >= 1 && rw.doubling_constant <= ctx.tol("doubling_weighted", 8.0)),
           .lhs = rw.doubling_constant, .rhs = 8, .constant = rw.doubling_constant, .tolerance = 0.05,
           .refinement = true, .note = "w = |x|^-1; balls next to the singularity exceed the Lebesgue value 4"});
  const double Q = local_mass_exponent(w, Ball(Point(0, 0), 0.5));
  ctx.add({.name = "mass_exponent_inverse_distance", .statement = "mass_bound_exponent",
           .status = verdict(Q > 1 && Q <= 2.1), .lhs = Q, .rhs = 2, .constant = Q, .tolerance = 0.05,
           .refinement = true, .note = "largest fitted exponent near the singularity"});
}

void weighted_measure_law(RunContext& ctx) {
  const double h = ctx.h(1.0 / 1024);
  const auto s = square_grid(1.0, h, Weight::power(-1));
  const auto cusp = make_domain(parse_domain_spec("exterior_cusp"), s);
  const auto radii = ctx.radii({0.05, 0.1, 0.2, 0.5});
  for (double r : radii) {
    const double m = mu_ball(s, Ball(Point(0, 0), r));
    ctx.add({.name = "ball_mass_r" + fmt(r), .statement = "exterior_cusp_weight",
             .status = verdict(rel(m, 2 * pi * r) <= ctx.tol("ball_mass", 0.02)), .lhs = m, .rhs = 2 * pi * r,
             .constant = m / r, .tolerance = 0.02, .refinement = true, .note = "mu(B(0,r)) = 2 pi r"});
  }
  // With w = |x|^-1 the mass is int_0^r (angular width of the cusp at radius rho) d rho;
  // the wall point at radius rho has x^2 + x^4 = rho^2 and angle atan(x).
  for (double r : {0.2, 0.5}) {
    const int n = 20000;
    double exact = 0;
    for (int k = 0; k < n; ++k) {
      const double rho = r * (k + 0.5) / n;
      exact += 2 * std::atan(std::sqrt((std::sqrt(1 + 4 * rho * rho) - 1) / 2)) * r / n;
    }
    const double mc = mu_ball(s, Ball(Point(0, 0), r), cusp.inside);
    ctx.add({.name = "cusp_ball_mass_r" + fmt(r), .statement = "exterior_cusp_weight",
             .status = verdict(rel(mc, exact) <= ctx.tol("cusp_mass", 0.03)), .lhs = mc, .rhs = exact,
             .constant = mc / (r * r), .tolerance = 0.03, .refinement = true,
             .note = "mu(B(0,r) cap Omega) against the polar quadrature; ~ r^2 as r -> 0"});
  }
}

void cusp_H_vs_Hbar(RunContext& ctx) {
  const double h = ctx.h(1.0 / 512);
  const auto cusp = make_domain("exterior_cusp", h, Weight::power(-1));
  const std::vector<Point> origin{Point(0, 0)};
  const auto H = content_HR(cusp.space, origin, 4 * h);
  ctx.add({.name = "content_mu_tip", .statement = "hausdorff_content",
           .status = verdict(H.content >= ctx.tol("content_mu_min", 4.0)), .lhs = H.content, .rhs = 2 * pi,
           .constant = H.content, .tolerance = 0.05, .refinement = true, .note = "oracle 2 pi"});
  const auto Hbar = content_HR(cusp.space, origin, 4 * h, &cusp.inside);
  ctx.add({.name = "content_mu_bar_tip", .statement = "zero_extended_measure",
           .status = verdict(Hbar.content <= ctx.tol("content_mu_bar_max", 0.05)), .lhs = Hbar.content, .rhs = 0.05,
           .constant = Hbar.content, .tolerance = 1.0, .refinement = true});
  const auto est = measure_H(cusp.space, origin, {1.0 / 16, 1.0 / 64, 4 * h}, &cusp.inside);
  for (const auto& [R, v] : est.values)
    ctx.add({.name = "H_R_mu_bar_R" + fmt(R), .statement = "codim_hausdorff_measure",
             .status = verdict(v <= 1.05 * R), .lhs = v, .rhs = R, .constant = v / R, .tolerance = 0.1,
             .refinement = true, .note = "zero-extended content of {0} stays below R"});
  const auto estmu = measure_H(cusp.space, origin, {1.0 / 16, 1.0 / 64, 4 * h});
  ctx.add({.name = "H_mu_tip", .statement = "exterior_cusp_weight", .status = verdict(estmu.extrapolated >= 4.0),
           .lhs = estmu.extrapolated, .rhs = 2 * pi, .constant = estmu.extrapolated, .tolerance = 0.05,
           .refinement = true, .note = "H({0}) > 0 under mu"});
}

void cantor_complement(RunContext& ctx) {
  const double h = ctx.h(1.0 / 486);
  const auto om = make_domain(ctx.domain("cantor_complement:level=3"), h);
  const auto smp = om.boundary_samples(12);
  const auto dens = check_measure_density(om, sample_points(smp), ctx.radii(dyadic_radii(1.0 / 16, 4 * h)));
  ctx.add({.name = "measure_density", .statement = "measure_density_condition",
           .status = verdict(dens.failures.empty() && dens.c_m >= 0.1), .lhs = dens.c_m, .rhs = 0.1,
           .constant = dens.c_m, .tolerance = 0.1, .refinement = true});
  const auto bdry = topological_boundary(om);
  const auto pts = cell_centers(om.space, bdry.cells);
  const auto est = measure_H(om.space, pts, {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32});
  ctx.add({.name = "boundary_content_growth", .statement = "codim_hausdorff_measure", .status = "flag",
           .lhs = est.values.back().second, .rhs = est.values.front().second, .constant = est.growth_exponent,
           .tolerance = 0.2, .refinement = true,
           .note = "H_R of the level prefix grows as R drops; the limit set has dimension 2 log 2/log 3 > 1"});
  const auto u = sample_function(ctx.function("coordinate:k=1"), om);
  const auto tr = trace_field(u, om, smp);
  int exists = 0;
  for (const auto& t : tr) exists += t.status == TraceStatus::exists;
  ctx.add({.name = "traces_exist", .statement = "cantor_complement",
           .status = verdict(exists == int(tr.size())), .lhs = double(exists), .rhs = double(tr.size()),
           .constant = double(exists) / tr.size(), .tolerance = 0.0, .refinement = false});
  write_trace_csv(tr, ctx.artifact("traces.csv"));
}

void boundary_conditions(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const std::vector<double> radii = ctx.radii({1.0 / 8, 1.0 / 16, 1.0 / 32});
  const auto sq = make_domain("unit_square", h);
  const auto d = check_measure_density(sq, {Point(0, 0), Point(1, 1), Point(0.5, 0), Point(1, 0.3)}, radii);
  ctx.add({.name = "square_measure_density", .statement = "measure_density_condition",
           .status = verdict(d.failures.empty() && rel(d.c_m, 0.25) <= 0.05), .lhs = d.c_m, .rhs = 0.25,
           .constant = d.c_m, .tolerance = 0.05, .refinement = true, .note = "corners hold a quarter ball"});
  ctx.add({.name = "square_density_gamma", .statement = "density_set", .status = verdict(d.gamma > 0 && d.gamma <= 0.5),
           .lhs = d.gamma, .rhs = 0.5, .constant = d.gamma, .tolerance = 0.05, .refinement = true});
  const auto cusp = make_domain("exterior_cusp", std::min(h, 1.0 / 512));
  const auto dc = check_measure_density(cusp, {Point(0, 0)}, {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32});
  ctx.add({.name = "cusp_tip_density_fails", .statement = "measure_density_condition",
           .status = verdict(dc.failures.size() == 1), .lhs = double(dc.failures.size()), .rhs = 1, .constant = dc.c_m,
           .tolerance = 0.0, .refinement = false, .note = "mu(B(0,r) cap Omega)/mu(B) ~ r -> 0"});
  const auto cb = check_codim_boundary(sq, sample_points(sq.boundary_samples(12)), {1.0 / 8, 1.0 / 16});
  ctx.add({.name = "square_codim_boundary", .statement = "codimension_boundary_condition",
           .status = verdict(cb.C_bdry > 0.5 && cb.C_bdry < 3), .lhs = cb.C_bdry, .rhs = 3, .constant = cb.C_bdry,
           .tolerance = 0.1, .refinement = true});
}

void perimeter_coarea(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto om = make_domain(ctx.domain("unit_square"), h, weight_of(ctx));
  const auto x1 = sample_function("coordinate:k=1", om);
  const double tv = total_variation(x1).total;
  if (!ctx.config().domain)
    ctx.add({.name = "tv_coordinate", .statement = "total_variation", .status = verdict(rel(tv, 1.0) <= 0.03),
             .lhs = tv, .rhs = 1, .constant = tv, .tolerance = 0.03, .refinement = true,
             .note = "||D x1||((0,1)^2) = 1"});
  for (const char* f : {"coordinate:k=1", "tent", "bump"}) {
    const auto rep = coarea_check(sample_function(f, om), om.inside, 64);
    ctx.add({.name = std::string("coarea_") + f, .statement = "coarea_formula",
             .status = verdict(rep.gap <= ctx.tol("coarea_gap", 0.05)), .lhs = rep.lhs, .rhs = rep.rhs,
             .constant = rep.gap, .tolerance = 0.05, .refinement = true});
  }
  const auto p = square_grid(1.0, h);
  const auto disk = make_domain(parse_domain_spec("disk:r=0.5"), p);
  const ScalarField chi(p, disk.inside.cast<double>());
  const auto rep = coarea_check(chi, whole(p).inside, 64);
  ctx.add({.name = "coarea_indicator", .statement = "coarea_formula",
           .status = verdict(std::abs(rep.lhs - rep.rhs) <= rep.level_width * rep.lhs + 1e-12), .lhs = rep.lhs,
           .rhs = rep.rhs, .constant = rep.gap, .tolerance = 0.05, .refinement = true,
           .note = "exact up to one level"});
  const double per = perimeter(disk, whole(p).inside);
  ctx.add({.name = "disk_perimeter", .statement = "total_variation", .status = verdict(rel(per, pi) <= 0.05),
           .lhs = per, .rhs = pi, .constant = per, .tolerance = 0.05, .refinement = true});
}

void jump_set(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto p = square_grid(1.0, h);
  DomainMask hp = whole(p);
  for (Index j = 0; j < p.ny(); ++j)
    for (Index i = 0; i < p.nx(); ++i) hp.inside(i, j) = p.center(i, j).y() < 0;
  const ScalarField chi(p, hp.inside.cast<double>());
  const auto lim = approx_limits(chi, {Point(0.1, 0.0), Point(0.3, 0.5)}, {16 * h, 8 * h, 4 * h});
  ctx.add({.name = "jump_on_interface", .statement = "approximate_limits",
           .status = verdict(lim.jump[0] && std::abs(lim.lower[0]) < 1e-4 && std::abs(lim.upper[0] - 1) < 1e-4),
           .lhs = lim.lower[0], .rhs = lim.upper[0], .constant = lim.upper[0] - lim.lower[0], .tolerance = 1e-4,
           .refinement = true});
  ctx.add({.name = "no_jump_off_interface", .statement = "approximate_limits", .status = verdict(!lim.jump[1]),
           .lhs = lim.lower[1], .rhs = lim.upper[1], .constant = lim.upper[1] - lim.lower[1], .tolerance = 1e-4,
           .refinement = true});
  const auto sd = surface_density(hp, {Point(0.1, 0), Point(-0.2, 0)}, {32 * h, 16 * h, 8 * h});
  for (size_t k = 0; k < sd.theta.size(); ++k)
    ctx.add({.name = "surface_density_" + std::to_string(k), .statement = "surface_density",
             .status = verdict(rel(sd.theta[k], 2 / pi) <= 0.1), .lhs = sd.theta[k], .rhs = 2 / pi,
             .constant = sd.theta[k], .tolerance = 0.05, .refinement = true,
             .note = "P(E, B(x,r)) r/mu(B) = 2/pi on a line"});
  const auto disk = make_domain(parse_domain_spec("disk:r=0.5"), p);
  const std::vector<double> radii{8 * h, 4 * h};
  const auto mb = measure_theoretic_boundary(disk, radii);
  double worst = 0;
  for (Index j = 0; j < p.ny(); ++j)
    for (Index i = 0; i < p.nx(); ++i)
      if (mb.cells(i, j)) worst = std::max(worst, std::abs(p.center(i, j).norm() - 0.5));
  ctx.add({.name = "reduced_boundary_near_circle", .statement = "measure_theoretic_boundary",
           .status = verdict(mb.cells.count() > 0 && worst <= radii.front()), .lhs = worst, .rhs = radii.front(),
           .constant = double(mb.cells.count()) * h, .tolerance = 0.1, .refinement = true,
           .note = "constant: cell count times h"});
}

void poincare(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto om = make_domain(ctx.domain("exterior_cusp"), h, weight_of(ctx));
  std::vector<Ball> balls;
  for (double x : {0.15, 0.3, 0.5, 0.7, 0.9})
    for (double r : {0.05, 0.1}) balls.emplace_back(Point(x, 0), r);
  const double lambda = ctx.lambda(2.0);
  double worst = 0;
  bool violation = false;
  for (const char* f : {"coordinate:k=1", "tent", "half_indicator:a=0.5"}) {
    const auto rep = poincare_BV_check(sample_function(f, om), balls, lambda);
    worst = std::max(worst, rep.max_constant);
    for (bool v : rep.violations) violation = violation || v;
  }
  ctx.add({.name = "poincare_constant", .statement = "bv_poincare", .status = verdict(std::isfinite(worst) && !violation),
           .lhs = worst, .rhs = 0, .constant = worst, .tolerance = 0.3, .refinement = true,
           .note = "max over balls of avg|u - u_B| mu(lambda B)/(r ||Du||(lambda B))"});
  const auto p = square_grid(1.0, h);
  const double r = find_good_radius(p, Point(0.1, 0.1), -4, 4.0);
  ctx.add({.name = "good_radius", .statement = "good_radius_lemma", .status = verdict(r >= 1.0 / 16 && r <= 1.0 / 8),
           .lhs = r, .rhs = 1.0 / 16, .constant = r, .tolerance = 0.0, .refinement = false,
           .note = "first r in [2^-4, 2^-3] with P(B) <= C_d mu(B)/r"});
}

// ---- traces -------------------------------------------------------------

void slit_disk_trace(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto slit = make_domain("slit_disk", h);
  const auto u = sample_function(ctx.function("arg"), slit);
  TraceParams params;
  params.radii = ctx.config().radii;
  const auto on_slit = trace_field(u, slit, slit.boundary_samples(20, "slit"), params);
  const auto on_arc = trace_field(u, slit, slit.boundary_samples(20, "arc"), params);
  int fails = 0;
  double worst_avg = 0, min_cert = std::numeric_limits<double>::infinity();
  for (const auto& t : on_slit) {
    fails += t.status == TraceStatus::fails;
    if (!t.averages.empty()) worst_avg = std::max(worst_avg, std::abs(t.averages.back() - pi));
    for (double c : t.certificate) min_cert = std::min(min_cert, c);
  }
  ctx.add({.name = "slit_traces_fail", .statement = "slit_disk", .status = verdict(fails == int(on_slit.size())),
           .lhs = double(fails), .rhs = double(on_slit.size()), .constant = double(fails), .tolerance = 0.0, .refinement = false});
  ctx.add({.name = "slit_average_is_pi", .statement = "slit_disk", .status = verdict(worst_avg <= 0.05),
           .lhs = worst_avg, .rhs = 0.05, .constant = worst_avg, .tolerance = 5.0, .refinement = true,
           .note = "max |avg - pi| at the smallest radius"});
  ctx.add({.name = "slit_certificate", .statement = "trace_definition", .status = verdict(min_cert >= 1.5),
           .lhs = min_cert, .rhs = 1.5, .constant = min_cert, .tolerance = 0.05, .refinement = true,
           .note = "min over radii of min_c avg|u - c|"});
  int exists = 0;
  double worst = 0;
  for (const auto& t : on_arc) {
    if (t.status != TraceStatus::exists) continue;
    ++exists;
    double a = std::atan2(t.point.y(), t.point.x());
    if (a < 0) a += 2 * pi;
    worst = std::max(worst, std::abs(*t.value - a));
  }
  ctx.add({.name = "arc_traces_exist", .statement = "slit_disk",
           .status = verdict(exists == int(on_arc.size()) && worst <= 0.05), .lhs = double(exists),
           .rhs = double(on_arc.size()), .constant = worst, .tolerance = 5.0, .refinement = true,
           .note = "constant: max |Tu - Arg|"});
  auto all = on_slit;
  all.insert(all.end(), on_arc.begin(), on_arc.end());
  write_trace_csv(all, ctx.artifact("traces.csv"));
}

void trace_square(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto sq = make_domain(ctx.domain("unit_square"), h, weight_of(ctx));
  const auto smp = sq.boundary_samples(32);
  const auto u = sample_function(ctx.function("coordinate:k=1"), sq);
  const auto tr = trace_field(u, sq, smp);
  int exists = 0;
  double worst = 0;
  for (const auto& t : tr)
    if (t.status == TraceStatus::exists) {
      ++exists;
      if (!ctx.config().function && !ctx.config().domain) worst = std::max(worst, std::abs(*t.value - t.point.x()));
    }
  ctx.add({.name = "traces_exist", .statement = "trace_theorem", .status = verdict(exists == int(tr.size())),
           .lhs = double(exists), .rhs = double(tr.size()), .constant = worst, .tolerance = 1.0, .refinement = true,
           .note = "constant: max |Tu(x) - x1| for the default function"});
  ctx.add({.name = "trace_values", .statement = "trace_definition", .status = verdict(worst <= 8 * h), .lhs = worst,
           .rhs = 8 * h, .constant = worst, .tolerance = 1.0, .refinement = true});
  const auto lin = trace_linearity(sample_function("coordinate:k=1", sq), sample_function("bump", sq), 2, -3, sq, smp);
  ctx.add({.name = "linearity", .statement = "trace_theorem", .status = verdict(lin.pass && lin.compared >= 18),
           .lhs = lin.max_defect, .rhs = double(lin.compared), .constant = lin.max_defect, .tolerance = 1.0,
           .refinement = true});
  const auto ord = ordering_check(sample_function("half_indicator:a=0.5", sq), sq, smp);
  ctx.add({.name = "ordering", .statement = "trace_theorem", .status = verdict(ord.violations == 0),
           .lhs = double(ord.violations), .rhs = double(ord.compared), .constant = double(ord.violations), .tolerance = 0.0,
           .refinement = false});
  write_trace_csv(tr, ctx.artifact("traces.csv"));
}

void cusp_trace(RunContext& ctx) {
  const double h = ctx.h(1.0 / 512);
  const auto cusp = make_domain("exterior_cusp", h, Weight::power(-1));
  const auto u = sample_function(ctx.function("radial_power:alpha=-0.5"), cusp);
  TraceParams tip;
  tip.radii = ctx.radii({0.5, 0.25, 0.125, 0.0625});
  const auto r = trace_at(u, cusp, Point(0, 0), tip);
  ctx.add({.name = "tip_trace_diverges", .statement = "exterior_cusp_weight",
           .status = verdict(r.status == TraceStatus::fails && r.divergent), .lhs = r.averages.back(),
           .rhs = r.averages.front(), .constant = r.averages.back() / r.averages.front(), .tolerance = 0.1,
           .refinement = true, .note = "averages of |x|^-1/2 grow as r -> 0"});
  const auto walls = trace_field(u, cusp, cusp.boundary_samples(6, "wall"));
  int exists = 0;
  double worst = 0;
  for (const auto& w : walls)
    if (w.status == TraceStatus::exists) {
      ++exists;
      worst = std::max(worst, rel(*w.value, std::pow(w.point.norm(), -0.5)));
    }
  ctx.add({.name = "wall_traces", .statement = "trace_theorem",
           .status = verdict(exists == int(walls.size()) && worst <= 0.02), .lhs = double(exists),
           .rhs = double(walls.size()), .constant = worst, .tolerance = 5.0, .refinement = true});
}

void perimeter_strips(RunContext& ctx) {
  const double h = ctx.h(1.0 / 1024);
  const auto cusp = make_domain("exterior_cusp", h);
  std::vector<double> per;
  for (int i : {2, 4, 8, 16}) {
    const auto e = make_domain(parse_domain_spec("strip:i=" + std::to_string(i)), cusp.space);
    per.push_back(perimeter(e, cusp.inside));
  }
  for (size_t k = 0; k + 1 < per.size(); ++k) {
    const int i = 2 << k;
    ctx.add({.name = "perimeter_ratio_i" + std::to_string(i), .statement = "perimeter_strips",
             .status = verdict(rel(per[k] / per[k + 1], 4.0) <= 0.1), .lhs = per[k], .rhs = per[k + 1],
             .constant = per[k] / per[k + 1], .tolerance = 0.1, .refinement = true,
             .note = "P(E_i, Omega) = 2/i^2"});
  }
  double last = 0;
  for (int i : {2, 4, 8}) {
    const auto e = make_domain(parse_domain_spec("strip:i=" + std::to_string(i)), cusp.space);
    const auto z = zero_extension(ScalarField(cusp.space, e.inside.cast<double>(), cusp.inside), cusp);
    const double ratio = z.tv_total() / z.tv_u;
    ctx.add({.name = "extension_ratio_i" + std::to_string(i), .statement = "extension_bound",
             .status = verdict(ratio >= 0.9 * i && ratio > last), .lhs = z.tv_total(), .rhs = z.tv_u,
             .constant = ratio, .tolerance = 0.1, .refinement = true,
             .note = "||D hat chi||(X)/P(E_i, Omega) grows like i"});
    last = ratio;
  }
}

void l1_trace_estimate(RunContext& ctx) {
  const double h = ctx.h(1.0 / 128);
  const auto sq = make_domain("unit_square", h);
  const auto smp = sq.boundary_samples(128);
  const auto w = boundary_weights(sq, smp, 1.0 / 32);
  std::vector<std::pair<std::string, ScalarField>> corpus;
  for (const char* f : {"constant", "coordinate", "tent"}) corpus.emplace_back(f, sample_function(f, sq));
  const auto rep = l1_trace_inequality_check(corpus, sq, smp, w);
  const double oracle[] = {2 * pi, pi / 1.5};
  for (size_t k = 0; k < 2 && k < rep.ratios.size(); ++k)
    ctx.add({.name = "ratio_" + rep.ratios[k].first, .statement = "l1_trace_estimate",
             .status = verdict(rel(rep.ratios[k].second, oracle[k]) <= 0.15), .lhs = rep.ratios[k].second,
             .rhs = oracle[k], .constant = rep.ratios[k].second, .tolerance = 0.1, .refinement = true,
             .note = "int |Tu| dH over ||u||_BV"});
  ctx.add({.name = "C_T_square", .statement = "l1_trace_estimate", .status = verdict(std::isfinite(rep.C_T)),
           .lhs = rep.C_T, .rhs = 0, .constant = rep.C_T, .tolerance = 0.2, .refinement = true});

  const auto cusp = make_domain("exterior_cusp", std::min(h, 1.0 / 512), Weight::power(-1));
  auto cs = cusp.boundary_samples(1, "tip");
  for (const auto& s : cusp.boundary_samples(8, "wall")) cs.push_back(s);
  const auto cw = boundary_weights(cusp, cs, 1.0 / 16);
  TraceParams p;
  p.trim_unresolved = true;
  std::vector<std::pair<std::string, ScalarField>> uc;
  for (int i : {2, 4}) uc.emplace_back("u" + std::to_string(i), sample_function("ball_indicator:r=" + std::to_string(1.0 / i), cusp));
  const auto rc = l1_trace_inequality_check(uc, cusp, cs, cw, p);
  const bool grows = rc.ratios.size() == 2 && rc.ratios[1].second > 1.3 * rc.ratios[0].second;
  ctx.add({.name = "cusp_ratio_growth", .statement = "l1_trace_estimate", .status = verdict(grows),
           .lhs = rc.ratios.size() == 2 ? rc.ratios[1].second : 0, .rhs = rc.ratios.empty() ? 0 : rc.ratios[0].second,
           .constant = rc.C_T, .tolerance = 0.2, .refinement = true,
           .note = "no uniform L1 bound without the measure density condition"});
}

void radon_lemma(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto sq = make_domain("unit_square", h);
  const auto smp = sq.boundary_samples(32);
  const double f = radon_boundary_lemma_check(variation_density(sample_function("tent", sq)), sq, smp, 0.05);
  ctx.add({.name = "tent_variation_fraction", .statement = "radon_measure_in_domain",
           .status = verdict(f <= ctx.tol("fraction", 0.05)), .lhs = f, .rhs = 0.05, .constant = f, .tolerance = 1.0,
           .refinement = true, .note = "fraction of samples with r nu(B cap Omega)/mu(B) > 0.05"});
  RealField point = RealField::Zero(sq.space.nx(), sq.space.ny());
  point(sq.space.nx() / 2, sq.space.ny() / 2) = 1.0;
  const double fp = radon_boundary_lemma_check(point, sq, smp, 1e-6);
  ctx.add({.name = "interior_point_mass", .statement = "radon_measure_in_domain", .status = verdict(fp == 0.0),
           .lhs = fp, .rhs = 0, .constant = fp, .tolerance = 0.0, .refinement = false});
}

// ---- Whitney machinery --------------------------------------------------

void whitney_properties(RunContext& ctx) {
  const double h = ctx.h(1.0 / 128);
  const auto om = make_domain(ctx.domain("unit_square"), h, weight_of(ctx));
  const double lambda = ctx.lambda(1.0);
  const double R = ctx.whitney_scale(1.0 / 16);
  const auto c = build_cover(om, R, lambda);
  const auto chk = verify_cover(c);
  const std::pair<const char*, bool> props[] = {{"covering", chk.covering},
                                                {"radius_rule", chk.radius_rule},
                                                {"comparable_radii", chk.comparable},
                                                {"separated_from_complement", chk.separated}};
  for (const auto& [name, ok] : props)
    ctx.add({.name = name, .statement = "whitney_properties", .status = verdict(ok), .lhs = double(ok), .rhs = 1,
             .constant = double(c.balls.size()), .tolerance = 1.0, .refinement = true,
             .note = "constant: number of balls"});
  ctx.add({.name = "overlap_C0", .statement = "whitney_properties", .status = verdict(c.overlap_C0 >= 1),
           .lhs = double(c.overlap_C0), .rhs = 0, .constant = double(c.overlap_C0), .tolerance = 0.5, .refinement = true});
  const PartitionOfUnity pou(c);
  double min_sum = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < om.inside.size(); ++k)
    if (om.inside(k)) min_sum = std::min(min_sum, pou.normaliser()(k));
  const double lip = pou.lipschitz_constant(4);
  ctx.add({.name = "partition_normaliser", .statement = "partition_of_unity", .status = verdict(min_sum >= 1.0),
           .lhs = min_sum, .rhs = 1, .constant = lip, .tolerance = 0.5, .refinement = true,
           .note = "sum_k psi_k >= 1 on Omega; constant: Lip(phi_j) r_j"});
  std::ofstream(ctx.artifact("cover.json")) << to_json(c).dump(1) << '\n';
}

void discrete_convolution_study(RunContext& ctx) {
  const double h = ctx.h(1.0 / 1024);
  const auto sq = make_domain(ctx.domain("unit_square"), h, weight_of(ctx), 8 * h);
  const auto u = sample_function(ctx.function("tent"), sq);
  const RealField tv = variation_density(u);
  const double tvu = tv.sum();
  double prev = std::numeric_limits<double>::infinity();
  std::vector<double> g;
  double chain = 0;
  const auto smp = sq.boundary_samples(12);
  for (double R : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
    const auto c = build_cover(sq, R, 1.0);
    const auto conv = discrete_convolution(u, PartitionOfUnity(c), &tv);
    const double err = ScalarField(u.space, conv.u_W.values - u.values, u.support && conv.u_W.support).l1();
    ctx.add({.name = "l1_error_R" + fmt(R), .statement = "discrete_convolution", .status = verdict(err < prev),
             .lhs = err, .rhs = prev, .constant = std::isfinite(prev) ? prev / err : 0.0, .tolerance = 0.2,
             .refinement = true, .note = "||u_W - u||_L1 decreases with R"});
    prev = err;
    g.push_back((conv.upper_gradient * sq.space.mass()).sum() / tvu);
    for (const auto& s : smp)
      for (double r : {1.0 / 8, 1.0 / 16}) chain = std::max(chain, boundary_chain_ratio(u, conv.u_W, tv, s.point, r));
  }
  const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
  ctx.add({.name = "upper_gradient_band", .statement = "discrete_convolution_upper_gradient",
           .status = verdict(*hi / *lo < 3.0), .lhs = *lo, .rhs = *hi, .constant = *hi / *lo, .tolerance = 0.2,
           .refinement = true, .note = "int g dmu / ||Du||(Omega) across R"});
  ctx.add({.name = "chain_constant", .statement = "discrete_convolution_traces", .status = verdict(std::isfinite(chain)),
           .lhs = chain, .rhs = 0, .constant = chain, .tolerance = 0.3, .refinement = true,
           .note = "avg|u - u_W| over r ||Du||(B(x,2r))/mu(B(x,r))"});
}

void zero_extension_study(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto sq = make_domain("unit_square", h);
  const auto tent = zero_extension(sample_function("tent", sq), sq);
  const double frac = tent.tv_collar / tent.tv_total();
  ctx.add({.name = "tent_collar_fraction", .statement = "zero_extension_theorem", .status = verdict(frac <= 0.1),
           .lhs = tent.tv_total(), .rhs = tent.tv_u, .constant = frac, .tolerance = 0.6, .refinement = true,
           .note = "zero trace: no variation on the boundary in the limit"});
  const auto one = zero_extension(sample_function("constant", sq), sq);
  ctx.add({.name = "constant_boundary_mass", .statement = "zero_extension_theorem",
           .status = verdict(rel(one.tv_total() - one.tv_u, 4.0) <= 0.05), .lhs = one.tv_total() - one.tv_u, .rhs = 4,
           .constant = one.tv_total(), .tolerance = 0.05, .refinement = true,
           .note = "||D hat u||(X) = ||Du||(Omega) + int |Tu| dH^1 = 4"});
  const auto x1 = zero_extension(sample_function("coordinate:k=1", sq), sq);
  // int over the boundary of |x1| d length = 1 + 2 * 1/2
  ctx.add({.name = "coordinate_boundary_mass", .statement = "zero_extension_theorem",
           .status = verdict(rel(x1.tv_total() - x1.tv_u, 2.0) <= 0.05), .lhs = x1.tv_total() - x1.tv_u, .rhs = 2,
           .constant = x1.tv_total(), .tolerance = 0.05, .refinement = true});
}

void bv_zero(RunContext& ctx) {
  const double h = ctx.h(1.0 / 256);
  const auto sq = make_domain("unit_square", h);
  const auto smp = sq.boundary_samples(16);
  const auto tent = sample_function("tent", sq);
  const auto zt = zero_trace_check(tent, sq, smp);
  ctx.add({.name = "tent_in_BV0", .statement = "bv_zero_trace", .status = verdict(zt.all_pass()),
           .lhs = double(zt.all_pass()), .rhs = 1, .constant = 0, .tolerance = 0.0, .refinement = false});
  const auto zc = zero_trace_check(sample_function("constant", sq), sq, smp);
  ctx.add({.name = "indicator_not_in_BV0", .statement = "bv_zero_trace", .status = verdict(!zc.all_pass()),
           .lhs = double(zc.all_pass()), .rhs = 0, .constant = 0, .tolerance = 0.0, .refinement = false});

  const auto cusp = make_domain("exterior_cusp", std::min(h, 1.0 / 512), Weight::power(-1));
  const auto p = sample_function("radial_power:alpha=-0.5", cusp);
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  for (double n : {2.0, 3.0, 4.0}) {
    const ScalarField tail(cusp.space, p.values - truncate(p, n).values, p.support);
    const double bv = tail.l1() + total_variation(tail).total;
    decreasing = decreasing && bv < prev;
    prev = bv;
  }
  ctx.add({.name = "truncation_tail", .statement = "truncation", .status = verdict(decreasing), .lhs = prev, .rhs = 0,
           .constant = prev, .tolerance = 0.2, .refinement = true, .note = "||u - u_n||_BV decreases in n"});

  std::vector<WhitneyCover> covers;
  for (double R : {1.0 / 16, 1.0 / 32, 1.0 / 64}) covers.push_back(build_cover(sq, R, 1.0));
  const auto pasted = pasted_approximation(sample_function("bump", sq), covers, 8 * h, Point(0.5, 0.5));
  ctx.add({.name = "pasted_tv_gap", .statement = "pasted_approximation", .status = verdict(pasted.tv_gap.back() <= 0.05),
           .lhs = pasted.tv_gap.back(), .rhs = 0.05, .constant = pasted.l1_gap.back(), .tolerance = 0.5,
           .refinement = true});

  const auto cs = compact_support_approximation(tent, sq, 4 * h, 1.0 / 32);
  ctx.add({.name = "compact_support_l1_gap", .statement = "compact_support_density",
           .status = verdict(cs.l1_gap <= 0.1 * cs.bv_norm), .lhs = cs.l1_gap, .rhs = cs.bv_norm,
           .constant = cs.l1_gap / cs.bv_norm, .tolerance = 0.6, .refinement = true});
  ctx.add({.name = "compact_support_tv_gap", .statement = "compact_support_density",
           .status = verdict(cs.tv_gap <= 0.1 * cs.bv_norm), .lhs = cs.tv_gap, .rhs = cs.bv_norm,
           .constant = cs.tv_gap / cs.bv_norm, .tolerance = 0.6, .refinement = true});
}

// ---- capacities ---------------------------------------------------------

void capacity_disk(RunContext& ctx) {
  const double h = ctx.h(1.0 / 128);
  const auto s = square_grid(2.0 + 8 * h, h);
  const CellMask A = disk_cells(s, Point(0, 0), 0.5 + 1e-9);
  const auto c = capacity(s, A, CapacityKind::rcap, Ball(Point(0, 0), 1.0));
  ctx.add({.name = "rcap_disk", .statement = "relative_capacity", .status = verdict(rel(c.value, pi) <= 0.07),
           .lhs = c.value, .rhs = pi, .constant = c.value, .tolerance = 0.03, .refinement = true,
           .note = "rcap(B(0,1/2), B(0,2)) = P(B(0,1/2))"});
  ctx.add({.name = "rcap_methods_agree", .statement = "relative_capacity",
           .status = verdict(rel(c.variational_value, c.parametric_value) <= 0.05), .lhs = c.variational_value,
           .rhs = c.parametric_value, .constant = rel(c.variational_value, c.parametric_value), .tolerance = 0.03,
           .refinement = true});
  const auto small = square_grid(1.0, h);
  const double r = 0.25;
  const auto cc = capacity(small, disk_cells(small, Point(0.1, -0.05), r), CapacityKind::cap);
  const double oracle = 2 * pi * (r + h) + pi * (r + h) * (r + h);
  ctx.add({.name = "cap_disk", .statement = "bv_capacity", .status = verdict(rel(cc.value, oracle) <= 0.05),
           .lhs = cc.value, .rhs = oracle, .constant = cc.value, .tolerance = 0.03, .refinement = true,
           .note = "perimeter plus area of the one-cell neighbourhood"});
  write_field_csv(c.minimizer, ctx.artifact("rcap_minimizer.csv"));
}

void mazya(RunContext& ctx) {
  const double h = ctx.h(1.0 / 32);
  const auto s = square_grid(2.5, h);
  double Ccap = 0, Crcap = 0;
  bool violation = false;
  int vacuous = 0, used = 0;
  const std::vector<std::function<double(const Point&)>> fs{
      [](const Point& p) { return std::clamp(p.norm() - 0.5, 0.0, 1.0); },
      [](const Point& p) { return std::max(0.0, p.x() - 0.1); },
      [](const Point& p) { return p.x() > 0.1 ? 1.0 : 0.0; },
      [](const Point& p) { return -std::max(0.0, p.y() - 0.2); }};
  for (const auto& f : fs)
    for (const Ball& b : {Ball(Point(0, 0), 1.0), Ball(Point(0.2, 0.1), 0.6)}) {
      const auto r = mazya_check(field(s, f), b, 1.0);
      violation = violation || r.violation;
      if (r.vacuous) {
        ++vacuous;
        continue;
      }
      ++used;
      Ccap = std::max(Ccap, r.C_cap);
      Crcap = std::max(Crcap, r.C_rcap);
    }
  ctx.add({.name = "mazya_cap", .statement = "mazya_inequality", .status = verdict(!violation && std::isfinite(Ccap)),
           .lhs = Ccap, .rhs = double(used), .constant = Ccap, .tolerance = 0.3, .refinement = true,
           .note = "max lhs cap(S)/((r+1) ||Du||(2 lambda B))"});
  ctx.add({.name = "mazya_rcap", .statement = "mazya_inequality",
           .status = verdict(!violation && std::isfinite(Crcap)), .lhs = Crcap, .rhs = double(used), .constant = Crcap,
           .tolerance = 0.3, .refinement = true, .note = "max lhs rcap(S, 2B)/||Du||(2 lambda B)"});
  const auto tent = field(s, [](const Point& p) { return std::max(0.0, std::min(p.x(), 0.5 - p.norm())); });
  const auto sob = measure_largeness_sobolev_check(tent, Ball(Point(0, 0), 0.5), 1.0);
  ctx.add({.name = "sobolev_tent", .statement = "measure_largeness_sobolev",
           .status = verdict(std::isfinite(sob.C) && sob.C > 0), .lhs = sob.lhs, .rhs = sob.rhs, .constant = sob.C,
           .tolerance = 0.3, .refinement = true});
}

// ---- Semmes family ------------------------------------------------------

void semmes_cusp(RunContext& ctx) {
  CuspParams cp;
  if (ctx.config().weight && *ctx.config().weight != "constant") cp.alpha = weight_of(ctx).alpha;
  const auto f = build_family(0.05, 0.95, 256, 512, cp);
  const auto rects = tip_rectangles(f, 50);
  const auto c = check_semmes_condition(f, rects);
  const auto d = check_semmes_condition(build_family(0.05, 0.95, 512, 1024, cp), rects);
  ctx.add({.name = "semmes_constant", .statement = "semmes_condition",
           .status = verdict(std::isfinite(c.C) && c.violations.empty()), .lhs = c.C, .rhs = 0, .constant = c.C,
           .tolerance = 1e-9, .refinement = false, .note = "max over 50 rectangles of lhs/rhs"});
  ctx.add({.name = "semmes_constant_doubled", .statement = "semmes_condition",
           .status = verdict(rel(d.C, c.C) <= 0.25), .lhs = d.C, .rhs = c.C, .constant = rel(d.C, c.C),
           .tolerance = 1e-9, .refinement = false, .note = "curve and sample counts doubled"});
  const auto [lo, hi] = speed_range(f);
  ctx.add({.name = "family_in_closure", .statement = "semmes_family",
           .status = verdict(max_distance_to_closure(f) == 0.0 && lo >= 1 - 1e-12 && hi <= f.speed_bound),
           .lhs = lo, .rhs = hi, .constant = f.speed_bound, .tolerance = 1e-9, .refinement = false,
           .note = "speed range against the bound"});
  if (cp.alpha == 0.0) {
    const auto k = kernel_lower_bound_check(f, 100);
    ctx.add({.name = "riesz_kernel_bound", .statement = "riesz_kernel_estimate",
             .status = verdict(k.min_ratio >= 0.95), .lhs = k.min_ratio, .rhs = 1, .constant = k.min_ratio,
             .tolerance = 1e-9, .refinement = false, .note = "min of 8 z1^2 d(z,x)/mu(B(x, d(z,x)) cap Omega)"});
  }
  write_family_csv(build_family(0.05, 0.95, 16, 128, cp), ctx.artifact("family.csv"));
}

}  // namespace

const std::vector<Statement>& statement_catalog() {
  static const std::vector<Statement> s{
      {"doubling_condition", "mu(2B) <= C_d mu(B)"},
      {"mass_bound_exponent", "lower mass bound with exponent Q obtained by iterating doubling"},
      {"hausdorff_content", "restricted content H_R from covers by balls of radius at most R"},
      {"codim_hausdorff_measure", "codimension-one Hausdorff measure H as the limit of H_R"},
      {"measure_theoretic_boundary", "points where E and its complement both have positive upper density"},
      {"total_variation", "total variation and perimeter"},
      {"coarea_formula", "||Du|| = int P({u > t}) dt"},
      {"approximate_limits", "approximate lower and upper limits, jump set"},
      {"bv_poincare", "(1,1)-Poincare inequality for BV functions"},
      {"surface_density", "perimeter measure against H on the reduced boundary"},
      {"density_set", "points of density between gamma and 1 - gamma"},
      {"trace_definition", "trace as the limit of ball averages"},
      {"trace_theorem", "traces exist H-a.e. under doubling, Poincare and measure density"},
      {"zero_extended_measure", "zero-extended measure and its Hausdorff measure"},
      {"slit_disk", "slit disk: no trace on the slit"},
      {"cantor_complement", "square minus a Cantor product: traces with infinite boundary measure"},
      {"exterior_cusp_weight", "exterior cusp with weight |x|^-1"},
      {"semmes_condition", "Semmes pencil condition with the Riesz kernel bound"},
      {"semmes_family", "explicit curve family on the cusp"},
      {"riesz_kernel_estimate", "lower bound of the Riesz kernel in the parabola regime"},
      {"measure_density_condition", "mu(B cap Omega) >= c_m mu(B) at boundary points"},
      {"codimension_boundary_condition", "H(B cap boundary) <= C mu(B)/r"},
      {"extension_bound", "zero extension has bounded variation"},
      {"perimeter_strips", "strip sets with perimeter 1/i^2 scaling and growing extensions"},
      {"l1_trace_estimate", "int |Tu| dH <= C ||u||_BV"},
      {"good_radius_lemma", "balls with controlled perimeter at every dyadic scale"},
      {"bv_zero_trace", "BV functions with zero trace"},
      {"radon_measure_in_domain", "finite Radon measures on Omega do not charge the boundary"},
      {"whitney_properties", "Whitney cover: covering, radius rule, comparable radii, separation"},
      {"partition_of_unity", "Lipschitz partition of unity subordinate to the cover"},
      {"discrete_convolution", "discrete convolution converges in L1"},
      {"discrete_convolution_upper_gradient", "upper gradient of the discrete convolution"},
      {"discrete_convolution_traces", "discrete convolution shares boundary values"},
      {"zero_extension_theorem", "variation of the zero extension"},
      {"pasted_approximation", "pasting interior approximations"},
      {"truncation", "truncations converge in BV"},
      {"compact_support_density", "compactly supported approximation of BV0 functions"},
      {"bv_capacity", "BV capacity"},
      {"relative_capacity", "relative BV capacity"},
      {"mazya_inequality", "capacitary Maz'ya-type inequality"},
      {"measure_largeness_sobolev", "Sobolev inequality when the zero set is large in measure"},
  };
  return s;
}

const std::vector<Experiment>& experiment_registry() {
  static const std::vector<Experiment> e{
      {"doubling_plane", "doubling constant and mass exponent, plain and |x|^-1", {"doubling_condition", "mass_bound_exponent"}, doubling_plane},
      {"weighted_measure_law", "mu(B(0,r)) = 2 pi r under |x|^-1 and the cusp-masked mass", {"exterior_cusp_weight"}, weighted_measure_law},
      {"cusp_H_vs_Hbar", "content of the cusp tip under mu and the zero-extended mu", {"hausdorff_content", "codim_hausdorff_measure", "zero_extended_measure", "exterior_cusp_weight"}, cusp_H_vs_Hbar},
      {"cantor_complement", "measure density, boundary content growth and traces", {"cantor_complement", "measure_density_condition", "codim_hausdorff_measure"}, cantor_complement},
      {"boundary_conditions", "measure density and codimension boundary conditions", {"measure_density_condition", "codimension_boundary_condition", "density_set"}, boundary_conditions},
      {"perimeter_coarea", "total variation, perimeter and the coarea formula", {"total_variation", "coarea_formula"}, perimeter_coarea},
      {"jump_set", "approximate limits, surface density, measure-theoretic boundary", {"approximate_limits", "surface_density", "measure_theoretic_boundary"}, jump_set},
      {"poincare", "BV Poincare constants on the cusp and good radii", {"bv_poincare", "good_radius_lemma"}, poincare},
      {"slit_disk_trace", "Arg on the slit disk: no trace on the slit, trace on the arc", {"slit_disk", "trace_definition"}, slit_disk_trace},
      {"trace_square", "traces, linearity and ordering on the unit square", {"trace_theorem", "trace_definition"}, trace_square},
      {"cusp_trace", "|x|^-1/2 on the weighted cusp", {"exterior_cusp_weight", "trace_theorem"}, cusp_trace},
      {"perimeter_strips", "strip sets E_i in the cusp", {"perimeter_strips", "extension_bound"}, perimeter_strips},
      {"l1_trace_estimate", "L1 trace inequality on the square and its failure on the cusp", {"l1_trace_estimate"}, l1_trace_estimate},
      {"radon_lemma", "Radon measures on Omega near the boundary", {"radon_measure_in_domain"}, radon_lemma},
      {"whitney_properties", "Whitney cover properties and partition of unity", {"whitney_properties", "partition_of_unity"}, whitney_properties},
      {"discrete_convolution", "convergence, upper gradient and chain estimate of u_W", {"discrete_convolution", "discrete_convolution_upper_gradient", "discrete_convolution_traces"}, discrete_convolution_study},
      {"zero_extension", "variation of zero extensions on the square", {"zero_extension_theorem"}, zero_extension_study},
      {"bv_zero", "zero traces, truncation, pasting and compact support", {"bv_zero_trace", "truncation", "pasted_approximation", "compact_support_density"}, bv_zero},
      {"capacity_disk", "relative and BV capacity of disks", {"relative_capacity", "bv_capacity"}, capacity_disk},
      {"mazya", "Maz'ya inequality and measure-largeness Sobolev inequality", {"mazya_inequality", "measure_largeness_sobolev"}, mazya},
      {"semmes_cusp", "Semmes family on the cusp", {"semmes_condition", "semmes_family", "riesz_kernel_estimate"}, semmes_cusp},
  };
  return e;
}

}  // namespace bvlab
