#include "bvlab/capacity.hpp"

#include "bvlab/distance.hpp"
#include "bvlab/stencil.hpp"

#include <algorithm>
#include <cmath>

namespace bvlab {

namespace {

// Sub-rectangle of the grid holding every free cell plus a zero halo wide
// enough that the stencils never see its edge.
struct Crop {
  Index i0 = 0, j0 = 0, nx = 0, ny = 0;

  template <typename T>
  Field<T> take(const Field<T>& f) const { return f.block(i0, j0, nx, ny); }
};

constexpr Index kHalo = 3;

Crop crop_around(const GridSpace& s, const CellMask& cells) {
  Index ilo = s.nx(), ihi = -1, jlo = s.ny(), jhi = -1;
  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i)
      if (cells(i, j)) {
        ilo = std::min(ilo, i);
        ihi = std::max(ihi, i);
        jlo = std::min(jlo, j);
        jhi = std::max(jhi, j);
      }
  if (ihi < 0) throw Error("empty capacity problem");
  Crop c;
  c.i0 = ilo - kHalo;
  c.j0 = jlo - kHalo;
  c.nx = ihi - ilo + 1 + 2 * kHalo;
  c.ny = jhi - jlo + 1 + 2 * kHalo;
  if (c.i0 < 0 || c.j0 < 0 || c.i0 + c.nx > s.nx() || c.j0 + c.ny > s.ny())
    throw Error("capacity problem reaches the grid edge");
  return c;
}

// Value of a candidate on the crop: variation plus, for cap, the mass.
struct Pricer {
  RealField mass;
  CellMask all;
  double h;
  bool with_mass;

  double operator()(const RealField& u) const {
    double v = stencil::variation_density(u, all, mass, h).sum();
    if (with_mass) v += (u.abs() * mass).sum();
    return v;
  }
};

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  RealField field;
};

void offer(Candidate& best, const Pricer& price, RealField u) {
  const double v = price(u);
  if (v < best.value) {
    best.value = v;
    best.field = std::move(u);
  }
}

// Dilations of the fixed set and truncated cones 1 - d/s, while they stay
// inside the allowed region.
Candidate parametric(const CellMask& one, const CellMask& allowed, const Pricer& price, double h) {
  Candidate best;
  offer(best, price, one.cast<double>());
  GridSpace unit(Point::Zero(), one.rows(), one.cols(), h);
  const RealField d = distance_to_cells(unit, one);
  // Largest reach that keeps {d < rho} inside the allowed cells.
  double reach = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < d.size(); ++k)
    if (!allowed(k)) reach = std::min(reach, d(k));
  const double cap = std::min(reach, h * static_cast<double>(std::max(one.rows(), one.cols())));
  for (double rho = h; rho <= cap; rho *= std::sqrt(2.0)) {
    offer(best, price, (d < rho).cast<double>());
    offer(best, price, (1.0 - d / rho).max(0.0).min(1.0));
  }
  return best;
}

struct SolverOut {
  RealField u;
  int iterations = 0;
  double gap0 = 0, gap = 0;
};

// First-order primal-dual (Chambolle-Pock) for
//   min sum_c b_c |D u|_c + sum_c l_c u_c,  0 <= u <= 1, u fixed off `free`,
// with forward differences D and Neumann ends. b and l are rescaled by the
// mean weight and h so both variables live on unit scale.
SolverOut primal_dual(const CellMask& one, const CellMask& free, const RealField& b, const RealField& l,
                      const CapacityParams& prm) {
  const Index nx = one.rows(), ny = one.cols();
  RealField u = one.cast<double>();
  RealField ubar = u;
  RealField px = RealField::Zero(nx, ny), py = RealField::Zero(nx, ny);
  const double tau = 0.99 / std::sqrt(8.0), sigma = tau;

  auto primal = [&] {
    double v = 0;
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) {
        const double gx = i + 1 < nx ? u(i + 1, j) - u(i, j) : 0.0;
        const double gy = j + 1 < ny ? u(i, j + 1) - u(i, j) : 0.0;
        v += b(i, j) * std::sqrt(gx * gx + gy * gy) + l(i, j) * u(i, j);
      }
    return v;
  };
  // -div p at (i, j), i.e. (D^T p)(i, j).
  auto dtp = [&](Index i, Index j) {
    double s = 0;
    if (i + 1 < nx) s -= px(i, j);
    if (i > 0) s += px(i - 1, j);
    if (j + 1 < ny) s -= py(i, j);
    if (j > 0) s += py(i, j - 1);
    return s;
  };
  auto dual = [&] {
    double v = 0;
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) {
        const double g = dtp(i, j) + l(i, j);
        if (free(i, j)) v += std::min(0.0, g);
        else if (one(i, j)) v += g;
      }
    return v;
  };

  SolverOut out;
  out.gap0 = primal() - dual();
  out.gap = out.gap0;
  if (out.gap0 <= 0) {
    out.u = u;
    return out;
  }
  for (int it = 1; it <= prm.max_iterations; ++it) {
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) {
        const double gx = i + 1 < nx ? ubar(i + 1, j) - ubar(i, j) : 0.0;
        const double gy = j + 1 < ny ? ubar(i, j + 1) - ubar(i, j) : 0.0;
        double qx = px(i, j) + sigma * gx, qy = py(i, j) + sigma * gy;
        const double n = std::sqrt(qx * qx + qy * qy);
        if (n > b(i, j)) {
          const double f = b(i, j) / n;
          qx *= f;
          qy *= f;
        }
        px(i, j) = qx;
        py(i, j) = qy;
      }
    for (Index j = 0; j < ny; ++j)
      for (Index i = 0; i < nx; ++i) {
        if (!free(i, j)) continue;
        const double old = u(i, j);
        const double nu = std::clamp(old - tau * (dtp(i, j) + l(i, j)), 0.0, 1.0);
        u(i, j) = nu;
        ubar(i, j) = 2 * nu - old;
      }
    out.iterations = it;
    if (it % prm.gap_every == 0 || it == prm.max_iterations) {
      out.gap = primal() - dual();
      if (out.gap < prm.gap_tol * out.gap0) break;
    }
  }
  out.u = u;
  return out;
}

}  // namespace

std::string to_string(CapacityKind k) { return k == CapacityKind::cap ? "cap_BV" : "rcap_BV"; }
std::string to_string(CapacityMethod m) { return m == CapacityMethod::parametric ? "parametric" : "variational"; }

CellMask dilate_one_cell(const CellMask& a) {
  CellMask out = a;
  const Index nx = a.rows(), ny = a.cols();
  for (Index j = 0; j < ny; ++j)
    for (Index i = 0; i < nx; ++i) {
      if (!a(i, j)) continue;
      if (i > 0) out(i - 1, j) = true;
      if (i + 1 < nx) out(i + 1, j) = true;
      if (j > 0) out(i, j - 1) = true;
      if (j + 1 < ny) out(i, j + 1) = true;
    }
  return out;
}

double capacity_functional(const ScalarField& u, CapacityKind kind) {
  const ScalarField all(u.space, u.values);
  double v = total_variation(all).total;
  if (kind == CapacityKind::cap) v += all.l1();
  return v;
}

CapacityValue capacity(const GridSpace& space, const CellMask& A, CapacityKind kind, const std::optional<Ball>& ball,
                       const CapacityParams& params) {
  if (A.rows() != space.nx() || A.cols() != space.ny()) throw Error("set does not match the grid");
  if (!params.parametric && !params.variational) throw Error("no capacity method selected");
  CapacityValue res(ScalarField(space, RealField::Zero(space.nx(), space.ny())));
  res.kind = kind;
  if (!A.any()) {
    res.parametric_value = res.variational_value = 0.0;
    return res;
  }
  const CellMask fixed_one = params.neighborhood ? dilate_one_cell(A) : A;

  // Allowed support: 2B for rcap; for cap every cell, cropped to the
  // bounding box of the fixed set (projecting onto that box lowers both
  // perimeter and mass in the unweighted plane).
  CellMask allowed;
  if (kind == CapacityKind::rcap) {
    if (!ball) throw Error("relative capacity needs a ball");
    const Ball two = ball->dilate(2.0);
    // kHalo cells of margin so the crop around 2B stays on the grid
    const double m = kHalo * space.h();
    const Point lo = space.origin() + Point(m, m), hi = space.origin() + Point(space.width() - m, space.height() - m);
    if (two.center.x() - two.radius < lo.x() || two.center.y() - two.radius < lo.y() ||
        two.center.x() + two.radius > hi.x() || two.center.y() + two.radius > hi.y())
      throw Error("2B must lie inside the grid, with a margin of 3 cells");
    for (Index j = 0; j < space.ny(); ++j)
      for (Index i = 0; i < space.nx(); ++i)
        if (A(i, j) && !ball->contains(space.center(i, j))) throw Error("set must lie in B");
    allowed = CellMask::Constant(space.nx(), space.ny(), false);
    space.for_each_in_ball(two, [&](Index i, Index j) { allowed(i, j) = true; });
    if ((fixed_one && !allowed).any()) throw Error("infeasible: set touches the complement of 2B");
  } else {
    allowed = fixed_one;
  }
  const Crop crop = crop_around(space, kind == CapacityKind::rcap ? allowed : fixed_one);
  const CellMask one = crop.take(fixed_one);
  CellMask ok = crop.take(allowed);
  if (kind == CapacityKind::cap) {
    // Any cell of the bounding box may be used.
    ok.setConstant(false);
    ok.block(kHalo, kHalo, crop.nx - 2 * kHalo, crop.ny - 2 * kHalo).setConstant(true);
  }
  const RealField mass = crop.take(space.mass());
  const Pricer price{mass, CellMask::Constant(crop.nx, crop.ny, true), space.h(), kind == CapacityKind::cap};

  Candidate best;
  if (params.parametric) {
    best = parametric(one, ok, price, space.h());
    res.parametric_value = best.value;
    res.method = CapacityMethod::parametric;
  }
  if (params.variational) {
    const CellMask free = ok && !one;
    const RealField w = mass / (space.h() * space.h());
    const double wbar = free.any() ? free.select(w, 0.0).sum() / static_cast<double>(free.count()) : 1.0;
    const RealField b = w / wbar;
    const RealField l = kind == CapacityKind::cap ? RealField(space.h() * w / wbar) : RealField::Zero(crop.nx, crop.ny);
    const SolverOut s = primal_dual(one, free, b, l, params);
    res.iterations = s.iterations;
    res.initial_gap = s.gap0;
    res.final_gap = s.gap;
    // Round through level sets; each is feasible.
    Candidate v;
    offer(v, price, s.u);
    for (int k = 0; k < params.levels; ++k) {
      const double t = (k + 0.5) / params.levels;
      offer(v, price, (s.u > t).cast<double>());
    }
    res.variational_value = v.value;
    if (v.value < best.value) {
      best = std::move(v);
      res.method = CapacityMethod::variational;
    }
  }
  res.value = best.value;
  res.minimizer.values.block(crop.i0, crop.j0, crop.nx, crop.ny) = best.field;
  return res;
}

nlohmann::json to_json(const CapacityValue& c) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return {{"kind", to_string(c.kind)},
          {"value", c.value},
          {"method", to_string(c.method)},
          {"parametric_value", num(c.parametric_value)},
          {"variational_value", num(c.variational_value)},
          {"iterations", c.iterations},
          {"initial_gap", c.initial_gap},
          {"final_gap", c.final_gap}};
}

double local_mass_exponent(const GridSpace& space, const Ball& b) {
  const double h = space.h();
  const auto radii = dyadic_radii(b.radius, 8 * h);
  if (radii.size() < 2) throw Error("ball too small for a mass exponent");
  double Q = 0;
  const double s = 0.5 * b.radius;
  for (const Point& off : {Point(0, 0), Point(s, 0), Point(-s, 0), Point(0, s), Point(0, -s)}) {
    const DoublingReport rep = estimate_doubling(space, nullptr, {b.center + off}, radii);
    Q = std::max(Q, rep.mass_exponent);
  }
  return Q;
}

CellMask zero_set(const ScalarField& u, const Ball& b) {
  const GridSpace& s = u.space;
  const CellMask live = u.support;
  const double lo = live.select(u.values, std::numeric_limits<double>::infinity()).minCoeff();
  const double hi = live.select(u.values, -std::numeric_limits<double>::infinity()).maxCoeff();
  const double tol = 1e-9 * std::max(hi - lo, 0.0);
  const CellMask nonzero = live && (u.values.abs() > tol);
  const RealField d = distance_to_cells(s, nonzero);
  CellMask out = CellMask::Constant(s.nx(), s.ny(), false);
  s.for_each_in_ball(b, [&](Index i, Index j) {
    if (live(i, j) && d(i, j) >= 4 * s.h()) out(i, j) = true;
  });
  return out;
}

namespace {

double ball_lq_mean(const ScalarField& u, const Ball& b, double q) {
  const RealField& m = u.space.mass();
  double num = 0, den = 0;
  u.space.for_each_in_ball(b, [&](Index i, Index j) {
    den += m(i, j);
    if (u.support(i, j)) num += std::pow(std::abs(u.values(i, j)), q) * m(i, j);
  });
  if (!(den > 0)) throw Error("ball carries no mass");
  return std::pow(num / den, 1.0 / q);
}

double ball_variation(const ScalarField& u, const Ball& b) {
  const RealField dens = variation_density(u);
  double v = 0;
  u.space.for_each_in_ball(b, [&](Index i, Index j) { v += dens(i, j); });
  return v;
}

}  // namespace

MazyaReport mazya_check(const ScalarField& u, const Ball& b, double lambda, const CapacityParams& params) {
  MazyaReport rep;
  rep.radius = b.radius;
  rep.Q = local_mass_exponent(u.space, b);
  if (!(rep.Q > 1)) throw Error("mass exponent must exceed 1");
  rep.q = rep.Q / (rep.Q - 1);
  rep.lhs = ball_lq_mean(u, b.dilate(2.0), rep.q);
  rep.variation = ball_variation(u, b.dilate(2.0 * lambda));
  const CellMask S = zero_set(u, b);
  rep.zero_cells = S.count();
  if (rep.zero_cells == 0) {
    rep.vacuous = true;
    return rep;
  }
  rep.cap = capacity(u.space, S, CapacityKind::cap, std::nullopt, params).value;
  rep.rcap = capacity(u.space, S, CapacityKind::rcap, b, params).value;
  if (rep.lhs > 0 && rep.variation <= 0) {
    rep.violation = true;
    return rep;
  }
  if (rep.lhs > 0) {
    rep.C_cap = rep.lhs * rep.cap / ((b.radius + 1) * rep.variation);
    rep.C_rcap = rep.lhs * rep.rcap / rep.variation;
  }
  return rep;
}

SobolevReport measure_largeness_sobolev_check(const ScalarField& u, const Ball& b, double lambda) {
  SobolevReport rep;
  rep.Q = local_mass_exponent(u.space, b);
  if (!(rep.Q > 1)) throw Error("mass exponent must exceed 1");
  rep.q = rep.Q / (rep.Q - 1);
  const RealField& m = u.space.mass();
  double muA = 0, muB = 0;
  u.space.for_each_in_ball(b, [&](Index i, Index j) {
    muB += m(i, j);
    if (u.support(i, j) && u.values(i, j) != 0.0) muA += m(i, j);
  });
  if (!(muA < muB)) throw Error("degenerate (no zero set)");
  rep.mass_ratio = muA / muB;
  rep.blow_up = 1.0 / (1.0 - std::pow(rep.mass_ratio, 1.0 / rep.Q));
  rep.lhs = ball_lq_mean(u, b, rep.q);
  const Ball big = b.dilate(2.0 * lambda);
  double mu_big = 0;
  u.space.for_each_in_ball(big, [&](Index i, Index j) { mu_big += m(i, j); });
  rep.rhs = b.radius * rep.blow_up * ball_variation(u, big) / mu_big;
  if (rep.lhs > 0) rep.C = rep.rhs > 0 ? rep.lhs / rep.rhs : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace bvlab
