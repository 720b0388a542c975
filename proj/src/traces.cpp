#include "bvlab/traces.hpp"

#include "bvlab/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace bvlab {

namespace {

struct Sample {
  double value;
  double mass;
};

std::vector<double> checked_radii(const DomainMask& omega, const TraceParams& p) {
  std::vector<double> radii = p.radii.empty() ? default_trace_radii(omega) : p.radii;
  if (radii.empty()) throw Error("no radii given");
  for (size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] < 4 * omega.space.h() * (1 - 1e-12)) throw Error("radii must be at least 4h");
    if (k > 0 && !(radii[k] < radii[k - 1])) throw Error("radii must decrease");
  }
  return radii;
}

void gather(const ScalarField& u, const DomainMask& omega, const Ball& b, std::vector<Sample>& out) {
  out.clear();
  const RealField& m = u.space.mass();
  u.space.for_each_in_ball(b, [&](Index i, Index j) {
    if (omega.inside(i, j) && u.support(i, j)) out.push_back({u.values(i, j), m(i, j)});
  });
}

double mean_abs_dev(const std::vector<Sample>& cells, double c) {
  double s = 0, w = 0;
  for (const Sample& x : cells) {
    s += std::abs(x.value - c) * x.mass;
    w += x.mass;
  }
  return s / w;
}

// 3x the largest oscillation of u over one cell of Omega in the ball, taken
// as the length of the (forward jump x, forward jump y) pair.
double local_tol(const ScalarField& u, const DomainMask& omega, const Ball& b) {
  const GridSpace& s = u.space;
  auto live = [&](Index i, Index j) { return s.in_grid(i, j) && omega.inside(i, j) && u.support(i, j); };
  double osc = 0.0, scale = 0.0;
  s.for_each_in_ball(b, [&](Index i, Index j) {
    if (!live(i, j)) return;
    scale = std::max(scale, std::abs(u.values(i, j)));
    const double jx = live(i + 1, j) ? u.values(i + 1, j) - u.values(i, j) : 0.0;
    const double jy = live(i, j + 1) ? u.values(i, j + 1) - u.values(i, j) : 0.0;
    osc = std::max(osc, std::hypot(jx, jy));
  });
  return std::max(3.0 * osc, 1e-12 * (1.0 + scale));
}

const GridSpace& grid_of(const ScalarField& u, const DomainMask& omega) {
  if (!u.space.same_grid(omega.space)) throw Error("field and domain live on different grids");
  return omega.space;
}

}  // namespace

std::string to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::exists: return "exists";
    case TraceStatus::fails: return "fails";
    default: return "inconclusive";
  }
}

std::vector<double> default_trace_radii(const DomainMask& omega) {
  return dyadic_radii(omega.diameter() / 8.0, 4.0 * omega.space.h());
}

TraceResult trace_at(const ScalarField& u, const DomainMask& omega, const Point& x, const TraceParams& params) {
  grid_of(u, omega);
  TraceResult res;
  res.point = x;
  res.radii = checked_radii(omega, params);
  std::vector<std::vector<Sample>> cells(res.radii.size());
  for (size_t k = 0; k < cells.size(); ++k) gather(u, omega, Ball(x, res.radii[k]), cells[k]);
  while (params.trim_unresolved && cells.size() > 2 && cells.back().empty()) {
    cells.pop_back();
    res.radii.pop_back();
  }
  if (cells.back().empty()) throw Error("no interior mass at resolution");
  const size_t K = res.radii.size();

  for (size_t k = 0; k < K; ++k) {
    double s = 0, w = 0;
    for (const Sample& c : cells[k]) {
      s += c.value * c.mass;
      w += c.mass;
    }
    res.averages.push_back(s / w);
  }
  const double cstar = res.averages.back();
  for (size_t k = 0; k < K; ++k) res.diagnostics.push_back(mean_abs_dev(cells[k], cstar));

  double lq = 0, w = 0;
  for (const Sample& c : cells.back()) {
    lq += std::pow(std::abs(c.value - cstar), params.q) * c.mass;
    w += c.mass;
  }
  res.lq_final = std::pow(lq / w, 1.0 / params.q);

  res.tol = params.tol >= 0 ? params.tol : local_tol(u, omega, Ball(x, res.radii.back()));
  res.fail_floor = 10.0 * res.tol;

  // Candidate constants: quantiles of u over the largest ball, plus c*.
  std::vector<double> vals;
  for (const Sample& c : cells.front()) vals.push_back(c.value);
  std::sort(vals.begin(), vals.end());
  std::vector<double> cands{cstar};
  const int nq = std::max(params.quantiles, 2);
  for (int q = 0; q < nq; ++q)
    cands.push_back(vals[static_cast<size_t>(std::lround(q * (vals.size() - 1.0) / (nq - 1)))]);
  for (size_t k = 0; k < K; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : cands) best = std::min(best, mean_abs_dev(cells[k], c));
    res.certificate.push_back(best);
  }

  if (K >= 4) {
    bool grows = true;
    for (size_t k = K - 3; k < K; ++k) {
      const double prev = std::abs(res.averages[k - 1]), cur = std::abs(res.averages[k]);
      if (!(cur >= 1.1 * prev) || cur - prev <= res.tol) grows = false;
    }
    res.divergent = grows;
  }

  const auto& a = res.averages;
  bool cauchy = K < 2 || std::abs(a[K - 1] - a[K - 2]) <= res.tol;
  if (K >= 3) cauchy = cauchy && std::abs(a[K - 2] - a[K - 3]) <= 2.0 * res.tol;
  const bool certified_gap = std::all_of(res.certificate.begin(), res.certificate.end(),
                                         [&](double c) { return c >= res.fail_floor; });
  if (res.diagnostics.back() <= res.tol && cauchy) {
    res.status = TraceStatus::exists;
    res.value = cstar;
  } else if (certified_gap || res.divergent) {
    res.status = TraceStatus::fails;
  }
  return res;
}

std::vector<TraceResult> trace_field(const ScalarField& u, const DomainMask& omega,
                                     const std::vector<BoundarySample>& samples, const TraceParams& params) {
  std::vector<TraceResult> out;
  for (const BoundarySample& s : samples) {
    try {
      out.push_back(trace_at(u, omega, s.point, params));
    } catch (const Error& e) {
      TraceResult r;
      r.point = s.point;
      r.error = e.what();
      out.push_back(r);
    }
    out.back().part = s.part;
  }
  return out;
}

LinearityReport trace_linearity(const ScalarField& u, const ScalarField& v, double a, double b,
                                const DomainMask& omega, const std::vector<BoundarySample>& samples,
                                const TraceParams& params) {
  const ScalarField w(u.space, a * u.values + b * v.values, u.support && v.support);
  const auto tu = trace_field(u, omega, samples, params);
  const auto tv = trace_field(v, omega, samples, params);
  const auto tw = trace_field(w, omega, samples, params);
  LinearityReport rep;
  for (size_t k = 0; k < samples.size(); ++k) {
    if (!tu[k].value || !tv[k].value || !tw[k].value) continue;
    ++rep.compared;
    const double defect = std::abs(*tw[k].value - a * *tu[k].value - b * *tv[k].value);
    rep.max_defect = std::max(rep.max_defect, defect);
    const double tol = std::max({tu[k].tol, tv[k].tol, tw[k].tol});
    if (defect > 2.0 * tol) rep.pass = false;
  }
  return rep;
}

bool ZeroTraceReport::all_pass() const {
  return std::all_of(points.begin(), points.end(), [](const ZeroTraceResult& r) { return r.pass; });
}

ZeroTraceReport zero_trace_check(const ScalarField& u, const DomainMask& omega,
                                 const std::vector<BoundarySample>& samples, const TraceParams& params) {
  const GridSpace& s = grid_of(u, omega);
  const std::vector<double> radii = checked_radii(omega, params);
  const RealField& m = s.mass();
  const double floor = 0.02 * omega.inside.select(u.values.abs(), 0.0).maxCoeff();
  ZeroTraceReport rep;
  for (const BoundarySample& bs : samples) {
    ZeroTraceResult r;
    r.point = bs.point;
    for (double rad : radii) {
      double num = 0, den = 0;
      s.for_each_in_ball(Ball(bs.point, rad), [&](Index i, Index j) {
        den += m(i, j);
        if (omega.inside(i, j) && u.support(i, j)) num += std::abs(u.values(i, j)) * m(i, j);
      });
      if (den <= 0) throw Error("no interior mass at resolution");
      r.ratios.push_back(num / den);
    }
    r.tol = params.tol >= 0 ? params.tol
                            : std::max(local_tol(u, omega, Ball(bs.point, radii.back())), floor);
    r.pass = r.ratios.back() <= r.tol && r.ratios.back() <= r.ratios.front();
    rep.points.push_back(std::move(r));
  }
  return rep;
}

bool same_boundary_values(const ScalarField& u, const ScalarField& f, const DomainMask& omega,
                          const std::vector<BoundarySample>& samples, const TraceParams& params) {
  const ScalarField d(u.space, u.values - f.values, u.support && f.support);
  return zero_trace_check(d, omega, samples, params).all_pass();
}

ZeroExtension zero_extension(const ScalarField& u, const DomainMask& omega, int collar) {
  const GridSpace& s = grid_of(u, omega);
  const CellMask live = omega.inside && u.support;
  ZeroExtension out{ScalarField(s, live.select(u.values, 0.0)), 0, 0, 0, 0};
  out.tv_u = variation_density(ScalarField(s, u.values, live)).sum();
  const RealField dens = variation_density(out.hat);

  for (Index j = 0; j < s.ny(); ++j)
    for (Index i = 0; i < s.nx(); ++i) {
      bool near = false;
      for (Index dj = -collar; dj <= collar && !near; ++dj)
        for (Index di = -collar; di <= collar && !near; ++di)
          if (s.in_grid(i + di, j + dj) && omega.inside(i + di, j + dj) != omega.inside(i, j)) near = true;
      if (near)
        out.tv_collar += dens(i, j);
      else if (omega.inside(i, j))
        out.tv_interior += dens(i, j);
      else
        out.tv_exterior += dens(i, j);
    }
  return out;
}

OrderingReport ordering_check(const ScalarField& u, const DomainMask& omega,
                              const std::vector<BoundarySample>& samples, const TraceParams& params) {
  const auto traces = trace_field(u, omega, samples, params);
  const ZeroExtension ext = zero_extension(u, omega);
  const std::vector<double> radii = checked_radii(omega, params);
  std::vector<Point> pts;
  std::vector<double> vals;
  for (const auto& t : traces)
    if (t.value) {
      pts.push_back(t.point);
      vals.push_back(*t.value);
    }
  OrderingReport rep;
  if (pts.empty()) return rep;
  const std::vector<double> tail(radii.end() - std::min<size_t>(2, radii.size()), radii.end());
  const ApproxLimits lim = approx_limits(ext.hat, pts, tail);
  for (size_t k = 0; k < pts.size(); ++k) {
    ++rep.compared;
    if (vals[k] < lim.lower[k] - lim.jump_tol || vals[k] > lim.upper[k] + lim.jump_tol) ++rep.violations;
  }
  return rep;
}

std::vector<double> boundary_weights(const DomainMask& omega, const std::vector<BoundarySample>& samples,
                                     double R) {
  if (samples.empty()) throw Error("no boundary samples");
  const GridSpace& s = omega.space;
  const CoverSolution cover = content_HR(s, topological_boundary(omega).cells, R);
  const BallSums mass(s, s.mass());
  std::vector<double> w(samples.size(), 0.0);
  std::vector<size_t> inside;
  for (const Ball& b : cover.balls) {
    const double cost = mass(b) / b.radius;
    inside.clear();
    for (size_t k = 0; k < samples.size(); ++k)
      if (b.contains(samples[k].point)) inside.push_back(k);
    if (inside.empty()) {
      size_t best = 0;
      for (size_t k = 1; k < samples.size(); ++k)
        if ((samples[k].point - b.center).squaredNorm() < (samples[best].point - b.center).squaredNorm())
          best = k;
      inside.push_back(best);
    }
    for (size_t k : inside) w[k] += cost / static_cast<double>(inside.size());
  }
  return w;
}

L1TraceReport l1_trace_inequality_check(const std::vector<std::pair<std::string, ScalarField>>& corpus,
                                        const DomainMask& omega, const std::vector<BoundarySample>& samples,
                                        const std::vector<double>& weights, const TraceParams& params) {
  if (weights.size() != samples.size()) throw Error("one weight per sample required");
  L1TraceReport rep;
  for (const auto& [name, u] : corpus) {
    const ScalarField uo(u.space, u.values, u.support && omega.inside);
    const double den = uo.l1() + total_variation(uo).total;
    if (den <= 0) {
      rep.excluded.push_back(name);
      continue;
    }
    const auto traces = trace_field(uo, omega, samples, params);
    double lhs = 0;
    bool ok = true;
    for (size_t k = 0; k < traces.size() && ok; ++k) {
      if (traces[k].status != TraceStatus::exists) ok = false;
      else lhs += weights[k] * std::abs(*traces[k].value);
    }
    if (!ok) {
      rep.excluded.push_back(name);
      continue;
    }
    rep.ratios.emplace_back(name, lhs / den);
    rep.C_T = std::max(rep.C_T, lhs / den);
  }
  return rep;
}

double radon_boundary_lemma_check(const RealField& nu, const DomainMask& omega,
                                  const std::vector<BoundarySample>& samples, double threshold,
                                  const TraceParams& params) {
  if (samples.empty()) return 0.0;
  const GridSpace& s = omega.space;
  const std::vector<double> radii = checked_radii(omega, params);
  const RealField& m = s.mass();
  int over = 0;
  for (const BoundarySample& bs : samples) {
    double worst = 0;
    for (size_t k = radii.size() - std::min<size_t>(3, radii.size()); k < radii.size(); ++k) {
      double num = 0, den = 0;
      s.for_each_in_ball(Ball(bs.point, radii[k]), [&](Index i, Index j) {
        den += m(i, j);
        if (omega.inside(i, j)) num += nu(i, j);
      });
      if (den > 0) worst = std::max(worst, radii[k] * num / den);
    }
    if (worst > threshold) ++over;
  }
  return static_cast<double>(over) / static_cast<double>(samples.size());
}

void write_trace_csv(const std::vector<TraceResult>& results, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << "x,y,status,value,final_avg\n";
  char buf[256];
  for (const auto& r : results) {
    const double final_avg = r.diagnostics.empty() ? std::nan("") : r.diagnostics.back();
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s,%.12g,%.12g\n", r.point.x(), r.point.y(),
                  to_string(r.status).c_str(), r.value ? *r.value : std::nan(""), final_avg);
    f << buf;
  }
}

}  // namespace bvlab
