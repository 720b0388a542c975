#include "bvlab/semmes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace bvlab {

double CuspParams::height(double z1) const { return z1 <= 0 ? 0.0 : std::pow(z1, beta); }

bool CuspParams::in_closure(const Point& z, double slack) const {
  return z.x() >= -slack && z.x() <= 1 + slack && std::abs(z.y()) <= height(std::min(z.x(), 1.0)) + slack;
}

double CuspParams::distance_to_closure(const Point& z) const {
  if (in_closure(z)) return 0.0;
  // Upper half by symmetry; the closure is the region under v -> v^beta on [0, 1].
  const Point q(z.x(), std::abs(z.y()));
  double best = std::numeric_limits<double>::infinity();
  if (q.x() >= 1) best = std::hypot(q.x() - 1, std::max(0.0, q.y() - 1));
  auto d = [&](double v) { return (Point(v, height(v)) - q).norm(); };
  const int n = 2000;
  int kbest = 0;
  double dbest = d(0.0);
  for (int k = 1; k <= n; ++k) {
    const double dk = d(double(k) / n);
    if (dk < dbest) dbest = dk, kbest = k;
  }
  double lo = std::max(0.0, (kbest - 1.0) / n), hi = std::min(1.0, (kbest + 1.0) / n);
  for (int it = 0; it < 60; ++it) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (d(a) < d(b)) hi = b;
    else lo = a;
  }
  return std::min({best, dbest, d(0.5 * (lo + hi))});
}

SemmesCase semmes_case(double x1, double y1, double t, const CuspParams& cusp) {
  const double z1 = x1 + t;
  if (y1 - z1 >= cusp.height(z1))
    return cusp.in_closure(Point(z1, t)) ? SemmesCase::pencil : SemmesCase::parabola;
  return SemmesCase::converging;
}

double semmes_profile(double x1, double y1, double t, const CuspParams& cusp) {
  const double z1 = x1 + t;
  return std::max(0.0, std::min({t, cusp.height(z1), y1 - z1}));
}

Point semmes_point(double x1, double y1, double s, double t, const CuspParams& cusp) {
  return Point(x1 + t, s * semmes_profile(x1, y1, t, cusp));
}

CurveFamily build_family(double x1, double y1, int n_curves, int n_samples, const CuspParams& cusp) {
  if (!(0 < x1 && x1 < y1 && y1 < 1)) throw Error("curve family needs 0 < x1 < y1 < 1");
  if (n_curves < 1 || n_samples < 1) throw Error("curve family needs positive counts");
  if (cusp.beta <= 0) throw Error("cusp degree must be positive");
  CurveFamily f;
  f.x1 = x1;
  f.y1 = y1;
  f.cusp = cusp;
  f.n_samples = n_samples;
  f.dt = (y1 - x1) / n_samples;
  f.speed_bound = std::sqrt(1.0 + std::pow(std::max(1.0, cusp.beta), 2));
  const double ds = 2.0 / n_curves;
  for (int i = 0; i < n_curves; ++i) {
    SemmesCurve c;
    c.s = -1.0 + (i + 0.5) * ds;
    c.points.reserve(n_samples + 1);
    c.cases.reserve(n_samples + 1);
    for (int k = 0; k <= n_samples; ++k) {
      const double t = k == n_samples ? y1 - x1 : k * f.dt;
      c.points.push_back(semmes_point(x1, y1, c.s, t, cusp));
      c.cases.push_back(semmes_case(x1, y1, t, cusp));
    }
    f.curves.push_back(std::move(c));
    f.alpha.push_back(0.5 * ds);
  }
  // The casewise formula uses y1 - z1 throughout the converging case.
  for (int k = 0; k <= 4 * n_samples && !f.casewise_jump; ++k) {
    const double t = (y1 - x1) * k / (4.0 * n_samples);
    if (semmes_case(x1, y1, t, cusp) == SemmesCase::converging && y1 - x1 - t > t * (1 + 1e-9) + 1e-12)
      f.casewise_jump = true;
  }
  return f;
}

CurveFamily build_family(const Point& x, const Point& y, int n_curves, int n_samples, const CuspParams& cusp) {
  if (x.y() != 0.0 || y.y() != 0.0) throw Error("endpoints must lie on the cusp axis");
  return build_family(x.x(), y.x(), n_curves, n_samples, cusp);
}

double max_distance_to_closure(const CurveFamily& f) {
  double m = 0.0;
  for (const auto& c : f.curves)
    for (const auto& p : c.points) m = std::max(m, f.cusp.distance_to_closure(p));
  return m;
}

std::pair<double, double> speed_range(const CurveFamily& f) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& c : f.curves)
    for (size_t k = 0; k + 1 < c.points.size(); ++k) {
      const double v = (c.points[k + 1] - c.points[k]).norm() / f.dt;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return {lo, hi};
}

double curve_occupation(const CurveFamily& f, const Rect& A) {
  if (A.isEmpty()) return 0.0;
  // z1 = x1 + t is shared by all curves, so only t in the rectangle's column matters.
  const int k0 = std::max(0, int(std::floor((A.min().x() - f.x1) / f.dt - 0.5)));
  const int k1 = std::min(f.n_samples - 1, int(std::ceil((A.max().x() - f.x1) / f.dt - 0.5)));
  double total = 0.0;
  for (int k = k0; k <= k1; ++k) {
    const double t = (k + 0.5) * f.dt;
    const double z1 = f.x1 + t;
    if (z1 < A.min().x() || z1 > A.max().x()) continue;
    const double g = semmes_profile(f.x1, f.y1, t, f.cusp);
    for (size_t i = 0; i < f.curves.size(); ++i) {
      const double z2 = f.curves[i].s * g;
      if (z2 >= A.min().y() && z2 <= A.max().y()) total += f.alpha[i] * f.dt;
    }
  }
  return total;
}

namespace {

// int_{-L}^{L} (z1^2 + v^2)^(alpha/2) dv
double column_mass(const CuspParams& cusp, double z1, double L) {
  if (L <= 0) return 0.0;
  if (cusp.alpha == 0.0) return 2 * L;
  if (cusp.alpha == -1.0) return 2 * std::asinh(L / z1);
  const int n = 64;
  double m = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = L * (k + 0.5) / n;
    m += std::pow(z1 * z1 + v * v, 0.5 * cusp.alpha);
  }
  return 2 * m * L / n;
}

}  // namespace

double cusp_ball_mass(const CuspParams& cusp, double c1, double r) {
  if (r <= 0) return 0.0;
  // z1 = c1 + r sin(theta) absorbs the square-root end behaviour.
  const double ta = std::asin(std::max(-1.0, -c1 / r));
  const double tb = std::asin(std::min(1.0, (1 - c1) / r));
  const int n = 2048;
  const double dth = (tb - ta) / n;
  double m = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = ta + (k + 0.5) * dth;
    const double z1 = c1 + r * std::sin(th);
    if (z1 <= 0) continue;
    const double half = r * std::cos(th);
    m += column_mass(cusp, z1, std::min(cusp.height(z1), half)) * half;
  }
  return m * dth;
}

RieszKernel::RieszKernel(const CuspParams& cusp, double c1, int table_size) : cusp_(cusp), c1_(c1) {
  const double lo = std::log(1e-6), hi = std::log(2.5);
  for (int k = 0; k < table_size; ++k) {
    const double lr = lo + (hi - lo) * k / (table_size - 1);
    log_r_.push_back(lr);
    log_m_.push_back(std::log(cusp_ball_mass(cusp, c1, std::exp(lr))));
  }
}

double RieszKernel::ball_mass(double r) const {
  const double lr = std::log(r);
  if (lr <= log_r_.front()) return std::exp(log_m_.front() + 2 * (lr - log_r_.front()));
  if (lr >= log_r_.back()) return std::exp(log_m_.back());
  const auto it = std::upper_bound(log_r_.begin(), log_r_.end(), lr);
  const size_t k = size_t(it - log_r_.begin()) - 1;
  const double w = (lr - log_r_[k]) / (log_r_[k + 1] - log_r_[k]);
  return std::exp((1 - w) * log_m_[k] + w * log_m_[k + 1]);
}

double RieszKernel::operator()(const Point& z) const {
  const double d = (z - Point(c1_, 0.0)).norm();
  return d <= 0 ? std::numeric_limits<double>::infinity() : d / ball_mass(d);
}

namespace {

double riesz_integral(const CuspParams& cusp, const RieszKernel& kx, const RieszKernel& ky, const Rect& A, int n) {
  const double a1 = std::max(0.0, A.min().x()), a2 = std::min(1.0, A.max().x());
  if (a2 <= a1) return 0.0;
  const double dz1 = (a2 - a1) / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z1 = a1 + (i + 0.5) * dz1;
    const double H = cusp.height(z1);
    const double b1 = std::max(-H, A.min().y()), b2 = std::min(H, A.max().y());
    if (b2 <= b1) continue;
    const double dz2 = (b2 - b1) / n;
    for (int j = 0; j < n; ++j) {
      const Point z(z1, b1 + (j + 0.5) * dz2);
      const double w = cusp.alpha == 0.0 ? 1.0 : std::pow(z.norm(), cusp.alpha);
      total += (kx(z) + ky(z)) * w * dz1 * dz2;
    }
  }
  return total;
}

}  // namespace

double riesz_integral(const CurveFamily& f, const Rect& A, int n) {
  return riesz_integral(f.cusp, RieszKernel(f.cusp, f.x1), RieszKernel(f.cusp, f.y1), A, n);
}

SemmesCheck check_semmes_condition(const CurveFamily& f, const std::vector<Rect>& sets, int rhs_quadrature) {
  const RieszKernel kx(f.cusp, f.x1), ky(f.cusp, f.y1);
  SemmesCheck c;
  for (size_t a = 0; a < sets.size(); ++a) {
    const double l = curve_occupation(f, sets[a]);
    const double r = riesz_integral(f.cusp, kx, ky, sets[a], rhs_quadrature);
    double q = 0.0;
    if (r > 0) q = l / r;
    else if (l > 0) c.violations.push_back(a);
    c.lhs.push_back(l);
    c.rhs.push_back(r);
    c.ratio.push_back(q);
    c.C = std::max(c.C, q);
  }
  return c;
}

std::vector<Rect> tip_rectangles(const CurveFamily& f, int n) {
  std::vector<Rect> out;
  const double lo = std::log(1.6 * f.x1), hi = std::log(0.95 * f.y1);
  for (int k = 0; k < n; ++k) {
    const double c = std::exp(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
    const double H = f.cusp.height(c);
    double b1 = -H, b2 = H;
    if (k % 3 == 1) b1 = 0.0;
    if (k % 3 == 2) b1 = -H / 4, b2 = H / 4;
    out.emplace_back(Point(0.85 * c, b1), Point(1.15 * c, b2));
  }
  return out;
}

KernelBoundCheck kernel_lower_bound_check(const CurveFamily& f, int n_points) {
  // Parabola regime: first maximal run of t on a fine grid.
  const int m = 20000;
  double ta = -1, tb = -1;
  for (int k = 0; k <= m; ++k) {
    const double t = f.length() * k / m;
    if (semmes_case(f.x1, f.y1, t, f.cusp) == SemmesCase::parabola) {
      if (ta < 0) ta = t;
      tb = t;
    } else if (ta >= 0) {
      break;
    }
  }
  if (ta < 0 || tb <= ta) throw Error("curve family has no parabola regime");
  const RieszKernel kx(f.cusp, f.x1);
  const int nz1 = std::max(1, int(std::lround(std::sqrt(double(n_points)))));
  const int nz2 = (n_points + nz1 - 1) / nz1;
  KernelBoundCheck out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nz1 && int(out.points.size()) < n_points; ++i) {
    const double z1 = f.x1 + ta + (tb - ta) * (0.05 + 0.9 * (i + 0.5) / nz1);
    const double H = f.cusp.height(z1);
    for (int j = 0; j < nz2 && int(out.points.size()) < n_points; ++j) {
      const Point z(z1, H * (-0.9 + 1.8 * (j + 0.5) / nz2));
      const double d = (z - f.x()).norm();
      const double q = 8 * z1 * z1 * d / cusp_ball_mass(f.cusp, f.x1, d);
      out.points.push_back(z);
      out.ratio.push_back(q);
      out.min_ratio = std::min(out.min_ratio, q);
    }
  }
  return out;
}

void write_family_csv(const CurveFamily& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out.precision(17);
  out << "curve,s,t,x1,x2,case\n";
  for (size_t i = 0; i < f.curves.size(); ++i) {
    const auto& c = f.curves[i];
    for (size_t k = 0; k < c.points.size(); ++k)
      out << i << ',' << c.s << ',' << c.points[k].x() - f.x1 << ',' << c.points[k].x() << ',' << c.points[k].y()
          << ',' << int(c.cases[k]) << '\n';
  }
  if (!out) throw Error("cannot write " + path);
}

nlohmann::json to_json(const SemmesCheck& c) {
  nlohmann::json j;
  j["C"] = c.C;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["ratio"] = c.ratio;
  j["violations"] = c.violations;
  return j;
}

}  // namespace bvlab
