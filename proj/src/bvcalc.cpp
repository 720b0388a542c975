#include "bvlab/bvcalc.hpp"

#include "bvlab/stencil.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace bvlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_same_shape(const GridSpace& s, const RealField& v, const CellMask& m) {
  if (v.rows() != s.nx() || v.cols() != s.ny() || m.rows() != s.nx() || m.cols() != s.ny())
    throw Error("field does not match its grid");
}

bool is_indicator(const ScalarField& u) {
  for (Index k = 0; k < u.values.size(); ++k)
    if (u.support(k) && u.values(k) != 0.0 && u.values(k) != 1.0) return false;
  return true;
}

// Mass-weighted values of u in B cap support.
void gather(const ScalarField& u, const Ball& b, std::vector<std::pair<double, double>>& out) {
  out.clear();
  const auto& m = u.space.mass();
  u.space.for_each_in_ball(b, [&](Index i, Index j) {
    if (u.support(i, j)) out.emplace_back(u.values(i, j), m(i, j));
  });
}

}  // namespace

ScalarField::ScalarField(GridSpace s, RealField v)
    : ScalarField(s, std::move(v), CellMask::Constant(s.nx(), s.ny(), true)) {}

ScalarField::ScalarField(GridSpace s, RealField v, CellMask sup)
    : space(std::move(s)), values(std::move(v)), support(std::move(sup)) {
  require_same_shape(space, values, support);
  values = support.select(values, 0.0);
  if (!values.allFinite()) throw Error("field values must be finite on the support");
}

double ScalarField::l1(const CellMask& region) const {
  return (region && support).select(values.abs() * space.mass(), 0.0).sum();
}

double ScalarField::max_abs() const { return values.abs().maxCoeff(); }

RealField variation_density(const ScalarField& u) {
  return stencil::variation_density(u.values, u.support, u.space.mass(), u.space.h());
}

VariationResult total_variation(const ScalarField& u, const CellMask& region, TvMethod method) {
  if (region.rows() != u.space.nx() || region.cols() != u.space.ny()) throw Error("region does not match the grid");
  if ((region && !u.support).any()) throw Error("region must lie inside the support");
  VariationResult res;
  res.method = method;
  if (method == TvMethod::interface) {
    if (!is_indicator(u)) throw Error("interface method needs an indicator field");
    res.density = stencil::interface_density(u.values, u.support, u.space.mass(), u.space.h());
  } else {
    res.density = variation_density(u);
  }
  res.density = region.select(res.density, 0.0);
  res.total = res.density.sum();
  return res;
}

VariationResult total_variation(const ScalarField& u, TvMethod method) {
  return total_variation(u, u.support, method);
}

ScalarField mollify(const ScalarField& u) {
  return ScalarField(u.space, stencil::mollify(u.values, u.support), u.support);
}

double perimeter(const DomainMask& e, const CellMask& region) {
  const ScalarField chi(e.space, e.inside.cast<double>(), region);
  return variation_density(chi).sum();
}

RealField perimeter_density(const DomainMask& e) {
  return variation_density(ScalarField(e.space, e.inside.cast<double>()));
}

CoareaReport coarea_check(const ScalarField& u, const CellMask& region, int levels) {
  if (levels < 64) throw Error("coarea needs at least 64 levels");
  CoareaReport rep;
  rep.levels = levels;
  rep.lhs = total_variation(u, region).total;
  const CellMask live = region && u.support;
  if (!live.any()) return rep;
  const double lo = live.select(u.values, std::numeric_limits<double>::infinity()).minCoeff();
  const double hi = live.select(u.values, -std::numeric_limits<double>::infinity()).maxCoeff();
  rep.level_width = (hi - lo) / levels;
  if (hi > lo) {
    for (int k = 0; k <= levels; ++k) {
      const double t = lo + (hi - lo) * k / levels;
      const ScalarField level(u.space, (u.values > t).cast<double>(), u.support);
      const double p = region.select(variation_density(level), 0.0).sum();
      rep.rhs += (k == 0 || k == levels ? 0.5 : 1.0) * p * rep.level_width;
    }
  }
  rep.gap = rep.lhs > 0 ? std::abs(rep.lhs - rep.rhs) / rep.lhs : (rep.rhs > 0 ? 1.0 : 0.0);
  return rep;
}

ApproxLimits approx_limits(const ScalarField& u, const std::vector<Point>& points,
                           const std::vector<double>& radii, double jump_tol, double density_threshold) {
  if (radii.empty()) throw Error("no radii given");
  for (size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] < 4 * u.space.h() * (1 - 1e-12)) throw Error("radii must be at least 4h");
    if (k > 0 && !(radii[k] < radii[k - 1])) throw Error("radii must decrease");
  }
  const double vmin = u.support.select(u.values, std::numeric_limits<double>::infinity()).minCoeff();
  const double vmax = u.support.select(u.values, -std::numeric_limits<double>::infinity()).maxCoeff();
  ApproxLimits out;
  out.jump_tol = jump_tol >= 0 ? jump_tol : 0.05 * (vmax - vmin);
  out.points = points;

  std::vector<std::pair<double, double>> cells;
  auto limits_at = [&](const Point& x, double r, double& lower, double& upper) {
    gather(u, Ball(x, r), cells);
    double total = 0;
    for (const auto& c : cells) total += c.second;
    if (!(total > 0)) return false;
    auto below = [&](double t) {
      double m = 0;
      for (const auto& c : cells) m += c.first < t ? c.second : 0.0;
      return m / total;
    };
    auto above = [&](double t) {
      double m = 0;
      for (const auto& c : cells) m += c.first > t ? c.second : 0.0;
      return m / total;
    };
    double lo = vmin, hi = vmax;
    for (int it = 0; it < 20; ++it) {
      const double mid = 0.5 * (lo + hi);
      (below(mid) <= density_threshold ? lo : hi) = mid;
    }
    lower = lo;
    lo = vmin;
    hi = vmax;
    for (int it = 0; it < 20; ++it) {
      const double mid = 0.5 * (lo + hi);
      (above(mid) <= density_threshold ? hi : lo) = mid;
    }
    upper = hi;
    return true;
  };

  const double r0 = radii.back();
  const double r1 = radii.size() > 1 ? radii[radii.size() - 2] : r0;
  for (const auto& x : points) {
    double l0 = kNaN, u0 = kNaN, l1 = kNaN, u1 = kNaN;
    const bool ok0 = limits_at(x, r0, l0, u0);
    const bool ok1 = limits_at(x, r1, l1, u1);
    const bool unsure = !ok0 || !ok1 || std::abs(l0 - l1) > out.jump_tol || std::abs(u0 - u1) > out.jump_tol;
    out.lower.push_back(l0);
    out.upper.push_back(u0);
    out.representative.push_back(0.5 * (l0 + u0));
    out.jump.push_back(ok0 && u0 - l0 > out.jump_tol);
    out.inconclusive.push_back(unsure);
  }
  return out;
}

SurfaceDensity surface_density(const DomainMask& e, const std::vector<Point>& points,
                               const std::vector<double>& radii) {
  if (radii.empty()) throw Error("no radii given");
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  if (rs.front() < 4 * e.space.h() * (1 - 1e-12)) throw Error("radii must be at least 4h");
  const BallSums per(e.space, perimeter_density(e));
  const BallSums all(e.space, e.space.mass());
  const BallSums in(e.space, e.inside.select(e.space.mass(), 0.0));
  SurfaceDensity out;
  for (const auto& x : points) {
    double up_in = 0, up_out = 0;
    for (double r : rs) {
      const double q = in(Ball(x, r)) / all(Ball(x, r));
      up_in = std::max(up_in, q);
      up_out = std::max(up_out, 1 - q);
    }
    const bool flag = !(up_in > 0.05 && up_out > 0.05);
    double sum = 0, lo = std::numeric_limits<double>::infinity(), hi = 0;
    const size_t used = std::min<size_t>(2, rs.size());
    for (size_t k = 0; k < used; ++k) {
      const Ball b(x, rs[k]);
      const double th = per(b) * rs[k] / all(b);
      sum += th;
      lo = std::min(lo, th);
      hi = std::max(hi, th);
    }
    out.theta.push_back(flag ? kNaN : sum / static_cast<double>(used));
    out.low.push_back(lo);
    out.high.push_back(hi);
    out.flagged.push_back(flag);
  }
  return out;
}

PoincareReport poincare_BV_check(const ScalarField& u, const std::vector<Ball>& balls, double lambda) {
  if (!(lambda >= 1)) throw Error("lambda must be at least 1");
  const BallSums tv(u.space, variation_density(u));
  const BallSums mass(u.space, u.support.select(u.space.mass(), 0.0));
  PoincareReport rep;
  std::vector<std::pair<double, double>> cells;
  for (const auto& b : balls) {
    const Ball big = b.dilate(lambda);
    const double w = big.radius;
    const Point c = big.center;
    if (c.x() - w < u.space.origin().x() || c.y() - w < u.space.origin().y() ||
        c.x() + w > u.space.origin().x() + u.space.width() || c.y() + w > u.space.origin().y() + u.space.height())
      throw Error("dilated ball leaves the grid");
    gather(u, b, cells);
    double m = 0, s = 0;
    for (const auto& [v, mm] : cells) {
      m += mm;
      s += v * mm;
    }
    if (!(m > 0)) throw Error("degenerate sample");
    const double avg = s / m;
    double dev = 0, scale = 0;
    for (const auto& [v, mm] : cells) {
      dev += std::abs(v - avg) * mm;
      scale = std::max(scale, std::abs(v));
    }
    dev /= m;
    const double var = tv(big);
    double C = 0;
    bool violation = false;
    if (dev > 1e-12 * (1 + scale)) {
      if (var > 0) {
        C = dev * mass(big) / (b.radius * var);
      } else {
        C = std::numeric_limits<double>::infinity();
        violation = true;
      }
    }
    rep.constants.push_back(C);
    rep.violations.push_back(violation);
    rep.max_constant = std::max(rep.max_constant, C);
  }
  return rep;
}

namespace {

// P(B, X) from the indicator of B on a window around it.
double ball_perimeter(const GridSpace& space, const Ball& b) {
  const double h = space.h();
  const auto i0 = std::max<Index>(0, static_cast<Index>(std::floor((b.center.x() - b.radius - space.origin().x()) / h)) - 3);
  const auto j0 = std::max<Index>(0, static_cast<Index>(std::floor((b.center.y() - b.radius - space.origin().y()) / h)) - 3);
  const auto i1 = std::min<Index>(space.nx() - 1, static_cast<Index>(std::ceil((b.center.x() + b.radius - space.origin().x()) / h)) + 3);
  const auto j1 = std::min<Index>(space.ny() - 1, static_cast<Index>(std::ceil((b.center.y() + b.radius - space.origin().y()) / h)) + 3);
  const Index nx = i1 - i0 + 1, ny = j1 - j0 + 1;
  RealField v(nx, ny);
  for (Index j = 0; j < ny; ++j)
    for (Index i = 0; i < nx; ++i) v(i, j) = b.contains(space.center(i0 + i, j0 + j)) ? 1.0 : 0.0;
  const RealField mass = space.mass().block(i0, j0, nx, ny);
  return stencil::variation_density(v, CellMask::Constant(nx, ny, true), mass, h).sum();
}

}  // namespace

double find_good_radius(const GridSpace& space, const Point& x, int i, double C_d) {
  const double lo = std::ldexp(1.0, i);
  const double extent = std::min(space.width(), space.height());
  if (2 * lo > 0.5 * extent) throw Error("dyadic scale too large for the grid");
  if (lo < 4 * space.h()) throw Error("dyadic scale below resolution");
  const BallSums mass(space, space.mass());
  for (int k = 0; k <= 8; ++k) {
    const double r = lo * (1 + k / 8.0);
    const Ball b(x, r);
    const double m = mass(b);
    if (m > 0 && ball_perimeter(space, b) <= C_d * m / r) return r;
  }
  throw Error("no good radius");
}

void write_field_csv(const ScalarField& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "x,y,value\n" << std::setprecision(17);
  for (Index j = 0; j < u.space.ny(); ++j)
    for (Index i = 0; i < u.space.nx(); ++i) {
      if (!u.support(i, j)) continue;
      const Point c = u.space.center(i, j);
      out << c.x() << ',' << c.y() << ',' << u.values(i, j) << '\n';
    }
}

ScalarField read_field_csv(const GridSpace& space, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("x,y,value", 0) != 0) throw Error("field CSV must start with x,y,value");
  RealField v = RealField::Zero(space.nx(), space.ny());
  CellMask sup = CellMask::Constant(space.nx(), space.ny(), false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    double x = 0, y = 0, val = 0;
    char c1 = 0, c2 = 0;
    if (!(ss >> x >> c1 >> y >> c2 >> val) || c1 != ',' || c2 != ',') throw Error("bad field CSV row: " + line);
    const auto cell = space.locate(Point(x, y));
    if (!cell) throw Error("field CSV point outside the grid");
    v(cell->i, cell->j) = val;
    sup(cell->i, cell->j) = true;
  }
  return ScalarField(space, v, sup);
}

void write_field_binary(const ScalarField& u, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  const nlohmann::json header = {{"format", "bvlab-field"},
                                 {"nx", u.space.nx()},
                                 {"ny", u.space.ny()},
                                 {"origin", {u.space.origin().x(), u.space.origin().y()}},
                                 {"cell", u.space.h()},
                                 {"dtype", "float64"},
                                 {"order", "row-major"},
                                 {"outside_support", "nan"}};
  out << header.dump() << '\n';
  for (Index j = 0; j < u.space.ny(); ++j)
    for (Index i = 0; i < u.space.nx(); ++i) {
      const double v = u.support(i, j) ? u.values(i, j) : kNaN;
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
}

ScalarField read_field_binary(const GridSpace& space, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw Error("bad field header");
  }
  if (header.value("format", "") != "bvlab-field" || header.value("dtype", "") != "float64")
    throw Error("unsupported field format");
  if (header.at("nx").get<Index>() != space.nx() || header.at("ny").get<Index>() != space.ny() ||
      std::abs(header.at("cell").get<double>() - space.h()) > 1e-12 * space.h())
    throw Error("field does not match the grid");
  RealField v(space.nx(), space.ny());
  CellMask sup(space.nx(), space.ny());
  for (Index j = 0; j < space.ny(); ++j)
    for (Index i = 0; i < space.nx(); ++i) {
      double x = 0;
      if (!in.read(reinterpret_cast<char*>(&x), sizeof x)) throw Error("truncated field data");
      sup(i, j) = !std::isnan(x);
      v(i, j) = sup(i, j) ? x : 0.0;
    }
  return ScalarField(space, v, sup);
}

}  // namespace bvlab
