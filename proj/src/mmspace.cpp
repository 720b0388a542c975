#include "bvlab/mmspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bvlab {

GridSpace::GridSpace(Point origin, Index nx, Index ny, double h, Weight weight)
    : origin_(std::move(origin)), nx_(nx), ny_(ny), h_(h), weight_(weight) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error("cell size must be positive");
  if (nx <= 0 || ny <= 0) throw Error("grid extent must be a positive multiple of the cell size");
  auto mass = std::make_shared<RealField>(nx, ny);
  const double cell_area = h * h;
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      Point c = center(i, j);
      // A center sitting on the singularity is sampled a quarter cell off.
      if (weight.singular_at_origin() && c.norm() < 1e-12 * h) c += Point(0.25 * h, 0.25 * h);
      const double w = weight(c);
      if (!(w > 0.0) || !std::isfinite(w)) throw Error("weight must be positive and finite");
      (*mass)(i, j) = w * cell_area;
    }
  }
  mass_ = std::move(mass);
}

std::optional<Cell> GridSpace::locate(const Point& p) const {
  const double fx = (p.x() - origin_.x()) / h_;
  const double fy = (p.y() - origin_.y()) / h_;
  const auto i = static_cast<Index>(std::floor(fx));
  const auto j = static_cast<Index>(std::floor(fy));
  if (!in_grid(i, j)) return std::nullopt;
  return Cell{i, j};
}

void GridSpace::row_range(const Ball& b, Index& jlo, Index& jhi) const {
  const double lo = (b.center.y() - b.radius - origin_.y()) / h_ - 0.5;
  const double hi = (b.center.y() + b.radius - origin_.y()) / h_ - 0.5;
  jlo = std::max<Index>(0, static_cast<Index>(std::floor(lo)));
  jhi = std::min<Index>(ny_ - 1, static_cast<Index>(std::ceil(hi)));
}

bool GridSpace::row_span(const Ball& b, Index j, Index& ilo, Index& ihi) const {
  const double yc = origin_.y() + (static_cast<double>(j) + 0.5) * h_;
  const double dy = yc - b.center.y();
  const double r2 = b.radius * b.radius;
  const double rem = r2 - dy * dy;
  if (rem <= 0.0) return false;
  const double half = std::sqrt(rem);
  const double lo = (b.center.x() - half - origin_.x()) / h_ - 0.5;
  const double hi = (b.center.x() + half - origin_.x()) / h_ - 0.5;
  ilo = static_cast<Index>(std::floor(lo));
  ihi = static_cast<Index>(std::ceil(hi));
  // Settle the ends with the exact membership test used by Ball::contains.
  auto inside = [&](Index i) {
    const double xc = origin_.x() + (static_cast<double>(i) + 0.5) * h_;
    const double dx = xc - b.center.x();
    return dx * dx + dy * dy < r2;
  };
  while (ilo <= ihi && !inside(ilo)) ++ilo;
  while (ihi >= ilo && !inside(ihi)) --ihi;
  ilo = std::max<Index>(ilo, 0);
  ihi = std::min<Index>(ihi, nx_ - 1);
  return ilo <= ihi;
}

GridSpace grid_space_from_json(const nlohmann::json& j) {
  const auto& o = j.at("origin");
  const auto& e = j.at("extent");
  const double h = j.at("cell").get<double>();
  if (!(h > 0.0)) throw Error("cell size must be positive");
  auto count = [h](double len) {
    const double n = std::round(len / h);
    if (n < 1.0 || std::abs(n * h - len) > 1e-9 * std::max(1.0, len))
      throw Error("extent is not a positive multiple of the cell size");
    return static_cast<Index>(n);
  };
  Weight w;
  if (j.contains("weight")) {
    const auto& wj = j.at("weight");
    const auto kind = wj.value("kind", std::string("constant"));
    if (kind == "constant") {
      w = Weight::constant(wj.value("value", 1.0));
    } else if (kind == "power") {
      w = Weight::power(wj.at("alpha").get<double>());
    } else {
      throw Error("unknown weight kind: " + kind);
    }
  }
  return GridSpace(Point(o.at(0).get<double>(), o.at(1).get<double>()),
                   count(e.at(0).get<double>()), count(e.at(1).get<double>()), h, w);
}

nlohmann::json to_json(const GridSpace& space) {
  nlohmann::json w;
  if (space.weight().kind == Weight::Kind::constant) {
    w = {{"kind", "constant"}, {"value", space.weight().value}};
  } else {
    w = {{"kind", "power"}, {"alpha", space.weight().alpha}};
  }
  return {{"origin", {space.origin().x(), space.origin().y()}},
          {"extent", {space.width(), space.height()}},
          {"cell", space.h()},
          {"weight", w}};
}

BallSums::BallSums(const GridSpace& space, const RealField& per_cell)
    : space_(&space), prefix_(space.nx() + 1, space.ny()) {
  prefix_.row(0).setZero();
  for (Index j = 0; j < space.ny(); ++j) {
    double acc = 0.0;
    for (Index i = 0; i < space.nx(); ++i) {
      acc += per_cell(i, j);
      prefix_(i + 1, j) = acc;
    }
  }
}

double BallSums::operator()(const Ball& b) const {
  Index jlo = 0, jhi = -1;
  space_->row_range(b, jlo, jhi);
  double total = 0.0;
  for (Index j = jlo; j <= jhi; ++j) {
    Index ilo = 0, ihi = -1;
    if (!space_->row_span(b, j, ilo, ihi)) continue;
    total += prefix_(ihi + 1, j) - prefix_(ilo, j);
  }
  return total;
}

double mu(const GridSpace& space, const CellMask& region) {
  return region.select(space.mass(), 0.0).sum();
}

namespace {

void require_resolved(const GridSpace& space, const Ball& b) {
  if (b.radius < space.h()) throw Error("ball below resolution");
}

}  // namespace

double mu_ball(const GridSpace& space, const Ball& b) {
  require_resolved(space, b);
  double total = 0.0;
  const auto& m = space.mass();
  space.for_each_in_ball(b, [&](Index i, Index j) { total += m(i, j); });
  return total;
}

double mu_ball(const GridSpace& space, const Ball& b, const CellMask& mask) {
  require_resolved(space, b);
  double total = 0.0;
  const auto& m = space.mass();
  space.for_each_in_ball(b, [&](Index i, Index j) {
    if (mask(i, j)) total += m(i, j);
  });
  return total;
}

DoublingReport estimate_doubling(const GridSpace& space, const CellMask* mask,
                                 const std::vector<Point>& centers,
                                 const std::vector<double>& radii) {
  if (centers.empty() || radii.empty()) throw Error("doubling estimate needs centers and radii");
  const double rmax_allowed = 0.5 * std::max(space.width(), space.height());
  for (double r : radii) {
    if (r < 4.0 * space.h() * (1.0 - 1e-12) || r > rmax_allowed)
      throw Error("doubling radii must lie in [4h, extent/2]");
  }
  const RealField weighted = mask ? RealField(mask->select(space.mass(), 0.0)) : space.mass();
  const BallSums sums(space, weighted);
  auto measure = [&](const Ball& b) {
    const double m = sums(b);
    if (!(m > 0.0)) throw Error("degenerate sample");
    return m;
  };

  DoublingReport report;
  report.doubling_constant = 1.0;
  const double rmax = *std::max_element(radii.begin(), radii.end());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const Point& x : centers) {
    const double big = measure(Ball(x, rmax));
    for (double r : radii) {
      const Ball b(x, r);
      const double small = measure(b);
      const double ratio = measure(b.dilate(2.0)) / small;
      report.samples.push_back({b, ratio});
      report.doubling_constant = std::max(report.doubling_constant, ratio);
      if (r < rmax) {
        const double lx = std::log(r / rmax);
        sxy += lx * std::log(small / big);
        sxx += lx * lx;
      }
    }
  }
  // Least squares through the origin of log mass ratio against log radius ratio.
  report.mass_exponent = sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  return report;
}

std::vector<double> dyadic_radii(double r0, double rmin) {
  std::vector<double> out;
  for (double r = r0; r >= rmin * (1.0 - 1e-12); r *= 0.5) out.push_back(r);
  return out;
}

}  // namespace bvlab
