#include "bvlab/domains.hpp"

#include "bvlab/distance.hpp"
#include "bvlab/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace bvlab {

namespace {

constexpr double kPi = std::numbers::pi;

using Box = Eigen::AlignedBox2d;

Box box(double x0, double y0, double x1, double y1) { return Box(Point(x0, y0), Point(x1, y1)); }

double midpoint(int k, int n) { return (k + 0.5) / n; }

class UnitSquare final : public Shape {
 public:
  bool contains(const Point& p) const override {
    return p.x() > 0 && p.x() < 1 && p.y() > 0 && p.y() < 1;
  }
  Box bounds() const override { return box(0, 0, 1, 1); }
  double feature_size() const override { return 1.0; }
  std::vector<std::string> parts() const override { return {"edge"}; }
  std::vector<BoundarySample> samples_on(const std::string&, int n) const override {
    std::vector<BoundarySample> out;
    for (int k = 0; k < n; ++k) {
      const double s = 4.0 * midpoint(k, n);
      const int side = std::min(3, static_cast<int>(s));
      const double t = s - side;
      const Point p = side == 0 ? Point(t, 0) : side == 1 ? Point(1, t) : side == 2 ? Point(1 - t, 1) : Point(0, 1 - t);
      out.push_back({p, "edge"});
    }
    return out;
  }
};

class Disk : public Shape {
 public:
  explicit Disk(double r) : r_(r) {}
  bool contains(const Point& p) const override { return p.norm() < r_; }
  Box bounds() const override { return box(-r_, -r_, r_, r_); }
  double feature_size() const override { return 2 * r_; }
  std::vector<std::string> parts() const override { return {"arc"}; }
  std::vector<BoundarySample> samples_on(const std::string&, int n) const override {
    std::vector<BoundarySample> out;
    for (int k = 0; k < n; ++k) {
      const double a = 2 * kPi * midpoint(k, n);
      out.push_back({Point(r_ * std::cos(a), r_ * std::sin(a)), "arc"});
    }
    return out;
  }

 protected:
  double r_;
};

// Disk minus the segment [0, r) x {0}; on the grid the slit is the cell row
// centred on the axis.
class SlitDisk final : public Disk {
 public:
  using Disk::Disk;
  bool contains(const Point& p) const override {
    return Disk::contains(p) && !(p.x() > 0 && p.y() == 0);
  }
  double feature_size() const override { return r_; }
  bool axis_centered() const override { return true; }
  CellMask rasterize(const GridSpace& space) const override {
    CellMask m = Shape::rasterize(space);
    const double h = space.h();
    for (Index j = 0; j < space.ny(); ++j)
      for (Index i = 0; i < space.nx(); ++i) {
        const Point c = space.center(i, j);
        if (c.x() > 0 && std::abs(c.y()) < 0.5 * h) m(i, j) = false;
      }
    return m;
  }
  std::vector<std::string> parts() const override { return {"slit", "arc"}; }
  std::vector<BoundarySample> samples_on(const std::string& part, int n) const override {
    if (part == "arc") return Disk::samples_on(part, n);
    std::vector<BoundarySample> out;
    // Keep clear of both slit ends.
    for (int k = 0; k < n; ++k) out.push_back({Point(r_ * (0.15 + 0.7 * midpoint(k, n)), 0), "slit"});
    return out;
  }
};

class ExteriorCusp : public Shape {
 public:
  explicit ExteriorCusp(double beta) : beta_(beta) {}
  bool contains(const Point& p) const override {
    return p.x() > 0 && p.x() < 1 && std::abs(p.y()) < std::pow(p.x(), beta_);
  }
  Box bounds() const override { return box(0, -1, 1, 1); }
  double feature_size() const override { return 2 * std::pow(0.5, beta_); }
  std::vector<std::string> parts() const override { return {"tip", "wall", "edge"}; }
  std::vector<BoundarySample> samples_on(const std::string& part, int n) const override {
    std::vector<BoundarySample> out;
    if (part == "tip") {
      out.push_back({Point(0, 0), "tip"});
    } else if (part == "wall") {
      for (int k = 0; k < n; ++k) {
        const double t = 0.1 + 0.8 * midpoint(k / 2, (n + 1) / 2);
        const double s = (k % 2 == 0) ? 1.0 : -1.0;
        out.push_back({Point(t, s * std::pow(t, beta_)), "wall"});
      }
    } else {
      for (int k = 0; k < n; ++k) out.push_back({Point(1, -0.9 + 1.8 * midpoint(k, n)), "edge"});
    }
    return out;
  }

 protected:
  double beta_;
};

// E_i = {0 < x1 < 1/i, |x2| < x1^beta}; lives on the cusp's grid.
class CuspStrip final : public ExteriorCusp {
 public:
  CuspStrip(double i, double beta) : ExteriorCusp(beta), len_(1.0 / i) {}
  bool contains(const Point& p) const override { return ExteriorCusp::contains(p) && p.x() < len_; }
  double feature_size() const override { return len_; }
  std::vector<std::string> parts() const override { return {"tip", "wall", "edge"}; }
  std::vector<BoundarySample> samples_on(const std::string& part, int n) const override {
    std::vector<BoundarySample> out;
    if (part == "edge") {
      const double hw = std::pow(len_, beta_);
      for (int k = 0; k < n; ++k) out.push_back({Point(len_, hw * (-1 + 2 * midpoint(k, n))), "edge"});
      return out;
    }
    for (auto s : ExteriorCusp::samples_on(part, n)) {
      s.point *= len_;
      if (part == "wall") s.point.y() = std::copysign(std::pow(s.point.x(), beta_), s.point.y());
      out.push_back(s);
    }
    return out;
  }

 private:
  double len_;
};

class InteriorCusp final : public Shape {
 public:
  bool contains(const Point& p) const override {
    return p.norm() < 1 && (p.x() < 0 || std::abs(p.y()) > p.x() * p.x());
  }
  Box bounds() const override { return box(-1, -1, 1, 1); }
  double feature_size() const override { return 1.0; }
  std::vector<std::string> parts() const override { return {"tip", "wall", "arc"}; }
  std::vector<BoundarySample> samples_on(const std::string& part, int n) const override {
    std::vector<BoundarySample> out;
    if (part == "tip") {
      out.push_back({Point(0, 0), "tip"});
    } else if (part == "wall") {
      // The parabola meets the circle at x1 = sqrt((sqrt(5)-1)/2).
      const double tmax = std::sqrt((std::sqrt(5.0) - 1) / 2);
      for (int k = 0; k < n; ++k) {
        const double t = tmax * (0.05 + 0.85 * midpoint(k / 2, (n + 1) / 2));
        out.push_back({Point(t, (k % 2 == 0 ? 1 : -1) * t * t), "wall"});
      }
    } else {
      const double a0 = std::atan2(std::sqrt(5.0) - 1, 2 * std::sqrt((std::sqrt(5.0) - 1) / 2));
      for (int k = 0; k < n; ++k) {
        const double a = a0 + 0.02 + (2 * kPi - 2 * a0 - 0.04) * midpoint(k, n);
        out.push_back({Point(std::cos(a), std::sin(a)), "arc"});
      }
    }
    return out;
  }
};

bool in_cantor(double x, int level) {
  if (x < 0 || x > 1) return false;
  for (int l = 0; l < level; ++l) {
    x *= 3;
    if (x <= 1) continue;
    if (x >= 2) {
      x -= 2;
      continue;
    }
    return false;
  }
  return true;
}

class CantorComplement final : public Shape {
 public:
  explicit CantorComplement(int level) : level_(level) {}
  bool contains(const Point& p) const override {
    return p.x() > 0 && p.x() < 1 && p.y() > 0 && p.y() < 1 && !(in_cantor(p.x(), level_) && in_cantor(p.y(), level_));
  }
  Box bounds() const override { return box(0, 0, 1, 1); }
  double feature_size() const override { return std::pow(3.0, -level_); }
  std::vector<std::string> parts() const override { return {"edge", "dust"}; }
  std::vector<BoundarySample> samples_on(const std::string& part, int n) const override {
    const double side = std::pow(3.0, -level_);
    if (part == "edge") {
      // Points of the outer edge swallowed by a removed square are not boundary points.
      std::vector<BoundarySample> out;
      for (const auto& s : UnitSquare().samples_on(part, n)) {
        bool touches = false;
        for (int k = 0; k < 8 && !touches; ++k) {
          const double a = kPi * k / 4;
          touches = contains(s.point + 0.1 * side * Point(std::cos(a), std::sin(a)));
        }
        if (touches) out.push_back(s);
      }
      return out;
    }
    // Left edges of the squares of C_k x C_k at mid-height; right edges in
    // the first column, whose left edges lie on the outer boundary.
    const int count = 1 << level_;
    auto left_end = [&](int idx) {
      double x = 0, scale = 1;
      for (int l = level_ - 1; l >= 0; --l) {
        scale /= 3;
        if ((idx >> l) & 1) x += 2 * scale;
      }
      return x;
    };
    std::vector<BoundarySample> out;
    const long total = static_cast<long>(count) * count;
    for (int k = 0; k < n; ++k) {
      const long q = (static_cast<long>(k) * total) / n;
      const int ix = static_cast<int>(q % count);
      const double x = ix == 0 ? side : left_end(ix);
      out.push_back({Point(x, left_end(static_cast<int>(q / count)) + side / 2), "dust"});
    }
    return out;
  }

 private:
  int level_;
};

// Level-k polygon of the von Koch snowflake on an equilateral triangle.
class KochPrefix final : public Shape {
 public:
  KochPrefix(int level, double side) : level_(level), side_(side) {
    const double R = side / std::sqrt(3.0);
    for (int k = 0; k < 3; ++k) {
      const double a = kPi / 2 + 2 * kPi * k / 3;
      poly_.emplace_back(R * std::cos(a), R * std::sin(a));
    }
    for (int l = 0; l < level; ++l) {
      std::vector<Point> next;
      for (size_t k = 0; k < poly_.size(); ++k) {
        const Point a = poly_[k], b = poly_[(k + 1) % poly_.size()];
        const Point d = (b - a) / 3;
        // Counter-clockwise polygon: the outward side is on the right.
        const Point bump(0.5 * d.x() + std::sqrt(3.0) / 2 * d.y(), -std::sqrt(3.0) / 2 * d.x() + 0.5 * d.y());
        next.push_back(a);
        next.push_back(a + d);
        next.push_back(a + d + bump);
        next.push_back(a + 2 * d);
      }
      poly_ = std::move(next);
    }
    bounds_ = Box(poly_.front(), poly_.front());
    for (const auto& p : poly_) bounds_.extend(p);
  }
  bool contains(const Point& p) const override {
    bool in = false;
    for (size_t k = 0, m = poly_.size() - 1; k < poly_.size(); m = k++) {
      const Point& a = poly_[k];
      const Point& b = poly_[m];
      if ((a.y() > p.y()) != (b.y() > p.y()) &&
          p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x())
        in = !in;
    }
    return in;
  }
  Box bounds() const override { return bounds_; }
  double feature_size() const override { return side_ * std::pow(3.0, -level_); }
  std::vector<std::string> parts() const override { return {"curve"}; }
  std::vector<BoundarySample> samples_on(const std::string&, int n) const override {
    std::vector<BoundarySample> out;
    for (int k = 0; k < n; ++k) {
      const size_t v = (static_cast<size_t>(k) * poly_.size()) / static_cast<size_t>(n);
      out.push_back({0.5 * (poly_[v] + poly_[(v + 1) % poly_.size()]), "curve"});
    }
    return out;
  }
  // Scanline fill: one sorted crossing list per cell row.
  CellMask rasterize(const GridSpace& space) const override {
    CellMask m = CellMask::Constant(space.nx(), space.ny(), false);
    std::vector<double> xs;
    for (Index j = 0; j < space.ny(); ++j) {
      const double y = space.center(0, j).y();
      xs.clear();
      for (size_t k = 0, q = poly_.size() - 1; k < poly_.size(); q = k++) {
        const Point& a = poly_[k];
        const Point& b = poly_[q];
        if ((a.y() > y) != (b.y() > y)) xs.push_back((b.x() - a.x()) * (y - a.y()) / (b.y() - a.y()) + a.x());
      }
      std::sort(xs.begin(), xs.end());
      for (size_t s = 0; s + 1 < xs.size(); s += 2) {
        const auto i0 = std::max<Index>(0, static_cast<Index>(std::floor((xs[s] - space.origin().x()) / space.h() - 0.5)));
        const auto i1 = std::min<Index>(space.nx() - 1, static_cast<Index>(std::ceil((xs[s + 1] - space.origin().x()) / space.h() - 0.5)));
        for (Index i = i0; i <= i1; ++i) {
          const double x = space.center(i, j).x();
          if (x > xs[s] && x < xs[s + 1]) m(i, j) = true;
        }
      }
    }
    return m;
  }

 private:
  int level_;
  double side_;
  std::vector<Point> poly_;
  Box bounds_;
};

int as_level(double v, const char* what) {
  if (v < 0 || v != std::floor(v)) throw Error(std::string(what) + " must be a nonnegative integer");
  return static_cast<int>(v);
}

}  // namespace

std::vector<BoundarySample> Shape::boundary_samples(int n) const {
  const auto names = parts();
  int shared = 0;
  for (const auto& p : names) shared += (p != "tip");
  std::vector<BoundarySample> out;
  int left = n;
  for (const auto& p : names) {
    if (p == "tip") {
      for (auto& s : samples_on(p, 1)) out.push_back(s);
      --left;
    }
  }
  int k = 0;
  for (const auto& p : names) {
    if (p == "tip") continue;
    const int share = std::max(1, left / shared + (k < left % shared ? 1 : 0));
    for (auto& s : samples_on(p, share)) out.push_back(s);
    ++k;
  }
  return out;
}

CellMask Shape::rasterize(const GridSpace& space) const {
  CellMask m(space.nx(), space.ny());
  for (Index j = 0; j < space.ny(); ++j)
    for (Index i = 0; i < space.nx(); ++i) m(i, j) = contains(space.center(i, j));
  return m;
}

double DomainSpec::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string DomainSpec::str() const {
  std::ostringstream os;
  os << kind;
  char sep = ':';
  for (const auto& [k, v] : params) {
    os << sep << k << '=' << v;
    sep = ',';
  }
  return os.str();
}

DomainSpec parse_domain_spec(const std::string& text) {
  DomainSpec spec;
  const auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("bad domain parameter: " + item);
    try {
      spec.params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("bad domain parameter: " + item);
    }
  }
  return spec;
}

std::shared_ptr<const Shape> make_shape(const DomainSpec& spec) {
  const auto& k = spec.kind;
  if (k == "unit_square") return std::make_shared<UnitSquare>();
  if (k == "disk") return std::make_shared<Disk>(spec.param("r", 1.0));
  if (k == "slit_disk") return std::make_shared<SlitDisk>(spec.param("r", 1.0));
  if (k == "exterior_cusp") return std::make_shared<ExteriorCusp>(spec.param("beta", 2.0));
  if (k == "interior_cusp") return std::make_shared<InteriorCusp>();
  if (k == "cantor_complement") return std::make_shared<CantorComplement>(as_level(spec.param("level", 5), "level"));
  if (k == "koch_prefix")
    return std::make_shared<KochPrefix>(as_level(spec.param("level", 4), "level"), spec.param("side", 1.0));
  if (k == "strip") {
    const double i = spec.param("i", 1.0);
    if (!(i >= 1.0)) throw Error("strip index must be >= 1");
    return std::make_shared<CuspStrip>(i, spec.param("beta", 2.0));
  }
  throw Error("unknown domain kind: " + k);
}

GridSpace default_space(const DomainSpec& spec, double h, Weight weight, double pad) {
  if (!(h > 0)) throw Error("cell size must be positive");
  const auto shape = make_shape(spec);
  const Box b = shape->bounds();
  const double shift = shape->axis_centered() ? 0.5 * h : 0.0;
  auto axis = [&](double lo, double hi, double& origin, Index& n) {
    origin = std::floor((lo - pad) / h + 1e-9) * h - shift;
    n = static_cast<Index>(std::ceil((hi + pad - origin) / h - 1e-9));
  };
  double ox = 0, oy = 0;
  Index nx = 0, ny = 0;
  axis(b.min().x(), b.max().x(), ox, nx);
  axis(b.min().y(), b.max().y(), oy, ny);
  return GridSpace(Point(ox, oy), nx, ny, h, weight);
}

DomainMask make_domain(const DomainSpec& spec, const GridSpace& space) {
  auto shape = make_shape(spec);
  if (shape->feature_size() < 2 * space.h()) throw Error("under-resolved domain");
  DomainMask d{space, shape->rasterize(space), spec.str(), shape};
  if (d.count() == 0) throw Error("empty domain");
  return d;
}

DomainMask make_domain(const std::string& spec, double h, Weight weight, double pad) {
  const auto s = parse_domain_spec(spec);
  return make_domain(s, default_space(s, h, weight, pad));
}

double DomainMask::diameter() const {
  if (shape) return shape->diameter();
  Eigen::AlignedBox2d b;
  for (Index j = 0; j < space.ny(); ++j)
    for (Index i = 0; i < space.nx(); ++i)
      if (inside(i, j)) b.extend(space.center(i, j));
  return b.isEmpty() ? 0.0 : b.diagonal().norm() + space.h() * std::sqrt(2.0);
}

std::vector<BoundarySample> DomainMask::boundary_samples(int n) const {
  if (shape) return shape->boundary_samples(n);
  // Imported masks: evenly strided discrete boundary cells.
  const auto pts = topological_boundary(*this).points();
  std::vector<BoundarySample> out;
  if (pts.empty()) return out;
  for (int k = 0; k < n; ++k) out.push_back({pts[(static_cast<size_t>(k) * pts.size()) / static_cast<size_t>(n)], "cells"});
  return out;
}

std::vector<BoundarySample> DomainMask::boundary_samples(int n, const std::string& part) const {
  if (!shape) throw Error("imported masks have no analytic boundary pieces");
  const auto names = shape->parts();
  if (std::find(names.begin(), names.end(), part) == names.end()) throw Error("no boundary piece named " + part);
  return shape->samples_on(part, n);
}

std::vector<Point> BoundaryMask::points() const {
  return space ? cell_centers(*space, cells) : std::vector<Point>{};
}

DomainMask import_pgm_mask(const std::string& path, const GridSpace& space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P5") throw Error("not a PGM file: " + path);
  auto next_int = [&]() {
    int v = 0;
    while (in >> std::ws && in.peek() == '#') in.ignore(1 << 20, '\n');
    if (!(in >> v)) throw Error("truncated PGM header");
    return v;
  };
  const int w = next_int(), hgt = next_int(), maxval = next_int();
  if (w != space.nx() || hgt != space.ny()) throw Error("PGM size does not match the grid");
  if (maxval <= 0 || maxval > 65535) throw Error("bad PGM maxval");
  CellMask m(space.nx(), space.ny());
  if (magic == "P5") {
    in.get();
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> row(static_cast<size_t>(w * bytes));
    for (int r = 0; r < hgt; ++r) {
      if (!in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size())))
        throw Error("truncated PGM data");
      for (int c = 0; c < w; ++c) {
        const int v = bytes == 1 ? row[c] : (row[2 * c] << 8) | row[2 * c + 1];
        m(c, hgt - 1 - r) = v != 0;
      }
    }
  } else {
    for (int r = 0; r < hgt; ++r)
      for (int c = 0; c < w; ++c) m(c, hgt - 1 - r) = next_int() != 0;
  }
  DomainMask d{space, m, "pgm:" + path, nullptr};
  if (d.count() == 0) throw Error("empty domain");
  return d;
}

BoundaryMask topological_boundary(const DomainMask& omega) {
  const Index nx = omega.space.nx(), ny = omega.space.ny();
  const auto& in = omega.inside;
  BoundaryMask b;
  b.space = &omega.space;
  b.cells = CellMask::Constant(nx, ny, false);
  for (Index j = 0; j < ny; ++j)
    for (Index i = 0; i < nx; ++i) {
      if (in(i, j)) continue;
      b.cells(i, j) = (i > 0 && in(i - 1, j)) || (i + 1 < nx && in(i + 1, j)) || (j > 0 && in(i, j - 1)) ||
                      (j + 1 < ny && in(i, j + 1));
    }
  return b;
}

double ball_density(const GridSpace& space, const CellMask& set, const Point& x, double r) {
  const Ball b(x, r);
  double all = 0, part = 0;
  const auto& m = space.mass();
  space.for_each_in_ball(b, [&](Index i, Index j) {
    all += m(i, j);
    if (set(i, j)) part += m(i, j);
  });
  if (!(all > 0)) throw Error("degenerate sample");
  return part / all;
}

BoundaryMask measure_theoretic_boundary(const DomainMask& e, const std::vector<double>& radii,
                                        double threshold) {
  const auto& space = e.space;
  for (size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] < 4 * space.h() * (1 - 1e-12)) throw Error("radii must be at least 4h");
    if (k > 0 && !(radii[k] < radii[k - 1])) throw Error("radii must decrease");
  }
  const BallSums in_sum(space, e.inside.select(space.mass(), 0.0));
  const BallSums all_sum(space, space.mass());
  BoundaryMask out = topological_boundary(e);
  for (Index j = 0; j < space.ny(); ++j)
    for (Index i = 0; i < space.nx(); ++i) {
      if (!out.cells(i, j)) continue;
      double up_in = 0, up_out = 0;
      for (double r : radii) {
        const Ball b(space.center(i, j), r);
        const double all = all_sum(b);
        const double frac = in_sum(b) / all;
        up_in = std::max(up_in, frac);
        up_out = std::max(up_out, 1 - frac);
      }
      out.cells(i, j) = up_in > threshold && up_out > threshold;
    }
  return out;
}

namespace {

void check_radii(const DomainMask& omega, const std::vector<double>& radii) {
  if (radii.empty()) throw Error("no radii given");
  const double diam = omega.diameter();
  for (double r : radii)
    if (r < 4 * omega.space.h() * (1 - 1e-12) || r >= diam) throw Error("radii must lie in [4h, diam)");
}

}  // namespace

DensityReport check_measure_density(const DomainMask& omega, const std::vector<Point>& samples,
                                    const std::vector<double>& radii) {
  check_radii(omega, radii);
  const auto& space = omega.space;
  const BallSums in_sum(space, omega.inside.select(space.mass(), 0.0));
  const BallSums all_sum(space, space.mass());
  DensityReport rep;
  double cmin = std::numeric_limits<double>::infinity();
  for (const auto& x : samples) {
    std::vector<double> lr, lq;
    bool empty = false;
    for (double r : radii) {
      const Ball b(x, r);
      const double all = all_sum(b);
      if (!(all > 0)) throw Error("degenerate sample");
      const double q = in_sum(b) / all;
      if (q > 0) {
        cmin = std::min(cmin, q);
        lr.push_back(std::log(r));
        lq.push_back(std::log(q));
      } else {
        empty = true;
      }
    }
    if (empty) {
      rep.failures.push_back({x, "no mass of the domain in a sampled ball"});
      continue;
    }
    if (lr.size() >= 2) {
      const double n = static_cast<double>(lr.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t k = 0; k < lr.size(); ++k) {
        sx += lr[k];
        sy += lq[k];
        sxx += lr[k] * lr[k];
        sxy += lr[k] * lq[k];
      }
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      if (slope >= 0.5) rep.failures.push_back({x, "density ratio decays with the radius"});
    }
  }
  rep.c_m = std::isfinite(cmin) ? std::min(1.0, cmin) : 0.0;
  rep.gamma = std::min(0.5, rep.c_m);
  return rep;
}

DensityReport check_codim_boundary(const DomainMask& omega, const std::vector<Point>& samples,
                                   const std::vector<double>& radii) {
  check_radii(omega, radii);
  const auto& space = omega.space;
  const BoundaryMask bd = topological_boundary(omega);
  const BallSums all_sum(space, space.mass());
  DensityReport rep;
  rep.c_m = 0;
  for (const auto& x : samples) {
    for (double r : radii) {
      const Ball b(x, r);
      const double m = all_sum(b);
      if (!(m > 0)) throw Error("degenerate sample");
      std::vector<Point> target;
      space.for_each_in_ball(b, [&](Index i, Index j) {
        if (bd.cells(i, j)) target.push_back(space.center(i, j));
      });
      if (target.empty()) continue;
      const double H = content_HR(space, target, 4 * space.h()).content;
      rep.C_bdry = std::max(rep.C_bdry, H * r / m);
    }
  }
  return rep;
}

DomainMask shrink_domain(const DomainMask& omega, double delta) {
  if (delta < 2 * omega.space.h() * (1 - 1e-12)) throw Error("shrink distance below resolution (delta < 2h)");
  const RealField d = distance_to_complement(omega.space, omega.inside);
  DomainMask out = omega;
  out.inside = omega.inside && (d > delta);
  out.name = omega.name + "/shrunk";
  if (out.count() == 0) throw Error("over-shrunk");
  return out;
}

std::vector<Point> sample_points(const std::vector<BoundarySample>& samples) {
  std::vector<Point> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back(s.point);
  return pts;
}

}  // namespace bvlab
