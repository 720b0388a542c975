#pragma once

#include "bvlab/core.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <memory>
#include <optional>
#include <vector>

namespace bvlab {

/// Density of the measure with respect to planar Lebesgue measure.
struct Weight {
  enum class Kind { constant, power };

  Kind kind = Kind::constant;
  double value = 1.0;  // constant density
  double alpha = 0.0;  // exponent of |x|^alpha

  static Weight constant(double c = 1.0) { return {Kind::constant, c, 0.0}; }
  static Weight power(double a) { return {Kind::power, 1.0, a}; }

  bool singular_at_origin() const { return kind == Kind::power && alpha < 0.0; }

  double operator()(const Point& p) const {
    if (kind == Kind::constant) return value;
    return std::pow(p.norm(), alpha);
  }
};

/// Uniform planar grid carrying the weighted measure mu = w dL^2.
///
/// Cells are addressed as (i, j) with i along x. Cell membership of a ball is
/// decided by the cell center, and every measure in the library is a sum of
/// per-cell masses w(center) h^2. Copies share the mass table.
class GridSpace {
 public:
  GridSpace(Point origin, Index nx, Index ny, double h, Weight weight = {});

  const Point& origin() const { return origin_; }
  Index nx() const { return nx_; }
  Index ny() const { return ny_; }
  Index size() const { return nx_ * ny_; }
  double h() const { return h_; }
  double width() const { return static_cast<double>(nx_) * h_; }
  double height() const { return static_cast<double>(ny_) * h_; }
  const Weight& weight() const { return weight_; }

  Point center(Index i, Index j) const {
    return {origin_.x() + (static_cast<double>(i) + 0.5) * h_,
            origin_.y() + (static_cast<double>(j) + 0.5) * h_};
  }

  /// Per-cell mass w h^2.
  const RealField& mass() const { return *mass_; }
  /// Weight sampled at the cell (offset away from a singular center).
  double weight_at(Index i, Index j) const { return (*mass_)(i, j) / (h_ * h_); }

  std::optional<Cell> locate(const Point& p) const;
  bool in_grid(Index i, Index j) const { return i >= 0 && j >= 0 && i < nx_ && j < ny_; }

  /// Column span of cells in row j whose centers lie in the open ball.
  /// Returns false when the row misses the ball.
  bool row_span(const Ball& b, Index j, Index& ilo, Index& ihi) const;
  /// Row range [jlo, jhi] that may intersect the ball (clipped to the grid).
  void row_range(const Ball& b, Index& jlo, Index& jhi) const;

  template <typename F>
  void for_each_in_ball(const Ball& b, F&& f) const {
    Index jlo = 0, jhi = -1;
    row_range(b, jlo, jhi);
    for (Index j = jlo; j <= jhi; ++j) {
      Index ilo = 0, ihi = -1;
      if (!row_span(b, j, ilo, ihi)) continue;
      for (Index i = ilo; i <= ihi; ++i) f(i, j);
    }
  }

  bool same_grid(const GridSpace& o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && h_ == o.h_ && origin_ == o.origin_;
  }

 private:
  Point origin_;
  Index nx_;
  Index ny_;
  double h_;
  Weight weight_;
  std::shared_ptr<const RealField> mass_;
};

GridSpace grid_space_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GridSpace& space);

/// Row-wise prefix sums of a per-cell quantity; a ball integral then costs one
/// subtraction per row.
class BallSums {
 public:
  BallSums(const GridSpace& space, const RealField& per_cell);

  double operator()(const Ball& b) const;

 private:
  const GridSpace* space_;
  RealField prefix_;  // (nx + 1) x ny
};

/// mu(region): sum of cell masses over the region.
double mu(const GridSpace& space, const CellMask& region);

/// mu(B) or mu(B cap mask). Throws when the radius is below the cell size.
double mu_ball(const GridSpace& space, const Ball& b);
double mu_ball(const GridSpace& space, const Ball& b, const CellMask& mask);

struct DoublingSample {
  Ball ball;
  double ratio = 0.0;  // mu(2B)/mu(B), masked when a mask is given
};

struct DoublingReport {
  double doubling_constant = 1.0;
  double mass_exponent = 0.0;  // Q
  std::vector<DoublingSample> samples;
};

/// Empirical doubling constant and mass-bound exponent over sampled balls.
DoublingReport estimate_doubling(const GridSpace& space, const CellMask* mask,
                                 const std::vector<Point>& centers,
                                 const std::vector<double>& radii);

/// Geometric sequence r0, r0/2, ... stopping before going below rmin.
std::vector<double> dyadic_radii(double r0, double rmin);

}  // namespace bvlab
