#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace bvlab {

using Index = Eigen::Index;
using Point = Eigen::Vector2d;

/// Dense cell-indexed array: element (i, j) belongs to the cell in column i
/// (x direction) and row j (y direction).
template <typename Scalar>
using Field = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealField = Field<double>;
using CellMask = Field<bool>;

struct Cell {
  Index i = 0;
  Index j = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Open Euclidean ball with a specified center and radius.
struct Ball {
  Point center = Point::Zero();
  double radius = 1.0;

  Ball() = default;
  Ball(Point c, double r) : center(std::move(c)), radius(r) {}

  Ball dilate(double tau) const { return {center, tau * radius}; }
  bool contains(const Point& p) const { return (p - center).squaredNorm() < radius * radius; }
};

/// Error raised by every bvlab operation that rejects its input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bvlab
