#pragma once

#include "bvlab/mmspace.hpp"

#include <Eigen/Geometry>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bvlab {

/// Point on the analytic boundary with the name of the boundary piece it lies
/// on ("edge", "arc", "slit", "wall", "tip", ...).
struct BoundarySample {
  Point point;
  std::string part;
};

/// "kind:key=value,key=value" as accepted on the command line.
struct DomainSpec {
  std::string kind;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
  std::string str() const;
};

DomainSpec parse_domain_spec(const std::string& text);

/// Analytic description of a catalog domain.
class Shape {
 public:
  virtual ~Shape() = default;
  virtual bool contains(const Point& p) const = 0;
  /// Bounding box [lo, hi] of the closure.
  virtual Eigen::AlignedBox2d bounds() const = 0;
  /// Smallest feature that must be resolved by at least two cells.
  virtual double feature_size() const = 0;
  /// Names of the boundary pieces ("tip" pieces are single points).
  virtual std::vector<std::string> parts() const = 0;
  /// n points spread along one boundary piece.
  virtual std::vector<BoundarySample> samples_on(const std::string& part, int n) const = 0;
  /// About n points shared between the pieces.
  std::vector<BoundarySample> boundary_samples(int n) const;
  /// Cells of the grid belonging to the shape. Default: center test.
  virtual CellMask rasterize(const GridSpace& space) const;
  /// Whether the grid should put a cell row (and column) on the axes.
  virtual bool axis_centered() const { return false; }
  virtual double diameter() const { return bounds().diagonal().norm(); }
};

std::shared_ptr<const Shape> make_shape(const DomainSpec& spec);

/// Subset Omega of grid cells. Boundary convention throughout the library:
/// a cell belongs to the discrete boundary iff it is outside and 4-adjacent to
/// an inside cell.
struct DomainMask {
  GridSpace space;
  CellMask inside;
  std::string name;
  std::shared_ptr<const Shape> shape;  // null for imported masks

  Index count() const { return inside.count(); }
  double diameter() const;
  std::vector<BoundarySample> boundary_samples(int n) const;
  std::vector<BoundarySample> boundary_samples(int n, const std::string& part) const;
};

struct BoundaryMask {
  CellMask cells;
  std::vector<Point> points() const;
  const GridSpace* space = nullptr;
};

/// Grid that holds the shape with `pad` of margin, aligned as the shape asks.
GridSpace default_space(const DomainSpec& spec, double h, Weight weight = {}, double pad = 0.25);

DomainMask make_domain(const DomainSpec& spec, const GridSpace& space);
DomainMask make_domain(const std::string& spec, double h, Weight weight = {}, double pad = 0.25);

/// Mask from a PGM bitmap (P2 or P5); nonzero pixels are inside. The top
/// image row maps to the highest grid row. Image size must match the grid.
DomainMask import_pgm_mask(const std::string& path, const GridSpace& space);

BoundaryMask topological_boundary(const DomainMask& omega);

/// Density of `set` in B(x, r): mu(B cap set)/mu(B).
double ball_density(const GridSpace& space, const CellMask& set, const Point& x, double r);

/// Discrete boundary cells where both E and its complement have upper density
/// above `threshold` over the given radii.
BoundaryMask measure_theoretic_boundary(const DomainMask& e, const std::vector<double>& radii,
                                        double threshold = 0.05);

struct DensityFailure {
  Point point;
  std::string reason;
};

struct DensityReport {
  double c_m = 1.0;
  double C_bdry = 0.0;
  double gamma = 0.5;
  std::vector<DensityFailure> failures;
};

DensityReport check_measure_density(const DomainMask& omega, const std::vector<Point>& samples,
                                    const std::vector<double>& radii);

/// Codimension-one content of the boundary inside each sampled ball
/// (scale 4h) against mu(B)/r.
DensityReport check_codim_boundary(const DomainMask& omega, const std::vector<Point>& samples,
                                   const std::vector<double>& radii);

/// Omega_delta = cells at distance > delta from the complement.
DomainMask shrink_domain(const DomainMask& omega, double delta);

std::vector<Point> sample_points(const std::vector<BoundarySample>& samples);

}  // namespace bvlab
