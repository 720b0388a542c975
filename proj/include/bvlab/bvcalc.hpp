#pragma once

#include "bvlab/domains.hpp"

#include <string>
#include <vector>

namespace bvlab {

/// Cell-indexed values of u. Cells off the support carry no value (stored as
/// zero) and are invisible to every stencil.
struct ScalarField {
  GridSpace space;
  RealField values;
  CellMask support;

  ScalarField(GridSpace s, RealField v);
  ScalarField(GridSpace s, RealField v, CellMask support);

  double l1(const CellMask& region) const;
  double l1() const { return l1(support); }
  double max_abs() const;
};

enum class TvMethod { gradient, interface };

struct VariationResult {
  double total = 0.0;
  RealField density;
  TvMethod method = TvMethod::gradient;
};

/// Per-cell variation of u over its support (gradient method).
RealField variation_density(const ScalarField& u);

/// ||Du||(region). The gradient method mollifies once and takes masked central
/// differences; the interface method counts 4-neighbour edges of an
/// indicator field.
VariationResult total_variation(const ScalarField& u, const CellMask& region,
                                TvMethod method = TvMethod::gradient);
VariationResult total_variation(const ScalarField& u, TvMethod method = TvMethod::gradient);

/// The tent-mollified field used inside the gradient method.
ScalarField mollify(const ScalarField& u);

/// P(E, region): variation of the indicator of E with the region as support.
double perimeter(const DomainMask& e, const CellMask& region);
/// P(E, X) as a per-cell density over the whole grid.
RealField perimeter_density(const DomainMask& e);

struct CoareaReport {
  double lhs = 0.0;  // ||Du||(region)
  double rhs = 0.0;  // trapezoid sum of P({u > t}, region)
  double gap = 0.0;  // |lhs - rhs| / lhs (0 when both vanish)
  double level_width = 0.0;
  int levels = 0;
};

CoareaReport coarea_check(const ScalarField& u, const CellMask& region, int levels = 64);

struct ApproxLimits {
  std::vector<Point> points;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> representative;
  std::vector<bool> jump;
  std::vector<bool> inconclusive;
  double jump_tol = 0.0;
};

/// Approximate lower/upper limits by bisection on t, with the level-set
/// densities taken at the smallest radius. A point is inconclusive when the
/// two smallest radii disagree by more than jump_tol.
ApproxLimits approx_limits(const ScalarField& u, const std::vector<Point>& points,
                           const std::vector<double>& radii, double jump_tol = -1.0,
                           double density_threshold = 0.05);

struct SurfaceDensity {
  std::vector<double> theta;  // NaN where flagged
  std::vector<double> low;    // range over the radii used
  std::vector<double> high;
  std::vector<bool> flagged;  // point not on the measure-theoretic boundary
};

/// theta(x) ~ P(E, B(x,r)) r / mu(B(x,r)) averaged over the two smallest radii.
SurfaceDensity surface_density(const DomainMask& e, const std::vector<Point>& points,
                               const std::vector<double>& radii);

struct PoincareReport {
  std::vector<double> constants;  // per ball; 0 for constant-on-ball
  std::vector<bool> violations;   // nonconstant u with no variation on lambda B
  double max_constant = 0.0;
};

/// C(B) = avg_B |u - u_B| * mu(lambda B) / (r ||Du||(lambda B)), with balls
/// intersected with the support of u.
PoincareReport poincare_BV_check(const ScalarField& u, const std::vector<Ball>& balls, double lambda);

/// First radius r in [2^i, 2^(i+1)] (sub-sampled) with
/// P(B(x,r), X) <= C_d mu(B(x,r))/r.
double find_good_radius(const GridSpace& space, const Point& x, int i, double C_d);

// Field exchange formats.
void write_field_csv(const ScalarField& u, const std::string& path);
ScalarField read_field_csv(const GridSpace& space, const std::string& path);
void write_field_binary(const ScalarField& u, const std::string& path);
ScalarField read_field_binary(const GridSpace& space, const std::string& path);

}  // namespace bvlab
