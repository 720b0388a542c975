#pragma once

#include "bvlab/mmspace.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace bvlab {

/// Feasible cover of a target with radii at most R, priced by sum mu(B)/r.
struct CoverSolution {
  std::vector<Ball> balls;
  double content = 0.0;
  double scale_R = 0.0;
  /// Cheapest single candidate ball around a target point; no cover from
  /// the candidate family costs less.
  double lower_bound = 0.0;
};

struct HausdorffEstimate {
  std::vector<std::pair<double, double>> values;  // (R, H_R) in the order given
  double extrapolated = 0.0;                      // H_R at the smallest R
  bool divergent = false;
  double growth_exponent = 0.0;  // slope of log H_R against log(1/R)
  std::string variant;           // "mu" or "mu_bar"
};

/// Candidate radii 4h, 8h, ... up to R (R itself included when not dyadic).
std::vector<double> cover_radii(double h, double R);

/// Greedy cover of target points. With a mask, balls are priced by the
/// zero-extended measure mu(B cap mask).
CoverSolution content_HR(const GridSpace& space, const std::vector<Point>& target, double R,
                         const CellMask* mask = nullptr);
CoverSolution content_HR(const GridSpace& space, const CellMask& target, double R,
                         const CellMask* mask = nullptr);

/// H_R along a decreasing scale sequence. Flags growth of H_R in 1/R with
/// fitted exponent above `divergence_slope`.
HausdorffEstimate measure_H(const GridSpace& space, const std::vector<Point>& target,
                            const std::vector<double>& R_sequence, const CellMask* mask = nullptr,
                            double divergence_slope = 0.1);

std::vector<Point> cell_centers(const GridSpace& space, const CellMask& cells);

nlohmann::json to_json(const CoverSolution& cover);

}  // namespace bvlab
