#pragma once

#include "bvlab/bvcalc.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <optional>
#include <string>
#include <utility>

namespace bvlab {

enum class CapacityKind { cap, rcap };
enum class CapacityMethod { parametric, variational };

std::string to_string(CapacityKind k);
std::string to_string(CapacityMethod m);

struct CapacityParams {
  int max_iterations = 2000;
  double gap_tol = 1e-4;      // relative to the gap at the initial point
  int gap_every = 25;
  int levels = 32;            // level sets tried when rounding the solver output
  bool neighborhood = true;   // u >= 1 on the one-cell dilation of A; false: on A only
  bool parametric = true;
  bool variational = true;
};

struct CapacityValue {
  explicit CapacityValue(ScalarField m) : minimizer(std::move(m)) {}

  CapacityKind kind = CapacityKind::cap;
  double value = 0.0;
  ScalarField minimizer;
  CapacityMethod method = CapacityMethod::parametric;
  double parametric_value = std::numeric_limits<double>::infinity();
  double variational_value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  double initial_gap = 0.0;
  double final_gap = 0.0;
};

/// cap: inf ||u||_BV(X); rcap: inf ||Du||(X) with u = 0 outside 2B. Both over
/// u >= 1 on the one-cell neighbourhood of A, 0 <= u <= 1. For rcap, `ball`
/// is B, so the ambient ball is 2B. The value is the smaller of a scan over
/// truncated cones and dilations of A, and a primal-dual TV minimisation
/// rounded through its level sets; it always equals the BV norm (cap) or the
/// variation (rcap) of the returned minimiser.
CapacityValue capacity(const GridSpace& space, const CellMask& A, CapacityKind kind,
                       const std::optional<Ball>& ball = std::nullopt, const CapacityParams& params = {});

/// ||u||_BV or ||Du|| on the whole grid, as capacity() prices candidates.
double capacity_functional(const ScalarField& u, CapacityKind kind);

/// One-cell (4-neighbour) dilation.
CellMask dilate_one_cell(const CellMask& a);

nlohmann::json to_json(const CapacityValue& c);

struct MazyaReport {
  double Q = 0.0;
  double q = 0.0;              // Q/(Q-1)
  double lhs = 0.0;            // (avg over 2B of |u|^q)^(1/q)
  Index zero_cells = 0;        // cells of S cap B
  double cap = 0.0;            // cap_BV(S cap B)
  double rcap = 0.0;           // rcap_BV(S cap B, 2B)
  double variation = 0.0;      // ||Du||(2 lambda B)
  double radius = 0.0;
  double C_cap = 0.0;          // lhs cap / ((r + 1) variation)
  double C_rcap = 0.0;         // lhs rcap / variation
  bool vacuous = false;        // S cap B empty
  bool violation = false;      // no variation on 2 lambda B but lhs > 0
};

/// Mass-bound exponent on the ball: the largest fitted exponent over the
/// centre and four points at distance r/2.
double local_mass_exponent(const GridSpace& space, const Ball& b);

/// Cells of B where u vanishes: |u| <= 1e-9 range(u) on the whole of
/// B(y, 4h), so both approximate limits are 0 and y is not a jump point.
CellMask zero_set(const ScalarField& u, const Ball& b);

MazyaReport mazya_check(const ScalarField& u, const Ball& b, double lambda, const CapacityParams& params = {});

struct SobolevReport {
  double Q = 0.0;
  double q = 0.0;
  double lhs = 0.0;          // (avg over B of |u|^q)^(1/q)
  double mass_ratio = 0.0;   // mu(A)/mu(B), A = {|u| > 0} cap B
  double blow_up = 0.0;      // (1 - mass_ratio^(1/Q))^-1
  double rhs = 0.0;          // r blow_up ||Du||(2 lambda B)/mu(2 lambda B)
  double C = 0.0;            // lhs / rhs (0 when lhs = 0)
};

SobolevReport measure_largeness_sobolev_check(const ScalarField& u, const Ball& b, double lambda);

}  // namespace bvlab
