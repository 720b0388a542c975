#pragma once

#include "bvlab/bvcalc.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bvlab {

enum class TraceStatus { exists, fails, inconclusive };

std::string to_string(TraceStatus s);

struct TraceParams {
  std::vector<double> radii;  // decreasing; empty -> diam/8 halving down to 4h
  double tol = -1.0;          // < 0 -> 3x the largest cell oscillation of u near x
  int quantiles = 33;
  double q = 1.0;             // exponent of the reported L^q average
  bool trim_unresolved = false;  // drop trailing radii whose ball misses Omega
};

struct TraceResult {
  Point point = Point::Zero();
  std::string part;
  TraceStatus status = TraceStatus::inconclusive;
  std::optional<double> value;
  std::vector<double> radii;
  std::vector<double> averages;     // avg of u over Omega cap B(x, r_k)
  std::vector<double> diagnostics;  // avg |u - c*|
  std::vector<double> certificate;  // min over scanned c of avg |u - c|
  double lq_final = 0.0;            // (avg |u - c*|^q)^(1/q) at r_min
  double tol = 0.0;
  double fail_floor = 0.0;
  bool divergent = false;
  std::string error;                // set when trace_field caught an Error
};

std::vector<double> default_trace_radii(const DomainMask& omega);

/// Empirical trace at x. exists: final diagnostic <= tol and the last two
/// steps of the averages within tol and 2 tol. fails: the certificate stays
/// above 10 tol at every radius, or the averages grow geometrically over the
/// last four radii.
TraceResult trace_at(const ScalarField& u, const DomainMask& omega, const Point& x,
                     const TraceParams& params = {});

/// Per-sample traces; errors are recorded on the result instead of thrown.
std::vector<TraceResult> trace_field(const ScalarField& u, const DomainMask& omega,
                                     const std::vector<BoundarySample>& samples,
                                     const TraceParams& params = {});

struct LinearityReport {
  int compared = 0;
  double max_defect = 0.0;  // |T(au+bv) - aTu - bTv|
  bool pass = true;         // defect <= 2 tol at every compared point
};

LinearityReport trace_linearity(const ScalarField& u, const ScalarField& v, double a, double b,
                                const DomainMask& omega, const std::vector<BoundarySample>& samples,
                                const TraceParams& params = {});

struct ZeroTraceResult {
  Point point = Point::Zero();
  std::vector<double> ratios;  // int_{B cap Omega} |u| / mu(B)
  double tol = 0.0;
  bool pass = false;
};

struct ZeroTraceReport {
  std::vector<ZeroTraceResult> points;
  bool all_pass() const;
};

/// Weak zero-trace test, normalised by the full ball mass mu(B(x,r)).
ZeroTraceReport zero_trace_check(const ScalarField& u, const DomainMask& omega,
                                 const std::vector<BoundarySample>& samples,
                                 const TraceParams& params = {});

/// u and f share boundary values iff u - f passes the zero-trace check.
bool same_boundary_values(const ScalarField& u, const ScalarField& f, const DomainMask& omega,
                          const std::vector<BoundarySample>& samples, const TraceParams& params = {});

struct ZeroExtension {
  ScalarField hat;         // u on Omega, 0 elsewhere, supported on the whole grid
  double tv_u = 0.0;       // ||Du||(Omega) of u itself
  double tv_interior = 0.0;  // ||D hat||(Omega minus collar)
  double tv_collar = 0.0;    // ||D hat||(collar)
  double tv_exterior = 0.0;  // ||D hat||(outside minus collar)
  double tv_total() const { return tv_interior + tv_collar + tv_exterior; }
};

/// The collar is every cell within `collar` cells (chessboard) of a cell on
/// the other side of the boundary.
ZeroExtension zero_extension(const ScalarField& u, const DomainMask& omega, int collar = 2);

struct OrderingReport {
  int compared = 0;
  int violations = 0;
};

/// hat^(x) <= Tu(x) <= hat^v(x) within jump_tol at samples where Tu exists.
OrderingReport ordering_check(const ScalarField& u, const DomainMask& omega,
                              const std::vector<BoundarySample>& samples, const TraceParams& params = {});

/// H density on the boundary: the greedy cover of the boundary cells at scale
/// R is priced and each ball's cost is split among the samples it contains
/// (balls without samples go to the nearest one).
std::vector<double> boundary_weights(const DomainMask& omega, const std::vector<BoundarySample>& samples,
                                     double R);

struct L1TraceReport {
  double C_T = 0.0;
  std::vector<std::pair<std::string, double>> ratios;  // per included function
  std::vector<std::string> excluded;                   // trace failed somewhere, or u = 0
};

/// C_T = max [sum_s w_s |Tu(s)|] / [||u||_L1 + ||Du||(Omega)].
L1TraceReport l1_trace_inequality_check(const std::vector<std::pair<std::string, ScalarField>>& corpus,
                                        const DomainMask& omega, const std::vector<BoundarySample>& samples,
                                        const std::vector<double>& weights, const TraceParams& params = {});

/// Fraction of samples where max over the three smallest radii of
/// r nu(B cap Omega)/mu(B) exceeds the threshold.
double radon_boundary_lemma_check(const RealField& nu, const DomainMask& omega,
                                  const std::vector<BoundarySample>& samples, double threshold,
                                  const TraceParams& params = {});

/// x,y,status,value,final_avg
void write_trace_csv(const std::vector<TraceResult>& results, const std::string& path);

}  // namespace bvlab
