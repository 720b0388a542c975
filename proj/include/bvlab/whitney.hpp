#pragma once

#include "bvlab/bvcalc.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <vector>

namespace bvlab {

/// Whitney-type cover of Omega: balls B_j = B(x_j, r_j) centred at cells with
/// r_j = min{dist(x_j, X \ Omega)/(20 lambda), R}.
struct WhitneyCover {
  DomainMask domain;
  RealField dist;  // distance to the complement, per cell
  std::vector<Ball> balls;
  std::vector<Cell> centers;
  double scale_R = std::numeric_limits<double>::infinity();
  double lambda = 1.0;
  int overlap_C0 = 0;          // max number of 5 lambda B_j over one cell
  std::vector<Cell> excluded;  // cells below min_radius, left uncovered
};

/// Greedy cover: cells are visited by dyadic radius shell (largest first),
/// then by cell index; an uncovered cell becomes a center. Cells whose radius
/// falls below min_radius are excluded and listed.
WhitneyCover build_cover(const DomainMask& omega, double R, double lambda, double min_radius = 0.0);

struct CoverCheck {
  bool covering = true;     // every non-excluded cell of Omega lies in some B_j
  bool radius_rule = true;  // r_j = min{dist/(20 lambda), R}
  bool comparable = true;   // 5 lambda B_j meets 5 lambda B_k => r_j <= 2 r_k
  bool separated = true;    // dist(2B_j, X \ Omega) >= 18 lambda r_j
  long pairs_checked = 0;
  bool all() const { return covering && radius_rule && comparable && separated; }
};

/// Exhaustive check of the four cover properties.
CoverCheck verify_cover(const WhitneyCover& cover);

/// Max over cells of the number of dilated balls tau*B_j containing the cell.
int overlap_count(const WhitneyCover& cover, double tau);

/// phi_j = psi_j / sum_k psi_k with psi_j(y) = max{0, 1 - dist(y, B_j)/r_j}.
/// Only the normaliser is stored; phi_j is evaluated on demand.
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(const WhitneyCover& cover);

  const WhitneyCover& cover() const { return *cover_; }
  const RealField& normaliser() const { return sum_; }
  double psi(size_t j, const Point& y) const;
  /// Nonzero values of phi_j as (cell, value).
  std::vector<std::pair<Cell, double>> phi(size_t j) const;
  /// Shared constant C with Lip(phi_j) <= C / r_j, measured by neighbour
  /// differences over every `stride`-th ball.
  double lipschitz_constant(size_t stride = 1) const;

  template <typename F>
  void for_each_support_cell(size_t j, F&& f) const {
    const Ball& b = cover_->balls[j];
    cover_->domain.space.for_each_in_ball(b.dilate(2.0), [&](Index i, Index k) {
      if (!cover_->domain.inside(i, k)) return;
      const double v = psi(j, cover_->domain.space.center(i, k));
      if (v > 0) f(i, k, v);
    });
  }

 private:
  const WhitneyCover* cover_;
  RealField sum_;
};

struct DiscreteConvolution {
  ScalarField u_W;
  RealField upper_gradient;  // g = sum_j chi_{B_j} ||Du||(5 lambda B_j)/mu(B_j)
  std::vector<double> ball_means;
};

/// `tv_density` may pass a precomputed variation_density(u).
DiscreteConvolution discrete_convolution(const ScalarField& u, const PartitionOfUnity& pou,
                                         const RealField* tv_density = nullptr);

/// [avg over B(x,r) cap Omega of |u - u_W|] / [r ||Du||(B(x,2r) cap Omega) / mu(B(x,r))].
/// Zero when the numerator vanishes; +inf when only the denominator does.
/// `tv_density` is variation_density(u).
double boundary_chain_ratio(const ScalarField& u, const ScalarField& u_W, const RealField& tv_density,
                            const Point& x, double r);

struct PastedApproximation {
  std::vector<ScalarField> fields;
  std::vector<double> l1_gap;  // ||v_i - u||_L1
  std::vector<double> tv_gap;  // |TV(v_i) - TV(u)| / TV(u)
};

/// v_i = eta u + (1 - eta) u_W(cover_i) with
/// eta = max{0, 1 - (4/delta) dist(y, Omega_{delta/2} cap B(x, 2/delta))}.
PastedApproximation pasted_approximation(const ScalarField& u, const std::vector<WhitneyCover>& covers,
                                         double delta, const Point& anchor);

/// max{-n, min{u, n}}.
ScalarField truncate(const ScalarField& u, double n);

struct CompactSupportResult {
  ScalarField field;
  double delta = 0.0;
  double l1_gap = 0.0;  // ||w - u||_L1
  double tv_gap = 0.0;  // ||D(w - u)||(Omega)
  double bv_norm = 0.0;  // ||u||_BV
};

/// w = eta u + (1 - eta) zeta u_W with eta = clamp((d - delta)/delta, 0, 1)
/// and zeta = clamp(2 (d - delta)/delta, 0, 1), d = dist to the complement.
/// Refuses functions that fail the zero-trace check.
CompactSupportResult compact_support_approximation(const ScalarField& u, const DomainMask& omega,
                                                   double delta, double R, double lambda = 1.0);

nlohmann::json to_json(const WhitneyCover& cover);

}  // namespace bvlab
