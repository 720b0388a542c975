#pragma once

// Masked grid stencils shared by every total-variation computation.
//
// A field only sees cells of its support mask: the 3x3 tent average is
// renormalised over support cells, and the gradient falls back from central
// to one-sided differences when a neighbour leaves the support. Both steps are
// linear, so TV built from them is exactly homogeneous and subadditive.

#include "bvlab/core.hpp"

#include <cmath>

namespace bvlab::stencil {

template <typename Derived>
Field<typename Derived::Scalar> mollify(const Eigen::ArrayBase<Derived>& v, const CellMask& support) {
  using Scalar = typename Derived::Scalar;
  const Index nx = v.rows();
  const Index ny = v.cols();
  static constexpr Scalar k[3] = {Scalar(0.25), Scalar(0.5), Scalar(0.25)};
  Field<Scalar> out = Field<Scalar>::Zero(nx, ny);
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      if (!support(i, j)) continue;
      Scalar acc(0), norm(0);
      for (int b = -1; b <= 1; ++b) {
        const Index jj = j + b;
        if (jj < 0 || jj >= ny) continue;
        for (int a = -1; a <= 1; ++a) {
          const Index ii = i + a;
          if (ii < 0 || ii >= nx || !support(ii, jj)) continue;
          const Scalar wk = k[a + 1] * k[b + 1];
          acc += wk * v(ii, jj);
          norm += wk;
        }
      }
      out(i, j) = acc / norm;
    }
  }
  return out;
}

/// Derivative of m along one axis at (i, j); zero when the cell has no
/// support neighbour along that axis.
template <typename Derived>
typename Derived::Scalar axis_difference(const Eigen::ArrayBase<Derived>& m, const CellMask& support,
                                         Index i, Index j, Index di, Index dj, double h) {
  using Scalar = typename Derived::Scalar;
  const Index ip = i + di, jp = j + dj, im = i - di, jm = j - dj;
  const bool fwd = support.rows() > ip && support.cols() > jp && support(ip, jp);
  const bool bwd = im >= 0 && jm >= 0 && support(im, jm);
  if (fwd && bwd) return (m(ip, jp) - m(im, jm)) / Scalar(2.0 * h);
  if (fwd) return (m(ip, jp) - m(i, j)) / Scalar(h);
  if (bwd) return (m(i, j) - m(im, jm)) / Scalar(h);
  return Scalar(0);
}

template <typename Derived>
Field<typename Derived::Scalar> gradient_magnitude(const Eigen::ArrayBase<Derived>& m,
                                                   const CellMask& support, double h) {
  using Scalar = typename Derived::Scalar;
  Field<Scalar> g = Field<Scalar>::Zero(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!support(i, j)) continue;
      const Scalar gx = axis_difference(m, support, i, j, 1, 0, h);
      const Scalar gy = axis_difference(m, support, i, j, 0, 1, h);
      g(i, j) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

/// Per-cell variation |grad (mollified v)| * cell mass; zero off the support.
template <typename Derived>
Field<typename Derived::Scalar> variation_density(const Eigen::ArrayBase<Derived>& v,
                                                  const CellMask& support, const RealField& mass,
                                                  double h) {
  return gradient_magnitude(mollify(v, support), support, h) * mass.cast<typename Derived::Scalar>();
}

/// Edge-counting perimeter density of an indicator: each 4-neighbour pair with
/// differing values contributes h times the mean weight of the pair, split
/// evenly between the two cells.
template <typename Derived>
RealField interface_density(const Eigen::ArrayBase<Derived>& v, const CellMask& support,
                            const RealField& mass, double h) {
  const Index nx = v.rows();
  const Index ny = v.cols();
  RealField d = RealField::Zero(nx, ny);
  const double inv_h = 1.0 / h;  // mass/h^2 * h
  auto edge = [&](Index i0, Index j0, Index i1, Index j1) {
    if (!support(i0, j0) || !support(i1, j1) || v(i0, j0) == v(i1, j1)) return;
    const double c = 0.5 * (mass(i0, j0) + mass(i1, j1)) * inv_h * std::abs(double(v(i0, j0) - v(i1, j1)));
    d(i0, j0) += 0.5 * c;
    d(i1, j1) += 0.5 * c;
  };
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      if (i + 1 < nx) edge(i, j, i + 1, j);
      if (j + 1 < ny) edge(i, j, i, j + 1);
    }
  }
  return d;
}

}  // namespace bvlab::stencil
