#include "bvlab/distance.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace bvlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional squared distance transform of a sampled function
// (lower envelope of parabolas).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<Index>& v,
            std::vector<double>& z) {
  const auto n = static_cast<Index>(f.size());
  Index k = -1;
  for (Index q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    while (k >= 0) {
      const Index p = v[k];
      const double s = ((f[q] + double(q * q)) - (f[p] + double(p * p))) / (2.0 * double(q - p));
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    if (k == 0) {
      z[0] = -kInf;
    } else {
      const Index p = v[k - 1];
      z[k] = ((f[q] + double(q * q)) - (f[p] + double(p * p))) / (2.0 * double(q - p));
    }
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), kInf);
    return;
  }
  Index m = 0;
  for (Index q = 0; q < n; ++q) {
    while (z[m + 1] < double(q)) ++m;
    const double dq = double(q - v[m]);
    d[q] = dq * dq + f[v[m]];
  }
}

// Squared distance in cell units over a (possibly padded) grid.
RealField squared_edt(const CellMask& features) {
  const Index nx = features.rows();
  const Index ny = features.cols();
  RealField g(nx, ny);
  std::vector<double> f(ny), d(ny), z(ny + 1);
  std::vector<Index> v(ny);
  for (Index i = 0; i < nx; ++i) {
    for (Index j = 0; j < ny; ++j) f[j] = features(i, j) ? 0.0 : kInf;
    edt_1d(f, d, v, z);
    for (Index j = 0; j < ny; ++j) g(i, j) = d[j];
  }
  f.resize(nx);
  d.resize(nx);
  z.resize(nx + 1);
  v.resize(nx);
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) f[i] = g(i, j);
    edt_1d(f, d, v, z);
    for (Index i = 0; i < nx; ++i) g(i, j) = d[i];
  }
  return g;
}

}  // namespace

RealField distance_to_cells(const GridSpace& space, const CellMask& features) {
  return squared_edt(features).sqrt() * space.h();
}

RealField distance_to_complement(const GridSpace& space, const CellMask& inside) {
  // Pad by one ring so the region beyond the grid edge counts as outside.
  const Index nx = space.nx();
  const Index ny = space.ny();
  CellMask outside = CellMask::Constant(nx + 2, ny + 2, true);
  outside.block(1, 1, nx, ny) = !inside;
  const RealField sq = squared_edt(outside);
  RealField d = (sq.block(1, 1, nx, ny).sqrt() - 0.5) * space.h();
  return inside.select(d, 0.0);
}

}  // namespace bvlab
