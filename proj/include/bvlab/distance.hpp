#pragma once

#include "bvlab/mmspace.hpp"

namespace bvlab {

/// Exact Euclidean distance (in length units) from every cell center to the
/// nearest center of a cell in `features`. Cells are +inf when there are no
/// features.
RealField distance_to_cells(const GridSpace& space, const CellMask& features);

/// dist(y, X \ Omega) for cells of Omega: distance to the nearest outside
/// center minus h/2, i.e. to the near edge of that cell. Zero outside Omega.
/// Cells past the grid edge count as outside.
RealField distance_to_complement(const GridSpace& space, const CellMask& inside);

}  // namespace bvlab
