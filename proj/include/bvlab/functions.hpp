#pragma once

#include "bvlab/bvcalc.hpp"

#include <string>
#include <vector>

namespace bvlab {

/// Catalog of test functions, addressed as "name:key=value,...":
///   constant:c=1          coordinate:k=1        tent (distance to the complement)
///   arg (angle in [0, 2pi))  radial_power:alpha=-0.5
///   half_indicator:a=0.5 (x1 < a)   ball_indicator:x=0,y=0,r=0.5
///   bump (exp(-|x|^2))    csv:<path> (x,y,value rows)
/// The field is supported on the domain.
ScalarField sample_function(const std::string& spec, const DomainMask& omega);

std::vector<std::string> function_catalog();

}  // namespace bvlab
