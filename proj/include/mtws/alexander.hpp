#pragma once

#include "mtws/grid_diagram.hpp"
#include "mtws/invariants.hpp"
#include "mtws/laurent_poly.hpp"

namespace mtws {

/// Alexander polynomial of the knot, from the Wirtinger presentation of the
/// planar diagram (vertical strands over). Unit-normalized.
LaurentPoly alexander_polynomial(const GridDiagram& d);

}  // namespace mtws
