#pragma once

#include <iosfwd>

#include "mpmm/matrix.hpp"

namespace mpmm {

// Debug dump. First line "rows cols precision" (precision as in
// parse_precision), then one matrix row per line: space-separated elements,
// each a comma-joined list of hex-float components. Round-trips bit-exactly.
template <ExtendedFloat T>
void write_matrix(std::ostream& out, const Matrix<T>& m);

AnyMatrix read_matrix(std::istream& in);

}  // namespace mpmm
