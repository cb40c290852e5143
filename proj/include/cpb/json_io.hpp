#pragma once

#include <string>

#include "cpb/quantifiers.hpp"

namespace cpb {

/// Density-matrix JSON: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.
ComplexMatrix read_matrix_json(const std::string& path);
void write_matrix_json(const ComplexMatrix& m, const std::string& path);

/// CPBTriplet as a flat JSON object with every auxiliary field.
std::string triplet_to_json(const CPBTriplet& t);

} // namespace cpb
