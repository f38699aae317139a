#pragma once

#include <vector>

#include "acsv/upoly.hpp"

namespace acsv {

// Irreducible factors over the integers of a square-free primitive
// polynomial, each normalized, sorted by degree then coefficients.  The
// input's content and sign are not returned; callers reassemble what they
// need.  Deterministic for a fixed input.
std::vector<UPoly> factor_square_free(const UPoly& f);

}  // namespace acsv
