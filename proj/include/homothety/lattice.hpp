#pragma once

// Integer and rational lattice primitives: Hermite normal form with a
// unimodular transform, and LLL reduction over exact rationals.

#include <cstddef>
#include <vector>

#include "homothety/scalar.hpp"

namespace homothety {

using IntMatrix = std::vector<std::vector<Integer>>;
using RatMatrix = std::vector<std::vector<Rational>>;

struct HermiteForm {
  IntMatrix h;        // u * input, rows [0, rank) nonzero, upper echelon
  IntMatrix u;        // unimodular
  std::size_t rank = 0;
};

/// Row-style Hermite normal form: pivots positive, entries above a pivot
/// reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& m);

/// Scales a rational matrix row set to integers by the lcm of all denominators.
IntMatrix clear_denominators(const RatMatrix& m);

/// LLL-reduces the rows in place (Lovasz parameter delta). Rows must be
/// linearly independent.
void lll_reduce(RatMatrix& basis, const Rational& delta = Rational(99, 100));

/// Squared Euclidean norm.
Rational norm2(const std::vector<Rational>& v);

}  // namespace homothety
