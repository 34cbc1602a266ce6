#pragma once

// Closure of a finitely generated additive subgroup of R^n, decomposed as
// V + L with V a linear subspace and L a lattice discrete modulo V.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "homothety/affine.hpp"
#include "homothety/lattice.hpp"

namespace homothety {

struct AdditiveClosure {
  enum class Exactness { exact, tolerance_certified };

  std::size_t dim = 0;
  std::vector<Vector> dense_part;    // basis of V
  std::vector<Vector> lattice_part;  // linearly independent modulo V
  /// lattice_part[j] = sum_i lattice_combinations[j][i] * generators[i]
  std::vector<std::vector<Integer>> lattice_combinations;
  Exactness exactness = Exactness::exact;
  double tolerance = 0.0;

  [[nodiscard]] bool is_dense() const { return dense_part.size() == dim; }
  [[nodiscard]] bool is_discrete() const { return dense_part.empty(); }
  [[nodiscard]] bool is_connected() const { return lattice_part.empty(); }

  /// v in V + L: exact linear solve with integer lattice coefficients when
  /// exact, otherwise within tol of the nearest rounded lattice point.
  [[nodiscard]] bool contains(const Vector& v, double tol = 0.0) const;

  /// Approximate distance from v to V + L (rounding in lattice coordinates).
  [[nodiscard]] double distance(const Vector& v) const;
};

const char* to_string(AdditiveClosure::Exactness e);

inline constexpr double kDefaultClosureTolerance = 1e-9;
inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Bits used by the numeric closure route; HOMOTHETY_PRECISION_BITS overrides.
unsigned precision_bits_from_env();

/// Exact closure. Rational inputs reduce to a Hermite basis; otherwise the
/// real kernel of the Z-basis is widened to its smallest rational hull
/// (sum of Galois conjugates), which is the identity component of the
/// closure of Z^r + kernel.
AdditiveClosure additive_closure(std::size_t dim, std::span<const Vector> gens);

/// Numeric closure: repeatedly LLL-reduce [I | C * g] over rational
/// approximations, move nonzero elements shorter than eps into V, project
/// them out; exactness = tolerance_certified(eps).
AdditiveClosure additive_closure_numeric(std::size_t dim, std::span<const Vector> gens,
                                         double eps = kDefaultClosureTolerance,
                                         unsigned bits = kDefaultPrecisionBits);

/// Integer k with v = sum_i k_i gens_i, if one exists.
std::optional<std::vector<Integer>> integer_coordinates(std::size_t dim, std::span<const Vector> gens,
                                                        const Vector& v);

/// Coordinates of vectors over Q: one block per radicand occurring in any
/// of them. Returns the radicand list and one rational row per vector.
struct RationalCoordinates {
  std::vector<std::uint64_t> radicands;
  RatMatrix rows;
};
RationalCoordinates rational_coordinates(std::span<const Vector> vectors);

}  // namespace homothety
