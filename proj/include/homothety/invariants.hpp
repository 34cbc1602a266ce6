#pragma once

// Group-level invariants computed from a finite generator list: the case
// split, the closure of the ratio group, the invariant flat E_G and the
// translation subgroup H_G.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "homothety/additive.hpp"
#include "homothety/affine.hpp"
#include "homothety/linalg.hpp"

namespace homothety {

/// Thrown by operations whose theory requires a non-abelian group.
class AbelianGroupError : public std::domain_error {
 public:
  AbelianGroupError() : std::domain_error("theorems require a non abelian group") {}
};

/// Thrown when an operation is called for the other branch of the case split.
class WrongCaseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class GroupSpec {
 public:
  /// Validates: dim >= 1, nonempty generators, matching dimensions.
  GroupSpec(std::size_t dim, std::vector<AffineMap> gens);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<AffineMap>& gens() const { return gens_; }

 private:
  std::size_t dim_;
  std::vector<AffineMap> gens_;
};

inline constexpr unsigned kDefaultRelationBound = 64;

enum class ActionCase {
  has_homothety,    // G \ S_n nonempty
  symmetries_only,  // G inside S_n
};

const char* case_label(ActionCase c);  // "1" / "2"

bool check_nonabelian(const GroupSpec& spec);

/// Throws AbelianGroupError on abelian input.
ActionCase detect_case(const GroupSpec& spec);

/// Closure in R of the multiplicative group generated by the ratios.
struct ScaleSet {
  enum class Positive { trivial, cyclic, dense };

  Positive positive = Positive::trivial;
  /// cyclic: the generator (> 1) of the positive part.
  Scalar base{1L};
  /// cyclic: base = prod_i |ratio_i|^{exponent_i}.
  std::vector<Rational> base_exponents;
  bool contains_negative = false;
  /// When contains_negative: c > 0 with negative part = -c * positive part.
  Scalar negative_coset{1L};
  bool contains_zero = false;
  unsigned certification_bound = kDefaultRelationBound;

  [[nodiscard]] bool closure_is_real_line() const {
    return positive == Positive::dense && contains_negative;
  }

  /// Membership of s in the closure; exact for trivial/cyclic parts, the
  /// dense positive part accepts s >= -tol.
  [[nodiscard]] bool contains(const Scalar& s, double tol) const;

  /// Distance from s to the closure (approximate).
  [[nodiscard]] double distance(const Scalar& s) const;
};

const char* to_string(ScaleSet::Positive p);

ScaleSet scale_set(const GroupSpec& spec, unsigned relation_bound = kDefaultRelationBound);

/// Smallest G-invariant flat containing the centers of the non-symmetry
/// generators. Throws WrongCaseError for symmetries-only groups.
AffineSubspace compute_EG(const GroupSpec& spec);

struct TranslationGenerators {
  std::vector<Vector> generators;  // Z-module generators of H_G
  Vector anchor;                   // offset of a strict symmetry
};

/// Throws WrongCaseError unless the group lies in S_n, AbelianGroupError
/// when there is no strict symmetry.
TranslationGenerators compute_HG_generators(const GroupSpec& spec);

}  // namespace homothety
