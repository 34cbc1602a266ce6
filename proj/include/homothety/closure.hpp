#pragma once

// Symbolic orbit closures and the density / minimality predicates derived
// from them.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "homothety/additive.hpp"
#include "homothety/invariants.hpp"

namespace homothety {

inline constexpr double kDefaultMembershipTolerance = 1e-9;

/// Closure is the flat itself (x in E_G).
struct FlatClosure {
  AffineSubspace flat;
};

/// scale * (x - anchor) + flat, with anchor in flat and direction = x - anchor
/// outside the flat's direction space.
struct ScaledFamily {
  ScaleSet scale;
  Vector anchor;
  Vector direction;
  AffineSubspace flat;
};

/// (point + H) u (-point + anchor + H) with H the closed translation subgroup.
struct SymmetricPair {
  Vector point;
  Vector anchor;
  AdditiveClosure subgroup;
};

class OrbitClosureDesc {
 public:
  using Variant = std::variant<FlatClosure, ScaledFamily, SymmetricPair>;

  explicit OrbitClosureDesc(Variant v);

  [[nodiscard]] const Variant& variant() const { return v_; }
  [[nodiscard]] const char* variant_name() const;  // flat | scaled_family | symmetric_pair
  [[nodiscard]] std::size_t dim() const;

  /// Exact wherever the data allow it; tol only loosens dense scale sets and
  /// tolerance-certified subgroups.
  [[nodiscard]] bool member(const Vector& y, double tol = kDefaultMembershipTolerance) const;

  /// Approximate Euclidean distance from y to the closure.
  [[nodiscard]] double distance(const Vector& y) const;

  /// Number of connected components; nullopt when there are infinitely many.
  [[nodiscard]] std::optional<std::size_t> component_count() const;

 private:
  Variant v_;
};

OrbitClosureDesc orbit_closure(const GroupSpec& spec, const Vector& x,
                               unsigned relation_bound = kDefaultRelationBound);

/// Same as orbit_closure but with a caller-chosen anchor in E_G for the
/// scaled family (throws std::invalid_argument if anchor is not in E_G).
OrbitClosureDesc orbit_closure_with_anchor(const GroupSpec& spec, const Vector& x, const Vector& anchor,
                                           unsigned relation_bound = kDefaultRelationBound);

bool member(const OrbitClosureDesc& desc, const Vector& y, double tol = kDefaultMembershipTolerance);

struct DensityVerdict {
  bool dense = false;
  std::string reason;
  /// Having one dense orbit is equivalent to every orbit off E_G being dense.
  bool every_orbit_off_flat_dense = false;
  /// Dimension of the flat each orbit off E_G is dense in (when the scale
  /// closure is the whole line).
  std::optional<std::size_t> orbit_flat_dim;
};

/// Case 1 only (throws WrongCaseError otherwise).
DensityVerdict predicate_dense_orbit(const GroupSpec& spec, unsigned relation_bound = kDefaultRelationBound);

/// Case 2 only: H_G dense in R^n, equivalently G(0) dense.
bool predicate_case2_density(const GroupSpec& spec);

struct StructureReport {
  ActionCase action_case = ActionCase::has_homothety;
  // case 1
  bool orbits_off_flat_minimal = false;
  bool flat_is_unique_minimal_set = false;
  bool no_periodic_orbits = false;
  bool no_closed_orbits = false;
  // case 2
  bool every_orbit_minimal = false;
  // n = 1 dichotomy: "all_dense" | "all_closed_discrete"; empty for n > 1
  std::string line_dichotomy;
};

StructureReport predicate_structure(const GroupSpec& spec);

}  // namespace homothety
