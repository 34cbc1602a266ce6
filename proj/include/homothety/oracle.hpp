#pragma once

// Brute-force verification: breadth-first orbit enumeration, containment and
// covering checks against a symbolic closure, translation-subgroup
// enumeration, and the constructive density witness for q l^p (1 - l^p).
//
// The enumeration and both checks have an OpenMP kernel and a serial
// reference with identical, order-independent results.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "homothety/closure.hpp"

namespace homothety {

inline constexpr std::size_t kDefaultOrbitCap = 200'000;

struct OrbitEnumeration {
  std::vector<Vector> points;  // BFS order, x first
  /// parent[i] = index of the point points[i] was generated from (i for x);
  /// letter[i] = index into the letter list (generator k: 2k, inverse: 2k+1).
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> letter;
  std::vector<std::size_t> level_end;  // points[level_end[d-1], level_end[d]) at distance d
  bool truncated = false;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  /// Word w with w(x) = points[i].
  [[nodiscard]] Word word_of(std::size_t i) const;
};

/// Every w(x) for words of length <= depth over generators and inverses,
/// deduplicated exactly, stopping at cap points (truncated = true).
OrbitEnumeration enumerate_orbit(const GroupSpec& spec, const Vector& x, int depth,
                                 std::size_t cap = kDefaultOrbitCap);
OrbitEnumeration enumerate_orbit_serial(const GroupSpec& spec, const Vector& x, int depth,
                                        std::size_t cap = kDefaultOrbitCap);

struct Violation {
  Vector point;
  double distance = 0.0;
};

struct VerificationReport {
  std::size_t depth = 0;
  std::size_t points_generated = 0;
  std::size_t points_checked = 0;
  std::vector<Violation> containment_violations;
  std::vector<std::vector<double>> covering_gaps;  // grid points, approximate
  std::size_t gap_count = 0;                       // may exceed the listed gaps
  std::size_t grid_points = 0;
  std::size_t grid_points_in_closure = 0;
  bool scan_complete = true;  // false when the covering scan stopped early
  std::chrono::duration<double> elapsed{0};

  [[nodiscard]] bool passed() const {
    return containment_violations.empty() && gap_count == 0 && scan_complete;
  }
};

/// Axis-aligned box with exact rational bounds.
struct Box {
  std::vector<std::pair<Rational, Rational>> bounds;
  [[nodiscard]] std::size_t dim() const { return bounds.size(); }
};

VerificationReport verify_containment(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                      double tol);
VerificationReport verify_containment_serial(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                             double tol);

struct CoveringOptions {
  std::size_t max_listed_gaps = 100;
  /// Scan stops once this many gaps were found.
  std::size_t stop_after_gaps = 1000;
  /// Grids larger than this are scanned only until stop_after_gaps; if they
  /// do not reach it the scan is reported incomplete.
  std::size_t max_grid_points = 20'000'000;
};

/// Every grid point of the box lying in the closure (membership tolerance
/// eps / 2) must be within eps of an enumerated point.
VerificationReport verify_covering(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                   const Box& region, double eps, const Rational& grid_step,
                                   const CoveringOptions& opts = {});
VerificationReport verify_covering_serial(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                          const Box& region, double eps, const Rational& grid_step,
                                          const CoveringOptions& opts = {});

/// Translation parts of all group elements given by words of length <= depth
/// whose ratio is +1. Throws WrongCaseError unless the group lies in S_n.
std::vector<Vector> brute_force_translation_subgroup(const GroupSpec& spec, int depth);

struct DensityWitness {
  long p = 0;          // < 0
  Integer q;
  Scalar value;        // q * l^p * (1 - l^p), strictly inside (lo, hi)
};

inline constexpr long kWitnessMinExponent = -64;
inline constexpr long kWitnessMaxMultiplier = 1'000'000;

/// Largest p < 0 with l^p (1 - l^p) < hi - lo, then the least q with
/// q l^p (1 - l^p) > lo. Requires l > 1 and lo < hi.
DensityWitness dense_scalar_witness(const Scalar& lambda, const Rational& lo, const Rational& hi);

/// Word f^{2p} o (h^{-p} o f^p)^{q-1} o h^{-p} over generators
/// {0: f = (a, l), 1: h = l id}; it maps a to value * a + a.
Word witness_word(long p, const Integer& q);

/// CSV with header x1,...,xn and one row per point at 17 significant digits.
void write_orbit_csv(std::ostream& os, const std::vector<Vector>& points, std::size_t dim);

}  // namespace homothety
