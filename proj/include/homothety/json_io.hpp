#pragma once

// JSON encoding of scalars, vectors, group specs and reports.
//
// Scalar: [{"coef": "p/q", "radicand": m}, ...] with radicand 1 for the
// rational part; the empty array is zero. Decoding also accepts a bare
// integer or a "p/q" / decimal string.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "homothety/closure.hpp"
#include "homothety/oracle.hpp"

namespace homothety {

using Json = nlohmann::ordered_json;

/// Invalid spec or input value; `where` names the offending field or line.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  [[nodiscard]] const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// "p/q", an integer or a finite decimal ("-0.25", "1e-3").
Rational parse_rational(const std::string& text);

Json to_json(const Scalar& s);
Json to_json(const Vector& v);
Json to_json(const AffineMap& f);
Json to_json(const GroupSpec& spec);
Json to_json(const ScaleSet& s);
Json to_json(const AffineSubspace& flat);
Json to_json(const AdditiveClosure& c);
Json to_json(const OrbitClosureDesc& desc);
Json to_json(const VerificationReport& r);

Scalar scalar_from_json(const Json& j, const std::string& where = "scalar");
Vector vector_from_json(const Json& j, const std::string& where = "vector");
AffineMap map_from_json(const Json& j, std::size_t dim, const std::string& where = "generator");

/// Validates the document: positive dim, nonempty generators of matching
/// dimension, nonzero ratios, at most kMaxRadicalPrimes primes overall.
GroupSpec spec_from_json(const Json& j);

/// Reads and validates a spec file; syntax errors report the line.
GroupSpec load_spec(const std::string& path);

/// Analysis report: nonabelian, case, scale_set, E_G, H_G, predicates.
/// Throws AbelianGroupError for abelian input.
Json analysis_report(const GroupSpec& spec, unsigned relation_bound = kDefaultRelationBound);

}  // namespace homothety
