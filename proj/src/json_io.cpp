#include "homothety/json_io.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace homothety {

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex decimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    const Integer den(m[2].str(), 10);
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    std::string num = m[1].str();
    if (num.front() == '+') num.erase(0, 1);
    Rational r(Integer(num, 10), den);
    r.canonicalize();
    return r;
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string digits = m[2].str() + m[3].str();
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) {
      const long e = std::stol(m[4].str());
      if (std::abs(e) > 1000) throw std::invalid_argument("exponent out of range in '" + text + "'");
      exponent += e;
    }
    Integer num(digits.empty() ? "0" : digits, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
    Rational r = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return m[1].str() == "-" ? Rational(-r) : r;
  }
  throw std::invalid_argument("not a rational number: '" + text + "'");
}

namespace {

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json vectors_json(const std::vector<Vector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

Json optional_count(const std::optional<std::size_t>& n) { return n ? Json(*n) : Json(nullptr); }

}  // namespace

Json to_json(const Scalar& s) {
  Json a = Json::array();
  for (const auto& t : s.terms()) a.push_back({{"coef", t.coef.get_str()}, {"radicand", t.radicand}});
  return a;
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

Json to_json(const AffineMap& f) { return {{"ratio", to_json(f.ratio())}, {"offset", to_json(f.offset())}}; }

Json to_json(const GroupSpec& spec) {
  Json gens = Json::array();
  for (const auto& g : spec.gens()) gens.push_back(to_json(g));
  return {{"dim", spec.dim()}, {"generators", gens}};
}

Json to_json(const ScaleSet& s) {
  Json j;
  j["positive_part"] = s.positive == ScaleSet::Positive::dense ? "dense_in_positive_reals" : to_string(s.positive);
  if (s.positive == ScaleSet::Positive::cyclic) {
    j["base"] = to_json(s.base);
    j["base_approx"] = s.base.approx();
    Json e = Json::array();
    for (const auto& x : s.base_exponents) e.push_back(x.get_str());
    j["base_exponents"] = e;
  }
  j["contains_negative"] = s.contains_negative;
  if (s.contains_negative) j["negative_coset"] = to_json(s.negative_coset);
  j["contains_zero"] = s.contains_zero;
  j["certification_bound"] = s.certification_bound;
  j["closure_is_real_line"] = s.closure_is_real_line();
  return j;
}

Json to_json(const AffineSubspace& flat) {
  return {{"base", to_json(flat.base())}, {"basis", vectors_json(flat.basis())}, {"dim", flat.dim()}};
}

Json to_json(const AdditiveClosure& c) {
  Json combos = Json::array();
  for (const auto& row : c.lattice_combinations) {
    Json r = Json::array();
    for (const auto& k : row) r.push_back(integer_json(k));
    combos.push_back(r);
  }
  return {{"dim", c.dim},
          {"dense_part", vectors_json(c.dense_part)},
          {"lattice_part", vectors_json(c.lattice_part)},
          {"lattice_combinations", combos},
          {"exactness", to_string(c.exactness)},
          {"tolerance", c.tolerance},
          {"is_dense", c.is_dense()},
          {"is_discrete", c.is_discrete()},
          {"is_connected", c.is_connected()}};
}

Json to_json(const OrbitClosureDesc& desc) {
  Json j;
  j["variant"] = desc.variant_name();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FlatClosure>) {
          j["flat"] = to_json(v.flat);
        } else if constexpr (std::is_same_v<T, ScaledFamily>) {
          j["scale"] = to_json(v.scale);
          j["anchor"] = to_json(v.anchor);
          j["direction"] = to_json(v.direction);
          j["flat"] = to_json(v.flat);
        } else {
          j["point"] = to_json(v.point);
          j["anchor"] = to_json(v.anchor);
          j["subgroup"] = to_json(v.subgroup);
        }
      },
      desc.variant());
  j["components"] = optional_count(desc.component_count());
  return j;
}

Json to_json(const VerificationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.containment_violations) {
    violations.push_back({{"point", v.point.approx()}, {"distance", v.distance}});
  }
  return {{"depth", r.depth},
          {"points_generated", r.points_generated},
          {"points_checked", r.points_checked},
          {"containment_violations", violations},
          {"grid_points", r.grid_points},
          {"grid_points_in_closure", r.grid_points_in_closure},
          {"gap_count", r.gap_count},
          {"covering_gaps", r.covering_gaps},
          {"scan_complete", r.scan_complete},
          {"elapsed_seconds", r.elapsed.count()},
          {"passed", r.passed()}};
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(Rational(Integer(j.dump(), 10)));
    if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
    if (j.is_number()) {
      throw SpecError(where, "non-integer numbers are ambiguous; write the value as a string such as \"3/10\"");
    }
    if (!j.is_array()) throw SpecError(where, "expected an array of {\"coef\", \"radicand\"} terms");
    std::vector<std::pair<Rational, std::uint64_t>> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string at = where + "[" + std::to_string(i) + "]";
      const Json& t = j[i];
      if (!t.is_object() || !t.contains("coef")) throw SpecError(at, "expected {\"coef\": ..., \"radicand\": ...}");
      for (const auto& [key, _] : t.items()) {
        if (key != "coef" && key != "radicand") throw SpecError(at + "." + key, "unknown field");
      }
      const Json& c = t["coef"];
      Rational coef;
      if (c.is_string()) {
        try {
          coef = parse_rational(c.get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw SpecError(at + ".coef", e.what());
        }
      } else if (c.is_number_integer()) {
        coef = Rational(Integer(c.dump(), 10));
      } else {
        throw SpecError(at + ".coef", "expected a \"p/q\" string or an integer");
      }
      std::uint64_t radicand = 1;
      if (t.contains("radicand")) {
        const Json& r = t["radicand"];
        if (!r.is_number_unsigned() || r.get<std::uint64_t>() == 0) {
          throw SpecError(at + ".radicand", "expected a positive integer");
        }
        radicand = r.get<std::uint64_t>();
      }
      terms.emplace_back(coef, radicand);
    }
    return Scalar::from_terms(terms);
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(where, e.what());
  }
}

Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SpecError(where, "expected an array of scalars");
  std::vector<Scalar> coords;
  for (std::size_t i = 0; i < j.size(); ++i) coords.push_back(scalar_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return Vector(std::move(coords));
}

AffineMap map_from_json(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_object()) throw SpecError(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "ratio" && key != "offset" && key != "center") throw SpecError(where + "." + key, "unknown field");
  }
  if (!j.contains("ratio")) throw SpecError(where + ".ratio", "missing");
  const Scalar ratio = scalar_from_json(j["ratio"], where + ".ratio");
  if (ratio.is_zero()) throw SpecError(where + ".ratio", "ratio must be nonzero");
  const bool has_offset = j.contains("offset");
  const bool has_center = j.contains("center");
  if (has_offset == has_center) throw SpecError(where, "give exactly one of \"offset\" or \"center\"");
  const std::string key = has_offset ? "offset" : "center";
  Vector v = vector_from_json(j[key], where + "." + key);
  if (v.dim() != dim) {
    throw SpecError(where + "." + key,
                    "dimension mismatch: expected " + std::to_string(dim) + ", got " + std::to_string(v.dim()));
  }
  if (has_offset) return {ratio, std::move(v)};
  return AffineMap::centered(ratio, v);
}

GroupSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("spec", "expected an object with \"dim\" and \"generators\"");
  for (const auto& [key, _] : j.items()) {
    if (key != "dim" && key != "generators" && key != "name" && key != "description") {
      throw SpecError(key, "unknown field");
    }
  }
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw SpecError("dim", "expected a positive integer");
  }
  const auto dim = j["dim"].get<std::size_t>();
  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty()) {
    throw SpecError("generators", "expected a nonempty array");
  }
  std::vector<AffineMap> gens;
  std::set<std::uint64_t> primes;
  for (std::size_t i = 0; i < j["generators"].size(); ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    gens.push_back(map_from_json(j["generators"][i], dim, where));
    auto add = [&](const Scalar& s) {
      for (auto p : s.radical_primes()) primes.insert(p);
    };
    add(gens.back().ratio());
    for (const auto& c : gens.back().offset()) add(c);
    if (primes.size() > kMaxRadicalPrimes) {
      throw SpecError(where, "more than " + std::to_string(kMaxRadicalPrimes) +
                                 " distinct primes under square roots in the spec");
    }
  }
  return GroupSpec(dim, std::move(gens));
}

GroupSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw SpecError(path + ":" + std::to_string(line), e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const SpecError& e) {
    throw SpecError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

Json analysis_report(const GroupSpec& spec, unsigned relation_bound) {
  const ActionCase c = detect_case(spec);
  const StructureReport structure = predicate_structure(spec);
  Json r;
  r["nonabelian"] = true;
  r["case"] = case_label(c);
  r["dim"] = spec.dim();
  r["scale_set"] = to_json(scale_set(spec, relation_bound));
  Json pred;
  if (c == ActionCase::has_homothety) {
    const AffineSubspace eg = compute_EG(spec);
    r["E_G"] = to_json(eg);
    r["H_G"] = nullptr;
    const DensityVerdict v = predicate_dense_orbit(spec, relation_bound);
    pred["dense_orbit"] = v.dense;
    pred["dense_orbit_reason"] = v.reason;
    pred["every_orbit_off_E_G_dense"] = v.every_orbit_off_flat_dense;
    pred["orbit_flat_dim"] = optional_count(v.orbit_flat_dim);
    pred["orbits_off_E_G_minimal"] = structure.orbits_off_flat_minimal;
    pred["E_G_unique_minimal_set"] = structure.flat_is_unique_minimal_set;
    pred["no_periodic_orbits"] = structure.no_periodic_orbits;
    pred["no_closed_orbits"] = structure.no_closed_orbits;
  } else {
    const TranslationGenerators hg = compute_HG_generators(spec);
    const AdditiveClosure closure = additive_closure(spec.dim(), hg.generators);
    Json h{{"generators", vectors_json(hg.generators)}, {"anchor", to_json(hg.anchor)}, {"closure", to_json(closure)}};
    if (!hg.generators.empty()) {
      const AdditiveClosure numeric = additive_closure_numeric(spec.dim(), hg.generators, kDefaultClosureTolerance,
                                                               precision_bits_from_env());
      h["numeric_cross_check"] = {{"dense_dim", numeric.dense_part.size()},
                                  {"lattice_rank", numeric.lattice_part.size()},
                                  {"agrees", numeric.dense_part.size() == closure.dense_part.size() &&
                                                 numeric.lattice_part.size() == closure.lattice_part.size()}};
    }
    r["E_G"] = nullptr;
    r["H_G"] = h;
    pred["dense_orbit"] = closure.is_dense();
    pred["every_orbit_minimal"] = structure.every_orbit_minimal;
  }
  if (!structure.line_dichotomy.empty()) pred["line_dichotomy"] = structure.line_dichotomy;
  r["predicates"] = pred;
  return r;
}

}  // namespace homothety
