#include "homothety/invariants.hpp"

#include <cmath>
#include <numeric>
#include <optional>

namespace homothety {

GroupSpec::GroupSpec(std::size_t dim, std::vector<AffineMap> gens) : dim_(dim), gens_(std::move(gens)) {
  if (dim_ == 0) throw std::invalid_argument("dimension must be positive");
  if (gens_.empty()) throw std::invalid_argument("at least one generator is required");
  for (const auto& g : gens_) require_same_dim(dim_, g.dim(), "generator list");
}

const char* case_label(ActionCase c) { return c == ActionCase::has_homothety ? "1" : "2"; }

bool check_nonabelian(const GroupSpec& spec) {
  const auto& g = spec.gens();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!(compose(g[i], g[j]) == compose(g[j], g[i]))) return true;
    }
  }
  return false;
}

namespace {

bool is_unit_modulus(const Scalar& ratio) { return ratio * ratio == Scalar(1L); }

}  // namespace

ActionCase detect_case(const GroupSpec& spec) {
  if (!check_nonabelian(spec)) throw AbelianGroupError();
  for (const auto& g : spec.gens()) {
    if (!is_unit_modulus(g.ratio())) return ActionCase::has_homothety;
  }
  return ActionCase::symmetries_only;
}

const char* to_string(ScaleSet::Positive p) {
  switch (p) {
    case ScaleSet::Positive::trivial: return "trivial";
    case ScaleSet::Positive::cyclic: return "cyclic";
    case ScaleSet::Positive::dense: return "dense";
  }
  return "?";
}

namespace {

// k with s = base^k exactly, if any (s > 0, base > 1).
std::optional<long> exact_log(const Scalar& s, const Scalar& base) {
  const double ls = std::log(s.approx());
  const double lb = std::log(base.approx());
  if (!std::isfinite(ls) || !std::isfinite(lb) || lb == 0) return std::nullopt;
  const double k = std::round(ls / lb);
  if (std::abs(k) > 1e6) return std::nullopt;
  const long ki = static_cast<long>(k);
  if (pow(base, ki) == s) return ki;
  return std::nullopt;
}

double log_distance(double s, double base) {
  // distance from s > 0 to the nearest power of base
  const double k = std::round(std::log(s) / std::log(base));
  double best = INFINITY;
  for (double d = -1; d <= 1; ++d) best = std::min(best, std::abs(s - std::pow(base, k + d)));
  return std::min(best, s);  // 0 is in the closure too
}

}  // namespace

bool ScaleSet::contains(const Scalar& s, double tol) const {
  const int sg = s.sign();
  if (sg == 0) return contains_zero;
  if (positive == Positive::dense) {
    if (sg > 0 || contains_negative) return true;
    return s.approx() >= -tol;
  }
  if (sg > 0) {
    if (positive == Positive::trivial) return s == Scalar(1L);
    return exact_log(s, base).has_value();
  }
  if (!contains_negative) return false;
  const Scalar m = -s / negative_coset;
  if (positive == Positive::trivial) return m == Scalar(1L);
  return exact_log(m, base).has_value();
}

double ScaleSet::distance(const Scalar& s) const {
  if (contains(s, 0.0)) return 0.0;
  const double v = s.approx();
  if (positive == Positive::dense) return v < 0 ? -v : 0.0;
  double best = contains_zero ? std::abs(v) : INFINITY;
  const double b = base.approx();
  auto near_positive = [&](double x) {
    if (positive == Positive::trivial) return std::abs(x - 1.0);
    return contains_zero ? log_distance(x, b)
                         : std::abs(x - std::pow(b, std::round(std::log(x) / std::log(b))));
  };
  if (v > 0) {
    best = std::min(best, near_positive(v));
  } else if (contains_negative) {
    const double c = negative_coset.approx();
    best = std::min(best, c * near_positive(-v / c));
  }
  return best;
}

namespace {

// Smallest p in [1, bound] with x^p = y^q for some 1 <= |q| <= bound;
// returns (p, q). Both x, y > 0 and != 1.
std::optional<std::pair<long, long>> find_relation(const Scalar& x, const Scalar& y, unsigned bound) {
  const double rho = std::log(x.approx()) / std::log(y.approx());
  for (long p = 1; p <= static_cast<long>(bound); ++p) {
    const double qd = std::round(static_cast<double>(p) * rho);
    if (qd == 0 || std::abs(qd) > bound) continue;
    if (std::abs(static_cast<double>(p) * rho - qd) > 1e-6 * static_cast<double>(p)) continue;
    const long q = static_cast<long>(qd);
    if (pow(x, p) == pow(y, q)) return std::make_pair(p, q);
  }
  return std::nullopt;
}

// Extended gcd over a list: returns g >= 0 and c with sum c_i m_i = g.
std::pair<Integer, std::vector<Integer>> bezout(const std::vector<Integer>& m) {
  Integer g(0);
  std::vector<Integer> c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (sgn(m[i]) == 0) continue;
    Integer ng, s, t;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), m[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) c[j] *= s;
    c[i] = t;
    g = ng;
  }
  return {g, c};
}

}  // namespace

ScaleSet scale_set(const GroupSpec& spec, unsigned relation_bound) {
  ScaleSet out;
  out.certification_bound = relation_bound;
  const auto& gens = spec.gens();
  const std::size_t k = gens.size();

  std::vector<Scalar> moduli;
  std::vector<int> negative(k, 0);
  std::optional<std::size_t> reference;
  for (std::size_t i = 0; i < k; ++i) {
    moduli.push_back(abs(gens[i].ratio()));
    negative[i] = gens[i].ratio().sign() < 0 ? 1 : 0;
    if (!(moduli[i] == Scalar(1L)) && !reference) reference = i;
  }
  out.contains_zero = reference.has_value();
  out.contains_negative = std::any_of(negative.begin(), negative.end(), [](int s) { return s != 0; });
  out.negative_coset = Scalar(1L);
  out.base_exponents.assign(k, Rational(0));

  if (!reference) {
    out.positive = ScaleSet::Positive::trivial;
    out.base = Scalar(1L);
    return out;
  }

  // log|l_i| = (q_i / p_i) log|l_ref|
  std::vector<long> p(k, 1);
  std::vector<long> q(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (moduli[i] == Scalar(1L)) continue;
    if (i == *reference) {
      q[i] = 1;
      continue;
    }
    auto rel = find_relation(moduli[i], moduli[*reference], relation_bound);
    if (!rel) {
      out.positive = ScaleSet::Positive::dense;
      out.base_exponents.clear();
      return out;
    }
    p[i] = rel->first;
    q[i] = rel->second;
  }

  long lcm = 1;
  for (std::size_t i = 0; i < k; ++i) lcm = std::lcm(lcm, p[i]);
  std::vector<Integer> m(k);
  for (std::size_t i = 0; i < k; ++i) m[i] = Integer(q[i] * (lcm / p[i]));
  auto [g, c] = bezout(m);

  // modulus-group generator b = prod |l_i|^{c_i}; |l_i| = b^{m_i / g}
  Scalar b(1L);
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn(c[i]) != 0) b *= pow(moduli[i], c[i].get_si());
  }
  std::vector<Integer> e(k);
  for (std::size_t i = 0; i < k; ++i) e[i] = m[i] / g;
  if (b.sign() > 0 && b < Scalar(1L)) {
    b = b.inverse();
    for (auto& x : c) x = -x;
    for (auto& x : e) x = -x;
  }

  // Sign character on Z * (|l| exponent): negative part is b^r * (positive part).
  long step = 1;
  if (out.contains_negative) {
    bool parity_determined = true;  // s_i == e_i (mod 2) for every i
    for (std::size_t i = 0; i < k; ++i) {
      const int parity = mpz_odd_p(e[i].get_mpz_t()) ? 1 : 0;
      if (parity != negative[i]) parity_determined = false;
    }
    if (parity_determined) {
      step = 2;
      out.negative_coset = b;
    }
  }
  out.positive = ScaleSet::Positive::cyclic;
  out.base = pow(b, step);
  for (std::size_t i = 0; i < k; ++i) out.base_exponents[i] = Rational(c[i] * step);
  return out;
}

AffineSubspace compute_EG(const GroupSpec& spec) {
  if (detect_case(spec) != ActionCase::has_homothety) {
    throw WrongCaseError("E_G saturation requires a generator with |ratio| != 1");
  }
  std::vector<Vector> centers;
  for (const auto& g : spec.gens()) {
    if (!is_unit_modulus(g.ratio())) centers.push_back(center(g));
  }
  AffineSubspace flat = AffineSubspace::hull(centers);
  std::vector<AffineMap> maps;
  for (const auto& g : spec.gens()) {
    maps.push_back(g);
    maps.push_back(invert_map(g));
  }
  // g(base + v) = g(base) + ratio * v, so only base images can add directions.
  for (std::size_t round = 0; round <= spec.dim(); ++round) {
    bool grew = false;
    for (const auto& g : maps) grew = flat.add_point(g(flat.base())) || grew;
    if (!grew) break;
  }
  return flat;
}

TranslationGenerators compute_HG_generators(const GroupSpec& spec) {
  if (detect_case(spec) != ActionCase::symmetries_only) {
    throw WrongCaseError("H_G generators are defined for groups of symmetries");
  }
  TranslationGenerators out;
  std::vector<const Vector*> symmetry_offsets;
  for (const auto& g : spec.gens()) {
    if (g.ratio() == Scalar(1L)) {
      if (!g.offset().is_zero()) out.generators.push_back(g.offset());
    } else {
      symmetry_offsets.push_back(&g.offset());
    }
  }
  if (symmetry_offsets.empty()) throw AbelianGroupError();
  for (std::size_t i = 0; i < symmetry_offsets.size(); ++i) {
    for (std::size_t j = i + 1; j < symmetry_offsets.size(); ++j) {
      Vector d = *symmetry_offsets[i] - *symmetry_offsets[j];
      if (!d.is_zero()) out.generators.push_back(std::move(d));
    }
  }
  out.anchor = *symmetry_offsets.front();
  return out;
}

}  // namespace homothety
