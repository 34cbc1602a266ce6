#pragma once

// Randomized exact property suites shared by the doctest suite and the
// acceptance runner. Each returns the number of cases and failures.

#include <functional>
#include <sstream>
#include <string>

#include "support.hpp"

namespace testing_support {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  [[nodiscard]] bool ok() const { return failures == 0 && cases > 0; }
  void record(bool pass, const std::string& detail) {
    ++cases;
    if (pass) return;
    if (failures++ == 0) first_failure = detail;
  }
};

inline Scalar random_ratio(std::mt19937_64& rng) {
  static const std::vector<Scalar> pool{Scalar(2L),  Scalar(3L),      q(1, 2),        Scalar(-2L),
                                        q(-1, 3),    Scalar::sqrt(2), Scalar::sqrt(3), q(5, 2),
                                        -Scalar::sqrt(2)};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

/// Two or three homotheties with distinct random centers, optionally a
/// translation, in the given dimension (non-abelian by construction).
inline GroupSpec random_case1_spec(std::mt19937_64& rng, std::size_t dim) {
  std::vector<AffineMap> gens;
  std::uniform_int_distribution<int> count(2, 3);
  const int k = count(rng);
  while (static_cast<int>(gens.size()) < k) {
    const Vector c = random_vector(rng, dim, 1);
    bool fresh = true;
    for (const auto& g : gens) fresh = fresh && !(center(g) == c);
    if (fresh) gens.push_back(AffineMap::centered(random_ratio(rng), c));
  }
  std::bernoulli_distribution coin(0.3);
  if (coin(rng)) gens.push_back(AffineMap::translation(random_vector(rng, dim, 1)));
  return GroupSpec(dim, gens);
}

/// Homotheties whose centers lie in span(dirs) (through the origin).
inline GroupSpec random_spec_through_origin(std::mt19937_64& rng, std::size_t dim, const std::vector<Vector>& dirs) {
  std::vector<AffineMap> gens;
  std::vector<Vector> centers{Vector(dim)};
  for (std::size_t i = 0; i < dirs.size(); ++i) centers.push_back(dirs[i]);
  Vector extra(dim);
  for (const auto& d : dirs) extra += Scalar(random_nonzero_rational(rng)) * d;
  centers.push_back(extra);
  for (const auto& c : centers) gens.push_back(AffineMap::centered(random_ratio(rng), c));
  return GroupSpec(dim, gens);
}

inline PropertyResult property_commutation(std::mt19937_64& rng, int n) {
  PropertyResult r{"commutation criterion vs direct composition"};
  std::bernoulli_distribution same_center(0.3);
  std::bernoulli_distribution unit(0.2);
  for (int i = 0; i < n; ++i) {
    const Vector a = random_vector(rng, 2, 1);
    const Vector b = same_center(rng) ? a : random_vector(rng, 2, 1);
    const Scalar alpha = unit(rng) ? Scalar(1L) : random_ratio(rng);
    const Scalar beta = unit(rng) ? Scalar(1L) : random_ratio(rng);
    const AffineMap f = AffineMap::centered(alpha, a);
    const AffineMap g = AffineMap::centered(beta, b);
    const bool criterion = a == b || alpha == Scalar(1L) || beta == Scalar(1L);
    r.record(criterion == (compose(f, g) == compose(g, f)), f.to_string() + " / " + g.to_string());
  }
  return r;
}

inline PropertyResult property_word_formula(std::mt19937_64& rng, int n) {
  PropertyResult r{"word formula (prefix products and center form) vs fold"};
  for (int i = 0; i < n; ++i) {
    std::vector<AffineMap> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(AffineMap::centered(random_ratio(rng), random_vector(rng, 2, 1)));
    const Word w = random_word(rng, 3, 5, 2);
    const AffineMap fold = fold_word(gens, w);
    r.record(word_eval(gens, w) == fold && word_eval_from_centers(gens, w) == fold, "word of length 5");
  }
  return r;
}

inline PropertyResult property_EG_generator_invariance(std::mt19937_64& rng, int n) {
  PropertyResult r{"E_G generator invariance"};
  std::uniform_int_distribution<std::size_t> dim(2, 3);
  for (int i = 0; i < n; ++i) {
    const GroupSpec spec = random_case1_spec(rng, dim(rng));
    const AffineSubspace eg = compute_EG(spec);
    bool ok = true;
    for (const auto& g : spec.gens()) {
      ok = ok && eg.contains(g(eg.base())) && eg.contains(invert_map(g)(eg.base()));
      for (const auto& d : eg.basis()) ok = ok && eg.contains_direction(g.ratio() * d);
      if (!(g.ratio() * g.ratio() == Scalar(1L))) ok = ok && eg.contains(center(g));
    }
    r.record(ok, "case " + std::to_string(i));
  }
  return r;
}

inline PropertyResult property_EG_conjugation_stability(std::mt19937_64& rng, int n) {
  PropertyResult r{"E_G stable under adding w g w^-1, |w| <= 2"};
  for (int i = 0; i < n; ++i) {
    const GroupSpec spec = random_case1_spec(rng, 2);
    std::vector<AffineMap> letters{AffineMap::identity(2)};
    for (const auto& g : spec.gens()) {
      letters.push_back(g);
      letters.push_back(invert_map(g));
    }
    std::vector<AffineMap> words;
    for (const auto& u : letters)
      for (const auto& v : letters) words.push_back(compose(u, v));
    std::vector<AffineMap> gens = spec.gens();
    for (const auto& w : words)
      for (const auto& g : spec.gens()) gens.push_back(conjugate(w, g));
    r.record(compute_EG(GroupSpec(2, gens)) == compute_EG(spec), "case " + std::to_string(i));
  }
  return r;
}

inline PropertyResult property_EG_translation_conjugate(std::mt19937_64& rng, int n) {
  PropertyResult r{"E_{T_-a G T_a} = T_-a(E_G)"};
  for (int i = 0; i < n; ++i) {
    const GroupSpec spec = random_case1_spec(rng, 2);
    const Vector a = random_vector(rng, 2, 2);
    const AffineMap shift = AffineMap::translation(-a);
    std::vector<AffineMap> gens;
    for (const auto& g : spec.gens()) gens.push_back(conjugate(shift, g));
    r.record(compute_EG(GroupSpec(2, gens)) == compute_EG(spec).image(shift), "case " + std::to_string(i));
  }
  return r;
}

/// Points that lie in the closure of G(x): images of x under random words,
/// plus scaled copies along the family (when the closure is a family).
inline std::vector<Vector> closure_samples(std::mt19937_64& rng, const GroupSpec& spec, const Vector& x, int n) {
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) {
    const Word w = random_word(rng, spec.gens().size(), 3, 2);
    out.push_back(word_eval(spec.gens(), w)(x));
  }
  return out;
}

/// Random points near the closure: orbit points nudged by small rationals,
/// mirrored, or pushed off the flat.
inline std::vector<Vector> probe_points(std::mt19937_64& rng, const GroupSpec& spec, const Vector& x, int n) {
  std::vector<Vector> out = closure_samples(rng, spec, x, n / 2);
  std::uniform_int_distribution<int> mode(0, 2);
  while (static_cast<int>(out.size()) < n) {
    const Vector base = closure_samples(rng, spec, x, 1).front();
    switch (mode(rng)) {
      case 0: out.push_back(base + rational_vector(rng, spec.dim())); break;
      case 1: out.push_back(-base); break;
      default: out.push_back(Scalar(random_nonzero_rational(rng)) * base); break;
    }
  }
  return out;
}

inline PropertyResult property_anchor_and_closure_agreement(std::mt19937_64& rng, int specs, int samples) {
  PropertyResult r{"anchor invariance and closure agreement (memberships)"};
  for (int i = 0; i < specs; ++i) {
    Vector dir;
    do {
      dir = random_vector(rng, 3, 1);
    } while (dir.is_zero());
    const std::vector<Vector> dirs{dir};
    const GroupSpec spec = random_spec_through_origin(rng, 3, dirs);
    const AffineSubspace eg = compute_EG(spec);
    Vector x = random_vector(rng, 3, 1);
    if (eg.contains(x)) continue;
    Vector anchor2 = eg.base();
    for (const auto& d : eg.basis()) anchor2 += Scalar(random_rational(rng)) * d;
    const OrbitClosureDesc d1 = orbit_closure(spec, x);
    const OrbitClosureDesc d2 = orbit_closure_with_anchor(spec, x, anchor2);
    const Vector y = word_eval(spec.gens(), random_word(rng, spec.gens().size(), 3, 2))(x);
    const OrbitClosureDesc d3 = orbit_closure(spec, y);
    for (const auto& p : probe_points(rng, spec, x, samples)) {
      const bool m1 = d1.member(p, 0.0);
      r.record(m1 == d2.member(p, 0.0) && m1 == d3.member(p, 0.0), "probe " + p.to_string());
    }
  }
  return r;
}

inline PropertyResult property_word_equivariance(std::mt19937_64& rng, int words) {
  PropertyResult r{"phi(w(x)) = w(y) for |w| <= 4"};
  const std::vector<Vector> dirs{vec({1, 0, 0})};
  const GroupSpec spec = random_spec_through_origin(rng, 3, dirs);
  const AffineSubspace eg = compute_EG(spec);
  Vector x;
  Vector y;
  do {
    x = random_vector(rng, 3, 1);
    y = random_vector(rng, 3, 1);
  } while (eg.contains(x) || eg.contains(y));
  // phi(alpha x + v) = alpha y + v, v in E_G (a vector space here)
  auto phi = [&](const Vector& z) {
    std::vector<Vector> cols{x};
    cols.insert(cols.end(), eg.basis().begin(), eg.basis().end());
    const auto c = solve(3, cols, z);
    if (!c) throw std::logic_error("point outside R x + E_G");
    return (*c)[0] * y + (z - (*c)[0] * x);
  };
  std::uniform_int_distribution<std::size_t> len(1, 4);
  for (int i = 0; i < words; ++i) {
    const Word w = random_word(rng, spec.gens().size(), len(rng), 2);
    const AffineMap f = word_eval(spec.gens(), w);
    r.record(phi(f(x)) == f(y), "word " + std::to_string(i));
  }
  return r;
}

}  // namespace testing_support
