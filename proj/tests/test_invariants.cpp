#include <doctest.h>

#include "support.hpp"

using namespace homothety;
using namespace testing_support;

namespace {

GroupSpec line_spec(std::initializer_list<std::pair<long, long>> ratio_center) {
  std::vector<AffineMap> gens;
  for (auto [r, c] : ratio_center) gens.push_back(AffineMap::centered(Scalar(r), vec({c})));
  return GroupSpec(1, gens);
}

GroupSpec three_centers() {
  const Vector a1{Scalar::sqrt(2), Scalar()};
  const Vector a2 = vec({0, 1});
  const Vector a3{-Scalar::sqrt(3), -Scalar::sqrt(2)};
  return GroupSpec(2, {AffineMap::centered(Scalar(2L), a1), AffineMap::centered(Scalar(2L), a2),
                       AffineMap::centered(Scalar(2L), a3)});
}

GroupSpec symmetry_two_translations(const Vector& a) {
  return GroupSpec(a.dim(), {AffineMap::translation(a), AffineMap::symmetry(a),
                             AffineMap::translation(Scalar::sqrt(2) * a)});
}

// Z-combinations with coefficients in [-bound, bound] (all of them).
std::vector<Vector> small_combinations(const std::vector<Vector>& gens, long bound, std::size_t dim) {
  std::vector<Vector> out{Vector(dim)};
  for (const auto& g : gens) {
    std::vector<Vector> next;
    for (const auto& v : out) {
      for (long k = -bound; k <= bound; ++k) next.push_back(v + Scalar(k) * g);
    }
    out = std::move(next);
  }
  return out;
}

bool same_set(std::vector<Vector> a, std::vector<Vector> b) {
  auto key = [](const Vector& v) { return v.to_string(); };
  std::set<std::string> sa;
  std::set<std::string> sb;
  for (const auto& v : a) sa.insert(key(v));
  for (const auto& v : b) sb.insert(key(v));
  return sa == sb;
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("non-abelian check and case split") {
  const Vector a = vec({1, 0});
  const Vector b = vec({0, 1});
  CHECK_FALSE(check_nonabelian(GroupSpec(2, {AffineMap::translation(a), AffineMap::translation(b)})));
  CHECK(check_nonabelian(three_centers()));
  CHECK_FALSE(check_nonabelian(
      GroupSpec(2, {AffineMap::centered(Scalar(2L), a), AffineMap::centered(Scalar(3L), a)})));
  CHECK_THROWS_AS(detect_case(GroupSpec(2, {AffineMap::translation(a), AffineMap::translation(b)})),
                  AbelianGroupError);
  CHECK(detect_case(GroupSpec(1, {AffineMap(Scalar::sqrt(2), vec({0})), AffineMap::translation(vec({1}))})) ==
        ActionCase::has_homothety);
  CHECK(detect_case(symmetry_two_translations(a)) == ActionCase::symmetries_only);
  CHECK(std::string(case_label(ActionCase::has_homothety)) == "1");
  CHECK_THROWS_AS(GroupSpec(2, {AffineMap::translation(vec({1}))}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec(2, {}), std::invalid_argument);
  try {
    detect_case(GroupSpec(2, {AffineMap::translation(a), AffineMap::translation(b)}));
  } catch (const AbelianGroupError& e) {
    CHECK(std::string(e.what()) == "theorems require a non abelian group");
  }
}

TEST_CASE("ratio closure examples") {
  const ScaleSet s2 = scale_set(line_spec({{2, 0}, {2, 1}}));
  CHECK(s2.positive == ScaleSet::Positive::cyclic);
  CHECK(s2.base == Scalar(2L));
  CHECK_FALSE(s2.contains_negative);
  CHECK(s2.contains_zero);

  const ScaleSet dense = scale_set(line_spec({{-2, 0}, {3, 1}}));
  CHECK(dense.positive == ScaleSet::Positive::dense);
  CHECK(dense.contains_negative);
  CHECK(dense.closure_is_real_line());
  CHECK(dense.certification_bound == 64);

  const ScaleSet s24 = scale_set(line_spec({{2, 0}, {4, 1}}));
  CHECK(s24.positive == ScaleSet::Positive::cyclic);
  CHECK(s24.base == Scalar(2L));
  // base is a monomial in the generator ratios
  CHECK(pow(Scalar(2L), s24.base_exponents[0].get_num().get_si()) *
            pow(Scalar(4L), s24.base_exponents[1].get_num().get_si()) ==
        s24.base);

  // {-2}: negative part -2 * 4^k, positive part 4^k
  const ScaleSet neg = scale_set(line_spec({{-2, 0}, {-2, 1}}));
  CHECK(neg.positive == ScaleSet::Positive::cyclic);
  CHECK(neg.base == Scalar(4L));
  CHECK(neg.negative_coset == Scalar(2L));
  CHECK(neg.contains(Scalar(-2L), 0));
  CHECK(neg.contains(Scalar(-8L), 0));
  CHECK_FALSE(neg.contains(Scalar(-4L), 0));
  CHECK(neg.contains(Scalar(16L), 0));
  CHECK_FALSE(neg.contains(Scalar(2L), 0));

  // {-2, 2} contain -1: both signs of every power of 2
  const ScaleSet both = scale_set(line_spec({{-2, 0}, {2, 1}}));
  CHECK(both.base == Scalar(2L));
  CHECK(both.negative_coset == Scalar(1L));
  CHECK(both.contains(Scalar(-4L), 0));

  // sqrt2 and 2 are related: base sqrt2
  const GroupSpec rad(1, {AffineMap::centered(Scalar::sqrt(2), vec({0})), AffineMap::centered(Scalar(2L), vec({1}))});
  const ScaleSet sr = scale_set(rad);
  CHECK(sr.positive == ScaleSet::Positive::cyclic);
  CHECK(sr.base == Scalar::sqrt(2));

  // relations beyond the bound are reported dense with the bound recorded
  // 4^1 = 2^2 needs q = 2
  CHECK(scale_set(line_spec({{2, 0}, {4, 1}}), 2).positive == ScaleSet::Positive::cyclic);
  CHECK(scale_set(line_spec({{2, 0}, {4, 1}}), 1).positive == ScaleSet::Positive::dense);
  const ScaleSet hidden = scale_set(line_spec({{4, 0}, {8, 1}}), 2);
  CHECK(hidden.positive == ScaleSet::Positive::dense);
  CHECK(hidden.certification_bound == 2);
  CHECK(scale_set(line_spec({{4, 0}, {8, 1}}), 3).base == Scalar(2L));

  // symmetries only: no zero
  const ScaleSet unit = scale_set(symmetry_two_translations(vec({1, 0})));
  CHECK(unit.positive == ScaleSet::Positive::trivial);
  CHECK(unit.contains_negative);
  CHECK_FALSE(unit.contains_zero);
}

TEST_CASE("ratio closure is unchanged by adding products and quotients of ratios") {
  std::mt19937_64 rng(kSeed + 20);
  const std::vector<long> pool{2, 3, -2, 4, -8, 9, 6};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 50; ++i) {
    const long l1 = pool[pick(rng)];
    const long l2 = pool[pick(rng)];
    const GroupSpec base = line_spec({{l1, 0}, {l2, 1}});
    std::vector<AffineMap> gens = base.gens();
    gens.push_back(AffineMap::centered(Scalar(l1) * Scalar(l2), vec({5})));
    gens.push_back(AffineMap::centered(Scalar(l1) / Scalar(l2) == Scalar(1L) ? Scalar(l1) : Scalar(l1) / Scalar(l2),
                                       vec({7})));
    const ScaleSet a = scale_set(base);
    const ScaleSet b = scale_set(GroupSpec(1, gens));
    REQUIRE(a.positive == b.positive);
    REQUIRE(a.contains_negative == b.contains_negative);
    REQUIRE(a.contains_zero == b.contains_zero);
    if (a.positive == ScaleSet::Positive::cyclic) {
      REQUIRE(a.base == b.base);
      REQUIRE(a.negative_coset == b.negative_coset);
    }
  }
}

TEST_CASE("E_G examples") {
  const AffineSubspace e61 = compute_EG(three_centers());
  CHECK(e61.dim() == 2);
  CHECK(e61.is_whole_space());

  // basis e1, e2 plus a center with coordinate sum != 1
  const GroupSpec remark(2, {AffineMap::centered(Scalar(2L), {q(1, 3), q(1, 5)}), AffineMap::translation(vec({1, 0})),
                             AffineMap::translation(vec({0, 1}))});
  CHECK(compute_EG(remark).is_whole_space());

  // literal generator set with only the second translation: a line
  const GroupSpec literal(2, {AffineMap::centered(Scalar(2L), {q(1, 3), q(1, 5)}), AffineMap::translation(vec({0, 1}))});
  const AffineSubspace line = compute_EG(literal);
  CHECK(line.dim() == 1);
  CHECK(line.contains({q(1, 3), Scalar(7L)}));
  CHECK_FALSE(line.contains({Scalar(0L), Scalar(0L)}));

  // two homotheties in R^3: the line through both centers
  const Vector a = vec({1, 2, 3});
  const Vector b{Scalar::sqrt(2), Scalar(0L), Scalar(-1L)};
  const AffineSubspace l3 = compute_EG(GroupSpec(3, {AffineMap::centered(Scalar(2L), a), AffineMap::centered(Scalar(3L), b)}));
  CHECK(l3.dim() == 1);
  CHECK(l3.contains(a));
  CHECK(l3.contains(b));
  CHECK(l3.contains(q(1, 2) * (a + b)));

  CHECK_THROWS_AS(compute_EG(symmetry_two_translations(vec({1, 0}))), WrongCaseError);
}

TEST_CASE("H_G generators examples") {
  const Vector a = vec({1, 0});
  const TranslationGenerators hg = compute_HG_generators(symmetry_two_translations(a));
  CHECK(hg.anchor == a);
  const AdditiveClosure c = additive_closure(2, hg.generators);
  CHECK(c.dense_part.size() == 1);
  CHECK(c.lattice_part.empty());
  CHECK(c.contains(vec({5, 0})));
  CHECK_FALSE(c.contains(vec({0, 1})));

  const Vector b = vec({0, 3});
  const TranslationGenerators one = compute_HG_generators(GroupSpec(2, {AffineMap::symmetry(a), AffineMap::translation(b)}));
  CHECK(same_set(one.generators, {b}));

  const Vector a2 = vec({2, 1});
  const TranslationGenerators two = compute_HG_generators(GroupSpec(2, {AffineMap::symmetry(a), AffineMap::symmetry(a2)}));
  CHECK(same_set(two.generators, {a - a2}));
  CHECK_THROWS_AS(compute_HG_generators(three_centers()), WrongCaseError);
}

TEST_CASE("brute-force translation subgroup examples") {
  const Vector a = vec({1, 0});
  const Vector ra{Scalar::sqrt(2), Scalar()};
  const auto t4 = brute_force_translation_subgroup(symmetry_two_translations(a), 4);
  auto has = [&](const Vector& v) { return std::find(t4.begin(), t4.end(), v) != t4.end(); };
  CHECK(has(a));
  CHECK(has(ra));
  CHECK(has(a - ra));
  const auto hg = compute_HG_generators(symmetry_two_translations(a)).generators;
  for (const auto& v : t4) CHECK(integer_coordinates(2, hg, v).has_value());

  const Vector b = vec({0, 3});
  const auto single = brute_force_translation_subgroup(GroupSpec(2, {AffineMap::symmetry(a), AffineMap::translation(b)}), 4);
  std::vector<Vector> expected;
  for (long k = -4; k <= 4; ++k) expected.push_back(Scalar(k) * b);
  CHECK(same_set(single, expected));

  const Vector a2 = vec({2, 1});
  const auto pair = brute_force_translation_subgroup(GroupSpec(2, {AffineMap::symmetry(a), AffineMap::symmetry(a2)}), 2);
  CHECK(same_set(pair, {Vector(2), a - a2, a2 - a}));
  CHECK_THROWS_AS(brute_force_translation_subgroup(three_centers(), 2), WrongCaseError);
}

TEST_CASE("H_G generators span the brute-force subgroup at depth 6 on random symmetry groups") {
  std::mt19937_64 rng(kSeed + 21);
  for (int i = 0; i < 25; ++i) {
    std::vector<AffineMap> gens{AffineMap::symmetry(rational_vector(rng, 2))};
    std::bernoulli_distribution coin(0.5);
    if (coin(rng)) gens.push_back(AffineMap::symmetry(rational_vector(rng, 2)));
    gens.push_back(AffineMap::translation(random_vector(rng, 2, 1)));
    const GroupSpec spec(2, gens);
    if (!check_nonabelian(spec)) continue;
    const auto hg = compute_HG_generators(spec).generators;
    const auto brute = brute_force_translation_subgroup(spec, 6);
    // brute force inside the span, with coefficients bounded by 8
    const auto combos = small_combinations(hg, 8, 2);
    for (const auto& v : brute) {
      REQUIRE(integer_coordinates(2, hg, v).has_value());
      REQUIRE(std::find(combos.begin(), combos.end(), v) != combos.end());
    }
    // each generator (two letters at most) and small sums reachable
    for (const auto& v : small_combinations(hg, 1, 2)) {
      if (hg.size() > 2) break;
      REQUIRE(std::find(brute.begin(), brute.end(), v) != brute.end());
    }
  }
}

TEST_CASE("E_G is invariant under every generator") {
  std::mt19937_64 rng(kSeed + 22);
  for (int i = 0; i < 100; ++i) {
    std::vector<AffineMap> gens;
    const std::size_t dim = 3;
    for (int k = 0; k < 2; ++k) gens.push_back(AffineMap::centered(Scalar(2L + k), random_vector(rng, dim, 1)));
    gens.push_back(random_map(rng, dim));
    const GroupSpec spec(dim, gens);
    if (!check_nonabelian(spec)) continue;
    const AffineSubspace eg = compute_EG(spec);
    for (const auto& g : gens) {
      REQUIRE(eg.contains(g(eg.base())));
      REQUIRE(eg.contains(invert_map(g)(eg.base())));
      for (const auto& d : eg.basis()) REQUIRE(eg.contains_direction(g.ratio() * d));
      if (!(g.ratio() * g.ratio() == Scalar(1L))) REQUIRE(eg.contains(center(g)));
    }
  }
}

}
