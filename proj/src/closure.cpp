#include "homothety/closure.hpp"

#include <cmath>
#include <stdexcept>

#include "homothety/linalg.hpp"

namespace homothety {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> dsub(std::vector<double> a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// Residual norm of v after orthogonal projection onto span(dirs).
double residual_norm(std::vector<double> v, const std::vector<Vector>& dirs) {
  std::vector<std::vector<double>> q;
  for (const auto& d : dirs) {
    auto x = d.approx();
    for (const auto& e : q) {
      double s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * e[i];
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= s * e[i];
    }
    double n = 0;
    for (double c : x) n += c * c;
    n = std::sqrt(n);
    if (n == 0) continue;
    for (auto& c : x) c /= n;
    q.push_back(std::move(x));
  }
  for (const auto& e : q) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * e[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= s * e[i];
  }
  double n = 0;
  for (double c : v) n += c * c;
  return std::sqrt(n);
}

// s with y - anchor = s * direction + (element of flat directions), if any.
std::optional<Scalar> scaled_coordinate(const ScaledFamily& f, const Vector& y) {
  std::vector<Vector> cols{f.direction};
  cols.insert(cols.end(), f.flat.basis().begin(), f.flat.basis().end());
  auto c = solve(y.dim(), cols, y - f.anchor);
  if (!c) return std::nullopt;
  return c->front();
}

}  // namespace

OrbitClosureDesc::OrbitClosureDesc(Variant v) : v_(std::move(v)) {
  if (const auto* f = std::get_if<ScaledFamily>(&v_)) {
    if (!f->flat.contains(f->anchor)) throw std::invalid_argument("anchor must lie in the flat");
    if (f->flat.contains_direction(f->direction)) {
      throw std::invalid_argument("direction must leave the flat");
    }
  }
}

const char* OrbitClosureDesc::variant_name() const {
  return std::visit(overloaded{[](const FlatClosure&) { return "flat"; },
                               [](const ScaledFamily&) { return "scaled_family"; },
                               [](const SymmetricPair&) { return "symmetric_pair"; }},
                    v_);
}

std::size_t OrbitClosureDesc::dim() const {
  return std::visit(overloaded{[](const FlatClosure& f) { return f.flat.ambient_dim(); },
                               [](const ScaledFamily& f) { return f.flat.ambient_dim(); },
                               [](const SymmetricPair& p) { return p.point.dim(); }},
                    v_);
}

bool OrbitClosureDesc::member(const Vector& y, double tol) const {
  require_same_dim(dim(), y.dim(), "membership");
  return std::visit(
      overloaded{[&](const FlatClosure& f) { return f.flat.contains(y); },
                 [&](const ScaledFamily& f) {
                   auto s = scaled_coordinate(f, y);
                   return s && f.scale.contains(*s, tol);
                 },
                 [&](const SymmetricPair& p) {
                   return p.subgroup.contains(y - p.point, tol) ||
                          p.subgroup.contains(y + p.point - p.anchor, tol);
                 }},
      v_);
}

double OrbitClosureDesc::distance(const Vector& y) const {
  return std::visit(
      overloaded{[&](const FlatClosure& f) {
                   return residual_norm(dsub(y.approx(), f.flat.base().approx()), f.flat.basis());
                 },
                 [&](const ScaledFamily& f) {
                   const auto rel = dsub(y.approx(), f.anchor.approx());
                   std::vector<Vector> dirs{f.direction};
                   dirs.insert(dirs.end(), f.flat.basis().begin(), f.flat.basis().end());
                   double off = residual_norm(rel, dirs);
                   if (auto s = scaled_coordinate(f, y)) {
                     // distance along the direction, measured outside the flat
                     const double along = residual_norm(f.direction.approx(), f.flat.basis());
                     off += f.scale.distance(*s) * along;
                   }
                   return off;
                 },
                 [&](const SymmetricPair& p) {
                   return std::min(p.subgroup.distance(y - p.point),
                                   p.subgroup.distance(y + p.point - p.anchor));
                 }},
      v_);
}

std::optional<std::size_t> OrbitClosureDesc::component_count() const {
  return std::visit(
      overloaded{[](const FlatClosure&) -> std::optional<std::size_t> { return 1; },
                 [](const ScaledFamily& f) -> std::optional<std::size_t> {
                   // a dense scale closure is [0, inf) or R: a half-flat or a flat
                   if (f.scale.positive == ScaleSet::Positive::dense) return 1;
                   return std::nullopt;
                 },
                 [](const SymmetricPair& p) -> std::optional<std::size_t> {
                   if (!p.subgroup.is_connected()) return std::nullopt;
                   // the sheets coincide iff 2x - a lies in H
                   const Vector shift = Scalar(2L) * p.point - p.anchor;
                   return p.subgroup.contains(shift, p.subgroup.tolerance) ? 1 : 2;
                 }},
      v_);
}

namespace {

OrbitClosureDesc build_closure(const GroupSpec& spec, const Vector& x, const Vector* anchor,
                               unsigned relation_bound) {
  require_same_dim(spec.dim(), x.dim(), "orbit closure");
  const ActionCase c = detect_case(spec);
  if (c == ActionCase::symmetries_only) {
    const TranslationGenerators hg = compute_HG_generators(spec);
    return OrbitClosureDesc(SymmetricPair{x, hg.anchor, additive_closure(spec.dim(), hg.generators)});
  }
  AffineSubspace eg = compute_EG(spec);
  if (eg.contains(x)) return OrbitClosureDesc(FlatClosure{std::move(eg)});
  Vector a = anchor ? *anchor : eg.base();
  if (!eg.contains(a)) throw std::invalid_argument("anchor is not in E_G");
  Vector dir = x - a;
  return OrbitClosureDesc(ScaledFamily{scale_set(spec, relation_bound), std::move(a), std::move(dir), std::move(eg)});
}

}  // namespace

OrbitClosureDesc orbit_closure(const GroupSpec& spec, const Vector& x, unsigned relation_bound) {
  return build_closure(spec, x, nullptr, relation_bound);
}

OrbitClosureDesc orbit_closure_with_anchor(const GroupSpec& spec, const Vector& x, const Vector& anchor,
                                           unsigned relation_bound) {
  return build_closure(spec, x, &anchor, relation_bound);
}

bool member(const OrbitClosureDesc& desc, const Vector& y, double tol) { return desc.member(y, tol); }

DensityVerdict predicate_dense_orbit(const GroupSpec& spec, unsigned relation_bound) {
  if (detect_case(spec) != ActionCase::has_homothety) {
    throw WrongCaseError("dense-orbit predicate applies to case 1; use predicate_case2_density");
  }
  const AffineSubspace eg = compute_EG(spec);
  const ScaleSet scale = scale_set(spec, relation_bound);
  const std::size_t n = spec.dim();
  DensityVerdict v;
  if (eg.is_whole_space()) {
    v.dense = true;
    v.reason = "E_G = R^n";
  } else if (eg.dim() + 1 == n && scale.closure_is_real_line()) {
    v.dense = true;
    v.reason = "dim E_G = n - 1 and the ratio closure is R";
  } else if (scale.closure_is_real_line()) {
    v.reason = "ratio closure is R but dim E_G = " + std::to_string(eg.dim()) + " < n - 1";
    v.orbit_flat_dim = eg.dim() + 1;
  } else if (eg.dim() + 1 == n) {
    v.reason = "dim E_G = n - 1 but the ratio closure is not R";
  } else {
    v.reason = "dim E_G = " + std::to_string(eg.dim()) + " < n - 1";
  }
  if (scale.closure_is_real_line() && !v.orbit_flat_dim) v.orbit_flat_dim = eg.dim() + 1;
  if (eg.is_whole_space()) v.orbit_flat_dim = n;
  v.every_orbit_off_flat_dense = v.dense;
  return v;
}

bool predicate_case2_density(const GroupSpec& spec) {
  if (detect_case(spec) != ActionCase::symmetries_only) {
    throw WrongCaseError("case-2 density predicate applies to groups of symmetries");
  }
  const TranslationGenerators hg = compute_HG_generators(spec);
  return additive_closure(spec.dim(), hg.generators).is_dense();
}

StructureReport predicate_structure(const GroupSpec& spec) {
  StructureReport r;
  r.action_case = detect_case(spec);
  if (r.action_case == ActionCase::has_homothety) {
    r.orbits_off_flat_minimal = true;
    r.flat_is_unique_minimal_set = true;
    r.no_periodic_orbits = true;
    r.no_closed_orbits = true;  // finitely generated, hence countable
    if (spec.dim() == 1) r.line_dichotomy = "all_dense";
  } else {
    r.every_orbit_minimal = true;
    if (spec.dim() == 1) r.line_dichotomy = predicate_case2_density(spec) ? "all_dense" : "all_closed_discrete";
  }
  return r;
}

}  // namespace homothety
