#include "homothety/affine.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace homothety {

Vector Vector::unit(std::size_t dim, std::size_t axis) {
  Vector v(dim);
  v[axis] = Scalar(1L);
  return v;
}

bool Vector::is_zero() const {
  for (const auto& c : coords_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Vector Vector::operator-() const {
  Vector r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

Vector& Vector::operator+=(const Vector& o) {
  require_same_dim(dim(), o.dim(), "vector addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require_same_dim(dim(), o.dim(), "vector subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Vector& Vector::operator*=(const Scalar& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::vector<double> Vector::approx() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.approx());
  return out;
}

std::size_t Vector::hash() const {
  std::size_t h = coords_.size();
  for (const auto& c : coords_) h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string Vector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].to_string();
  }
  return s + ")";
}

Scalar dot(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "dot product");
  Scalar s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string("dimension mismatch in ") + what + ": " +
                                std::to_string(a) + " vs " + std::to_string(b));
  }
}

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::translation: return "translation";
    case MapKind::symmetry: return "symmetry";
    case MapKind::homothety: return "homothety";
  }
  return "?";
}

AffineMap::AffineMap(Scalar ratio, Vector offset) : ratio_(std::move(ratio)), offset_(std::move(offset)) {
  if (ratio_.is_zero()) throw std::invalid_argument("ratio must be nonzero");
}

AffineMap AffineMap::identity(std::size_t dim) { return {Scalar(1L), Vector(dim)}; }

AffineMap AffineMap::translation(Vector offset) { return {Scalar(1L), std::move(offset)}; }

AffineMap AffineMap::centered(const Scalar& ratio, const Vector& center) {
  return {ratio, (Scalar(1L) - ratio) * center};
}

Vector AffineMap::operator()(const Vector& x) const {
  require_same_dim(dim(), x.dim(), "map application");
  Vector y(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) y[i] = ratio_ * x[i] + offset_[i];
  return y;
}

std::string AffineMap::to_string() const {
  return "x -> " + ratio_.to_string() + " * x + " + offset_.to_string();
}

Vector apply(const AffineMap& f, const Vector& x) { return f(x); }

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  require_same_dim(f.dim(), g.dim(), "composition");
  return {f.ratio() * g.ratio(), f.ratio() * g.offset() + f.offset()};
}

AffineMap invert_map(const AffineMap& f) {
  Scalar inv = f.ratio().inverse();
  return {inv, -(inv * f.offset())};
}

AffineMap conjugate(const AffineMap& g, const AffineMap& f) {
  return compose(compose(g, f), invert_map(g));
}

AffineMap power(const AffineMap& f, long n) {
  if (n == 0) return AffineMap::identity(f.dim());
  if (n < 0) return power(invert_map(f), -n);
  const Scalar one(1L);
  if (f.ratio() == one) return AffineMap::translation(Scalar(n) * f.offset());
  Scalar lam_n = pow(f.ratio(), n);
  // t (lambda^n - 1) / (lambda - 1)
  Scalar factor = (lam_n - one) / (f.ratio() - one);
  return {lam_n, factor * f.offset()};
}

FixedPointSet fixed_point(const AffineMap& f) {
  if (f.ratio() == Scalar(1L)) {
    if (f.offset().is_zero()) return AllPointsFixed{};
    return NoFixedPoint{};
  }
  return center(f);
}

MapKind classify_kind(const AffineMap& f) {
  if (f.ratio() == Scalar(1L)) return MapKind::translation;
  if (f.ratio() == Scalar(-1L)) return MapKind::symmetry;
  return MapKind::homothety;
}

Vector center(const AffineMap& f) {
  const Scalar one(1L);
  if (f.ratio() == one) throw std::domain_error("translation has no center");
  return (one - f.ratio()).inverse() * f.offset();
}

namespace {

const AffineMap& generator_at(std::span<const AffineMap> gens, std::size_t i) {
  if (i >= gens.size()) {
    throw std::out_of_range("generator index " + std::to_string(i) + " out of range (" +
                            std::to_string(gens.size()) + " generators)");
  }
  return gens[i];
}

std::size_t word_dim(std::span<const AffineMap> gens) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  return gens.front().dim();
}

}  // namespace

AffineMap word_eval(std::span<const AffineMap> gens, const Word& w) {
  const std::size_t n = word_dim(gens);
  Scalar prefix(1L);
  Vector offset(n);
  for (const auto& letter : w) {
    const AffineMap piece = power(generator_at(gens, letter.generator), letter.exponent);
    require_same_dim(n, piece.dim(), "word evaluation");
    offset += prefix * piece.offset();
    prefix *= piece.ratio();
  }
  return {prefix, offset};
}

AffineMap word_eval_from_centers(std::span<const AffineMap> gens, const Word& w) {
  const std::size_t n = word_dim(gens);
  if (w.empty()) return AffineMap::identity(n);
  std::vector<Vector> centers;
  std::vector<Scalar> prefix;  // P_1 .. P_q
  Scalar running(1L);
  for (const auto& letter : w) {
    const AffineMap& g = generator_at(gens, letter.generator);
    if (g.ratio() == Scalar(1L)) throw std::invalid_argument("center formula needs homotheties only");
    centers.push_back(center(g));
    running *= pow(g.ratio(), letter.exponent);
    prefix.push_back(running);
  }
  const std::size_t q = w.size();
  Vector offset = centers.front();
  for (std::size_t k = 0; k + 1 < q; ++k) offset += prefix[k] * centers[k + 1];
  for (std::size_t k = 0; k < q; ++k) offset -= prefix[k] * centers[k];
  return {running, offset};
}

Word invert_word(const Word& w) {
  Word inv;
  inv.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back({it->generator, -it->exponent});
  return inv;
}

}  // namespace homothety
