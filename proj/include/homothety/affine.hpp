#pragma once

// Scalar-ratio affine maps x -> ratio * x + offset on R^n.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

#include "homothety/scalar.hpp"

namespace homothety {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim) {}
  explicit Vector(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Vector(std::initializer_list<Scalar> coords) : coords_(coords) {}

  static Vector unit(std::size_t dim, std::size_t axis);

  [[nodiscard]] std::size_t dim() const { return coords_.size(); }
  [[nodiscard]] bool is_zero() const;
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  [[nodiscard]] std::span<const Scalar> coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  Vector operator-() const;
  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(const Scalar& s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Scalar& s, Vector v) { return v *= s; }
  friend Vector operator*(Vector v, const Scalar& s) { return v *= s; }

  bool operator==(const Vector& o) const = default;

  [[nodiscard]] std::vector<double> approx() const;
  [[nodiscard]] std::size_t hash() const;
  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<Scalar> coords_;
};

struct VectorHash {
  std::size_t operator()(const Vector& v) const { return v.hash(); }
};

Scalar dot(const Vector& a, const Vector& b);

/// Throws std::invalid_argument unless both dimensions agree.
void require_same_dim(std::size_t a, std::size_t b, const char* what);

enum class MapKind { translation, symmetry, homothety };

const char* to_string(MapKind kind);

/// x -> ratio * x + offset, ratio != 0.
class AffineMap {
 public:
  AffineMap(Scalar ratio, Vector offset);

  static AffineMap identity(std::size_t dim);
  static AffineMap translation(Vector offset);
  /// Center form: x -> ratio * (x - center) + center.
  static AffineMap centered(const Scalar& ratio, const Vector& center);
  /// x -> -x + offset.
  static AffineMap symmetry(Vector offset) { return {Scalar(-1L), std::move(offset)}; }

  [[nodiscard]] const Scalar& ratio() const { return ratio_; }
  [[nodiscard]] const Vector& offset() const { return offset_; }
  [[nodiscard]] std::size_t dim() const { return offset_.dim(); }

  [[nodiscard]] Vector operator()(const Vector& x) const;

  [[nodiscard]] bool is_identity() const { return ratio_ == Scalar(1L) && offset_.is_zero(); }

  bool operator==(const AffineMap& o) const = default;

  [[nodiscard]] std::string to_string() const;

 private:
  Scalar ratio_;
  Vector offset_;
};

Vector apply(const AffineMap& f, const Vector& x);

/// f o g
AffineMap compose(const AffineMap& f, const AffineMap& g);
AffineMap invert_map(const AffineMap& f);

/// g o f o g^-1
AffineMap conjugate(const AffineMap& g, const AffineMap& f);

/// f^n for any integer n, using fast exponentiation of the ratio and the
/// geometric-sum closed form of the offset.
AffineMap power(const AffineMap& f, long n);

struct NoFixedPoint {};
struct AllPointsFixed {};
using FixedPointSet = std::variant<NoFixedPoint, AllPointsFixed, Vector>;

FixedPointSet fixed_point(const AffineMap& f);

MapKind classify_kind(const AffineMap& f);

/// Center t / (1 - ratio); requires ratio != 1.
Vector center(const AffineMap& f);

struct Letter {
  std::size_t generator;
  long exponent;  // nonzero
  bool operator==(const Letter&) const = default;
};

/// f_{i1}^{n1} o ... o f_{iq}^{nq}; the rightmost letter acts first.
using Word = std::vector<Letter>;

/// Word evaluation by prefix-product telescoping: ratio is the product of the
/// letter ratios, offset is sum_k (prod_{j<k} ratio_j) * offset_k.
/// Throws std::out_of_range on a bad generator index.
AffineMap word_eval(std::span<const AffineMap> gens, const Word& w);

/// Same map computed from generator centers alone (all generators must be
/// homotheties):
///   ratio  = prod_k L_k with L_k the letter ratios,
///   offset = sum_{k<q} P_k a_{k+1} - sum_{k<=q} P_k a_k + a_1,  P_k = L_1 ... L_k.
AffineMap word_eval_from_centers(std::span<const AffineMap> gens, const Word& w);

/// w^-1 as a word.
Word invert_word(const Word& w);

}  // namespace homothety
