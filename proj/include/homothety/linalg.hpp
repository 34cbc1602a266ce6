#pragma once

// Exact Gaussian elimination over the Scalar field.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "homothety/affine.hpp"

namespace homothety {

/// Reduced row echelon form of the span of a list of vectors. Pivot entries
/// are 1 and every other row is zero in each pivot column, so two spans are
/// equal iff their echelon forms are equal.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t dim) : dim_(dim) {}
  RowEchelon(std::size_t dim, std::span<const Vector> vectors);

  /// Adds v to the span; returns true when the rank grew.
  bool insert(const Vector& v);

  /// v minus its component along the pivot columns; zero iff v is in the span.
  [[nodiscard]] Vector reduce(const Vector& v) const;
  [[nodiscard]] bool contains(const Vector& v) const { return reduce(v).is_zero(); }

  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<Vector>& rows() const { return rows_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool operator==(const RowEchelon& o) const { return dim_ == o.dim_ && rows_ == o.rows_; }

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;         // sorted by pivot column
  std::vector<std::size_t> pivots_;
};

std::size_t rank(std::size_t dim, std::span<const Vector> vectors);

/// Coefficients c with sum_j c_j * columns[j] = target, or nullopt when
/// target is not in the span. Among solutions, free coefficients are zero.
std::optional<std::vector<Scalar>> solve(std::size_t dim, std::span<const Vector> columns,
                                         const Vector& target);

/// Basis of { c : sum_j c_j * columns[j] = 0 }, each of length columns.size().
std::vector<Vector> nullspace(std::size_t dim, std::span<const Vector> columns);

/// base + span(basis), basis held in reduced echelon form and base reduced
/// against it, so the representation is canonical.
class AffineSubspace {
 public:
  AffineSubspace(Vector base, std::span<const Vector> directions);
  static AffineSubspace point(Vector p) { return AffineSubspace(std::move(p), {}); }
  static AffineSubspace whole(std::size_t dim);

  /// Smallest flat containing the points (at least one point).
  static AffineSubspace hull(std::span<const Vector> points);

  [[nodiscard]] const Vector& base() const { return base_; }
  [[nodiscard]] const std::vector<Vector>& basis() const { return echelon_.rows(); }
  [[nodiscard]] const RowEchelon& echelon() const { return echelon_; }
  [[nodiscard]] std::size_t dim() const { return echelon_.rank(); }
  [[nodiscard]] std::size_t ambient_dim() const { return base_.dim(); }
  [[nodiscard]] bool is_whole_space() const { return dim() == ambient_dim(); }

  [[nodiscard]] bool contains(const Vector& p) const { return echelon_.contains(p - base_); }
  [[nodiscard]] bool contains_direction(const Vector& v) const { return echelon_.contains(v); }

  /// Extends by a point; returns true when the dimension grew.
  bool add_point(const Vector& p);

  /// Image under an affine map (directions scale by the ratio).
  [[nodiscard]] AffineSubspace image(const AffineMap& f) const;

  bool operator==(const AffineSubspace& o) const { return base_ == o.base_ && echelon_ == o.echelon_; }

 private:
  void rebase();
  Vector base_;
  RowEchelon echelon_;
};

}  // namespace homothety
