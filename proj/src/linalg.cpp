#include "homothety/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace homothety {

RowEchelon::RowEchelon(std::size_t dim, std::span<const Vector> vectors) : dim_(dim) {
  for (const auto& v : vectors) insert(v);
}

Vector RowEchelon::reduce(const Vector& v) const {
  require_same_dim(dim_, v.dim(), "echelon reduction");
  Vector r(v);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = r[pivots_[k]];
    if (!c.is_zero()) r -= c * rows_[k];
  }
  return r;
}

bool RowEchelon::insert(const Vector& v) {
  Vector r = reduce(v);
  std::size_t pivot = 0;
  while (pivot < dim_ && r[pivot].is_zero()) ++pivot;
  if (pivot == dim_) return false;
  r *= r[pivot].inverse();
  // keep the form reduced: clear the new pivot column from existing rows
  for (auto& row : rows_) {
    const Scalar c = row[pivot];
    if (!c.is_zero()) row -= c * r;
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

std::size_t rank(std::size_t dim, std::span<const Vector> vectors) {
  return RowEchelon(dim, vectors).rank();
}

namespace {

// Row-reduces the dim x m system [columns | target]; returns pivot columns per row.
struct Reduced {
  std::vector<std::vector<Scalar>> a;  // dim rows, m (+1) columns
  std::vector<std::size_t> pivot_cols;
};

Reduced eliminate(std::size_t dim, std::span<const Vector> columns, const Vector* target) {
  const std::size_t m = columns.size();
  const std::size_t width = m + (target ? 1 : 0);
  Reduced red;
  red.a.assign(dim, std::vector<Scalar>(width));
  for (std::size_t j = 0; j < m; ++j) {
    require_same_dim(dim, columns[j].dim(), "linear solve");
    for (std::size_t i = 0; i < dim; ++i) red.a[i][j] = columns[j][i];
  }
  if (target) {
    require_same_dim(dim, target->dim(), "linear solve");
    for (std::size_t i = 0; i < dim; ++i) red.a[i][m] = (*target)[i];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < dim; ++col) {
    std::size_t p = row;
    while (p < dim && red.a[p][col].is_zero()) ++p;
    if (p == dim) continue;
    std::swap(red.a[p], red.a[row]);
    const Scalar inv = red.a[row][col].inverse();
    for (auto& x : red.a[row]) x *= inv;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == row || red.a[i][col].is_zero()) continue;
      const Scalar c = red.a[i][col];
      for (std::size_t k = col; k < width; ++k) red.a[i][k] -= c * red.a[row][k];
    }
    red.pivot_cols.push_back(col);
    ++row;
  }
  return red;
}

}  // namespace

std::optional<std::vector<Scalar>> solve(std::size_t dim, std::span<const Vector> columns,
                                         const Vector& target) {
  const std::size_t m = columns.size();
  Reduced red = eliminate(dim, columns, &target);
  for (std::size_t i = red.pivot_cols.size(); i < dim; ++i) {
    if (!red.a[i][m].is_zero()) return std::nullopt;
  }
  std::vector<Scalar> c(m);
  for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) c[red.pivot_cols[r]] = red.a[r][m];
  return c;
}

std::vector<Vector> nullspace(std::size_t dim, std::span<const Vector> columns) {
  const std::size_t m = columns.size();
  Reduced red = eliminate(dim, columns, nullptr);
  std::vector<bool> is_pivot(m, false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    Vector v(m);
    v[free] = Scalar(1L);
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) v[red.pivot_cols[r]] = -red.a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineSubspace::AffineSubspace(Vector base, std::span<const Vector> directions)
    : base_(std::move(base)), echelon_(base_.dim(), directions) {
  rebase();
}

AffineSubspace AffineSubspace::whole(std::size_t dim) {
  std::vector<Vector> axes;
  for (std::size_t i = 0; i < dim; ++i) axes.push_back(Vector::unit(dim, i));
  return AffineSubspace(Vector(dim), axes);
}

AffineSubspace AffineSubspace::hull(std::span<const Vector> points) {
  if (points.empty()) throw std::invalid_argument("affine hull of no points");
  AffineSubspace s = point(points.front());
  for (std::size_t i = 1; i < points.size(); ++i) s.add_point(points[i]);
  return s;
}

void AffineSubspace::rebase() { base_ = echelon_.reduce(base_); }

bool AffineSubspace::add_point(const Vector& p) {
  if (!echelon_.insert(p - base_)) return false;
  rebase();
  return true;
}

AffineSubspace AffineSubspace::image(const AffineMap& f) const {
  // directions are invariant under a scalar linear part
  return AffineSubspace(f(base_), echelon_.rows());
}

}  // namespace homothety
