#include "homothety/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace homothety {

namespace {

void row_axpy(std::vector<Integer>& dst, const Integer& q, const std::vector<Integer>& src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out;
  out.h = m;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  out.u.assign(rows, std::vector<Integer>(rows));
  for (std::size_t i = 0; i < rows; ++i) out.u[i][i] = 1;

  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    // Euclid on the column below `row` until a single nonzero remains
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = row; i < rows; ++i) {
        if (sgn(out.h[i][col]) == 0) continue;
        if (best == rows || abs(out.h[i][col]) < abs(out.h[best][col])) best = i;
      }
      if (best == rows) break;
      std::swap(out.h[best], out.h[row]);
      std::swap(out.u[best], out.u[row]);
      bool done = true;
      for (std::size_t i = row + 1; i < rows; ++i) {
        if (sgn(out.h[i][col]) == 0) continue;
        const Integer q = floor_div(out.h[i][col], out.h[row][col]);
        row_axpy(out.h[i], q, out.h[row]);
        row_axpy(out.u[i], q, out.u[row]);
        if (sgn(out.h[i][col]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(out.h[row][col]) == 0) continue;
    if (sgn(out.h[row][col]) < 0) {
      for (auto& x : out.h[row]) x = -x;
      for (auto& x : out.u[row]) x = -x;
    }
    for (std::size_t i = 0; i < row; ++i) {
      const Integer q = floor_div(out.h[i][col], out.h[row][col]);
      if (sgn(q) == 0) continue;
      row_axpy(out.h[i], q, out.h[row]);
      row_axpy(out.u[i], q, out.u[row]);
    }
    ++row;
  }
  out.rank = row;
  return out;
}

IntMatrix clear_denominators(const RatMatrix& m) {
  Integer l(1);
  for (const auto& r : m) {
    for (const auto& x : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  IntMatrix out;
  out.reserve(m.size());
  for (const auto& r : m) {
    std::vector<Integer> row;
    row.reserve(r.size());
    for (const auto& x : r) {
      Rational y = x * Rational(l);
      y.canonicalize();
      row.push_back(y.get_num());
    }
    out.push_back(std::move(row));
  }
  return out;
}

Rational norm2(const std::vector<Rational>& v) {
  Rational s(0);
  for (const auto& x : v) s += x * x;
  return s;
}

namespace {

Rational inner(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void gram_schmidt(const RatMatrix& b, RatMatrix& mu, std::vector<Rational>& bstar_norm) {
  const std::size_t n = b.size();
  RatMatrix bstar(n);
  mu.assign(n, std::vector<Rational>(n, Rational(0)));
  bstar_norm.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    bstar[i] = b[i];
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = inner(b[i], bstar[j]) / bstar_norm[j];
      for (std::size_t k = 0; k < b[i].size(); ++k) bstar[i][k] -= mu[i][j] * bstar[j][k];
    }
    bstar_norm[i] = norm2(bstar[i]);
    if (sgn(bstar_norm[i]) == 0) throw std::invalid_argument("LLL input rows are dependent");
  }
}

Integer round_nearest(const Rational& x) {
  Rational h = x + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return f;
}

}  // namespace

void lll_reduce(RatMatrix& b, const Rational& delta) {
  const std::size_t n = b.size();
  if (n < 2) return;
  RatMatrix mu;
  std::vector<Rational> bn;
  gram_schmidt(b, mu, bn);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      const Integer q = round_nearest(mu[k][jj]);
      if (sgn(q) == 0) continue;
      const Rational qr(q);
      for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= qr * b[jj][c];
      for (std::size_t l = 0; l <= jj; ++l) mu[k][l] -= qr * (l == jj ? Rational(1) : mu[jj][l]);
    }
    if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt(b, mu, bn);
      k = k > 1 ? k - 1 : 1;
    }
  }
}

}  // namespace homothety
