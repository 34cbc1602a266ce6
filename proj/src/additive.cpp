#include "homothety/additive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "homothety/linalg.hpp"

namespace homothety {

const char* to_string(AdditiveClosure::Exactness e) {
  return e == AdditiveClosure::Exactness::exact ? "exact" : "tolerance_certified";
}

unsigned precision_bits_from_env() {
  if (const char* env = std::getenv("HOMOTHETY_PRECISION_BITS")) {
    try {
      const long v = std::stol(env);
      if (v >= 32 && v <= 4096) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("HOMOTHETY_PRECISION_BITS must be an integer in [32, 4096], got ") +
                                env);
  }
  return kDefaultPrecisionBits;
}

RationalCoordinates rational_coordinates(std::span<const Vector> vectors) {
  RationalCoordinates rc;
  for (const auto& v : vectors) {
    for (const auto& c : v) {
      for (const auto& t : c.terms()) rc.radicands.push_back(t.radicand);
    }
  }
  std::sort(rc.radicands.begin(), rc.radicands.end());
  rc.radicands.erase(std::unique(rc.radicands.begin(), rc.radicands.end()), rc.radicands.end());
  if (rc.radicands.empty()) rc.radicands.push_back(1);
  const std::size_t blocks = rc.radicands.size();
  for (const auto& v : vectors) {
    std::vector<Rational> row(v.dim() * blocks, Rational(0));
    for (std::size_t i = 0; i < v.dim(); ++i) {
      for (const auto& t : v[i].terms()) {
        const auto b = static_cast<std::size_t>(
            std::lower_bound(rc.radicands.begin(), rc.radicands.end(), t.radicand) - rc.radicands.begin());
        row[i * blocks + b] = t.coef;
      }
    }
    rc.rows.push_back(std::move(row));
  }
  return rc;
}

namespace {

Vector combine(std::size_t dim, std::span<const Vector> vecs, const std::vector<Integer>& k) {
  Vector out(dim);
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (sgn(k[i]) != 0) out += Scalar(k[i]) * vecs[i];
  }
  return out;
}

std::vector<Integer> combine_rows(const std::vector<std::vector<Integer>>& rows, const std::vector<Integer>& k) {
  std::vector<Integer> out(rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (sgn(k[i]) == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += k[i] * rows[i][j];
  }
  return out;
}

// All images of v under the sign-flip automorphisms generated by `primes`.
std::vector<Vector> galois_orbit(const Vector& v, const std::vector<std::uint64_t>& primes) {
  std::vector<Vector> out{v};
  for (auto p : primes) {
    const std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i) {
      Vector w(out[i].dim());
      for (std::size_t c = 0; c < w.dim(); ++c) w[c] = out[i][c].conjugate(p);
      out.push_back(std::move(w));
    }
  }
  return out;
}

bool is_integer(const Scalar& s) {
  auto q = s.as_rational();
  return q && q->get_den() == 1;
}

}  // namespace

AdditiveClosure additive_closure(std::size_t dim, std::span<const Vector> gens) {
  for (const auto& g : gens) require_same_dim(dim, g.dim(), "additive closure");
  AdditiveClosure out;
  out.dim = dim;
  out.exactness = AdditiveClosure::Exactness::exact;
  if (gens.empty()) return out;

  // Z-basis of the generated module through its rational coordinates.
  const RationalCoordinates rc = rational_coordinates(gens);
  const HermiteForm hf = hermite_normal_form(clear_denominators(rc.rows));
  const std::size_t r = hf.rank;
  std::vector<Vector> basis;
  std::vector<std::vector<Integer>> basis_comb;
  for (std::size_t i = 0; i < r; ++i) {
    basis.push_back(combine(dim, gens, hf.u[i]));
    basis_comb.push_back(hf.u[i]);
  }

  const bool rational_input = rc.radicands.size() == 1 && rc.radicands.front() == 1;
  const std::vector<Vector> kernel = rational_input ? std::vector<Vector>{} : nullspace(dim, basis);
  if (kernel.empty()) {
    out.lattice_part = std::move(basis);
    out.lattice_combinations = std::move(basis_comb);
    return out;
  }

  // Smallest rational subspace of R^r containing the kernel.
  std::vector<std::uint64_t> primes;
  for (const auto& w : kernel) {
    for (const auto& c : w) {
      for (auto p : c.radical_primes()) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  RowEchelon hull(r);
  for (const auto& w : kernel) {
    for (const auto& conj : galois_orbit(w, primes)) hull.insert(conj);
  }
  for (const auto& row : hull.rows()) {
    for (const auto& c : row) {
      if (!c.is_rational()) throw std::logic_error("rational hull has irrational echelon form");
    }
  }
  const std::size_t d = hull.rank();

  RowEchelon dense(dim);
  for (const auto& w : hull.rows()) {
    Vector img(dim);
    for (std::size_t i = 0; i < r; ++i) img += w[i] * basis[i];
    dense.insert(img);
  }
  out.dense_part = dense.rows();

  if (d < r) {
    // Functionals F with kernel exactly the rational hull; F(Z^r) is a full
    // lattice whose Hermite basis lifts to the lattice part.
    std::vector<Vector> cols(r, Vector(d));
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t i = 0; i < r; ++i) cols[i][k] = hull.rows()[k][i];
    }
    const std::vector<Vector> functionals = nullspace(d, cols);
    RatMatrix images(r, std::vector<Rational>(functionals.size()));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < functionals.size(); ++j) images[i][j] = *functionals[j][i].as_rational();
    }
    const HermiteForm quotient = hermite_normal_form(clear_denominators(images));
    for (std::size_t j = 0; j < quotient.rank; ++j) {
      out.lattice_part.push_back(combine(dim, basis, quotient.u[j]));
      out.lattice_combinations.push_back(combine_rows(basis_comb, quotient.u[j]));
    }
  }
  return out;
}

std::optional<std::vector<Integer>> integer_coordinates(std::size_t dim, std::span<const Vector> gens,
                                                        const Vector& v) {
  require_same_dim(dim, v.dim(), "integer coordinates");
  std::vector<Vector> all(gens.begin(), gens.end());
  all.push_back(v);
  const RationalCoordinates rc = rational_coordinates(all);
  const IntMatrix scaled = clear_denominators(rc.rows);
  IntMatrix gen_rows(scaled.begin(), scaled.end() - 1);
  std::vector<Integer> residual = scaled.back();
  if (gen_rows.empty()) {
    if (std::all_of(residual.begin(), residual.end(), [](const Integer& x) { return sgn(x) == 0; })) {
      return std::vector<Integer>{};
    }
    return std::nullopt;
  }
  const HermiteForm hf = hermite_normal_form(gen_rows);
  std::vector<Integer> y(hf.rank);
  for (std::size_t row = 0; row < hf.rank; ++row) {
    std::size_t pivot = 0;
    while (sgn(hf.h[row][pivot]) == 0) ++pivot;
    if (!mpz_divisible_p(residual[pivot].get_mpz_t(), hf.h[row][pivot].get_mpz_t())) return std::nullopt;
    y[row] = residual[pivot] / hf.h[row][pivot];
    for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= y[row] * hf.h[row][c];
  }
  if (!std::all_of(residual.begin(), residual.end(), [](const Integer& x) { return sgn(x) == 0; })) {
    return std::nullopt;
  }
  std::vector<Integer> k(gens.size());
  for (std::size_t row = 0; row < hf.rank; ++row) {
    for (std::size_t i = 0; i < gens.size(); ++i) k[i] += y[row] * hf.u[row][i];
  }
  return k;
}

bool AdditiveClosure::contains(const Vector& v, double tol) const {
  require_same_dim(dim, v.dim(), "closure membership");
  if (exactness == Exactness::tolerance_certified) return distance(v) <= tol;
  std::vector<Vector> cols(dense_part);
  cols.insert(cols.end(), lattice_part.begin(), lattice_part.end());
  const auto c = solve(dim, cols, v);
  if (!c) return false;
  for (std::size_t j = dense_part.size(); j < cols.size(); ++j) {
    if (!is_integer((*c)[j])) return false;
  }
  return true;
}

namespace {

using DVec = std::vector<double>;

double ddot(const DVec& a, const DVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void daxpy(DVec& y, double a, const DVec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// Orthonormal basis of span(vs) by modified Gram-Schmidt.
std::vector<DVec> orthonormal(const std::vector<DVec>& vs) {
  std::vector<DVec> q;
  for (DVec v : vs) {
    for (const auto& e : q) daxpy(v, -ddot(v, e), e);
    const double n = std::sqrt(ddot(v, v));
    if (n < 1e-300) continue;
    for (auto& x : v) x /= n;
    q.push_back(std::move(v));
  }
  return q;
}

}  // namespace

double AdditiveClosure::distance(const Vector& v) const {
  std::vector<DVec> vdense;
  for (const auto& d : dense_part) vdense.push_back(d.approx());
  const auto q = orthonormal(vdense);
  auto project = [&](DVec x) {
    for (const auto& e : q) daxpy(x, -ddot(x, e), e);
    return x;
  };
  DVec target = project(v.approx());
  std::vector<DVec> lat;
  for (const auto& l : lattice_part) lat.push_back(project(l.approx()));
  const std::size_t m = lat.size();
  if (m == 0) return std::sqrt(ddot(target, target));

  // least squares coordinates via the Gram system
  std::vector<DVec> gram(m, DVec(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) gram[i][j] = ddot(lat[i], lat[j]);
    gram[i][m] = ddot(lat[i], target);
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < m; ++i) {
      if (std::abs(gram[i][c]) > std::abs(gram[p][c])) p = i;
    }
    std::swap(gram[p], gram[c]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == c || gram[c][c] == 0) continue;
      const double f = gram[i][c] / gram[c][c];
      for (std::size_t k = c; k <= m; ++k) gram[i][k] -= f * gram[c][k];
    }
  }
  std::vector<double> coef(m);
  for (std::size_t i = 0; i < m; ++i) coef[i] = gram[i][i] != 0 ? std::round(gram[i][m] / gram[i][i]) : 0;

  // rounding plus a +-1 neighbourhood for small lattices
  double best = INFINITY;
  const std::size_t tries = m <= 4 ? static_cast<std::size_t>(std::pow(3, m)) : 1;
  for (std::size_t t = 0; t < tries; ++t) {
    DVec r = target;
    std::size_t code = t;
    for (std::size_t i = 0; i < m; ++i) {
      const double shift = m <= 4 ? static_cast<double>(code % 3) - 1.0 : 0.0;
      code /= 3;
      daxpy(r, -(coef[i] + shift), lat[i]);
    }
    best = std::min(best, std::sqrt(ddot(r, r)));
  }
  return best;
}

namespace {

Rational rinner(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

AdditiveClosure additive_closure_numeric(std::size_t dim, std::span<const Vector> gens, double eps,
                                         unsigned bits) {
  for (const auto& g : gens) require_same_dim(dim, g.dim(), "additive closure");
  AdditiveClosure out;
  out.dim = dim;
  out.exactness = AdditiveClosure::Exactness::tolerance_certified;
  out.tolerance = eps;
  const std::size_t m = gens.size();
  if (m == 0) return out;

  std::vector<std::vector<Rational>> approx(m, std::vector<Rational>(dim));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < dim; ++c) approx[i][c] = gens[i][c].approx_rational(bits);
  }
  // Short vectors of [I | C g] have |k| ~ C^(1/2) and |e| ~ C^(-1/2); the
  // rounding error of e is at most |k| |g| 2^-bits, far below that.
  Rational scale(1);
  mpq_mul_2exp(scale.get_mpq_t(), scale.get_mpq_t(), 3 * bits / 4);
  Rational g2(0);
  for (const auto& a : approx) g2 = std::max(g2, norm2(a));
  Rational zero2 = (1 + g2) * static_cast<unsigned long>(m * dim);
  mpq_div_2exp(zero2.get_mpq_t(), zero2.get_mpq_t(), 2 * bits - 8);
  const Rational eps2 = exact_rational(eps) * exact_rational(eps);

  std::vector<std::vector<Rational>> vbasis;  // orthogonal, rational
  RatMatrix reduced;
  auto project = [&](std::vector<Rational> x) {
    for (const auto& v : vbasis) {
      const Rational f = rinner(x, v) / rinner(v, v);
      for (std::size_t c = 0; c < dim; ++c) x[c] -= f * v[c];
    }
    return x;
  };
  auto element = [&](const std::vector<Rational>& row) {
    std::vector<Rational> e(row.begin() + static_cast<long>(m), row.end());
    for (auto& x : e) x /= scale;
    return e;
  };
  auto coeff_norm2 = [&](const std::vector<Rational>& row) {
    Rational s(0);
    for (std::size_t i = 0; i < m; ++i) s += row[i] * row[i];
    return s;
  };

  for (std::size_t round = 0; round <= dim; ++round) {
    reduced.assign(m, std::vector<Rational>(m + dim, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
      reduced[i][i] = 1;
      const auto p = project(approx[i]);
      for (std::size_t c = 0; c < dim; ++c) reduced[i][m + c] = scale * p[c];
    }
    lll_reduce(reduced);
    bool grew = false;
    for (const auto& row : reduced) {
      const auto e = element(row);
      const Rational len2 = norm2(e);
      if (len2 < zero2 * (1 + coeff_norm2(row)) || len2 >= eps2) continue;
      auto dir = project(e);
      if (norm2(dir) < zero2) continue;
      vbasis.push_back(std::move(dir));
      grew = true;
    }
    if (!grew || vbasis.size() >= dim) break;
  }

  RowEchelon span(dim);
  for (const auto& v : vbasis) {
    // scale the direction so its largest coordinate is 1
    Rational big(0);
    for (const auto& x : v) big = std::max(big, Rational(abs(x)));
    Vector d(dim);
    for (std::size_t c = 0; c < dim; ++c) d[c] = Scalar(Rational(v[c] / big));
    if (span.insert(d)) out.dense_part.push_back(d);
  }
  if (out.dense_part.size() < dim) {
    for (const auto& row : reduced) {
      const auto e = element(row);
      if (norm2(e) < zero2 * (1 + coeff_norm2(row))) continue;
      std::vector<Integer> k(m);
      for (std::size_t i = 0; i < m; ++i) k[i] = row[i].get_num();
      Vector l = combine(dim, gens, k);
      if (span.insert(l)) {
        out.lattice_part.push_back(std::move(l));
        out.lattice_combinations.push_back(std::move(k));
      }
    }
  }
  return out;
}

}  // namespace homothety
