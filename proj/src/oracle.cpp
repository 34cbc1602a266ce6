#include "homothety/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace homothety {

Word OrbitEnumeration::word_of(std::size_t i) const {
  Word w;
  while (parent.at(i) != i) {
    const std::uint32_t l = letter[i];
    w.push_back({l / 2, (l % 2 == 0) ? 1L : -1L});
    i = parent[i];
  }
  return w;
}

namespace {

std::vector<AffineMap> letter_maps(const GroupSpec& spec) {
  std::vector<AffineMap> maps;
  for (const auto& g : spec.gens()) {
    maps.push_back(g);
    maps.push_back(invert_map(g));
  }
  return maps;
}

// Exact dedup keyed by cached hashes of the stored points.
class PointIndex {
 public:
  explicit PointIndex(OrbitEnumeration& out) : out_(out), set_(1024, Hash{&hashes_}, Eq{&out.points}) {}

  bool try_add(Vector&& p, std::size_t h, std::uint32_t parent, std::uint32_t letter) {
    out_.points.push_back(std::move(p));
    hashes_.push_back(h);
    const auto idx = static_cast<std::uint32_t>(out_.points.size() - 1);
    if (!set_.insert(idx).second) {
      out_.points.pop_back();
      hashes_.pop_back();
      return false;
    }
    out_.parent.push_back(parent);
    out_.letter.push_back(letter);
    return true;
  }

  [[nodiscard]] bool contains(const Vector& p, std::size_t h) {
    out_.points.push_back(p);
    hashes_.push_back(h);
    const bool found = set_.count(static_cast<std::uint32_t>(out_.points.size() - 1)) != 0;
    out_.points.pop_back();
    hashes_.pop_back();
    return found;
  }

 private:
  struct Hash {
    const std::vector<std::size_t>* hashes;
    std::size_t operator()(std::uint32_t i) const { return (*hashes)[i]; }
  };
  struct Eq {
    const std::vector<Vector>* points;
    bool operator()(std::uint32_t a, std::uint32_t b) const { return (*points)[a] == (*points)[b]; }
  };
  OrbitEnumeration& out_;
  std::vector<std::size_t> hashes_;
  std::unordered_set<std::uint32_t, Hash, Eq> set_;
};

void check_enumeration_args(const GroupSpec& spec, const Vector& x, int depth) {
  require_same_dim(spec.dim(), x.dim(), "orbit enumeration");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (spec.gens().size() * 2 > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("too many generators");
  }
}

// Shared merge step; returns false once the cap rejects a new point.
bool merge(PointIndex& index, OrbitEnumeration& out, Vector&& cand, std::size_t h, std::uint32_t parent,
           std::uint32_t letter, std::size_t cap) {
  if (out.points.size() >= cap) {
    if (!index.contains(cand, h)) {
      out.truncated = true;
      return false;
    }
    return true;
  }
  index.try_add(std::move(cand), h, parent, letter);
  return true;
}

}  // namespace

OrbitEnumeration enumerate_orbit_serial(const GroupSpec& spec, const Vector& x, int depth, std::size_t cap) {
  check_enumeration_args(spec, x, depth);
  const auto maps = letter_maps(spec);
  OrbitEnumeration out;
  PointIndex index(out);
  index.try_add(Vector(x), x.hash(), 0, 0);
  out.level_end.push_back(1);
  std::size_t begin = 0;
  for (int d = 1; d <= depth && !out.truncated; ++d) {
    const std::size_t end = out.points.size();
    for (std::size_t i = begin; i < end && !out.truncated; ++i) {
      for (std::size_t l = 0; l < maps.size(); ++l) {
        Vector y = maps[l](out.points[i]);
        const std::size_t h = y.hash();
        if (!merge(index, out, std::move(y), h, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(l),
                   cap)) {
          break;
        }
      }
    }
    out.level_end.push_back(out.points.size());
    begin = end;
  }
  return out;
}

OrbitEnumeration enumerate_orbit(const GroupSpec& spec, const Vector& x, int depth, std::size_t cap) {
  check_enumeration_args(spec, x, depth);
  const auto maps = letter_maps(spec);
  const std::size_t letters = maps.size();
  constexpr std::size_t kChunk = 8192;
  OrbitEnumeration out;
  PointIndex index(out);
  index.try_add(Vector(x), x.hash(), 0, 0);
  out.level_end.push_back(1);
  std::size_t begin = 0;
  std::vector<Vector> cand;
  std::vector<std::size_t> hashes;
  for (int d = 1; d <= depth && !out.truncated; ++d) {
    const std::size_t end = out.points.size();
    for (std::size_t c0 = begin; c0 < end && !out.truncated; c0 += kChunk) {
      const std::size_t c1 = std::min(end, c0 + kChunk);
      const auto count = static_cast<std::ptrdiff_t>((c1 - c0) * letters);
      cand.assign(static_cast<std::size_t>(count), Vector());
      hashes.assign(static_cast<std::size_t>(count), 0);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t t = 0; t < count; ++t) {
        const auto u = static_cast<std::size_t>(t);
        cand[u] = maps[u % letters](out.points[c0 + u / letters]);
        hashes[u] = cand[u].hash();
      }
      for (std::size_t u = 0; u < cand.size(); ++u) {
        if (!merge(index, out, std::move(cand[u]), hashes[u], static_cast<std::uint32_t>(c0 + u / letters),
                   static_cast<std::uint32_t>(u % letters), cap)) {
          break;
        }
      }
    }
    out.level_end.push_back(out.points.size());
    begin = end;
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class Flag>
VerificationReport containment_report(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                      const std::vector<Flag>& inside) {
  VerificationReport r;
  r.points_generated = points.size();
  r.points_checked = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!inside[i]) r.containment_violations.push_back({points[i], desc.distance(points[i])});
  }
  return r;
}

}  // namespace

VerificationReport verify_containment_serial(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                             double tol) {
  const auto t0 = Clock::now();
  std::vector<char> inside(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) inside[i] = desc.member(points[i], tol) ? 1 : 0;
  VerificationReport r = containment_report(points, desc, inside);
  r.elapsed = Clock::now() - t0;
  return r;
}

VerificationReport verify_containment(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                      double tol) {
  const auto t0 = Clock::now();
  std::vector<char> inside(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    inside[static_cast<std::size_t>(i)] = desc.member(points[static_cast<std::size_t>(i)], tol) ? 1 : 0;
  }
  VerificationReport r = containment_report(points, desc, inside);
  r.elapsed = Clock::now() - t0;
  return r;
}

namespace {

struct CellHash {
  std::size_t operator()(const std::vector<long>& k) const {
    std::size_t h = k.size();
    for (long v : k) h ^= std::hash<long>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Uniform grid of cell size eps over the approximated points near the box.
class NearestIndex {
 public:
  NearestIndex(const std::vector<Vector>& points, const Box& region, double eps) : eps_(eps) {
    const std::size_t n = region.dim();
    std::vector<double> lo(n);
    std::vector<double> hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = region.bounds[i].first.get_d() - 2 * eps;
      hi[i] = region.bounds[i].second.get_d() + 2 * eps;
    }
    for (const auto& p : points) {
      auto a = p.approx();
      bool near = true;
      for (std::size_t i = 0; i < n && near; ++i) near = a[i] >= lo[i] && a[i] <= hi[i];
      if (!near) continue;
      cells_[key(a)].push_back(static_cast<std::uint32_t>(coords_.size()));
      coords_.push_back(std::move(a));
    }
  }

  [[nodiscard]] double nearest(const std::vector<double>& q) const {
    const std::size_t n = q.size();
    const auto center = key(q);
    double best = INFINITY;
    std::vector<long> k(n);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t code = c;
      for (std::size_t i = 0; i < n; ++i) {
        k[i] = center[i] + static_cast<long>(code % 3) - 1;
        code /= 3;
      }
      auto it = cells_.find(k);
      if (it == cells_.end()) continue;
      for (auto idx : it->second) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = coords_[idx][i] - q[i];
          s += d * d;
        }
        best = std::min(best, s);
      }
    }
    return std::sqrt(best);
  }

 private:
  [[nodiscard]] std::vector<long> key(const std::vector<double>& a) const {
    std::vector<long> k(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) k[i] = static_cast<long>(std::floor(a[i] / eps_));
    return k;
  }

  double eps_;
  std::vector<std::vector<double>> coords_;
  std::unordered_map<std::vector<long>, std::vector<std::uint32_t>, CellHash> cells_;
};

struct Grid {
  std::vector<Rational> lo;
  Rational step;
  std::vector<std::size_t> counts;
  std::size_t total = 1;

  Grid(const Box& region, const Rational& grid_step) : step(grid_step) {
    if (sgn(step) <= 0) throw std::invalid_argument("grid step must be positive");
    for (const auto& [a, b] : region.bounds) {
      if (b < a) throw std::invalid_argument("empty region interval");
      lo.push_back(a);
      Rational span = (b - a) / step;
      Integer c;
      mpz_fdiv_q(c.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
      c += 1;
      const std::size_t ci = c.fits_ulong_p() ? c.get_ui() : std::numeric_limits<std::size_t>::max();
      counts.push_back(ci);
      total = (total > std::numeric_limits<std::size_t>::max() / std::max<std::size_t>(ci, 1))
                  ? std::numeric_limits<std::size_t>::max()
                  : total * ci;
    }
  }

  [[nodiscard]] Vector point(std::size_t t) const {
    Vector v(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
      v[i] = Scalar(Rational(lo[i] + step * Rational(static_cast<unsigned long>(t % counts[i]))));
      t /= counts[i];
    }
    return v;
  }
};

enum class GridVerdict : char { outside, covered, gap };

GridVerdict classify(const Grid& grid, std::size_t t, const OrbitClosureDesc& desc, const NearestIndex& index,
                     double eps) {
  const Vector g = grid.point(t);
  if (!desc.member(g, eps / 2)) return GridVerdict::outside;
  return index.nearest(g.approx()) <= eps ? GridVerdict::covered : GridVerdict::gap;
}

VerificationReport covering(const std::vector<Vector>& points, const OrbitClosureDesc& desc, const Box& region,
                            double eps, const Rational& grid_step, const CoveringOptions& opts, bool parallel) {
  const auto t0 = Clock::now();
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (grid_step.get_d() > eps) throw std::invalid_argument("grid step must not exceed eps");
  require_same_dim(desc.dim(), region.dim(), "covering region");
  VerificationReport r;
  r.points_generated = points.size();
  const Grid grid(region, grid_step);
  const NearestIndex index(points, region, eps);
  r.grid_points = grid.total;
  const std::size_t limit = std::min(grid.total, opts.max_grid_points);
  constexpr std::size_t kChunk = 4096;
  std::vector<GridVerdict> verdict;
  std::size_t scanned = 0;
  bool stopped = false;
  for (std::size_t c0 = 0; c0 < limit && !stopped; c0 += kChunk) {
    const std::size_t c1 = std::min(limit, c0 + kChunk);
    verdict.assign(c1 - c0, GridVerdict::outside);
    const auto count = static_cast<std::ptrdiff_t>(c1 - c0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
      for (std::ptrdiff_t u = 0; u < count; ++u) {
        verdict[static_cast<std::size_t>(u)] = classify(grid, c0 + static_cast<std::size_t>(u), desc, index, eps);
      }
    } else {
      for (std::ptrdiff_t u = 0; u < count; ++u) {
        verdict[static_cast<std::size_t>(u)] = classify(grid, c0 + static_cast<std::size_t>(u), desc, index, eps);
      }
    }
    for (std::size_t u = 0; u < verdict.size(); ++u) {
      ++scanned;
      if (verdict[u] == GridVerdict::outside) continue;
      ++r.grid_points_in_closure;
      if (verdict[u] == GridVerdict::gap) {
        ++r.gap_count;
        if (r.covering_gaps.size() < opts.max_listed_gaps) r.covering_gaps.push_back(grid.point(c0 + u).approx());
        if (r.gap_count >= opts.stop_after_gaps) {
          stopped = true;
          break;
        }
      }
    }
  }
  r.scan_complete = stopped || scanned == grid.total;
  r.points_checked = scanned;
  r.elapsed = Clock::now() - t0;
  return r;
}

}  // namespace

VerificationReport verify_covering(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                   const Box& region, double eps, const Rational& grid_step,
                                   const CoveringOptions& opts) {
  return covering(points, desc, region, eps, grid_step, opts, true);
}

VerificationReport verify_covering_serial(const std::vector<Vector>& points, const OrbitClosureDesc& desc,
                                          const Box& region, double eps, const Rational& grid_step,
                                          const CoveringOptions& opts) {
  return covering(points, desc, region, eps, grid_step, opts, false);
}

namespace {

struct MapHash {
  std::size_t operator()(const AffineMap& f) const { return f.ratio().hash() * 31 + f.offset().hash(); }
};

}  // namespace

std::vector<Vector> brute_force_translation_subgroup(const GroupSpec& spec, int depth) {
  if (detect_case(spec) != ActionCase::symmetries_only) {
    throw WrongCaseError("translation subgroup enumeration applies to groups of symmetries");
  }
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  const auto maps = letter_maps(spec);
  std::unordered_set<AffineMap, MapHash> seen;
  std::vector<AffineMap> frontier{AffineMap::identity(spec.dim())};
  seen.insert(frontier.front());
  std::vector<Vector> out{Vector(spec.dim())};
  for (int d = 1; d <= depth; ++d) {
    std::vector<AffineMap> next;
    for (const auto& w : frontier) {
      for (const auto& g : maps) {
        AffineMap h = compose(g, w);
        if (!seen.insert(h).second) continue;
        if (h.ratio() == Scalar(1L)) out.push_back(h.offset());
        next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

DensityWitness dense_scalar_witness(const Scalar& lambda, const Rational& lo, const Rational& hi) {
  if (!(lambda > Scalar(1L))) throw std::invalid_argument("witness needs lambda > 1");
  if (!(lo < hi)) throw std::invalid_argument("witness needs lo < hi");
  const Scalar width(Rational(hi - lo));
  const Scalar one(1L);
  for (long p = -1; p >= kWitnessMinExponent; --p) {
    const Scalar lp = pow(lambda, p);
    const Scalar step = lp * (one - lp);
    if (!(step < width)) continue;
    // lo / step < q < hi / step has an integer solution since step < width
    Integer q = floor(Scalar(lo) / step) + 1;
    if (abs(q) > kWitnessMaxMultiplier) break;
    Scalar value = Scalar(q) * step;
    if (!(value < Scalar(hi))) throw std::logic_error("witness construction left the interval");
    return {p, q, std::move(value)};
  }
  throw std::runtime_error("no witness within the scan bounds");
}

Word witness_word(long p, const Integer& q) {
  if (p == 0) throw std::invalid_argument("witness exponent must be nonzero");
  Word w;
  w.push_back({0, 2 * p});
  const Integer reps = q - 1;
  if (!reps.fits_slong_p()) throw std::invalid_argument("witness multiplier too large");
  const long k = reps.get_si();
  for (long i = 0; i < std::abs(k); ++i) {
    if (k > 0) {
      w.push_back({1, -p});
      w.push_back({0, p});
    } else {
      w.push_back({0, -p});
      w.push_back({1, p});
    }
  }
  w.push_back({1, -p});
  return w;
}

void write_orbit_csv(std::ostream& os, const std::vector<Vector>& points, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) os << (i ? "," : "") << 'x' << (i + 1);
  os << '\n';
  char buf[64];
  for (const auto& p : points) {
    require_same_dim(dim, p.dim(), "csv export");
    for (std::size_t i = 0; i < dim; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p[i].approx());
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace homothety
