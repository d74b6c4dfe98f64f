#pragma once

// Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
// eigenvalues, inverse iteration (with re-orthogonalization inside clusters)
// for the eigenvectors. Zero couplings split the matrix into blocks.

#include "kipp/error.hpp"
#include "kipp/trimat.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace kipp {

struct Spectrum {
  /// Ascending.
  std::vector<double> values;
  /// Empty, or one unit vector per value (same index).
  std::vector<std::vector<double>> vectors;

  bool has_vectors() const { return !vectors.empty(); }

  /// Smallest distance between consecutive eigenvalues; +inf for n < 2.
  double min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values.size(); ++i) g = std::min(g, values[i] - values[i - 1]);
    return g;
  }
};

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Block {
  std::size_t lo;
  std::size_t hi;  // exclusive
};

inline std::vector<Block> split_blocks(const SymTridiagonal& t) {
  std::vector<Block> blocks;
  const std::size_t n = t.size();
  std::size_t start = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double scale = std::abs(t.d[j]) + std::abs(t.d[j + 1]);
    if (t.e[j] == 0.0 || std::abs(t.e[j]) <= kEps * scale) {
      blocks.push_back({start, j + 1});
      start = j + 1;
    }
  }
  if (n > 0) blocks.push_back({start, n});
  return blocks;
}

/// Number of eigenvalues of the block strictly below x.
inline std::size_t sturm_count(const SymTridiagonal& t, Block b, double x, double pivmin) {
  std::size_t count = 0;
  double q = t.d[b.lo] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = b.lo + 1; i < b.hi; ++i) {
    q = t.d[i] - x - t.e[i - 1] * t.e[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

inline std::vector<double> block_eigenvalues(const SymTridiagonal& t, Block b) {
  const std::size_t m = b.hi - b.lo;
  if (m == 1) return {t.d[b.lo]};
  double gl = std::numeric_limits<double>::infinity();
  double gu = -gl;
  double emax2 = 0.0;
  for (std::size_t i = b.lo; i < b.hi; ++i) {
    double r = 0.0;
    if (i > b.lo) r += std::abs(t.e[i - 1]);
    if (i + 1 < b.hi) {
      r += std::abs(t.e[i]);
      emax2 = std::max(emax2, t.e[i] * t.e[i]);
    }
    gl = std::min(gl, t.d[i] - r);
    gu = std::max(gu, t.d[i] + r);
  }
  const double width = std::max(std::abs(gl), std::abs(gu));
  gl -= 2.0 * kEps * width + std::numeric_limits<double>::min();
  gu += 2.0 * kEps * width + std::numeric_limits<double>::min();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax2);

  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    double lo = gl;
    double hi = gu;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
      if (sturm_count(t, b, mid, pivmin) <= k) lo = mid;
      else hi = mid;
    }
    out[k] = 0.5 * (lo + hi);
  }
  return out;
}

/// LU factorization of the shifted block with partial pivoting (two
/// superdiagonals after interchanges). Zero pivots are replaced by `tiny`.
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const SymTridiagonal& t, Block b, double shift, double tiny) : n_(b.hi - b.lo) {
    d_.resize(n_);
    dl_.assign(n_ > 0 ? n_ - 1 : 0, 0.0);
    du_.assign(n_ > 0 ? n_ - 1 : 0, 0.0);
    du2_.assign(n_ > 1 ? n_ - 2 : 0, 0.0);
    swap_.assign(n_ > 0 ? n_ - 1 : 0, false);
    for (std::size_t i = 0; i < n_; ++i) d_[i] = t.d[b.lo + i] - shift;
    for (std::size_t i = 0; i + 1 < n_; ++i) dl_[i] = du_[i] = t.e[b.lo + i];
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - f * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
        swap_[i] = true;
      }
    }
    if (n_ > 0 && d_[n_ - 1] == 0.0) d_[n_ - 1] = tiny;
  }

  void solve(std::vector<double>& x) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (swap_[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= dl_[i] * x[i];
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      double s = x[ii];
      if (ii + 1 < n_) s -= du_[ii] * x[ii + 1];
      if (ii + 2 < n_) s -= du2_[ii] * x[ii + 2];
      x[ii] = s / d_[ii];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> d_, dl_, du_, du2_;
  std::vector<bool> swap_;
};

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline void orthogonalize(std::vector<double>& v, const std::vector<const std::vector<double>*>& against) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto* w : against) {
      const double dot = std::inner_product(v.begin(), v.end(), w->begin(), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * (*w)[i];
    }
  }
}

/// Deterministic sign: positive component sum, else first significant entry positive.
inline void fix_sign(std::vector<double>& v) {
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  double pick = sum;
  if (std::abs(sum) <= 1e-10) {
    const double vmax = std::abs(*std::max_element(v.begin(), v.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    }));
    for (double x : v) {
      if (std::abs(x) > 1e-8 * vmax) {
        pick = x;
        break;
      }
    }
  }
  if (pick < 0.0)
    for (double& x : v) x = -x;
}

/// Eigenvectors of one block, values ascending, as vectors of the block size.
inline std::vector<std::vector<double>> block_eigenvectors(const SymTridiagonal& t, Block b,
                                                           const std::vector<double>& values) {
  const std::size_t m = b.hi - b.lo;
  std::vector<std::vector<double>> vecs(m);
  if (m == 1) {
    vecs[0] = {1.0};
    return vecs;
  }
  double tnorm = 0.0;
  for (std::size_t i = b.lo; i < b.hi; ++i) {
    double r = std::abs(t.d[i]);
    if (i > b.lo) r += t.e[i - 1];
    if (i + 1 < b.hi) r += t.e[i];
    tnorm = std::max(tnorm, r);
  }
  const double scale = std::max(1.0, tnorm);
  const double cluster_tol = 1e-8 * scale;
  const double tiny = kEps * scale;

  for (std::size_t k = 0; k < m; ++k) {
    std::vector<const std::vector<double>*> cluster;
    for (std::size_t j = k; j-- > 0;) {
      if (values[k] - values[j] > cluster_tol) break;
      cluster.push_back(&vecs[j]);
    }
    ShiftedTridiagonalLU lu(t, b, values[k], tiny);
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i)
      x[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.61 * static_cast<double>(k) + 0.3);
    orthogonalize(x, cluster);
    double nx = norm2(x);
    for (double& v : x) v /= nx;
    for (int it = 0; it < 4; ++it) {
      lu.solve(x);
      orthogonalize(x, cluster);
      nx = norm2(x);
      if (!(nx > 0.0) || !std::isfinite(nx)) {
        // Restart from a unit vector that survives the projection.
        x.assign(m, 0.0);
        x[(k + static_cast<std::size_t>(it)) % m] = 1.0;
        orthogonalize(x, cluster);
        nx = norm2(x);
      }
      for (double& v : x) v /= nx;
    }
    fix_sign(x);
    vecs[k] = std::move(x);
  }
  return vecs;
}

inline Spectrum solve(const SymTridiagonal& t, bool want_vectors) {
  const std::size_t n = t.size();
  struct Pair {
    double value;
    std::vector<double> vec;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (Block b : split_blocks(t)) {
    auto vals = block_eigenvalues(t, b);
    std::vector<std::vector<double>> vecs;
    if (want_vectors) vecs = block_eigenvectors(t, b, vals);
    for (std::size_t k = 0; k < vals.size(); ++k) {
      Pair p{vals[k], {}};
      if (want_vectors) {
        p.vec.assign(n, 0.0);
        std::copy(vecs[k].begin(), vecs[k].end(), p.vec.begin() + static_cast<std::ptrdiff_t>(b.lo));
      }
      pairs.push_back(std::move(p));
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });
  Spectrum s;
  for (auto& p : pairs) {
    s.values.push_back(p.value);
    if (want_vectors) s.vectors.push_back(std::move(p.vec));
  }
  return s;
}

}  // namespace detail

/// All eigenvalues, ascending.
inline Spectrum eig_all(const SymTridiagonal& t) { return detail::solve(t, false); }

/// All eigenvalues with orthonormal eigenvectors.
inline Spectrum eig_full(const SymTridiagonal& t) { return detail::solve(t, true); }

/// k-th smallest eigenvalue (1-based) and a unit eigenvector.
inline std::pair<double, std::vector<double>> eigpair(const SymTridiagonal& t, std::size_t k) {
  if (k < 1 || k > t.size())
    throw Error(ErrorCode::index_out_of_range,
                "eigen index " + std::to_string(k) + " outside 1.." + std::to_string(t.size()));
  Spectrum s = eig_full(t);
  return {s.values[k - 1], std::move(s.vectors[k - 1])};
}

/// max_k ||T v_k - lambda_k v_k||_2.
inline double max_residual(const SymTridiagonal& t, const Spectrum& s) {
  double worst = 0.0;
  const std::size_t n = t.size();
  for (std::size_t k = 0; k < s.vectors.size(); ++k) {
    const auto& v = s.vectors[k];
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = t.d[i] * v[i];
      if (i > 0) tv += t.e[i - 1] * v[i - 1];
      if (i + 1 < n) tv += t.e[i] * v[i + 1];
      const double r = tv - s.values[k] * v[i];
      r2 += r * r;
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  return worst;
}

}  // namespace kipp
