#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "numeric.hpp"

namespace euler_entropy {

template <class Weight>
struct SpectralValue {
  double value;
  Weight weight;
};

// Eigenvalue multiset, values strictly decreasing. Weight is an exact
// multiplicity (BigInt) or a normalised probability (double).
template <class Weight>
struct BasicSpectrum {
  std::vector<SpectralValue<Weight>> values;

  Weight total_weight() const {
    Weight total{};
    for (const auto& v : values) total += v.weight;
    return total;
  }
};

using Spectrum = BasicSpectrum<BigInt>;
using SpectralDistribution = BasicSpectrum<double>;

namespace detail {

inline double weight_as_double(const BigInt& w) { return w.get_d(); }
inline double weight_as_double(double w) { return w; }

// Sorts by decreasing value and merges runs within `tol` of the run's first
// value; a merged value is the mean of its members.
template <class Weight>
BasicSpectrum<Weight> merge_values(std::vector<SpectralValue<Weight>> raw, double tol) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.value > b.value; });
  BasicSpectrum<Weight> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i;
    double sum = 0.0;
    Weight weight{};
    while (j < raw.size() && raw[i].value - raw[j].value <= tol) {
      sum += raw[j].value;
      weight += raw[j].weight;
      ++j;
    }
    out.values.push_back({sum / static_cast<double>(j - i), weight});
    i = j;
  }
  return out;
}

}  // namespace detail

struct EigenOptions {
  double tol = 1e-10;   // relative off-diagonal Frobenius norm at termination
  int max_sweeps = 100;
};

// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
// unsorted and unmerged.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix<double> a, const EigenOptions& opts = {}) {
  const int n = a.rows();
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm2 += a(i, j) * a(i, j);
  const double target = opts.tol * std::sqrt(norm2);

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep++ >= opts.max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                             std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i);
  return diag;
}

inline Spectrum eigenvalues(const MultiGraph& g, const EigenOptions& opts = {}) {
  const int n = g.vertex_count();
  if (n < 1) throw InputError("eigenvalues: empty graph");
  if (!(opts.tol > 0)) throw InputError("eigenvalues: tolerance must be positive");
  const auto adj = adjacency_matrix(g);
  DenseMatrix<double> a(n, n);
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = static_cast<double>(adj(i, j));
      norm2 += a(i, j) * a(i, j);
    }
  std::vector<SpectralValue<BigInt>> raw;
  for (double v : jacobi_eigenvalues(std::move(a), opts)) raw.push_back({v, BigInt(1)});
  return detail::merge_values(std::move(raw), 1e-7 * std::max(1.0, std::sqrt(norm2)));
}

template <class Weight>
BasicSpectrum<Weight> merge_spectrum(const BasicSpectrum<Weight>& s, double tol) {
  return detail::merge_values(s.values, tol);
}

// Spectrum of a Cartesian product: all sums of one value per factor,
// weights multiplied. Iterated pairwise convolution with merging.
template <class Weight>
BasicSpectrum<Weight> product_spectrum(std::span<const BasicSpectrum<Weight>> factors,
                                       double merge_tol = 1e-7) {
  if (factors.empty()) throw InputError("product_spectrum: no factors");
  BasicSpectrum<Weight> acc = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    std::vector<SpectralValue<Weight>> raw;
    raw.reserve(acc.values.size() * factors[f].values.size());
    double scale = 1.0;
    for (const auto& a : acc.values) {
      for (const auto& b : factors[f].values) {
        raw.push_back({a.value + b.value, a.weight * b.weight});
        scale = std::max(scale, std::abs(a.value) + std::abs(b.value));
      }
    }
    acc = detail::merge_values(std::move(raw), merge_tol * scale);
  }
  return acc;
}

// Normalised weights: the eigenvalue distribution of a uniform random index.
inline SpectralDistribution to_distribution(const Spectrum& s) {
  const BigInt total = s.total_weight();
  SpectralDistribution out;
  for (const auto& v : s.values) {
    out.values.push_back({v.value, Rational(v.weight, total).get_d()});
  }
  return out;
}

template <class Weight>
double spectral_moment(const BasicSpectrum<Weight>& s, int ell) {
  if (ell < 1) throw InputError("spectral_moment: ell must be >= 1");
  double sum = 0.0;
  for (const auto& v : s.values) sum += detail::weight_as_double(v.weight) * std::pow(v.value, ell);
  return sum;
}

// Sum of |value|^ell weighted; the natural scale for moment comparisons.
template <class Weight>
double absolute_moment(const BasicSpectrum<Weight>& s, int ell) {
  double sum = 0.0;
  for (const auto& v : s.values) {
    sum += detail::weight_as_double(v.weight) * std::pow(std::abs(v.value), ell);
  }
  return sum;
}

// trace(A^ell) by exact integer matrix powers: the number of closed walks of
// length ell.
inline BigInt closed_walk_count(const MultiGraph& g, int ell) {
  if (ell < 1) throw InputError("closed_walk_count: ell must be >= 1");
  const int n = g.vertex_count();
  const auto adj = adjacency_matrix(g);
  DenseMatrix<BigInt> power(n, n, BigInt(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) power(i, j) = static_cast<long>(adj(i, j));
  DenseMatrix<BigInt> next(n, n, BigInt(0));
  for (int step = 1; step < ell - 1; ++step) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        BigInt acc = 0;
        for (int k = 0; k < n; ++k) {
          if (adj(k, j) != 0) acc += power(i, k) * static_cast<long>(adj(k, j));
        }
        next(i, j) = acc;
      }
    }
    std::swap(power, next);
  }
  if (ell == 1) {
    return 0;  // loopless
  }
  BigInt trace = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (adj(k, i) != 0) trace += power(i, k) * static_cast<long>(adj(k, i));
  return trace;
}

// Total weight of values with |value| strictly above `threshold`. Values
// within `boundary_tol` of the threshold count as on the boundary, so that
// rounding in the eigensolver cannot turn boundary values into outliers.
template <class Weight>
Weight outlier_count(const BasicSpectrum<Weight>& s, double threshold, double boundary_tol = 1e-9) {
  if (threshold < 0) throw InputError("outlier_count: negative threshold");
  Weight count{};
  const double cut = threshold + boundary_tol * std::max(1.0, threshold);
  for (const auto& v : s.values) {
    if (std::abs(v.value) > cut) count += v.weight;
  }
  return count;
}

struct HypothesisMargin {
  int ell;
  BigInt c_ell;
  double bound;  // C e^{-(ell+1)} d^{ell-1} n
  bool pass;
};

struct SpectralReport {
  double delta = 0;
  double threshold = 0;        // d^{1-delta}
  int n = 0;
  int d = 0;
  BigInt outliers;             // strictly outside [-threshold, threshold]
  double fraction = 0;         // outliers / n
  double f_implied = 0;        // outliers = n d^{-f}; +inf when zero
  double C_constant = 0;       // e^{1 + 2/delta}
  double ell_max_implied = 0;  // f log(d) / 2
  std::vector<HypothesisMargin> hypothesis_margin;
};

// Outlier statistics behind the spectral criterion: eigenvalues outside
// [-d^{1-delta}, d^{1-delta}] (boundary values are not outliers).
inline SpectralReport check_corollary_spectral(const MultiGraph& g, double delta,
                                               const EigenOptions& opts = {}) {
  if (!(delta > 0 && delta < 1)) throw InputError("delta must lie in (0, 1)");
  const auto d = g.regular_degree();
  if (!d) throw InputError("spectral check needs a regular graph");
  if (*d < 2) throw InputError("spectral check needs degree >= 2");
  SpectralReport r;
  r.delta = delta;
  r.n = g.vertex_count();
  r.d = *d;
  r.threshold = std::pow(static_cast<double>(*d), 1.0 - delta);
  r.outliers = outlier_count(eigenvalues(g, opts), r.threshold);
  r.fraction = Rational(r.outliers, r.n).get_d();
  r.f_implied = sgn(r.outliers) == 0 ? kInfinity : -std::log(r.fraction) / std::log(static_cast<double>(*d));
  r.C_constant = std::exp(1.0 + 2.0 / delta);
  r.ell_max_implied = 0.5 * r.f_implied * std::log(static_cast<double>(*d));
  return r;
}

// Hoeffding bound on Pr(|X(G_t)| >= d_t^{1-delta/4}) for a product of
// h_i-regular factors: 2 exp(-d_t^{2-delta/2} / (2 sum h_i^2)).
inline double hoeffding_tail_bound(std::span<const std::int64_t> h, double delta) {
  if (h.empty()) throw InputError("hoeffding_tail_bound: no factors");
  if (!(delta > 0 && delta < 1)) throw InputError("delta must lie in (0, 1)");
  double dt = 0.0, sum_sq = 0.0;
  for (auto hi : h) {
    if (hi < 1) throw InputError("hoeffding_tail_bound: factor degrees must be positive");
    dt += static_cast<double>(hi);
    sum_sq += static_cast<double>(hi) * static_cast<double>(hi);
  }
  return 2.0 * std::exp(-std::pow(dt, 2.0 - delta / 2.0) / (2.0 * sum_sq));
}

}  // namespace euler_entropy
