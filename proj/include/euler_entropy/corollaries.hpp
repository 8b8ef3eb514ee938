#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "spectra.hpp"
#include "trails.hpp"

namespace euler_entropy {

// Fills report.hypothesis_margin with c_ell against C e^{-(ell+1)} d^{ell-1} n
// for 3 <= ell <= lmax, using the report's C.
inline void attach_hypothesis_margin(SpectralReport& report, const MultiGraph& g, int lmax,
                                     const TrailSearchOptions& opts = {}) {
  const auto table = count_closed_trails(g, lmax, opts);
  report.hypothesis_margin.clear();
  for (int ell = 3; ell <= lmax; ++ell) {
    HypothesisMargin row{ell, table.counts[ell],
                         trail_hypothesis_bound(report.C_constant, ell, report.d, report.n), false};
    row.pass = row.c_ell.get_d() <= row.bound;
    report.hypothesis_margin.push_back(std::move(row));
  }
}

struct GirthReport {
  int n = 0;
  std::optional<int> d;
  std::optional<int> girth;  // absent for forests
};

inline GirthReport check_corollary_girth(const MultiGraph& g) {
  return {g.vertex_count(), g.regular_degree(), girth(g)};
}

struct ProductReport {
  std::vector<std::int64_t> h;  // factor degrees
  double delta = 0;
  std::int64_t d_t = 0;         // sum of h
  double threshold = 0;         // d_t^{1 - delta/4}
  double hoeffding = 0;         // 2 exp(-d_t^{2 - delta/2} / (2 sum h^2))
  // Pr(|X| >= threshold) for the eigenvalue X of a uniform vertex, from the
  // factor spectra; present when factors were given.
  std::optional<double> exact_tail;
  bool holds = true;            // exact_tail <= hoeffding when present
};

inline ProductReport check_corollary_product(std::span<const std::int64_t> h, double delta) {
  ProductReport r;
  r.h.assign(h.begin(), h.end());
  r.delta = delta;
  r.hoeffding = hoeffding_tail_bound(h, delta);
  for (auto x : h) r.d_t += x;
  r.threshold = std::pow(static_cast<double>(r.d_t), 1.0 - delta / 4.0);
  return r;
}

// Factors must be regular; the product spectrum is formed in distribution mode.
inline ProductReport check_corollary_product(std::span<const MultiGraph> factors, double delta,
                                             const EigenOptions& opts = {}) {
  if (factors.empty()) throw InputError("check_corollary_product: no factors");
  std::vector<std::int64_t> h;
  std::vector<SpectralDistribution> spectra;
  for (const auto& f : factors) {
    const auto d = f.regular_degree();
    if (!d || *d < 1) throw InputError("product factors must be regular with degree >= 1");
    h.push_back(*d);
    spectra.push_back(to_distribution(eigenvalues(f, opts)));
  }
  ProductReport r = check_corollary_product(h, delta);
  const auto product = product_spectrum<double>(spectra);
  double tail = 0.0;
  const double cut = r.threshold * (1.0 - 1e-12);
  for (const auto& v : product.values) {
    if (std::abs(v.value) >= cut) tail += v.weight;
  }
  r.exact_tail = tail;
  r.holds = tail <= r.hoeffding;
  return r;
}

// Factors K_{h_i + 1}, which are h_i-regular.
inline std::vector<MultiGraph> complete_factors(std::span<const std::int64_t> h) {
  std::vector<MultiGraph> out;
  for (auto x : h) {
    if (x < 1 || x > 4096) throw InputError("factor degrees must lie in [1, 4096]");
    out.push_back(make_complete(static_cast<int>(x) + 1));
  }
  return out;
}

}  // namespace euler_entropy
