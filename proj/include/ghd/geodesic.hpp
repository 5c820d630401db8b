#pragma once

#include "ghd/correspondence.hpp"
#include "ghd/metric_space.hpp"
#include "ghd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghd {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shortest curve t -> R_t in GH space between X and Y, carried by an
/// optimal correspondence R: for 0 < t < 1 the points of R_t are the pairs
/// of R with distance (1-t)|xx'| + t|yy'|.
template <typename Scalar>
struct GeodesicCurve {
  MetricSpace<Scalar> X;
  MetricSpace<Scalar> Y;
  Correspondence R;
  Scalar gh;
};

/// Builds the curve on the solver's witness, or on `witness` when given; an
/// override must itself be optimal (half its distortion equal to the exact
/// distance within 1e-12).
template <typename Scalar>
GeodesicCurve<Scalar> make_geodesic(const MetricSpace<Scalar>& X, const MetricSpace<Scalar>& Y,
                                    SolverOptions options = {},
                                    const std::optional<Correspondence>& witness = std::nullopt) {
  auto result = gh_exact(X, Y, options);
  if (!result.exact) throw NotExact("make_geodesic: node budget exhausted before optimality was certified");
  if (!witness) return {X, Y, std::move(result.witness), result.value};

  require_relation_between(X, Y, *witness);
  const Scalar half = Scalar(0.5) * distortion(X, Y, *witness);
  if (std::abs(half - result.value) > 1e-12)
    throw std::invalid_argument("witness override is not an optimal correspondence");
  return {X, Y, *witness, result.value};
}

/// R_t as the zero-distance quotient of (R, rho_t). Endpoints go through the
/// same construction, so sample(0) and sample(1) are isometric to X and Y
/// rather than equal to them.
template <typename Scalar>
MetricSpace<Scalar> sample(const GeodesicCurve<Scalar>& curve, Scalar t) {
  if (!(t >= 0 && t <= 1)) throw DomainError("sample: t must lie in [0, 1]");
  const auto& pairs = curve.R.pairs();
  const Index k = curve.R.size();
  DistanceMatrix<Scalar> d(k, k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b)
      d(a, b) = (1 - t) * curve.X(pairs[a].first, pairs[b].first) + t * curve.Y(pairs[a].second, pairs[b].second);

  std::vector<std::string> labels;
  labels.reserve(pairs.size());
  for (const auto& [x, y] : pairs) labels.push_back("(" + curve.X.label(x) + "," + curve.Y.label(y) + ")");

  return quotient(PseudoMetricSpace<Scalar>(std::move(d), std::move(labels))).space;
}

struct GeodesicCheckOptions {
  /// Curves with more pairs are refused; pairwise exact solves grow fast.
  Index max_pairs = 8;
  SolverOptions solver{};
};

template <typename Scalar>
struct GeodesicEntry {
  Scalar s;
  Scalar t;
  Scalar measured;
  Scalar expected;
};

template <typename Scalar>
struct GeodesicReport {
  std::vector<GeodesicEntry<Scalar>> entries;
  Scalar max_deviation = 0;
};

/// Compares d_GH(R_s, R_t) with |s - t| * d_GH(X, Y) for every pair s < t of
/// the grid.
template <typename Scalar>
GeodesicReport<Scalar> check_geodesic(const GeodesicCurve<Scalar>& curve, const std::vector<Scalar>& ts,
                                      GeodesicCheckOptions options = {}) {
  if (curve.R.size() > options.max_pairs)
    throw std::invalid_argument("check_geodesic: correspondence has " + std::to_string(curve.R.size()) +
                                " pairs, limit is " + std::to_string(options.max_pairs));
  std::vector<MetricSpace<Scalar>> samples;
  samples.reserve(ts.size());
  for (Scalar t : ts) samples.push_back(sample(curve, t));

  GeodesicReport<Scalar> report;
  for (std::size_t a = 0; a < ts.size(); ++a) {
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      const auto r = gh_exact(samples[a], samples[b], options.solver);
      if (!r.exact) throw NotExact("check_geodesic: pairwise solve did not certify");
      const Scalar expected = std::abs(ts[a] - ts[b]) * curve.gh;
      report.entries.push_back({ts[a], ts[b], r.value, expected});
      report.max_deviation = std::max(report.max_deviation, std::abs(r.value - expected));
    }
  }
  return report;
}

}  // namespace ghd
