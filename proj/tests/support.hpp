#pragma once

#include "ghd/ghd.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace ghd::test {

using Rng = std::mt19937_64;

/// n points uniform in [0, 10]^dim under the Euclidean metric.
inline FiniteMetricSpace random_euclidean(Rng& rng, Index n, Index dim = 2) {
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  Eigen::MatrixXd pts(n, dim);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < dim; ++k) pts(i, k) = coord(rng);
  DistanceMatrix<double> d = DistanceMatrix<double>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = i + 1; k < n; ++k) d(i, k) = d(k, i) = (pts.row(i) - pts.row(k)).norm();
  return FiniteMetricSpace(std::move(d));
}

inline Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

/// Points on the real line with |a - b| distances.
inline FiniteMetricSpace line_space(const std::vector<double>& xs) {
  const auto n = static_cast<Index>(xs.size());
  DistanceMatrix<double> d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) d(i, k) = std::abs(xs[i] - xs[k]);
  return FiniteMetricSpace(std::move(d));
}

inline FiniteMetricSpace two_point(double a) {
  DistanceMatrix<double> d(2, 2);
  d << 0, a, a, 0;
  return FiniteMetricSpace(std::move(d));
}

inline FiniteMetricSpace one_point() { return FiniteMetricSpace(DistanceMatrix<double>::Zero(1, 1)); }

/// Random nonempty relation; each grid cell is kept with probability `density`.
inline Relation random_relation(Rng& rng, Index n, Index m, double density = 0.4) {
  std::bernoulli_distribution keep(density);
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j)
      if (keep(rng)) pairs.emplace_back(i, j);
  if (pairs.empty()) pairs.emplace_back(uniform_index(rng, 0, n - 1), uniform_index(rng, 0, m - 1));
  return Relation(n, m, std::move(pairs));
}

/// Random relation repaired into a correspondence by pairing every missed
/// point with a random partner.
inline Correspondence random_correspondence(Rng& rng, Index n, Index m, double density = 0.3) {
  auto pairs = random_relation(rng, n, m, density).pairs();
  std::vector<bool> row(static_cast<std::size_t>(n)), col(static_cast<std::size_t>(m));
  for (const auto& [i, j] : pairs) row[i] = col[j] = true;
  for (Index i = 0; i < n; ++i)
    if (!row[i]) {
      const Index j = uniform_index(rng, 0, m - 1);
      pairs.emplace_back(i, j);
      col[j] = true;
    }
  for (Index j = 0; j < m; ++j)
    if (!col[j]) pairs.emplace_back(uniform_index(rng, 0, n - 1), j);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Correspondence(n, m, std::move(pairs));
}

/// Same space with rows and columns reordered: result point k is source point perm[k].
inline FiniteMetricSpace permuted(const FiniteMetricSpace& s, const std::vector<Index>& perm) {
  const Index n = s.size();
  DistanceMatrix<double> d(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) d(a, b) = s(perm[a], perm[b]);
  return FiniteMetricSpace(std::move(d));
}

inline std::vector<Index> random_permutation(Rng& rng, Index n) {
  std::vector<Index> p(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Adds `delta` to every off-diagonal distance; keeps all axioms.
inline FiniteMetricSpace inflated(const FiniteMetricSpace& s, double delta) {
  DistanceMatrix<double> d = s.dist();
  for (Index i = 0; i < d.rows(); ++i)
    for (Index k = 0; k < d.cols(); ++k)
      if (i != k) d(i, k) += delta;
  return FiniteMetricSpace(std::move(d));
}

inline Subset random_subset(Rng& rng, Index n) {
  std::bernoulli_distribution keep(0.5);
  std::vector<Index> idx;
  for (Index i = 0; i < n; ++i)
    if (keep(rng)) idx.push_back(i);
  if (idx.empty()) idx.push_back(uniform_index(rng, 0, n - 1));
  return Subset(n, std::move(idx));
}

}  // namespace ghd::test
