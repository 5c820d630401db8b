#pragma once

#include "ghd/correspondence.hpp"
#include "ghd/metric_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace ghd {

/// Certified Gromov-Hausdorff distance with an attaining correspondence.
///
/// When `exact` is set, lower_bound == value == upper_bound == dis(witness)/2.
/// Otherwise the search ran out of budget: value and witness are the best
/// correspondence found and [lower_bound, upper_bound] brackets the true
/// distance.
template <typename Scalar>
struct GHResult {
  Scalar value;
  Correspondence witness;
  Scalar lower_bound;
  Scalar upper_bound;
  bool exact;
  std::uint64_t nodes_explored;
};

template <typename Scalar>
struct GHBounds {
  Scalar lower;
  Scalar upper;
  /// Correspondence whose half distortion is `upper`.
  Correspondence seed;
};

struct SolverOptions {
  std::uint64_t node_budget = 100'000'000;
};

class NotExact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename Scalar>
std::vector<Index> by_decreasing_eccentricity(const DistanceMatrix<Scalar>& d) {
  std::vector<Index> order(static_cast<std::size_t>(d.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ecc = d.rowwise().maxCoeff();
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return ecc(a) > ecc(b); });
  return order;
}

/// Raises cost(a,b) to cover the comparison with a newly added pair (a0,b0).
template <typename Scalar>
void absorb_pair(DistanceMatrix<Scalar>& cost, const DistanceMatrix<Scalar>& da, const DistanceMatrix<Scalar>& db,
                 Index a0, Index b0) {
  for (Index a = 0; a < cost.rows(); ++a)
    for (Index b = 0; b < cost.cols(); ++b)
      cost(a, b) = std::max(cost(a, b), std::abs(da(a, a0) - db(b, b0)));
}

/// Greedy correspondence: points of A in decreasing eccentricity each take
/// the cheapest single partner in B, then uncovered points of B are attached
/// to their cheapest partner in A.
template <typename Scalar>
std::vector<IndexPair> greedy_pairs(const DistanceMatrix<Scalar>& da, const DistanceMatrix<Scalar>& db) {
  const Index p = da.rows();
  const Index q = db.rows();
  DistanceMatrix<Scalar> cost = DistanceMatrix<Scalar>::Zero(p, q);
  std::vector<bool> covered(static_cast<std::size_t>(q), false);
  std::vector<IndexPair> pairs;
  for (Index a : by_decreasing_eccentricity(da)) {
    Index b;
    cost.row(a).minCoeff(&b);
    pairs.emplace_back(a, b);
    covered[b] = true;
    absorb_pair(cost, da, db, a, b);
  }
  for (Index b : by_decreasing_eccentricity(db)) {
    if (covered[b]) continue;
    Index a;
    cost.col(b).minCoeff(&a);
    pairs.emplace_back(a, b);
    covered[b] = true;
    absorb_pair(cost, da, db, a, b);
  }
  return pairs;
}

/// max over x of min over y of |ecc(x) - ecc(y)|, symmetrized. Any pair (x,y)
/// of a correspondence R satisfies |ecc(x) - ecc(y)| <= dis R.
template <typename Scalar>
Scalar eccentricity_bound(const DistanceMatrix<Scalar>& dx, const DistanceMatrix<Scalar>& dy) {
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ex = dx.rowwise().maxCoeff();
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ey = dy.rowwise().maxCoeff();
  Scalar bound = 0;
  for (Index i = 0; i < ex.size(); ++i) bound = std::max(bound, (ey.array() - ex(i)).abs().minCoeff());
  for (Index j = 0; j < ey.size(); ++j) bound = std::max(bound, (ex.array() - ey(j)).abs().minCoeff());
  return bound;
}

/// Finds the least distortion by depth-first search over assignments
/// a -> nonempty subset of B, with points of A taken in decreasing
/// eccentricity and candidate subsets tried in increasing incremental
/// distortion. cost(a,b) caches the distortion that pair (a,b) would add
/// against everything assigned so far; a node is pruned when its lower
/// bound (current distortion, and the cheapest completion of every pending
/// row and uncovered column) reaches the incumbent.
template <typename Scalar>
class DistortionSearch {
 public:
  using Matrix = DistanceMatrix<Scalar>;

  DistortionSearch(const Matrix& da, const Matrix& db, Scalar incumbent, std::uint64_t budget)
      : da_(da), db_(db), p_(da.rows()), q_(db.rows()), budget_(budget), best_(incumbent) {
    if (q_ > 63) throw std::invalid_argument("exact search supports at most 63 points on the smaller side");
    order_ = by_decreasing_eccentricity(da_);
    assign_.assign(static_cast<std::size_t>(p_), 0);
    all_ = (std::uint64_t{1} << q_) - 1;
  }

  void run() { descend(0, Scalar(0), Matrix::Zero(p_, q_), 0); }

  bool aborted() const noexcept { return aborted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  Scalar best() const noexcept { return best_; }

  /// Pairs of the best assignment found, or nothing if the incumbent was
  /// never beaten.
  std::optional<std::vector<IndexPair>> best_pairs() const {
    if (!improved_) return std::nullopt;
    std::vector<IndexPair> pairs;
    for (Index a = 0; a < p_; ++a)
      for (Index b = 0; b < q_; ++b)
        if (best_assign_[a] >> b & 1U) pairs.emplace_back(a, b);
    return pairs;
  }

 private:
  struct Candidate {
    Scalar increment;
    std::uint64_t mask;
  };

  bool charge(std::uint64_t n) {
    nodes_ += n;
    if (nodes_ > budget_) aborted_ = true;
    return !aborted_;
  }

  // Subsets S of `allowed` with max(cost(a,b) for b in S, diam S) < best.
  void collect(Index a, const Matrix& cost, std::uint64_t allowed, std::uint64_t chosen, Scalar increment, Index from,
               std::vector<Candidate>& out) const {
    for (Index b = from; b < q_; ++b) {
      if (!(allowed >> b & 1U)) continue;
      Scalar inc = std::max(increment, cost(a, b));
      for (std::uint64_t rest = chosen; rest; rest &= rest - 1)
        inc = std::max(inc, db_(b, std::countr_zero(rest)));
      if (inc >= best_) continue;
      const std::uint64_t next = chosen | (std::uint64_t{1} << b);
      out.push_back({inc, next});
      collect(a, cost, allowed, next, inc, b + 1, out);
    }
  }

  void descend(Index level, Scalar current, const Matrix& cost, std::uint64_t covered) {
    if (aborted_) return;
    if (level == p_) {
      if (covered == all_ && current < best_) {
        best_ = current;
        best_assign_ = assign_;
        improved_ = true;
      }
      return;
    }
    const Index a = order_[level];
    const bool last = level + 1 == p_;
    const std::uint64_t uncovered = all_ & ~covered;

    std::uint64_t feasible = 0;
    for (Index b = 0; b < q_; ++b)
      if (cost(a, b) < best_) feasible |= std::uint64_t{1} << b;

    std::vector<Candidate> candidates;
    if (last && uncovered) {
      // Supersets of the forced set only add distortion.
      if ((uncovered & ~feasible) != 0) return;
      Scalar inc = 0;
      for (std::uint64_t s = uncovered; s; s &= s - 1) {
        const int b = std::countr_zero(s);
        inc = std::max(inc, cost(a, b));
        for (std::uint64_t t = s & (s - 1); t; t &= t - 1) inc = std::max(inc, db_(b, std::countr_zero(t)));
      }
      if (inc < best_) candidates.push_back({inc, uncovered});
    } else if (last) {
      for (std::uint64_t s = feasible; s; s &= s - 1) {
        const int b = std::countr_zero(s);
        candidates.push_back({cost(a, b), std::uint64_t{1} << b});
      }
    } else {
      collect(a, cost, feasible, 0, Scalar(0), 0, candidates);
    }
    if (!charge(candidates.size() + 1)) return;

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
      return std::make_tuple(l.increment, std::popcount(l.mask), l.mask) <
             std::make_tuple(r.increment, std::popcount(r.mask), r.mask);
    });

    Matrix next_cost(p_, q_);
    for (const auto& [increment, subset] : candidates) {
      if (aborted_) return;
      const Scalar next = std::max(current, increment);
      if (next >= best_) continue;
      const std::uint64_t next_covered = covered | subset;

      next_cost = cost;
      Scalar bound = next;
      for (Index l = level + 1; l < p_ && bound < best_; ++l) {
        const Index a2 = order_[l];
        for (std::uint64_t s = subset; s; s &= s - 1) {
          const int b0 = std::countr_zero(s);
          for (Index b = 0; b < q_; ++b)
            next_cost(a2, b) = std::max(next_cost(a2, b), std::abs(da_(a2, a) - db_(b, b0)));
        }
        bound = std::max(bound, next_cost.row(a2).minCoeff());
      }
      if (bound >= best_) continue;
      for (std::uint64_t s = all_ & ~next_covered; s && bound < best_; s &= s - 1) {
        const int b = std::countr_zero(s);
        Scalar cheapest = std::numeric_limits<Scalar>::infinity();
        for (Index l = level + 1; l < p_; ++l) cheapest = std::min(cheapest, next_cost(order_[l], b));
        bound = std::max(bound, cheapest);
      }
      if (bound >= best_) continue;

      assign_[a] = subset;
      descend(level + 1, next, next_cost, next_covered);
      assign_[a] = 0;
    }
  }

  const Matrix& da_;
  const Matrix& db_;
  Index p_;
  Index q_;
  std::uint64_t all_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool improved_ = false;
  Scalar best_;
  std::vector<Index> order_;
  std::vector<std::uint64_t> assign_;
  std::vector<std::uint64_t> best_assign_;
};

/// Lexicographically smallest sorted pair list among correspondences with
/// distortion <= threshold. Cells of the n x m grid are decided in row-major
/// order: stop as soon as the pairs taken so far form a correspondence (a
/// proper prefix compares smaller), otherwise try including the cell before
/// excluding it.
template <typename Scalar>
class LexMinSearch {
 public:
  using Matrix = DistanceMatrix<Scalar>;

  LexMinSearch(const Matrix& dx, const Matrix& dy, Scalar threshold, std::uint64_t budget)
      : dx_(dx), dy_(dy), n_(dx.rows()), m_(dy.rows()), threshold_(threshold), budget_(budget) {
    row_hits_.assign(static_cast<std::size_t>(n_), 0);
    col_hits_.assign(static_cast<std::size_t>(m_), 0);
  }

  std::optional<std::vector<IndexPair>> run() {
    if (descend(0, Matrix::Zero(n_, m_))) return pairs_;
    return std::nullopt;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool complete() const { return rows_done_ == n_ && cols_done_ == m_; }

  // Every uncovered row and column still has a reachable cell under the threshold.
  bool completable(Index i, Index j, const Matrix& cost) const {
    for (Index r = 0; r < n_; ++r) {
      if (row_hits_[r]) continue;
      if (r < i) return false;
      const Index from = r == i ? j : 0;
      bool any = false;
      for (Index y = from; y < m_ && !any; ++y) any = cost(r, y) <= threshold_;
      if (!any) return false;
    }
    for (Index y = 0; y < m_; ++y) {
      if (col_hits_[y]) continue;
      bool any = y >= j && cost(i, y) <= threshold_;
      for (Index r = i + 1; r < n_ && !any; ++r) any = cost(r, y) <= threshold_;
      if (!any) return false;
    }
    return true;
  }

  bool descend(Index cell, const Matrix& cost) {
    if (complete()) return true;
    if (cell == n_ * m_ || ++nodes_ > budget_) return false;
    const Index i = cell / m_;
    const Index j = cell % m_;
    if (!completable(i, j, cost)) return false;

    if (cost(i, j) <= threshold_) {
      Matrix next = cost;
      absorb_pair(next, dx_, dy_, i, j);
      pairs_.emplace_back(i, j);
      rows_done_ += row_hits_[i]++ == 0;
      cols_done_ += col_hits_[j]++ == 0;
      if (descend(cell + 1, next)) return true;
      rows_done_ -= --row_hits_[i] == 0;
      cols_done_ -= --col_hits_[j] == 0;
      pairs_.pop_back();
    }
    return descend(cell + 1, cost);
  }

  const Matrix& dx_;
  const Matrix& dy_;
  Index n_;
  Index m_;
  Scalar threshold_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<IndexPair> pairs_;
  std::vector<int> row_hits_;
  std::vector<int> col_hits_;
  Index rows_done_ = 0;
  Index cols_done_ = 0;
};

}  // namespace detail

/// Cheap bracket: lower = |diam X - diam Y| / 2, upper = half the distortion
/// of the best of a few heuristic correspondences (greedy in both
/// directions, the identity when sizes agree, the full product).
template <typename Scalar, Axioms A, Axioms B>
GHBounds<Scalar> gh_bounds(const FiniteSpace<Scalar, A>& X, const FiniteSpace<Scalar, B>& Y) {
  const Index n = X.size();
  const Index m = Y.size();
  std::vector<Correspondence> seeds;
  seeds.emplace_back(n, m, detail::greedy_pairs(X.dist(), Y.dist()));
  seeds.push_back(Correspondence(m, n, detail::greedy_pairs(Y.dist(), X.dist())).transposed());
  if (n == m) seeds.push_back(Correspondence::identity(n));
  seeds.push_back(Correspondence::full(n, m));

  std::size_t pick = 0;
  Scalar best = distortion(X, Y, seeds[0]);
  for (std::size_t s = 1; s < seeds.size(); ++s) {
    const Scalar d = distortion(X, Y, seeds[s]);
    if (d < best) {
      best = d;
      pick = s;
    }
  }
  const Scalar half(0.5);
  return {half * std::abs(diameter(X) - diameter(Y)), half * best, std::move(seeds[pick])};
}

/// Exact Gromov-Hausdorff distance: half the least distortion over all
/// correspondences, with the lexicographically smallest attaining
/// correspondence as witness. Falls back to a bracketed, non-exact result
/// when the node budget runs out.
template <typename Scalar, Axioms A, Axioms B>
GHResult<Scalar> gh_exact(const FiniteSpace<Scalar, A>& X, const FiniteSpace<Scalar, B>& Y,
                          SolverOptions options = {}) {
  const Index n = X.size();
  const Index m = Y.size();
  const Scalar half(0.5);

  if (n == 1 || m == 1) {
    auto only = Correspondence::full(n, m);
    const Scalar v = half * distortion(X, Y, only);
    return {v, std::move(only), v, v, true, 1};
  }

  auto bounds = gh_bounds(X, Y);
  const Scalar floor = std::max(bounds.lower, half * detail::eccentricity_bound(X.dist(), Y.dist()));
  Scalar best = distortion(X, Y, bounds.seed);
  Correspondence witness = bounds.seed;
  std::uint64_t nodes = 0;

  if (half * best > floor) {
    // Branch over the larger space, taking subsets of the smaller one.
    const bool swap = m > n;
    const auto& da = swap ? Y.dist() : X.dist();
    const auto& db = swap ? X.dist() : Y.dist();
    detail::DistortionSearch<Scalar> search(da, db, best, options.node_budget);
    search.run();
    nodes += search.nodes();
    if (auto pairs = search.best_pairs()) {
      Correspondence found(da.rows(), db.rows(), std::move(*pairs));
      witness = swap ? found.transposed() : std::move(found);
      best = search.best();
    }
    if (search.aborted()) {
      const Scalar v = half * best;
      return {v, std::move(witness), std::min(floor, v), v, false, nodes};
    }
  }

  const std::uint64_t remaining = options.node_budget > nodes ? options.node_budget - nodes : 0;
  detail::LexMinSearch<Scalar> lex(X.dist(), Y.dist(), best, remaining);
  if (auto pairs = lex.run()) witness = Correspondence(n, m, std::move(*pairs));
  nodes += lex.nodes();

  const Scalar v = half * best;
  return {v, std::move(witness), v, v, true, nodes};
}

template <typename Scalar>
struct OracleResult {
  Scalar value;
  Correspondence witness;
  std::uint64_t count;
};

/// Half the least distortion over every correspondence, by exhaustive
/// enumeration. Ties resolve to the lexicographically smallest pair list.
template <typename Scalar, Axioms A, Axioms B>
OracleResult<Scalar> gh_brute_force(const FiniteSpace<Scalar, A>& X, const FiniteSpace<Scalar, B>& Y) {
  std::optional<Correspondence> best;
  Scalar best_dis = std::numeric_limits<Scalar>::infinity();
  std::uint64_t count = 0;
  for (Correspondence r : enumerate_correspondences(X.size(), Y.size())) {
    ++count;
    const Scalar d = distortion(X, Y, r);
    if (d < best_dis || (d == best_dis && r.pairs() < best->pairs())) {
      best_dis = d;
      best = std::move(r);
    }
  }
  return {Scalar(0.5) * best_dis, std::move(*best), count};
}

}  // namespace ghd
