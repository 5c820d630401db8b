#pragma once

#include "ghd/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ghd {

/// (index in X, index in Y)
using IndexPair = std::pair<Index, Index>;

/// Nonempty set of index pairs between a space of `left_size` points and one
/// of `right_size` points, stored sorted.
class Relation {
 public:
  Relation(Index left_size, Index right_size, std::vector<IndexPair> pairs)
      : left_size_(left_size), right_size_(right_size), pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw std::invalid_argument("relation must be nonempty");
    std::sort(pairs_.begin(), pairs_.end());
    if (std::adjacent_find(pairs_.begin(), pairs_.end()) != pairs_.end())
      throw std::invalid_argument("relation contains a duplicate pair");
    for (const auto& [i, j] : pairs_)
      if (i < 0 || i >= left_size_ || j < 0 || j >= right_size_)
        throw std::out_of_range("relation pair index out of range");
  }

  Index left_size() const noexcept { return left_size_; }
  Index right_size() const noexcept { return right_size_; }
  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }
  Index size() const noexcept { return static_cast<Index>(pairs_.size()); }
  bool contains(IndexPair p) const { return std::binary_search(pairs_.begin(), pairs_.end(), p); }

  Relation transposed() const {
    std::vector<IndexPair> t;
    t.reserve(pairs_.size());
    for (const auto& [i, j] : pairs_) t.emplace_back(j, i);
    return Relation(right_size_, left_size_, std::move(t));
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  Index left_size_;
  Index right_size_;
  std::vector<IndexPair> pairs_;
};

/// Both coordinate projections are onto.
inline bool is_correspondence(const Relation& rel) {
  std::vector<bool> left(static_cast<std::size_t>(rel.left_size()), false);
  std::vector<bool> right(static_cast<std::size_t>(rel.right_size()), false);
  for (const auto& [i, j] : rel.pairs()) {
    left[i] = true;
    right[j] = true;
  }
  return std::all_of(left.begin(), left.end(), [](bool b) { return b; }) &&
         std::all_of(right.begin(), right.end(), [](bool b) { return b; });
}

class Correspondence : public Relation {
 public:
  explicit Correspondence(Relation rel) : Relation(std::move(rel)) {
    if (!is_correspondence(*this)) throw std::invalid_argument("relation is not a correspondence");
  }
  Correspondence(Index left_size, Index right_size, std::vector<IndexPair> pairs)
      : Correspondence(Relation(left_size, right_size, std::move(pairs))) {}

  static Correspondence full(Index n, Index m) {
    std::vector<IndexPair> p;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < m; ++j) p.emplace_back(i, j);
    return Correspondence(n, m, std::move(p));
  }

  static Correspondence identity(Index n) {
    std::vector<IndexPair> p;
    for (Index i = 0; i < n; ++i) p.emplace_back(i, i);
    return Correspondence(n, n, std::move(p));
  }

  Correspondence transposed() const { return Correspondence(Relation::transposed()); }
};

template <typename SpaceX, typename SpaceY>
void require_relation_between(const SpaceX& X, const SpaceY& Y, const Relation& rel) {
  if (rel.left_size() != X.size() || rel.right_size() != Y.size())
    throw std::invalid_argument("relation does not match the sizes of its spaces");
}

/// dis: the largest | |xx'| - |yy'| | over all pairs of pairs in the relation.
template <typename Scalar, Axioms A, Axioms B>
Scalar distortion(const FiniteSpace<Scalar, A>& X, const FiniteSpace<Scalar, B>& Y, const Relation& rel) {
  require_relation_between(X, Y, rel);
  const auto& p = rel.pairs();
  Scalar worst = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      worst = std::max(worst, std::abs(X(p[a].first, p[b].first) - Y(p[a].second, p[b].second)));
  return worst;
}

/// Hausdorff distance between two relations viewed as subsets of X x Y with
/// the max-metric |(x,y)(x',y')| = max(|xx'|, |yy'|).
template <typename Scalar, Axioms A, Axioms B>
Scalar relation_distance(const FiniteSpace<Scalar, A>& X, const FiniteSpace<Scalar, B>& Y, const Relation& r1,
                         const Relation& r2) {
  require_relation_between(X, Y, r1);
  require_relation_between(X, Y, r2);
  auto product = [&](IndexPair u, IndexPair v) { return std::max(X(u.first, v.first), Y(u.second, v.second)); };
  auto directed = [&](const Relation& from, const Relation& to) {
    Scalar worst = 0;
    for (const auto& u : from.pairs()) {
      Scalar nearest = std::numeric_limits<Scalar>::infinity();
      for (const auto& v : to.pairs()) nearest = std::min(nearest, product(u, v));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(r1, r2), directed(r2, r1));
}

/// Largest grid (n*m cells) the exhaustive enumeration accepts.
inline constexpr Index kEnumerationCap = 20;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(Index n, Index m)
      : std::runtime_error("enumeration cap exceeded: " + std::to_string(n) + "x" + std::to_string(m) + " > " +
                           std::to_string(kEnumerationCap) + " cells") {}
};

/// Every correspondence between an n-point and an m-point set, each exactly
/// once, in increasing order of the bitmask over the row-major n x m grid.
class CorrespondenceRange {
 public:
  CorrespondenceRange(Index n, Index m) : n_(n), m_(m) {
    if (n <= 0 || m <= 0) throw std::invalid_argument("spaces must be nonempty");
    if (n * m > kEnumerationCap) throw CapExceeded(n, m);
    row_mask_ = (std::uint64_t{1} << m) - 1;
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Correspondence;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Correspondence;

    iterator() = default;
    iterator(const CorrespondenceRange* range, std::uint64_t mask) : range_(range), mask_(mask) { settle(); }

    Correspondence operator*() const { return range_->decode(mask_); }
    std::uint64_t mask() const noexcept { return mask_; }
    iterator& operator++() {
      ++mask_;
      settle();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    void settle() {
      while (mask_ < range_->end_mask() && !range_->surjective(mask_)) ++mask_;
    }
    const CorrespondenceRange* range_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  iterator begin() const { return iterator(this, 1); }
  iterator end() const { return iterator(this, end_mask()); }

  /// Decodes a grid bitmask (bit i*m+j set iff (i,j) is present).
  Correspondence decode(std::uint64_t mask) const {
    std::vector<IndexPair> p;
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < m_; ++j)
        if (mask >> (i * m_ + j) & 1U) p.emplace_back(i, j);
    return Correspondence(n_, m_, std::move(p));
  }

 private:
  std::uint64_t end_mask() const noexcept { return std::uint64_t{1} << (n_ * m_); }

  bool surjective(std::uint64_t mask) const noexcept {
    std::uint64_t cols = 0;
    for (Index i = 0; i < n_; ++i) {
      const std::uint64_t row = (mask >> (i * m_)) & row_mask_;
      if (row == 0) return false;
      cols |= row;
    }
    return cols == row_mask_;
  }

  Index n_;
  Index m_;
  std::uint64_t row_mask_;
};

inline CorrespondenceRange enumerate_correspondences(Index n, Index m) { return CorrespondenceRange(n, m); }

}  // namespace ghd
