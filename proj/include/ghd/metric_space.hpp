#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ghd {

using Index = Eigen::Index;

template <typename Scalar>
using DistanceMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Absolute slack allowed for symmetry and the triangle inequality when
/// validating matrices read from decimal files.
inline constexpr double kMetricTolerance = 1e-9;

enum class Axioms { metric, pseudometric };

enum class ViolationKind {
  Empty,
  NotSquare,
  NonFinite,
  NegativeEntry,
  NonzeroDiagonal,
  Asymmetric,
  ZeroOffDiagonal,
  TriangleViolation,
  LabelCount,
  DuplicateLabel,
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Empty: return "Empty";
    case ViolationKind::NotSquare: return "NotSquare";
    case ViolationKind::NonFinite: return "NonFinite";
    case ViolationKind::NegativeEntry: return "NegativeEntry";
    case ViolationKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ViolationKind::Asymmetric: return "Asymmetric";
    case ViolationKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ViolationKind::TriangleViolation: return "TriangleViolation";
    case ViolationKind::LabelCount: return "LabelCount";
    case ViolationKind::DuplicateLabel: return "DuplicateLabel";
  }
  return "Unknown";
}

/// First axiom a candidate distance matrix fails. Unused indices are -1;
/// TriangleViolation(i,j,k) means dist(i,k) > dist(i,j) + dist(j,k).
struct Violation {
  ViolationKind kind;
  Index i = -1;
  Index j = -1;
  Index k = -1;

  std::vector<Index> indices() const {
    std::vector<Index> out;
    for (Index v : {i, j, k})
      if (v >= 0) out.push_back(v);
    return out;
  }

  std::string describe() const {
    std::string s = to_string(kind);
    const auto idx = indices();
    if (!idx.empty()) {
      s += '(';
      for (std::size_t n = 0; n < idx.size(); ++n) {
        if (n) s += ',';
        s += std::to_string(idx[n]);
      }
      s += ')';
    }
    return s;
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

class MetricError : public std::runtime_error {
 public:
  explicit MetricError(Violation v)
      : std::runtime_error("invalid distance matrix: " + v.describe()), violation_(v) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

/// Checks the axioms in a fixed order (shape, finiteness, sign, diagonal,
/// symmetry, positivity, triangle) and reports the first failure in
/// row-major index order.
template <typename Derived>
std::optional<Violation> find_violation(const Eigen::MatrixBase<Derived>& d, Axioms axioms,
                                        double tol = kMetricTolerance) {
  const Index n = d.rows();
  if (n == 0 && d.cols() == 0) return Violation{ViolationKind::Empty};
  if (d.cols() != n) return Violation{ViolationKind::NotSquare};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (!std::isfinite(static_cast<double>(d(i, j)))) return Violation{ViolationKind::NonFinite, i, j};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (d(i, j) < 0) return Violation{ViolationKind::NegativeEntry, i, j};
  for (Index i = 0; i < n; ++i)
    if (d(i, i) != 0) return Violation{ViolationKind::NonzeroDiagonal, i, i};
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (std::abs(d(i, j) - d(j, i)) > tol) return Violation{ViolationKind::Asymmetric, i, j};
  if (axioms == Axioms::metric) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (d(i, j) == 0 || d(j, i) == 0) return Violation{ViolationKind::ZeroOffDiagonal, i, j};
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        if (d(i, k) > d(i, j) + d(j, k) + tol) return Violation{ViolationKind::TriangleViolation, i, j, k};
  return std::nullopt;
}

inline std::vector<std::string> default_labels(Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

/// A finite set of labelled points with a validated distance matrix.
///
/// The matrix is checked against the metric (or pseudometric) axioms on
/// construction and symmetrized by averaging mirrored entries, so every
/// instance satisfies symmetry exactly and the triangle inequality up to
/// the construction tolerance. Instances are immutable.
template <typename Scalar, Axioms A>
class FiniteSpace {
 public:
  using Matrix = DistanceMatrix<Scalar>;
  static constexpr Axioms axioms = A;

  explicit FiniteSpace(Matrix dist, std::vector<std::string> labels = {}, double tol = kMetricTolerance)
      : dist_(std::move(dist)), labels_(std::move(labels)) {
    if (auto v = find_violation(dist_, A, tol)) throw MetricError(*v);
    dist_ = ((dist_ + dist_.transpose()) / Scalar(2)).eval();
    if (labels_.empty()) labels_ = default_labels(dist_.rows());
    if (static_cast<Index>(labels_.size()) != dist_.rows()) throw MetricError(Violation{ViolationKind::LabelCount});
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!seen.insert(labels_[i]).second)
        throw MetricError(Violation{ViolationKind::DuplicateLabel, static_cast<Index>(i)});
  }

  /// Every metric space is a pseudometric space.
  template <Axioms B>
    requires(A == Axioms::pseudometric && B == Axioms::metric)
  FiniteSpace(const FiniteSpace<Scalar, B>& other)  // NOLINT(google-explicit-constructor)
      : dist_(other.dist()), labels_(other.labels()) {}

  /// Wraps a matrix already known to satisfy the axioms (restrictions and
  /// quotients of validated spaces).
  static FiniteSpace trusted(Matrix dist, std::vector<std::string> labels) {
    FiniteSpace s;
    s.dist_ = std::move(dist);
    s.labels_ = std::move(labels);
    return s;
  }

  Index size() const noexcept { return dist_.rows(); }
  const Matrix& dist() const noexcept { return dist_; }
  Scalar operator()(Index i, Index j) const { return dist_(i, j); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }

  /// Largest distance from point i.
  Scalar eccentricity(Index i) const { return dist_.row(i).maxCoeff(); }

 private:
  FiniteSpace() = default;

  Matrix dist_;
  std::vector<std::string> labels_;
};

template <typename Scalar = double>
using MetricSpace = FiniteSpace<Scalar, Axioms::metric>;
template <typename Scalar = double>
using PseudoMetricSpace = FiniteSpace<Scalar, Axioms::pseudometric>;

using FiniteMetricSpace = MetricSpace<double>;
using FinitePseudoMetricSpace = PseudoMetricSpace<double>;

inline FiniteMetricSpace validate_metric(DistanceMatrix<double> matrix, std::vector<std::string> labels = {},
                                         double tol = kMetricTolerance) {
  return FiniteMetricSpace(std::move(matrix), std::move(labels), tol);
}

inline FinitePseudoMetricSpace validate_pseudometric(DistanceMatrix<double> matrix,
                                                     std::vector<std::string> labels = {},
                                                     double tol = kMetricTolerance) {
  return FinitePseudoMetricSpace(std::move(matrix), std::move(labels), tol);
}

template <typename Scalar, Axioms A>
Scalar diameter(const FiniteSpace<Scalar, A>& space) {
  return space.dist().maxCoeff();
}

/// Nonempty sorted set of point indices of a space with `parent_size` points.
class Subset {
 public:
  Subset(Index parent_size, std::vector<Index> indices) : parent_size_(parent_size), indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (indices_.empty()) throw std::invalid_argument("subset must be nonempty");
    if (indices_.front() < 0 || indices_.back() >= parent_size_)
      throw std::out_of_range("subset index out of range");
  }

  static Subset all(Index n) {
    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index{0});
    return Subset(n, std::move(idx));
  }

  static Subset range(Index parent_size, Index first, Index last) {
    std::vector<Index> idx;
    for (Index i = first; i < last; ++i) idx.push_back(i);
    return Subset(parent_size, std::move(idx));
  }

  Index parent_size() const noexcept { return parent_size_; }
  const std::vector<Index>& indices() const noexcept { return indices_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  bool contains(Index i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  Index parent_size_;
  std::vector<Index> indices_;
};

template <typename Space>
void require_subset_of(const Space& space, const Subset& s) {
  if (s.parent_size() != space.size()) throw std::invalid_argument("subset belongs to a space of different size");
}

template <typename Scalar, Axioms A>
FiniteSpace<Scalar, A> subspace(const FiniteSpace<Scalar, A>& space, const Subset& subset) {
  require_subset_of(space, subset);
  const auto& idx = subset.indices();
  const Index k = subset.size();
  DistanceMatrix<Scalar> d(k, k);
  std::vector<std::string> labels;
  labels.reserve(idx.size());
  for (Index a = 0; a < k; ++a) {
    labels.push_back(space.label(idx[a]));
    for (Index b = 0; b < k; ++b) d(a, b) = space(idx[a], idx[b]);
  }
  return FiniteSpace<Scalar, A>::trusted(std::move(d), std::move(labels));
}

template <typename Scalar>
struct Quotient {
  MetricSpace<Scalar> space;
  /// Class index of each original point.
  std::vector<Index> projection;
};

/// Collapses points at exactly zero distance. Classes are numbered in order
/// of their smallest member, which also serves as the representative whose
/// row supplies the induced distances.
template <typename Scalar, Axioms A>
Quotient<Scalar> quotient(const FiniteSpace<Scalar, A>& space) {
  const Index n = space.size();
  std::vector<Index> proj(static_cast<std::size_t>(n), -1);
  std::vector<Index> reps;
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) {
    if (proj[i] >= 0) continue;
    const Index cls = static_cast<Index>(reps.size());
    reps.push_back(i);
    std::string label = space.label(i);
    proj[i] = cls;
    for (Index j = i + 1; j < n; ++j) {
      if (proj[j] < 0 && space(i, j) == 0) {
        proj[j] = cls;
        label += '=';
        label += space.label(j);
      }
    }
    labels.push_back(std::move(label));
  }
  const Index k = static_cast<Index>(reps.size());
  DistanceMatrix<Scalar> d(k, k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) d(a, b) = space(reps[a], reps[b]);
  return {MetricSpace<Scalar>::trusted(std::move(d), std::move(labels)), std::move(proj)};
}

namespace detail {

template <typename Scalar>
bool rows_match(const std::vector<Scalar>& a, const std::vector<Scalar>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

template <typename Scalar, Axioms A>
std::vector<std::vector<Scalar>> sorted_rows(const FiniteSpace<Scalar, A>& s) {
  std::vector<std::vector<Scalar>> rows(static_cast<std::size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) {
    rows[i].reserve(static_cast<std::size_t>(s.size()));
    for (Index j = 0; j < s.size(); ++j) rows[i].push_back(s(i, j));
    std::sort(rows[i].begin(), rows[i].end());
  }
  return rows;
}

}  // namespace detail

/// Searches for a bijection X -> Y preserving all distances within `tol`.
/// Candidates for each point are restricted to points with a matching sorted
/// distance row, then extended by backtracking. Returns witness[x] = y.
template <typename Scalar, Axioms A>
std::optional<std::vector<Index>> is_isometric(const FiniteSpace<Scalar, A>& X, const FiniteSpace<Scalar, A>& Y,
                                               double tol = kMetricTolerance) {
  const Index n = X.size();
  if (Y.size() != n) return std::nullopt;
  if (std::abs(diameter(X) - diameter(Y)) > tol) return std::nullopt;

  const auto rx = detail::sorted_rows(X);
  const auto ry = detail::sorted_rows(Y);
  std::vector<std::vector<Index>> candidates(static_cast<std::size_t>(n));
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y)
      if (detail::rows_match(rx[x], ry[y], tol)) candidates[x].push_back(y);
    if (candidates[x].empty()) return std::nullopt;
  }

  // Most constrained points first.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return candidates[a].size() < candidates[b].size(); });

  std::vector<Index> image(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  auto extend = [&](auto&& self, Index level) -> bool {
    if (level == n) return true;
    const Index x = order[level];
    for (Index y : candidates[x]) {
      if (used[y]) continue;
      bool ok = true;
      for (Index l = 0; l < level && ok; ++l) {
        const Index xp = order[l];
        ok = std::abs(X(x, xp) - Y(y, image[xp])) <= tol;
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (self(self, level + 1)) return true;
      used[y] = false;
      image[x] = -1;
    }
    return false;
  };

  if (!extend(extend, 0)) return std::nullopt;
  return image;
}

}  // namespace ghd
