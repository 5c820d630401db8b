#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace ghd;

namespace {

// Test-side enumeration of the 2x2 grid: every nonempty subset of the four
// cells, kept when both projections are onto.
std::vector<std::vector<IndexPair>> brute_2x2_correspondences() {
  const IndexPair cells[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::vector<std::vector<IndexPair>> out;
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<IndexPair> s;
    std::set<Index> rows, cols;
    for (int c = 0; c < 4; ++c)
      if (mask & (1 << c)) {
        s.push_back(cells[c]);
        rows.insert(cells[c].first);
        cols.insert(cells[c].second);
      }
    if (rows.size() == 2 && cols.size() == 2) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("relation invariants") {
  CHECK_THROWS_AS(Relation(2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Relation(2, 2, {{0, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Relation(2, 2, {{2, 0}}), std::out_of_range);
  const Relation r(2, 3, {{1, 2}, {0, 1}});
  CHECK(r.pairs() == std::vector<IndexPair>{{0, 1}, {1, 2}});
  CHECK(r.transposed().pairs() == std::vector<IndexPair>{{1, 0}, {2, 1}});
}

TEST_CASE("is_correspondence") {
  CHECK(is_correspondence(Correspondence::full(2, 3)));
  CHECK(!is_correspondence(Relation(2, 2, {{0, 0}})));
  CHECK(is_correspondence(Relation(3, 3, {{0, 2}, {1, 0}, {2, 1}})));
  CHECK_THROWS_AS(Correspondence(2, 2, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("distortion") {
  test::Rng rng(1);
  const auto x = test::random_euclidean(rng, 5);
  CHECK(distortion(x, x, Correspondence::identity(5)) == 0.0);
  CHECK(distortion(test::one_point(), x, Correspondence::full(1, 5)) == diameter(x));
  CHECK(distortion(test::two_point(2), test::two_point(5), Correspondence(2, 2, {{0, 0}, {1, 1}})) == 3.0);
  CHECK(distortion(x, x, Relation(5, 5, {{2, 3}})) == 0.0);
  CHECK_THROWS_AS(distortion(x, x, Relation(4, 5, {{0, 0}})), std::invalid_argument);
}

TEST_CASE("distortion is monotone under inclusion") {
  test::Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = test::uniform_index(rng, 1, 5), m = test::uniform_index(rng, 1, 5);
    const auto x = test::random_euclidean(rng, n);
    const auto y = test::random_euclidean(rng, m);
    const auto big = test::random_relation(rng, n, m, 0.6);
    std::vector<IndexPair> sub;
    for (const auto& p : big.pairs())
      if (rng() % 2) sub.push_back(p);
    if (sub.empty()) sub.push_back(big.pairs().front());
    CHECK(distortion(x, y, Relation(n, m, sub)) <= distortion(x, y, big));
  }
}

TEST_CASE("relation_distance") {
  test::Rng rng(4);
  const auto x = test::random_euclidean(rng, 4);
  const auto y = test::random_euclidean(rng, 3);
  const auto r = test::random_relation(rng, 4, 3);
  CHECK(relation_distance(x, y, r, r) == 0.0);
  CHECK(relation_distance(x, y, Relation(4, 3, {{0, 1}}), Relation(4, 3, {{2, 2}})) ==
        std::max(x(0, 2), y(1, 2)));

  const Relation small(4, 3, {{0, 0}, {1, 1}});
  const Relation large(4, 3, {{0, 0}, {1, 1}, {3, 2}});
  // Containment: only the far side counts.
  const double far = std::min(std::max(x(3, 0), y(2, 0)), std::max(x(3, 1), y(2, 1)));
  CHECK(relation_distance(x, y, small, large) == far);
}

TEST_CASE("distortion is 4-Lipschitz in relation_distance") {
  test::Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = test::uniform_index(rng, 1, 5), m = test::uniform_index(rng, 1, 5);
    const auto x = test::random_euclidean(rng, n);
    const auto y = test::random_euclidean(rng, m);
    const auto a = test::random_relation(rng, n, m);
    const auto b = test::random_relation(rng, n, m);
    CHECK(std::abs(distortion(x, y, a) - distortion(x, y, b)) <= 4 * relation_distance(x, y, a, b) + 1e-12);
  }
}

TEST_CASE("enumerate_correspondences") {
  auto count = [](Index n, Index m) {
    std::size_t c = 0;
    for (const auto& r : enumerate_correspondences(n, m)) {
      CHECK(is_correspondence(r));
      ++c;
    }
    return c;
  };
  CHECK(count(1, 1) == 1);
  CHECK(count(1, 4) == 1);
  CHECK(count(3, 1) == 1);

  const auto expected = brute_2x2_correspondences();
  CHECK(expected.size() == 7);
  std::vector<std::vector<IndexPair>> got;
  for (const auto& r : enumerate_correspondences(2, 2)) got.push_back(r.pairs());
  std::sort(got.begin(), got.end());
  auto want = expected;
  std::sort(want.begin(), want.end());
  CHECK(got == want);

  // Each appears exactly once.
  std::set<std::vector<IndexPair>> unique;
  for (const auto& r : enumerate_correspondences(3, 3)) CHECK(unique.insert(r.pairs()).second);

  CHECK_THROWS_AS(enumerate_correspondences(5, 5), CapExceeded);
  CHECK_NOTHROW(enumerate_correspondences(4, 5));
}

TEST_CASE("closure leaves distortion unchanged on finite spaces") {
  // Every relation between finite spaces is closed in X x Y, so its closure
  // is itself and dis(closure) = dis trivially.
  test::Rng rng(12);
  const auto x = test::random_euclidean(rng, 4);
  const auto y = test::random_euclidean(rng, 4);
  const auto r = test::random_relation(rng, 4, 4);
  const Relation closure(4, 4, r.pairs());
  CHECK(distortion(x, y, closure) == distortion(x, y, r));
}
