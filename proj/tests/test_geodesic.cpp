#include "support.hpp"

#include <doctest.h>

using namespace ghd;

TEST_CASE("make_geodesic") {
  test::Rng rng(41);
  const auto x = test::random_euclidean(rng, 4);

  const auto self = make_geodesic(x, x);
  CHECK(self.gh == 0.0);
  CHECK(self.R == Correspondence::identity(4));

  const auto point = make_geodesic(test::one_point(), x);
  CHECK(point.R == Correspondence::full(1, 4));
  CHECK(point.gh == diameter(x) / 2);

  const auto two = make_geodesic(test::two_point(2), test::two_point(5));
  CHECK(two.gh == 1.5);
  CHECK(two.R.size() == 2);

  // The swapped bijection is just as optimal.
  const Correspondence swapped(2, 2, {{0, 1}, {1, 0}});
  CHECK(make_geodesic(test::two_point(2), test::two_point(5), {}, swapped).R == swapped);
  CHECK_THROWS_AS(make_geodesic(test::two_point(2), test::two_point(5), {}, Correspondence::full(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_geodesic(test::random_euclidean(rng, 7), test::random_euclidean(rng, 7), SolverOptions{2}),
                  NotExact);
}

TEST_CASE("sample") {
  const auto curve = make_geodesic(test::two_point(2), test::two_point(5));
  const auto mid = sample(curve, 0.5);
  REQUIRE(mid.size() == 2);
  CHECK(mid(0, 1) == 0.5 * 2 + 0.5 * 5);
  CHECK(mid(0, 1) == 3.5);
  CHECK(is_isometric(sample(curve, 0.0), curve.X));
  CHECK(is_isometric(sample(curve, 1.0), curve.Y));
  CHECK_THROWS_AS(sample(curve, -0.1), DomainError);
  CHECK_THROWS_AS(sample(curve, 1.5), DomainError);
  CHECK_THROWS_AS(sample(curve, std::numeric_limits<double>::quiet_NaN()), DomainError);

  test::Rng rng(42);
  const auto x = test::random_euclidean(rng, 4);
  const auto flat = make_geodesic(x, x);
  for (double t : {0.0, 0.3, 1.0}) CHECK(is_isometric(sample(flat, t), x));
}

TEST_CASE("interior samples are metric spaces on the pairs of R") {
  test::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = test::random_euclidean(rng, test::uniform_index(rng, 1, 4));
    const auto y = test::random_euclidean(rng, test::uniform_index(rng, 1, 4));
    const auto curve = make_geodesic(x, y);
    for (double t : {0.1, 0.5, 0.9}) {
      const auto s = sample(curve, t);
      CHECK(s.size() == curve.R.size());
      CHECK(!find_violation(s.dist(), Axioms::metric));
    }
    CHECK(is_isometric(sample(curve, 0.0), x));
    CHECK(is_isometric(sample(curve, 1.0), y));
  }
}

TEST_CASE("check_geodesic") {
  const std::vector<double> grid{0, 0.25, 0.5, 0.75, 1};
  const auto two = make_geodesic(test::two_point(2), test::two_point(5));
  const auto rep = check_geodesic(two, grid);
  CHECK(rep.entries.size() == 10);
  CHECK(rep.max_deviation <= 1e-9);

  const auto ends = check_geodesic(two, std::vector<double>{0, 1});
  CHECK(ends.max_deviation == 0.0);

  test::Rng rng(44);
  const auto x = test::random_euclidean(rng, 3);
  const auto flat = check_geodesic(make_geodesic(x, x), grid);
  CHECK(flat.max_deviation == 0.0);

  const auto big = make_geodesic(test::random_euclidean(rng, 5), test::random_euclidean(rng, 5));
  GeodesicCheckOptions tight;
  tight.max_pairs = 2;
  CHECK_THROWS_AS(check_geodesic(big, grid, tight), std::invalid_argument);
}
