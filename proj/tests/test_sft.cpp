#include <catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace fixtures;

TEST_CASE("golden mean language and periodic points") {
  auto x = golden_mean();
  const std::uint64_t fib[] = {2, 3, 5, 8, 13, 21, 34, 55};
  for (std::size_t n = 1; n <= 8; ++n) CHECK(count_language(x, n) == fib[n - 1]);
  CHECK(language(x, 4).size() == 8);

  const std::uint64_t lucas[] = {1, 3, 4, 7, 11, 18, 29, 47, 76, 123};
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(count_periodic_points(x, n) == lucas[n - 1]);
    CHECK(periodic_points(x, n).size() == lucas[n - 1]);
  }
}

TEST_CASE("irreducibility, infinity and synchronizing blocks") {
  auto gm = golden_mean();
  CHECK(is_irreducible(gm));
  CHECK(is_infinite(gm));
  CHECK(synchronizing_block(gm) == w("0"));

  auto cycle = Sft::from_forbidden(binary(), 1, {w("00"), w("11")});
  CHECK(is_irreducible(cycle));
  CHECK(!is_infinite(cycle));

  auto red = Sft::from_forbidden(binary(), 1, {w("10")});
  CHECK(!is_irreducible(red));
  CHECK_THROWS_AS(is_infinite(red), PreconditionError);
}

TEST_CASE("presentations trim to essential form") {
  // 1 can never be followed, so it is inessential.
  auto x = Sft::from_forbidden(binary(), 1, {w("10"), w("11")});
  CHECK(count_language(x, 3) == 1);
  CHECK(!x.is_allowed(w("1")));
  CHECK_THROWS_AS(Sft::from_forbidden(binary(), 0, {}), DomainError);
  CHECK_THROWS_AS(Sft::from_forbidden(binary(), 1, {w("111")}), DomainError);
}

TEST_CASE("forbidden blocks of length < m+1 are expanded") {
  auto x = Sft::from_forbidden(binary(), 2, {w("11")});
  auto gm = golden_mean();
  for (std::size_t n = 1; n <= 8; ++n) CHECK(count_language(x, n) == count_language(gm, n));
}

TEST_CASE("cyclic admissibility and eventually periodic points") {
  auto gm = golden_mean();
  CHECK(gm.is_cyclically_allowed(w("010")));
  CHECK(!gm.is_cyclically_allowed(w("101")));
  CHECK(ep_point_admissible(gm, EventuallyPeriodicPoint(w("0"), w("101"), w("0"), -1)));
  CHECK(!ep_point_admissible(gm, EventuallyPeriodicPoint(w("0"), w("11"), w("0"), 0)));
  CHECK(!ep_point_admissible(gm, EventuallyPeriodicPoint(w("01"), w("1"), w("0"), 0)));
}

TEST_CASE("shortest connectors are shortlex least") {
  auto gm = golden_mean();
  CHECK(shortest_connector(gm, w("0"), w("0"), 4) == Word{});
  CHECK(shortest_connector(gm, w("1"), w("1"), 4) == w("0"));
  auto cycle = Sft::from_forbidden(binary(), 1, {w("00"), w("11")});
  CHECK(shortest_connector(cycle, w("0"), w("0"), 4) == w("1"));
  auto red = Sft::from_forbidden(binary(), 1, {w("10")});
  CHECK(!shortest_connector(red, w("1"), w("0"), 6));
}
