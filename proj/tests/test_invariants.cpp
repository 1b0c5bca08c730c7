#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "shiftflip/invariants.hpp"

using namespace fixtures;

TEST_CASE("golden mean reversal F-vector") {
  auto f = fvector(golden_mean(), rho().sliding(), 12);
  CHECK(f.counts == std::vector<std::uint64_t>{1, 3, 2, 5, 3, 8, 5, 13, 8, 21, 13, 34});
  CHECK(f.divisibility_nested());
  auto fs = fvector(golden_mean(), compose_shift(golden_mean(), rho().sliding(), 1), 12);
  CHECK(fs.counts == std::vector<std::uint64_t>{1, 1, 2, 1, 3, 2, 5, 3, 8, 5, 13, 8});
}

TEST_CASE("reflection counting matches brute force") {
  for (auto x : {golden_mean(), full2()})
    for (auto phi : {rho().sliding(), compose_shift(x, rho().sliding(), 1), compose_shift(x, rho().sliding(), -2)})
      CHECK(fvector(x, phi, 12) == fvector_bruteforce(x, phi, 12));
  CHECK(fvector(full2(), swap01().sliding(), 12) == fvector_bruteforce(full2(), swap01().sliding(), 12));
  CHECK(fvector(full2(), rho().sliding(), 1).at(1) == 2);
}

TEST_CASE("fixed point oracle by filtering all words") {
  auto x = full2();
  auto phi = swap01().sliding();
  for (std::size_t n = 1; n <= 10; ++n) {
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
      Word u(n);
      for (std::size_t k = 0; k < n; ++k) u[k] = static_cast<Sym>((code >> k) & 1);
      PeriodicPoint p{u};
      if (apply_flip_periodic(phi, p) == p) ++count;
    }
    CHECK(fvector(x, phi, n).at(n) == count);
  }
}

TEST_CASE("A(phi) membership") {
  auto gm = golden_mean();
  auto phi = rho().sliding();
  auto in = a_membership(gm, phi, EventuallyPeriodicPoint(w("0"), w("01"), w("0"), 0));
  CHECK(in.in);
  CHECK(in.finite_difference);
  CHECK(in.difference == std::vector<std::int64_t>{-1, 1});

  auto fixed = a_membership(gm, phi, EventuallyPeriodicPoint(w("0"), w("101"), w("0"), -1));
  CHECK(!fixed.in);
  CHECK(fixed.finite_difference);

  auto infinite = a_membership(gm, phi, EventuallyPeriodicPoint(w("0"), {}, w("01"), 0));
  CHECK(!infinite.in);
  CHECK(!infinite.finite_difference);

  CHECK_THROWS_AS(a_membership(gm, phi, EventuallyPeriodicPoint(w("0"), w("11"), w("0"), 0)), PreconditionError);
}

TEST_CASE("non-conjugacy certificates") {
  FVector a{{1, 3, 2}}, b{{1, 1, 2}};
  auto c = certify_nonconjugate(a, b);
  REQUIRE(c);
  CHECK(c->n == 2);
  CHECK(c->first == 3);
  CHECK(c->second == 1);
  auto back = certify_nonconjugate(b, a);
  REQUIRE(back);
  CHECK(back->n == c->n);
  CHECK(!certify_nonconjugate(a, a));
  CHECK_THROWS_AS(certify_nonconjugate(a, FVector{{1}}), DomainError);
}

TEST_CASE("property: conjugate flips share F-vectors") {
  // sigma^k rho and sigma^(k+2) rho are conjugate through sigma.
  auto x = golden_mean();
  for (int k = -2; k <= 1; ++k) {
    auto a = compose_shift(x, rho().sliding(), k);
    auto b = compose_shift(x, rho().sliding(), k + 2);
    CHECK(fvector(x, a, 10) == fvector(x, b, 10));
  }
}
