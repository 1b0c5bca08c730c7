#include <catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "shiftflip/constructions.hpp"

using namespace fixtures;

namespace {

const TwistData& gm_data() {
  static const TwistData d = twist_data(golden_mean(), rho(), 0);
  return d;
}

Sequence seq(const EventuallyPeriodicPoint& p) { return p.sequence(); }

/// Random admissible golden mean points built from marker blocks, their
/// starred forms and short filler.
std::vector<EventuallyPeriodicPoint> marker_points(std::size_t count) {
  const auto& d = gm_data();
  std::mt19937 rng(7);
  std::vector<Word> pieces = {d.marker_plain, d.marker_star, w("0"), w("00"), w("010"), w("0100")};
  std::vector<EventuallyPeriodicPoint> out;
  for (std::size_t k = 0; k < count; ++k) {
    Word center;
    const std::size_t parts = 2 + rng() % 5;
    for (std::size_t t = 0; t < parts; ++t) {
      const auto& p = pieces[rng() % pieces.size()];
      center.insert(center.end(), p.begin(), p.end());
    }
    const auto start = -static_cast<std::int64_t>(rng() % center.size());
    out.emplace_back(w("0"), center, k % 2 ? w("0") : w("01"), start);
  }
  return out;
}

}  // namespace

TEST_CASE("block search on the golden mean") {
  auto x = golden_mean();
  auto blk = block_triple(x, 0);
  CHECK(blk.a.empty());
  CHECK(blk.b == w("1"));
  auto chk = verify_block_triple(x, blk);
  CHECK(chk.ok());
  CHECK(chk.periodic_points_checked == 1);
  CHECK_THROWS_AS(block_triple(x, 5), DomainError);
  CHECK_THROWS_AS(block_triple(Sft::from_forbidden(binary(), 1, {w("10")}), 0), PreconditionError);
  CHECK(!verify_block_triple(x, {0, {}, w("0")}).ok());
}

TEST_CASE("block search on the full shift") {
  auto blk = block_triple(full2(), 0);
  CHECK(blk.a.empty());
  CHECK(blk.b == w("1"));
  CHECK(verify_block_triple(full2(), blk).ok());
}

TEST_CASE("A(phi) witness from a fixed finitary symbol") {
  auto x = golden_mean();
  auto wit = fixed_symbol_witness(x, rho(), 0);
  CHECK(wit.n_rep == 6);
  CHECK(wit.w == concat({w("0"), w("0101"), repeat(w("0"), 12)}));
  CHECK(wit.w.size() == 17);
  CHECK(wit.half == 8);
  CHECK(ep_point_admissible(x, wit.y));
  CHECK(wit.membership.in);
  // N is minimal: N - 1 fails the inequality
  CHECK(2 * 0 + 1 + 2 * (1 + 1) > (wit.n_rep - 2) * 1);
  CHECK_THROWS_AS(fixed_symbol_witness(full2(), swap01(), 0), PreconditionError);
}

TEST_CASE("case split: golden mean routes through the fixed-symbol witness") {
  auto pc = branch_witness(golden_mean(), rho());
  CHECK(pc.branch == WitnessBranch::kFlip);
  CHECK(pc.w == w("0"));
  CHECK(pc.fixed_symbol.has_value());
  CHECK(pc.membership.in);
  CHECK(pc.chain.empty());
}

TEST_CASE("case split: non-palindromic odd block gives A(phi)") {
  auto pc = branch_witness(full2(), swap01());
  CHECK(pc.branch == WitnessBranch::kFlip);
  CHECK(pc.w == w("0"));
  CHECK(!pc.fixed_symbol);
  CHECK(pc.membership.in);
}

TEST_CASE("case split: even block gives A(sigma phi)") {
  Alphabet a({"0", "1", "2"});
  auto x = Sft::from_forbidden(a, 1, {a.parse("10")});
  OneBlockFlip tau{SymbolInvolution({1, 0, 2})};
  REQUIRE(validate_flip(x, tau.sliding()).valid());
  auto pc = branch_witness(x, tau);
  CHECK(pc.branch == WitnessBranch::kShiftFlip);
  CHECK(pc.w == a.parse("12"));
  CHECK(pc.membership.in);
  CHECK(pc.branch_flip.radius() == 1);
}

TEST_CASE("case split lifts long synchronizing blocks") {
  auto x = Sft::from_forbidden(binary(), 2, {w("111"), w("101")});
  REQUIRE(is_irreducible(x));
  auto pc = branch_witness(x, rho());
  CHECK(pc.membership.in);
  REQUIRE(pc.chain.size() == 1);
  CHECK(std::get<HigherBlockCode>(pc.chain[0]).block_length == 3);
}

TEST_CASE("twisting data on the golden mean") {
  const auto& d = gm_data();
  CHECK(d.c == w("001"));
  CHECK(d.n_rep == 8);
  CHECK(d.d == w("0100000000"));
  CHECK(star_word(d.d, d.phi.tau) == w("0000000010"));
  CHECK(d.alpha == 1);
  CHECK(d.beta == 11);
  CHECK(d.connector.empty());
  CHECK(d.period == 46);
  CHECK(d.half == 34);
  CHECK(static_cast<std::int64_t>(d.c.size() + 2 * d.d.size()) + d.period == 2 * d.half + 1);
  CHECK(d.psi_radius() == 12);
}

TEST_CASE("markers of the witness") {
  const auto& d = gm_data();
  auto z = [&](std::int64_t i) { return d.z.at(i); };
  CHECK(markers(d, z, -d.half, d.half) == std::vector<std::int64_t>{-23, 0, 23});
  auto zeros = [](std::int64_t) { return Sym{0}; };
  CHECK(markers(d, zeros, -50, 50).empty());

  auto broken = d;
  broken.marker_plain = Word(broken.marker_plain.size(), 0);
  CHECK_THROWS_AS(markers(broken, zeros, 0, 10), ConsistencyError);
}

TEST_CASE("theta on the witness") {
  const auto& d = gm_data();
  const auto n = d.period;
  auto hn = IndexSet::half_period(n);
  CHECK(theta_periodic(d, hn, d.z) == d.z);
  CHECK(theta_periodic(d, IndexSet::empty(), d.z) == d.z);

  auto all = theta_periodic(d, IndexSet::all(), d.z);
  std::vector<std::int64_t> diff;
  for (std::int64_t i = 0; i < n; ++i)
    if (all.at(i) != d.z.at(i)) diff.push_back(i);
  // the centers c = 001 at 0 and n/2 become c* = 100
  CHECK(diff == std::vector<std::int64_t>{1, 22, 24, 45});
}

TEST_CASE("periodic and lazy theta agree") {
  const auto& d = gm_data();
  for (std::int64_t n : {23, 46}) {
    auto hn = IndexSet::half_period(n);
    PeriodicPoint p = d.z;
    auto lazy = theta(d, hn, p.sequence());
    auto per = theta_periodic(d, hn, p);
    for (std::int64_t i = -2 * n; i <= 2 * n; ++i) CHECK(lazy(i) == per.at(i));
  }
}

TEST_CASE("property: theta algebra") {
  const auto& d = gm_data();
  const auto phi = rho().sliding();
  std::vector<IndexSet> sets = {IndexSet::all(), IndexSet::empty()};
  for (std::int64_t n = 2; n <= 8; ++n) sets.push_back(IndexSet::half_period(n));
  sets.push_back(IndexSet::translate(3, IndexSet::half_period(5)));
  sets.push_back(IndexSet::negate(IndexSet::half_period(6)));
  sets.push_back(IndexSet::half_period_complement(7));
  const std::int64_t k = 60;
  for (const auto& p : marker_points(24)) {
    auto x = seq(p);
    for (const auto& a : sets) {
      auto ta = theta(d, a, x);
      auto tta = theta(d, a, ta);
      auto sigma_ta = [&](std::int64_t i) { return ta(i + 1); };
      auto ta_sigma = theta(d, IndexSet::translate(-1, a), [&](std::int64_t i) { return x(i + 1); });
      auto phi_ta = apply_flip(phi, ta);
      auto tna_phi = theta(d, IndexSet::negate(a), apply_flip(phi, x));
      for (std::int64_t i = -k; i <= k; ++i) {
        CHECK(tta(i) == x(i));
        CHECK(sigma_ta(i) == ta_sigma(i));
        CHECK(phi_ta(i) == tna_phi(i));
      }
      for (const auto& b : {sets[2], sets[5], sets[9]}) {
        auto tab = theta(d, a, theta(d, b, x));
        auto tsd = theta(d, IndexSet::symmdiff(a, b), x);
        for (std::int64_t i = -k; i <= k; ++i) CHECK(tab(i) == tsd(i));
      }
    }
  }
}

TEST_CASE("theta preserves admissibility and markers") {
  const auto& d = gm_data();
  auto x = golden_mean();
  for (const auto& p : marker_points(20)) {
    auto t = theta(d, IndexSet::all(), p.sequence());
    Word win;
    for (std::int64_t i = -80; i <= 80; ++i) win.push_back(t(i));
    CHECK(x.is_allowed(win));
    auto orig = p.sequence();
    CHECK(markers(d, t, -60, 60) == markers(d, orig, -60, 60));
  }
}

TEST_CASE("tabulated twisted rule matches the procedural rule") {
  const auto& d = gm_data();
  std::size_t mismatches = 0;
  for_each_block(golden_mean(), static_cast<std::size_t>(2 * d.psi_radius() + 1), [&](const Word& u) {
    if (d.psi.eval(u) != psi_rule(d, u)) ++mismatches;
  });
  CHECK(mismatches == 0);
  CHECK(d.psi.table().size() == 12);
}

TEST_CASE("twisted fixed-point count matches brute force") {
  const auto& d = gm_data();
  for (std::size_t n = 1; n <= 20; ++n) CHECK(count_psi_fixed(d, n) == count_fixed_bruteforce(golden_mean(), d.psi, n));
}

TEST_CASE("twisted flip fixes theta_n of fixed points") {
  const auto& d = gm_data();
  for (std::size_t n = 1; n <= 16; ++n) {
    auto hn = IndexSet::half_period(static_cast<std::int64_t>(n));
    for_each_symmetric_point(golden_mean(), d.phi.tau, 0, n, {}, [&](const Word& u) {
      auto q = theta_periodic(d, hn, PeriodicPoint{u});
      CHECK(apply_flip_periodic(d.psi, q) == q);
    });
  }
}
