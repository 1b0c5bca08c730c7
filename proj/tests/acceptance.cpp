// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shiftflip/coded_w.hpp"
#include "shiftflip/constructions.hpp"
#include "shiftflip/separation.hpp"

using namespace shiftflip;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

const Alphabet kBinary({"0", "1"});
Word bw(std::string_view s) { return kBinary.parse(s); }
Sft golden_mean() { return Sft::from_forbidden(kBinary, 1, {bw("11")}); }
Sft full2() { return Sft::full_shift(kBinary); }
OneBlockFlip rho() { return OneBlockFlip{SymbolInvolution::identity(2)}; }
OneBlockFlip swap01() { return OneBlockFlip{SymbolInvolution({1, 0})}; }

struct System {
  const char* label;
  Sft space;
  OneBlockFlip flip;
};

std::vector<System> three_systems() {
  return {{"golden mean + reversal", golden_mean(), rho()},
          {"full 2-shift + reversal", full2(), rho()},
          {"full 2-shift + swap", full2(), swap01()}};
}

/// Counts period-n points fixed by phi by filtering every word of A^n.
std::uint64_t oracle_fixed(const Sft& x, const SlidingFlip& phi, std::size_t n) {
  const std::size_t k = x.alphabet().size();
  Word u(n, 0);
  std::uint64_t count = 0;
  while (true) {
    if (x.is_cyclically_allowed(u)) {
      PeriodicPoint p{u};
      bool fixed = true;
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(n) && fixed; ++i) {
        Word win;
        for (std::int64_t t = -phi.radius(); t <= phi.radius(); ++t) win.push_back(p.at(-i + t));
        fixed = phi.eval(win) == p.at(i);
      }
      if (fixed) ++count;
    }
    std::size_t pos = n;
    while (pos > 0 && u[pos - 1] + 1 == k) u[--pos] = 0;
    if (pos == 0) break;
    ++u[pos - 1];
  }
  return count;
}

Outcome flip_axioms() {
  Outcome o;
  std::size_t points = 0;
  for (const auto& s : three_systems()) {
    auto phi = s.flip.sliding();
    if (!validate_flip(s.space, phi).valid()) {
      o.pass = false;
      o.detail += std::string(s.label) + " fails validation; ";
    }
    for (std::size_t n = 1; n <= 10; ++n)
      for (const auto& p : periodic_points(s.space, n)) {
        ++points;
        auto q = apply_flip_periodic(phi, p);
        if (apply_flip_periodic(phi, q) != p || apply_flip_periodic(phi, p.shifted(1)) != q.shifted(-1)) {
          o.pass = false;
          o.detail += std::string(s.label) + " fails on a period " + std::to_string(n) + " point; ";
        }
      }
  }
  o.detail += "3 flips validated, " + std::to_string(points) + " periodic points checked";
  return o;
}

Outcome fvector_oracle() {
  Outcome o;
  for (const auto& s : three_systems()) {
    auto phi = s.flip.sliding();
    auto f = fvector(s.space, phi, 12);
    for (std::size_t n = 1; n <= 12; ++n)
      if (f.at(n) != oracle_fixed(s.space, phi, n)) {
        o.pass = false;
        o.detail += std::string(s.label) + " differs at n=" + std::to_string(n) + "; ";
      }
  }
  auto gm = fvector(golden_mean(), rho().sliding(), 2);
  if (gm.at(1) != 1 || gm.at(2) != 3) o.pass = false;
  o.detail += "n<=12 on 3 systems; golden mean: |F(1)|=" + std::to_string(gm.at(1)) + ", |F(2)|=" + std::to_string(gm.at(2));
  return o;
}

Outcome block_search() {
  auto x = golden_mean();
  auto blk = block_triple(x, 0);
  auto chk = verify_block_triple(x, blk);
  bool absent = true;
  for (const auto& p : periodic_points(x, 1)) {
    Word ext = repeat(p.word, 4);
    absent = absent && !contains_factor(ext, bw("010"));
  }
  Outcome o;
  o.pass = blk.a.empty() && blk.b == bw("1") && chk.ok() && absent && chk.periodic_points_checked == 1;
  o.detail = "a=\"" + kBinary.format(blk.a) + "\", b=\"" + kBinary.format(blk.b) + "\", " +
             std::to_string(chk.periodic_points_checked) + " 1-periodic point checked for 010";
  return o;
}

Outcome witness_case_split() {
  auto x = golden_mean();
  auto pc = branch_witness(x, rho());
  Outcome o;
  if (!pc.fixed_symbol) return {false, "case split did not use the fixed-symbol witness"};
  const auto& wt = *pc.fixed_symbol;
  const auto la = static_cast<std::int64_t>(wt.blocks.a.size());
  const auto lb = static_cast<std::int64_t>(wt.blocks.b.size());
  auto holds = [&](std::int64_t n) { return 2 * la + 1 + 2 * (lb + 1) <= (n - 1) * (la + 1); };
  const bool minimal = holds(wt.n_rep) && (wt.n_rep == 1 || !holds(wt.n_rep - 1));
  o.pass = ep_point_admissible(x, pc.witness) && pc.membership.in && pc.membership.finite_difference &&
           !pc.membership.difference.empty() && static_cast<std::int64_t>(wt.w.size()) == 2 * wt.half + 1 &&
           minimal && wt.n_rep == 6 && pc.branch == WitnessBranch::kFlip;
  o.detail = std::string(to_string(pc.branch)) + ", N=" + std::to_string(wt.n_rep) + ", |w|=" +
             std::to_string(wt.w.size()) + ", M=" + std::to_string(wt.half) + ", |difference|=" +
             std::to_string(pc.membership.difference.size());
  return o;
}

Outcome twisted_flip() {
  auto x = golden_mean();
  auto rep = twist_flip(x, rho(), 0);
  const auto& d = rep.data;
  const auto n = static_cast<std::size_t>(d.period);
  bool dominated = rep.horizon >= n;
  for (std::size_t k = 1; k <= rep.horizon; ++k) dominated = dominated && rep.f_phi.at(k) <= rep.f_psi.at(k);
  Outcome o;
  o.pass = rep.psi_validation.valid() && dominated && rep.f_psi.at(n) >= rep.f_phi.at(n) + 1 &&
           rep.theta_n_z_fixed_by_psi && !rep.z_fixed_by_phi && d.alpha == 1 && d.beta == 11 &&
           rep.a_membership_psi.in;
  std::ostringstream s;
  s << "c=" << kBinary.format(d.c) << ", N=" << d.n_rep << ", alpha=" << d.alpha << ", beta=" << d.beta
    << ", n=" << n << "; psi radius " << d.psi_radius() << " valid (" << rep.psi_validation.method << ", "
    << rep.psi_validation.blocks_checked << " blocks); |F(phi;" << n << ")|=" << rep.f_phi.at(n) << " < |F(psi;" << n
    << ")|=" << rep.f_psi.at(n) << "; " << rep.clause_i_points << " fixed points mapped into F(psi)";
  o.detail = s.str();
  return o;
}

std::vector<EventuallyPeriodicPoint> theta_points(const TwistData& d) {
  std::mt19937 rng(11);
  std::vector<Word> pieces = {d.marker_plain, d.marker_star, bw("0"), bw("00"), bw("010")};
  std::vector<EventuallyPeriodicPoint> out;
  out.emplace_back(bw("0"), d.z.word, bw("0"), -d.beta);
  for (int k = 0; k < 23; ++k) {
    Word center;
    for (std::size_t t = 0, parts = 2 + rng() % 5; t < parts; ++t) {
      const auto& p = pieces[rng() % pieces.size()];
      center.insert(center.end(), p.begin(), p.end());
    }
    out.emplace_back(bw("0"), center, k % 2 ? bw("0") : bw("010"), -static_cast<std::int64_t>(rng() % center.size()));
  }
  return out;
}

Outcome theta_algebra() {
  auto d = twist_data(golden_mean(), rho(), 0);
  const auto phi = rho().sliding();
  std::vector<IndexSet> sets = {IndexSet::all()};
  for (std::int64_t n = 2; n <= 8; ++n) sets.push_back(IndexSet::half_period(n));
  sets.push_back(IndexSet::translate(2, IndexSet::half_period(5)));
  sets.push_back(IndexSet::translate(-3, IndexSet::half_period(8)));
  sets.push_back(IndexSet::negate(IndexSet::half_period(7)));
  sets.push_back(IndexSet::negate(IndexSet::translate(1, IndexSet::half_period(4))));
  const std::int64_t k = 64;
  std::uint64_t checks = 0, failures = 0;
  auto points = theta_points(d);
  for (const auto& p : points) {
    auto x = p.sequence();
    for (const auto& a : sets) {
      auto ta = theta(d, a, x);
      auto tta = theta(d, a, ta);
      auto ta_sigma = theta(d, IndexSet::translate(-1, a), [&](std::int64_t i) { return x(i + 1); });
      auto phi_ta = apply_flip(phi, ta);
      auto tna_phi = theta(d, IndexSet::negate(a), apply_flip(phi, x));
      for (std::int64_t i = -k; i <= k; ++i) {
        checks += 3;
        failures += tta(i) != x(i);
        failures += ta(i + 1) != ta_sigma(i);
        failures += phi_ta(i) != tna_phi(i);
      }
      for (const auto& b : sets) {
        auto tab = theta(d, a, theta(d, b, x));
        auto tsd = theta(d, IndexSet::symmdiff(a, b), x);
        for (std::int64_t i = -k; i <= k; ++i) {
          ++checks;
          failures += tab(i) != tsd(i);
        }
      }
    }
  }
  return {failures == 0, std::to_string(points.size()) + " points, " + std::to_string(sets.size()) + " index sets, " +
                             std::to_string(checks) + " coordinate checks, " + std::to_string(failures) + " failures"};
}

Outcome separation_driver() {
  auto rep = separate_flips(golden_mean(), rho().sliding(), 3);
  Outcome o;
  const bool full = rep.separated() && rep.stages.size() == 3 && rep.certificates.size() == 3;
  const bool fallback = rep.halt && rep.stages.size() >= 2 && !rep.certificates.empty() && rep.certificates[0].certificate;
  o.pass = full || fallback;
  std::ostringstream s;
  s << rep.stages.size() << " flips [";
  for (std::size_t i = 0; i < rep.stages.size(); ++i) s << (i ? "; " : "") << rep.stages[i].origin;
  s << "], certificates at n =";
  for (const auto& c : rep.certificates) s << " " << (c.certificate ? std::to_string(c.certificate->n) : "none");
  if (rep.halt) s << "; twisting halted: " << *rep.halt;
  o.detail = s.str();
  return o;
}

Outcome recoding() {
  auto x = golden_mean();
  const auto phi = rho().sliding();
  const auto sphi = compose_shift(x, phi, 1);
  Outcome o;
  auto rc = recode_one_block(x, phi);
  for (std::size_t n = 1; n <= 8; ++n)
    if (count_language(rc.space, n) != count_language(x, n)) o.pass = false;
  const auto f = fvector(x, phi, 10), fs = fvector(x, sphi, 10);
  if (fvector(rc.space, rc.flip.sliding(), 10) != f) o.pass = false;
  auto rs = recode_one_block(x, sphi);
  if (fvector(rs.space, rs.flip.sliding(), 10) != fs) o.pass = false;
  auto h3 = higher_block(x, rho(), 3), h2 = higher_block(x, rho(), 2);
  if (fvector(h3.space, h3.flip.sliding(), 10) != f) o.pass = false;
  if (fvector(h2.space, h2.flip.sliding(), 10) != fs) o.pass = false;
  o.detail = "|B_n| equal for n<=8; F-vectors equal for n<=10 (recoded phi, recoded sigma phi, 3-block = phi, 2-block = sigma phi)";
  return o;
}

Outcome stability() {
  Outcome o;
  for (std::int64_t n = 1; n <= 64; ++n) {
    const auto len = static_cast<std::size_t>(n);
    if (!w::is_stable(Word(len, 0)) || w::is_stable(Word(len, 1)) != w::in_I(n) || w::is_stable(Word(len, 2)) == w::in_I(n))
      o.pass = false;
  }
  if (w::is_stable("12") || w::is_stable("21")) o.pass = false;
  auto rev = w::reversal_closure_check(12);
  auto cat = w::concatenation_check();
  std::size_t words = 0, disagree = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    Word cur(n, 0);
    while (true) {
      ++words;
      disagree += w::is_stable(cur) != w::is_stable_bruteforce(cur);
      std::size_t k = n;
      while (k > 0 && cur[k - 1] == 2) cur[--k] = 0;
      if (k == 0) break;
      ++cur[k - 1];
    }
  }
  o.pass = o.pass && rev.ok() && cat.ok() && cat.checked >= 100 && disagree == 0;
  o.detail = "constant blocks n<=64; reversal over " + std::to_string(rev.checked) + " stable blocks; " +
             std::to_string(cat.checked) + " concatenations; dual agreement on " + std::to_string(words) + " words";
  return o;
}

Outcome rigidity() {
  auto rep = w::flip_rigidity_scan(6);
  Outcome o;
  o.pass = rep.survivors() == std::vector<std::string>{"identity"};
  bool cited = false;
  for (const auto& v : rep.involutions)
    if (v.name == "(1 2)" && v.counterexample)
      cited = v.counterexample->first == w::parse("1111") && v.counterexample->second == w::parse("2222");
  o.pass = o.pass && cited;
  o.detail = "survivors: identity only; (1 2) fails via 1111 -> 2222";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "flip axioms", 10, flip_axioms},
      {2, "F-vector oracle equivalence", 30, fvector_oracle},
      {3, "block search (a), (b), (c)", 0, block_search},
      {4, "A(phi) witness and case split", 0, witness_case_split},
      {5, "twisted flip: validity, domination, strict increase", 300, twisted_flip},
      {6, "theta algebra", 0, theta_algebra},
      {7, "iterated construction, k = 3", 0, separation_driver},
      {8, "recoding and higher block conjugacy", 0, recoding},
      {9, "stability of blocks in W", 0, stability},
      {10, "rigidity of symbol involutions on W", 0, rigidity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    failed += !o.pass;
    std::printf("criterion %2d %s  %s: %s (%.2fs)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
