#pragma once

// The coded system W over {0, 1, 2}: the sets I and J, stable blocks, the
// code C = {0} u {0^(|w|+1) w 0^(|w|+1)}, block-level membership, and
// finite-scale checks of its structural properties.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftflip/error.hpp"
#include "shiftflip/words.hpp"

namespace shiftflip::w {

inline const Alphabet& alphabet() {
  static const Alphabet a({"0", "1", "2"});
  return a;
}

inline Word parse(std::string_view s) { return alphabet().parse(s); }
inline std::string format(const Word& w) { return alphabet().format(w); }

/// n in I = [4, 8] u [16, 32] u [64, 128] u ...
inline bool in_I(std::int64_t n) {
  if (n < 1) throw DomainError("in_I requires n >= 1");
  const auto u = static_cast<std::uint64_t>(n);
  const int b = std::bit_width(u) - 1;
  if (b >= 2 && b % 2 == 0) return true;
  return b >= 3 && b % 2 == 1 && u == (std::uint64_t{1} << b);
}

/// J = {(0,0), (1,1), (1,2), (2,1), (2,2)}.
inline bool in_J(Sym a, Sym b) { return (a == 0) == (b == 0); }

inline void check_symbols(const Word& w) {
  for (Sym s : w)
    if (s > 2) throw DomainError("symbol outside {0, 1, 2}");
}

struct Stability {
  bool stable = true;
  int failed_condition = 0;  // 1 or 2 when unstable
  std::string detail;

  std::string verdict() const {
    return stable ? "stable" : "unstable (condition " + std::to_string(failed_condition) + ")";
  }
};

/// Embeds w as x_[1, 3|w|+2] = 0^(|w|+1) w 0^(|w|+1) and checks both
/// conditions; each maximal run 0 a^n 0 inside the window is tested once.
inline Stability stability(const Word& w) {
  check_symbols(w);
  for (std::size_t k = 1; k < w.size(); ++k)
    if ((w[k - 1] == 1 && w[k] == 2) || (w[k - 1] == 2 && w[k] == 1))
      return {false, 1, "block " + format({w[k - 1], w[k]}) + " at " + std::to_string(k - 1)};

  const auto len = static_cast<std::int64_t>(w.size());
  const std::int64_t last = 3 * len + 2;
  std::vector<Sym> x(static_cast<std::size_t>(last + 1), 0);  // index 0 unused
  for (std::int64_t k = 0; k < len; ++k) x[static_cast<std::size_t>(len + 2 + k)] = w[static_cast<std::size_t>(k)];
  auto at = [&](std::int64_t i) {
    if (i < 1 || i > last) throw ConsistencyError("stability: coordinate outside the embedded window");
    return x[static_cast<std::size_t>(i)];
  };
  for (std::int64_t s = len + 2; s <= 2 * len + 1;) {
    if (at(s) == 0) {
      ++s;
      continue;
    }
    const Sym a = at(s);
    std::int64_t e = s;
    while (e + 1 <= 2 * len + 1 && at(e + 1) == a) ++e;
    const std::int64_t n = e - s + 1, i = s - 1, j = e + 1;
    const bool rule = in_I(n) == in_J(at(i - n), at(j + n));
    if ((a == 1) != rule)
      return {false, 2,
              "run " + format(Word(static_cast<std::size_t>(n), a)) + " at " + std::to_string(s - len - 2) +
                  " with context (" + std::to_string(at(i - n)) + "," + std::to_string(at(j + n)) + ")"};
    s = e + 1;
  }
  return {};
}

inline bool is_stable(const Word& w) { return stability(w).stable; }
inline bool is_stable(std::string_view w) { return is_stable(parse(w)); }

/// Literal transcription of conditions (1) and (2): every n, a, i, j in range.
inline bool is_stable_bruteforce(const Word& w) {
  check_symbols(w);
  const std::size_t len = w.size();
  for (std::size_t k = 0; k + 1 < len; ++k) {
    if (w[k] == 1 && w[k + 1] == 2) return false;
    if (w[k] == 2 && w[k + 1] == 1) return false;
  }
  std::vector<Sym> x(3 * len + 3, 0);
  for (std::size_t k = 0; k < len; ++k) x[len + 2 + k] = w[k];
  for (std::size_t n = 1; n <= len; ++n)
    for (Sym a = 1; a <= 2; ++a)
      for (std::size_t i = len + 1; i <= 2 * len + 2; ++i) {
        const std::size_t j = i + n + 1;
        if (j > 2 * len + 2) continue;
        bool match = x[i] == 0 && x[j] == 0;
        for (std::size_t t = i + 1; t < j && match; ++t) match = x[t] == a;
        if (!match) continue;
        bool pair_in_j = (x[i - n] == 0 && x[j + n] == 0) || (x[i - n] != 0 && x[j + n] != 0);
        bool in_i = false;
        for (std::uint64_t p = 4; p <= n; p *= 4) in_i = in_i || (n >= p && n <= 2 * p);
        if ((a == 1) != ((in_i && pair_in_j) || (!in_i && !pair_in_j))) return false;
      }
  return true;
}

inline Word code_element(const Word& w) {
  Word z(w.size() + 1, 0);
  return concat({z, w, z});
}

/// All words of length 1..L over {0,1,2} in shortlex order, pruned on
/// condition (1).
template <typename Visit>
void for_each_candidate(std::size_t max_len, Visit&& visit) {
  Word cur;
  for (std::size_t len = 1; len <= max_len; ++len) {
    auto rec = [&](auto&& self) -> void {
      if (cur.size() == len) {
        visit(cur);
        return;
      }
      for (Sym s = 0; s <= 2; ++s) {
        if (!cur.empty() && cur.back() + s == 3 && s != 0) continue;
        cur.push_back(s);
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
  }
}

inline std::vector<Word> enumerate_stable(std::size_t max_len) {
  if (max_len < 1) throw DomainError("enumerate_stable requires L >= 1");
  std::vector<Word> out;
  for_each_candidate(max_len, [&](const Word& w) {
    if (is_stable(w)) out.push_back(w);
  });
  return out;
}

struct Membership {
  bool yes = false;
  Word certificate;  // least stable superblock in shortlex order when yes
};

/// Semi-decision: a stable block of length <= bound containing w.
inline Membership block_in_W(const Word& w, std::size_t bound) {
  check_symbols(w);
  if (w.empty()) return {true, {0}};
  for (std::size_t len = w.size(); len <= bound; ++len) {
    std::optional<Word> best;
    const std::size_t pad = len - w.size();
    for (std::size_t left = 0; left <= pad; ++left) {
      const std::size_t right = pad - left;
      const std::uint64_t total = [&] {
        std::uint64_t t = 1;
        for (std::size_t k = 0; k < pad; ++k) t *= 3;
        return t;
      }();
      for (std::uint64_t code = 0; code < total; ++code) {
        Word u;
        u.reserve(len);
        std::uint64_t c = code;
        Word tail(pad);
        for (std::size_t k = pad; k-- > 0;) {
          tail[k] = static_cast<Sym>(c % 3);
          c /= 3;
        }
        u.insert(u.end(), tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(left));
        u.insert(u.end(), w.begin(), w.end());
        u.insert(u.end(), tail.end() - static_cast<std::ptrdiff_t>(right), tail.end());
        if ((!best || u < *best) && is_stable(u)) best = u;
      }
    }
    if (best) {
      if (!is_stable(*best) || !contains_factor(*best, w))
        throw ConsistencyError("block_in_W: certificate failed re-verification");
      return {true, *best};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

struct PropertyAReport {
  std::int64_t j = 0;
  std::size_t wanted = 0;
  std::int64_t bound = 0;
  // classes: n, n+j in I; n in I, n+j not; n not, n+j in I; neither
  std::vector<std::int64_t> witnesses[4];

  bool complete() const {
    return std::all_of(std::begin(witnesses), std::end(witnesses), [&](const auto& v) { return v.size() >= wanted; });
  }
};

inline PropertyAReport verify_property_a(std::int64_t j, std::size_t count, std::int64_t bound) {
  if (j == 0) throw DomainError("verify_property_a requires j != 0");
  PropertyAReport rep{j, count, bound, {}};
  for (std::int64_t n = 1; n <= bound; ++n) {
    if (n + j < 1) continue;
    const bool a = in_I(n), b = in_I(n + j);
    auto& bucket = rep.witnesses[a ? (b ? 0 : 1) : (b ? 2 : 3)];
    if (bucket.size() < count) bucket.push_back(n);
  }
  return rep;
}

struct ClosureReport {
  std::size_t checked = 0;
  std::vector<std::pair<Word, Word>> failures;

  bool ok() const { return failures.empty(); }
};

inline ClosureReport reversal_closure_check(std::size_t max_len) {
  ClosureReport rep;
  for (const auto& w : enumerate_stable(max_len)) {
    ++rep.checked;
    auto r = reversed(w);
    if (!is_stable(r)) rep.failures.emplace_back(w, r);
  }
  return rep;
}

struct ConcatenationOptions {
  std::size_t samples = 200;
  std::size_t max_len = 8;  // pool of stable blocks
  std::size_t extra = 0;    // n = max(|w|, |w'|) + extra
  std::size_t code_triples = 100;
  std::uint64_t seed = 20240601;
};

/// Samples stable pairs (w, w') and checks w 0^(n+1) w'; also samples triple
/// concatenations of code blocks.
inline ClosureReport concatenation_check(const ConcatenationOptions& opt = {}) {
  ClosureReport rep;
  const auto pool = enumerate_stable(opt.max_len);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t k = 0; k < opt.samples; ++k) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    const std::size_t n = std::max(a.size(), b.size()) + opt.extra;
    Word u = concat({a, Word(n + 1, 0), b});
    ++rep.checked;
    if (!is_stable(u)) rep.failures.emplace_back(a, b);
  }
  for (std::size_t k = 0; k < opt.code_triples; ++k) {
    Word u;
    for (int t = 0; t < 3; ++t) {
      Word piece = pick(rng) % 4 == 0 ? Word{0} : code_element(pool[pick(rng)]);
      u.insert(u.end(), piece.begin(), piece.end());
    }
    ++rep.checked;
    if (!is_stable(u)) rep.failures.emplace_back(u, Word{});
  }
  return rep;
}

struct InvolutionVerdict {
  std::string name;
  SymbolInvolution tau;
  bool survives = true;
  std::optional<std::pair<Word, Word>> counterexample;  // stable w, unstable star(w)
  std::size_t failures = 0;
};

struct RigidityReport {
  std::size_t max_len = 0;
  std::size_t stable_blocks = 0;
  std::vector<InvolutionVerdict> involutions;

  std::vector<std::string> survivors() const {
    std::vector<std::string> out;
    for (const auto& v : involutions)
      if (v.survives) out.push_back(v.name);
    return out;
  }
};

/// Checks every symbol involution tau of {0,1,2} for star closure of the
/// stable blocks of length <= L. A failing tau cites the shortest constant
/// block s^n of its least moved symbol s with s^n stable and tau(s)^n not,
/// when one exists, else the first failure in shortlex order.
inline RigidityReport flip_rigidity_scan(std::size_t max_len) {
  RigidityReport rep{max_len, 0, {}};
  const std::vector<std::pair<std::string, std::vector<Sym>>> taus = {
      {"identity", {0, 1, 2}}, {"(0 1)", {1, 0, 2}}, {"(0 2)", {2, 1, 0}}, {"(1 2)", {0, 2, 1}}};
  const auto stable = enumerate_stable(max_len);
  rep.stable_blocks = stable.size();
  for (const auto& [name, img] : taus) {
    InvolutionVerdict v{name, SymbolInvolution(img), true, std::nullopt, 0};
    std::optional<std::pair<Word, Word>> first;
    for (const auto& blk : stable) {
      auto s = star_word(blk, v.tau);
      if (is_stable(s)) continue;
      ++v.failures;
      if (!first) first = std::make_pair(blk, s);
    }
    v.survives = v.failures == 0;
    if (!v.survives) {
      Sym moved = 0;
      while (v.tau(moved) == moved) ++moved;
      for (std::size_t n = 1; n <= max_len && !v.counterexample; ++n) {
        Word src(n, moved), dst(n, v.tau(moved));
        if (is_stable(src) && !is_stable(dst)) v.counterexample = std::make_pair(src, dst);
      }
      if (!v.counterexample) v.counterexample = first;
    }
    rep.involutions.push_back(std::move(v));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Finitely supported points and zero sets
// ---------------------------------------------------------------------------

/// A point of {0,1,2}^Z with finitely many nonzero coordinates.
struct W0Point {
  std::map<std::int64_t, Sym> support;

  Sym at(std::int64_t i) const {
    auto it = support.find(i);
    return it == support.end() ? 0 : it->second;
  }

  static W0Point from_block(const Word& w, std::int64_t start = 0) {
    W0Point p;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] != 0) p.support[start + static_cast<std::int64_t>(k)] = w[k];
    return p;
  }

  /// x_[lo, hi] over the support span; empty for the zero point.
  Word span(std::int64_t& lo) const {
    if (support.empty()) {
      lo = 0;
      return {};
    }
    lo = support.begin()->first;
    Word out;
    for (std::int64_t i = lo; i <= support.rbegin()->first; ++i) out.push_back(at(i));
    return out;
  }

  bool operator==(const W0Point&) const = default;
};

inline void check_point(const W0Point& p) {
  for (const auto& [i, s] : p.support)
    if (s != 1 && s != 2) throw DomainError("W0Point support symbols must be 1 or 2");
}

/// YES when the support span is stable, since 0^inf . w 0^inf lies in W for
/// every stable w.
inline Membership certify_w0(const W0Point& p) {
  check_point(p);
  std::int64_t lo = 0;
  auto w = p.span(lo);
  if (w.empty()) return {true, {}};
  if (is_stable(w)) return {true, w};
  return {};
}

struct ZeroSet {
  std::set<std::int64_t> excluded;  // Z(x) = integers minus this set

  bool contains(std::int64_t i) const { return !excluded.count(i); }
  bool operator==(const ZeroSet&) const = default;

  std::string to_string() const {
    if (excluded.empty()) return "ALL";
    std::string s = "Z \\ {";
    bool first = true;
    for (auto i : excluded) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
    return s + "}";
  }
};

inline ZeroSet zero_set(const W0Point& p) {
  if (!certify_w0(p).yes) throw PreconditionError("zero_set requires a point with a membership certificate");
  ZeroSet z;
  for (const auto& [i, s] : p.support) z.excluded.insert(i);
  return z;
}

/// Rebuilds the nonzero symbols from the zero set alone: for each maximal run
/// 0 a^n 0 the symbol is 1 exactly when (n, context) lies in I x J or in
/// I^C x J^C, and membership in J only depends on which context entries vanish.
inline W0Point reconstruct(const ZeroSet& z) {
  W0Point p;
  const auto& ex = z.excluded;
  for (auto it = ex.begin(); it != ex.end();) {
    const std::int64_t s = *it;
    std::int64_t e = s;
    auto nx = std::next(it);
    while (nx != ex.end() && *nx == e + 1) {
      e = *nx;
      ++nx;
    }
    const std::int64_t n = e - s + 1;
    const bool pair_in_j = z.contains(s - 1 - n) == z.contains(e + 1 + n);
    const Sym a = in_I(n) == pair_in_j ? 1 : 2;
    for (std::int64_t i = s; i <= e; ++i) p.support[i] = a;
    it = nx;
  }
  return p;
}

struct PropertyHReport {
  bool same_zero_set = false;
  bool first_certified = false, second_certified = false;
  bool first_reconstructs = false, second_reconstructs = false;
  bool equal = false;
  bool contradiction = false;  // equal zero sets, different points, both in W
  std::string note;
};

inline PropertyHReport check_property_h(const W0Point& x, const W0Point& y) {
  check_point(x);
  check_point(y);
  PropertyHReport rep;
  ZeroSet zx, zy;
  for (const auto& [i, s] : x.support) zx.excluded.insert(i);
  for (const auto& [i, s] : y.support) zy.excluded.insert(i);
  rep.same_zero_set = zx == zy;
  rep.first_certified = certify_w0(x).yes;
  rep.second_certified = certify_w0(y).yes;
  rep.first_reconstructs = reconstruct(zx) == x;
  rep.second_reconstructs = reconstruct(zy) == y;
  rep.equal = x == y;
  rep.contradiction = rep.same_zero_set && !rep.equal && rep.first_certified && rep.second_certified;
  if (rep.same_zero_set && !rep.equal) {
    rep.note = !rep.first_reconstructs ? "first point violates the run rule, so it is not in W"
               : !rep.second_reconstructs ? "second point violates the run rule, so it is not in W"
                                          : "distinct points share a zero set and both follow the run rule";
  }
  return rep;
}

}  // namespace shiftflip::w
