#pragma once

// Witness constructions for flips of synchronized systems:
//
//   * the block search (f, a, b) with faf, fbf admissible, f not in b, and
//     fbfa absent from every (|a|+1)-periodic point;
//   * a point of A(phi) built from a phi-fixed finitary symbol;
//   * the case split producing a point of A(phi) or A(sigma phi);
//   * the marker automorphism theta = theta_Z and the twisted flip
//     psi = theta phi, together with the sets H(n) and the witness z that
//     make |F(psi; n)| exceed |F(phi; n)|.
//
// Every construction re-verifies its output and throws ConstructionError
// naming the identity that failed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftflip/error.hpp"
#include "shiftflip/flips.hpp"
#include "shiftflip/index_set.hpp"
#include "shiftflip/invariants.hpp"
#include "shiftflip/sft.hpp"
#include "shiftflip/words.hpp"

namespace shiftflip {

struct SearchBounds {
  std::size_t block = 12;      // blocks a, b, the odd block c, v and w
  std::size_t connector = 64;  // shortest connectors d w d*
};

// ---------------------------------------------------------------------------
// Small word helpers
// ---------------------------------------------------------------------------

namespace detail {

/// Calls visit on every word c of length len (lexicographic order) with
/// prefix c suffix in B(X); stops early when visit returns true.
inline bool for_each_infix(const Sft& x, WordView prefix, WordView suffix, std::size_t len,
                           const std::function<bool(const Word&)>& visit) {
  const std::size_t bl = x.block_length();
  auto syms = all_symbols(x);
  Word cur(prefix.begin(), prefix.end());
  Word body;
  std::function<bool()> rec = [&]() {
    if (body.size() == len) {
      Word full = cur;
      full.insert(full.end(), suffix.begin(), suffix.end());
      return x.is_allowed(full) && visit(body);
    }
    for (Sym s : syms) {
      cur.push_back(s);
      body.push_back(s);
      bool ok = cur.size() < bl ? x.is_allowed(cur) : x.is_allowed_block(WordView(cur).subspan(cur.size() - bl, bl));
      if (ok && rec()) return true;
      cur.pop_back();
      body.pop_back();
    }
    return false;
  };
  return rec();
}

/// True if u occurs in the periodic point with period block p.
inline bool occurs_in_periodic(WordView u, WordView p) {
  Word ext;
  while (ext.size() < u.size() + p.size()) ext.insert(ext.end(), p.begin(), p.end());
  return contains_factor(ext, u);
}

/// b == (a f)^n a for some n >= 0.
inline bool is_af_power(WordView b, WordView a, Sym f) {
  const std::size_t unit = a.size() + 1;
  if (b.size() < a.size() || (b.size() - a.size()) % unit != 0) return false;
  Word af(a.begin(), a.end());
  af.push_back(f);
  Word target = repeat(af, (b.size() - a.size()) / unit);
  target.insert(target.end(), a.begin(), a.end());
  return std::equal(b.begin(), b.end(), target.begin(), target.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Block search
// ---------------------------------------------------------------------------

struct BlockTriple {
  Sym f = 0;
  Word a;
  Word b;
};

struct BlockTripleCheck {
  bool faf_fbf_allowed = false;
  bool f_not_in_b = false;
  bool fbfa_not_periodic = false;
  std::size_t periodic_points_checked = 0;

  bool ok() const { return faf_fbf_allowed && f_not_in_b && fbfa_not_periodic; }
};

/// Re-verifies the three properties of the blocks from scratch; property (c)
/// enumerates every point of period |a|+1.
inline BlockTripleCheck verify_block_triple(const Sft& x, const BlockTriple& blk) {
  BlockTripleCheck out;
  const Word f{blk.f};
  out.faf_fbf_allowed = x.is_allowed(concat({f, blk.a, f})) && x.is_allowed(concat({f, blk.b, f}));
  out.f_not_in_b = std::find(blk.b.begin(), blk.b.end(), blk.f) == blk.b.end();
  const Word fbfa = concat({f, blk.b, f, blk.a});
  out.fbfa_not_periodic = true;
  for (const auto& p : periodic_points(x, blk.a.size() + 1)) {
    ++out.periodic_points_checked;
    if (detail::occurs_in_periodic(fbfa, p.word)) out.fbfa_not_periodic = false;
  }
  return out;
}

/// a: the least shortest block with faf admissible (possibly empty); b: the
/// least shortest block with fbf admissible that is not of the form (af)^n a.
inline BlockTriple block_triple(const Sft& x, Sym f, const SearchBounds& bounds = {}) {
  if (f >= x.alphabet().size()) throw DomainError("block_triple: symbol not in alphabet");
  if (!is_irreducible(x) || !is_infinite(x)) throw PreconditionError("block_triple requires an infinite irreducible shift");
  const Word fw{f};
  auto a = shortest_connector(x, fw, fw, bounds.block);
  if (!a) throw SearchBoundError("block_triple: no block a with faf admissible within the bound");
  std::optional<Word> b;
  for (std::size_t len = 0; len <= bounds.block && !b; ++len) {
    detail::for_each_infix(x, fw, fw, len, [&](const Word& cand) {
      if (detail::is_af_power(cand, *a, f)) return false;
      b = cand;
      return true;
    });
  }
  if (!b) throw SearchBoundError("block_triple: no block b within the bound");
  BlockTriple blk{f, *a, *b};
  auto chk = verify_block_triple(x, blk);
  if (!chk.faf_fbf_allowed) throw ConstructionError("block_triple: faf or fbf not admissible");
  if (!chk.f_not_in_b) throw ConstructionError("block_triple: f occurs in b");
  if (!chk.fbfa_not_periodic) throw ConstructionError("block_triple: fbfa occurs in an (|a|+1)-periodic point");
  return blk;
}

// ---------------------------------------------------------------------------
// A point of A(phi) from a star-fixed finitary symbol
// ---------------------------------------------------------------------------

struct FixedSymbolWitness {
  BlockTriple blocks;
  std::int64_t n_rep = 0;  // N, least with 2|a|+1+2(|b|+1) <= (N-1)(|a|+1)
  Word w;                  // a f a (f b)^2 (f a)^(2N)
  std::int64_t half = 0;   // M, with |w| = 2M+1
  EventuallyPeriodicPoint y{{0}, {}, {0}};
  AMembership membership;
};

inline std::int64_t least_n_satisfying(std::int64_t lhs, std::int64_t unit) {
  // least N >= 1 with lhs <= (N-1) * unit
  std::int64_t n = 1 + (lhs + unit - 1) / unit;
  return std::max<std::int64_t>(n, 1);
}

inline FixedSymbolWitness fixed_symbol_witness(const Sft& x, const OneBlockFlip& phi, Sym f, const SearchBounds& bounds = {}) {
  if (phi.tau(f) != f) throw PreconditionError("fixed_symbol_witness requires f* = f");
  FixedSymbolWitness out;
  out.blocks = block_triple(x, f, bounds);
  const auto& a = out.blocks.a;
  const auto& b = out.blocks.b;
  const auto la = static_cast<std::int64_t>(a.size());
  const auto lb = static_cast<std::int64_t>(b.size());
  out.n_rep = least_n_satisfying(2 * la + 1 + 2 * (lb + 1), la + 1);
  const Word fw{f};
  const Word fa = concat({fw, a});
  out.w = concat({a, fw, a, repeat(concat({fw, b}), 2), repeat(fa, static_cast<std::size_t>(2 * out.n_rep))});
  out.half = la + lb + 1 + out.n_rep * (la + 1);
  if (static_cast<std::int64_t>(out.w.size()) != 2 * out.half + 1)
    throw ConstructionError("fixed_symbol: |w| != 2M+1");
  out.y = EventuallyPeriodicPoint(concat({star_word(a, phi.tau), fw}), out.w, fa, -out.half);
  if (!ep_point_admissible(x, out.y)) throw ConstructionError("fixed_symbol: witness y is not a point of X");
  out.membership = a_membership(x, phi.sliding(), out.y);
  if (!out.membership.in) throw ConstructionError("fixed_symbol: witness y is not in A(phi): " + out.membership.reason);
  for (auto i : out.membership.difference)
    if (i < -out.half || i > out.half) throw ConstructionError("fixed_symbol: phi(y) differs from y outside [-M, M]");
  return out;
}

// ---------------------------------------------------------------------------
// Lifting a finitary block to a symbol
// ---------------------------------------------------------------------------

struct SymbolLift {
  Sft space;
  OneBlockFlip phi;
  Sym f = 0;
  int block_length = 1;  // odd; 1 means no recoding happened
};

/// Passes to the odd higher block system in which the finitary block f (padded
/// on the right to odd length) is a single symbol. Odd passes preserve the
/// conjugacy class of the flip.
inline SymbolLift lift_to_symbol(const Sft& x, const OneBlockFlip& phi, Word f) {
  if (f.size() == 1) return {x, phi, f[0], 1};
  if (f.size() % 2 == 0) {
    auto ext = detail::for_each_infix(x, f, {}, 1, [&](const Word& s) {
      f.push_back(s[0]);
      return true;
    });
    if (!ext) throw ConstructionError("lift_to_symbol: block has no right extension");
  }
  const int len = static_cast<int>(f.size());
  auto hb = higher_block(x, phi, len);
  Sym sym = hb.space.alphabet().index(block_symbol_name(x.alphabet(), f));
  return {std::move(hb.space), std::move(hb.flip), sym, len};
}

// ---------------------------------------------------------------------------
// A(phi) or A(sigma phi) is nonempty
// ---------------------------------------------------------------------------

enum class WitnessBranch { kFlip, kShiftFlip };

inline const char* to_string(WitnessBranch b) { return b == WitnessBranch::kFlip ? "A_OF_FLIP" : "A_OF_SHIFT_FLIP"; }

struct BranchWitness {
  WitnessBranch branch = WitnessBranch::kFlip;
  Sft space;  // X, or an odd higher block system of X
  OneBlockFlip phi;
  SlidingFlip branch_flip;  // phi or sigma phi on `space`
  Sym f = 0;
  Word v, w;
  EventuallyPeriodicPoint witness{{0}, {}, {0}};
  std::optional<FixedSymbolWitness> fixed_symbol;
  AMembership membership;
  std::vector<ConjugacyDescriptor> chain;
};

inline BranchWitness branch_witness(const Sft& x0, const OneBlockFlip& phi0, const SearchBounds& bounds = {}) {
  if (!is_irreducible(x0) || !is_infinite(x0)) throw PreconditionError("branch_witness requires an infinite synchronized system");
  auto lift = lift_to_symbol(x0, phi0, synchronizing_block(x0));
  BranchWitness out{.space = std::move(lift.space), .phi = std::move(lift.phi)};
  if (lift.block_length > 1) out.chain.push_back(HigherBlockCode{lift.block_length});
  const Sft& x = out.space;
  const auto& tau = out.phi.tau;
  out.f = lift.f;
  const Word fw{out.f};
  const Word fs{tau(out.f)};
  auto v = shortest_connector(x, fw, fw, bounds.block);
  if (!v) throw SearchBoundError("branch_witness: no block v with fvf admissible within the bound");
  out.v = *v;
  const Word left = concat({star_word(out.v, tau), fs});
  const Word right = concat({fw, out.v});

  bool done = false;
  for (std::size_t len = 1; len <= bounds.block && !done; ++len) {
    detail::for_each_infix(x, fs, fw, len, [&](const Word& w) {
      const bool palindromic = star_word(w, tau) == w;
      const auto half = static_cast<std::int64_t>(w.size() / 2);
      if (w.size() % 2 == 1) {
        if (!palindromic) {
          out.branch = WitnessBranch::kFlip;
          out.branch_flip = out.phi.sliding();
          out.witness = EventuallyPeriodicPoint(left, w, right, -half);
        } else if (tau(out.f) == out.f) {
          // phi fixes the spliced point; build a nearby point of A(phi) instead.
          out.fixed_symbol = fixed_symbol_witness(x, out.phi, out.f, bounds);
          out.branch = WitnessBranch::kFlip;
          out.branch_flip = out.phi.sliding();
          out.witness = out.fixed_symbol->y;
        } else {
          return false;
        }
      } else {
        if (palindromic) return false;
        out.branch = WitnessBranch::kShiftFlip;
        out.branch_flip = compose_shift(x, out.phi.sliding(), 1);
        out.witness = EventuallyPeriodicPoint(left, w, right, -half);
      }
      out.w = w;
      done = true;
      return true;
    });
  }
  if (!done) throw SearchBoundError("branch_witness: no usable block w within the bound");
  if (!ep_point_admissible(x, out.witness)) throw ConstructionError("branch_witness: witness is not a point of X");
  out.membership = a_membership(x, out.branch_flip, out.witness);
  if (!out.membership.in) throw ConstructionError("branch_witness: witness not in A of the branch flip: " + out.membership.reason);
  return out;
}

// ---------------------------------------------------------------------------
// Markers, theta_A and the twisted flip
// ---------------------------------------------------------------------------

struct TwistData {
  Sft space;
  OneBlockFlip phi;
  BlockTriple blocks;
  Word c, d;
  std::int64_t n_rep = 0;   // N, least with |a|+2|b|+|c|+2 <= (N-1)(|a|+1)
  std::int64_t alpha = 0;   // |c| = 2 alpha + 1
  std::int64_t beta = 0;    // alpha + |d|
  Word connector;           // w with d w d* admissible
  std::int64_t period = 0;  // n = 2(|c| + 2|d| + |w|)
  std::int64_t half = 0;    // m with |c| + 2|d| + n = 2m + 1
  PeriodicPoint z;
  Word marker_plain;  // d* c d
  Word marker_star;   // d* c* d
  SlidingFlip psi;    // theta_Z o phi

  Sym f() const { return blocks.f; }
  std::int64_t psi_radius() const { return alpha + beta; }
};

/// Window x_[i-beta, i+beta] is d*cd or d*c*d.
inline bool is_marker(const TwistData& dt, const std::function<Sym(std::int64_t)>& x, std::int64_t i) {
  const auto len = static_cast<std::size_t>(2 * dt.beta + 1);
  bool plain = true, star = true;
  for (std::size_t k = 0; k < len && (plain || star); ++k) {
    Sym s = x(i - dt.beta + static_cast<std::int64_t>(k));
    plain = plain && s == dt.marker_plain[k];
    star = star && s == dt.marker_star[k];
  }
  return plain || star;
}

/// Markers of x in [lo, hi]. Distinct markers must satisfy
/// [i-alpha-1, i+alpha+1] n [j-beta, j+beta] = {}; a violation is an
/// internal-consistency error.
inline std::vector<std::int64_t> markers(const TwistData& dt, const std::function<Sym(std::int64_t)>& x, std::int64_t lo,
                                         std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = lo; i <= hi; ++i)
    if (is_marker(dt, x, i)) out.push_back(i);
  for (std::size_t k = 1; k < out.size(); ++k) {
    auto gap = out[k] - out[k - 1];
    if (gap < dt.alpha + 1 + dt.beta + 1)
      throw ConsistencyError("markers " + std::to_string(out[k - 1]) + " and " + std::to_string(out[k]) +
                             " violate the separation property");
  }
  return out;
}

/// theta_A(x): the block x_[c-alpha, c+alpha] replaced by its star for every
/// marker c of x in A; all other coordinates unchanged.
inline Sequence theta(const TwistData& dt, IndexSet a, Sequence x) {
  return [dt_ptr = std::make_shared<const TwistData>(dt), a = std::move(a), x = std::move(x)](std::int64_t i) {
    const auto& d = *dt_ptr;
    for (std::int64_t c = i - d.alpha; c <= i + d.alpha; ++c)
      if (a.contains(c) && is_marker(d, x, c)) return d.phi.tau(x(2 * c - i));
    return x(i);
  };
}

/// theta_A on a periodic point, reading A on the representatives 0..n-1 (so A
/// is taken to be invariant under translation by the period, as H(n) and
/// Z \ (H(n) u -H(n)) are).
inline PeriodicPoint theta_periodic(const TwistData& dt, const IndexSet& a, const PeriodicPoint& p) {
  const auto n = static_cast<std::int64_t>(p.period());
  auto at = [&p](std::int64_t i) { return p.at(i); };
  PeriodicPoint out = p;
  for (std::int64_t c = 0; c < n; ++c) {
    if (!a.contains(c) || !is_marker(dt, at, c)) continue;
    for (std::int64_t t = -dt.alpha; t <= dt.alpha; ++t)
      out.word[static_cast<std::size_t>(floor_mod(c + t, n))] = dt.phi.tau(p.at(c - t));
  }
  return out;
}

/// Local rule of psi = theta_Z phi in normal form: for a window u of radius
/// alpha + beta, psi(x)_i = rule(x_[-i-R, -i+R]).
inline Sym psi_rule(const TwistData& dt, WordView u) {
  const std::int64_t r = dt.psi_radius();
  const Word us = star_word(u, dt.phi.tau);
  for (std::int64_t delta = -dt.alpha; delta <= dt.alpha; ++delta) {
    auto start = static_cast<std::size_t>(r + delta - dt.beta);
    WordView win = WordView(us).subspan(start, static_cast<std::size_t>(2 * dt.beta + 1));
    if (std::equal(win.begin(), win.end(), dt.marker_plain.begin()) ||
        std::equal(win.begin(), win.end(), dt.marker_star.begin()))
      return u[static_cast<std::size_t>(r - 2 * delta)];
  }
  return dt.phi.tau(u[static_cast<std::size_t>(r)]);
}

/// psi as a default-plus-exceptions rule: only windows with a marker within
/// alpha of the reflected center can deviate from tau(u[R]).
inline SlidingFlip materialize_psi(const TwistData& dt) {
  const std::int64_t r = dt.psi_radius();
  const auto wl = static_cast<std::size_t>(2 * r + 1);
  const auto ml = static_cast<std::size_t>(2 * dt.beta + 1);
  const auto& tau = dt.phi.tau;
  WindowTable seen;
  std::vector<std::pair<Word, Sym>> exceptions;
  for (std::int64_t delta = -dt.alpha; delta <= dt.alpha; ++delta) {
    // marker of u* at offset delta  <=>  star(marker) in u starting at R - delta - beta
    auto start = static_cast<std::size_t>(r - delta - dt.beta);
    for (const auto* pat : {&dt.marker_plain, &dt.marker_star}) {
      Word core = star_word(*pat, tau);
      detail::for_each_extension(dt.space, core, start, wl - ml - start, [&](const Word& u) {
        Sym v = psi_rule(dt, u);
        if (v != tau(u[static_cast<std::size_t>(r)]) && !seen.find(u)) {
          seen.insert(u, v);
          exceptions.emplace_back(u, v);
        }
      });
    }
  }
  std::sort(exceptions.begin(), exceptions.end());
  return SlidingFlip::with_default(static_cast<int>(r), tau, 0, std::move(exceptions));
}

/// |F(psi; n)| computed through theta_H(n), which carries F(psi; n) bijectively
/// onto the points of period n fixed by theta_C phi with C = Z \ (H(n) u -H(n)).
/// Those are the tau-symmetric points allowed to break symmetry only on the
/// windows of markers sitting at 0 or n/2.
inline std::uint64_t count_psi_fixed(const TwistData& dt, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  const auto& tau = dt.phi.tau;
  auto near = [&](std::int64_t pos, std::int64_t c) {
    auto dist = floor_mod(pos - c, nn);
    return dist <= dt.alpha || nn - dist <= dt.alpha;
  };
  const bool even = n % 2 == 0;
  auto free = [&](std::size_t pos) {
    auto p = static_cast<std::int64_t>(pos);
    return near(p, 0) || (even && near(p, nn / 2));
  };
  std::uint64_t count = 0;
  for_each_symmetric_point(dt.space, tau, 0, n, free, [&](const Word& w) {
    PeriodicPoint p{w};
    auto at = [&p](std::int64_t i) { return p.at(i); };
    const bool m0 = is_marker(dt, at, 0);
    const bool mh = even && is_marker(dt, at, nn / 2);
    for (std::int64_t k = 0; k < nn; ++k) {
      if ((m0 && near(k, 0)) || (mh && near(k, nn / 2))) continue;
      if (p.at(k) != tau(p.at(-k))) return;
    }
    ++count;
  });
  return count;
}

inline FVector fvector_psi(const TwistData& dt, std::size_t horizon) {
  FVector f;
  for (std::size_t n = 1; n <= horizon; ++n) f.counts.push_back(count_psi_fixed(dt, n));
  return f;
}

struct TwistReport {
  TwistData data;
  ValidationReport psi_validation;
  std::size_t horizon = 0;
  FVector f_phi, f_psi;
  bool z_fixed_by_phi = true;
  bool theta_n_z_fixed_by_psi = false;
  std::size_t clause_i_points = 0;
  EventuallyPeriodicPoint a_witness{{0}, {}, {0}};
  AMembership a_membership_psi;
};

struct TwistOptions {
  SearchBounds bounds;
  std::size_t horizon = 0;         // 0: use the witness period
  std::size_t clause_horizon = 0;  // 0: same as horizon
  std::uint64_t point_budget = 200'000'000;
};

namespace detail {

inline EventuallyPeriodicPoint perturbed_witness(const Sft& x, const SlidingFlip& psi, const PeriodicPoint& base) {
  const auto n = static_cast<std::int64_t>(base.period());
  Word left, right;
  for (std::int64_t k = 0; k < n; ++k) left.push_back(base.at(-n - n + k));
  for (std::int64_t k = 0; k < n; ++k) right.push_back(base.at(n + 1 + k));
  Word center;
  for (std::int64_t i = -n; i <= n; ++i) center.push_back(base.at(i));
  auto syms = all_symbols(x);
  for (std::int64_t j = 0; j <= n; ++j)
    for (std::int64_t pos : {j, -j})
      for (Sym s : syms) {
        Word c = center;
        auto& slot = c[static_cast<std::size_t>(pos + n)];
        if (slot == s) continue;
        slot = s;
        EventuallyPeriodicPoint y(left, c, right, -n);
        if (!ep_point_admissible(x, y)) continue;
        if (a_membership(x, psi, y).in) return y;
      }
  throw ConstructionError("twist_flip: no single-symbol perturbation of theta_n(z) lies in A(psi)");
}

}  // namespace detail

inline TwistData twist_data(const Sft& x, const OneBlockFlip& phi, Sym f, const SearchBounds& bounds = {}) {
  if (!is_irreducible(x) || !is_infinite(x)) throw PreconditionError("twist_flip requires an infinite synchronized system");
  const auto& tau = phi.tau;
  TwistData dt{.space = x, .phi = phi};
  dt.blocks = block_triple(x, f, bounds);
  const Word fw{f};
  const Word fs{tau(f)};

  std::optional<Word> c;
  for (std::size_t len = 1; len <= bounds.block && !c; len += 2)
    detail::for_each_infix(x, fs, fw, len, [&](const Word& cand) {
      if (star_word(cand, tau) == cand) return false;
      c = cand;
      return true;
    });
  if (!c) throw SearchBoundError("twist_flip: no odd block c with f*cf admissible and c* != c within the bound");
  dt.c = *c;

  const auto la = static_cast<std::int64_t>(dt.blocks.a.size());
  const auto lb = static_cast<std::int64_t>(dt.blocks.b.size());
  const auto lc = static_cast<std::int64_t>(dt.c.size());
  dt.n_rep = least_n_satisfying(la + 2 * lb + lc + 2, la + 1);
  dt.d = concat({fw, dt.blocks.b, repeat(concat({fw, dt.blocks.a}), static_cast<std::size_t>(dt.n_rep))});
  const Word ds = star_word(dt.d, tau);
  const Word cs = star_word(dt.c, tau);
  dt.marker_plain = concat({ds, dt.c, dt.d});
  dt.marker_star = concat({ds, cs, dt.d});
  if (!x.is_allowed(dt.marker_plain) || !x.is_allowed(dt.marker_star))
    throw ConstructionError("twist_flip: d*cd or d*c*d is not admissible");
  dt.alpha = (lc - 1) / 2;
  dt.beta = dt.alpha + static_cast<std::int64_t>(dt.d.size());

  auto w = shortest_connector(x, dt.d, ds, bounds.connector);
  if (!w) throw SearchBoundError("twist_flip: no connector w with d w d* admissible within the bound");
  dt.connector = *w;
  const auto lw = static_cast<std::int64_t>(w->size());
  const auto ld = static_cast<std::int64_t>(dt.d.size());
  dt.period = 2 * (lc + 2 * ld + lw);
  dt.half = (lc + 2 * ld + dt.period - 1) / 2;
  if (lc + 2 * ld + dt.period != 2 * dt.half + 1) throw ConstructionError("twist_flip: |c| + 2|d| + n is not odd");

  // z has period block d*cd w d*cd w* starting at coordinate -beta.
  const Word cycle = concat({dt.marker_plain, *w, dt.marker_plain, star_word(*w, tau)});
  if (static_cast<std::int64_t>(cycle.size()) != dt.period) throw ConstructionError("twist_flip: witness period mismatch");
  dt.z.word.resize(cycle.size());
  for (std::int64_t i = 0; i < dt.period; ++i)
    dt.z.word[static_cast<std::size_t>(i)] = cycle[static_cast<std::size_t>(floor_mod(i + dt.beta, dt.period))];
  if (!x.is_cyclically_allowed(dt.z.word)) throw ConstructionError("twist_flip: witness z is not a point of X");
  Word central;
  for (std::int64_t i = -dt.half; i <= dt.half; ++i) central.push_back(dt.z.at(i));
  const Word expect = concat({dt.marker_plain, star_word(*w, tau), dt.marker_plain, *w, dt.marker_plain});
  if (central != expect) throw ConstructionError("twist_flip: z_[-m, m] does not match d*cd w* d*cd w d*cd");
  for (std::int64_t i = -dt.alpha; i <= dt.alpha; ++i)
    if (dt.z.at(i) != dt.c[static_cast<std::size_t>(i + dt.alpha)]) throw ConstructionError("twist_flip: z_[-alpha, alpha] != c");

  dt.psi = materialize_psi(dt);
  return dt;
}

/// Builds psi and verifies: psi is a flip; |F(phi; k)| <= |F(psi; k)| up to the
/// horizon; theta_k maps F(phi; k) into F(psi; k); the witness z is not fixed
/// by phi while theta_n(z) is fixed by psi; and A(psi) has an explicit point.
inline TwistReport twist_flip(const Sft& x, const OneBlockFlip& phi, Sym f, const TwistOptions& opt = {}) {
  TwistReport rep{.data = twist_data(x, phi, f, opt.bounds)};
  const auto& dt = rep.data;
  const auto n = static_cast<std::size_t>(dt.period);
  rep.horizon = std::max(opt.horizon, n);

  // Symmetric points of period k are determined by about k/2 + 1 coordinates,
  // plus the 2(2 alpha + 1) free coordinates around the marker sites.
  const std::size_t ch = opt.clause_horizon ? opt.clause_horizon : rep.horizon;
  std::uint64_t estimate = count_language(x, std::max(rep.horizon, ch) / 2 + 1);
  for (std::int64_t k = 0; k < 4 * dt.alpha + 2 && estimate <= opt.point_budget; ++k) estimate *= x.alphabet().size();
  if (estimate > opt.point_budget)
    throw SearchBoundError("twist_flip: fixed-point enumeration up to period " + std::to_string(rep.horizon) +
                           " exceeds the point budget of " + std::to_string(opt.point_budget));

  rep.psi_validation = validate_flip(x, dt.psi);
  if (!rep.psi_validation.valid()) throw ConstructionError("twist_flip: psi fails flip validation");

  rep.f_phi = fvector(x, phi.sliding(), rep.horizon);
  rep.f_psi = fvector_psi(dt, rep.horizon);
  for (std::size_t k = 1; k <= rep.horizon; ++k)
    if (rep.f_psi.at(k) < rep.f_phi.at(k))
      throw ConstructionError("twist_flip: |F(psi; " + std::to_string(k) + ")| < |F(phi; " + std::to_string(k) + ")|");
  if (rep.f_psi.at(n) < rep.f_phi.at(n) + 1) throw ConstructionError("twist_flip: no strict increase at the witness period");

  const auto phi_flip = phi.sliding();
  rep.z_fixed_by_phi = apply_flip_periodic(phi_flip, dt.z) == dt.z;
  auto tz = theta_periodic(dt, IndexSet::half_period(dt.period), dt.z);
  rep.theta_n_z_fixed_by_psi = apply_flip_periodic(dt.psi, tz) == tz;
  if (rep.z_fixed_by_phi) throw ConstructionError("twist_flip: z is fixed by phi");
  if (!rep.theta_n_z_fixed_by_psi) throw ConstructionError("twist_flip: theta_n(z) is not fixed by psi");

  for (std::size_t k = 1; k <= ch; ++k) {
    const auto hk = IndexSet::half_period(static_cast<std::int64_t>(k));
    for_each_symmetric_point(x, phi.tau, 0, k, {}, [&](const Word& w) {
      PeriodicPoint p{w};
      auto q = theta_periodic(dt, hk, p);
      if (apply_flip_periodic(dt.psi, q) != q)
        throw ConstructionError("twist_flip: theta_" + std::to_string(k) + " does not map F(phi) into F(psi)");
      ++rep.clause_i_points;
    });
  }

  rep.a_witness = detail::perturbed_witness(x, dt.psi, tz);
  rep.a_membership_psi = a_membership(x, dt.psi, rep.a_witness);
  return rep;
}

}  // namespace shiftflip
