#pragma once

// Flips of a shift of finite type in reversal-centered normal form
//
//     phi(x)_i = Theta(x_[-i-r, -i+r]),
//
// which every continuous map with phi sigma = sigma^-1 phi admits. The local
// rule Theta is a table of windows, optionally backed by a default rule
// Theta(u) = tau(u[r + offset]); with an empty table this is the flip
// sigma^(-offset) rho_tau, and with offset 0 the one-block flip of tau.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "shiftflip/error.hpp"
#include "shiftflip/sft.hpp"
#include "shiftflip/words.hpp"

namespace shiftflip {

/// Lookup table keyed by fixed-length windows. Keys are indexed by a
/// polynomial rolling hash so callers scanning every window of a longer block
/// can hash all of them in one pass; a small bit filter rejects most misses
/// before touching the map.
class WindowTable {
 public:
  static constexpr std::uint64_t kBase = 0x100000001b3ULL;

  static std::uint64_t hash(WordView w) {
    std::uint64_t h = 0;
    for (Sym s : w) h = h * kBase + (static_cast<std::uint64_t>(s) + 1);
    return h;
  }

  /// Hashes of all length-`len` factors of u, indexed by start position.
  static std::vector<std::uint64_t> rolling(WordView u, std::size_t len) {
    std::vector<std::uint64_t> out;
    rolling(u, len, out);
    return out;
  }

  static void rolling(WordView u, std::size_t len, std::vector<std::uint64_t>& out) {
    out.clear();
    if (u.size() < len) return;
    std::uint64_t top = 1;
    for (std::size_t i = 1; i < len; ++i) top *= kBase;
    std::uint64_t h = hash(u.subspan(0, len));
    out.push_back(h);
    for (std::size_t i = len; i < u.size(); ++i) {
      h = (h - (static_cast<std::uint64_t>(u[i - len]) + 1) * top) * kBase + (static_cast<std::uint64_t>(u[i]) + 1);
      out.push_back(h);
    }
  }

  WindowTable() : filter_(kFilterWords, 0) {}

  void insert(Word key, Sym value) {
    auto h = hash(key);
    auto& bucket = buckets_[h];
    for (auto idx : bucket)
      if (entries_[idx].first == key) {
        entries_[idx].second = value;
        return;
      }
    bucket.push_back(entries_.size());
    entries_.emplace_back(std::move(key), value);
    filter_[(h >> 6) % kFilterWords] |= std::uint64_t{1} << (h & 63);
  }

  std::optional<Sym> find(WordView key) const { return find(key, hash(key)); }

  std::optional<Sym> find(WordView key, std::uint64_t h) const {
    if (!(filter_[(h >> 6) % kFilterWords] >> (h & 63) & 1)) return std::nullopt;
    auto it = buckets_.find(h);
    if (it == buckets_.end()) return std::nullopt;
    for (auto idx : it->second) {
      const auto& k = entries_[idx].first;
      if (std::equal(k.begin(), k.end(), key.begin(), key.end())) return entries_[idx].second;
    }
    return std::nullopt;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entries sorted by window.
  std::vector<std::pair<Word, Sym>> sorted() const {
    auto out = entries_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static constexpr std::size_t kFilterWords = 1024;
  std::vector<std::pair<Word, Sym>> entries_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
  std::vector<std::uint64_t> filter_;
};

struct DefaultRule {
  SymbolInvolution tau;
  int offset = 0;  // Theta(u) = tau(u[r + offset])
};

class SlidingFlip {
 public:
  SlidingFlip() = default;

  static SlidingFlip one_block(SymbolInvolution tau) {
    SlidingFlip f;
    f.radius_ = 0;
    f.default_ = DefaultRule{std::move(tau), 0};
    return f;
  }

  /// Fully tabulated rule; it must cover every allowed (2r+1)-block.
  static SlidingFlip tabulated(int radius, std::vector<std::pair<Word, Sym>> rule) {
    check_radius(radius);
    SlidingFlip f;
    f.radius_ = radius;
    f.add_entries(std::move(rule));
    return f;
  }

  /// Default rule tau(u[r + offset]) overridden on the listed windows.
  static SlidingFlip with_default(int radius, SymbolInvolution tau, int offset,
                                  std::vector<std::pair<Word, Sym>> exceptions = {}) {
    check_radius(radius);
    if (offset < -radius || offset > radius) throw DomainError("default offset must lie within the radius");
    SlidingFlip f;
    f.radius_ = radius;
    f.default_ = DefaultRule{std::move(tau), offset};
    f.add_entries(std::move(exceptions));
    return f;
  }

  int radius() const { return radius_; }
  std::size_t window_length() const { return 2 * static_cast<std::size_t>(radius_) + 1; }
  const std::optional<DefaultRule>& default_rule() const { return default_; }
  const WindowTable& table() const { return table_; }

  /// The symbol map, when the flip is x -> (i -> tau(x_{-i})).
  std::optional<SymbolInvolution> one_block_map() const {
    if (default_ && default_->offset == 0 && table_.empty()) return default_->tau;
    return std::nullopt;
  }

  /// (tau, s) with phi(x)_i = tau(x_{s-i}), when the rule is a pure default.
  std::optional<std::pair<SymbolInvolution, int>> reflection_form() const {
    if (default_ && table_.empty()) return std::make_pair(default_->tau, default_->offset);
    return std::nullopt;
  }

  std::optional<Sym> try_eval(WordView window, std::uint64_t h) const {
    if (auto v = table_.find(window, h)) return v;
    if (default_) return default_->tau(window[static_cast<std::size_t>(radius_ + default_->offset)]);
    return std::nullopt;
  }

  std::optional<Sym> try_eval(WordView window) const {
    if (!table_.empty())
      if (auto v = table_.find(window)) return v;
    if (default_) return default_->tau(window[static_cast<std::size_t>(radius_ + default_->offset)]);
    return std::nullopt;
  }

  Sym eval(WordView window) const {
    if (window.size() != window_length()) throw DomainError("window length does not match the flip radius");
    auto v = try_eval(window);
    if (!v) throw PreconditionError("flip rule undefined on window");
    return *v;
  }

 private:
  static void check_radius(int r) {
    if (r < 0) throw DomainError("radius must be non-negative");
  }

  void add_entries(std::vector<std::pair<Word, Sym>> rule) {
    for (auto& [w, s] : rule) {
      if (w.size() != window_length()) throw DomainError("rule window has the wrong length");
      table_.insert(std::move(w), s);
    }
  }

  int radius_ = 0;
  std::optional<DefaultRule> default_;
  WindowTable table_;
};

struct OneBlockFlip {
  SymbolInvolution tau;

  SlidingFlip sliding() const { return SlidingFlip::one_block(tau); }
};

// ---------------------------------------------------------------------------
// Conjugacy descriptors
// ---------------------------------------------------------------------------

struct ShiftPower {
  std::int64_t k = 0;
};

/// Phi(x)_i = rule(x_[i-r, i+r]) into `target`.
struct SlidingCode {
  int radius = 0;
  Alphabet target;
  std::vector<std::pair<Word, Sym>> rule;
};

/// x -> (i -> x_[i, i+N-1]) into the N-th higher block system.
struct HigherBlockCode {
  int block_length = 1;
};

using ConjugacyDescriptor = std::variant<ShiftPower, SlidingCode, HigherBlockCode>;

// ---------------------------------------------------------------------------
// Applying flips
// ---------------------------------------------------------------------------

inline PeriodicPoint apply_flip_periodic(const SlidingFlip& phi, const PeriodicPoint& p) {
  const auto n = static_cast<std::int64_t>(p.period());
  const auto r = static_cast<std::int64_t>(phi.radius());
  PeriodicPoint out{Word(p.period())};
  Word window(phi.window_length());
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t k = -r; k <= r; ++k) window[static_cast<std::size_t>(k + r)] = p.at(-i + k);
    out.word[static_cast<std::size_t>(i)] = phi.eval(window);
  }
  return out;
}

inline Sequence apply_flip(const SlidingFlip& phi, Sequence x) {
  return [phi, x = std::move(x)](std::int64_t i) {
    const std::int64_t r = phi.radius();
    Word window(phi.window_length());
    for (std::int64_t k = -r; k <= r; ++k) window[static_cast<std::size_t>(k + r)] = x(-i + k);
    return phi.eval(window);
  };
}

inline EventuallyPeriodicPoint apply_flip_ep(const SlidingFlip& phi, const EventuallyPeriodicPoint& p) {
  const std::int64_t r = phi.radius();
  const std::int64_t t0 = p.center_start();
  const std::int64_t t1 = p.center_end() - 1;
  auto value = [&](std::int64_t i) {
    Word window(phi.window_length());
    for (std::int64_t k = -r; k <= r; ++k) window[static_cast<std::size_t>(k + r)] = p.at(-i + k);
    return phi.eval(window);
  };
  const std::int64_t lo = -t1 - r;  // windows of smaller i lie in the right tail
  const std::int64_t hi = -t0 + r;  // windows of larger i lie in the left tail
  Word left, center, right;
  for (std::int64_t i = lo - static_cast<std::int64_t>(p.right().size()); i < lo; ++i) left.push_back(value(i));
  for (std::int64_t i = lo; i <= hi; ++i) center.push_back(value(i));
  for (std::int64_t i = hi + 1; i <= hi + static_cast<std::int64_t>(p.left().size()); ++i) right.push_back(value(i));
  return EventuallyPeriodicPoint(std::move(left), std::move(center), std::move(right), lo);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationReport {
  bool image_ok = true;
  bool involution_ok = true;
  std::string method;
  std::uint64_t blocks_checked = 0;
  std::vector<std::string> violations;

  bool valid() const { return image_ok && involution_ok; }
};

namespace detail {

/// Words l (length left_len) and r (length right_len) with l core r in B(X),
/// passed to visit as the full block.
inline void for_each_extension(const Sft& x, WordView core, std::size_t left_len, std::size_t right_len,
                               const std::function<void(const Word&)>& visit) {
  if (!x.is_allowed(core)) return;
  const std::size_t len = x.block_length();
  auto syms = all_symbols(x);
  std::vector<Word> lefts, rights;
  Word cur(core.begin(), core.end());
  std::function<void(std::size_t)> grow_left = [&](std::size_t rem) {
    if (rem == 0) {
      lefts.emplace_back(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(left_len));
      return;
    }
    for (Sym s : syms) {
      cur.insert(cur.begin(), s);
      bool ok = cur.size() < len ? x.is_allowed(cur) : x.is_allowed_block(WordView(cur).subspan(0, len));
      if (ok) grow_left(rem - 1);
      cur.erase(cur.begin());
    }
  };
  grow_left(left_len);
  cur.assign(core.begin(), core.end());
  std::function<void(std::size_t)> grow_right = [&](std::size_t rem) {
    if (rem == 0) {
      rights.emplace_back(cur.end() - static_cast<std::ptrdiff_t>(right_len), cur.end());
      return;
    }
    for (Sym s : syms) {
      cur.push_back(s);
      bool ok = cur.size() < len ? x.is_allowed(cur) : x.is_allowed_block(WordView(cur).subspan(cur.size() - len, len));
      if (ok) grow_right(rem - 1);
      cur.pop_back();
    }
  };
  grow_right(right_len);
  // A core of length >= m is synchronizing, so both sides extend independently.
  const bool independent = core.size() >= static_cast<std::size_t>(x.step());
  Word full;
  for (const auto& l : lefts)
    for (const auto& r : rights) {
      full.assign(l.begin(), l.end());
      full.insert(full.end(), core.begin(), core.end());
      full.insert(full.end(), r.begin(), r.end());
      if (independent || x.is_allowed(full)) visit(full);
    }
}

class Checker {
 public:
  Checker(const Sft& x, const SlidingFlip& phi, ValidationReport& rep) : x_(x), phi_(phi), rep_(rep) {}

  void image_block(const Word& u) {
    const std::size_t m = static_cast<std::size_t>(x_.step());
    const std::size_t wl = phi_.window_length();
    Word v(m + 1);
    for (std::size_t t = 0; t <= m; ++t) {
      auto val = phi_.try_eval(WordView(u).subspan(m - t, wl));
      if (!val) return undefined(WordView(u).subspan(m - t, wl));
      v[t] = *val;
    }
    ++rep_.blocks_checked;
    if (!x_.is_allowed_block(v)) {
      rep_.image_ok = false;
      note("image of " + x_.alphabet().format(u) + " contains forbidden block " + x_.alphabet().format(v));
    }
  }

  void involution_block(const Word& u) {
    const std::size_t r = static_cast<std::size_t>(phi_.radius());
    const std::size_t wl = phi_.window_length();
    WindowTable::rolling(u, wl, hashes_);
    Word& v = v_;
    v.resize(wl);
    for (std::size_t s = 0; s < wl; ++s) {
      const std::size_t start = 2 * r - s;
      auto val = phi_.try_eval(WordView(u).subspan(start, wl), hashes_[start]);
      if (!val) return undefined(WordView(u).subspan(start, wl));
      v[s] = *val;
    }
    auto back = phi_.try_eval(v);
    ++rep_.blocks_checked;
    if (!back) return undefined(v);
    if (*back != u[2 * r]) {
      rep_.involution_ok = false;
      note("phi(phi(x))_0 != x_0 on block " + x_.alphabet().format(u));
    }
  }

 private:
  void undefined(WordView w) {
    rep_.image_ok = false;
    note("rule undefined on window " + x_.alphabet().format(w));
  }
  void note(std::string msg) {
    if (rep_.violations.size() < 16) rep_.violations.push_back(std::move(msg));
  }

  const Sft& x_;
  const SlidingFlip& phi_;
  ValidationReport& rep_;
  std::vector<std::uint64_t> hashes_;
  Word v_;
};

}  // namespace detail

/// Exact check that phi is a flip of X: (1) the image of every point lies in
/// X, checked on all (2r+m+1)-blocks, and (2) phi o phi = id, checked on all
/// (4r+1)-blocks. When the rule has a default and the full block sets are
/// larger than `budget`, only blocks touching a table entry are enumerated;
/// all other blocks see the default rule, whose flip axioms reduce to star
/// closure of the allowed blocks.
inline ValidationReport validate_flip(const Sft& x, const SlidingFlip& phi, std::uint64_t budget = 2'000'000) {
  ValidationReport rep;
  detail::Checker check(x, phi, rep);
  const std::size_t m = static_cast<std::size_t>(x.step());
  const std::size_t r = static_cast<std::size_t>(phi.radius());
  const std::size_t wl = phi.window_length();
  const std::size_t image_len = 2 * r + m + 1;
  const std::size_t inv_len = 4 * r + 1;
  const bool small = count_language(x, image_len) <= budget && count_language(x, inv_len) <= budget;

  if (small || !phi.default_rule()) {
    if (!small) throw SearchBoundError("tabulated flip too large to validate exhaustively");
    rep.method = "exhaustive";
    for_each_block(x, image_len, [&](const Word& u) { check.image_block(u); });
    for_each_block(x, inv_len, [&](const Word& u) { check.involution_block(u); });
    return rep;
  }

  // Each table entry is extended to (4r+1)-blocks at up to 2r+2 placements.
  const std::uint64_t cap = 200 * budget;
  std::uint64_t estimate = count_language(x, std::max<std::size_t>(2 * r, 1));
  for (std::uint64_t f : {static_cast<std::uint64_t>(phi.table().size() + 1), static_cast<std::uint64_t>(2 * r + 2)})
    estimate = estimate > cap / f ? cap + 1 : estimate * f;
  if (estimate > cap)
    throw SearchBoundError("exception-driven validation exceeds the budget of " + std::to_string(cap) +
                           " block extensions");
  rep.method = "exception-driven";
  const auto& tau = phi.default_rule()->tau;
  if (tau.size() != x.alphabet().size()) throw DomainError("symbol map does not match the alphabet");
  for (const auto& b : x.allowed_blocks()) {
    ++rep.blocks_checked;
    if (!x.is_allowed_block(star_word(b, tau))) {
      rep.image_ok = false;
      if (rep.violations.size() < 16)
        rep.violations.push_back("default rule maps " + x.alphabet().format(b) + " outside the language");
    }
  }
  const auto entries = phi.table().sorted();
  for (const auto& [e, val] : entries) {
    (void)val;
    for (std::size_t q0 = 0; q0 <= m; ++q0)
      detail::for_each_extension(x, e, q0, m - q0, [&](const Word& u) { check.image_block(u); });
    for (std::size_t q0 = 0; q0 + wl <= inv_len; ++q0)
      detail::for_each_extension(x, e, q0, inv_len - wl - q0, [&](const Word& u) { check.involution_block(u); });
    auto es = star_word(e, tau);
    const auto q0 = static_cast<std::size_t>(static_cast<int>(r) + phi.default_rule()->offset);
    detail::for_each_extension(x, es, q0, inv_len - wl - q0, [&](const Word& u) { check.involution_block(u); });
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Shift composition, recoding, higher block systems
// ---------------------------------------------------------------------------

/// sigma^k o phi, of radius r + |k|.
inline SlidingFlip compose_shift(const Sft& x, const SlidingFlip& phi, int k) {
  if (k == 0) return phi;
  const int r = phi.radius();
  const int r2 = r + std::abs(k);
  const std::size_t wl2 = 2 * static_cast<std::size_t>(r2) + 1;
  const std::size_t sub = static_cast<std::size_t>(r2 - k - r);
  std::vector<std::pair<Word, Sym>> rule;
  if (phi.default_rule()) {
    for (const auto& [e, val] : phi.table().sorted())
      detail::for_each_extension(x, e, sub, wl2 - phi.window_length() - sub,
                                 [&](const Word& u) { rule.emplace_back(u, val); });
    return SlidingFlip::with_default(r2, phi.default_rule()->tau, phi.default_rule()->offset - k, std::move(rule));
  }
  for_each_block(x, wl2, [&](const Word& u) {
    rule.emplace_back(u, phi.eval(WordView(u).subspan(sub, phi.window_length())));
  });
  return SlidingFlip::tabulated(r2, std::move(rule));
}

inline PeriodicPoint shift_point(const PeriodicPoint& p, std::int64_t k) { return p.shifted(k); }

struct RecodeResult {
  Sft space;
  OneBlockFlip flip;
  SlidingCode code;  // X -> Y; its inverse is the projection to the first coordinate
};

/// One-block recoding: Y = { (x_i, phi(x)_{-i}) }, a (m+2r)-step SFT on which
/// the flip becomes the one-block flip (a, b) -> (b, a).
inline RecodeResult recode_one_block(const Sft& x, const SlidingFlip& phi, std::uint64_t budget = 4'000'000) {
  const int r = phi.radius();
  const std::size_t wl = phi.window_length();
  const int k_step = x.step() + 2 * r;
  const std::size_t src_len = static_cast<std::size_t>(k_step) + 1 + wl - 1;
  if (count_language(x, src_len) > budget || count_language(x, src_len + 2) > budget)
    throw SearchBoundError("recoding needs " + std::to_string(count_language(x, src_len)) +
                           " source blocks, over the budget of " + std::to_string(budget));

  std::map<std::pair<Sym, Sym>, Sym> pair_index;
  std::vector<std::pair<Word, std::pair<Sym, Sym>>> code;
  for_each_block(x, wl, [&](const Word& u) {
    auto p = std::make_pair(u[static_cast<std::size_t>(r)], phi.eval(u));
    pair_index.emplace(p, 0);
    code.emplace_back(u, p);
  });
  std::vector<std::string> names;
  Sym next = 0;
  for (auto& [p, idx] : pair_index) {
    idx = next++;
    names.push_back("(" + x.alphabet().name(p.first) + "," + x.alphabet().name(p.second) + ")");
  }
  Alphabet ya(names);
  std::unordered_map<Word, Sym, WordHash> rule;
  std::vector<std::pair<Word, Sym>> rule_list;
  for (auto& [u, p] : code) {
    rule.emplace(u, pair_index.at(p));
    rule_list.emplace_back(u, pair_index.at(p));
  }
  auto image = [&](const Word& w) {
    Word out(w.size() - wl + 1);
    for (std::size_t t = 0; t < out.size(); ++t)
      out[t] = rule.at(Word(w.begin() + static_cast<std::ptrdiff_t>(t), w.begin() + static_cast<std::ptrdiff_t>(t + wl)));
    return out;
  };
  std::vector<Word> allowed;
  for_each_block(x, src_len, [&](const Word& w) { allowed.push_back(image(w)); });
  Sft y = Sft::from_allowed(ya, k_step, std::move(allowed));

  // Self-check: the presentation's language matches the image of B(X).
  for (std::size_t n = 1; n <= static_cast<std::size_t>(k_step) + 3; ++n) {
    std::set<Word> img;
    for_each_block(x, n + wl - 1, [&](const Word& w) { img.insert(image(w)); });
    if (img.size() != count_language(y, n))
      throw ConsistencyError("recoded presentation disagrees with the image language at length " + std::to_string(n));
  }

  std::vector<Sym> swap(ya.size());
  for (auto& [p, idx] : pair_index) {
    auto it = pair_index.find({p.second, p.first});
    if (it == pair_index.end()) throw PreconditionError("recode_one_block: input is not a flip");
    swap[idx] = it->second;
  }
  return RecodeResult{std::move(y), OneBlockFlip{SymbolInvolution(std::move(swap))},
                      SlidingCode{r, std::move(ya), std::move(rule_list)}};
}

struct HigherBlockResult {
  Sft space;
  OneBlockFlip flip;
};

inline std::string block_symbol_name(const Alphabet& a, WordView w) {
  return a.single_char() ? a.format(w) : "[" + a.format(w) + "]";
}

/// X^[N] with the one-block flip w -> w*. For odd N it is conjugate to
/// (X, phi), for even N to (X, sigma phi).
inline HigherBlockResult higher_block(const Sft& x, const OneBlockFlip& phi, int n) {
  if (n < 1) throw DomainError("higher block length must be positive");
  if (n == 1) return {x, phi};
  const auto blocks = language(x, static_cast<std::size_t>(n));
  std::vector<std::string> names;
  std::unordered_map<Word, Sym, WordHash> index;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    names.push_back(block_symbol_name(x.alphabet(), blocks[i]));
    index.emplace(blocks[i], static_cast<Sym>(i));
  }
  std::vector<Word> allowed;
  for_each_block(x, static_cast<std::size_t>(n) + 1, [&](const Word& w) {
    allowed.push_back({index.at(Word(w.begin(), w.end() - 1)), index.at(Word(w.begin() + 1, w.end()))});
  });
  std::vector<Sym> map(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto it = index.find(star_word(blocks[i], phi.tau));
    if (it == index.end()) throw PreconditionError("higher_block: language is not closed under the star map");
    map[i] = it->second;
  }
  return {Sft::from_allowed(Alphabet(names), 1, std::move(allowed)), OneBlockFlip{SymbolInvolution(std::move(map))}};
}

/// theta = sigma^((n-m)/2) intertwines sigma^m phi and sigma^n phi.
inline ConjugacyDescriptor even_shift_conjugacy(std::int64_t m, std::int64_t n) {
  if ((n - m) % 2 != 0) throw PreconditionError("even_shift_conjugacy requires n - m even");
  return ShiftPower{(n - m) / 2};
}

/// Checks theta (sigma^m phi) = (sigma^n phi) theta on every periodic point
/// of period <= max_period, where theta = sigma^k.
inline bool verify_shift_intertwining(const Sft& x, const SlidingFlip& phi, int m, int n, std::int64_t k,
                                      std::size_t max_period) {
  auto a = compose_shift(x, phi, m);
  auto b = compose_shift(x, phi, n);
  for (std::size_t p = 1; p <= max_period; ++p)
    for (const auto& pt : periodic_points(x, p)) {
      auto lhs = apply_flip_periodic(a, pt).shifted(k);
      auto rhs = apply_flip_periodic(b, pt.shifted(k));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace shiftflip
