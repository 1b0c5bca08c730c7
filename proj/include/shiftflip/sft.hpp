#pragma once

// Shifts of finite type presented by an alphabet, a step m and the allowed
// (m+1)-blocks. Presentations are trimmed to essential form on construction,
// so every allowed block extends to a bi-infinite point.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "shiftflip/error.hpp"
#include "shiftflip/words.hpp"

namespace shiftflip {

class Sft {
 public:
  /// Largest number of candidate (m+1)-words we are willing to materialize
  /// when the presentation is given by forbidden blocks.
  static constexpr std::uint64_t kMaxCandidateBlocks = std::uint64_t{1} << 24;

  static Sft from_forbidden(Alphabet alphabet, int step, std::vector<Word> forbidden) {
    check_step(step);
    for (const auto& f : forbidden) {
      alphabet.check(f);
      if (f.empty() || f.size() > static_cast<std::size_t>(step) + 1)
        throw DomainError("forbidden blocks must have length 1..step+1");
    }
    std::sort(forbidden.begin(), forbidden.end(), shortlex_less);
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());

    const std::size_t len = static_cast<std::size_t>(step) + 1;
    const std::uint64_t total = checked_power(alphabet.size(), len);
    if (total > kMaxCandidateBlocks) throw SearchBoundError("too many candidate blocks for this presentation");
    std::vector<Word> allowed;
    Word w(len, 0);
    for (std::uint64_t k = 0; k < total; ++k) {
      std::uint64_t c = k;
      for (std::size_t i = len; i-- > 0;) {
        w[i] = static_cast<Sym>(c % alphabet.size());
        c /= alphabet.size();
      }
      bool ok = std::none_of(forbidden.begin(), forbidden.end(), [&](const Word& f) { return contains_factor(w, f); });
      if (ok) allowed.push_back(w);
    }
    Sft x(std::move(alphabet), step, std::move(allowed));
    x.forbidden_ = std::move(forbidden);
    return x;
  }

  static Sft from_allowed(Alphabet alphabet, int step, std::vector<Word> allowed) {
    check_step(step);
    for (const auto& a : allowed) {
      alphabet.check(a);
      if (a.size() != static_cast<std::size_t>(step) + 1) throw DomainError("allowed blocks must have length step+1");
    }
    return Sft(std::move(alphabet), step, std::move(allowed));
  }

  static Sft full_shift(Alphabet alphabet) { return from_forbidden(std::move(alphabet), 1, {}); }

  const Alphabet& alphabet() const { return alphabet_; }
  int step() const { return step_; }
  std::size_t block_length() const { return static_cast<std::size_t>(step_) + 1; }

  /// Allowed (m+1)-blocks after trimming, sorted.
  const std::vector<Word>& allowed_blocks() const { return allowed_; }

  /// The forbidden list used for serialization: the original list when the
  /// presentation came from forbidden blocks, otherwise the complement of the
  /// allowed blocks.
  std::vector<Word> forbidden_blocks() const {
    if (forbidden_) return *forbidden_;
    const std::size_t len = block_length();
    const std::uint64_t total = checked_power(alphabet_.size(), len);
    if (total > kMaxCandidateBlocks) throw SearchBoundError("forbidden list too large to materialize");
    std::vector<Word> out;
    Word w(len, 0);
    for (std::uint64_t k = 0; k < total; ++k) {
      std::uint64_t c = k;
      for (std::size_t i = len; i-- > 0;) {
        w[i] = static_cast<Sym>(c % alphabet_.size());
        c /= alphabet_.size();
      }
      if (!allowed_set_.count(w)) out.push_back(w);
    }
    return out;
  }

  // Transition graph: vertices are the allowed m-words, edges the allowed
  // (m+1)-blocks.
  std::size_t vertex_count() const { return vertices_.size(); }
  const Word& vertex(std::size_t v) const { return vertices_[v]; }
  /// Out-edges of v as (appended symbol, target), sorted by symbol.
  const std::vector<std::pair<Sym, std::size_t>>& out_edges(std::size_t v) const { return out_[v]; }
  std::size_t edge_count() const { return allowed_.size(); }

  std::optional<std::size_t> vertex_of(WordView w) const {
    auto it = vertex_index_.find(Word(w.begin(), w.end()));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_allowed_block(WordView w) const { return allowed_set_.count(Word(w.begin(), w.end())) != 0; }

  /// Membership in the language B(X).
  bool is_allowed(WordView w) const {
    const std::size_t len = block_length();
    if (w.size() < len) return short_[w.size()].count(Word(w.begin(), w.end())) != 0;
    for (std::size_t i = 0; i + len <= w.size(); ++i)
      if (!is_allowed_block(w.subspan(i, len))) return false;
    return true;
  }

  /// True if x, read cyclically with period |w|, is a point of X.
  bool is_cyclically_allowed(WordView w) const {
    if (w.empty()) return false;
    const std::size_t len = block_length();
    Word window(len);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t k = 0; k < len; ++k) window[k] = w[(i + k) % w.size()];
      if (!is_allowed_block(window)) return false;
    }
    return true;
  }

 private:
  Sft(Alphabet alphabet, int step, std::vector<Word> allowed) : alphabet_(std::move(alphabet)), step_(step) {
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    trim(allowed);
    if (allowed.empty()) throw DomainError("presentation defines the empty shift");
    allowed_ = std::move(allowed);
    build();
  }

  static void check_step(int step) {
    if (step < 1) throw DomainError("step must be a positive integer");
  }

  static std::uint64_t checked_power(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
      r *= base;
    }
    return r;
  }

  void trim(std::vector<Word>& blocks) const {
    const std::size_t m = static_cast<std::size_t>(step_);
    for (;;) {
      std::set<Word> prefixes, suffixes;
      for (const auto& b : blocks) {
        prefixes.insert(Word(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m)));
        suffixes.insert(Word(b.begin() + 1, b.end()));
      }
      std::vector<Word> kept;
      for (const auto& b : blocks) {
        Word pre(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m));
        Word suf(b.begin() + 1, b.end());
        if (suffixes.count(pre) && prefixes.count(suf)) kept.push_back(b);
      }
      if (kept.size() == blocks.size()) return;
      blocks = std::move(kept);
    }
  }

  void build() {
    const std::size_t m = static_cast<std::size_t>(step_);
    std::set<Word> verts;
    for (const auto& b : allowed_) {
      verts.insert(Word(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m)));
      allowed_set_.insert(b);
    }
    vertices_.assign(verts.begin(), verts.end());
    for (std::size_t v = 0; v < vertices_.size(); ++v) vertex_index_.emplace(vertices_[v], v);
    out_.assign(vertices_.size(), {});
    for (const auto& b : allowed_) {
      auto src = vertex_index_.at(Word(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m)));
      auto dst = vertex_index_.at(Word(b.begin() + 1, b.end()));
      out_[src].emplace_back(b.back(), dst);
    }
    for (auto& e : out_) std::sort(e.begin(), e.end());
    short_.assign(m + 1, {});
    short_[0].insert(Word{});
    for (const auto& v : vertices_)
      for (std::size_t n = 1; n <= m; ++n) short_[n].insert(Word(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  Alphabet alphabet_;
  int step_ = 1;
  std::vector<Word> allowed_;
  std::optional<std::vector<Word>> forbidden_;
  std::unordered_set<Word, WordHash> allowed_set_;
  std::vector<Word> vertices_;
  std::unordered_map<Word, std::size_t, WordHash> vertex_index_;
  std::vector<std::vector<std::pair<Sym, std::size_t>>> out_;
  std::vector<std::unordered_set<Word, WordHash>> short_;
};

// ---------------------------------------------------------------------------
// Language, periodic points, structural tests
// ---------------------------------------------------------------------------

/// Number of n-blocks, by path counting (saturates at uint64 max).
inline std::uint64_t count_language(const Sft& x, std::size_t n) {
  if (n == 0) throw DomainError("block length must be positive");
  const std::size_t m = static_cast<std::size_t>(x.step());
  if (n <= m) {
    std::set<Word> s;
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
      s.insert(Word(x.vertex(v).begin(), x.vertex(v).begin() + static_cast<std::ptrdiff_t>(n)));
    return s.size();
  }
  std::vector<std::uint64_t> cur(x.vertex_count(), 1), next;
  for (std::size_t k = m; k < n; ++k) {
    next.assign(x.vertex_count(), 0);
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
      for (auto [s, t] : x.out_edges(v)) {
        (void)s;
        auto sum = next[t] + cur[v];
        next[t] = sum < next[t] ? std::numeric_limits<std::uint64_t>::max() : sum;
      }
    cur.swap(next);
  }
  std::uint64_t total = 0;
  for (auto c : cur) {
    auto sum = total + c;
    total = sum < total ? std::numeric_limits<std::uint64_t>::max() : sum;
  }
  return total;
}

/// Calls visit(word) for every n-block in lexicographic order.
inline void for_each_block(const Sft& x, std::size_t n, const std::function<void(const Word&)>& visit) {
  if (n == 0) throw DomainError("block length must be positive");
  const std::size_t m = static_cast<std::size_t>(x.step());
  if (n <= m) {
    std::set<Word> s;
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
      s.insert(Word(x.vertex(v).begin(), x.vertex(v).begin() + static_cast<std::ptrdiff_t>(n)));
    for (const auto& w : s) visit(w);
    return;
  }
  Word w;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (w.size() == n) {
      visit(w);
      return;
    }
    for (auto [s, t] : x.out_edges(v)) {
      w.push_back(s);
      walk(t);
      w.pop_back();
    }
  };
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    w = x.vertex(v);
    walk(v);
  }
}

inline std::vector<Word> language(const Sft& x, std::size_t n) {
  std::vector<Word> out;
  for_each_block(x, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

/// Strong connectivity of the transition graph.
inline bool is_irreducible(const Sft& x) {
  const std::size_t nv = x.vertex_count();
  auto reach = [&](bool forward) {
    std::vector<std::vector<std::size_t>> adj(nv);
    for (std::size_t v = 0; v < nv; ++v)
      for (auto [s, t] : x.out_edges(v)) {
        (void)s;
        if (forward) adj[v].push_back(t);
        else adj[t].push_back(v);
      }
    std::vector<char> seen(nv, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto t : adj[v])
        if (!seen[t]) {
          seen[t] = 1;
          ++count;
          stack.push_back(t);
        }
    }
    return count == nv;
  };
  return reach(true) && reach(false);
}

/// An irreducible SFT is finite exactly when its graph is a single cycle.
inline bool is_infinite(const Sft& x) {
  if (!is_irreducible(x)) throw PreconditionError("is_infinite requires an irreducible presentation");
  return x.edge_count() > x.vertex_count();
}

/// In an m-step SFT every allowed block of length >= m is intrinsically
/// synchronizing; we return the least allowed m-block.
inline Word synchronizing_block(const Sft& x) {
  if (!is_irreducible(x)) throw PreconditionError("synchronizing_block requires an irreducible presentation");
  return x.vertex(0);
}

/// Number of points with sigma^n x = x, as the trace of A^n (saturating).
inline std::uint64_t count_periodic_points(const Sft& x, std::size_t n) {
  if (n == 0) throw DomainError("period must be positive");
  const std::size_t nv = x.vertex_count();
  std::uint64_t total = 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t start = 0; start < nv; ++start) {
    std::vector<std::uint64_t> cur(nv, 0), next;
    cur[start] = 1;
    for (std::size_t k = 0; k < n; ++k) {
      next.assign(nv, 0);
      for (std::size_t v = 0; v < nv; ++v) {
        if (!cur[v]) continue;
        for (auto [s, t] : x.out_edges(v)) {
          (void)s;
          next[t] = next[t] > kMax - cur[v] ? kMax : next[t] + cur[v];
        }
      }
      cur.swap(next);
    }
    total = total > kMax - cur[start] ? kMax : total + cur[start];
  }
  return total;
}

/// Depth-first enumeration of cyclic words of length n that are points of X.
/// `options(pos, prefix)` returns the candidate symbols at `pos` given the
/// symbols already placed; linear windows are pruned as they complete and
/// the wrap-around windows are checked at the leaf.
inline void for_each_cyclic_word(const Sft& x, std::size_t n,
                                 const std::function<std::vector<Sym>(std::size_t, const Word&)>& options,
                                 const std::function<void(const Word&)>& leaf) {
  if (n == 0) throw DomainError("period must be positive");
  const std::size_t len = x.block_length();
  Word w;
  w.reserve(n);
  std::function<void()> rec = [&]() {
    if (w.size() == n) {
      if (x.is_cyclically_allowed(w)) leaf(w);
      return;
    }
    for (Sym s : options(w.size(), w)) {
      w.push_back(s);
      bool ok = w.size() < len ? x.is_allowed(w) : x.is_allowed_block(WordView(w).subspan(w.size() - len, len));
      if (ok) rec();
      w.pop_back();
    }
  };
  rec();
}

inline std::vector<Sym> all_symbols(const Sft& x) {
  std::vector<Sym> s(x.alphabet().size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<Sym>(i);
  return s;
}

/// All points with sigma^n x = x, as their length-n blocks x_0..x_{n-1},
/// in lexicographic order.
inline std::vector<PeriodicPoint> periodic_points(const Sft& x, std::size_t n) {
  std::vector<PeriodicPoint> out;
  auto syms = all_symbols(x);
  for_each_cyclic_word(
      x, n, [&](std::size_t, const Word&) { return syms; }, [&](const Word& w) { out.push_back(PeriodicPoint{w}); });
  return out;
}

inline bool ep_point_admissible(const Sft& x, const EventuallyPeriodicPoint& p) {
  if (!x.is_cyclically_allowed(p.left()) || !x.is_cyclically_allowed(p.right())) return false;
  const auto len = static_cast<std::int64_t>(x.block_length());
  const auto lo = p.center_start() - static_cast<std::int64_t>(p.left().size()) - len;
  const auto hi = p.center_end() + static_cast<std::int64_t>(p.right().size()) + len;
  for (std::int64_t i = lo; i + len - 1 <= hi; ++i)
    if (!x.is_allowed_block(p.window(i, i + len - 1))) return false;
  return true;
}

/// Least word w in shortlex order with u w v in B(X), of length <= max_len.
inline std::optional<Word> shortest_connector(const Sft& x, WordView u, WordView v, std::size_t max_len) {
  if (!x.is_allowed(u) || !x.is_allowed(v)) return std::nullopt;
  const std::size_t len = x.block_length();
  auto syms = all_symbols(x);
  Word cur(u.begin(), u.end());
  std::optional<Word> found;
  std::function<bool(std::size_t)> rec = [&](std::size_t remaining) {
    if (remaining == 0) {
      Word full = cur;
      full.insert(full.end(), v.begin(), v.end());
      if (x.is_allowed(full)) {
        found = Word(cur.begin() + static_cast<std::ptrdiff_t>(u.size()), cur.end());
        return true;
      }
      return false;
    }
    for (Sym s : syms) {
      cur.push_back(s);
      bool ok = cur.size() < len ? x.is_allowed(cur) : x.is_allowed_block(WordView(cur).subspan(cur.size() - len, len));
      if (ok && rec(remaining - 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  for (std::size_t l = 0; l <= max_len; ++l) {
    cur.assign(u.begin(), u.end());
    if (rec(l)) return found;
  }
  return std::nullopt;
}

}  // namespace shiftflip
