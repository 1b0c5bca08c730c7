#pragma once

// Alphabets, finite words, the star operation and the two concrete kinds of
// bi-infinite points the library manipulates: periodic points and eventually
// periodic points (a center block spliced between two periodic tails).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shiftflip/error.hpp"

namespace shiftflip {

using Sym = std::uint32_t;
using Word = std::vector<Sym>;
using WordView = std::span<const Sym>;

/// Lazily evaluated bi-infinite sequence, i -> x_i.
using Sequence = std::function<Sym(std::int64_t)>;

inline std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::uint64_t hash_word(WordView w) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Sym s : w) {
    h ^= static_cast<std::uint64_t>(s) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return h ^ w.size();
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    return static_cast<std::size_t>(hash_word(w));
  }
};

inline Word concat(std::initializer_list<WordView> parts) {
  Word out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline Word repeat(WordView w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t k = 0; k < times; ++k) out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline Word reversed(WordView w) { return Word(w.rbegin(), w.rend()); }

/// True if `needle` occurs as a factor of `hay`.
inline bool contains_factor(WordView hay, WordView needle) {
  if (needle.empty()) return true;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

/// Shortlex order: shorter words first, ties broken lexicographically.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw DomainError("alphabet must be nonempty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], static_cast<Sym>(i)).second)
        throw DomainError("duplicate symbol '" + names_[i] + "' in alphabet");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  const std::string& name(Sym s) const {
    if (s >= names_.size()) throw DomainError("symbol index out of range");
    return names_[s];
  }

  Sym index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw DomainError("symbol '" + std::string(name) + "' not in alphabet");
    return it->second;
  }

  bool contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }

  bool single_char() const {
    return std::all_of(names_.begin(), names_.end(), [](const auto& n) { return n.size() == 1; });
  }

  void check(WordView w) const {
    for (Sym s : w)
      if (s >= names_.size()) throw DomainError("word contains a symbol outside the alphabet");
  }

  /// Single-character alphabets print as plain strings ("0101"), others as
  /// space separated names.
  std::string format(WordView w) const {
    std::string out;
    bool compact = single_char();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!compact && i) out += ' ';
      out += name(w[i]);
    }
    return out;
  }

  /// Inverse of format(). The empty string parses as the empty word.
  Word parse(std::string_view text) const {
    Word w;
    if (single_char()) {
      for (char c : text) w.push_back(index(std::string_view(&c, 1)));
      return w;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && text[pos] == ' ') ++pos;
      std::size_t end = text.find(' ', pos);
      if (end == std::string_view::npos) end = text.size();
      if (end > pos) w.push_back(index(text.substr(pos, end - pos)));
      pos = end;
    }
    return w;
  }

  Word parse(const std::vector<std::string>& symbols) const {
    Word w;
    for (const auto& s : symbols) w.push_back(index(s));
    return w;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Sym> index_;
};

/// A total map on symbols whose square is the identity (the symbol map of a
/// one-block flip).
class SymbolInvolution {
 public:
  SymbolInvolution() = default;

  explicit SymbolInvolution(std::vector<Sym> image) : image_(std::move(image)) {
    for (std::size_t s = 0; s < image_.size(); ++s) {
      if (image_[s] >= image_.size()) throw DomainError("symbol map leaves the alphabet");
      if (image_[image_[s]] != s) throw DomainError("symbol map is not an involution");
    }
  }

  static SymbolInvolution identity(std::size_t n) {
    std::vector<Sym> img(n);
    std::iota(img.begin(), img.end(), Sym{0});
    return SymbolInvolution(std::move(img));
  }

  Sym operator()(Sym s) const {
    if (s >= image_.size()) throw DomainError("symbol outside the involution's domain");
    return image_[s];
  }

  std::size_t size() const { return image_.size(); }
  const std::vector<Sym>& image() const { return image_; }

  bool is_identity() const {
    for (std::size_t s = 0; s < image_.size(); ++s)
      if (image_[s] != s) return false;
    return true;
  }

  friend bool operator==(const SymbolInvolution&, const SymbolInvolution&) = default;

 private:
  std::vector<Sym> image_;
};

/// w* : reverse w and apply the symbol map to every letter.
inline Word star_word(WordView w, const SymbolInvolution& tau) {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[w.size() - 1 - i] = tau(w[i]);
  return out;
}

/// A point x with sigma^n(x) = x, stored as the block x_0 ... x_{n-1}.
struct PeriodicPoint {
  Word word;

  std::size_t period() const { return word.size(); }

  Sym at(std::int64_t i) const {
    return word[static_cast<std::size_t>(floor_mod(i, static_cast<std::int64_t>(word.size())))];
  }

  /// sigma^k(x), i.e. i -> x_{i+k}.
  PeriodicPoint shifted(std::int64_t k) const {
    PeriodicPoint out{Word(word.size())};
    for (std::size_t i = 0; i < word.size(); ++i) out.word[i] = at(static_cast<std::int64_t>(i) + k);
    return out;
  }

  Sequence sequence() const {
    return [w = word](std::int64_t i) {
      return w[static_cast<std::size_t>(floor_mod(i, static_cast<std::int64_t>(w.size())))];
    };
  }

  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;
};

/// ... u u u [center] v v v ...
///
/// The left tail is right-aligned: the coordinate center_start - 1 holds the
/// last symbol of `left`. The right tail starts with its first symbol at
/// center_start + |center|.
class EventuallyPeriodicPoint {
 public:
  EventuallyPeriodicPoint(Word left, Word center, Word right, std::int64_t center_start = 0)
      : left_(std::move(left)), center_(std::move(center)), right_(std::move(right)),
        start_(center_start) {
    if (left_.empty() || right_.empty()) throw DomainError("tails of an eventually periodic point must be nonempty");
  }

  const Word& left() const { return left_; }
  const Word& center() const { return center_; }
  const Word& right() const { return right_; }
  std::int64_t center_start() const { return start_; }
  /// One past the last center coordinate.
  std::int64_t center_end() const { return start_ + static_cast<std::int64_t>(center_.size()); }

  Sym at(std::int64_t i) const {
    if (i < start_) {
      auto n = static_cast<std::int64_t>(left_.size());
      auto back = floor_mod(start_ - 1 - i, n);
      return left_[static_cast<std::size_t>(n - 1 - back)];
    }
    if (i >= center_end()) {
      auto n = static_cast<std::int64_t>(right_.size());
      return right_[static_cast<std::size_t>(floor_mod(i - center_end(), n))];
    }
    return center_[static_cast<std::size_t>(i - start_)];
  }

  Word window(std::int64_t lo, std::int64_t hi) const {
    Word out;
    for (std::int64_t i = lo; i <= hi; ++i) out.push_back(at(i));
    return out;
  }

  Sequence sequence() const {
    return [p = *this](std::int64_t i) { return p.at(i); };
  }

 private:
  Word left_, center_, right_;
  std::int64_t start_;
};

/// Coordinate range [lo, hi] outside of which both points are purely periodic
/// with a common period `period` on each side.
struct ComparisonFrame {
  std::int64_t lo, hi, left_period, right_period;
};

inline ComparisonFrame comparison_frame(const EventuallyPeriodicPoint& p, const EventuallyPeriodicPoint& q) {
  auto lp = std::lcm(static_cast<std::int64_t>(p.left().size()), static_cast<std::int64_t>(q.left().size()));
  auto rp = std::lcm(static_cast<std::int64_t>(p.right().size()), static_cast<std::int64_t>(q.right().size()));
  auto lo = std::min(p.center_start(), q.center_start());
  auto hi = std::max(p.center_end(), q.center_end()) - 1;
  return {lo, hi, lp, rp};
}

/// Coordinates where p and q differ, provided the set is finite. The bool is
/// false when the tails disagree (the difference set is infinite).
inline std::pair<bool, std::vector<std::int64_t>> difference_set(const EventuallyPeriodicPoint& p,
                                                                 const EventuallyPeriodicPoint& q) {
  auto fr = comparison_frame(p, q);
  for (std::int64_t i = fr.lo - fr.left_period; i < fr.lo; ++i)
    if (p.at(i) != q.at(i)) return {false, {}};
  for (std::int64_t i = fr.hi + 1; i <= fr.hi + fr.right_period; ++i)
    if (p.at(i) != q.at(i)) return {false, {}};
  std::vector<std::int64_t> diff;
  for (std::int64_t i = fr.lo; i <= fr.hi; ++i)
    if (p.at(i) != q.at(i)) diff.push_back(i);
  return {true, diff};
}

inline bool same_point(const EventuallyPeriodicPoint& p, const EventuallyPeriodicPoint& q) {
  auto [finite, diff] = difference_set(p, q);
  return finite && diff.empty();
}

}  // namespace shiftflip
