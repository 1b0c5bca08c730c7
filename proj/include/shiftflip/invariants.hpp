#pragma once

// Conjugacy invariants of shift-flip systems: the counts |F(phi; n)| of points
// fixed by both sigma^n and phi, membership of eventually periodic points in
// A(phi), and non-conjugacy certificates read off two count vectors.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shiftflip/error.hpp"
#include "shiftflip/flips.hpp"
#include "shiftflip/sft.hpp"
#include "shiftflip/words.hpp"

namespace shiftflip {

/// counts[n-1] = |F(phi; n)| for n = 1..horizon.
struct FVector {
  std::vector<std::uint64_t> counts;

  std::size_t horizon() const { return counts.size(); }
  std::uint64_t at(std::size_t n) const { return counts.at(n - 1); }

  /// F(phi; n) is contained in F(phi; n') whenever n divides n'.
  bool divisibility_nested() const {
    for (std::size_t n = 1; n <= horizon(); ++n)
      for (std::size_t n2 = 2 * n; n2 <= horizon(); n2 += n)
        if (at(n) > at(n2)) return false;
    return true;
  }

  friend bool operator==(const FVector&, const FVector&) = default;
};

/// Enumerates points of period n with x_k = tau(x_{s-k}) for every k outside
/// `free`; positions in `free` (a set closed under k -> s-k) are unconstrained.
inline void for_each_symmetric_point(const Sft& x, const SymbolInvolution& tau, std::int64_t s, std::size_t n,
                                     const std::function<bool(std::size_t)>& free,
                                     const std::function<void(const Word&)>& leaf) {
  auto syms = all_symbols(x);
  std::vector<Sym> fixed_syms;
  for (Sym a : syms)
    if (tau(a) == a) fixed_syms.push_back(a);
  const auto nn = static_cast<std::int64_t>(n);
  for_each_cyclic_word(
      x, n,
      [&](std::size_t pos, const Word& prefix) -> std::vector<Sym> {
        if (free && free(pos)) return syms;
        auto mirror = static_cast<std::size_t>(floor_mod(s - static_cast<std::int64_t>(pos), nn));
        if (mirror < pos) return {tau(prefix[mirror])};
        if (mirror == pos) return fixed_syms;
        return syms;
      },
      leaf);
}

/// |{x : sigma^n x = x, x_k = tau(x_{s-k})}|, the fixed points of the flip
/// sigma^(-s) rho_tau.
inline std::uint64_t count_reflection_fixed(const Sft& x, const SymbolInvolution& tau, std::int64_t s, std::size_t n) {
  std::uint64_t count = 0;
  for_each_symmetric_point(x, tau, s, n, {}, [&](const Word&) { ++count; });
  return count;
}

/// Direct count over all points of period n.
inline std::uint64_t count_fixed_bruteforce(const Sft& x, const SlidingFlip& phi, std::size_t n) {
  std::uint64_t count = 0;
  auto syms = all_symbols(x);
  for_each_cyclic_word(
      x, n, [&](std::size_t, const Word&) { return syms; },
      [&](const Word& w) {
        PeriodicPoint p{w};
        if (apply_flip_periodic(phi, p) == p) ++count;
      });
  return count;
}

/// Largest number of periodic points the generic counter will enumerate for
/// a single period.
inline constexpr std::uint64_t kBruteForcePointBudget = 50'000'000;

inline FVector fvector(const Sft& x, const SlidingFlip& phi, std::size_t horizon) {
  if (horizon == 0) throw DomainError("horizon must be positive");
  FVector f;
  auto refl = phi.reflection_form();
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (refl) {
      f.counts.push_back(count_reflection_fixed(x, refl->first, refl->second, n));
      continue;
    }
    if (count_periodic_points(x, n) > kBruteForcePointBudget)
      throw SearchBoundError("period " + std::to_string(n) + " has too many points for direct counting");
    f.counts.push_back(count_fixed_bruteforce(x, phi, n));
  }
  return f;
}

inline FVector fvector_bruteforce(const Sft& x, const SlidingFlip& phi, std::size_t horizon) {
  FVector f;
  for (std::size_t n = 1; n <= horizon; ++n) f.counts.push_back(count_fixed_bruteforce(x, phi, n));
  return f;
}

struct AMembership {
  bool in = false;
  /// A finitary block occurs infinitely often in both tails. Always true for
  /// points of an SFT: every tail contains blocks of length >= m.
  bool finitary_in_tails = true;
  bool finite_difference = false;
  std::vector<std::int64_t> difference;
  std::string reason;
};

/// Decides p in A(phi): 0 < |{i : phi(p)_i != p_i}| < infinity.
inline AMembership a_membership(const Sft& x, const SlidingFlip& phi, const EventuallyPeriodicPoint& p) {
  if (!ep_point_admissible(x, p)) throw PreconditionError("a_membership: point is not in X");
  AMembership out;
  auto image = apply_flip_ep(phi, p);
  auto [finite, diff] = difference_set(p, image);
  out.finite_difference = finite;
  out.difference = std::move(diff);
  if (!finite) {
    out.reason = "phi(p) and p differ on infinitely many coordinates";
  } else if (out.difference.empty()) {
    out.reason = "phi(p) = p";
  } else {
    out.in = true;
    out.reason = "phi(p) and p differ on " + std::to_string(out.difference.size()) + " coordinates";
  }
  return out;
}

struct NonConjugacyCertificate {
  std::size_t n = 0;
  std::uint64_t first = 0;
  std::uint64_t second = 0;
};

inline std::optional<NonConjugacyCertificate> certify_nonconjugate(const FVector& a, const FVector& b) {
  if (a.horizon() != b.horizon()) throw DomainError("F-vectors have different horizons");
  for (std::size_t n = 1; n <= a.horizon(); ++n)
    if (a.at(n) != b.at(n)) return NonConjugacyCertificate{n, a.at(n), b.at(n)};
  return std::nullopt;
}

}  // namespace shiftflip
