#pragma once

#include "shiftflip/flips.hpp"
#include "shiftflip/sft.hpp"

namespace fixtures {

using namespace shiftflip;

inline const Alphabet& binary() {
  static const Alphabet a({"0", "1"});
  return a;
}

inline Sft golden_mean() { return Sft::from_forbidden(binary(), 1, {binary().parse("11")}); }
inline Sft full2() { return Sft::full_shift(binary()); }

inline OneBlockFlip rho(std::size_t n = 2) { return OneBlockFlip{SymbolInvolution::identity(n)}; }
inline OneBlockFlip swap01() { return OneBlockFlip{SymbolInvolution({1, 0})}; }

inline Word w(std::string_view s) { return binary().parse(s); }

}  // namespace fixtures
