#pragma once

// Iterated construction of pairwise non-conjugate flips: each stage brings the
// current flip to one-block form, picks a branch with nonempty A, passes to a
// system where the finitary block is a symbol, and twists the flip by the
// marker automorphism. Distinctness is certified by F-vectors.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftflip/constructions.hpp"
#include "shiftflip/error.hpp"
#include "shiftflip/flips.hpp"
#include "shiftflip/invariants.hpp"
#include "shiftflip/sft.hpp"

namespace shiftflip {

struct SeparationOptions {
  std::size_t horizon = 0;  // 0: the witness period of the first twisted stage
  std::size_t alphabet_cap = 64;
  std::uint64_t recode_budget = 4'000'000;
  bool shift_companions = true;
  SearchBounds bounds;
  std::size_t clause_horizon = 0;  // 0: the stage horizon
};

struct SeparationStage {
  std::string origin;
  Sft space;
  SlidingFlip flip;
  FVector fvector;
  std::vector<ConjugacyDescriptor> chain;  // from the previous stage's system
  std::vector<std::string> steps;
  std::optional<WitnessBranch> branch;
  std::optional<TwistData> twist;
  std::optional<ValidationReport> validation;
};

struct PairCertificate {
  std::size_t i = 0, j = 0;
  std::optional<NonConjugacyCertificate> certificate;
};

struct SeparationReport {
  std::size_t requested = 0;
  std::size_t horizon = 0;
  std::vector<SeparationStage> stages;
  std::vector<PairCertificate> certificates;
  std::optional<std::string> halt;  // why the twisting iteration stopped early
  bool horizon_insufficient = false;

  bool separated() const {
    if (stages.size() < requested) return false;
    for (const auto& c : certificates)
      if (!c.certificate) return false;
    return true;
  }
};

namespace detail {

inline FVector truncated(const FVector& f, std::size_t h) {
  return FVector{std::vector<std::uint64_t>(f.counts.begin(), f.counts.begin() + static_cast<std::ptrdiff_t>(h))};
}

}  // namespace detail

inline SeparationReport separate_flips(const Sft& x, const SlidingFlip& phi, std::size_t k, const SeparationOptions& opt = {}) {
  if (k < 1) throw DomainError("separate_flips requires k >= 1");
  if (!is_irreducible(x) || !is_infinite(x)) throw PreconditionError("separate_flips requires an infinite synchronized system");
  auto v0 = validate_flip(x, phi);
  if (!v0.valid()) throw PreconditionError("separate_flips: input is not a flip");

  SeparationReport rep;
  rep.requested = k;
  rep.horizon = opt.horizon;
  rep.stages.push_back({.origin = "input", .space = x, .flip = phi, .validation = v0});
  std::vector<std::optional<TwistReport>> twists{std::nullopt};

  while (rep.stages.size() < k) {
    const auto& prev = rep.stages.back();
    SeparationStage st{.origin = "twisted", .space = prev.space};
    Sft y = prev.space;
    OneBlockFlip tau;
    if (auto m = prev.flip.one_block_map()) {
      tau = OneBlockFlip{*m};
    } else {
      try {
        auto rc = recode_one_block(prev.space, prev.flip, opt.recode_budget);
        y = std::move(rc.space);
        tau = std::move(rc.flip);
        st.chain.push_back(std::move(rc.code));
        st.steps.push_back("recoded to one-block form over " + std::to_string(y.alphabet().size()) + " symbols");
      } catch (const SearchBoundError& e) {
        rep.halt = "stage " + std::to_string(rep.stages.size()) + ": one-block recoding of a radius " +
                   std::to_string(prev.flip.radius()) + " flip is beyond the budget (" + e.what() + ")";
        break;
      }
    }
    if (y.alphabet().size() > opt.alphabet_cap) {
      rep.halt = "stage " + std::to_string(rep.stages.size()) + ": alphabet of " +
                 std::to_string(y.alphabet().size()) + " symbols exceeds the cap of " +
                 std::to_string(opt.alphabet_cap);
      break;
    }
    auto pc = branch_witness(y, tau, opt.bounds);
    st.branch = pc.branch;
    st.chain.insert(st.chain.end(), pc.chain.begin(), pc.chain.end());
    st.steps.push_back(std::string("branch ") + to_string(pc.branch));
    Sft work = pc.space;
    OneBlockFlip wtau = pc.phi;
    if (pc.branch == WitnessBranch::kShiftFlip) {
      auto hb = higher_block(work, wtau, 2);
      work = std::move(hb.space);
      wtau = std::move(hb.flip);
      st.chain.push_back(HigherBlockCode{2});
      st.steps.push_back("2-block pass to carry the shifted flip");
    }
    auto lift = lift_to_symbol(work, wtau, synchronizing_block(work));
    if (lift.block_length > 1) {
      st.chain.push_back(HigherBlockCode{lift.block_length});
      st.steps.push_back(std::to_string(lift.block_length) + "-block pass to make the finitary block a symbol");
    }
    TwistOptions po{opt.bounds, opt.horizon, opt.clause_horizon};
    std::optional<TwistReport> pd_opt;
    try {
      pd_opt = twist_flip(lift.space, lift.phi, lift.f, po);
    } catch (const SearchBoundError& e) {
      rep.halt = "stage " + std::to_string(rep.stages.size()) + ": " + e.what();
      break;
    }
    auto& pd = *pd_opt;
    if (rep.horizon == 0) rep.horizon = static_cast<std::size_t>(pd.data.period);
    st.space = lift.space;
    st.flip = pd.data.psi;
    st.twist = pd.data;
    st.validation = pd.psi_validation;
    st.steps.push_back("twisted by the marker automorphism, radius " + std::to_string(pd.data.psi_radius()));
    rep.stages.push_back(std::move(st));
    twists.push_back(std::move(pd));
  }
  if (rep.horizon == 0) rep.horizon = 12;
  const std::size_t h = rep.horizon;

  for (std::size_t s = 0; s < rep.stages.size(); ++s) {
    auto& st = rep.stages[s];
    if (twists[s] && twists[s]->f_psi.horizon() >= h)
      st.fvector = detail::truncated(twists[s]->f_psi, h);
    else if (st.twist)
      st.fvector = fvector_psi(*st.twist, h);
    else
      st.fvector = fvector(st.space, st.flip, h);
  }

  if (rep.stages.size() < k && opt.shift_companions) {
    const std::size_t base = rep.stages.size();
    for (std::size_t s = 0; s < base && rep.stages.size() < k; ++s) {
      SeparationStage comp{.origin = "shift companion of stage " + std::to_string(s), .space = rep.stages[s].space};
      comp.flip = compose_shift(comp.space, rep.stages[s].flip, 1);
      try {
        comp.fvector = fvector(comp.space, comp.flip, h);
      } catch (const SearchBoundError&) {
        continue;
      }
      bool distinct = true;
      for (const auto& other : rep.stages) distinct = distinct && certify_nonconjugate(comp.fvector, other.fvector);
      if (!distinct) continue;
      comp.chain.push_back(ShiftPower{1});
      comp.steps.push_back("composed with the shift");
      comp.validation = validate_flip(comp.space, comp.flip);
      if (!comp.validation->valid()) throw ConsistencyError("shift companion failed flip validation");
      rep.stages.push_back(std::move(comp));
    }
  }

  for (std::size_t i = 0; i < rep.stages.size(); ++i)
    for (std::size_t j = i + 1; j < rep.stages.size(); ++j) {
      auto c = certify_nonconjugate(rep.stages[i].fvector, rep.stages[j].fvector);
      if (!c) rep.horizon_insufficient = true;
      rep.certificates.push_back({i, j, c});
    }
  return rep;
}

}  // namespace shiftflip
