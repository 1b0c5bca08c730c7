#pragma once

// JSON and CSV forms of presentations, flips, conjugacy descriptors,
// F-vectors, certificates and the iterated-construction report.
//
//   space: {"alphabet": [...], "step": m, "forbidden": [[...], ...]}
//   flip:  {"type": "one_block", "symbol_map": {"a": "b", ...}}
//          {"type": "sliding", "radius": r, "rule": [{"window": [...], "out": "s"}, ...],
//           "default": {"symbol_map": {...}, "offset": k}}      ("default" optional)

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "shiftflip/coded_w.hpp"
#include "shiftflip/constructions.hpp"
#include "shiftflip/error.hpp"
#include "shiftflip/flips.hpp"
#include "shiftflip/invariants.hpp"
#include "shiftflip/sft.hpp"
#include "shiftflip/separation.hpp"

namespace shiftflip::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";

inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

namespace detail {

template <typename F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Words and involutions
// ---------------------------------------------------------------------------

inline Json word_to_json(const Alphabet& a, const Word& w) {
  Json j = Json::array();
  for (Sym s : w) j.push_back(a.name(s));
  return j;
}

inline Word word_from_json(const Alphabet& a, const Json& j) {
  if (!j.is_array()) throw ParseError("word must be an array of symbol names");
  Word w;
  for (const auto& s : j) w.push_back(a.index(s.get<std::string>()));
  return w;
}

inline Json involution_to_json(const Alphabet& a, const SymbolInvolution& tau) {
  Json j = Json::object();
  for (Sym s = 0; s < a.size(); ++s) j[a.name(s)] = a.name(tau(s));
  return j;
}

inline SymbolInvolution involution_from_json(const Alphabet& a, const Json& j) {
  if (!j.is_object()) throw ParseError("symbol_map must be an object");
  std::vector<Sym> img(a.size());
  std::vector<bool> seen(a.size(), false);
  for (const auto& [k, v] : j.items()) {
    Sym s = a.index(k);
    img[s] = a.index(v.get<std::string>());
    seen[s] = true;
  }
  for (bool b : seen)
    if (!b) throw ParseError("symbol_map must cover the whole alphabet");
  return SymbolInvolution(std::move(img));
}

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

inline Json sft_to_json(const Sft& x) {
  Json j;
  j["alphabet"] = x.alphabet().names();
  j["step"] = x.step();
  Json f = Json::array();
  for (const auto& w : x.forbidden_blocks()) f.push_back(word_to_json(x.alphabet(), w));
  j["forbidden"] = std::move(f);
  return j;
}

inline Sft sft_from_json(const Json& j) {
  return detail::guarded("space", [&] {
    if (!j.is_object()) throw ParseError("space: expected an object");
    Alphabet a(j.at("alphabet").get<std::vector<std::string>>());
    int step = j.at("step").get<int>();
    std::vector<Word> forbidden;
    for (const auto& w : j.value("forbidden", Json::array())) forbidden.push_back(word_from_json(a, w));
    return Sft::from_forbidden(std::move(a), step, std::move(forbidden));
  });
}

inline Sft load_sft(const std::string& path) { return sft_from_json(parse_json(read_file(path), path)); }

// ---------------------------------------------------------------------------
// Flips and descriptors
// ---------------------------------------------------------------------------

inline Json rule_to_json(const Alphabet& a, const std::vector<std::pair<Word, Sym>>& rule) {
  Json r = Json::array();
  for (const auto& [w, s] : rule) r.push_back(Json{{"window", word_to_json(a, w)}, {"out", a.name(s)}});
  return r;
}

inline std::vector<std::pair<Word, Sym>> rule_from_json(const Alphabet& src, const Alphabet& dst, const Json& j) {
  std::vector<std::pair<Word, Sym>> rule;
  for (const auto& e : j) rule.emplace_back(word_from_json(src, e.at("window")), dst.index(e.at("out").get<std::string>()));
  return rule;
}

inline Json flip_to_json(const Alphabet& a, const SlidingFlip& phi) {
  if (auto m = phi.one_block_map()) return Json{{"type", "one_block"}, {"symbol_map", involution_to_json(a, *m)}};
  Json j{{"type", "sliding"}, {"radius", phi.radius()}, {"rule", rule_to_json(a, phi.table().sorted())}};
  if (const auto& d = phi.default_rule())
    j["default"] = Json{{"symbol_map", involution_to_json(a, d->tau)}, {"offset", d->offset}};
  return j;
}

inline SlidingFlip flip_from_json(const Alphabet& a, const Json& j) {
  return detail::guarded("flip", [&] {
    if (!j.is_object()) throw ParseError("flip: expected an object");
    const auto type = j.at("type").get<std::string>();
    if (type == "one_block") return SlidingFlip::one_block(involution_from_json(a, j.at("symbol_map")));
    if (type != "sliding") throw ParseError("flip: unknown type '" + type + "'");
    const int r = j.at("radius").get<int>();
    auto rule = rule_from_json(a, a, j.value("rule", Json::array()));
    if (j.contains("default")) {
      const auto& d = j.at("default");
      return SlidingFlip::with_default(r, involution_from_json(a, d.at("symbol_map")), d.value("offset", 0),
                                       std::move(rule));
    }
    return SlidingFlip::tabulated(r, std::move(rule));
  });
}

inline SlidingFlip load_flip(const Alphabet& a, const std::string& path) {
  return flip_from_json(a, parse_json(read_file(path), path));
}

inline Json descriptor_to_json(const Alphabet& source, const ConjugacyDescriptor& d) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ShiftPower>) {
          return Json{{"kind", "shift_power"}, {"k", v.k}};
        } else if constexpr (std::is_same_v<T, HigherBlockCode>) {
          return Json{{"kind", "higher_block"}, {"block_length", v.block_length}};
        } else {
          Json r = Json::array();
          for (const auto& [w, s] : v.rule)
            r.push_back(Json{{"window", word_to_json(source, w)}, {"out", v.target.name(s)}});
          return Json{{"kind", "sliding_code"}, {"radius", v.radius}, {"target", v.target.names()}, {"rule", r}};
        }
      },
      d);
}

inline Json validation_to_json(const ValidationReport& r) {
  return Json{{"valid", r.valid()},
              {"image_ok", r.image_ok},
              {"involution_ok", r.involution_ok},
              {"method", r.method},
              {"blocks_checked", r.blocks_checked},
              {"violations", r.violations}};
}

// ---------------------------------------------------------------------------
// F-vectors and certificates
// ---------------------------------------------------------------------------

inline std::string fvector_csv(const FVector& f) {
  std::string s = "n,count\n";
  for (std::size_t n = 1; n <= f.horizon(); ++n) s += std::to_string(n) + "," + std::to_string(f.at(n)) + "\n";
  return s;
}

inline Json fvector_to_json(const FVector& f) { return Json{{"horizon", f.horizon()}, {"counts", f.counts}}; }

inline FVector fvector_from_json(const Json& j) {
  return detail::guarded("fvector", [&] { return FVector{j.at("counts").get<std::vector<std::uint64_t>>()}; });
}

inline Json certificate_to_json(const NonConjugacyCertificate& c, const Json& first_flip, const Json& second_flip) {
  return Json{{"n", c.n}, {"first", c.first}, {"second", c.second}, {"first_flip", first_flip},
              {"second_flip", second_flip}};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json twist_to_json(const TwistData& d) {
  const auto& a = d.space.alphabet();
  return Json{{"f", a.name(d.f())},
              {"a", a.format(d.blocks.a)},
              {"b", a.format(d.blocks.b)},
              {"c", a.format(d.c)},
              {"N", d.n_rep},
              {"d", a.format(d.d)},
              {"alpha", d.alpha},
              {"beta", d.beta},
              {"w", a.format(d.connector)},
              {"n", d.period},
              {"m", d.half},
              {"z_period_block", a.format(d.z.word)},
              {"psi_radius", d.psi_radius()},
              {"psi_exceptions", d.psi.table().size()}};
}

inline Json separation_to_json(const SeparationReport& rep, const Json& provenance) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["inputs"] = provenance;
  j["requested"] = rep.requested;
  j["horizon"] = rep.horizon;
  j["separated"] = rep.separated();
  j["horizon_insufficient"] = rep.horizon_insufficient;
  j["halt"] = rep.halt ? Json(*rep.halt) : Json(nullptr);
  Json stages = Json::array();
  std::vector<Json> flips;
  for (const auto& st : rep.stages) {
    const auto& a = st.space.alphabet();
    Json s;
    s["origin"] = st.origin;
    s["steps"] = st.steps;
    if (st.branch) s["branch"] = to_string(*st.branch);
    s["alphabet_size"] = a.size();
    s["step"] = st.space.step();
    s["flip_radius"] = st.flip.radius();
    Json chain = Json::array();
    for (const auto& d : st.chain)
      chain.push_back(std::holds_alternative<SlidingCode>(d)
                          ? Json{{"kind", "sliding_code"}, {"radius", std::get<SlidingCode>(d).radius},
                                 {"target_size", std::get<SlidingCode>(d).target.size()}}
                          : descriptor_to_json(a, d));
    s["chain"] = chain;
    if (st.twist) s["construction"] = twist_to_json(*st.twist);
    if (st.validation) s["validation"] = validation_to_json(*st.validation);
    s["fvector_csv"] = fvector_csv(st.fvector);
    flips.push_back(st.flip.one_block_map() || st.flip.table().size() <= 64
                        ? flip_to_json(a, st.flip)
                        : Json{{"type", "sliding"}, {"radius", st.flip.radius()}, {"rule_entries", st.flip.table().size()}});
    s["flip"] = flips.back();
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  Json certs = Json::array();
  for (const auto& c : rep.certificates) {
    Json e{{"i", c.i}, {"j", c.j}};
    if (c.certificate)
      e["certificate"] = certificate_to_json(*c.certificate, flips[c.i], flips[c.j]);
    else
      e["certificate"] = nullptr;
    certs.push_back(std::move(e));
  }
  j["certificates"] = std::move(certs);
  return j;
}

inline Json stable_list_to_json(const std::vector<Word>& blocks) {
  Json j = Json::array();
  for (const auto& w : blocks) j.push_back(w::format(w));
  return j;
}

}  // namespace shiftflip::io
