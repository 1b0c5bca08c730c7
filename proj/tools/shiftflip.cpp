#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shiftflip/coded_w.hpp"
#include "shiftflip/io.hpp"
#include "shiftflip/separation.hpp"

namespace sf = shiftflip;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kBound = 3, kConsistency = 4 };

struct Options {
  std::string space, flip, format = "csv", out;
  std::size_t horizon = 0, count = 2, bound = 12;
};

void emit(const Options& o, const std::string& file, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  std::ofstream(fs::path(o.out) / file) << text;
  std::cout << "wrote " << (fs::path(o.out) / file).string() << "\n";
}

sf::io::Json provenance(const Options& o) {
  sf::io::Json j;
  j["space"] = {{"path", o.space}, {"fnv1a", sf::io::fnv1a_hex(sf::io::read_file(o.space))}};
  if (!o.flip.empty()) j["flip"] = {{"path", o.flip}, {"fnv1a", sf::io::fnv1a_hex(sf::io::read_file(o.flip))}};
  return j;
}

int cmd_info(const Options& o) {
  auto x = sf::io::load_sft(o.space);
  const bool irr = sf::is_irreducible(x);
  std::cout << "alphabet: ";
  for (std::size_t i = 0; i < x.alphabet().size(); ++i) std::cout << (i ? " " : "") << x.alphabet().names()[i];
  std::cout << "\nstep: " << x.step() << "\n";
  std::cout << "irreducible: " << (irr ? "true" : "false") << "\n";
  if (irr) {
    std::cout << "infinite: " << (sf::is_infinite(x) ? "true" : "false") << "\n";
    std::cout << "synchronizing block: " << x.alphabet().format(sf::synchronizing_block(x)) << "\n";
  } else {
    std::cout << "infinite: n/a (reducible)\nsynchronizing block: n/a (reducible)\n";
  }
  std::cout << "|B_n|, n = 1..8:";
  for (std::size_t n = 1; n <= 8; ++n) std::cout << " " << sf::count_language(x, n);
  std::cout << "\n";
  return kOk;
}

int cmd_fvector(const Options& o) {
  if (o.horizon == 0) {
    std::cerr << "fvector: --horizon must be at least 1\n";
    return kUsage;
  }
  auto x = sf::io::load_sft(o.space);
  auto phi = sf::io::load_flip(x.alphabet(), o.flip);
  auto rep = sf::validate_flip(x, phi);
  if (!rep.valid()) {
    std::cerr << "flip validation failed:\n" << sf::io::validation_to_json(rep).dump(2) << "\n";
    return kInvalid;
  }
  auto f = sf::fvector(x, phi, o.horizon);
  if (o.format == "json") {
    sf::io::Json j{{"tool_version", sf::io::kToolVersion}, {"inputs", provenance(o)}};
    j.update(sf::io::fvector_to_json(f));
    emit(o, "fvector.json", j.dump(2) + "\n");
  } else {
    emit(o, "fvector.csv", sf::io::fvector_csv(f));
  }
  return kOk;
}

int cmd_separate(const Options& o) {
  auto x = sf::io::load_sft(o.space);
  auto phi = sf::io::load_flip(x.alphabet(), o.flip);
  auto v = sf::validate_flip(x, phi);
  if (!v.valid()) {
    std::cerr << "flip validation failed:\n" << sf::io::validation_to_json(v).dump(2) << "\n";
    return kInvalid;
  }
  sf::SeparationOptions opt;
  opt.horizon = o.horizon;
  opt.bounds.block = o.bound;
  auto rep = sf::separate_flips(x, phi, o.count, opt);
  emit(o, "separation.json", sf::io::separation_to_json(rep, provenance(o)).dump(2) + "\n");
  std::cerr << "flips: " << rep.stages.size() << ", certificates: " << rep.certificates.size()
            << ", separated: " << (rep.separated() ? "yes" : "no") << "\n";
  if (rep.halt) std::cerr << "halt: " << *rep.halt << "\n";
  if (rep.horizon_insufficient) std::cerr << "horizon " << rep.horizon << " does not separate every pair\n";
  return rep.separated() ? kOk : kBound;
}

int cmd_w_stable(const std::string& block) {
  std::cout << sf::w::stability(sf::w::parse(block)).verdict() << "\n";
  return kOk;
}

int cmd_w_enumerate(const Options& o, std::size_t len) {
  auto blocks = sf::w::enumerate_stable(len);
  if (o.format == "json") {
    emit(o, "stable.json", sf::io::stable_list_to_json(blocks).dump(2) + "\n");
  } else {
    std::string s;
    for (const auto& w : blocks) s += sf::w::format(w) + "\n";
    emit(o, "stable.txt", s);
  }
  return kOk;
}

int cmd_w_member(const std::string& block, std::size_t len) {
  auto m = sf::w::block_in_W(sf::w::parse(block), len);
  if (m.yes)
    std::cout << "YES " << sf::w::format(m.certificate) << "\n";
  else
    std::cout << "UNKNOWN (no stable superblock of length <= " << len << ")\n";
  return kOk;
}

int cmd_w_rigidity(std::size_t len) {
  auto rep = sf::w::flip_rigidity_scan(len);
  std::cout << "stable blocks of length <= " << len << ": " << rep.stable_blocks << "\n";
  for (const auto& v : rep.involutions) {
    std::cout << v.name << ": ";
    if (v.survives)
      std::cout << "survives\n";
    else
      std::cout << "fails, " << sf::w::format(v.counterexample->first) << " -> "
                << sf::w::format(v.counterexample->second) << "\n";
  }
  std::cout << "surviving involutions:";
  const auto surv = rep.survivors();
  for (std::size_t i = 0; i < surv.size(); ++i) std::cout << (i ? ", " : " ") << surv[i];
  if (surv.empty()) std::cout << " none";
  std::cout << "\n";
  return kOk;
}

int cmd_w_props(std::size_t len) {
  bool ok = true;
  for (std::int64_t j : {1, -1}) {
    auto a = sf::w::verify_property_a(j, 3, 200);
    std::cout << "property (a), j=" << j << ": " << (a.complete() ? "3 witnesses in each class" : "incomplete") << "\n";
    ok = ok && a.complete();
  }
  bool b = true;
  for (std::int64_t n = 1; n <= 64; ++n) {
    const auto nn = static_cast<std::size_t>(n);
    b = b && sf::w::is_stable(sf::Word(nn, 0)) && sf::w::is_stable(sf::Word(nn, 1)) == sf::w::in_I(n) &&
        sf::w::is_stable(sf::Word(nn, 2)) != sf::w::in_I(n);
  }
  std::cout << "property (b), n <= 64: " << (b ? "pass" : "FAIL") << "\n";
  auto c = sf::w::reversal_closure_check(len);
  std::cout << "property (c), " << c.checked << " stable blocks of length <= " << len << ": "
            << (c.ok() ? "pass" : "FAIL") << "\n";
  auto e = sf::w::concatenation_check();
  std::cout << "property (e), " << e.checked << " sampled concatenations: " << (e.ok() ? "pass" : "FAIL") << "\n";
  std::size_t words = 0, disagree = 0;
  const std::size_t dual = std::min<std::size_t>(len, 10);
  for (std::size_t n = 1; n <= dual; ++n) {
    sf::Word cur(n, 0);
    while (true) {
      ++words;
      if (sf::w::is_stable(cur) != sf::w::is_stable_bruteforce(cur)) ++disagree;
      std::size_t k = n;
      while (k > 0 && cur[k - 1] == 2) cur[--k] = 0;
      if (k == 0) break;
      ++cur[k - 1];
    }
  }
  std::cout << "dual implementation, " << words << " words of length <= " << dual << ": "
            << (disagree ? "FAIL" : "agree") << "\n";
  return ok && b && c.ok() && e.ok() && !disagree ? kOk : kConsistency;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flips of shifts of finite type: invariants, constructions and the coded system W"};
  app.set_version_flag("--version", sf::io::kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("info", "Summarize a presentation");
  info->add_option("--space", o.space, "space JSON")->required()->check(CLI::ExistingFile);

  auto* fv = app.add_subcommand("fvector", "Fixed-point counts |F(phi; n)|, n = 1..N");
  fv->add_option("--space", o.space, "space JSON")->required()->check(CLI::ExistingFile);
  fv->add_option("--flip", o.flip, "flip JSON")->required()->check(CLI::ExistingFile);
  fv->add_option("--horizon", o.horizon, "N")->required();
  fv->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  fv->add_option("--out", o.out, "output directory");

  auto* ta = app.add_subcommand("separate", "Build and separate pairwise non-conjugate flips");
  ta->add_option("--space", o.space, "space JSON")->required()->check(CLI::ExistingFile);
  ta->add_option("--flip", o.flip, "flip JSON")->required()->check(CLI::ExistingFile);
  ta->add_option("--count", o.count, "number of flips k")->check(CLI::PositiveNumber);
  ta->add_option("--horizon", o.horizon, "F-vector horizon (default: first witness period)");
  ta->add_option("--bound", o.bound, "block search bound")->check(CLI::PositiveNumber);
  ta->add_option("--out", o.out, "output directory");

  auto* wc = app.add_subcommand("w", "The coded system W");
  wc->require_subcommand(1);
  std::string block;
  std::size_t len = 0;
  auto* ws = wc->add_subcommand("stable", "Stability verdict for a block");
  ws->add_option("block", block)->required();
  auto* we = wc->add_subcommand("enumerate", "Stable blocks of length <= L");
  we->add_option("L", len)->required()->check(CLI::PositiveNumber);
  we->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"csv", "text", "json"}));
  we->add_option("--out", o.out, "output directory");
  auto* wm = wc->add_subcommand("member", "Search a stable superblock of length <= L");
  wm->add_option("block", block)->required();
  wm->add_option("L", len)->required();
  auto* wr = wc->add_subcommand("rigidity", "Symbol involutions preserving stability up to length L");
  wr->add_option("L", len)->required()->check(CLI::PositiveNumber);
  auto* wp = wc->add_subcommand("props", "Finite checks of the structural properties");
  wp->add_option("L", len)->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return cmd_info(o);
    if (*fv) return cmd_fvector(o);
    if (*ta) return cmd_separate(o);
    if (*ws) return cmd_w_stable(block);
    if (*we) return cmd_w_enumerate(o, len);
    if (*wm) return cmd_w_member(block, len);
    if (*wr) return cmd_w_rigidity(len);
    if (*wp) return cmd_w_props(len);
  } catch (const sf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const sf::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const sf::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kInvalid;
  } catch (const sf::SearchBoundError& e) {
    std::cerr << "search bound exhausted: " << e.what() << "\n";
    return kBound;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kConsistency;
  }
  return kUsage;
}
