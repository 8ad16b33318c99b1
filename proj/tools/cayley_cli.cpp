// Copyright 2026 The Cayley Automata Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cayley: command-line front end for building and checking automatic
// structures of Z^d ⋊ F_n.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input, 64 usage.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/np/probe.hpp"
#include "cayley/sd/structure.hpp"
#include "cayley/ud/pipeline.hpp"

using namespace cayley;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadInput = 2;
constexpr int kUsage = 64;

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

zd::ZVector parse_vector(std::string text) {
  for (char& c : text) {
    if (c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
  }
  zd::ZVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw InputError("empty vector entry in '" + text + "'");
    try {
      v.emplace_back(item.substr(b, e - b + 1));
    } catch (const std::exception&) {
      throw InputError("not an integer: '" + item + "'");
    }
  }
  if (v.empty()) throw InputError("empty vector");
  return v;
}

// "1..5" or "1,2,4".
std::vector<std::size_t> parse_radii(const std::string& text) {
  std::vector<std::size_t> out;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const std::size_t lo = std::stoul(text.substr(0, dots)), hi = std::stoul(text.substr(dots + 2));
      if (lo > hi) throw InputError("empty radius range " + text);
      for (std::size_t r = lo; r <= hi; ++r) out.push_back(r);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
    }
  } catch (const std::logic_error&) {
    throw InputError("bad radius list '" + text + "'");
  }
  if (out.empty()) throw InputError("no radii given");
  return out;
}

json vector_json(const zd::ZVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json element_json(const sd::GElement& g, const sd::GroupSpec& spec) {
  return {{"free", fg::format_word(g.b, spec.n(), 'f')}, {"vector", vector_json(g.a)}};
}

sd::CayleyStructure load_structure(const std::string& dir, bool monolithic) {
  auto s = sd::import_structure(dir);
  if (monolithic && s.spec.d() <= 2) sd::materialize(s);
  return s;
}

struct Globals {
  bool json = false;
};

int cmd_build(const Globals& g, const std::string& spec_path, const std::string& out, bool check) {
  const auto spec = sd::load_spec(spec_path);
  auto s = sd::build_structure(spec, {.check = check, .materialize = sd::Materialize::kNever});
  sd::export_structure(s, out);
  if (g.json) {
    json rel = json::array();
    for (std::size_t k = 0; k < s.right.size(); ++k) {
      rel.push_back({{"name", sd::right_name(k, spec)}, {"states", s.right[k].total_states()}});
    }
    for (std::size_t k = 0; k < s.left.size(); ++k) {
      rel.push_back({{"name", sd::left_name(k, spec)}, {"states", s.left[k].total_states()}});
    }
    std::cout << json{{"dir", out}, {"checked", check}, {"domain_states", s.domain.total_states()}, {"relations", rel}}.dump(2)
              << '\n';
  } else {
    std::cout << "dir\t" << out << "\nchecked\t" << (check ? "yes" : "no") << "\ndomain\t" << s.domain.total_states() << '\n';
    for (std::size_t k = 0; k < s.right.size(); ++k) std::cout << sd::right_name(k, spec) << '\t' << s.right[k].total_states() << '\n';
    for (std::size_t k = 0; k < s.left.size(); ++k) std::cout << sd::left_name(k, spec) << '\t' << s.left[k].total_states() << '\n';
  }
  return kOk;
}

// Prints the automaton result for w next to the algebraic value.
int report_word(const Globals& g, const sd::CayleyStructure& s, const sd::GroupWord& w) {
  const auto& spec = s.spec;
  const auto encoding = sd::word_problem(s, w);
  const auto decoded = sd::decode(encoding, spec);
  const auto oracle = sd::evaluate(w, spec);
  const bool match = decoded == oracle && sd::encode(oracle, spec) == encoding;
  const auto text = fsa::format_word(sd::element_alphabet(spec), encoding);
  if (g.json) {
    std::cout << json{{"word", sd::format_group_word(w)},
                      {"encoding", text},
                      {"element", element_json(decoded, spec)},
                      {"oracle", element_json(oracle, spec)},
                      {"match", match}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "word\t" << sd::format_group_word(w) << "\nencoding\t" << text << "\nelement\t"
              << sd::format_element(decoded, spec) << "\noracle\t" << sd::format_element(oracle, spec) << "\nmatch\t"
              << (match ? "yes" : "no") << '\n';
  }
  return match ? kOk : kFailure;
}

int cmd_verify(const Globals& g, const std::string& dir, std::size_t radius, std::size_t random, std::uint64_t seed) {
  const auto s = load_structure(dir, true);
  sd::VerifyOptions opt;
  opt.random_words = random;
  opt.seed = seed;
  const auto rep = sd::verify_structure(s, radius, opt);
  if (g.json) {
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    std::cout << json{{"radius", rep.radius}, {"ball_size", rep.ball_size}, {"passed", rep.passed()}, {"checks", checks}}.dump(2)
              << '\n';
  } else {
    std::cout << "# radius " << rep.radius << ", ball size " << rep.ball_size << '\n';
    for (const auto& c : rep.checks) {
      std::cout << (c.passed ? "PASS" : "FAIL") << '\t' << c.name;
      if (!c.detail.empty()) std::cout << '\t' << c.detail;
      std::cout << '\n';
    }
  }
  return rep.passed() ? kOk : kFailure;
}

int cmd_reduce(const Globals& g, const std::string& path, const std::string& word, std::size_t depth, const std::string& out) {
  const auto p = ud::load_presentation(path);
  ud::PipelineOptions opt;
  opt.membership_depth = depth;
  const auto art = ud::wp_instance_pipeline(p, ud::parse_ab(word), opt);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream(std::filesystem::path(out) / "artifacts.json") << art.to_json().dump(2) << '\n';
    sd::save_spec(art.spec, (std::filesystem::path(out) / "spec.json").string());
  }
  const bool consistent = art.embedding_multiplicative && art.tau_injective && ud::has_block_structure(art.tau);
  if (g.json) {
    std::cout << art.to_json().dump(2) << '\n';
  } else {
    std::cout << "generators";
    for (const auto& x : art.generators) std::cout << '\t' << ud::format_pair(x);
    std::cout << "\nquery\t" << ud::format_pair(art.query) << "\nmembership\t"
              << (art.membership_witness ? ud::format_gen_word(*art.membership_witness) : "none at depth " + std::to_string(depth))
              << "\nspec\td=" << art.spec.d() << " n=" << art.spec.n() << '\n';
    for (std::size_t i = 0; i < art.tau.assembled.size(); ++i) {
      std::cout << "tau_f" << i + 1 << '\t' << zd::to_string(art.tau.assembled[i]) << '\n';
    }
    std::cout << "multiplicative\t" << (art.embedding_multiplicative ? "yes" : "no") << "\ninjective\t"
              << (art.tau_injective ? "yes" : "no") << '\n';
  }
  return consistent ? kOk : kFailure;
}

int cmd_orbit(const Globals& g, const std::string& spec_path, const std::string& u_text, const std::string& v_text,
              std::size_t depth, bool conjugacy) {
  const auto spec = sd::load_spec(spec_path);
  const auto u = parse_vector(u_text), v = parse_vector(v_text);
  if (conjugacy) {
    const auto rep = ud::conjugacy_cross_check(u, v, spec, depth);
    const std::string ow = rep.orbit_witness ? fg::format_word(*rep.orbit_witness, spec.n(), 'f') : "none";
    const std::string cw = rep.conjugator ? sd::format_element(*rep.conjugator, spec) : "none";
    if (g.json) {
      std::cout << json{{"orbit_witness", rep.orbit_witness ? json(ow) : json()},
                        {"conjugator", rep.conjugator ? json(cw) : json()},
                        {"consistent", rep.consistent()}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << "witness\t" << ow << "\nconjugator\t" << cw << "\nconsistent\t" << (rep.consistent() ? "yes" : "no") << '\n';
    }
    return rep.consistent() ? kOk : kFailure;
  }
  const auto w = ud::orbit_semidecide(u, v, spec, depth);
  const std::string text = w ? fg::format_word(*w, spec.n(), 'f') : "none";
  if (g.json) {
    std::cout << json{{"witness", w ? json(text) : json()}, {"depth", depth}}.dump(2) << '\n';
  } else {
    std::cout << (w ? "witness\t" + text : "none at depth " + std::to_string(depth)) << '\n';
  }
  return kOk;
}

int cmd_probe(const Globals& g, const std::string& dir, const std::string& gen, const std::string& radii) {
  const auto s = load_structure(dir, true);
  const auto w = sd::parse_group_word(gen, s.spec);
  if (w.size() != 1) throw InputError("-s takes a single generator");
  const auto rep = np::probe_report(s, w[0], parse_radii(radii));
  if (g.json) {
    std::cout << rep.to_json().dump(2) << '\n';
  } else {
    std::cout << rep.tsv();
  }
  return kOk;
}

int cmd_export_dot(const Globals& g, const std::string& dir) {
  const auto s = sd::import_structure(dir);
  const auto files = sd::export_dot(s, dir);
  if (g.json) {
    std::cout << json(files).dump(2) << '\n';
  } else {
    for (const auto& f : files) std::cout << f << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automatic structures for Z^d ⋊ F_n"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output");

  std::string spec_path, dir, out, word_a, word_b, path, word, u, v, gen, radii = "1..5";
  std::vector<std::string> words;
  bool no_check = false, conjugacy = false;
  std::size_t radius = 3, random = 20000, depth = 12;
  std::uint64_t seed = 1;

  auto* build = app.add_subcommand("build", "construct, check and export a structure");
  build->add_option("spec", spec_path, "GroupSpec JSON")->required();
  build->add_option("-o,--out", out, "output directory")->required();
  build->add_flag("--no-check", no_check, "skip the exact checks");

  auto* wp = app.add_subcommand("wp", "word problem: encoding and normal form of a word");
  wp->add_option("dir", dir, "structure directory")->required();
  wp->add_option("word", words, "word such as 'f1 e1 F1 E1'")->required();

  auto* mul = app.add_subcommand("mul", "product of two words");
  mul->add_option("dir", dir)->required();
  mul->add_option("a", word_a)->required();
  mul->add_option("b", word_b)->required();

  auto* inv = app.add_subcommand("inv", "inverse of a word");
  inv->add_option("dir", dir)->required();
  inv->add_option("word", words)->required();

  auto* verify = app.add_subcommand("verify", "ball verification report");
  verify->add_option("dir", dir)->required();
  verify->add_option("-r,--radius", radius)->check(CLI::Range(0, 12));
  verify->add_option("--random", random, "random words for the domain check");
  verify->add_option("--seed", seed);

  auto* reduce = app.add_subcommand("reduce", "word-problem reduction artifacts");
  reduce->add_option("presentation", path, "presentation JSON")->required();
  reduce->add_option("-w,--word", word, "word over a, b")->default_str("1");
  reduce->add_option("--depth", depth, "membership search depth");
  reduce->add_option("-o,--out", out, "write artifacts.json and spec.json here");

  auto* orbit = app.add_subcommand("orbit", "orbit search u tau(b) = v");
  orbit->add_option("spec", spec_path)->required();
  orbit->add_option("-u", u, "vector, e.g. 1,0")->required();
  orbit->add_option("-v", v, "vector")->required();
  orbit->add_option("--depth", depth);
  orbit->add_flag("--conjugacy", conjugacy, "also search conjugators in G and cross-check");

  auto* probe = app.add_subcommand("probe", "Nerode lower bounds for a left relation");
  probe->add_option("dir", dir)->required();
  probe->add_option("-s,--generator", gen, "generator, e.g. e1")->required();
  probe->add_option("--radii", radii, "1..r or a comma list");

  auto* dot = app.add_subcommand("export-dot", "write .dot files next to the automata");
  dot->add_option("dir", dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*build) return cmd_build(g, spec_path, out, !no_check);
    if (*wp || *inv) {
      const auto s = sd::import_structure(dir);
      auto w = sd::parse_group_word(join(words), s.spec);
      return report_word(g, s, *inv ? sd::inverse(w) : w);
    }
    if (*mul) {
      const auto s = sd::import_structure(dir);
      auto w = sd::parse_group_word(word_a, s.spec);
      const auto b = sd::parse_group_word(word_b, s.spec);
      w.insert(w.end(), b.begin(), b.end());
      return report_word(g, s, w);
    }
    if (*verify) return cmd_verify(g, dir, radius, random, seed);
    if (*reduce) return cmd_reduce(g, path, word.empty() ? "1" : word, depth, out);
    if (*orbit) return cmd_orbit(g, spec_path, u, v, depth, conjugacy);
    if (*probe) return cmd_probe(g, dir, gen, radii);
    if (*dot) return cmd_export_dot(g, dir);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const ValidityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const AlphabetMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
