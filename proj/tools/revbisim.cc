#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "revbisim/corpus.hh"
#include "revbisim/diagnose.hh"
#include "revbisim/equiv.hh"
#include "revbisim/golden.hh"
#include "revbisim/logic.hh"
#include "revbisim/lts.hh"
#include "revbisim/parser.hh"

using namespace revbisim;

namespace {

enum Exit { kOk = 0, kNo = 1, kUsage = 2, kUnreachable = 3, kMismatch = 4 };

std::string out_path;

void emit(const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) {
    throw std::runtime_error("cannot write " + out_path);
  }
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  spdlog::info("wrote {}", out_path);
}

ProcessTerm reachable_term(const std::string& text) {
  ProcessTerm p = parse_term(text);
  require_reachable(p);
  return p;
}

EquivKind kind_arg(const std::string& token) {
  auto k = kind_from_string(token);
  if (!k) {
    throw CLI::ValidationError("--kind", "unknown kind '" + token + "'");
  }
  return *k;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("revbisim");
  logger->set_pattern("revbisim: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::err);
  if (const char* env = std::getenv("REVBISIM_LOG")) {
    std::string level = env;
    if (level == "debug") spdlog::set_level(spdlog::level::debug);
    else if (level == "info") spdlog::set_level(spdlog::level::info);
    else if (level != "error")
      spdlog::warn("REVBISIM_LOG={} not understood, using error", level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Reversible bisimilarities: LTSs, equivalences, logics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", out_path, "Write the report to this file");

  std::string term, term2, formula, kind_token, corpus_file, alphabet_text,
      dot_path;
  bool weak = false, decorated = false;
  std::size_t max_actions = 0, depth = 0;

  auto* parse = app.add_subcommand("parse", "Canonical form and predicates");
  parse->add_option("term", term)->required();

  auto* lts = app.add_subcommand("lts", "Transition system of a term");
  lts->add_option("term", term)->required();
  lts->add_option("--dot", dot_path, "Also write Graphviz output here");

  auto* equiv = app.add_subcommand("equiv", "Decide an equivalence");
  equiv->add_option("--kind", kind_token)->required();
  equiv->add_option("left", term)->required();
  equiv->add_option("right", term2)->required();

  auto* mc = app.add_subcommand("mc", "Check a formula");
  mc->add_option("term", term)->required();
  mc->add_option("formula", formula)->required();

  auto* dist = app.add_subcommand("distinguish", "Distinguishing formula");
  dist->add_option("--kind", kind_token)->required();
  dist->add_option("left", term)->required();
  dist->add_option("right", term2)->required();

  auto* trace = app.add_subcommand("trace", "Backward trace");
  trace->add_flag("--weak", weak, "Erase tau");
  trace->add_option("term", term)->required();

  auto* corpus = app.add_subcommand("corpus", "Generate a term corpus");
  corpus->add_option("--alphabet", alphabet_text)->required();
  corpus->add_option("--max", max_actions)->required()->check(CLI::PositiveNumber);
  corpus->add_flag("--decorated", decorated);

  auto* verify = app.add_subcommand("verify", "Check a logical characterization");
  verify->add_option("--kind", kind_token)->required();
  verify->add_option("--corpus", corpus_file)->required();
  verify->add_option("--depth", depth)->required()->check(CLI::PositiveNumber);

  auto* golden = app.add_subcommand("golden", "Run the golden examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  spdlog::debug("subcommand {}", app.get_subcommands().front()->get_name());

  try {
    if (parse->parsed()) {
      ProcessTerm p = parse_term(term);
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["term"] = render_term(p);
      j["initial"] = is_initial(p);
      j["final"] = is_final(p);
      j["reachable"] = is_reachable(p);
      emit(j.dump(2));
      require_reachable(p);
      return kOk;
    }
    if (lts->parsed()) {
      ProcessTerm p = reachable_term(term);
      Lts l = build_lts(p);
      if (!dot_path.empty()) {
        std::ofstream f(dot_path);
        if (!f) throw std::runtime_error("cannot write " + dot_path);
        f << export_dot(l, p);
        spdlog::info("wrote {}", dot_path);
      }
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["root"] = render_term(l.root());
      auto states = nlohmann::ordered_json::array();
      for (const auto& s : l.states()) states.push_back(render_term(s));
      j["states"] = std::move(states);
      auto edges = nlohmann::ordered_json::array();
      for (const auto& t : l.transitions()) {
        edges.push_back({render_term(t.source), t.action.name(),
                         render_term(t.target)});
      }
      j["transitions"] = std::move(edges);
      emit(j.dump(2));
      return kOk;
    }
    if (equiv->parsed()) {
      EquivKind k = kind_arg(kind_token);
      auto report = bisimilar(k, reachable_term(term), reachable_term(term2));
      emit(report.to_json());
      return report.equivalent ? kOk : kNo;
    }
    if (mc->parsed()) {
      ProcessTerm p = reachable_term(term);
      Formula f = parse_formula(formula);
      bool holds = satisfies(p, f);
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["term"] = render_term(p);
      j["formula"] = render_formula(f);
      j["holds"] = holds;
      emit(j.dump(2));
      return holds ? kOk : kNo;
    }
    if (dist->parsed()) {
      EquivKind k = kind_arg(kind_token);
      if (k == EquivKind::BB) {
        throw CLI::ValidationError("--kind", "BB has no logical characterization");
      }
      ProcessTerm p1 = reachable_term(term);
      ProcessTerm p2 = reachable_term(term2);
      auto f = distinguish(k, p1, p2);
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["kind"] = std::string(to_string(k));
      j["left"] = render_term(p1);
      j["right"] = render_term(p2);
      j["equivalent"] = !f.has_value();
      if (f) {
        j["formula"] = render_formula(*f);
        j["depth"] = f->depth();
        j["left_satisfies"] = satisfies(p1, *f);
        j["right_satisfies"] = satisfies(p2, *f);
      } else {
        j["formula"] = nullptr;
      }
      emit(j.dump(2));
      return kOk;
    }
    if (trace->parsed()) {
      ProcessTerm p = reachable_term(term);
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["term"] = render_term(p);
      j["weak"] = weak;
      auto labels = nlohmann::ordered_json::array();
      for (const auto& a : backward_trace(p, weak)) labels.push_back(a.name());
      j["trace"] = std::move(labels);
      emit(j.dump(2));
      return kOk;
    }
    if (corpus->parsed()) {
      CorpusParams params;
      std::stringstream in(alphabet_text);
      for (std::string name; std::getline(in, name, ',');) {
        if (!Action::is_valid_name(name)) {
          throw CLI::ValidationError("--alphabet", "bad action '" + name + "'");
        }
        params.alphabet.insert(Action(name));
      }
      params.max_action_occurrences = max_actions;
      params.include_decorated = decorated;
      std::string text;
      auto terms = corpus_generate(params);
      for (const auto& p : terms) text += render_term(p) + "\n";
      spdlog::info("{} terms", terms.size());
      emit(text);
      return kOk;
    }
    if (verify->parsed()) {
      EquivKind k = kind_arg(kind_token);
      if (k == EquivKind::BB) {
        throw CLI::ValidationError("--kind", "BB has no logical characterization");
      }
      std::ifstream f(corpus_file);
      if (!f) throw CLI::ValidationError("--corpus", "cannot read " + corpus_file);
      std::vector<ProcessTerm> terms;
      for (std::string line; std::getline(f, line);) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        terms.push_back(reachable_term(line));
      }
      spdlog::info("verifying {} over {} terms at depth {}", kind_token,
                   terms.size(), depth);
      auto report = verify_characterization(k, terms, depth, corpus_file);
      emit(report.to_json());
      return report.mismatches.empty() ? kOk : kMismatch;
    }
    if (golden->parsed()) {
      auto report = run_golden_suite();
      for (const auto& r : report.results) {
        spdlog::debug("{} {} {} / {}: {}", r.passed ? "pass" : "FAIL",
                      to_string(r.claim.kind), r.claim.left, r.claim.right,
                      r.claim.location);
      }
      emit(report.to_json());
      return report.passed() ? kOk : kMismatch;
    }
  } catch (const UnreachableTermError& e) {
    spdlog::error("{}", e.what());
    return kUnreachable;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  }
  return kUsage;
}
