// Command line front end: proof checking, computation, classification,
// formula transforms, bounded evaluation, and corpus runs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mumall/compute.hpp"
#include "mumall/semantics.hpp"
#include "mumall/stdlib.hpp"
#include "mumall/syntax.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mumall;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SourceFile load(const std::string& path) {
  return parse_file(slurp(path), path);
}

long default_fuel() {
  if (const char* env = std::getenv("MUMALL_FUEL")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw UsageError("MUMALL_FUEL is not a positive integer");
  }
  return 1000000;
}

SearchStrategy parse_strategy(const std::string& s, long fuel) {
  SearchStrategy st;
  st.fuel = fuel;
  if (s == "dfs") {
    st.kind = StrategyKind::DfsLeftmost;
  } else if (s == "iddfs") {
    st.kind = StrategyKind::IterativeDeepening;
  } else if (s.rfind("random:", 0) == 0) {
    st.kind = StrategyKind::RandomizedDfs;
    st.seed = static_cast<unsigned>(std::stoul(s.substr(7)));
  } else {
    throw UsageError("unknown strategy: " + s +
                     " (expected dfs, iddfs, or random:SEED)");
  }
  return st;
}

// Looks a formula up by name: theorems first, then definitions.  A fixed
// point predicate is returned applied to zero arguments of value 0 so the
// result is closed.
FormulaPtr named_formula(const SourceFile& file, const std::string& name) {
  if (const TheoremDecl* t = file.find_theorem(name)) return t->formula;
  if (const Definition* d = file.find_definition(name)) {
    if (!d->is_pred) return d->alias;
    std::vector<TermPtr> args(d->body->arity, numeral(0));
    return mk_fix(d->fix_conn, d->body, args);
  }
  throw UsageError("no theorem or definition named '" + name + "'");
}

UFormulaPtr named_uformula(const SourceFile& file, const std::string& name) {
  if (const UDefinition* d = file.find_udefinition(name)) {
    if (!d->is_pred) return d->alias;
    std::vector<TermPtr> args(d->body->arity, numeral(0));
    return umk_fix(d->fix_conn, d->body, args);
  }
  throw UsageError("no udefine named '" + name + "'");
}

Sequent goal_of(const FormulaPtr& formula) {
  Sequent g;
  for (const std::string& v : free_vars(formula)) g.sig.add(v);
  g.formulas = {formula};
  return g;
}

std::string value_to_string(const TermPtr& t) {
  if (auto n = term_to_numeral(t)) return std::to_string(*n);
  return term_to_string(t);
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write json report: " + path);
  out << j.dump(2) << "\n";
}

int run_check(const std::string& path, const std::string& mode_flag,
              bool sigma1_flag, bool expand_flag, const std::string& only,
              const std::string& json_path) {
  SourceFile file = load(path);
  json report = json::array();
  int failures = 0, run = 0;
  for (const ProofDecl& p : file.proofs) {
    if (!only.empty() && p.name != only) continue;
    run++;
    const TheoremDecl* thm = file.find_theorem(p.name);
    RuleSet rules = p.rules;
    if (!mode_flag.empty()) rules.mode = mode_from_string(mode_flag);
    if (sigma1_flag) rules.sigma1_invariants = true;
    if (expand_flag) rules.expand_exponentials = true;
    CheckReport r = check(*p.tree, goal_of(thm->formula), rules);
    json entry = {{"name", p.name},
                  {"mode", mode_to_string(rules.mode)},
                  {"ok", r.ok}};
    if (r.ok) {
      std::cout << "PASS " << p.name << " [" << mode_to_string(rules.mode)
                << (rules.sigma1_invariants ? ", sigma1" : "") << "]\n";
    } else {
      failures++;
      entry["path"] = r.path;
      entry["rule"] = r.rule;
      entry["message"] = r.message;
      entry["sequent"] = r.sequent;
      std::cout << "FAIL " << p.name << ": " << r.message << "\n"
                << "  at node " << (r.path.empty() ? "(root)" : r.path)
                << " rule " << r.rule << "\n"
                << "  sequent " << r.sequent << "\n";
    }
    report.push_back(entry);
  }
  if (!only.empty() && run == 0)
    throw UsageError("no proof named '" + only + "' in " + path);
  if (run == 0) std::cout << "no proofs in " << path << "\n";
  write_json(json_path, report);
  return failures == 0 ? 0 : 1;
}

int run_compute(const std::string& path, const std::string& query_name,
                long fuel, const std::string& strategy_str,
                const std::string& trace_path, bool do_certify,
                const std::string& json_path) {
  SourceFile file = load(path);
  const QueryDecl* q = file.find_query(query_name);
  if (!q) throw UsageError("no query named '" + query_name + "' in " + path);
  const Definition* d = file.find_definition(q->pred);
  if (!d || !d->is_pred)
    throw UsageError("query predicate '" + q->pred + "' is not defined");

  SearchStrategy st = parse_strategy(strategy_str, fuel);
  SearchResult r = search(d->body, q->args, st, !trace_path.empty());
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw UsageError("cannot write trace: " + trace_path);
    for (const std::string& line : r.trace) out << line << "\n";
  }

  json report = {{"query", query_name},
                 {"predicate", q->pred},
                 {"transitions", r.transitions}};
  int rc = 0;
  switch (r.status) {
    case SearchStatus::Found: {
      std::cout << value_to_string(r.value) << "\n";
      report["status"] = "found";
      report["value"] = value_to_string(r.value);
      if (do_certify) {
        ProofNodePtr proof = certify(d->body, q->args, r.value, fuel);
        Sequent goal = goal_of(certified_goal(d->body, q->args));
        CheckReport cr = check(*proof, goal, RuleSet{});
        report["certified"] = cr.ok;
        if (cr.ok) {
          std::cout << "certified\n";
        } else {
          std::cout << "certification FAILED: " << cr.message << "\n";
          rc = 1;
        }
      }
      break;
    }
    case SearchStatus::Exhausted:
      std::cout << "EXHAUSTED\n";
      report["status"] = "exhausted";
      rc = 1;
      break;
    case SearchStatus::OutOfFuel:
      std::cout << "FAIL (out of fuel after " << r.transitions
                << " transitions)\n";
      report["status"] = "out-of-fuel";
      rc = 1;
      break;
  }
  write_json(json_path, report);
  return rc;
}

int run_eval(const std::string& path, const std::string& name, long fuel,
             long qbound, const std::string& json_path) {
  SourceFile file = load(path);
  Truth t;
  try {
    t = eval_bounded(named_formula(file, name), fuel, qbound);
  } catch (const UsageError&) {
    t = eval_bounded(named_uformula(file, name), fuel, qbound);
  }
  std::cout << truth_to_string(t) << "\n";
  write_json(json_path, json{{"name", name}, {"truth", truth_to_string(t)}});
  return 0;
}

int run_corpus(const std::string& dir, long fuel, long sweep_fuel,
               long qbound, const std::string& json_path) {
  std::vector<std::string> files;
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir);
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".mumall")
      files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no .mumall files in " + dir);

  int failures = 0;
  std::vector<std::pair<std::string, Sequent>> accepted;
  json report = json::array();
  for (const std::string& f : files) {
    std::string base = fs::path(f).filename().string();
    SourceFile file;
    try {
      file = load(f);
    } catch (const ParseError& e) {
      std::cout << "FAIL  " << base << ": " << e.what() << "\n";
      failures++;
      continue;
    }
    for (const ProofDecl& p : file.proofs) {
      const TheoremDecl* thm = file.find_theorem(p.name);
      Sequent goal = goal_of(thm->formula);
      CheckReport r = check(*p.tree, goal, p.rules);
      json entry = {{"file", base}, {"proof", p.name}, {"ok", r.ok}};
      if (r.ok) {
        std::cout << "PASS  " << base << " proof " << p.name << " ["
                  << mode_to_string(p.rules.mode)
                  << (p.rules.sigma1_invariants ? ", sigma1" : "") << "]\n";
        accepted.push_back({base + ":" + p.name, goal});
      } else {
        std::cout << "FAIL  " << base << " proof " << p.name << ": "
                  << r.message << " (at " << r.path << ", rule " << r.rule
                  << ")\n";
        failures++;
        entry["message"] = r.message;
      }
      report.push_back(entry);
    }
    for (const QueryDecl& q : file.queries) {
      const Definition* d = file.find_definition(q.pred);
      SearchStrategy st;
      st.fuel = fuel;
      SearchResult r = search(d->body, q.args, st);
      json entry = {{"file", base}, {"query", q.name}};
      if (r.status != SearchStatus::Found) {
        std::cout << "FAIL  " << base << " query " << q.name << ": "
                  << (r.status == SearchStatus::Exhausted ? "exhausted"
                                                          : "out of fuel")
                  << "\n";
        failures++;
        report.push_back(entry);
        continue;
      }
      ProofNodePtr proof = certify(d->body, q.args, r.value, fuel);
      Sequent goal = goal_of(certified_goal(d->body, q.args));
      CheckReport cr = check(*proof, goal, RuleSet{});
      entry["value"] = value_to_string(r.value);
      entry["certified"] = cr.ok;
      if (cr.ok) {
        std::cout << "PASS  " << base << " query " << q.name << " = "
                  << value_to_string(r.value) << " (certified, "
                  << r.transitions << " transitions)\n";
        accepted.push_back({base + ":" + q.name, goal});
      } else {
        std::cout << "FAIL  " << base << " query " << q.name
                  << ": certificate rejected: " << cr.message << "\n";
        failures++;
      }
      report.push_back(entry);
    }
  }

  SweepReport sweep = soundness_sweep(accepted, sweep_fuel, qbound);
  std::cout << "sweep: " << sweep.true_count << " true, "
            << sweep.unknown_count << " unknown, " << sweep.false_count
            << " false, " << sweep.skipped_open << " skipped (open)\n";
  if (sweep.false_count > 0) {
    for (const SweepEntry& e : sweep.entries)
      if (e.truth == Truth::False)
        std::cout << "FAIL  sweep found a false conclusion: " << e.name << "\n";
    failures++;
  }
  if (!json_path.empty()) {
    json top = {{"results", report},
                {"sweep",
                 {{"true", sweep.true_count},
                  {"unknown", sweep.unknown_count},
                  {"false", sweep.false_count},
                  {"skipped_open", sweep.skipped_open}}},
                {"failures", failures}};
    write_json(json_path, top);
  }
  std::cout << (failures == 0 ? "corpus OK" : "corpus FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checker and computation engine for mu-calculus sequent proofs"};
  app.require_subcommand(1);

  std::string file, mode, only, json_path, query, strategy = "dfs";
  std::string trace_path, formula_name, choices, dir = "corpus";
  bool sigma1 = false, expand = false, do_certify = false;
  long fuel = -1, qbound = 8, sweep_fuel = 50;

  auto* c_check = app.add_subcommand("check", "check proofs in a file");
  c_check->add_option("file", file)->required();
  c_check->add_option("--mode", mode, "core, core+, mulk, mulk+ (overrides the proof declaration)");
  c_check->add_flag("--sigma1", sigma1, "require purely positive nu invariants");
  c_check->add_flag("--expand-exp", expand, "expand exponentials in the goal");
  c_check->add_option("--proof", only, "check a single named proof");
  c_check->add_option("--json", json_path, "write a machine readable report");

  auto* c_compute = app.add_subcommand("compute", "run a query");
  c_compute->add_option("file", file)->required();
  c_compute->add_option("--query", query)->required();
  c_compute->add_option("--fuel", fuel, "max transitions (default 1000000, or MUMALL_FUEL)");
  c_compute->add_option("--strategy", strategy, "dfs, iddfs, or random:SEED");
  c_compute->add_option("--trace", trace_path, "write the transition trace");
  c_compute->add_flag("--certify", do_certify, "replay the trace into a checked proof");
  c_compute->add_option("--json", json_path);

  auto* c_classify = app.add_subcommand("classify", "positive/negative hierarchy class");
  c_classify->add_option("file", file)->required();
  c_classify->add_option("--formula", formula_name)->required();

  auto* c_dual = app.add_subcommand("dual", "print the De Morgan dual");
  c_dual->add_option("file", file)->required();
  c_dual->add_option("--formula", formula_name)->required();

  auto* c_pol = app.add_subcommand("polarize", "polarize an unpolarized formula");
  c_pol->add_option("file", file)->required();
  c_pol->add_option("--formula", formula_name, "a udefine name")->required();
  c_pol->add_option("--choices", choices, "bit per propositional connective, pre-order (default all 0)");

  auto* c_depol = app.add_subcommand("depolarize", "forget polarities");
  c_depol->add_option("file", file)->required();
  c_depol->add_option("--formula", formula_name)->required();

  auto* c_exp = app.add_subcommand("expand-exp", "expand exponentials");
  c_exp->add_option("file", file)->required();
  c_exp->add_option("--formula", formula_name)->required();

  auto* c_eval = app.add_subcommand("eval", "bounded standard-model evaluation");
  c_eval->add_option("file", file)->required();
  c_eval->add_option("--formula", formula_name)->required();
  c_eval->add_option("--fuel", fuel, "unfolding budget (default 1000000, or MUMALL_FUEL)");
  c_eval->add_option("--qbound", qbound, "quantifier enumeration bound (default 8)");
  c_eval->add_option("--json", json_path);

  auto* c_corpus = app.add_subcommand("corpus", "check every proof and query in a directory, then sweep");
  c_corpus->add_option("dir", dir, "directory of .mumall files (default corpus)");
  c_corpus->add_option("--fuel", fuel, "query fuel (default 1000000, or MUMALL_FUEL)");
  c_corpus->add_option("--sweep-fuel", sweep_fuel, "sweep unfolding budget (default 50)");
  c_corpus->add_option("--qbound", qbound, "sweep quantifier bound (default 8)");
  c_corpus->add_option("--json", json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fuel < 0) fuel = default_fuel();
    if (*c_check) return run_check(file, mode, sigma1, expand, only, json_path);
    if (*c_compute)
      return run_compute(file, query, fuel, strategy, trace_path, do_certify,
                         json_path);
    if (*c_classify) {
      SourceFile src = load(file);
      std::cout << hierarchy_to_string(classify(named_formula(src, formula_name)))
                << "\n";
      return 0;
    }
    if (*c_dual) {
      SourceFile src = load(file);
      std::cout << print_formula(dual(named_formula(src, formula_name))) << "\n";
      return 0;
    }
    if (*c_pol) {
      SourceFile src = load(file);
      UFormulaPtr u = peano_translate(named_uformula(src, formula_name));
      int n = propositional_count(u);
      std::vector<bool> bits(n, false);
      if (!choices.empty()) {
        if (static_cast<int>(choices.size()) != n)
          throw UsageError("--choices needs exactly " + std::to_string(n) +
                           " bits for this formula");
        for (int i = 0; i < n; i++) {
          if (choices[i] != '0' && choices[i] != '1')
            throw UsageError("--choices must be a 0/1 string");
          bits[i] = choices[i] == '1';
        }
      }
      std::cout << print_formula(polarize(u, bits)) << "\n";
      return 0;
    }
    if (*c_depol) {
      SourceFile src = load(file);
      FormulaPtr f = expand_exponentials(named_formula(src, formula_name));
      std::cout << print_uformula(depolarize(f)) << "\n";
      return 0;
    }
    if (*c_exp) {
      SourceFile src = load(file);
      std::cout << print_formula(
                       expand_exponentials(named_formula(src, formula_name)))
                << "\n";
      return 0;
    }
    if (*c_eval) return run_eval(file, formula_name, fuel, qbound, json_path);
    if (*c_corpus)
      return run_corpus(dir, fuel, sweep_fuel, qbound, json_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
