#include "mumall/compute.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "mumall/syntax.hpp"

namespace mumall {

bool is_success(const ComputeState& s) {
  return s.sig.empty() && s.goals.empty();
}

std::string state_to_string(const ComputeState& s) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < s.sig.names().size(); ++i)
    os << (i ? "," : "") << s.sig.names()[i];
  os << ";";
  for (std::size_t i = 0; i < s.goals.size(); ++i)
    os << (i ? "," : "") << " " << print_formula(s.goals[i]);
  os << "; " << term_to_string(s.value) << ">";
  return os.str();
}

namespace {

struct Step {
  enum class Kind { Eq, Tensor, Plus, Mu, Exists } kind;
  int bit = 0;            // Plus
  Substitution theta;     // Eq
  std::string fresh;      // Exists
};

const char* step_name(Step::Kind k) {
  switch (k) {
    case Step::Kind::Eq: return "eq";
    case Step::Kind::Tensor: return "tensor";
    case Step::Kind::Plus: return "oplus";
    case Step::Kind::Mu: return "mu";
    case Step::Kind::Exists: return "exists";
  }
  return "?";
}

struct Successor {
  ComputeState state;
  Step step;
};

// `counter`, when given, makes existential names unique across a whole
// search: a name can leave the signature through unification and signature
// freshness alone would allow reusing it, which would corrupt the composed
// answer substitution.
std::vector<Successor> successors(const ComputeState& s, long* counter = nullptr) {
  if (s.goals.empty()) return {};
  const FormulaPtr& g = s.goals.front();
  std::vector<FormulaPtr> rest(s.goals.begin() + 1, s.goals.end());
  std::vector<Successor> out;
  switch (g->conn) {
    case Conn::Eq: {
      auto theta = mgu(g->t1, g->t2);
      if (!theta) return {};
      ComputeState ns;
      ns.sig = signature_update(s.sig, *theta);
      for (auto& r : rest) ns.goals.push_back(apply_subst(r, *theta));
      ns.value = apply_subst(s.value, *theta);
      Step st{Step::Kind::Eq, 0, *theta, ""};
      out.push_back({std::move(ns), std::move(st)});
      return out;
    }
    case Conn::Tensor: {
      ComputeState ns;
      ns.sig = s.sig;
      ns.goals.push_back(g->left);
      ns.goals.push_back(g->right);
      for (auto& r : rest) ns.goals.push_back(r);
      ns.value = s.value;
      out.push_back({std::move(ns), Step{Step::Kind::Tensor, 0, {}, ""}});
      return out;
    }
    case Conn::Plus: {
      for (int bit = 0; bit < 2; ++bit) {
        ComputeState ns;
        ns.sig = s.sig;
        ns.goals.push_back(bit == 0 ? g->left : g->right);
        for (auto& r : rest) ns.goals.push_back(r);
        ns.value = s.value;
        out.push_back({std::move(ns), Step{Step::Kind::Plus, bit, {}, ""}});
      }
      return out;
    }
    case Conn::Mu: {
      ComputeState ns;
      ns.sig = s.sig;
      ns.goals.push_back(unfold_fix(g));
      for (auto& r : rest) ns.goals.push_back(r);
      ns.value = s.value;
      out.push_back({std::move(ns), Step{Step::Kind::Mu, 0, {}, ""}});
      return out;
    }
    case Conn::Exists: {
      ComputeState ns;
      ns.sig = s.sig;
      std::string hint = g->binder_hint.empty() ? "w" : g->binder_hint;
      std::string y = counter ? "_" + hint + std::to_string(++*counter)
                              : ns.sig.fresh(hint);
      ns.sig.add(y);
      ns.goals.push_back(instantiate_scope(g, mk_var(y)));
      for (auto& r : rest) ns.goals.push_back(r);
      ns.value = s.value;
      out.push_back({std::move(ns), Step{Step::Kind::Exists, 0, {}, y}});
      return out;
    }
    default:
      throw FormulaError("compute: goal is not purely positive: " + print_formula(g));
  }
}

ComputeState initial_state(const BodyPtr& pred, const std::vector<TermPtr>& args) {
  if (static_cast<int>(args.size()) + 1 != pred->arity)
    throw FormulaError("compute: predicate of arity " + std::to_string(pred->arity) +
                       " needs " + std::to_string(pred->arity - 1) + " argument(s)");
  for (auto& a : args)
    if (!free_vars(a).empty() || has_free_bound(a))
      throw FormulaError("compute: arguments must be ground");
  ComputeState s;
  s.sig.add("y");
  s.value = mk_var("y");
  std::vector<TermPtr> full = args;
  full.push_back(s.value);
  FormulaPtr goal = mk_fix(Conn::Mu, pred, full);
  HierarchyClass c = classify(goal);
  if (!(c.side == Polarity::Pos && c.level == 1))
    throw FormulaError("compute: predicate is " + hierarchy_to_string(c) +
                       ", must be P1");
  s.goals.push_back(goal);
  return s;
}

struct Success {
  TermPtr value;
  std::vector<Step> steps;
  Substitution sigma;  // composition of every unifier along the path
};

// Depth-first exploration with an explicit frame stack; success paths can be
// tens of thousands of transitions long, far past the call stack.
// `depth_limit` < 0 means unbounded.  run() returns true when the caller
// should stop (on_success said so, or fuel ran out).
struct Dfs {
  long fuel;
  long used = 0;
  bool cut_by_depth = false;    // some branch was abandoned at the depth limit
  bool out_of_fuel = false;
  bool want_trace = false;
  long name_counter = 0;
  std::mt19937* rng = nullptr;
  std::vector<std::string> trace;
  std::function<bool(Success&&)> on_success;  // returns true to stop

  struct Frame {
    std::vector<Successor> succ;
    std::size_t next = 0;
    long depth;      // remaining budget for children
    bool pop_step;   // whether entering this frame pushed onto `steps`
  };

  bool run(const ComputeState& root, long depth_limit) {
    std::vector<Frame> stack;
    std::vector<Step> steps;

    // 0 = frame pushed, 1 = backtrack, 2 = stop the whole search
    auto enter = [&](const ComputeState& s, long depth, bool pop_step) -> int {
      if (is_success(s)) {
        Success suc;
        suc.value = s.value;
        suc.steps = steps;
        for (const Step& st : steps)
          if (st.kind == Step::Kind::Eq) suc.sigma = compose(suc.sigma, st.theta);
        return on_success(std::move(suc)) ? 2 : 1;
      }
      if (s.goals.empty()) return 1;  // dead: variables left but nothing to do
      if (depth == 0) {
        cut_by_depth = true;
        return 1;
      }
      Frame f;
      f.succ = successors(s, &name_counter);
      f.depth = depth < 0 ? -1 : depth - 1;
      f.pop_step = pop_step;
      if (rng && f.succ.size() > 1) std::shuffle(f.succ.begin(), f.succ.end(), *rng);
      stack.push_back(std::move(f));
      return 0;
    };

    int r = enter(root, depth_limit, false);
    if (r != 0) return r == 2;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next >= f.succ.size()) {
        if (f.pop_step) steps.pop_back();
        stack.pop_back();
        continue;
      }
      Successor nxt = std::move(f.succ[f.next++]);
      long depth = f.depth;
      if (used >= fuel) {
        out_of_fuel = true;
        return true;
      }
      ++used;
      if (want_trace)
        trace.push_back(std::string(step_name(nxt.step.kind)) + " 0 " +
                        std::to_string(std::hash<std::string>{}(
                            state_to_string(nxt.state))));
      steps.push_back(std::move(nxt.step));
      r = enter(nxt.state, depth, true);  // may invalidate f
      if (r == 2) return true;
      if (r == 1) steps.pop_back();
    }
    return false;
  }
};

std::optional<Success> find_first(const BodyPtr& pred, const std::vector<TermPtr>& args,
                                  const SearchStrategy& strategy, bool want_trace,
                                  SearchResult* meta) {
  ComputeState init = initial_state(pred, args);
  std::optional<Success> found;
  auto catch_first = [&](Success&& s) {
    found = std::move(s);
    return true;
  };

  if (strategy.kind == StrategyKind::IterativeDeepening) {
    long budget = strategy.fuel;
    long used_total = 0;
    bool out_of_fuel = false;
    for (long limit = 8;; limit *= 2) {
      Dfs dfs;
      dfs.fuel = budget - used_total;
      dfs.want_trace = want_trace;
      dfs.on_success = catch_first;
          dfs.run(init, limit);
      used_total += dfs.used;
      if (want_trace && meta) meta->trace = std::move(dfs.trace);
      if (found || (!dfs.cut_by_depth && !dfs.out_of_fuel)) {
        if (meta) {
          meta->transitions = used_total;
          meta->status = found ? SearchStatus::Found : SearchStatus::Exhausted;
        }
        return found;
      }
      if (dfs.out_of_fuel || used_total >= budget) {
        out_of_fuel = true;
        break;
      }
    }
    if (meta) {
      meta->transitions = used_total;
      meta->status = out_of_fuel ? SearchStatus::OutOfFuel : SearchStatus::Exhausted;
    }
    return std::nullopt;
  }

  Dfs dfs;
  dfs.fuel = strategy.fuel;
  dfs.want_trace = want_trace;
  dfs.on_success = catch_first;
  std::mt19937 rng(strategy.seed);
  if (strategy.kind == StrategyKind::RandomizedDfs) dfs.rng = &rng;
  dfs.run(init, -1);
  if (meta) {
    meta->transitions = dfs.used;
    meta->status = found ? SearchStatus::Found
                 : dfs.out_of_fuel ? SearchStatus::OutOfFuel
                                   : SearchStatus::Exhausted;
    if (want_trace) meta->trace = std::move(dfs.trace);
  }
  return found;
}

}  // namespace

std::vector<ComputeState> transitions(const ComputeState& s) {
  std::vector<ComputeState> out;
  for (auto& nxt : successors(s)) out.push_back(std::move(nxt.state));
  return out;
}

SearchResult search(const BodyPtr& pred, const std::vector<TermPtr>& args,
                    const SearchStrategy& strategy, bool want_trace) {
  SearchResult res;
  auto found = find_first(pred, args, strategy, want_trace, &res);
  if (found) res.value = normalize(found->value);
  return res;
}

std::vector<TermPtr> enumerate_successes(const BodyPtr& pred,
                                         const std::vector<TermPtr>& args,
                                         long fuel) {
  if (fuel <= 0) return {};
  ComputeState init = initial_state(pred, args);
  std::vector<TermPtr> values;
  Dfs dfs;
  dfs.fuel = fuel;
  dfs.on_success = [&](Success&& s) {
    TermPtr v = normalize(s.value);
    for (auto& w : values)
      if (alpha_eq(w, v)) return false;
    values.push_back(v);
    return false;  // keep searching
  };
  dfs.run(init, -1);
  return values;
}

FormulaPtr certified_goal(const BodyPtr& pred, const std::vector<TermPtr>& args) {
  std::vector<TermPtr> full;
  for (auto& a : args) full.push_back(a);
  full.push_back(mk_bound(0, "y"));
  return mk_quant(Conn::Exists, "y", mk_fix(Conn::Mu, pred, full));
}

namespace {

// Replays ground steps into singleton-sequent Core proof nodes.
ProofNodePtr replay(const FormulaPtr& goal, const std::vector<Step>& steps,
                    std::size_t& idx, const Substitution& sigma) {
  if (idx >= steps.size())
    throw FormulaError("certify: trace ended before the goal was closed");
  const Step& st = steps[idx++];
  auto* n = new ProofNode();
  n->principal = 0;
  switch (st.kind) {
    case Step::Kind::Eq: {
      n->rule = "eq";
      n->principal = -1;
      if (goal->conn != Conn::Eq || !alpha_eq(goal->t1, goal->t2))
        throw FormulaError("certify: trace mismatch at an equation");
      return ProofNodePtr(n);
    }
    case Step::Kind::Tensor: {
      n->rule = "tensor";
      n->split = {};
      n->children = {replay(goal->left, steps, idx, sigma),
                     replay(goal->right, steps, idx, sigma)};
      return ProofNodePtr(n);
    }
    case Step::Kind::Plus: {
      n->rule = "oplus";
      n->alt = st.bit;
      n->children = {
          replay(st.bit == 0 ? goal->left : goal->right, steps, idx, sigma)};
      return ProofNodePtr(n);
    }
    case Step::Kind::Mu: {
      n->rule = "mu";
      n->children = {replay(normalize_terms(unfold_fix(goal)), steps, idx, sigma)};
      return ProofNodePtr(n);
    }
    case Step::Kind::Exists: {
      n->rule = "exists";
      TermPtr w = sigma.binds(st.fresh) ? sigma.lookup(st.fresh) : nullptr;
      if (!w || !free_vars(w).empty())
        throw FormulaError("certify: existential witness not ground");
      n->witness = w;
      n->children = {replay(instantiate_scope(goal, w), steps, idx, sigma)};
      return ProofNodePtr(n);
    }
  }
  throw FormulaError("certify: bad step");
}

}  // namespace

ProofNodePtr certify(const BodyPtr& pred, const std::vector<TermPtr>& args,
                     const TermPtr& value, long fuel) {
  TermPtr want = normalize(value);
  if (!free_vars(want).empty() || has_free_bound(want))
    throw FormulaError("certify: value must be ground");
  ComputeState init = initial_state(pred, args);
  std::optional<Success> hit;
  Dfs dfs;
  dfs.fuel = fuel;
  dfs.on_success = [&](Success&& s) {
    if (!alpha_eq(normalize(s.value), want)) return false;
    hit = std::move(s);
    return true;
  };
  dfs.run(init, -1);
  if (!hit)
    throw FormulaError("certify: no successful computation reaches value " +
                       term_to_string(want));

  // Ground the whole trace with the accumulated answer substitution and
  // replay it under the witnessed existential.
  std::vector<TermPtr> full = args;
  full.push_back(want);
  FormulaPtr ground_goal = normalize_terms(mk_fix(Conn::Mu, pred, full));
  std::size_t idx = 0;
  ProofNodePtr inner = replay(ground_goal, hit->steps, idx, hit->sigma);
  if (idx != hit->steps.size())
    throw FormulaError("certify: trace has unused steps");
  auto* ex = new ProofNode();
  ex->rule = "exists";
  ex->principal = 0;
  ex->witness = want;
  ex->children = {inner};
  return ProofNodePtr(ex);
}

}  // namespace mumall
