#include "hyperqual/checker.hpp"

#include "hyperqual/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hyperqual {

std::string answer_name(Answer a) {
  switch (a) {
  case Answer::Holds:
    return "HOLDS";
  case Answer::Fails:
    return "FAILS";
  case Answer::UnknownWithinEpsilon:
    return "UNKNOWN_WITHIN_EPSILON";
  }
  return "";
}

std::string method_name(Method m) {
  switch (m) {
  case Method::PropExact:
    return "prop-exact";
  case Method::PropValue:
    return "prop-value";
  case Method::TempApprox:
    return "temp-approx";
  case Method::TempPositive:
    return "temp-positive";
  case Method::TempNegative:
    return "temp-negative";
  case Method::TempAlternationFree:
    return "temp-alternation-free";
  }
  return "";
}

std::string Query::str() const { return std::string(op == QueryOp::Ge ? ">= " : "<= ") + v.str(); }

namespace {

std::vector<Lasso> witness_traces(const Verdict& v, const WeightedKripke& k) {
  std::vector<Lasso> out;
  if (!v.witness) return out;
  for (std::size_t i = 0; i < v.witness_vars.size(); ++i)
    out.push_back(project_component(v.witness->lasso, static_cast<int>(i), static_cast<int>(k.aps.size())).normalized());
  return out;
}

nlohmann::json letter_json(const WeightedKripke& k, const Letter& l) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < k.aps.size(); ++i) j[k.aps[i]] = l[i].str();
  return j;
}

} // namespace

std::string verdict_json(const Verdict& v, const WeightedKripke& k) {
  nlohmann::json j;
  j["schema"] = 1;
  j["answer"] = answer_name(v.answer);
  j["method"] = method_name(v.method);
  j["value"] = v.value ? nlohmann::json(v.value->str()) : nlohmann::json(nullptr);
  if (!v.note.empty()) j["note"] = v.note;
  nlohmann::json w = nlohmann::json::array();
  auto traces = witness_traces(v, k);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    nlohmann::json t;
    t["var"] = v.witness_vars[i];
    t["stem"] = nlohmann::json::array();
    t["loop"] = nlohmann::json::array();
    for (const auto& l : traces[i].stem) t["stem"].push_back(letter_json(k, l));
    for (const auto& l : traces[i].loop) t["loop"].push_back(letter_json(k, l));
    w.push_back(t);
  }
  j["witness"] = w;
  return j.dump(2);
}

std::string verdict_text(const Verdict& v, const WeightedKripke& k) {
  std::ostringstream out;
  out << answer_name(v.answer) << " (" << method_name(v.method) << ")\n";
  if (v.value) out << "value: " << v.value->str() << "\n";
  if (!v.note.empty()) out << "note: " << v.note << "\n";
  auto traces = witness_traces(v, k);
  for (std::size_t i = 0; i < traces.size(); ++i)
    out << "witness " << v.witness_vars[i] << ": " << format_lasso(k.aps, traces[i]) << "\n";
  return out.str();
}

namespace {

void require_closed(const Formula& psi) {
  auto fv = free_variables(psi);
  if (!fv.empty()) throw std::invalid_argument("formula has free trace variable " + *fv.begin());
}

void require_threshold(const Rational& v) {
  if (!v.in_unit_interval()) throw std::invalid_argument("threshold " + v.str() + " outside [0,1]");
}

Verdict make(Answer a, Method m) {
  Verdict v;
  v.answer = a;
  v.method = m;
  return v;
}

} // namespace

Verdict mc_prop(const Formula& psi, const WeightedKripke& k, const Query& q, const CheckOptions& opts) {
  require_closed(psi);
  require_threshold(q.v);
  if (!analyze(psi).is_prop) throw UnsupportedQuery("mc_prop: formula contains discounted operators");
  ElimOptions eo{opts.complement};
  PredicateSpec bad = q.op == QueryOp::Ge ? PredicateSpec::lt(q.v) : PredicateSpec::gt(q.v);
  Nba a = quantifier_elim_prop(psi, k, bad, {}, eo);
  return make(is_empty(a) ? Answer::Holds : Answer::Fails, Method::PropExact);
}

Rational mc_prop_value(const Formula& psi, const WeightedKripke& k, const CheckOptions& opts) {
  require_closed(psi);
  if (!analyze(psi).is_prop) throw UnsupportedQuery("mc_prop_value: formula contains discounted operators");
  PropElimination e(psi, k, {}, ElimOptions{opts.complement});
  std::vector<Rational> found;
  const auto& vals = e.values().values();
  for (auto it = vals.rbegin(); it != vals.rend(); ++it) {
    if (is_empty(e.automaton(PredicateSpec::singleton(*it)))) continue;
    found.push_back(*it);
    if (!opts.verify_unique) break;
  }
  if (found.size() != 1) {
    std::string msg = "value synthesis found " + std::to_string(found.size()) + " candidates among " + e.values().str();
    for (const auto& c : found) msg += " " + c.str();
    throw ValueSynthesisError(msg);
  }
  return found.front();
}

Verdict mc_temp_approx(const Formula& psi, const WeightedKripke& k, const Query& q, const Rational& epsilon,
                       const CheckOptions& opts) {
  require_closed(psi);
  require_threshold(q.v);
  if (epsilon <= Rational(0)) throw std::invalid_argument("epsilon must be positive");
  if (!analyze(psi).is_temp) throw UnsupportedQuery("mc_temp_approx: formula uses non-Boolean function symbols");
  if (q.op == QueryOp::Le) {
    Verdict v = mc_temp_approx(negate_dual(psi), k, Query{QueryOp::Ge, Rational(1) - q.v}, epsilon, opts);
    if (v.value) v.value = Rational(1) - *v.value;
    return v;
  }
  ElimOptions eo{opts.complement};
  const Rational& v = q.v;
  if (is_empty(quantifier_elim_temp(psi, k, Cmp::Lt, v, {}, eo))) return make(Answer::Holds, Method::TempApprox);
  // The value is now known to be at most v.
  FormulaStats st = analyze(psi);
  if (st.exists_only || st.forall_only) {
    BoundedValue b = eval_bounded(psi, k, opts.approx_stem, opts.approx_loop);
    if (b.bound == BoundClass::Lower && b.value >= v) {
      Verdict out = make(Answer::Holds, Method::TempApprox);
      out.value = v;
      out.note = "bounded lasso search reaches the threshold";
      return out;
    }
    if (b.bound == BoundClass::Upper && b.value < v) {
      Verdict out = make(Answer::Fails, Method::TempApprox);
      out.note = "bounded lasso search gives upper bound " + b.value.str();
      return out;
    }
  }
  Rational w = v - epsilon / Rational(2);
  if (w > Rational(0) && !is_empty(quantifier_elim_temp(psi, k, Cmp::Lt, w, {}, eo))) {
    Verdict out = make(Answer::Fails, Method::TempApprox);
    out.note = "value at most " + w.str();
    return out;
  }
  Verdict out = make(Answer::UnknownWithinEpsilon, Method::TempApprox);
  out.note = "value in [" + max(Rational(0), w).str() + ", " + v.str() + "]";
  return out;
}

namespace {

DiscountedLattice lattice_of(const Formula& psi, const WeightedKripke& k) {
  FormulaStats st = analyze(psi);
  return DiscountedLattice{st.discount_depth, st.discount_seqs, ValueSet(k.weights)};
}

Verdict fragment_positive(const Formula& psi, const WeightedKripke& k, const Query& q, const CheckOptions& opts,
                          Method m) {
  ElimOptions eo{opts.complement};
  DiscountedLattice l = lattice_of(psi, k);
  if (q.op == QueryOp::Ge) {
    if (q.v.is_zero()) return make(Answer::Holds, m);
    Rational below = nearest_below(l, q.v);
    Rational mid = (below + q.v) / Rational(2);
    bool empty = is_empty(quantifier_elim_temp(psi, k, Cmp::Lt, mid, {}, eo));
    Verdict out = make(empty ? Answer::Holds : Answer::Fails, m);
    out.note = "cut " + mid.str() + " between lattice values " + below.str() + " and " + q.v.str();
    return out;
  }
  if (q.v.is_zero()) throw UnsupportedQuery("threshold <= 0 is not decidable exactly for the positive fragment");
  if (q.v.is_one()) return make(Answer::Holds, m);
  Rational above = nearest_above(l, q.v);
  Rational mid = (above + q.v) / Rational(2);
  bool empty = is_empty(quantifier_elim_temp(psi, k, Cmp::Gt, mid, {}, eo));
  Verdict out = make(empty ? Answer::Holds : Answer::Fails, m);
  out.note = "cut " + mid.str() + " between lattice values " + q.v.str() + " and " + above.str();
  return out;
}

} // namespace

Verdict mc_temp_fragment(const Formula& psi, const WeightedKripke& k, const Query& q, const CheckOptions& opts) {
  require_closed(psi);
  require_threshold(q.v);
  FormulaStats st = analyze(psi);
  if (st.temp_pos) return fragment_positive(psi, k, q, opts, Method::TempPositive);
  if (st.temp_neg) {
    if (q.op == QueryOp::Ge && q.v.is_one())
      throw UnsupportedQuery("threshold >= 1 is not decidable exactly for the negative fragment");
    Query dual{q.op == QueryOp::Ge ? QueryOp::Le : QueryOp::Ge, Rational(1) - q.v};
    return fragment_positive(negate_dual(psi), k, dual, opts, Method::TempNegative);
  }
  throw UnsupportedQuery("formula is in neither the positive nor the negative fragment");
}

Verdict mc_temp_af(const Formula& psi, const WeightedKripke& k, const Query& q, const CheckOptions&) {
  require_closed(psi);
  require_threshold(q.v);
  FormulaStats st = analyze(psi);
  if (!st.is_temp) throw UnsupportedQuery("mc_temp_af: formula uses non-Boolean function symbols");
  bool ex = st.exists_only && !(st.forall_only && q.op == QueryOp::Ge);
  if (ex && q.op != QueryOp::Le)
    throw UnsupportedQuery("existential formulas support only <= queries exactly; use --epsilon");
  if (!ex && !st.forall_only) throw UnsupportedQuery("formula has quantifier alternation");
  if (!ex && q.op != QueryOp::Ge)
    throw UnsupportedQuery("universal formulas support only >= queries exactly; use --epsilon");
  Formula phi = ex ? psi : negate_dual(psi);
  Rational v = ex ? q.v : Rational(1) - q.v;
  Prefix p = split_prefix(phi);
  std::vector<std::string> vars;
  for (const auto& [qq, x] : p.quantifiers) vars.push_back(x);
  Nba a = compile_temp_qf(p.matrix, k, vars, Cmp::Gt, v);
  Verdict out = make(Answer::Holds, Method::TempAlternationFree);
  if (auto w = witness(a)) {
    out.answer = Answer::Fails;
    out.witness = w;
    out.witness_vars = vars;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Booleanization

namespace {

class Booleanizer {
public:
  explicit Booleanizer(ValueSet w) : w_(std::move(w)) {}

  Formula run(const Formula& f, const ValueSet& p) {
    const ValueSet& dom = domain(f);
    std::vector<Rational> keep;
    for (const auto& x : dom)
      if (p.contains(x)) keep.push_back(x);
    if (keep.empty()) return f_false();
    if (keep.size() == dom.size()) return f_true();
    ValueSet s(keep);
    auto key = std::make_pair(f.get(), s.values());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula out = translate(f, s);
    memo_[key] = out;
    return out;
  }

private:
  const ValueSet& domain(const Formula& f) {
    auto it = domains_.find(f.get());
    if (it == domains_.end()) it = domains_.emplace(f.get(), value_overapprox(f, w_)).first;
    return it->second;
  }

  ValueSet at_least(const Formula& f, const Rational& c, bool strict) {
    std::vector<Rational> out;
    for (const auto& x : domain(f))
      if (strict ? x > c : x >= c) out.push_back(x);
    return ValueSet(out);
  }
  ValueSet at_most(const Formula& f, const Rational& c) {
    std::vector<Rational> out;
    for (const auto& x : domain(f))
      if (x <= c) out.push_back(x);
    return ValueSet(out);
  }

  // [f = c] for temporal operators evaluated as [f >= c] and not [f > c].
  Formula threshold(const Formula& f, const Rational& c, bool strict) {
    const Formula& a = f->args[0];
    const Formula& b = f->args[1];
    Formula x = run(a, at_least(a, c, strict));
    Formula y = run(b, at_least(b, c, strict));
    return f->kind == NodeKind::Until ? f_until(x, y) : f_release(x, y);
  }

  Formula translate(const Formula& f, const ValueSet& p) {
    switch (f->kind) {
    case NodeKind::Atom:
      // p is a proper nonempty subset of {0,1}.
      return p.contains(Rational(1)) ? f : f_not(f);
    case NodeKind::Next:
      return f_next(run(f->args[0], p));
    case NodeKind::Func: {
      std::vector<const ValueSet*> doms;
      for (const auto& a : f->args) doms.push_back(&domain(a));
      std::vector<Formula> terms;
      std::vector<Rational> xs(doms.size());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == doms.size()) {
          if (!p.contains(f->func.apply(xs))) return;
          std::vector<Formula> parts;
          for (std::size_t j = 0; j < xs.size(); ++j) parts.push_back(run(f->args[j], ValueSet{xs[j]}));
          terms.push_back(f_and(parts));
          return;
        }
        for (const auto& x : *doms[i]) {
          xs[i] = x;
          rec(i + 1);
        }
      };
      rec(0);
      return terms.empty() ? f_false() : f_or(terms);
    }
    case NodeKind::Until:
    case NodeKind::Release: {
      std::vector<Formula> terms;
      for (const auto& c : p) terms.push_back(f_and(threshold(f, c, false), f_not(threshold(f, c, true))));
      return f_or(terms);
    }
    case NodeKind::Exists:
    case NodeKind::Forall: {
      bool ex = f->kind == NodeKind::Exists;
      const Formula& body = f->args[0];
      std::vector<Formula> terms;
      for (const auto& c : p) {
        Formula attained = f_exists(f->var, run(body, ValueSet{c}));
        Formula bound = f_forall(f->var, run(body, ex ? at_most(body, c) : at_least(body, c, false)));
        terms.push_back(f_and(attained, bound));
      }
      return f_or(terms);
    }
    case NodeKind::DUntil:
    case NodeKind::DRelease:
      throw std::invalid_argument("booleanize: discounted operator");
    default:
      throw std::logic_error("booleanize: constant with a partial value set");
    }
  }

  ValueSet w_;
  std::map<const Node*, ValueSet> domains_;
  std::map<std::pair<const Node*, std::vector<Rational>>, Formula> memo_;
};

} // namespace

Formula booleanize_closure(const Formula& psi, const PredicateSpec& p, const std::vector<Rational>& weights) {
  for (const auto& w : weights)
    if (!w.is_zero() && !w.is_one()) throw std::invalid_argument("booleanize requires the weights {0,1}");
  Booleanizer b{ValueSet(weights)};
  ValueSet dom = value_overapprox(psi, ValueSet(weights));
  return b.run(psi, p.filter(dom));
}

Formula booleanize(const Formula& psi, const PredicateSpec& p, const std::vector<Rational>& weights) {
  return prenex_normalize(booleanize_closure(psi, p, weights));
}

// ---------------------------------------------------------------------------
// Prenexing

namespace {

// Renames bound variables apart and records quantifier nodes by path.
class Prenexer {
public:
  explicit Prenexer(const Formula& f) {
    for (const auto& v : free_variables(f)) used_.insert(v);
  }

  // Strips quantifiers, recording (quantifier, fresh name, parent index).
  Formula strip(const Formula& f, int parent, std::map<std::string, std::string>& env) {
    switch (f->kind) {
    case NodeKind::Exists:
    case NodeKind::Forall: {
      std::string fresh = fresh_name(f->var);
      int id = static_cast<int>(quants_.size());
      quants_.push_back({f->kind == NodeKind::Exists ? Quant::Exists : Quant::Forall, fresh, parent});
      auto saved = env;
      env[f->var] = fresh;
      Formula body = strip(f->args[0], id, env);
      env = saved;
      return body;
    }
    case NodeKind::Func:
      if (f->func.kind == FuncKind::Or || f->func.kind == FuncKind::And) {
        std::vector<Formula> args;
        for (const auto& a : f->args) args.push_back(strip(a, parent, env));
        return f_func(f->func, args);
      }
      [[fallthrough]];
    default:
      if (contains_quantifier(f))
        throw std::invalid_argument("prenex_normalize: quantifier below " + print(f).substr(0, 40));
      return rename(f, env);
    }
  }

  struct Q {
    Quant quant;
    std::string var;
    int parent;
  };
  const std::vector<Q>& quants() const { return quants_; }

private:
  std::string fresh_name(const std::string& base) {
    std::string name = base;
    for (int i = 1; used_.count(name); ++i) name = base + "_" + std::to_string(i);
    used_.insert(name);
    return name;
  }

  static Formula rename(const Formula& f, const std::map<std::string, std::string>& env) {
    if (f->kind == NodeKind::Atom) {
      auto it = env.find(f->var);
      return it == env.end() ? f : f_atom(f->prop, it->second);
    }
    if (f->args.empty()) return f;
    auto n = std::make_shared<Node>(*f);
    for (auto& a : n->args) a = rename(a, env);
    return n;
  }

  std::set<std::string> used_;
  std::vector<Q> quants_;
};

int blocks_on_paths(const Formula& f, int blocks, Quant last, bool any) {
  if (f->is_quantifier()) {
    Quant q = f->kind == NodeKind::Exists ? Quant::Exists : Quant::Forall;
    int b = blocks + ((!any || q != last) ? 1 : 0);
    return blocks_on_paths(f->args[0], b, q, true);
  }
  int best = blocks;
  for (const auto& a : f->args) best = std::max(best, blocks_on_paths(a, blocks, last, any));
  return best;
}

} // namespace

int alternation_depth(const Formula& psi) { return std::max(0, blocks_on_paths(psi, 0, Quant::Exists, false) - 1); }

Formula prenex_normalize(const Formula& psi) {
  Prenexer pr(psi);
  std::map<std::string, std::string> env;
  Formula matrix = pr.strip(psi, -1, env);
  const auto& qs = pr.quants();
  if (qs.empty()) return matrix;
  // Block count of each chain and the quantifier of the first block on the
  // longest chains decide the target alternating pattern.
  std::vector<int> blocks(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    int p = qs[i].parent;
    blocks[i] = p < 0 ? 1 : blocks[static_cast<std::size_t>(p)] + (qs[static_cast<std::size_t>(p)].quant != qs[i].quant);
  }
  int m = *std::max_element(blocks.begin(), blocks.end());
  std::set<Quant> starts;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (blocks[i] != m) continue;
    std::size_t r = i;
    while (qs[r].parent >= 0) r = static_cast<std::size_t>(qs[r].parent);
    starts.insert(qs[r].quant);
  }
  Quant first = starts.size() == 1 ? *starts.begin() : Quant::Exists;
  auto pattern = [&](int pos) {
    return pos % 2 == 0 ? first : (first == Quant::Exists ? Quant::Forall : Quant::Exists);
  };
  std::vector<int> pos(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    int p = qs[i].parent < 0 ? 0 : pos[static_cast<std::size_t>(qs[i].parent)];
    while (pattern(p) != qs[i].quant) ++p;
    pos[i] = p;
  }
  std::vector<std::pair<Quant, std::string>> prefix;
  int top = *std::max_element(pos.begin(), pos.end());
  for (int p = 0; p <= top; ++p)
    for (std::size_t i = 0; i < qs.size(); ++i)
      if (pos[i] == p) prefix.emplace_back(qs[i].quant, qs[i].var);
  return join_prefix(prefix, matrix);
}

} // namespace hyperqual
