// Acceptance suite: one line per criterion, exit status 1 if any fails.
#include "support.hpp"

#include "hyperqual/automata.hpp"
#include "hyperqual/checker.hpp"
#include "hyperqual/compile.hpp"
#include "hyperqual/oracle.hpp"
#include "hyperqual/values.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using namespace hyperqual;
using namespace hyperqual::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

int failed_criteria = 0;

void run(int id, const std::string& desc, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs <= limit_s, "time limit exceeded");
  if (!o.ok) ++failed_criteria;
  std::printf("criterion %d: %s %s [%s] (%.2fs, limit %.0fs)\n", id, o.ok ? "PASS" : "FAIL", desc.c_str(),
              o.detail.c_str(), secs, limit_s);
  for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
}

Formula quantify(Rng& rng, Formula f, const std::vector<std::string>& vars) {
  for (std::size_t i = vars.size(); i-- > 0;) f = pick(rng, 2) ? f_exists(vars[i], f) : f_forall(vars[i], f);
  return f;
}

std::vector<std::string> vars_for_depth(int depth) {
  return depth == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
}

Rational pow_int(std::size_t base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r = r * Rational(static_cast<std::int64_t>(base));
  return r;
}

Formula half_bound_inner() {
  return f_forall("y", f_func(FuncSymbol::make_oplus(Rational(1, 2)), {f_not(f_atom("p", "x")), f_atom("p", "y")}));
}

Nba random_nba(Rng& rng, const Alphabet& alpha) {
  Nba a;
  a.alphabet = alpha;
  int n = 1 + pick(rng, 4);
  for (int s = 0; s < n; ++s) a.add_state(pick(rng, 3) == 0);
  for (int s = 0; s < n; ++s)
    for (std::uint32_t l = 0; l < alpha.size(); ++l)
      for (int t = 0; t < n; ++t)
        if (pick(rng, 3) == 0) a.add_edge(s, l, t);
  a.initial.push_back(0);
  if (n > 1 && pick(rng, 3) == 0) a.initial.push_back(1 + pick(rng, n - 1));
  a.normalize();
  return a;
}

Lasso random_lasso(Rng& rng, const Alphabet& alpha) {
  Lasso l;
  int stem = pick(rng, 4), loop = 1 + pick(rng, 3);
  auto letter = [&] { return alpha.decode(static_cast<std::uint32_t>(pick(rng, static_cast<int>(alpha.size())))); };
  for (int i = 0; i < stem; ++i) l.stem.push_back(letter());
  for (int i = 0; i < loop; ++i) l.loop.push_back(letter());
  return l;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion1(Outcome& o) {
  Rng rng(101);
  int formulas = 0, violations = 0, evaluations = 0, outside = 0;
  for (int round = 0; round < 240; ++round) {
    std::vector<Rational> w = round % 2 ? std::vector<Rational>{0, 1} : std::vector<Rational>{0, Rational(1, 2), 1};
    WeightedKripke k = random_kripke(rng, 2, {"p", "q"}, w);
    int depth = pick(rng, 3);
    GenOptions g;
    g.vars = depth == 0 ? vars_for_depth(1 + pick(rng, 2)) : vars_for_depth(depth);
    g.props = {"p", "q"};
    g.constants = false;
    int atoms = 1 + pick(rng, 5);
    Formula f = random_formula(rng, g, atoms);
    if (depth > 0) f = quantify(rng, f, g.vars);
    ValueSet vw = value_overapprox(f, ValueSet(w));
    int count = analyze(f).atom_count;
    ++formulas;
    if (Rational(static_cast<std::int64_t>(vw.size())) > pow_int(w.size(), count)) {
      ++violations;
      o.require(false, "size bound violated by " + print(f));
    }
    auto universe = lasso_enumerate(k, 2, 2);
    if (depth > 0) {
      Rational v = eval_quantified(f, k.aps, universe);
      ++evaluations;
      if (!vw.contains(v)) {
        ++outside;
        o.require(false, print(f) + " value " + v.str() + " outside " + vw.str());
      }
    } else {
      for (const auto& t : tuples(universe, static_cast<int>(g.vars.size()))) {
        EvalContext ctx;
        ctx.aps = k.aps;
        for (std::size_t i = 0; i < g.vars.size(); ++i) ctx.assignment.bind(g.vars[i], t[i]);
        Rational v = eval_qf(f, ctx);
        ++evaluations;
        if (!vw.contains(v)) {
          ++outside;
          o.require(false, print(f) + " value " + v.str() + " outside " + vw.str());
        }
      }
    }
  }
  o.require(formulas >= 200, "too few formulas");
  o.detail = std::to_string(formulas) + " formulas, " + std::to_string(violations) + " size violations, " +
             std::to_string(evaluations) + " oracle values, " + std::to_string(outside) + " outside V_W";
}

void criterion2(Outcome& o) {
  Formula psi = f_exists("x", half_bound_inner());
  CheckOptions opts;
  opts.verify_unique = true;
  Rational v = mc_prop_value(psi, complete_boolean(), opts);
  o.require(v == Rational(1, 2), "value on the complete structure is " + v.str());
  Rng rng(202);
  int holds = 0;
  for (int i = 0; i < 20; ++i) {
    WeightedKripke k = random_kripke(rng, 3, {"p"}, {0, 1});
    bool h = mc_prop(psi, k, {QueryOp::Ge, Rational(1, 2)}).answer == Answer::Holds;
    if (h) ++holds;
    o.require(h, "GE 1/2 fails on\n" + print_kripke(k));
  }
  EvalContext ctx;
  ctx.aps = {"p"};
  ctx.assignment.bind("x", Lasso{{}, {Letter{Rational(1)}}});
  ctx.candidates = {Lasso{{}, {Letter{Rational(0)}}}};
  Rational inner = eval_quantified(half_bound_inner(), ctx);
  o.require(inner == Rational(0), "inner value " + inner.str());
  o.detail = "value " + v.str() + ", GE 1/2 holds on " + std::to_string(holds) + "/20, inner value " + inner.str();
}

void criterion3(Outcome& o) {
  Rng rng(303);
  int total = 0, pinned = 0, alternating = 0, discrepancies = 0;
  for (int round = 0; round < 150; ++round) {
    std::vector<Rational> w = pick(rng, 2) ? std::vector<Rational>{0, 1} : std::vector<Rational>{0, Rational(1, 2), 1};
    WeightedKripke k = random_kripke(rng, 2, {"p"}, w);
    int depth = 1 + pick(rng, 2);
    GenOptions g;
    g.vars = vars_for_depth(depth);
    Formula f = quantify(rng, random_formula(rng, g, 1 + pick(rng, 3)), g.vars);
    CheckOptions opts;
    opts.verify_unique = true;
    Rational v = mc_prop_value(f, k, opts);
    int s = static_cast<int>(k.num_states());
    BoundedValue b = eval_bounded(f, k, s, s * s);
    ++total;
    bool ok = value_overapprox(f, ValueSet(w)).contains(v);
    if (b.bound == BoundClass::Exact) {
      ok = ok && b.value == v;
      ++pinned;
    } else if (b.bound == BoundClass::Lower) {
      ok = ok && b.value <= v;
      if (b.value == v) ++pinned;
    } else if (b.bound == BoundClass::Upper) {
      ok = ok && b.value >= v;
      if (b.value == v) ++pinned;
    } else {
      ++alternating;
      ok = ok && mc_prop(f, k, {QueryOp::Ge, v}).answer == Answer::Holds &&
           mc_prop(f, k, {QueryOp::Le, v}).answer == Answer::Holds;
    }
    if (!ok) {
      ++discrepancies;
      o.require(false, print(f) + " value " + v.str() + " oracle " + b.value.str() + " (" +
                           bound_class_name(b.bound) + ")");
    }
  }
  o.detail = std::to_string(total) + " formulas, " + std::to_string(pinned) + " pinned, " +
             std::to_string(alternating) + " alternating, " + std::to_string(discrepancies) + " discrepancies";
}

void criterion4(Outcome& o) {
  WeightedKripke k = complete_boolean();
  Formula phi = no_lasso_phi("x");
  int lassos = 0, positive = 0;
  for (const auto& l : lasso_enumerate(k, 3, 3)) {
    EvalContext ctx;
    ctx.aps = k.aps;
    ctx.assignment.bind("x", l);
    ++lassos;
    if (eval_qf(phi, ctx) > Rational(0)) ++positive;
  }
  o.require(lassos == positive, "a lasso has value 0");
  Formula psi = f_forall("x", phi);
  Verdict v = mc_temp_approx(psi, k, {QueryOp::Ge, Rational(1, 2)}, Rational(1, 4));
  o.require(v.answer == Answer::Fails, "approximate check answered " + answer_name(v.answer));
  // Nonemptiness of A^{>0} does not certify a positive value.
  bool naive = !is_empty(quantifier_elim_temp(psi, k, Cmp::Gt, Rational(0)));
  o.require(naive, "A^{>0} is empty");
  bool below = !is_empty(quantifier_elim_temp(psi, k, Cmp::Lt, Rational(1, 4)));
  o.require(below, "A^{<1/4} is empty");
  o.detail = std::to_string(positive) + "/" + std::to_string(lassos) + " lassos positive, approx " +
             answer_name(v.answer) + ", A^{>0} nonempty=" + (naive ? "yes" : "no") +
             ", A^{<1/4} nonempty=" + (below ? "yes" : "no");
}

void criterion5(Outcome& o) {
  DiscountSeq eta = DiscountSeq::exp(Rational(1, 2));
  int duality = 0;
  for (int d = 1; d <= 3; ++d) {
    WeightedKripke k = divergence_structure(d);
    Rational val = eta.at(static_cast<std::size_t>(d));
    std::string tag = "d=" + std::to_string(d) + ": ";
    BoundedValue b = eval_bounded(psi_div(eta), k, d + 2, d + 2);
    o.require(b.value == val, tag + "oracle value " + b.value.str());
    DiscountedLattice l{1, {eta}, ValueSet{0, 1}};
    o.require(mc_temp_fragment(psi_div(eta), k, {QueryOp::Ge, val}).answer == Answer::Holds, tag + "GE eta_d");
    Rational above = nearest_above(l, val);
    o.require(mc_temp_fragment(psi_div(eta), k, {QueryOp::Ge, above}).answer == Answer::Fails,
              tag + "GE " + above.str());
    for (const Rational& v : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(7, 8),
                              Rational(15, 16)}) {
      Answer od = mc_temp_fragment(phi_od_temp(eta), k, {QueryOp::Ge, v}).answer;
      Answer div = mc_temp_fragment(psi_div(eta), k, {QueryOp::Le, Rational(1) - v}).answer;
      o.require(od == div, tag + "duality at " + v.str());
      o.require((od == Answer::Holds) == (Rational(1) - val >= v), tag + "od value at " + v.str());
      ++duality;
    }
    bool od_refused = false, div_refused = false;
    try {
      mc_temp_fragment(phi_od_temp(eta), k, {QueryOp::Ge, Rational(1)});
    } catch (const UnsupportedQuery&) {
      od_refused = true;
    }
    try {
      mc_temp_fragment(psi_div(eta), k, {QueryOp::Le, Rational(0)});
    } catch (const UnsupportedQuery&) {
      div_refused = true;
    }
    o.require(od_refused && div_refused, tag + "GE 1 / LE 0 not refused on both sides");
  }
  o.detail = "d=1..3 exact, " + std::to_string(duality) + " duality pairs, GE 1 / LE 0 refused on both sides";
}

void criterion6(Outcome& o) {
  Rng rng(606);
  Alphabet alpha{{"p", "q"}, {0, 1}};
  int automata = 0, samples = 0, witnesses = 0, bad = 0;
  for (int round = 0; round < 60; ++round) {
    Nba a = random_nba(rng, alpha);
    Nba b = random_nba(rng, alpha);
    Nba ca = complement(a);
    Nba i = intersect(a, b);
    Nba u = nba_union(a, b);
    ++automata;
    for (const Nba* x : {&a, &ca, &i, &u}) {
      if (auto w = witness(*x)) {
        ++witnesses;
        if (!validate_run(*x, *w) || !accepts(*x, w->lasso)) {
          ++bad;
          o.require(false, "invalid witness\n" + print_nba(*x));
        }
      } else if (!is_empty(*x)) {
        o.require(false, "no witness for a nonempty automaton");
      }
    }
    for (int n = 0; n < 120; ++n) {
      Lasso l = random_lasso(rng, alpha);
      bool in_a = accepts(a, l), in_b = accepts(b, l);
      ++samples;
      bool ok = in_a != accepts(ca, l) && accepts(i, l) == (in_a && in_b) && accepts(u, l) == (in_a || in_b);
      if (!ok) {
        ++bad;
        o.require(false, "membership mismatch on " + format_lasso(alpha.props, l) + "\n" + print_nba(a));
      }
    }
  }
  o.detail = std::to_string(automata) + " automaton pairs, " + std::to_string(samples) + " lassos, " +
             std::to_string(witnesses) + " witnesses validated, " + std::to_string(bad) + " failures";
}

int quantifier_count(const Formula& f) {
  int n = f->is_quantifier() ? 1 : 0;
  for (const auto& a : f->args) n += quantifier_count(a);
  return n;
}

int count_kind(const Formula& f, NodeKind k) {
  int n = f->kind == k ? 1 : 0;
  for (const auto& a : f->args) n += count_kind(a, k);
  return n;
}

void criterion7(Outcome& o) {
  Rng rng(707);
  auto universe = lasso_enumerate(complete_boolean(), 1, 2);
  int cases = 0, prenex_evals = 0, mismatches = 0;
  for (int round = 0; round < 120; ++round) {
    int depth = 1 + pick(rng, 2);
    GenOptions g;
    g.vars = vars_for_depth(depth);
    Formula f = quantify(rng, random_formula(rng, g, 1 + pick(rng, 3)), g.vars);
    ValueSet dom = value_overapprox(f, ValueSet{0, 1});
    std::vector<Rational> chosen;
    for (const auto& c : dom)
      if (pick(rng, 2)) chosen.push_back(c);
    PredicateSpec p = PredicateSpec::in_set(ValueSet(chosen));
    Formula closure = booleanize_closure(f, p);
    Formula b = prenex_normalize(closure);
    ++cases;
    std::string tag = print(f) + " P=" + p.str() + ": ";
    o.require(is_prenex(b) && analyze(b).is_boolean, tag + "not a prenex Boolean formula");
    o.require(count_kind(b, NodeKind::Exists) == count_kind(closure, NodeKind::Exists) &&
                  count_kind(b, NodeKind::Forall) == count_kind(closure, NodeKind::Forall),
              tag + "quantifier counts changed");
    o.require(analyze(b).alternation_count <= alternation_depth(closure) + 1, tag + "alternation bound");
    bool in = p.contains(eval_quantified(f, {"p"}, universe));
    bool ok = (eval_quantified(closure, {"p"}, universe) == Rational(1)) == in;
    if (quantifier_count(b) <= 4) {
      ok = ok && (eval_quantified(b, {"p"}, universe) == Rational(1)) == in;
      ++prenex_evals;
    }
    if (!ok) {
      ++mismatches;
      o.require(false, tag + "oracle mismatch");
    }
  }
  o.detail = std::to_string(cases) + " cases, " + std::to_string(prenex_evals) + " prenex forms evaluated, " +
             std::to_string(mismatches) + " mismatches";
}

void criterion8(Outcome& o) {
  Formula psi = f_exists("x", f_forall("y", f_or(f_deventually(DiscountSeq::exp(Rational(1, 2)), f_atom("p", "x")),
                                                  f_dglobally(DiscountSeq::exp(Rational(1, 2)), f_not(f_atom("p", "y"))))));
  FormulaStats st = analyze(psi);
  o.require(st.is_temp && !st.temp_pos && !st.temp_neg && !st.exists_only && !st.forall_only,
            "query formula is inside a decidable fragment");
  auto dir = std::filesystem::temp_directory_path() / ("hq_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "k.wks") << print_kripke(complete_boolean());
    std::ofstream(dir / "f.hq") << print(psi) << "\n";
  }
  std::string base = std::string("\"") + HYPERQUAL_CLI + "\" check -k \"" + (dir / "k.wks").string() + "\" -f \"" +
                     (dir / "f.hq").string() + "\" --op ge --threshold 1/2";
  int refuse = std::system((base + " >\"" + (dir / "out").string() + "\" 2>\"" + (dir / "err").string() + "\"").c_str());
  std::string err = read_file(dir / "err");
  int refuse_code = WIFEXITED(refuse) ? WEXITSTATUS(refuse) : -1;
  o.require(refuse_code == 2, "exit code " + std::to_string(refuse_code));
  o.require(err.find("full HyperLTL_temp requires --epsilon (exact MC open)") != std::string::npos,
            "message: " + err);
  int approx = std::system((base + " --epsilon 1/8 >/dev/null 2>&1").c_str());
  int approx_code = WIFEXITED(approx) ? WEXITSTATUS(approx) : -1;
  o.require(approx_code == 0 || approx_code == 1 || approx_code == 3, "approximate run exit " + std::to_string(approx_code));
  std::filesystem::remove_all(dir);
  o.detail = "without --epsilon exit " + std::to_string(refuse_code) + ", with --epsilon exit " +
             std::to_string(approx_code) +
             "; not verified empirically: non-elementary complexity bounds, exponential Bool size lower bound";
}

} // namespace

int main() {
  run(1, "value-set size law and oracle values inside V_W", 30, criterion1);
  run(2, "half-bound formula: value 1/2 and lower bound 1/2", 10, criterion2);
  run(3, "prop pipeline against the lasso oracle", 180, criterion3);
  run(4, "no-lasso example and approximate checking", 30, criterion4);
  run(5, "fragment exactness on divergence structures", 60, criterion5);
  run(6, "automata algebra on random automata", 60, criterion6);
  run(7, "booleanize equivalence and prenex form", 120, criterion7);
  run(8, "exact checking of alternating temporal formulas is refused", 30, criterion8);
  std::printf("%d criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
