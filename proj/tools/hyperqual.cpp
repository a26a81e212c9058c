#include "hyperqual/checker.hpp"
#include "hyperqual/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hyperqual;

namespace {

constexpr int kHolds = 0, kFails = 1, kUsage = 2, kUnknown = 3, kCap = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string mode = "auto";
  std::string kripke_path;
  std::string formula_path;
  std::string formula_text;
  std::string lassos_path;
  std::string op = "ge";
  std::string threshold;
  std::string epsilon;
  std::string bounds;
  std::string output = "text";
  std::string values_set;
  std::vector<std::string> low;
  std::size_t state_cap = 0;
  bool verify_unique = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Rational parse_rational(const std::string& what, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
}

std::pair<int, int> parse_bounds(const std::string& text) {
  if (text.empty()) return {2, 2};
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--bounds expects STEM,LOOP");
  try {
    int s = std::stoi(text.substr(0, comma)), l = std::stoi(text.substr(comma + 1));
    if (s < 0 || l < 1) throw UsageError("--bounds needs STEM >= 0 and LOOP >= 1");
    return {s, l};
  } catch (const std::logic_error&) {
    throw UsageError("--bounds expects STEM,LOOP");
  }
}

class Runner {
public:
  explicit Runner(Config c) : c_(std::move(c)) {
    opts_.verify_unique = c_.verify_unique;
    if (const char* env = std::getenv("HYPERQUAL_STATE_CAP")) {
      try {
        opts_.complement.state_cap = std::stoul(env);
      } catch (const std::logic_error&) {
        throw UsageError("HYPERQUAL_STATE_CAP must be a positive integer");
      }
    }
    if (c_.state_cap > 0) opts_.complement.state_cap = c_.state_cap;
  }

  int run() {
    const std::string& m = c_.mode;
    if (m == "eval") return eval();
    load_formula();
    if (m == "values") return values();
    if (m == "translate") return translate();
    load_kripke();
    if (m == "dump-nba") return dump_nba();
    Query q = query();
    FormulaStats st = analyze(psi_);
    if (!free_variables(psi_).empty()) throw UsageError("model checking needs a closed formula");
    Verdict v;
    if (m == "prop") {
      v = mc_prop(psi_, k_, q, opts_);
    } else if (m == "prop-value") {
      v.answer = Answer::Holds;
      v.method = Method::PropValue;
      v.value = mc_prop_value(psi_, k_, opts_);
      v.answer = (q.op == QueryOp::Ge ? *v.value >= q.v : *v.value <= q.v) ? Answer::Holds : Answer::Fails;
    } else if (m == "temp-approx") {
      v = mc_temp_approx(psi_, k_, q, epsilon(true), opts_);
    } else if (m == "temp-pos" || m == "temp-neg") {
      if (m == "temp-pos" ? !st.temp_pos : !st.temp_neg) throw UsageError("formula is not in the requested fragment");
      v = mc_temp_fragment(psi_, k_, q, opts_);
    } else if (m == "temp-af") {
      v = mc_temp_af(psi_, k_, q, opts_);
    } else if (m == "auto") {
      v = dispatch(st, q);
    } else {
      throw UsageError("unknown mode " + m);
    }
    emit(v);
    switch (v.answer) {
    case Answer::Holds:
      return kHolds;
    case Answer::Fails:
      return kFails;
    case Answer::UnknownWithinEpsilon:
      return kUnknown;
    }
    return kUsage;
  }

private:
  Verdict dispatch(const FormulaStats& st, const Query& q) {
    if (st.is_prop) return mc_prop(psi_, k_, q, opts_);
    if (!st.is_temp) throw UsageError("formula mixes weighted function symbols with discounted operators");
    bool pos_ok = st.temp_pos && !(q.op == QueryOp::Le && q.v.is_zero());
    bool neg_ok = st.temp_neg && !(q.op == QueryOp::Ge && q.v.is_one());
    if (pos_ok || neg_ok) return mc_temp_fragment(psi_, k_, q, opts_);
    if ((st.exists_only && q.op == QueryOp::Le) || (st.forall_only && q.op == QueryOp::Ge))
      return mc_temp_af(psi_, k_, q, opts_);
    if (c_.epsilon.empty()) throw UsageError("full HyperLTL_temp requires --epsilon (exact MC open)");
    return mc_temp_approx(psi_, k_, q, epsilon(true), opts_);
  }

  void load_formula(const std::vector<std::string>& free_vars = {}) {
    std::string text;
    if (!c_.formula_text.empty()) text = c_.formula_text;
    else if (!c_.formula_path.empty()) text = read_file(c_.formula_path);
    else throw UsageError("a formula is required (--formula FILE or --text FORMULA)");
    ParseOptions po;
    po.free_vars = free_vars;
    if (!c_.low.empty()) po.low = c_.low;
    psi_ = parse_formula(text, po);
  }

  void load_kripke() {
    if (c_.kripke_path.empty()) throw UsageError("--kripke FILE is required in mode " + c_.mode);
    k_ = parse_kripke(read_file(c_.kripke_path));
    have_k_ = true;
  }

  Query query() {
    Query q;
    if (c_.op == "ge") q.op = QueryOp::Ge;
    else if (c_.op == "le") q.op = QueryOp::Le;
    else throw UsageError("--op must be ge or le");
    if (c_.threshold.empty()) {
      if (c_.mode != "prop-value") throw UsageError("--threshold is required");
      q.v = Rational(0);
    } else {
      q.v = parse_rational("--threshold", c_.threshold);
    }
    if (!q.v.in_unit_interval()) throw UsageError("--threshold must lie in [0,1]");
    return q;
  }

  Rational epsilon(bool required) {
    if (c_.epsilon.empty()) {
      if (required) throw UsageError("mode temp-approx requires --epsilon");
      return Rational(0);
    }
    Rational e = parse_rational("--epsilon", c_.epsilon);
    if (e <= Rational(0)) throw UsageError("--epsilon must be positive");
    return e;
  }

  bool json() const { return c_.output == "json"; }

  void emit(const Verdict& v) {
    if (json()) std::cout << verdict_json(v, k_) << "\n";
    else std::cout << verdict_text(v, k_);
  }

  int eval() {
    auto [stem, loop] = parse_bounds(c_.bounds);
    if (!c_.lassos_path.empty()) {
      std::vector<std::string> aps;
      if (!c_.kripke_path.empty()) {
        load_kripke();
        aps = k_.aps;
      }
      LassoAssignment a = parse_assignment(read_file(c_.lassos_path), aps);
      load_formula(a.vars);
      EvalContext ctx;
      ctx.aps = aps;
      ctx.assignment = a;
      if (contains_quantifier(psi_)) {
        if (!have_k_) throw UsageError("quantified formulas need --kripke to enumerate lassos");
        ctx.candidates = lasso_enumerate(k_, stem, loop);
      }
      Rational v = eval_quantified(psi_, ctx);
      if (json()) {
        nlohmann::json j{{"schema", 1}, {"value", v.str()}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << v.str() << "\n";
      }
      return 0;
    }
    load_formula();
    load_kripke();
    BoundedValue b = eval_bounded(psi_, k_, stem, loop);
    if (json()) {
      nlohmann::json j{{"schema", 1},
                       {"value", b.value.str()},
                       {"bound", bound_class_name(b.bound)},
                       {"universe_size", b.universe_size},
                       {"bounds", {stem, loop}}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << b.value.str() << " (" << bound_class_name(b.bound) << ", " << b.universe_size << " lassos)\n";
    }
    return 0;
  }

  ValueSet weights() {
    if (!c_.kripke_path.empty()) {
      load_kripke();
      return ValueSet(k_.weights);
    }
    return ValueSet{0, 1};
  }

  int values() {
    ValueSet w = weights();
    FormulaStats st = analyze(psi_);
    if (st.is_prop) {
      ValueSet v = value_overapprox(psi_, w);
      if (json()) {
        nlohmann::json j{{"schema", 1}, {"values", nlohmann::json::array()}};
        for (const auto& x : v) j["values"].push_back(x.str());
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << v.str() << "\n";
      }
      return 0;
    }
    Rational cut = c_.threshold.empty() ? Rational(1, 16) : parse_rational("--threshold", c_.threshold);
    if (cut <= Rational(0)) throw UsageError("--threshold must be positive for discounted value lattices");
    DiscountedLattice l{st.discount_depth, st.discount_seqs, w};
    ValueSet v = lattice_truncate(l, cut);
    if (json()) {
      nlohmann::json j{{"schema", 1}, {"above", cut.str()}, {"values", nlohmann::json::array()}};
      for (const auto& x : v) j["values"].push_back(x.str());
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "values >= " << cut.str() << ": " << v.str() << "\n";
    }
    return 0;
  }

  PredicateSpec predicate() {
    if (!c_.values_set.empty()) {
      std::vector<Rational> xs;
      std::stringstream s(c_.values_set);
      std::string item;
      while (std::getline(s, item, ',')) xs.push_back(parse_rational("--set", item));
      return PredicateSpec::in_set(ValueSet(xs));
    }
    Query q = query();
    return q.op == QueryOp::Ge ? PredicateSpec::ge(q.v) : PredicateSpec::le(q.v);
  }

  int translate() {
    Formula b = booleanize(psi_, predicate(), weights().values());
    if (json()) {
      nlohmann::json j{{"schema", 1}, {"formula", print(b)}, {"alternations", analyze(b).alternation_count}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << print(b) << "\n";
    }
    return 0;
  }

  int dump_nba() {
    FormulaStats st = analyze(psi_);
    Query q = query();
    ElimOptions eo{opts_.complement};
    Nba a;
    if (st.is_prop) {
      a = quantifier_elim_prop(psi_, k_, q.op == QueryOp::Ge ? PredicateSpec::lt(q.v) : PredicateSpec::gt(q.v), {}, eo);
    } else {
      a = quantifier_elim_temp(psi_, k_, q.op == QueryOp::Ge ? Cmp::Lt : Cmp::Gt, q.v, {}, eo);
    }
    std::cout << "# automaton for value " << (q.op == QueryOp::Ge ? "< " : "> ") << q.v.str() << "\n"
              << print_nba(a);
    return 0;
  }

  Config c_;
  CheckOptions opts_;
  Formula psi_;
  WeightedKripke k_;
  bool have_k_ = false;
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for quantitative hyperproperties over weighted Kripke structures"};
  app.require_subcommand(1);
  Config c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-k,--kripke", c.kripke_path, "weighted Kripke structure (.wks)");
    sub->add_option("-f,--formula", c.formula_path, "formula file (.hq)");
    sub->add_option("-t,--text", c.formula_text, "formula given inline");
    sub->add_option("--op", c.op, "query direction")->check(CLI::IsMember({"ge", "le"}));
    sub->add_option("--threshold", c.threshold, "threshold v, as n/d or a decimal");
    sub->add_option("--epsilon", c.epsilon, "approximation factor for temp-approx");
    sub->add_option("--bounds", c.bounds, "lasso bounds STEM,LOOP for eval (default 2,2)");
    sub->add_option("--output", c.output, "report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--state-cap", c.state_cap, "complementation state cap");
    sub->add_option("--low", c.low, "default low propositions for loweq/ratio/traceeq")->delimiter(',');
  };
  CLI::App* check = app.add_subcommand("check", "decide a threshold query");
  add_common(check);
  check
      ->add_option("--mode", c.mode, "procedure")
      ->check(CLI::IsMember({"auto", "prop", "prop-value", "temp-approx", "temp-pos", "temp-neg", "temp-af", "eval",
                             "translate", "values", "dump-nba"}));
  check->add_option("--lassos", c.lassos_path, "lasso assignment file for eval");
  check->add_option("--set", c.values_set, "value set for translate, comma separated");
  check->add_flag("--verify-unique", c.verify_unique, "prop-value: require exactly one candidate value");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a formula on lassos");
  add_common(eval);
  eval->add_option("--lassos", c.lassos_path, "lasso assignment file");
  CLI::App* translate = app.add_subcommand("translate", "Boolean HyperLTL formula for a value predicate");
  add_common(translate);
  translate->add_option("--set", c.values_set, "value set, comma separated (default from --op/--threshold)");
  CLI::App* values = app.add_subcommand("values", "print the candidate satisfaction values");
  add_common(values);
  CLI::App* dump = app.add_subcommand("dump-nba", "print the automaton that refutes the query");
  add_common(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  if (eval->parsed()) c.mode = "eval";
  if (translate->parsed()) c.mode = "translate";
  if (values->parsed()) c.mode = "values";
  if (dump->parsed()) c.mode = "dump-nba";

  try {
    return Runner(c).run();
  } catch (const StateCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const RationalOverflow& e) {
    std::cerr << "error: arithmetic overflow: " << e.what() << "\n";
    return kCap;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValueSynthesisError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
