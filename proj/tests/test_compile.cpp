#include "doctest.h"
#include "support.hpp"

#include "hyperqual/compile.hpp"
#include "hyperqual/oracle.hpp"

using namespace hyperqual;
using namespace hyperqual::testing;

namespace {

Rational value_of(const Formula& f, const WeightedKripke& k, const std::vector<std::string>& vars,
                  const std::vector<Lasso>& t) {
  EvalContext ctx;
  ctx.aps = k.aps;
  for (std::size_t i = 0; i < vars.size(); ++i) ctx.assignment.bind(vars[i], t[i]);
  return eval_qf(f, ctx);
}

} // namespace

TEST_CASE("compile_prop_qf agrees with the oracle on all small lassos") {
  Rng rng(11);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    std::vector<Rational> w = pick(rng, 2) ? std::vector<Rational>{0, 1} : std::vector<Rational>{0, Rational(1, 2), 1};
    WeightedKripke k = random_kripke(rng, 2, {"p"}, w);
    GenOptions o;
    o.vars = pick(rng, 2) ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    Formula f = random_formula(rng, o, 1 + pick(rng, 3));
    auto universe = lasso_enumerate(k, 2, 2);
    auto all = tuples(universe, static_cast<int>(o.vars.size()));
    ValueSet vs = value_overapprox(f, ValueSet(k.weights));
    for (const auto& c : vs) {
      Nba a = compile_prop_qf(f, k, o.vars, PredicateSpec::singleton(c));
      for (const auto& t : all) {
        bool in = value_of(f, k, o.vars, t) == c;
        INFO(print(f), " c=", c.str());
        CHECK(accepts(a, encode_assignment(t)) == in);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("compile_prop_qf examples") {
  WeightedKripke k = complete_boolean();
  Formula avg = f_func(FuncSymbol::make_oplus(Rational(1, 2)), {f_atom("p", "x"), f_atom("p", "y")});
  Nba a = compile_prop_qf(avg, k, {"x", "y"}, PredicateSpec::singleton(Rational(1, 2)));
  Letter one{Rational(1)}, zero{Rational(0)};
  auto pair = [&](const Letter& x, const Letter& y) { return encode_assignment({Lasso{{x}, {zero}}, Lasso{{y}, {zero}}}); };
  CHECK(accepts(a, pair(one, zero)));
  CHECK(accepts(a, pair(zero, one)));
  CHECK_FALSE(accepts(a, pair(one, one)));
  CHECK_FALSE(accepts(a, pair(zero, zero)));
}

TEST_CASE("compile_temp_qf is sound on lassos in both directions") {
  Rng rng(5);
  std::vector<Rational> thresholds{0, Rational(1, 8), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4), 1};
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    std::vector<Rational> w = pick(rng, 2) ? std::vector<Rational>{0, 1} : std::vector<Rational>{0, Rational(1, 2), 1};
    WeightedKripke k = random_kripke(rng, 2, {"p"}, w);
    GenOptions o;
    o.discounted = true;
    o.boolean_only = true;
    o.vars = pick(rng, 3) ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    Formula f = random_formula(rng, o, 1 + pick(rng, 3));
    auto all = tuples(lasso_enumerate(k, 2, 2), static_cast<int>(o.vars.size()));
    Rational v = thresholds[static_cast<std::size_t>(pick(rng, static_cast<int>(thresholds.size())))];
    for (Cmp cmp : {Cmp::Gt, Cmp::Lt}) {
      CompileInfo info;
      Nba a = compile_temp_qf(f, k, o.vars, cmp, v, {}, &info);
      TempCompileOptions copt;
      copt.complement = true;
      Nba c = compile_temp_qf(f, k, o.vars, cmp, v, copt);
      TempCompileOptions wide;
      wide.horizon_factor = 2;
      Nba a2 = compile_temp_qf(f, k, o.vars, cmp, v, wide);
      for (const auto& t : all) {
        Rational val = value_of(f, k, o.vars, t);
        bool in = cmp == Cmp::Gt ? val > v : val < v;
        Lasso enc = encode_assignment(t);
        INFO(print(f), (cmp == Cmp::Gt ? " > " : " < "), v.str(), " value ", val.str());
        CHECK(accepts(a, enc) == in);
        CHECK(accepts(c, enc) == !in);
        CHECK(accepts(a2, enc) == in);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("compile_temp_qf discounted eventually") {
  WeightedKripke k = complete_boolean();
  Formula f = f_deventually(DiscountSeq::exp(Rational(1, 2)), f_atom("p", "x"));
  CompileInfo info;
  Nba a = compile_temp_qf(f, k, {"x"}, Cmp::Gt, Rational(1, 4), {}, &info);
  CHECK(info.horizon == 2);
  Letter one{Rational(1)}, zero{Rational(0)};
  CHECK(accepts(a, Lasso{{zero}, {one}}));
  CHECK_FALSE(accepts(a, Lasso{{zero, zero}, {one}}));
  CHECK_FALSE(accepts(a, Lasso{{}, {zero}}));
}

TEST_CASE("G F_eta p or F G not p exceeds zero on every lasso") {
  WeightedKripke k = complete_boolean();
  Formula f = f_or(f_globally(f_deventually(DiscountSeq::exp(Rational(1, 2)), f_atom("p", "x"))),
                   f_eventually(f_globally(f_not(f_atom("p", "x")))));
  Nba a = compile_temp_qf(f, k, {"x"}, Cmp::Gt, Rational(0));
  for (const auto& l : lasso_enumerate(k, 3, 3)) CHECK(accepts(a, l));
  TempCompileOptions copt;
  copt.complement = true;
  CHECK(is_empty(compile_temp_qf(f, k, {"x"}, Cmp::Gt, Rational(0), copt)));
}
