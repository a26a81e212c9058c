#include "doctest.h"
#include "support.hpp"

#include "hyperqual/checker.hpp"
#include "hyperqual/oracle.hpp"

using namespace hyperqual;
using namespace hyperqual::testing;

namespace {

Formula half_bound() {
  return f_exists("x", f_forall("y", f_func(FuncSymbol::make_oplus(Rational(1, 2)), {f_not(f_atom("p", "x")), f_atom("p", "y")})));
}

Formula random_closed(Rng& rng, int depth, int atoms, bool discounted = false) {
  GenOptions o;
  o.vars = depth == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
  o.discounted = discounted;
  o.boolean_only = discounted;
  Formula f = random_formula(rng, o, atoms);
  for (int i = depth; i-- > 0;) f = pick(rng, 2) ? f_exists(o.vars[static_cast<std::size_t>(i)], f) : f_forall(o.vars[static_cast<std::size_t>(i)], f);
  return f;
}

} // namespace

TEST_CASE("value of the half-bound formula") {
  WeightedKripke k = complete_boolean();
  CheckOptions opts;
  opts.verify_unique = true;
  CHECK(mc_prop_value(half_bound(), k, opts) == Rational(1, 2));
  CHECK(mc_prop(half_bound(), k, {QueryOp::Ge, Rational(1, 2)}).answer == Answer::Holds);
  CHECK(mc_prop(half_bound(), k, {QueryOp::Ge, Rational(3, 4)}).answer == Answer::Fails);
  CHECK(mc_prop(f_true(), k, {QueryOp::Ge, Rational(1)}).answer == Answer::Holds);
}

TEST_CASE("mc_prop_value against the bounded oracle") {
  Rng rng(3);
  int pinned = 0;
  for (int round = 0; round < 400; ++round) {
    std::vector<Rational> w = pick(rng, 2) ? std::vector<Rational>{0, 1} : std::vector<Rational>{0, Rational(1, 2), 1};
    WeightedKripke k = random_kripke(rng, 2, {"p"}, w);
    Formula f = random_closed(rng, 1 + pick(rng, 2), 1 + pick(rng, 3));
    CheckOptions opts;
    opts.verify_unique = true;
    Rational v = mc_prop_value(f, k, opts);
    int s = static_cast<int>(k.num_states());
    BoundedValue b = eval_bounded(f, k, s, s * s);
    INFO(print(f), " value ", v.str(), " oracle ", b.value.str());
    if (b.bound == BoundClass::Lower) CHECK(b.value <= v);
    if (b.bound == BoundClass::Upper) CHECK(b.value >= v);
    if (b.value == v) ++pinned;
  }
  MESSAGE("pinned ", pinned, " of 400");
}

TEST_CASE("approximate checking on the no-lasso example") {
  WeightedKripke k = complete_boolean();
  Formula psi = f_forall("x", no_lasso_phi("x"));
  Verdict v = mc_temp_approx(psi, k, {QueryOp::Ge, Rational(1, 2)}, Rational(1, 4));
  CHECK(v.answer == Answer::Fails);
  CHECK(mc_temp_approx(f_true(), k, {QueryOp::Ge, Rational(3, 4)}, Rational(1, 8)).answer == Answer::Holds);
}

TEST_CASE("discounted eventually at depth two") {
  WeightedKripke k = depth_structure(2);
  Formula psi = f_exists("x", f_deventually(DiscountSeq::exp(Rational(1, 2)), f_atom("p", "x")));
  CHECK(eval_bounded(psi, k, 3, 3).value == Rational(1, 4));
  CHECK(mc_temp_approx(psi, k, {QueryOp::Ge, Rational(1, 8)}, Rational(1, 16)).answer == Answer::Holds);
  CHECK(mc_temp_af(psi, k, {QueryOp::Le, Rational(1, 4)}).answer == Answer::Holds);
  Verdict f = mc_temp_af(psi, k, {QueryOp::Le, Rational(1, 8)});
  CHECK(f.answer == Answer::Fails);
  REQUIRE(f.witness);
  CHECK(f.witness_vars == std::vector<std::string>{"x"});
  CHECK(is_empty(quantifier_elim_temp(psi, k, Cmp::Gt, Rational(1, 4))));
  CHECK_FALSE(is_empty(quantifier_elim_temp(psi, k, Cmp::Gt, Rational(1, 8))));
  CHECK_THROWS_AS(mc_temp_af(psi, k, {QueryOp::Ge, Rational(1, 8)}), UnsupportedQuery);
  CHECK(mc_temp_af(f_forall("x", f_true()), k, {QueryOp::Ge, Rational(1)}).answer == Answer::Holds);
}

TEST_CASE("fragment checking on divergence structures") {
  DiscountSeq eta = DiscountSeq::exp(Rational(1, 2));
  for (int d = 1; d <= 3; ++d) {
    WeightedKripke k = divergence_structure(d);
    Rational val = eta.at(static_cast<std::size_t>(d));
    CHECK(eval_bounded(psi_div(eta), k, d + 2, d + 2).value == val);
    DiscountedLattice l{1, {eta}, ValueSet{0, 1}};
    CHECK(mc_temp_fragment(psi_div(eta), k, {QueryOp::Ge, val}).answer == Answer::Holds);
    CHECK(mc_temp_fragment(psi_div(eta), k, {QueryOp::Ge, nearest_above(l, val)}).answer == Answer::Fails);
    CHECK(mc_temp_fragment(psi_div(eta), k, {QueryOp::Le, val}).answer == Answer::Holds);
    CHECK(mc_temp_fragment(psi_div(eta), k, {QueryOp::Le, nearest_below(l, val)}).answer == Answer::Fails);
    for (const Rational& v : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(7, 8), Rational(15, 16)}) {
      Verdict od = mc_temp_fragment(phi_od_temp(eta), k, {QueryOp::Ge, v});
      Verdict div = mc_temp_fragment(psi_div(eta), k, {QueryOp::Le, Rational(1) - v});
      CHECK(od.method == Method::TempNegative);
      CHECK(od.answer == div.answer);
      CHECK((od.answer == Answer::Holds) == (Rational(1) - val >= v));
    }
  }
}

TEST_CASE("temporal checkers agree with each other and with bounded lassos") {
  Rng rng(17);
  std::vector<Rational> thresholds{Rational(1, 8), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4)};
  int af_checks = 0, fragment_checks = 0;
  for (int round = 0; round < 120; ++round) {
    WeightedKripke k = random_kripke(rng, 2, {"p"}, {0, Rational(1, 2), 1});
    Formula psi = random_closed(rng, 1 + pick(rng, 2), 1 + pick(rng, 2), true);
    Rational v = thresholds[static_cast<std::size_t>(pick(rng, static_cast<int>(thresholds.size())))];
    Rational eps(1, 8);
    INFO(print(psi), " v=", v.str(), "\n", print_kripke(k));
    FormulaStats st = analyze(psi);

    bool lt = !is_empty(quantifier_elim_temp(psi, k, Cmp::Lt, v));
    bool gt_dual = !is_empty(quantifier_elim_temp(negate_dual(psi), k, Cmp::Gt, Rational(1) - v));
    CHECK(lt == gt_dual);

    Verdict ge = mc_temp_approx(psi, k, {QueryOp::Ge, v}, eps);
    Verdict le = mc_temp_approx(psi, k, {QueryOp::Le, v}, eps);
    BoundedValue b = eval_bounded(psi, k, 2, 2);
    if (b.bound == BoundClass::Lower && b.value >= v + eps) CHECK(ge.answer == Answer::Holds);
    if (b.bound == BoundClass::Upper && b.value <= v - eps) CHECK(ge.answer == Answer::Fails);
    if (b.bound == BoundClass::Lower && b.value > v) CHECK(le.answer != Answer::Holds);
    if (b.bound == BoundClass::Upper && b.value < v) CHECK(le.answer != Answer::Fails);

    if (st.temp_pos || st.temp_neg) {
      Verdict fge = mc_temp_fragment(psi, k, {QueryOp::Ge, v});
      if (ge.answer != Answer::UnknownWithinEpsilon) CHECK(fge.answer == ge.answer);
      if (b.bound == BoundClass::Lower && b.value >= v) CHECK(fge.answer == Answer::Holds);
      if (b.bound == BoundClass::Upper && b.value < v) CHECK(fge.answer == Answer::Fails);
      ++fragment_checks;
    }
    if (st.exists_only && !st.forall_only) {
      Verdict af = mc_temp_af(psi, k, {QueryOp::Le, v});
      if (le.answer != Answer::UnknownWithinEpsilon) CHECK(af.answer == le.answer);
      if (b.value > v) CHECK(af.answer == Answer::Fails);
      if (af.answer == Answer::Fails) {
        REQUIRE(af.witness);
        Prefix p = split_prefix(psi);
        EvalContext ctx;
        ctx.aps = k.aps;
        for (std::size_t i = 0; i < af.witness_vars.size(); ++i)
          ctx.assignment.bind(af.witness_vars[i], project_component(af.witness->lasso, static_cast<int>(i), 1));
        CHECK(eval_qf(p.matrix, ctx) > v);
      }
      ++af_checks;
    }
  }
  MESSAGE("fragment checks ", fragment_checks, ", alternation-free checks ", af_checks);
}
