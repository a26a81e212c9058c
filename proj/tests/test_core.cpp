#include "doctest.h"
#include "support.hpp"

#include "hyperqual/automata.hpp"
#include "hyperqual/oracle.hpp"
#include "hyperqual/values.hpp"

using namespace hyperqual;
using namespace hyperqual::testing;

namespace {

Rational qf_value(const Formula& f, const std::vector<std::string>& aps, const std::vector<std::string>& vars,
                  const std::vector<Lasso>& t) {
  EvalContext ctx;
  ctx.aps = aps;
  for (std::size_t i = 0; i < vars.size(); ++i) ctx.assignment.bind(vars[i], t[i]);
  return eval_qf(f, ctx);
}

Lasso word(std::initializer_list<int> stem, std::initializer_list<int> loop) {
  Lasso l;
  for (int x : stem) l.stem.push_back({Rational(x)});
  for (int x : loop) l.loop.push_back({Rational(x)});
  return l;
}

} // namespace

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("3/6").str() == "1/2");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational::parse("1/0"));
}

TEST_CASE("parser and printer round trip") {
  Rng rng(41);
  for (int round = 0; round < 300; ++round) {
    GenOptions o;
    o.vars = {"x", "y"};
    o.props = {"p", "q"};
    o.discounted = pick(rng, 2);
    Formula f = random_formula(rng, o, 1 + pick(rng, 5));
    f = pick(rng, 2) ? f_forall("y", f) : f_exists("y", f);
    f = pick(rng, 2) ? f_forall("x", f) : f_exists("x", f);
    std::string text = print(f);
    INFO(text);
    Formula g = parse_formula(text);
    CHECK(print(g) == text);
  }
}

TEST_CASE("parser examples and errors") {
  Formula f = parse_formula("exists x. forall y. oplus[1/2](p@x, p@y)");
  CHECK(split_prefix(f).quantifiers.size() == 2);
  Formula g = parse_formula("forall x. forall y. loweq(x, y) -> G[exp(1/2)] loweq(x, y)");
  CHECK(analyze(g).temp_neg);
  CHECK(analyze(g).discount_depth == 1);
  Formula h = parse_formula("low h1, h2;\nexists x. exists y. ratio(x, y)");
  CHECK(propositions(h) == std::set<std::string>{"h1", "h2"});

  auto error_at = [](const std::string& text) -> std::pair<int, int> {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return {e.line, e.column};
    }
    return {0, 0};
  };
  CHECK(error_at("exists x. p@y") == std::pair<int, int>{1, 13});
  CHECK(error_at("exists x.\n  p@x & (forall y. p@y)") == std::pair<int, int>{2, 10});
  CHECK(error_at("exists x. oplus[1/2,1/4](p@x, p@x)").first == 1);
  CHECK(error_at("exists x. F[exp(2)] p@x").first == 1);
  CHECK(error_at("exists x. exists x. p@x").first == 1);
  CHECK(error_at("exists x. p@x $").first == 1);
}

TEST_CASE("formula analysis") {
  Formula pos = psi_div(DiscountSeq::exp(Rational(1, 2)));
  FormulaStats s = analyze(pos);
  CHECK(s.temp_pos);
  CHECK(s.exists_only);
  CHECK(s.quantifier_depth == 2);
  CHECK(s.alternation_count == 0);
  CHECK(analyze(parse_formula("exists x. forall y. oplus[1/2](p@x, p@y)")).fragment == Fragment::PROP);
  CHECK(analyze(parse_formula("exists x. forall y. p@x U p@y")).is_prop);
  ParseOptions free;
  free.free_vars = {"x"};
  CHECK(is_boolean_ltl(parse_formula("G (p@x -> F p@x)", free)));
  CHECK_FALSE(is_boolean_ltl(parse_formula("F[harmonic] p@x", free)));
  CHECK_THROWS(split_prefix(f_and(f_exists("x", f_atom("p", "x")), f_true())));
}

TEST_CASE("negate_dual is the semantic negation") {
  Rng rng(43);
  for (int round = 0; round < 100; ++round) {
    WeightedKripke k = random_kripke(rng, 2, {"p"}, {0, Rational(1, 2), 1});
    GenOptions o;
    o.vars = {"x", "y"};
    o.discounted = true;
    Formula f = random_formula(rng, o, 1 + pick(rng, 3));
    f = pick(rng, 2) ? f_forall("y", f) : f_exists("y", f);
    f = pick(rng, 2) ? f_forall("x", f) : f_exists("x", f);
    auto u = lasso_enumerate(k, 1, 2);
    INFO(print(f));
    CHECK(eval_quantified(negate_dual(f), k.aps, u) == Rational(1) - eval_quantified(f, k.aps, u));
  }
}

TEST_CASE("kripke parsing and validation") {
  WeightedKripke k = parse_kripke("# two states\nweights: 0 1/2 1\nstates: a b\ninit: a\ntrans:\na -> a b\nb -> a\n"
                                  "labels:\na p=1/2\nb p=1 q=0\nprops: p q\n");
  CHECK(k.num_states() == 2);
  CHECK(k.aps == std::vector<std::string>{"p", "q"});
  CHECK(k.labels[0][0] == Rational(1, 2));
  CHECK(k.labels[0][1] == Rational(0));
  CHECK(parse_kripke(print_kripke(k)).labels == k.labels);
  CHECK_THROWS_AS(parse_kripke("weights: 0 1\nstates: a\ninit: a\ntrans:\nlabels:\na p=1\n"), std::invalid_argument);
  CHECK_THROWS(parse_kripke("weights: 0 1\nstates: a\ninit: b\ntrans:\na -> a\nlabels:\na p=1\n"));
  CHECK_THROWS(parse_kripke("weights: 0 1\nstates: a\ninit: a\ntrans:\na -> a\nlabels:\na p=1/2\n"));
}

TEST_CASE("lasso enumeration") {
  WeightedKripke k = complete_boolean();
  auto u = lasso_enumerate(k, 1, 1);
  // 0^w, 1^w, 01^w, 10^w; the stems 00 and 11 denote the same words as 0^w and 1^w.
  CHECK(u.size() == 4);
  for (const auto& l : lasso_enumerate(k, 2, 2)) CHECK(is_lasso_of(k, l));
  CHECK(word({1, 0}, {0}).normalized() == word({1}, {0}));
  CHECK(word({}, {1, 1}).same_word(word({1}, {1})));
  Lasso enc = encode_assignment({word({1}, {0}), word({}, {1, 0})});
  CHECK(project_component(enc, 1, 1).same_word(word({}, {1, 0})));
}

TEST_CASE("lasso assignment files") {
  std::vector<std::string> aps{"p"};
  LassoAssignment a = parse_assignment("# pair\nx: p=1 | p=0\ny: | p=1/2 p=1\nz: - | p=1\n", aps);
  REQUIRE(a.vars.size() == 3);
  CHECK(a.lassos[2].stem[0][0] == Rational(0));
  CHECK(a.lassos[0].stem.size() == 1);
  CHECK(a.lassos[0].loop[0][0] == Rational(0));
  CHECK(a.lassos[1].stem.empty());
  CHECK(a.lassos[1].loop.size() == 2);
  CHECK_THROWS(parse_assignment("x: p=1\n", aps));
}

TEST_CASE("oracle on discounted operators") {
  std::vector<std::string> aps{"p"};
  Formula fe = f_deventually(DiscountSeq::exp(Rational(1, 2)), f_atom("p", "x"));
  CHECK(qf_value(fe, aps, {"x"}, {word({0, 0}, {1})}) == Rational(1, 4));
  CHECK(qf_value(fe, aps, {"x"}, {word({}, {0})}) == Rational(0));
  Formula fh = f_deventually(DiscountSeq::harmonic(), f_atom("p", "x"));
  CHECK(qf_value(fh, aps, {"x"}, {word({0, 0}, {1})}) == Rational(1, 3));
  Formula gh = f_dglobally(DiscountSeq::exp(Rational(1, 2)), f_atom("p", "x"));
  CHECK(qf_value(gh, aps, {"x"}, {word({1, 0}, {1})}) == Rational(1, 2));
  CHECK(qf_value(gh, aps, {"x"}, {word({}, {1})}) == Rational(1));
  Formula u = f_until(f_atom("p", "x"), f_not(f_atom("p", "x")));
  CHECK(qf_value(u, aps, {"x"}, {word({}, {1})}) == Rational(0));
  CHECK(qf_value(f_next(f_atom("p", "x")), aps, {"x"}, {word({0}, {1})}) == Rational(1));
}

TEST_CASE("bounded oracle classification") {
  WeightedKripke k = complete_boolean();
  CHECK(eval_bounded(parse_formula("exists x. p@x"), k, 1, 1).bound == BoundClass::Lower);
  CHECK(eval_bounded(parse_formula("forall x. p@x"), k, 1, 1).bound == BoundClass::Upper);
  CHECK(eval_bounded(parse_formula("exists x. forall y. p@x"), k, 1, 1).bound == BoundClass::Estimate);
}

TEST_CASE("value sets") {
  ValueSet w{0, Rational(1, 2), 1};
  Formula avg = parse_formula("exists x. exists y. oplus[1/2](p@x, p@y)");
  CHECK(value_overapprox(avg, w) == ValueSet{0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1});
  CHECK(value_overapprox(parse_formula("exists x. p@x U !p@x"), ValueSet{0, 1}) == ValueSet{0, 1});
  CHECK(value_overapprox(parse_formula("exists x. scale[1/2](p@x)"), ValueSet{0, 1}) == ValueSet{0, Rational(1, 2)});
  CHECK_THROWS(value_overapprox(parse_formula("exists x. F[harmonic] p@x"), w));
}

TEST_CASE("discounted lattice") {
  DiscountSeq eta = DiscountSeq::exp(Rational(1, 2));
  DiscountedLattice l{1, {eta}, ValueSet{0, 1}};
  CHECK(nearest_above(l, Rational(1, 4)) == Rational(1, 2));
  CHECK(nearest_below(l, Rational(1, 4)) == Rational(1, 8));
  CHECK(nearest_below(l, Rational(1, 3)) == Rational(1, 4));
  CHECK(lattice_contains(l, Rational(1, 16)));
  CHECK_FALSE(lattice_contains(l, Rational(3, 4)));
  CHECK(lattice_truncate(l, Rational(1, 4)) == ValueSet{Rational(1, 4), Rational(1, 2), 1});
  DiscountedLattice h{1, {DiscountSeq::harmonic()}, ValueSet{0, Rational(1, 2), 1}};
  CHECK(lattice_contains(h, Rational(1, 6)));
  CHECK(nearest_above(h, Rational(1, 5)) == Rational(1, 4));
}

TEST_CASE("complementation methods agree") {
  Rng rng(47);
  Alphabet alpha{{"p"}, {0, 1}};
  for (int round = 0; round < 40; ++round) {
    Nba a;
    a.alphabet = alpha;
    int n = 1 + pick(rng, 3);
    for (int s = 0; s < n; ++s) a.add_state(pick(rng, 2) == 0);
    for (int s = 0; s < n; ++s)
      for (std::uint32_t l = 0; l < 2; ++l)
        for (int t = 0; t < n; ++t)
          if (pick(rng, 3) == 0) a.add_edge(s, l, t);
    a.initial.push_back(0);
    a.normalize();
    Nba rank = complement(a, {ComplementMethod::Rank, 200000});
    Nba det = complement(a, {ComplementMethod::Determinize, 200000});
    for (const auto& l : lasso_enumerate(complete_boolean(), 3, 3)) {
      bool in = accepts(a, l);
      CHECK(accepts(rank, l) != in);
      CHECK(accepts(det, l) != in);
    }
  }
}

TEST_CASE("state cap and projection") {
  Alphabet alpha{{"p", "q"}, {0, 1}};
  Nba a = universal_nba(alpha);
  CHECK(is_weak(a));
  CHECK(is_deterministic(a));
  CHECK(is_empty(complement(a)));
  Nba e = empty_nba(alpha);
  CHECK_FALSE(is_empty(complement(e)));
  Nba p = project_prefix(a, 1);
  CHECK(p.alphabet.props == std::vector<std::string>{"p"});
  CHECK_FALSE(is_empty(p));

  Nba big;
  big.alphabet = Alphabet{{"p"}, {0, 1}};
  for (int s = 0; s < 6; ++s) big.add_state(s % 2 == 0);
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t) big.add_edge(s, static_cast<std::uint32_t>((s + t) % 2), t);
  big.initial.push_back(0);
  big.normalize();
  CHECK_THROWS_AS(complement(big, {ComplementMethod::Rank, 10}), StateCapExceeded);
}

TEST_CASE("kripke automata") {
  WeightedKripke k = divergence_structure(2);
  Nba a = kripke_to_nba(k, 2);
  CHECK(a.alphabet.props.size() == 2);
  for (const auto& t : tuples(lasso_enumerate(k, 3, 1), 2)) CHECK(accepts(a, encode_assignment(t)));
  CHECK_FALSE(accepts(a, encode_assignment({word({}, {1}), word({}, {1})})));
}
