#pragma once

#include "hyperqual/formula.hpp"
#include "hyperqual/kripke.hpp"

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

namespace hyperqual::testing {

using Rng = std::mt19937;

inline int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }


inline WeightedKripke random_kripke(Rng& rng, int max_states, const std::vector<std::string>& aps,
                                    const std::vector<Rational>& weights) {
  WeightedKripke k;
  k.aps = aps;
  k.weights = weights;
  int n = 1 + pick(rng, max_states);
  for (int s = 0; s < n; ++s) {
    k.states.push_back("s" + std::to_string(s));
    std::vector<int> succ;
    for (int t = 0; t < n; ++t)
      if (pick(rng, 2)) succ.push_back(t);
    if (succ.empty()) succ.push_back(pick(rng, n));
    k.succ.push_back(succ);
    Letter l;
    for (std::size_t a = 0; a < aps.size(); ++a) l.push_back(weights[static_cast<std::size_t>(pick(rng, static_cast<int>(weights.size())))]);
    k.labels.push_back(l);
  }
  for (int s = 0; s < n; ++s)
    if (s == 0 || pick(rng, 3) == 0) k.initial.push_back(s);
  k.validate();
  return k;
}

/// The complete two-state Boolean structure over {p}: p=1 in s0, p=0 in s1.
inline WeightedKripke complete_boolean() {
  return parse_kripke("weights: 0 1\nstates: s0 s1\ninit: s0 s1\ntrans: s0 s1 -> s0 s1\n"
                      "labels:\ns0 p=1\ns1 p=0\n");
}

struct GenOptions {
  std::vector<std::string> vars{"x"};
  std::vector<std::string> props{"p"};
  bool temporal = true;
  bool weighted_functions = true;
  bool discounted = false;
  /// Only Boolean connectives (for LTL-threshold compilation).
  bool boolean_only = false;
  bool constants = true;
};

inline Formula random_formula(Rng& rng, const GenOptions& o, int atoms) {
  auto atom = [&] {
    return f_atom(o.props[static_cast<std::size_t>(pick(rng, static_cast<int>(o.props.size())))],
                  o.vars[static_cast<std::size_t>(pick(rng, static_cast<int>(o.vars.size())))]);
  };
  if (atoms <= 1) {
    int c = pick(rng, 10);
    if (c == 0 && o.constants) return pick(rng, 2) ? f_true() : f_false();
    Formula a = atom();
    if (c < 3) return f_not(a);
    if (o.temporal && c == 3) return f_next(a);
    if (o.temporal && c == 4) return pick(rng, 2) ? f_eventually(a) : f_globally(a);
    if (o.discounted && c == 5)
      return pick(rng, 2) ? f_deventually(DiscountSeq::exp(Rational(1, 2)), a)
                          : f_dglobally(DiscountSeq::harmonic(), a);
    return a;
  }
  int left = 1 + pick(rng, atoms - 1);
  Formula a = random_formula(rng, o, left);
  Formula b = random_formula(rng, o, atoms - left);
  std::vector<int> kinds{0, 1, 2, 3};
  if (o.temporal) kinds.insert(kinds.end(), {4, 5});
  if (o.discounted) kinds.insert(kinds.end(), {6, 7});
  if (o.weighted_functions && !o.boolean_only) kinds.insert(kinds.end(), {8, 9});
  switch (kinds[static_cast<std::size_t>(pick(rng, static_cast<int>(kinds.size())))]) {
  case 0:
    return f_or(a, b);
  case 1:
    return f_and(a, b);
  case 2:
    return f_implies(a, b);
  case 3:
    return pick(rng, 2) ? f_iff(a, b) : f_not(f_or(a, b));
  case 4:
    return f_until(a, b);
  case 5:
    return f_release(a, b);
  case 6:
    return f_duntil(DiscountSeq::exp(Rational(1, 2)), a, b);
  case 7:
    return f_drelease(pick(rng, 2) ? DiscountSeq::harmonic() : DiscountSeq::exp(Rational(2, 3)), a, b);
  case 8:
    return f_func(FuncSymbol::make_oplus(Rational(1, 2)), {a, b});
  default:
    return pick(rng, 2) ? f_func(FuncSymbol::make_agree(), {a, b})
                        : f_func(FuncSymbol::make_scale(Rational(1, 2)), {f_or(a, b)});
  }
}

/// All tuples of `n` lassos from `u`, encoded.
inline std::vector<std::vector<Lasso>> tuples(const std::vector<Lasso>& u, int n) {
  std::vector<std::vector<Lasso>> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Lasso>> next;
    for (const auto& t : out)
      for (const auto& l : u) {
        auto t2 = t;
        t2.push_back(l);
        next.push_back(t2);
      }
    out = std::move(next);
  }
  return out;
}

} // namespace hyperqual::testing

namespace hyperqual::testing {

/// Two low-equivalent initial traces whose first low difference is at step d.
inline WeightedKripke divergence_structure(int d) {
  std::string states = "s0", trans, labels = "s0 l=0\n";
  std::string prev = "s0";
  for (int i = 1; i < d; ++i) {
    std::string s = "u" + std::to_string(i);
    states += " " + s;
    trans += prev + " -> " + s + "\n";
    labels += s + " l=0\n";
    prev = s;
  }
  states += " hi lo";
  trans += prev + " -> hi lo\nhi -> hi\nlo -> lo\n";
  labels += "hi l=1\nlo l=0\n";
  return parse_kripke("weights: 0 1\nstates: " + states + "\ninit: s0\ntrans:\n" + trans + "labels:\n" + labels);
}

/// Structure where p first holds at depth d on every path.
inline WeightedKripke depth_structure(int d) {
  std::string states, trans, labels;
  for (int i = 0; i < d; ++i) {
    states += "s" + std::to_string(i) + " ";
    trans += "s" + std::to_string(i) + " -> s" + std::to_string(i + 1) + "\n";
    labels += "s" + std::to_string(i) + " p=0\n";
  }
  states += "s" + std::to_string(d);
  trans += "s" + std::to_string(d) + " -> s" + std::to_string(d) + "\n";
  labels += "s" + std::to_string(d) + " p=1\n";
  return parse_kripke("weights: 0 1\nstates: " + states + "\ninit: s0\ntrans:\n" + trans + "labels:\n" + labels);
}

inline Formula psi_div(const DiscountSeq& eta) {
  Formula low = macro_loweq({"l"}, "x", "y");
  return f_exists("x", f_exists("y", f_and(low, f_deventually(eta, f_not(low)))));
}

inline Formula phi_od_temp(const DiscountSeq& eta) {
  Formula low = macro_loweq({"l"}, "x", "y");
  return f_forall("x", f_forall("y", f_implies(low, f_dglobally(eta, low))));
}

inline Formula no_lasso_phi(const std::string& var) {
  Formula p = f_atom("p", var);
  return f_or(f_globally(f_deventually(DiscountSeq::exp(Rational(1, 2)), p)), f_eventually(f_globally(f_not(p))));
}

} // namespace hyperqual::testing
