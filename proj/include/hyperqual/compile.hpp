#pragma once

#include "hyperqual/automata.hpp"
#include "hyperqual/formula.hpp"
#include "hyperqual/values.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hyperqual {

/// A decidable predicate on satisfaction values.
struct PredicateSpec {
  enum class Kind { InSet, Lt, Gt, Ge, Le, Singleton, Interval };
  Kind kind = Kind::InSet;
  ValueSet set;    // InSet
  Rational a{0};   // bound (Lt, Gt, Ge, Le, Singleton) or lower interval end
  Rational b{0};   // upper interval end
  bool a_closed = true;
  bool b_closed = true;

  static PredicateSpec in_set(ValueSet s);
  static PredicateSpec lt(Rational v);
  static PredicateSpec gt(Rational v);
  static PredicateSpec ge(Rational v);
  static PredicateSpec le(Rational v);
  static PredicateSpec singleton(Rational v);
  static PredicateSpec interval(Rational lo, bool lo_closed, Rational hi, bool hi_closed);

  bool contains(const Rational& x) const;
  /// The members of a finite set that satisfy the predicate.
  ValueSet filter(const ValueSet& v) const;
  std::string str() const;
};

/// Strict thresholds accepted by the temporal compilers.
enum class Cmp { Gt, Lt };

struct CompileInfo {
  std::size_t states = 0;
  /// Largest unfolding depth used for a discounted operator.
  std::size_t horizon = 0;
};

/// Automaton over the n-fold self product of k (variables bound to copies in
/// the order of `vars`) accepting exactly the traces t of K^n with
/// value(phi, t) in P.
Nba compile_prop_qf(const Formula& phi, const WeightedKripke& k, const std::vector<std::string>& vars,
                    const PredicateSpec& p, CompileInfo* info = nullptr);

struct TempCompileOptions {
  /// Accept the complement (within K^n) of the threshold language.
  bool complement = false;
  /// Multiplies every discount unfolding depth; used to check that the
  /// cutoff does not change the language.
  std::size_t horizon_factor = 1;
};

/// Threshold automaton for a quantifier-free temporal formula: every trace
/// with value cmp v is accepted, and every accepted lasso has value cmp v.
Nba compile_temp_qf(const Formula& phi, const WeightedKripke& k, const std::vector<std::string>& vars, Cmp cmp,
                    const Rational& v, const TempCompileOptions& opts = {}, CompileInfo* info = nullptr);

struct ElimOptions {
  ComplementOptions complement;
};

/// Automaton over K^k, k = |free_vars|, accepting t_Pi iff the value of psi
/// under Pi over the traces of K lies in P.
Nba quantifier_elim_prop(const Formula& psi, const WeightedKripke& k, const PredicateSpec& p,
                         const std::vector<std::string>& free_vars = {}, const ElimOptions& opts = {});

/// Shares intermediate automata between several predicates on the same formula.
class PropElimination {
public:
  PropElimination(const Formula& psi, const WeightedKripke& k, const std::vector<std::string>& free_vars = {},
                  const ElimOptions& opts = {});
  ~PropElimination();
  PropElimination(const PropElimination&) = delete;
  PropElimination& operator=(const PropElimination&) = delete;

  /// V_W of the matrix, the candidate values of psi.
  const ValueSet& values() const;
  Nba automaton(const PredicateSpec& p);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Threshold automaton for a temporal formula with quantifiers, with the
/// one-sided guarantee on lassos described for compile_temp_qf relaxed to
/// the non-strict comparison.
Nba quantifier_elim_temp(const Formula& psi, const WeightedKripke& k, Cmp cmp, const Rational& v,
                         const std::vector<std::string>& free_vars = {}, const ElimOptions& opts = {});

} // namespace hyperqual
