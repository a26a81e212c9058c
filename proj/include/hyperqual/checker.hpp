#pragma once

#include "hyperqual/automata.hpp"
#include "hyperqual/compile.hpp"
#include "hyperqual/formula.hpp"
#include "hyperqual/kripke.hpp"
#include "hyperqual/values.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperqual {

enum class Answer { Holds, Fails, UnknownWithinEpsilon };

enum class Method { PropExact, PropValue, TempApprox, TempPositive, TempNegative, TempAlternationFree };

std::string answer_name(Answer a);
std::string method_name(Method m);

enum class QueryOp { Ge, Le };

struct Query {
  QueryOp op = QueryOp::Ge;
  Rational v{0};
  std::string str() const;
};

struct Verdict {
  Answer answer = Answer::Holds;
  std::optional<Rational> value;
  /// Accepted lasso over the product of the traces in `witness_vars`.
  std::optional<AcceptedLasso> witness;
  std::vector<std::string> witness_vars;
  Method method = Method::PropExact;
  std::string note;
};

/// JSON report (schema version 1). Letters are written as maps from
/// proposition to "n/d".
std::string verdict_json(const Verdict& v, const WeightedKripke& k);
std::string verdict_text(const Verdict& v, const WeightedKripke& k);

/// The formula is outside the fragment or the query direction is not
/// supported by the requested procedure.
struct UnsupportedQuery : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CheckOptions {
  ComplementOptions complement;
  /// mc_prop_value: test every candidate value and require exactly one.
  bool verify_unique = false;
  /// Lasso bounds of the bounded oracle used by mc_temp_approx.
  int approx_stem = 2;
  int approx_loop = 2;
};

Verdict mc_prop(const Formula& psi, const WeightedKripke& k, const Query& q, const CheckOptions& opts = {});

struct ValueSynthesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational mc_prop_value(const Formula& psi, const WeightedKripke& k, const CheckOptions& opts = {});

Verdict mc_temp_approx(const Formula& psi, const WeightedKripke& k, const Query& q, const Rational& epsilon,
                       const CheckOptions& opts = {});

/// Exact check for the positive and negative fragments.
Verdict mc_temp_fragment(const Formula& psi, const WeightedKripke& k, const Query& q, const CheckOptions& opts = {});

/// Exact check for the alternation-free fragments: LE for existential
/// prefixes, GE for universal ones.
Verdict mc_temp_af(const Formula& psi, const WeightedKripke& k, const Query& q, const CheckOptions& opts = {});

/// Boolean HyperLTL formula that holds exactly when the value of psi lies in
/// p, for trace sets over the weights {0,1}.
Formula booleanize(const Formula& psi, const PredicateSpec& p, const std::vector<Rational>& weights = {0, 1});

/// The translation before prenexing: quantifiers may occur below And/Or.
Formula booleanize_closure(const Formula& psi, const PredicateSpec& p, const std::vector<Rational>& weights = {0, 1});

/// Prenex form of a formula whose quantifiers occur only below And/Or.
/// Bound variables are renamed apart.
Formula prenex_normalize(const Formula& psi);

/// Largest number of quantifier blocks on a root-to-leaf path, minus one.
int alternation_depth(const Formula& psi);

} // namespace hyperqual
