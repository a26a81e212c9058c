#pragma once

#include "hyperqual/formula.hpp"
#include "hyperqual/kripke.hpp"

#include <string>
#include <vector>

namespace hyperqual {

/// Evaluation context: lasso bindings, the trace universe used by
/// quantifiers, and the suffix position at which the formula is read.
struct EvalContext {
  std::vector<std::string> aps; // proposition order of the lasso letters
  LassoAssignment assignment;
  std::vector<Lasso> candidates;
  std::size_t offset = 0;
};

/// Exact value of a quantifier-free formula on a lasso assignment.
Rational eval_qf(const Formula& f, const EvalContext& ctx);

/// Exact value of a formula whose quantifiers range over ctx.candidates.
/// Quantifiers may occur under Boolean functions but not under temporal
/// operators.
Rational eval_quantified(const Formula& f, const EvalContext& ctx);

/// Convenience form: closed formula over a finite universe of lassos.
Rational eval_quantified(const Formula& f, const std::vector<std::string>& aps,
                         const std::vector<Lasso>& universe);

enum class BoundClass { Exact, Lower, Upper, Estimate };
std::string bound_class_name(BoundClass c);

struct BoundedValue {
  Rational value;
  BoundClass bound = BoundClass::Estimate;
  std::size_t universe_size = 0;
};

/// Value over the lassos of k within the given size bounds. For
/// existential prefixes the value is a lower bound of the value over all
/// traces, for universal prefixes an upper bound.
BoundedValue eval_bounded(const Formula& f, const WeightedKripke& k, int max_stem, int max_loop);

} // namespace hyperqual
