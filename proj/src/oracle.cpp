#include "hyperqual/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hyperqual {

namespace {

class QfEvaluator {
public:
  explicit QfEvaluator(const EvalContext& ctx) : ctx_(ctx) {
    for (const auto& l : ctx.assignment.lassos) {
      if (l.loop.empty()) throw std::invalid_argument("lasso with empty loop");
      stem_ = std::max(stem_, l.stem.size());
      loop_ = std::lcm(loop_, l.loop.size());
    }
    n_ = stem_ + loop_;
  }

  Rational at_offset(const Formula& f) {
    std::size_t pos = ctx_.offset;
    if (pos >= n_) pos = stem_ + (pos - stem_) % loop_;
    return values(f)[pos];
  }

private:
  std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : stem_; }

  const std::vector<Rational>& values(const Formula& f) {
    if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
    std::vector<Rational> out(n_);
    switch (f->kind) {
    case NodeKind::True:
      out.assign(n_, Rational(1));
      break;
    case NodeKind::False:
      out.assign(n_, Rational(0));
      break;
    case NodeKind::Atom: {
      int v = ctx_.assignment.find(f->var);
      if (v < 0) throw std::invalid_argument("unbound trace variable " + f->var);
      auto ap = std::find(ctx_.aps.begin(), ctx_.aps.end(), f->prop);
      if (ap == ctx_.aps.end()) throw std::invalid_argument("unknown proposition " + f->prop);
      std::size_t a = static_cast<std::size_t>(ap - ctx_.aps.begin());
      const Lasso& l = ctx_.assignment.lassos[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < n_; ++i) out[i] = l.at(i).at(a);
      break;
    }
    case NodeKind::Func: {
      std::vector<const std::vector<Rational>*> args;
      for (const auto& a : f->args) args.push_back(&values(a));
      std::vector<Rational> xs(args.size());
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < args.size(); ++j) xs[j] = (*args[j])[i];
        out[i] = f->func.apply(xs);
      }
      break;
    }
    case NodeKind::Next: {
      const auto& a = values(f->args[0]);
      for (std::size_t i = 0; i < n_; ++i) out[i] = a[succ(i)];
      break;
    }
    case NodeKind::Until:
    case NodeKind::Release: {
      const auto& a = values(f->args[0]);
      const auto& b = values(f->args[1]);
      bool until = f->kind == NodeKind::Until;
      out = b;
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = n_; i-- > 0;) {
          Rational x = until ? max(b[i], min(a[i], out[succ(i)])) : min(b[i], max(a[i], out[succ(i)]));
          if (x != out[i]) {
            out[i] = x;
            changed = true;
          }
        }
      }
      break;
    }
    case NodeKind::DUntil:
    case NodeKind::DRelease: {
      std::vector<Rational> a = values(f->args[0]);
      std::vector<Rational> b = values(f->args[1]);
      bool until = f->kind == NodeKind::DUntil;
      if (!until) {
        for (auto& x : a) x = Rational(1) - x;
        for (auto& x : b) x = Rational(1) - x;
      }
      for (std::size_t p = 0; p < n_; ++p) {
        Rational d = discounted_until(f->eta, a, b, p);
        out[p] = until ? d : Rational(1) - d;
      }
      break;
    }
    case NodeKind::Exists:
    case NodeKind::Forall:
      throw std::invalid_argument("quantifier inside a quantifier-free evaluation");
    }
    return memo_.emplace(f.get(), std::move(out)).first->second;
  }

  // sup_i min(eta_i * b[i], min_{j<i} eta_j * a[j]) read from position p.
  Rational discounted_until(const DiscountSeq& eta, const std::vector<Rational>& a,
                            const std::vector<Rational>& b, std::size_t p) const {
    Rational best(0), prefix(1);
    std::size_t pos = p;
    for (std::size_t i = 0;; ++i) {
      Rational e = eta.at(i);
      if (e <= best || prefix <= best) break;
      best = max(best, min(e * b[pos], prefix));
      prefix = min(prefix, e * a[pos]);
      if (best.is_zero() && i >= n_) break;
      pos = succ(pos);
    }
    return best;
  }

  const EvalContext& ctx_;
  std::size_t stem_ = 0, loop_ = 1, n_ = 1;
  std::map<const Node*, std::vector<Rational>> memo_;
};

Rational eval_general(const Formula& f, EvalContext& ctx) {
  if (!contains_quantifier(f)) return eval_qf(f, ctx);
  switch (f->kind) {
  case NodeKind::Exists:
  case NodeKind::Forall: {
    if (ctx.candidates.empty()) throw std::invalid_argument("empty trace universe");
    bool ex = f->kind == NodeKind::Exists;
    Rational best = ex ? Rational(0) : Rational(1);
    for (const auto& t : ctx.candidates) {
      ctx.assignment.bind(f->var, t);
      Rational v = eval_general(f->args[0], ctx);
      ctx.assignment.unbind();
      best = ex ? max(best, v) : min(best, v);
      if (ex ? best.is_one() : best.is_zero()) break;
    }
    return best;
  }
  case NodeKind::Func: {
    std::vector<Rational> xs;
    for (const auto& a : f->args) xs.push_back(eval_general(a, ctx));
    return f->func.apply(xs);
  }
  default:
    throw std::invalid_argument("quantifier below a temporal operator");
  }
}

void collect_quantifiers(const Formula& f, bool& ex, bool& all) {
  if (f->kind == NodeKind::Exists) ex = true;
  if (f->kind == NodeKind::Forall) all = true;
  for (const auto& a : f->args) collect_quantifiers(a, ex, all);
}

} // namespace

Rational eval_qf(const Formula& f, const EvalContext& ctx) {
  QfEvaluator ev(ctx);
  return ev.at_offset(f);
}

Rational eval_quantified(const Formula& f, const EvalContext& ctx) {
  EvalContext c = ctx;
  return eval_general(f, c);
}

Rational eval_quantified(const Formula& f, const std::vector<std::string>& aps,
                         const std::vector<Lasso>& universe) {
  if (universe.empty()) throw std::invalid_argument("empty trace universe");
  EvalContext ctx;
  ctx.aps = aps;
  ctx.candidates = universe;
  return eval_general(f, ctx);
}

std::string bound_class_name(BoundClass c) {
  switch (c) {
  case BoundClass::Exact:
    return "exact";
  case BoundClass::Lower:
    return "lower";
  case BoundClass::Upper:
    return "upper";
  case BoundClass::Estimate:
    return "estimate";
  }
  return "estimate";
}

BoundedValue eval_bounded(const Formula& f, const WeightedKripke& k, int max_stem, int max_loop) {
  auto universe = lasso_enumerate(k, max_stem, max_loop);
  BoundedValue out;
  out.universe_size = universe.size();
  out.value = eval_quantified(f, k.aps, universe);
  bool ex = false, all = false;
  collect_quantifiers(f, ex, all);
  if (!ex && !all) out.bound = BoundClass::Exact;
  else if (ex && !all) out.bound = BoundClass::Lower;
  else if (all && !ex) out.bound = BoundClass::Upper;
  else out.bound = BoundClass::Estimate;
  return out;
}

} // namespace hyperqual
