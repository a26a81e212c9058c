#include "hyperqual/compile.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace hyperqual {

PredicateSpec PredicateSpec::in_set(ValueSet s) {
  PredicateSpec p;
  p.kind = Kind::InSet;
  p.set = std::move(s);
  return p;
}

PredicateSpec PredicateSpec::lt(Rational v) {
  PredicateSpec p;
  p.kind = Kind::Lt;
  p.a = v;
  return p;
}

PredicateSpec PredicateSpec::gt(Rational v) {
  PredicateSpec p;
  p.kind = Kind::Gt;
  p.a = v;
  return p;
}

PredicateSpec PredicateSpec::ge(Rational v) {
  PredicateSpec p;
  p.kind = Kind::Ge;
  p.a = v;
  return p;
}

PredicateSpec PredicateSpec::le(Rational v) {
  PredicateSpec p;
  p.kind = Kind::Le;
  p.a = v;
  return p;
}

PredicateSpec PredicateSpec::singleton(Rational v) {
  PredicateSpec p;
  p.kind = Kind::Singleton;
  p.a = v;
  return p;
}

PredicateSpec PredicateSpec::interval(Rational lo, bool lo_closed, Rational hi, bool hi_closed) {
  if (hi < lo) throw std::invalid_argument("interval bounds out of order");
  PredicateSpec p;
  p.kind = Kind::Interval;
  p.a = lo;
  p.b = hi;
  p.a_closed = lo_closed;
  p.b_closed = hi_closed;
  return p;
}

bool PredicateSpec::contains(const Rational& x) const {
  switch (kind) {
  case Kind::InSet:
    return set.contains(x);
  case Kind::Lt:
    return x < a;
  case Kind::Gt:
    return x > a;
  case Kind::Ge:
    return x >= a;
  case Kind::Le:
    return x <= a;
  case Kind::Singleton:
    return x == a;
  case Kind::Interval:
    return (a_closed ? x >= a : x > a) && (b_closed ? x <= b : x < b);
  }
  return false;
}

ValueSet PredicateSpec::filter(const ValueSet& v) const {
  std::vector<Rational> out;
  for (const auto& x : v)
    if (contains(x)) out.push_back(x);
  return ValueSet(out);
}

std::string PredicateSpec::str() const {
  switch (kind) {
  case Kind::InSet:
    return "in " + set.str();
  case Kind::Lt:
    return "< " + a.str();
  case Kind::Gt:
    return "> " + a.str();
  case Kind::Ge:
    return ">= " + a.str();
  case Kind::Le:
    return "<= " + a.str();
  case Kind::Singleton:
    return "= " + a.str();
  case Kind::Interval:
    return std::string(a_closed ? "[" : "(") + a.str() + ", " + b.str() + (b_closed ? "]" : ")");
  }
  return "";
}

namespace {

// Index of atom p@x in the letters of the self product.
std::size_t atom_index(const WeightedKripke& k, const std::vector<std::string>& vars, const Node& atom) {
  auto it = std::find(vars.begin(), vars.end(), atom.var);
  if (it == vars.end()) throw std::invalid_argument("trace variable " + atom.var + " is not bound");
  int ap = k.ap_index(atom.prop);
  if (ap < 0) throw std::invalid_argument("proposition " + atom.prop + " does not occur in the structure");
  return static_cast<std::size_t>(it - vars.begin()) * k.aps.size() + static_cast<std::size_t>(ap);
}

// Worklist construction keyed by integer vectors.
class Builder {
public:
  explicit Builder(Alphabet a) { nba_.alphabet = std::move(a); }

  State get(const std::vector<int>& key, bool acc) {
    auto [it, fresh] = ids_.emplace(key, static_cast<State>(keys_.size()));
    if (fresh) {
      keys_.push_back(key);
      nba_.add_state(acc);
      work_.push_back(it->second);
    }
    return it->second;
  }
  bool pending() const { return !work_.empty(); }
  State pop() {
    State s = work_.front();
    work_.pop_front();
    return s;
  }
  const std::vector<int>& key(State s) const { return keys_[static_cast<std::size_t>(s)]; }
  Nba& nba() { return nba_; }

private:
  Nba nba_;
  std::map<std::vector<int>, State> ids_;
  std::vector<std::vector<int>> keys_;
  std::deque<State> work_;
};

void topo(const Formula& f, std::vector<Formula>& out, std::map<const Node*, int>& id) {
  if (id.count(f.get())) return;
  for (const auto& a : f->args) topo(a, out, id);
  id[f.get()] = static_cast<int>(out.size());
  out.push_back(f);
}

} // namespace

Nba compile_prop_qf(const Formula& phi, const WeightedKripke& k, const std::vector<std::string>& vars,
                    const PredicateSpec& p, CompileInfo* info) {
  std::vector<Formula> nodes;
  std::map<const Node*, int> id;
  topo(phi, nodes, id);
  for (const auto& f : nodes) {
    if (f->kind == NodeKind::DUntil || f->kind == NodeKind::DRelease)
      throw std::invalid_argument("compile_prop_qf: discounted operator in a propositional formula");
    if (f->is_quantifier()) throw std::invalid_argument("compile_prop_qf: formula is not quantifier-free");
  }
  auto vsets = value_overapprox_nodes(phi, ValueSet(k.weights));
  std::vector<std::vector<Rational>> vals_of(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) vals_of[i] = vsets.at(nodes[i].get()).values();

  int n = static_cast<int>(vars.size());
  WeightedKripke prod = self_product(k, n);
  Alphabet alpha = kripke_alphabet(k, n);
  std::vector<std::uint32_t> letter(prod.num_states());
  for (std::size_t s = 0; s < prod.num_states(); ++s) letter[s] = alpha.encode(prod.labels[s]);

  std::vector<std::size_t> atom_ix(nodes.size(), 0);
  std::vector<int> temporal; // node indices of X, U, R
  std::vector<int> slot(nodes.size(), -1);
  std::vector<int> fair;     // slots of U and R, in order
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = *nodes[i];
    if (nd.kind == NodeKind::Atom) atom_ix[i] = atom_index(k, vars, nd);
    if (nd.kind == NodeKind::Next || nd.kind == NodeKind::Until || nd.kind == NodeKind::Release) {
      slot[i] = static_cast<int>(temporal.size());
      temporal.push_back(static_cast<int>(i));
      if (nd.kind != NodeKind::Next) fair.push_back(slot[i]);
    }
  }
  int m = static_cast<int>(fair.size());
  auto child = [&](int i, int j) { return id.at(nodes[static_cast<std::size_t>(i)]->args[static_cast<std::size_t>(j)].get()); };

  // Values of all nodes at a product state under a guess vector.
  auto evaluate = [&](int q, const std::vector<int>& g) {
    std::vector<Rational> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& nd = *nodes[i];
      switch (nd.kind) {
      case NodeKind::True:
        v[i] = Rational(1);
        break;
      case NodeKind::False:
        v[i] = Rational(0);
        break;
      case NodeKind::Atom:
        v[i] = prod.labels[static_cast<std::size_t>(q)][atom_ix[i]];
        break;
      case NodeKind::Func: {
        std::vector<Rational> xs;
        for (const auto& a : nd.args) xs.push_back(v[static_cast<std::size_t>(id.at(a.get()))]);
        v[i] = nd.func.apply(xs);
        break;
      }
      default:
        v[i] = vals_of[i][static_cast<std::size_t>(g[static_cast<std::size_t>(slot[i])])];
      }
    }
    return v;
  };
  auto good = [&](const std::vector<Rational>& v, int j) {
    int i = temporal[static_cast<std::size_t>(fair[static_cast<std::size_t>(j)])];
    return v[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(child(i, 1))];
  };

  Builder b(alpha);
  // Key: q, counter, guesses.
  auto make_key = [](int q, int c, const std::vector<int>& g) {
    std::vector<int> key{q, c};
    key.insert(key.end(), g.begin(), g.end());
    return key;
  };
  std::size_t nt = temporal.size();
  std::vector<int> g(nt, 0);
  std::function<void(std::size_t, int)> initial = [&](std::size_t i, int q) {
    if (i == nt) {
      auto v = evaluate(q, g);
      if (p.contains(v.back())) b.nba().initial.push_back(b.get(make_key(q, 0, g), m == 0));
      return;
    }
    for (std::size_t x = 0; x < vals_of[static_cast<std::size_t>(temporal[i])].size(); ++x) {
      g[i] = static_cast<int>(x);
      initial(i + 1, q);
    }
  };
  for (int q0 : prod.initial) initial(0, q0);

  while (b.pending()) {
    State s = b.pop();
    std::vector<int> key = b.key(s);
    int q = key[0], c = key[1];
    std::vector<int> gs(key.begin() + 2, key.end());
    auto v = evaluate(q, gs);
    int c2 = c == m ? 0 : c;
    while (c2 < m && good(v, c2)) ++c2;
    // Allowed next guesses for U and R.
    std::vector<std::vector<int>> allowed(nt);
    bool dead = false;
    for (std::size_t t = 0; t < nt; ++t) {
      int i = temporal[t];
      const Node& nd = *nodes[static_cast<std::size_t>(i)];
      const auto& dom = vals_of[static_cast<std::size_t>(i)];
      for (std::size_t x = 0; x < dom.size(); ++x) {
        bool ok = true;
        if (nd.kind == NodeKind::Until) {
          Rational r = max(v[static_cast<std::size_t>(child(i, 1))], min(v[static_cast<std::size_t>(child(i, 0))], dom[x]));
          ok = r == v[static_cast<std::size_t>(i)];
        } else if (nd.kind == NodeKind::Release) {
          Rational r = min(v[static_cast<std::size_t>(child(i, 1))], max(v[static_cast<std::size_t>(child(i, 0))], dom[x]));
          ok = r == v[static_cast<std::size_t>(i)];
        }
        if (ok) allowed[t].push_back(static_cast<int>(x));
      }
      if (allowed[t].empty()) dead = true;
    }
    if (dead) continue;
    for (int q2 : prod.succ[static_cast<std::size_t>(q)]) {
      std::vector<int> g2(nt);
      std::function<void(std::size_t)> rec = [&](std::size_t t) {
        if (t == nt) {
          auto v2 = evaluate(q2, g2);
          for (std::size_t u = 0; u < nt; ++u) {
            int i = temporal[u];
            if (nodes[static_cast<std::size_t>(i)]->kind != NodeKind::Next) continue;
            if (v[static_cast<std::size_t>(i)] != v2[static_cast<std::size_t>(child(i, 0))]) return;
          }
          State t2 = b.get(make_key(q2, c2, g2), c2 == m);
          b.nba().add_edge(s, letter[static_cast<std::size_t>(q)], t2);
          return;
        }
        for (int x : allowed[t]) {
          g2[t] = x;
          rec(t + 1);
        }
      };
      rec(0);
    }
  }
  Nba out = b.nba();
  out.normalize();
  out = trim(out);
  if (info) info->states = out.num_states();
  return out;
}

namespace {

// Boolean LTL over threshold literals, hash-consed.
class Ltl {
public:
  enum class K { True, False, Lit, And, Or, Next, Until, Release };
  enum class Op { Gt, Lt, Ge, Le };

  struct N {
    K kind;
    int a = -1, b = -1;
    std::size_t ap = 0;
    Op op = Op::Gt;
    Rational thr{0};
  };

  explicit Ltl(std::vector<Rational> weights) : weights_(std::move(weights)) {
    tt_ = intern({K::True});
    ff_ = intern({K::False});
  }

  int tt() const { return tt_; }
  int ff() const { return ff_; }
  const N& at(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return nodes_.size(); }

  static bool holds(Op op, const Rational& w, const Rational& t) {
    switch (op) {
    case Op::Gt:
      return w > t;
    case Op::Lt:
      return w < t;
    case Op::Ge:
      return w >= t;
    case Op::Le:
      return w <= t;
    }
    return false;
  }

  int lit(std::size_t ap, Op op, Rational thr) {
    bool any = false, all = true;
    for (const auto& w : weights_) {
      bool h = holds(op, w, thr);
      any = any || h;
      all = all && h;
    }
    if (all) return tt_;
    if (!any) return ff_;
    N n{K::Lit};
    n.ap = ap;
    n.op = op;
    n.thr = thr;
    return intern(n);
  }
  int conj(int a, int b) {
    if (a == ff_ || b == ff_) return ff_;
    if (a == tt_) return b;
    if (b == tt_ || a == b) return a;
    return intern({K::And, std::min(a, b), std::max(a, b)});
  }
  int disj(int a, int b) {
    if (a == tt_ || b == tt_) return tt_;
    if (a == ff_) return b;
    if (b == ff_ || a == b) return a;
    return intern({K::Or, std::min(a, b), std::max(a, b)});
  }
  int next(int a) {
    if (a == tt_ || a == ff_) return a;
    return intern({K::Next, a});
  }
  int until(int a, int b) {
    if (b == tt_ || b == ff_ || a == ff_) return b;
    return intern({K::Until, a, b});
  }
  int release(int a, int b) {
    if (b == ff_ || b == tt_) return b;
    if (a == tt_) return b;
    return intern({K::Release, a, b});
  }

  int negate(int i) {
    if (auto it = neg_.find(i); it != neg_.end()) return it->second;
    N n = at(i);
    int r = 0;
    switch (n.kind) {
    case K::True:
      r = ff_;
      break;
    case K::False:
      r = tt_;
      break;
    case K::Lit: {
      Op o = n.op == Op::Gt ? Op::Le : n.op == Op::Le ? Op::Gt : n.op == Op::Lt ? Op::Ge : Op::Lt;
      r = lit(n.ap, o, n.thr);
      break;
    }
    case K::And:
      r = disj(negate(n.a), negate(n.b));
      break;
    case K::Or:
      r = conj(negate(n.a), negate(n.b));
      break;
    case K::Next:
      r = next(negate(n.a));
      break;
    case K::Until:
      r = release(negate(n.a), negate(n.b));
      break;
    case K::Release:
      r = until(negate(n.a), negate(n.b));
      break;
    }
    neg_[i] = r;
    return r;
  }

private:
  using Key = std::tuple<int, int, int, std::size_t, int, Rational>;
  int intern(const N& n) {
    Key key{static_cast<int>(n.kind), n.a, n.b, n.ap, static_cast<int>(n.op), n.thr};
    auto [it, fresh] = ids_.emplace(key, static_cast<int>(nodes_.size()));
    if (fresh) nodes_.push_back(n);
    return it->second;
  }

  std::vector<Rational> weights_;
  std::vector<N> nodes_;
  std::map<Key, int> ids_;
  std::map<int, int> neg_;
  int tt_ = 0, ff_ = 0;
};

// Translation of threshold obligations [phi cmp v] into Boolean LTL.
class ThresholdTranslator {
public:
  ThresholdTranslator(Ltl& ltl, const WeightedKripke& k, const std::vector<std::string>& vars, std::size_t factor)
      : ltl_(ltl), k_(k), vars_(vars), factor_(factor) {}

  std::size_t horizon() const { return horizon_; }

  int tr(const Formula& f, Cmp cmp, const Rational& v) {
    if (cmp == Cmp::Gt) {
      if (v >= Rational(1)) return ltl_.ff();
      if (v < Rational(0)) return ltl_.tt();
    } else {
      if (v <= Rational(0)) return ltl_.ff();
      if (v > Rational(1)) return ltl_.tt();
    }
    auto key = std::make_tuple(f.get(), cmp, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int r = translate(f, cmp, v);
    memo_[key] = r;
    return r;
  }

private:
  static Cmp flip(Cmp c) { return c == Cmp::Gt ? Cmp::Lt : Cmp::Gt; }

  int translate(const Formula& f, Cmp cmp, const Rational& v) {
    bool gt = cmp == Cmp::Gt;
    const auto& a = f->args;
    switch (f->kind) {
    case NodeKind::True:
      return gt ? ltl_.tt() : ltl_.ff();
    case NodeKind::False:
      return gt ? ltl_.ff() : ltl_.tt();
    case NodeKind::Atom:
      return ltl_.lit(atom_index(k_, vars_, *f), gt ? Ltl::Op::Gt : Ltl::Op::Lt, v);
    case NodeKind::Func:
      return translate_func(f, cmp, v);
    case NodeKind::Next:
      return ltl_.next(tr(a[0], cmp, v));
    case NodeKind::Until:
      return gt ? ltl_.until(tr(a[0], cmp, v), tr(a[1], cmp, v)) : ltl_.release(tr(a[0], cmp, v), tr(a[1], cmp, v));
    case NodeKind::Release:
      return gt ? ltl_.release(tr(a[0], cmp, v), tr(a[1], cmp, v)) : ltl_.until(tr(a[0], cmp, v), tr(a[1], cmp, v));
    case NodeKind::DUntil:
      return discounted(f->eta, a[0], a[1], cmp, v);
    case NodeKind::DRelease: {
      Formula na = keep(f_not(a[0])), nb = keep(f_not(a[1]));
      return discounted(f->eta, na, nb, flip(cmp), Rational(1) - v);
    }
    case NodeKind::Exists:
    case NodeKind::Forall:
      throw std::invalid_argument("compile_temp_qf: formula is not quantifier-free");
    }
    return ltl_.ff();
  }

  int translate_func(const Formula& f, Cmp cmp, const Rational& v) {
    bool gt = cmp == Cmp::Gt;
    const auto& a = f->args;
    Rational nv = Rational(1) - v;
    auto join = [&](bool use_or, int x, int y) { return use_or ? ltl_.disj(x, y) : ltl_.conj(x, y); };
    switch (f->func.kind) {
    case FuncKind::Not:
      return tr(a[0], flip(cmp), nv);
    case FuncKind::Or:
    case FuncKind::And: {
      bool use_or = (f->func.kind == FuncKind::Or) == gt;
      int r = use_or ? ltl_.ff() : ltl_.tt();
      for (const auto& x : a) r = join(use_or, r, tr(x, cmp, v));
      return r;
    }
    case FuncKind::Implies:
      return join(gt, tr(a[0], flip(cmp), nv), tr(a[1], cmp, v));
    case FuncKind::Iff: {
      int l = join(gt, tr(a[0], flip(cmp), nv), tr(a[1], cmp, v));
      int r = join(gt, tr(a[1], flip(cmp), nv), tr(a[0], cmp, v));
      return join(!gt, l, r);
    }
    default:
      throw std::invalid_argument("compile_temp_qf: function " + print(f) + " is not a Boolean connective");
    }
  }

  // [a U_eta b > v] unfolds to F(0) with F(i) = B_i | (A_i & X F(i+1)),
  // [a U_eta b < v] to G(0) with G(i) = B_i & (A_i | X G(i+1)), where the
  // thresholds of A_i, B_i are v / eta_i.
  int discounted(const DiscountSeq& eta, const Formula& a, const Formula& b, Cmp cmp, const Rational& v) {
    bool gt = cmp == Cmp::Gt;
    if (gt && v.is_zero()) return ltl_.until(tr(a, cmp, v), tr(b, cmp, v));
    std::size_t i0 = eta.first_index_below(v, !gt);
    horizon_ = std::max(horizon_, i0);
    std::size_t depth = i0 * factor_;
    int r = gt ? ltl_.ff() : ltl_.tt();
    for (std::size_t i = depth; i-- > 0;) {
      Rational t = v / eta.at(i);
      int ai = tr(a, cmp, t), bi = tr(b, cmp, t);
      r = gt ? ltl_.disj(bi, ltl_.conj(ai, ltl_.next(r))) : ltl_.conj(bi, ltl_.disj(ai, ltl_.next(r)));
    }
    return r;
  }

  Formula keep(Formula f) {
    alive_.push_back(f);
    return f;
  }

  Ltl& ltl_;
  const WeightedKripke& k_;
  const std::vector<std::string>& vars_;
  std::size_t factor_;
  std::size_t horizon_ = 0;
  std::map<std::tuple<const Node*, Cmp, Rational>, int> memo_;
  std::vector<Formula> alive_;
};

struct Term {
  std::vector<int> lits;
  std::vector<int> next;
  std::vector<int> postponed;
};

class Tableau {
public:
  explicit Tableau(const Ltl& ltl) : ltl_(ltl) {}

  const std::vector<Term>& expand(const std::vector<int>& obligations) {
    if (auto it = memo_.find(obligations); it != memo_.end()) return it->second;
    std::vector<Term> out;
    Term cur;
    rec(obligations, cur, out);
    for (auto& t : out) {
      for (auto* v : {&t.lits, &t.next, &t.postponed}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
      }
    }
    return memo_.emplace(obligations, std::move(out)).first->second;
  }

private:
  void rec(std::vector<int> todo, Term cur, std::vector<Term>& out) {
    while (!todo.empty()) {
      int f = todo.back();
      todo.pop_back();
      const auto& n = ltl_.at(f);
      switch (n.kind) {
      case Ltl::K::True:
        break;
      case Ltl::K::False:
        return;
      case Ltl::K::Lit:
        cur.lits.push_back(f);
        break;
      case Ltl::K::And:
        todo.push_back(n.a);
        todo.push_back(n.b);
        break;
      case Ltl::K::Next:
        cur.next.push_back(n.a);
        break;
      case Ltl::K::Or: {
        auto t2 = todo;
        t2.push_back(n.b);
        rec(t2, cur, out);
        todo.push_back(n.a);
        break;
      }
      case Ltl::K::Until: {
        auto t2 = todo;
        t2.push_back(n.a);
        Term c2 = cur;
        c2.next.push_back(f);
        c2.postponed.push_back(f);
        rec(t2, c2, out);
        todo.push_back(n.b);
        break;
      }
      case Ltl::K::Release: {
        auto t2 = todo;
        t2.push_back(n.b);
        Term c2 = cur;
        c2.next.push_back(f);
        rec(t2, c2, out);
        todo.push_back(n.a);
        todo.push_back(n.b);
        break;
      }
      }
    }
    out.push_back(std::move(cur));
  }

  const Ltl& ltl_;
  std::map<std::vector<int>, std::vector<Term>> memo_;
};

} // namespace

Nba compile_temp_qf(const Formula& phi, const WeightedKripke& k, const std::vector<std::string>& vars, Cmp cmp,
                    const Rational& v, const TempCompileOptions& opts, CompileInfo* info) {
  if (contains_quantifier(phi)) throw std::invalid_argument("compile_temp_qf: formula is not quantifier-free");
  Ltl ltl(k.weights);
  ThresholdTranslator tr(ltl, k, vars, std::max<std::size_t>(1, opts.horizon_factor));
  int root = tr.tr(phi, cmp, v);
  if (opts.complement) root = ltl.negate(root);

  std::vector<int> untils;
  for (std::size_t i = 0; i < ltl.size(); ++i)
    if (ltl.at(static_cast<int>(i)).kind == Ltl::K::Until) untils.push_back(static_cast<int>(i));
  int m = static_cast<int>(untils.size());

  int n = static_cast<int>(vars.size());
  WeightedKripke prod = self_product(k, n);
  Alphabet alpha = kripke_alphabet(k, n);
  std::vector<std::uint32_t> letter(prod.num_states());
  for (std::size_t s = 0; s < prod.num_states(); ++s) letter[s] = alpha.encode(prod.labels[s]);
  auto lit_holds = [&](int q, int l) {
    const auto& nd = ltl.at(l);
    return Ltl::holds(nd.op, prod.labels[static_cast<std::size_t>(q)][nd.ap], nd.thr);
  };

  Tableau tab(ltl);
  std::map<std::vector<int>, int> set_ids;
  std::vector<std::vector<int>> sets;
  auto set_id = [&](const std::vector<int>& s) {
    auto [it, fresh] = set_ids.emplace(s, static_cast<int>(sets.size()));
    if (fresh) sets.push_back(s);
    return it->second;
  };

  Builder b(alpha);
  // Key: q, obligation set id, counter.
  int root_set = set_id({root});
  for (int q0 : prod.initial) b.nba().initial.push_back(b.get({q0, root_set, 0}, m == 0));
  while (b.pending()) {
    State s = b.pop();
    std::vector<int> key = b.key(s);
    int q = key[0], c = key[2];
    std::vector<int> obligations = sets[static_cast<std::size_t>(key[1])];
    for (const Term& t : tab.expand(obligations)) {
      if (!std::all_of(t.lits.begin(), t.lits.end(), [&](int l) { return lit_holds(q, l); })) continue;
      int c2 = c == m ? 0 : c;
      while (c2 < m && !std::binary_search(t.postponed.begin(), t.postponed.end(), untils[static_cast<std::size_t>(c2)]))
        ++c2;
      int next = set_id(t.next);
      for (int q2 : prod.succ[static_cast<std::size_t>(q)])
        b.nba().add_edge(s, letter[static_cast<std::size_t>(q)], b.get({q2, next, c2}, c2 == m));
    }
  }
  Nba out = b.nba();
  out.normalize();
  out = trim(out);
  if (info) {
    info->states = out.num_states();
    info->horizon = tr.horizon();
  }
  return out;
}

namespace {

class PropEliminator {
public:
  PropEliminator(const Formula& psi, const WeightedKripke& k, const std::vector<std::string>& free_vars,
                 const ElimOptions& opts)
      : k_(k), opts_(opts) {
    Prefix p = split_prefix(psi);
    matrix_ = p.matrix;
    blocks_ = quantifier_blocks(p);
    vars_ = free_vars;
    offsets_.push_back(vars_.size());
    for (const auto& blk : blocks_) {
      vars_.insert(vars_.end(), blk.vars.begin(), blk.vars.end());
      offsets_.push_back(vars_.size());
    }
    values_ = value_overapprox(matrix_, ValueSet(k.weights));
  }

  const ValueSet& values() const { return values_; }

  // Automaton over the variables bound before block b for the predicate
  // "value in target".
  Nba elim(std::size_t b, const ValueSet& target) {
    auto key = std::make_pair(b, target.values());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Nba out = build(b, target);
    memo_[key] = out;
    return out;
  }

private:
  Nba build(std::size_t b, const ValueSet& target) {
    std::size_t width = offsets_[b] * k_.aps.size();
    if (target.empty()) return empty_nba(kripke_alphabet(k_, static_cast<int>(offsets_[b])));
    if (b == blocks_.size()) return compile_prop_qf(matrix_, k_, vars_, PredicateSpec::in_set(target));
    bool ex = blocks_[b].quant == Quant::Exists;
    Nba result = empty_nba(kripke_alphabet(k_, static_cast<int>(offsets_[b])));
    for (const auto& c : target) {
      Nba reach = trim(project_prefix(elim(b + 1, ValueSet{c}), width));
      if (reach.num_states() == 0) continue;
      std::vector<Rational> beyond;
      for (const auto& x : values_)
        if (ex ? x > c : x < c) beyond.push_back(x);
      Nba exact = reach;
      if (!beyond.empty()) {
        Nba other = project_prefix(elim(b + 1, ValueSet(beyond)), width);
        exact = trim(intersect(reach, complement(other, opts_.complement)));
      }
      result = nba_union(result, exact);
    }
    return trim(result);
  }

  WeightedKripke k_;
  ElimOptions opts_;
  Formula matrix_;
  std::vector<QuantBlock> blocks_;
  std::vector<std::string> vars_;
  std::vector<std::size_t> offsets_;
  ValueSet values_;
  std::map<std::pair<std::size_t, std::vector<Rational>>, Nba> memo_;
};

} // namespace

struct PropElimination::Impl {
  PropEliminator e;
};

PropElimination::PropElimination(const Formula& psi, const WeightedKripke& k, const std::vector<std::string>& free_vars,
                                 const ElimOptions& opts)
    : impl_(new Impl{PropEliminator(psi, k, free_vars, opts)}) {}

PropElimination::~PropElimination() = default;

const ValueSet& PropElimination::values() const { return impl_->e.values(); }

Nba PropElimination::automaton(const PredicateSpec& p) { return impl_->e.elim(0, p.filter(impl_->e.values())); }

Nba quantifier_elim_prop(const Formula& psi, const WeightedKripke& k, const PredicateSpec& p,
                         const std::vector<std::string>& free_vars, const ElimOptions& opts) {
  PropElimination e(psi, k, free_vars, opts);
  return e.automaton(p);
}

namespace {

Nba elim_temp(const std::vector<std::pair<Quant, std::string>>& q, const Formula& matrix, const WeightedKripke& k,
              const std::vector<std::string>& vars, Cmp cmp, const Rational& v, const ElimOptions& opts) {
  if (q.empty()) return compile_temp_qf(matrix, k, vars, cmp, v);
  if (cmp == Cmp::Lt) {
    auto flipped = q;
    for (auto& [qq, x] : flipped) qq = qq == Quant::Exists ? Quant::Forall : Quant::Exists;
    return elim_temp(flipped, negate_dual(matrix), k, vars, Cmp::Gt, Rational(1) - v, opts);
  }
  std::size_t blk = 1;
  while (blk < q.size() && q[blk].first == q[0].first) ++blk;
  std::vector<std::pair<Quant, std::string>> rest(q.begin() + static_cast<std::ptrdiff_t>(blk), q.end());
  std::vector<std::string> inner = vars;
  for (std::size_t i = 0; i < blk; ++i) inner.push_back(q[i].second);
  std::size_t width = vars.size() * k.aps.size();
  if (q[0].first == Quant::Exists) return trim(project_prefix(elim_temp(rest, matrix, k, inner, cmp, v, opts), width));
  Nba outside;
  if (rest.empty()) {
    TempCompileOptions topts;
    topts.complement = true;
    outside = compile_temp_qf(matrix, k, inner, Cmp::Gt, v, topts);
  } else {
    outside = intersect(complement(elim_temp(rest, matrix, k, inner, cmp, v, opts), opts.complement),
                        kripke_to_nba(k, static_cast<int>(inner.size())));
  }
  Nba witnesses = project_prefix(outside, width);
  return trim(intersect(complement(witnesses, opts.complement), kripke_to_nba(k, static_cast<int>(vars.size()))));
}

} // namespace

Nba quantifier_elim_temp(const Formula& psi, const WeightedKripke& k, Cmp cmp, const Rational& v,
                         const std::vector<std::string>& free_vars, const ElimOptions& opts) {
  Prefix p = split_prefix(psi);
  return elim_temp(p.quantifiers, p.matrix, k, free_vars, cmp, v, opts);
}

} // namespace hyperqual
