#include "hyperqual/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hyperqual {

// ---------------------------------------------------------------------------
// Function symbols

FuncSymbol FuncSymbol::make_oplus(std::vector<Rational> coeffs) {
  FuncSymbol f{FuncKind::Oplus, std::move(coeffs), 0};
  f.arity = static_cast<int>(f.params.size());
  return f;
}

Rational FuncSymbol::apply(std::span<const Rational> xs) const {
  switch (kind) {
  case FuncKind::Not:
    return Rational(1) - xs[0];
  case FuncKind::Or: {
    Rational r = xs[0];
    for (const auto& x : xs.subspan(1)) r = max(r, x);
    return r;
  }
  case FuncKind::And: {
    Rational r = xs[0];
    for (const auto& x : xs.subspan(1)) r = min(r, x);
    return r;
  }
  case FuncKind::Implies:
    return max(Rational(1) - xs[0], xs[1]);
  case FuncKind::Iff:
    return min(max(Rational(1) - xs[0], xs[1]), max(Rational(1) - xs[1], xs[0]));
  case FuncKind::Oplus: {
    Rational r(0);
    for (std::size_t i = 0; i < xs.size(); ++i) r += params[i] * xs[i];
    return r;
  }
  case FuncKind::Scale:
    return params[0] * xs[0];
  case FuncKind::ThresholdGt:
    return xs[0] > params[0] ? Rational(1) : Rational(0);
  case FuncKind::Agree:
    return xs[0] * xs[1] + (Rational(1) - xs[0]) * (Rational(1) - xs[1]);
  }
  return Rational(0);
}

bool FuncSymbol::is_boolean_connective() const {
  switch (kind) {
  case FuncKind::Not:
  case FuncKind::Or:
  case FuncKind::And:
  case FuncKind::Implies:
  case FuncKind::Iff:
    return true;
  default:
    return false;
  }
}

void FuncSymbol::validate() const {
  auto unit = [](const Rational& r) { return r.in_unit_interval(); };
  switch (kind) {
  case FuncKind::Not:
  case FuncKind::Scale:
  case FuncKind::ThresholdGt:
    if (arity != 1) throw std::invalid_argument("unary function with wrong arity");
    break;
  case FuncKind::Implies:
  case FuncKind::Iff:
  case FuncKind::Agree:
    if (arity != 2) throw std::invalid_argument("binary function with wrong arity");
    break;
  case FuncKind::Or:
  case FuncKind::And:
    if (arity < 1) throw std::invalid_argument("empty disjunction or conjunction");
    break;
  case FuncKind::Oplus: {
    if (arity < 1 || static_cast<int>(params.size()) != arity)
      throw std::invalid_argument("oplus needs one coefficient per argument");
    Rational sum(0);
    for (const auto& c : params) {
      if (!unit(c)) throw std::invalid_argument("oplus coefficient " + c.str() + " outside [0,1]");
      sum += c;
    }
    if (!sum.is_one()) throw std::invalid_argument("oplus coefficients sum to " + sum.str() + ", not 1");
    break;
  }
  }
  if ((kind == FuncKind::Scale || kind == FuncKind::ThresholdGt) && (params.size() != 1 || !unit(params[0])))
    throw std::invalid_argument("parameter outside [0,1]");
}

// ---------------------------------------------------------------------------
// Discount sequences

DiscountSeq DiscountSeq::exp(Rational l) {
  if (l <= Rational(0) || l >= Rational(1))
    throw std::invalid_argument("exp discount factor " + l.str() + " must lie in (0,1)");
  return {DiscountKind::Exp, l};
}

Rational DiscountSeq::at(std::size_t i) const {
  if (kind == DiscountKind::Harmonic) return Rational(1, static_cast<std::int64_t>(i) + 1);
  Rational result(1);
  Rational base = lambda;
  while (i > 0) {
    if (i & 1) result *= base;
    i >>= 1;
    if (i > 0) base *= base;
  }
  return result;
}

std::size_t DiscountSeq::first_index_below(const Rational& a, bool strict) const {
  if (a <= Rational(0)) throw std::invalid_argument("discount cutoff must be positive");
  if (kind == DiscountKind::Harmonic) {
    // 1/(i+1) <= a  iff  i+1 >= 1/a
    Rational inv = Rational(1) / a;
    std::int64_t c = (inv.num() + inv.den() - 1) / inv.den(); // ceil(1/a)
    std::int64_t i = std::max<std::int64_t>(c - 1, 0);
    if (strict && Rational(1, i + 1) == a) ++i;
    return static_cast<std::size_t>(i);
  }
  std::size_t i = 0;
  Rational v(1);
  while (strict ? !(v < a) : !(v <= a)) {
    v *= lambda;
    ++i;
  }
  return i;
}

std::string DiscountSeq::str() const {
  if (kind == DiscountKind::Harmonic) return "harmonic";
  return "exp(" + lambda.str() + ")";
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

Formula make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Formula make_binary(NodeKind k, Formula a, Formula b) {
  Node n;
  n.kind = k;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

} // namespace

Formula f_true() {
  static const Formula t = make(Node{NodeKind::True, {}, {}, {}, {}, {}});
  return t;
}

Formula f_false() {
  static const Formula f = make(Node{NodeKind::False, {}, {}, {}, {}, {}});
  return f;
}

Formula f_atom(std::string prop, std::string var) {
  Node n;
  n.kind = NodeKind::Atom;
  n.prop = std::move(prop);
  n.var = std::move(var);
  return make(std::move(n));
}

Formula f_func(FuncSymbol f, std::vector<Formula> args) {
  if (static_cast<int>(args.size()) != f.arity) throw std::invalid_argument("function applied to wrong number of arguments");
  f.validate();
  Node n;
  n.kind = NodeKind::Func;
  n.func = std::move(f);
  n.args = std::move(args);
  return make(std::move(n));
}

Formula f_not(Formula a) { return f_func(FuncSymbol::make_not(), {std::move(a)}); }
Formula f_or(Formula a, Formula b) { return f_func(FuncSymbol::make_or(), {std::move(a), std::move(b)}); }
Formula f_and(Formula a, Formula b) { return f_func(FuncSymbol::make_and(), {std::move(a), std::move(b)}); }

Formula f_or(std::vector<Formula> xs) {
  if (xs.empty()) return f_false();
  if (xs.size() == 1) return xs[0];
  int n = static_cast<int>(xs.size());
  return f_func(FuncSymbol::make_or(n), std::move(xs));
}

Formula f_and(std::vector<Formula> xs) {
  if (xs.empty()) return f_true();
  if (xs.size() == 1) return xs[0];
  int n = static_cast<int>(xs.size());
  return f_func(FuncSymbol::make_and(n), std::move(xs));
}

Formula f_implies(Formula a, Formula b) { return f_func(FuncSymbol::make_implies(), {std::move(a), std::move(b)}); }
Formula f_iff(Formula a, Formula b) { return f_func(FuncSymbol::make_iff(), {std::move(a), std::move(b)}); }

Formula f_next(Formula a) {
  Node n;
  n.kind = NodeKind::Next;
  n.args = {std::move(a)};
  return make(std::move(n));
}

Formula f_until(Formula a, Formula b) { return make_binary(NodeKind::Until, std::move(a), std::move(b)); }
Formula f_release(Formula a, Formula b) { return make_binary(NodeKind::Release, std::move(a), std::move(b)); }

Formula f_duntil(DiscountSeq eta, Formula a, Formula b) {
  Node n;
  n.kind = NodeKind::DUntil;
  n.eta = eta;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula f_drelease(DiscountSeq eta, Formula a, Formula b) {
  Node n;
  n.kind = NodeKind::DRelease;
  n.eta = eta;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula f_eventually(Formula a) { return f_until(f_true(), std::move(a)); }
Formula f_globally(Formula a) { return f_release(f_false(), std::move(a)); }
Formula f_deventually(DiscountSeq eta, Formula a) { return f_duntil(eta, f_true(), std::move(a)); }
Formula f_dglobally(DiscountSeq eta, Formula a) { return f_drelease(eta, f_false(), std::move(a)); }

Formula f_exists(std::string var, Formula a) {
  Node n;
  n.kind = NodeKind::Exists;
  n.var = std::move(var);
  n.args = {std::move(a)};
  return make(std::move(n));
}

Formula f_forall(std::string var, Formula a) {
  Node n;
  n.kind = NodeKind::Forall;
  n.var = std::move(var);
  n.args = {std::move(a)};
  return make(std::move(n));
}

Formula macro_loweq(const std::vector<std::string>& low, const std::string& a, const std::string& b) {
  std::vector<Formula> parts;
  for (const auto& p : low) parts.push_back(f_iff(f_atom(p, a), f_atom(p, b)));
  return f_and(std::move(parts));
}

Formula macro_ratio(const std::vector<std::string>& low, const std::string& a, const std::string& b) {
  if (low.empty()) return f_true();
  std::vector<Formula> parts;
  for (const auto& p : low) parts.push_back(f_iff(f_atom(p, a), f_atom(p, b)));
  if (parts.size() == 1) return parts[0];
  std::vector<Rational> coeffs(low.size(), Rational(1, static_cast<std::int64_t>(low.size())));
  return f_func(FuncSymbol::make_oplus(std::move(coeffs)), std::move(parts));
}

Formula macro_dummy(const std::string& lambda, const std::vector<std::string>& others, const std::string& a) {
  std::vector<Formula> parts{f_atom(lambda, a)};
  for (const auto& p : others) parts.push_back(f_not(f_atom(p, a)));
  return f_and(std::move(parts));
}

Formula macro_traceeq(const std::vector<std::string>& props, const std::string& a, const std::string& b) {
  return f_globally(macro_loweq(props, a, b));
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->prop != b->prop || a->var != b->var) return false;
  if (a->kind == NodeKind::Func && !(a->func == b->func)) return false;
  if ((a->kind == NodeKind::DUntil || a->kind == NodeKind::DRelease) && !(a->eta == b->eta)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Structure

bool contains_quantifier(const Formula& f) {
  if (f->is_quantifier()) return true;
  return std::any_of(f->args.begin(), f->args.end(), contains_quantifier);
}

Prefix split_prefix(const Formula& f) {
  Prefix p;
  Formula cur = f;
  while (cur->is_quantifier()) {
    p.quantifiers.emplace_back(cur->kind == NodeKind::Exists ? Quant::Exists : Quant::Forall, cur->var);
    cur = cur->args[0];
  }
  if (contains_quantifier(cur)) throw std::invalid_argument("quantifier not in prefix position");
  p.matrix = cur;
  return p;
}

Formula join_prefix(const std::vector<std::pair<Quant, std::string>>& q, Formula matrix) {
  Formula cur = std::move(matrix);
  for (auto it = q.rbegin(); it != q.rend(); ++it)
    cur = it->first == Quant::Exists ? f_exists(it->second, cur) : f_forall(it->second, cur);
  return cur;
}

std::vector<QuantBlock> quantifier_blocks(const Prefix& p) {
  std::vector<QuantBlock> out;
  for (const auto& [q, v] : p.quantifiers) {
    if (out.empty() || out.back().quant != q) out.push_back({q, {}});
    out.back().vars.push_back(v);
  }
  return out;
}

bool is_prenex(const Formula& f) {
  Formula cur = f;
  while (cur->is_quantifier()) cur = cur->args[0];
  return !contains_quantifier(cur);
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f->kind == NodeKind::Atom) {
    if (!bound.count(f->var)) out.insert(f->var);
    return;
  }
  if (f->is_quantifier()) {
    bool fresh = bound.insert(f->var).second;
    collect_free(f->args[0], bound, out);
    if (fresh) bound.erase(f->var);
    return;
  }
  for (const auto& a : f->args) collect_free(a, bound, out);
}

void collect_props(const Formula& f, std::set<std::string>& out) {
  if (f->kind == NodeKind::Atom) out.insert(f->prop);
  for (const auto& a : f->args) collect_props(a, out);
}

int count_atoms(const Formula& f) {
  int n = f->kind == NodeKind::Atom ? 1 : 0;
  for (const auto& a : f->args) n += count_atoms(a);
  return n;
}

int discount_depth(const Formula& f, std::set<DiscountSeq>& seqs) {
  int d = 0;
  for (const auto& a : f->args) d = std::max(d, discount_depth(a, seqs));
  if (f->kind == NodeKind::DUntil || f->kind == NodeKind::DRelease) {
    seqs.insert(f->eta);
    ++d;
  }
  return d;
}

bool all_funcs(const Formula& f, const std::function<bool(const FuncSymbol&)>& ok) {
  if (f->kind == NodeKind::Func && !ok(f->func)) return false;
  return std::all_of(f->args.begin(), f->args.end(), [&](const Formula& a) { return all_funcs(a, ok); });
}

bool has_discount(const Formula& f) {
  if (f->kind == NodeKind::DUntil || f->kind == NodeKind::DRelease) return true;
  return std::any_of(f->args.begin(), f->args.end(), has_discount);
}

bool positive_matrix(const Formula& f) {
  if (is_boolean_ltl(f)) return true;
  switch (f->kind) {
  case NodeKind::Func:
    if (f->func.kind != FuncKind::Or && f->func.kind != FuncKind::And) return false;
    return std::all_of(f->args.begin(), f->args.end(), positive_matrix);
  case NodeKind::Next:
  case NodeKind::Until:
  case NodeKind::DUntil:
    return std::all_of(f->args.begin(), f->args.end(), positive_matrix);
  default:
    return false;
  }
}

} // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> propositions(const Formula& f) {
  std::set<std::string> out;
  collect_props(f, out);
  return out;
}

bool is_boolean_ltl(const Formula& f) {
  if (f->is_quantifier()) return false;
  if (has_discount(f)) return false;
  return all_funcs(f, [](const FuncSymbol& s) { return s.is_boolean_connective(); });
}

bool is_temp_positive(const Formula& f) {
  Prefix p = split_prefix(f);
  if (!all_funcs(p.matrix, [](const FuncSymbol& s) { return s.is_boolean_connective(); })) return false;
  return positive_matrix(p.matrix);
}

bool is_temp_negative(const Formula& f) {
  Prefix p = split_prefix(f);
  if (!all_funcs(p.matrix, [](const FuncSymbol& s) { return s.is_boolean_connective(); })) return false;
  return positive_matrix(negate_dual(p.matrix));
}

std::string fragment_name(Fragment f) {
  switch (f) {
  case Fragment::PROP: return "PROP";
  case Fragment::TEMP_FULL: return "TEMP_FULL";
  case Fragment::TEMP_POS: return "TEMP_POS";
  case Fragment::TEMP_NEG: return "TEMP_NEG";
  case Fragment::TEMP_EXISTS_ONLY: return "TEMP_EXISTS_ONLY";
  case Fragment::TEMP_FORALL_ONLY: return "TEMP_FORALL_ONLY";
  case Fragment::BOOLEAN: return "BOOLEAN";
  }
  return "?";
}

FormulaStats analyze(const Formula& f) {
  FormulaStats s;
  Prefix p = split_prefix(f);
  s.atom_count = count_atoms(f);
  s.quantifier_depth = static_cast<int>(p.quantifiers.size());
  for (std::size_t i = 1; i < p.quantifiers.size(); ++i)
    if (p.quantifiers[i].first != p.quantifiers[i - 1].first) ++s.alternation_count;
  s.discount_depth = discount_depth(p.matrix, s.discount_seqs);
  s.exists_only = std::all_of(p.quantifiers.begin(), p.quantifiers.end(),
                              [](const auto& q) { return q.first == Quant::Exists; });
  s.forall_only = std::all_of(p.quantifiers.begin(), p.quantifiers.end(),
                              [](const auto& q) { return q.first == Quant::Forall; });
  s.is_prop = s.discount_depth == 0;
  s.is_temp = all_funcs(p.matrix, [](const FuncSymbol& x) { return x.is_boolean_connective(); });
  s.is_boolean = s.is_prop && s.is_temp;
  if (s.is_temp) {
    s.temp_pos = positive_matrix(p.matrix);
    s.temp_neg = positive_matrix(negate_dual(p.matrix));
  }
  if (s.is_boolean)
    s.fragment = Fragment::BOOLEAN;
  else if (s.is_prop)
    s.fragment = Fragment::PROP;
  else if (!s.is_temp)
    s.fragment = Fragment::TEMP_FULL;
  else if (s.temp_pos)
    s.fragment = Fragment::TEMP_POS;
  else if (s.temp_neg)
    s.fragment = Fragment::TEMP_NEG;
  else if (s.exists_only)
    s.fragment = Fragment::TEMP_EXISTS_ONLY;
  else if (s.forall_only)
    s.fragment = Fragment::TEMP_FORALL_ONLY;
  else
    s.fragment = Fragment::TEMP_FULL;
  return s;
}

// ---------------------------------------------------------------------------
// Negation

Formula negate_dual(const Formula& f) {
  switch (f->kind) {
  case NodeKind::True:
    return f_false();
  case NodeKind::False:
    return f_true();
  case NodeKind::Atom:
    return f_not(f);
  case NodeKind::Next:
    return f_next(negate_dual(f->args[0]));
  case NodeKind::Until:
    return f_release(negate_dual(f->args[0]), negate_dual(f->args[1]));
  case NodeKind::Release:
    return f_until(negate_dual(f->args[0]), negate_dual(f->args[1]));
  case NodeKind::DUntil:
    return f_drelease(f->eta, negate_dual(f->args[0]), negate_dual(f->args[1]));
  case NodeKind::DRelease:
    return f_duntil(f->eta, negate_dual(f->args[0]), negate_dual(f->args[1]));
  case NodeKind::Exists:
    return f_forall(f->var, negate_dual(f->args[0]));
  case NodeKind::Forall:
    return f_exists(f->var, negate_dual(f->args[0]));
  case NodeKind::Func:
    break;
  }
  const auto& a = f->args;
  auto neg_all = [&] {
    std::vector<Formula> out;
    for (const auto& x : a) out.push_back(negate_dual(x));
    return out;
  };
  switch (f->func.kind) {
  case FuncKind::Not:
    return a[0];
  case FuncKind::Or:
    return f_func(FuncSymbol::make_and(f->func.arity), neg_all());
  case FuncKind::And:
    return f_func(FuncSymbol::make_or(f->func.arity), neg_all());
  case FuncKind::Implies:
    return f_and(a[0], negate_dual(a[1]));
  case FuncKind::Iff:
    return f_or(f_and(a[0], negate_dual(a[1])), f_and(a[1], negate_dual(a[0])));
  case FuncKind::Oplus:
    return f_func(f->func, neg_all());
  case FuncKind::Agree:
    return f_func(f->func, {a[0], negate_dual(a[1])});
  case FuncKind::Scale:
  case FuncKind::ThresholdGt:
    return f_not(f);
  }
  return f_not(f);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr int kLevelQuant = -1;
constexpr int kLevelIff = 0;
constexpr int kLevelImplies = 1;
constexpr int kLevelOr = 2;
constexpr int kLevelAnd = 3;
constexpr int kLevelBinaryTemporal = 4;
constexpr int kLevelUnary = 5;
constexpr int kLevelPrimary = 6;

int level(const Formula& f) {
  switch (f->kind) {
  case NodeKind::Exists:
  case NodeKind::Forall:
    return kLevelQuant;
  case NodeKind::Next:
    return kLevelUnary;
  case NodeKind::Until:
  case NodeKind::Release:
    if (f->kind == NodeKind::Until && f->args[0]->kind == NodeKind::True) return kLevelUnary;
    if (f->kind == NodeKind::Release && f->args[0]->kind == NodeKind::False) return kLevelUnary;
    return kLevelBinaryTemporal;
  case NodeKind::DUntil:
  case NodeKind::DRelease:
    if (f->kind == NodeKind::DUntil && f->args[0]->kind == NodeKind::True) return kLevelUnary;
    if (f->kind == NodeKind::DRelease && f->args[0]->kind == NodeKind::False) return kLevelUnary;
    return kLevelBinaryTemporal;
  case NodeKind::Func:
    switch (f->func.kind) {
    case FuncKind::Not: return kLevelUnary;
    case FuncKind::Or: return kLevelOr;
    case FuncKind::And: return kLevelAnd;
    case FuncKind::Implies: return kLevelImplies;
    case FuncKind::Iff: return kLevelIff;
    default: return kLevelPrimary;
    }
  default:
    return kLevelPrimary;
  }
}

void print_rec(const Formula& f, std::string& out);

void print_child(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    print_rec(f, out);
    out += ')';
  } else {
    print_rec(f, out);
  }
}

void print_args(const Formula& f, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < f->args.size(); ++i) {
    if (i) out += ", ";
    print_rec(f->args[i], out);
  }
  out += ')';
}

void print_rec(const Formula& f, std::string& out) {
  switch (f->kind) {
  case NodeKind::True: out += "true"; return;
  case NodeKind::False: out += "false"; return;
  case NodeKind::Atom: out += f->prop + "@" + f->var; return;
  case NodeKind::Exists:
  case NodeKind::Forall:
    out += f->kind == NodeKind::Exists ? "exists " : "forall ";
    out += f->var + ". ";
    print_rec(f->args[0], out);
    return;
  case NodeKind::Next:
    out += "X ";
    print_child(f->args[0], kLevelUnary, out);
    return;
  case NodeKind::Until:
  case NodeKind::Release:
  case NodeKind::DUntil:
  case NodeKind::DRelease: {
    bool until = f->kind == NodeKind::Until || f->kind == NodeKind::DUntil;
    bool disc = f->kind == NodeKind::DUntil || f->kind == NodeKind::DRelease;
    std::string tag = disc ? "[" + f->eta.str() + "]" : "";
    if (level(f) == kLevelUnary) {
      out += (until ? "F" : "G") + tag + " ";
      print_child(f->args[1], kLevelUnary, out);
      return;
    }
    print_child(f->args[0], kLevelUnary, out);
    out += std::string(until ? " U" : " R") + tag + " ";
    print_child(f->args[1], kLevelUnary, out);
    return;
  }
  case NodeKind::Func:
    break;
  }
  const auto& a = f->args;
  switch (f->func.kind) {
  case FuncKind::Not:
    out += "!";
    print_child(a[0], kLevelUnary, out);
    return;
  case FuncKind::Or:
  case FuncKind::And: {
    int lvl = f->func.kind == FuncKind::Or ? kLevelOr : kLevelAnd;
    const char* sep = f->func.kind == FuncKind::Or ? " | " : " & ";
    if (a.size() == 1) {
      out += f->func.kind == FuncKind::Or ? "or" : "and";
      print_args(f, out);
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) out += sep;
      print_child(a[i], lvl + 1, out);
    }
    return;
  }
  case FuncKind::Implies:
    print_child(a[0], kLevelImplies + 1, out);
    out += " -> ";
    print_child(a[1], kLevelImplies + 1, out);
    return;
  case FuncKind::Iff:
    print_child(a[0], kLevelIff + 1, out);
    out += " <-> ";
    print_child(a[1], kLevelIff + 1, out);
    return;
  case FuncKind::Oplus: {
    out += "oplus[";
    if (a.size() == 2) {
      out += f->func.params[0].str();
    } else {
      for (std::size_t i = 0; i < f->func.params.size(); ++i) {
        if (i) out += ",";
        out += f->func.params[i].str();
      }
    }
    out += "]";
    print_args(f, out);
    return;
  }
  case FuncKind::Scale:
    out += "scale[" + f->func.params[0].str() + "]";
    print_args(f, out);
    return;
  case FuncKind::ThresholdGt:
    out += "thr[" + f->func.params[0].str() + "]";
    print_args(f, out);
    return;
  case FuncKind::Agree:
    out += "agree";
    print_args(f, out);
    return;
  }
}

} // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}

} // namespace hyperqual
