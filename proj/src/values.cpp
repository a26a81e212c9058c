#include "hyperqual/values.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hyperqual {

ValueSet::ValueSet(std::initializer_list<Rational> xs) : ValueSet(std::vector<Rational>(xs)) {}

ValueSet::ValueSet(const std::vector<Rational>& xs) : values_(xs) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  for (const auto& v : values_)
    if (!v.in_unit_interval()) throw std::invalid_argument("value " + v.str() + " outside [0,1]");
}

ValueSet::ValueSet(const std::set<Rational>& xs) : ValueSet(std::vector<Rational>(xs.begin(), xs.end())) {}

bool ValueSet::contains(const Rational& r) const { return std::binary_search(values_.begin(), values_.end(), r); }

std::string ValueSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ", ";
    out += values_[i].str();
  }
  return out + "}";
}

namespace {

const ValueSet& overapprox_rec(const Formula& f, const ValueSet& atoms, std::map<const Node*, ValueSet>& memo) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  ValueSet out;
  switch (f->kind) {
  case NodeKind::True:
    out = ValueSet{Rational(1)};
    break;
  case NodeKind::False:
    out = ValueSet{Rational(0)};
    break;
  case NodeKind::Atom:
    out = atoms;
    break;
  case NodeKind::Next:
  case NodeKind::Exists:
  case NodeKind::Forall:
    out = overapprox_rec(f->args[0], atoms, memo);
    break;
  case NodeKind::Until:
  case NodeKind::Release: {
    std::set<Rational> s;
    for (const auto& a : f->args)
      for (const auto& v : overapprox_rec(a, atoms, memo)) s.insert(v);
    out = ValueSet(s);
    break;
  }
  case NodeKind::DUntil:
  case NodeKind::DRelease:
    throw std::invalid_argument("value set requested for a formula with discounted operators");
  case NodeKind::Func: {
    std::vector<const ValueSet*> sets;
    for (const auto& a : f->args) sets.push_back(&overapprox_rec(a, atoms, memo));
    std::set<Rational> s;
    std::vector<Rational> tuple(sets.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == sets.size()) {
        s.insert(f->func.apply(tuple));
        return;
      }
      for (const auto& v : *sets[i]) {
        tuple[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    out = ValueSet(s);
    break;
  }
  }
  return memo.emplace(f.get(), std::move(out)).first->second;
}

ValueSet with_bounds(const ValueSet& w) {
  std::vector<Rational> xs = w.values();
  xs.push_back(Rational(0));
  xs.push_back(Rational(1));
  return ValueSet(xs);
}

} // namespace

std::map<const Node*, ValueSet> value_overapprox_nodes(const Formula& f, const ValueSet& w) {
  std::map<const Node*, ValueSet> memo;
  overapprox_rec(f, with_bounds(w), memo);
  return memo;
}

ValueSet value_overapprox(const Formula& f, const ValueSet& w) {
  std::map<const Node*, ValueSet> memo;
  return overapprox_rec(f, with_bounds(w), memo);
}

ValueSet lattice_truncate(const DiscountedLattice& l, const Rational& a) {
  if (a <= Rational(0)) throw std::invalid_argument("truncation point must be positive");
  std::set<Rational> out;
  std::set<std::pair<Rational, int>> seen;
  std::function<void(const Rational&, int)> rec = [&](const Rational& p, int depth) {
    if (!seen.insert({p, depth}).second) return;
    out.insert(p);
    if (depth == l.k) return;
    for (const auto& eta : l.H) {
      for (std::size_t i = 0;; ++i) {
        Rational q = p * eta.at(i);
        if (q < a) break;
        rec(q, depth + 1);
      }
    }
  };
  for (const auto& w : with_bounds(l.W))
    if (w >= a) rec(w, 0);
  return ValueSet(out);
}

Rational nearest_below(const DiscountedLattice& l, const Rational& v) {
  if (v <= Rational(0)) throw std::invalid_argument("nearest_below needs v > 0");
  if (v > Rational(1)) throw std::invalid_argument("nearest_below needs v <= 1");
  Rational best(0);
  for (const auto& w : with_bounds(l.W))
    if (w < v) best = max(best, w);
  if (l.k == 0 || l.H.empty()) return best;
  Rational a(0);
  for (const auto& eta : l.H) a = max(a, eta.at(eta.first_index_below(v, true)));
  for (const auto& x : lattice_truncate(l, a))
    if (x < v) best = max(best, x);
  return best;
}

Rational nearest_above(const DiscountedLattice& l, const Rational& v) {
  if (v <= Rational(0)) throw std::invalid_argument("nearest_above undefined at 0: lattice values accumulate at 0");
  if (v >= Rational(1)) throw std::invalid_argument("nearest_above needs v < 1");
  for (const auto& x : lattice_truncate(l, v))
    if (x > v) return x;
  return Rational(1);
}

bool lattice_contains(const DiscountedLattice& l, const Rational& v) {
  if (v.is_zero()) return true;
  if (!v.in_unit_interval()) return false;
  return lattice_truncate(l, v).contains(v);
}

} // namespace hyperqual
