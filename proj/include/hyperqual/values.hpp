#pragma once

#include "hyperqual/formula.hpp"

#include <map>
#include <set>
#include <vector>

namespace hyperqual {

/// Sorted, duplicate-free set of rationals in [0,1].
class ValueSet {
public:
  ValueSet() = default;
  ValueSet(std::initializer_list<Rational> xs);
  explicit ValueSet(const std::vector<Rational>& xs);
  explicit ValueSet(const std::set<Rational>& xs);

  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(const Rational& r) const;
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }
  std::string str() const;

  friend bool operator==(const ValueSet&, const ValueSet&) = default;

private:
  std::vector<Rational> values_;
};

/// Over-approximation of the values a HyperLTL_prop formula can take when
/// atoms are weighted by W. Throws for discounted operators.
ValueSet value_overapprox(const Formula& f, const ValueSet& w);

/// Same computation, recording the set of every subformula node.
std::map<const Node*, ValueSet> value_overapprox_nodes(const Formula& f, const ValueSet& w);

/// V_{k,H,W}: {0,1}, W and products w * eta1_i1 * ... * etak'_ik' (k' <= k).
struct DiscountedLattice {
  int k = 0;
  std::set<DiscountSeq> H;
  ValueSet W;
};

/// All lattice values in [a,1]; a must be positive.
ValueSet lattice_truncate(const DiscountedLattice& l, const Rational& a);
/// Largest lattice value strictly below v (0 < v <= 1).
Rational nearest_below(const DiscountedLattice& l, const Rational& v);
/// Smallest lattice value strictly above v (0 < v < 1).
Rational nearest_above(const DiscountedLattice& l, const Rational& v);
/// Membership of a positive value, decided through truncation at v.
bool lattice_contains(const DiscountedLattice& l, const Rational& v);

} // namespace hyperqual
