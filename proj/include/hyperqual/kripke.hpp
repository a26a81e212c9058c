#pragma once

#include "hyperqual/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hyperqual {

/// One position of a weighted trace: a weight per proposition, in the
/// proposition order of the enclosing structure.
using Letter = std::vector<Rational>;

/// Ultimately periodic trace stem . loop^omega.
struct Lasso {
  std::vector<Letter> stem;
  std::vector<Letter> loop;

  std::size_t size() const { return stem.size() + loop.size(); }
  const Letter& at(std::size_t i) const {
    return i < stem.size() ? stem[i] : loop[(i - stem.size()) % loop.size()];
  }
  /// Shortest stem, primitive loop.
  Lasso normalized() const;
  /// Equality of the denoted infinite words.
  bool same_word(const Lasso& o) const;

  friend bool operator==(const Lasso&, const Lasso&) = default;
  friend auto operator<=>(const Lasso&, const Lasso&) = default;
};

/// Binding of trace variables to lassos, in binding order.
struct LassoAssignment {
  std::vector<std::string> vars;
  std::vector<Lasso> lassos;

  void bind(std::string var, Lasso l) {
    vars.push_back(std::move(var));
    lassos.push_back(std::move(l));
  }
  void unbind() {
    vars.pop_back();
    lassos.pop_back();
  }
  /// Index of the binding of `var`, or -1.
  int find(std::string_view var) const {
    for (std::size_t i = vars.size(); i-- > 0;)
      if (vars[i] == var) return static_cast<int>(i);
    return -1;
  }
};

struct WeightedKripke {
  std::vector<std::string> aps;
  std::vector<Rational> weights; // sorted, duplicate-free
  std::vector<std::string> states;
  std::vector<int> initial;
  std::vector<std::vector<int>> succ;
  std::vector<Letter> labels; // labels[s][ap]

  std::size_t num_states() const { return states.size(); }
  int weight_index(const Rational& w) const;
  int ap_index(std::string_view p) const;
  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

WeightedKripke parse_kripke(std::string_view text);
std::string print_kripke(const WeightedKripke& k);

/// Name of proposition p on trace variable i (1-based) in a self product.
std::string indexed_prop(const std::string& p, int i);

/// Synchronous product of n copies. Propositions are ordered by copy, then by
/// the original order: p@1, q@1, p@2, q@2, ...
WeightedKripke self_product(const WeightedKripke& k, int n);

/// Encodes a tuple of lassos as a single lasso over the concatenated letters.
/// The stem has the length of the longest stem and the loop the lcm of loops.
Lasso encode_assignment(const std::vector<Lasso>& lassos);
/// Component i (0-based) of an encoded lasso with `width` propositions per
/// component.
Lasso project_component(const Lasso& encoded, int i, int width);

/// All lassos of k with stem length <= max_stem and loop length <= max_loop,
/// in normal form, each exactly once, sorted.
std::vector<Lasso> lasso_enumerate(const WeightedKripke& k, int max_stem, int max_loop);

/// True if the lasso labels some path of k.
bool is_lasso_of(const WeightedKripke& k, const Lasso& l);

/// Parses lines `var: letters | letters` (stem, then loop). A letter is a
/// comma-separated list `p=w`; omitted propositions are 0. When `aps` is
/// empty the propositions are collected from the text and sorted; the
/// resolved list is written back.
LassoAssignment parse_assignment(std::string_view text, std::vector<std::string>& aps);

std::string format_letter(const std::vector<std::string>& aps, const Letter& l);
std::string format_lasso(const std::vector<std::string>& aps, const Lasso& l);

} // namespace hyperqual
