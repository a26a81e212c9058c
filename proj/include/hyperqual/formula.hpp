#pragma once

#include "hyperqual/rational.hpp"

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperqual {

enum class FuncKind { Not, Or, And, Implies, Iff, Oplus, Scale, ThresholdGt, Agree };

/// A function symbol from the fixed catalog together with its parameters.
/// Oplus carries one coefficient per argument (nonnegative, summing to 1),
/// Scale and ThresholdGt carry a single parameter.
struct FuncSymbol {
  FuncKind kind = FuncKind::Not;
  std::vector<Rational> params;
  int arity = 1;

  static FuncSymbol make_not() { return {FuncKind::Not, {}, 1}; }
  static FuncSymbol make_or(int n = 2) { return {FuncKind::Or, {}, n}; }
  static FuncSymbol make_and(int n = 2) { return {FuncKind::And, {}, n}; }
  static FuncSymbol make_implies() { return {FuncKind::Implies, {}, 2}; }
  static FuncSymbol make_iff() { return {FuncKind::Iff, {}, 2}; }
  static FuncSymbol make_oplus(Rational alpha) { return {FuncKind::Oplus, {alpha, Rational(1) - alpha}, 2}; }
  static FuncSymbol make_oplus(std::vector<Rational> coeffs);
  static FuncSymbol make_scale(Rational alpha) { return {FuncKind::Scale, {alpha}, 1}; }
  static FuncSymbol make_threshold(Rational k) { return {FuncKind::ThresholdGt, {k}, 1}; }
  static FuncSymbol make_agree() { return {FuncKind::Agree, {}, 2}; }

  Rational apply(std::span<const Rational> xs) const;
  /// True for the connectives of Boolean LTL (Not, Or, And, Implies, Iff).
  bool is_boolean_connective() const;
  /// Throws std::invalid_argument when parameters or arity are inconsistent.
  void validate() const;

  friend bool operator==(const FuncSymbol&, const FuncSymbol&) = default;
};

enum class DiscountKind { Exp, Harmonic };

/// Discount sequence: Exp(l) gives l^i, Harmonic gives 1/(i+1).
struct DiscountSeq {
  DiscountKind kind = DiscountKind::Harmonic;
  Rational lambda{0};

  static DiscountSeq exp(Rational l);
  static DiscountSeq harmonic() { return {DiscountKind::Harmonic, Rational(0)}; }

  Rational at(std::size_t i) const;
  /// Smallest i with eta_i <= a (strict = false) or eta_i < a (strict = true).
  /// Requires a > 0.
  std::size_t first_index_below(const Rational& a, bool strict) const;
  std::string str() const;

  friend bool operator==(const DiscountSeq&, const DiscountSeq&) = default;
  friend auto operator<=>(const DiscountSeq& a, const DiscountSeq& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    return a.lambda <=> b.lambda;
  }
};

enum class NodeKind {
  True,
  False,
  Atom,
  Func,
  Next,
  Until,
  DUntil,
  Release,
  DRelease,
  Exists,
  Forall
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::True;
  std::string prop;  // Atom
  std::string var;   // Atom, Exists, Forall
  FuncSymbol func;   // Func
  DiscountSeq eta;   // DUntil, DRelease
  std::vector<Formula> args;

  bool is_quantifier() const { return kind == NodeKind::Exists || kind == NodeKind::Forall; }
  bool is_temporal() const {
    return kind == NodeKind::Next || kind == NodeKind::Until || kind == NodeKind::DUntil ||
           kind == NodeKind::Release || kind == NodeKind::DRelease;
  }
};

// Constructors.
Formula f_true();
Formula f_false();
Formula f_atom(std::string prop, std::string var);
Formula f_func(FuncSymbol f, std::vector<Formula> args);
Formula f_not(Formula a);
Formula f_or(Formula a, Formula b);
Formula f_and(Formula a, Formula b);
Formula f_or(std::vector<Formula> xs);
Formula f_and(std::vector<Formula> xs);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_next(Formula a);
Formula f_until(Formula a, Formula b);
Formula f_release(Formula a, Formula b);
Formula f_duntil(DiscountSeq eta, Formula a, Formula b);
Formula f_drelease(DiscountSeq eta, Formula a, Formula b);
Formula f_eventually(Formula a);
Formula f_globally(Formula a);
Formula f_deventually(DiscountSeq eta, Formula a);
Formula f_dglobally(DiscountSeq eta, Formula a);
Formula f_exists(std::string var, Formula a);
Formula f_forall(std::string var, Formula a);

/// Library-level macros over named proposition sets.
Formula macro_loweq(const std::vector<std::string>& low, const std::string& a, const std::string& b);
Formula macro_ratio(const std::vector<std::string>& low, const std::string& a, const std::string& b);
Formula macro_dummy(const std::string& lambda, const std::vector<std::string>& others, const std::string& a);
Formula macro_traceeq(const std::vector<std::string>& props, const std::string& a, const std::string& b);

bool structurally_equal(const Formula& a, const Formula& b);

enum class Quant { Exists, Forall };

struct Prefix {
  std::vector<std::pair<Quant, std::string>> quantifiers;
  Formula matrix;
};

/// Splits the quantifier prefix from the quantifier-free matrix.
/// Throws if a quantifier occurs below a non-quantifier node.
Prefix split_prefix(const Formula& f);
Formula join_prefix(const std::vector<std::pair<Quant, std::string>>& q, Formula matrix);

/// Maximal runs of equal quantifiers in a prefix.
struct QuantBlock {
  Quant quant;
  std::vector<std::string> vars;
};
std::vector<QuantBlock> quantifier_blocks(const Prefix& p);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> propositions(const Formula& f);
bool contains_quantifier(const Formula& f);
bool is_prenex(const Formula& f);

enum class Fragment { PROP, TEMP_FULL, TEMP_POS, TEMP_NEG, TEMP_EXISTS_ONLY, TEMP_FORALL_ONLY, BOOLEAN };
std::string fragment_name(Fragment f);

struct FormulaStats {
  int atom_count = 0;
  int quantifier_depth = 0;
  int alternation_count = 0;
  int discount_depth = 0;
  std::set<DiscountSeq> discount_seqs;
  Fragment fragment = Fragment::BOOLEAN;
  /// Membership flags; a formula may belong to several fragments while
  /// `fragment` reports the most specific exact one.
  bool is_boolean = false;
  bool is_prop = false;
  bool is_temp = false;
  bool temp_pos = false;
  bool temp_neg = false;
  bool exists_only = false;
  bool forall_only = false;
};

FormulaStats analyze(const Formula& f);
bool is_boolean_ltl(const Formula& f);
bool is_temp_positive(const Formula& f);
bool is_temp_negative(const Formula& f);

/// Dual of the negation: pushes a negation through the formula, swapping
/// quantifiers, until/release and their discounted variants.
Formula negate_dual(const Formula& f);

std::string print(const Formula& f);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
};

struct ParseOptions {
  /// Variables that may occur free.
  std::vector<std::string> free_vars;
  /// Default low proposition set for `loweq`/`ratio` without an explicit list.
  std::vector<std::string> low = {"l"};
};

Formula parse_formula(std::string_view text, const ParseOptions& opts = {});

} // namespace hyperqual
