#include "hyperqual/formula.hpp"

#include <cctype>
#include <set>

namespace hyperqual {

namespace {

enum class Tok { Ident, Number, LParen, RParen, LBrack, RBrack, Comma, Dot, At, Semi, Bang, Bar, Amp, Arrow, DArrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' || s[j] == '/')) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto two = s.substr(i, 2);
    auto three = s.substr(i, 3);
    if (three == "<->") {
      out.push_back({Tok::DArrow, "<->", l, cl});
      advance(3);
      continue;
    }
    if (two == "->") {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
    case '(': k = Tok::LParen; break;
    case ')': k = Tok::RParen; break;
    case '[': k = Tok::LBrack; break;
    case ']': k = Tok::RBrack; break;
    case ',': k = Tok::Comma; break;
    case '.': k = Tok::Dot; break;
    case '@': k = Tok::At; break;
    case ';': k = Tok::Semi; break;
    case '!': k = Tok::Bang; break;
    case '|': k = Tok::Bar; break;
    case '&': k = Tok::Amp; break;
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), low_(opts.low) {
    for (const auto& v : opts.free_vars) bound_.insert(v);
  }

  Formula parse_file() {
    while (peek().kind == Tok::Ident && peek().text == "low" && peek(1).kind == Tok::Ident) {
      next();
      low_ = ident_list(Tok::Semi);
      expect(Tok::Semi, "';'");
    }
    std::vector<std::pair<Quant, std::string>> prefix;
    std::set<std::string> prefix_vars;
    while (peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists") &&
           peek(1).kind == Tok::Ident) {
      Quant q = next().text == "forall" ? Quant::Forall : Quant::Exists;
      const Token& v = expect(Tok::Ident, "trace variable");
      if (!prefix_vars.insert(v.text).second || bound_.count(v.text))
        throw ParseError("variable '" + v.text + "' bound twice", v.line, v.col);
      bound_.insert(v.text);
      expect(Tok::Dot, "'.'");
      prefix.emplace_back(q, v.text);
    }
    Formula body = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return join_prefix(prefix, body);
  }

private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what + (peek().kind == Tok::End ? " at end of input" : " but found '" + peek().text + "'"));
    return next();
  }

  bool at_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }
  bool at_keyword(std::string_view s) const { return at_ident(s) && peek(1).kind != Tok::At; }

  std::vector<std::string> ident_list(Tok terminator) {
    std::vector<std::string> out;
    if (peek().kind == terminator) return out;
    out.push_back(expect(Tok::Ident, "proposition").text);
    while (peek().kind == Tok::Comma) {
      next();
      out.push_back(expect(Tok::Ident, "proposition").text);
    }
    return out;
  }

  Rational number(bool unit) {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail("expected a rational number");
    next();
    Rational r;
    try {
      r = Rational::parse(t.text);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), t.line, t.col);
    }
    if (unit && !r.in_unit_interval()) throw ParseError("parameter " + r.str() + " outside [0,1]", t.line, t.col);
    return r;
  }

  std::vector<Rational> number_list() {
    std::vector<Rational> out{number(true)};
    while (peek().kind == Tok::Comma) {
      next();
      out.push_back(number(true));
    }
    return out;
  }

  DiscountSeq discount() {
    expect(Tok::LBrack, "'['");
    const Token& t = expect(Tok::Ident, "discount sequence");
    DiscountSeq d;
    if (t.text == "harmonic") {
      d = DiscountSeq::harmonic();
    } else if (t.text == "exp") {
      expect(Tok::LParen, "'('");
      const Token& nt = peek();
      Rational l = number(false);
      if (l <= Rational(0) || l >= Rational(1))
        throw ParseError("discount factor " + l.str() + " must lie in (0,1)", nt.line, nt.col);
      d = DiscountSeq::exp(l);
      expect(Tok::RParen, "')'");
    } else {
      throw ParseError("unknown discount sequence '" + t.text + "'", t.line, t.col);
    }
    expect(Tok::RBrack, "']'");
    return d;
  }

  Formula parse_iff() {
    Formula a = parse_implies();
    if (peek().kind == Tok::DArrow) {
      next();
      Formula b = parse_implies();
      return f_iff(a, b);
    }
    return a;
  }

  Formula parse_implies() {
    Formula a = parse_or();
    if (peek().kind == Tok::Arrow) {
      next();
      return f_implies(a, parse_implies());
    }
    return a;
  }

  Formula parse_or() {
    std::vector<Formula> xs{parse_and()};
    while (peek().kind == Tok::Bar) {
      next();
      xs.push_back(parse_and());
    }
    return xs.size() == 1 ? xs[0] : f_or(std::move(xs));
  }

  Formula parse_and() {
    std::vector<Formula> xs{parse_until()};
    while (peek().kind == Tok::Amp) {
      next();
      xs.push_back(parse_until());
    }
    return xs.size() == 1 ? xs[0] : f_and(std::move(xs));
  }

  Formula parse_until() {
    Formula a = parse_unary();
    if (at_keyword("U") || at_keyword("R")) {
      bool until = next().text == "U";
      std::optional<DiscountSeq> eta;
      if (peek().kind == Tok::LBrack) eta = discount();
      Formula b = parse_until();
      if (eta) return until ? f_duntil(*eta, a, b) : f_drelease(*eta, a, b);
      return until ? f_until(a, b) : f_release(a, b);
    }
    return a;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::Bang) {
      next();
      return f_not(parse_unary());
    }
    if (at_keyword("X")) {
      next();
      return f_next(parse_unary());
    }
    if (at_keyword("F") || at_keyword("G")) {
      bool ev = next().text == "F";
      if (peek().kind == Tok::LBrack) {
        DiscountSeq d = discount();
        Formula a = parse_unary();
        return ev ? f_deventually(d, a) : f_dglobally(d, a);
      }
      Formula a = parse_unary();
      return ev ? f_eventually(a) : f_globally(a);
    }
    return parse_primary();
  }

  std::string bound_var() {
    const Token& t = expect(Tok::Ident, "trace variable");
    if (!bound_.count(t.text)) throw ParseError("unbound variable '" + t.text + "'", t.line, t.col);
    return t.text;
  }

  std::vector<Formula> call_args() {
    expect(Tok::LParen, "'('");
    std::vector<Formula> xs{parse_iff()};
    while (peek().kind == Tok::Comma) {
      next();
      xs.push_back(parse_iff());
    }
    expect(Tok::RParen, "')'");
    return xs;
  }

  std::pair<std::string, std::string> var_pair() {
    expect(Tok::LParen, "'('");
    std::string a = bound_var();
    expect(Tok::Comma, "','");
    std::string b = bound_var();
    expect(Tok::RParen, "')'");
    return {a, b};
  }

  Formula checked_call(const Token& at, FuncSymbol f, std::vector<Formula> args) {
    if (static_cast<int>(args.size()) != f.arity)
      throw ParseError("'" + at.text + "' expects " + std::to_string(f.arity) + " argument(s), got " +
                           std::to_string(args.size()),
                       at.line, at.col);
    try {
      return f_func(std::move(f), std::move(args));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at.line, at.col);
    }
  }

  Formula parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    if (peek(1).kind == Tok::At) {
      std::string prop = next().text;
      next();
      return f_atom(prop, bound_var());
    }
    const std::string name = t.text;
    if (name == "forall" || name == "exists") fail("quantifier not in prefix position");
    if (name == "true") {
      next();
      return f_true();
    }
    if (name == "false") {
      next();
      return f_false();
    }
    const Token at = next();
    if (name == "oplus") {
      expect(Tok::LBrack, "'['");
      std::vector<Rational> cs = number_list();
      expect(Tok::RBrack, "']'");
      std::vector<Formula> args = call_args();
      if (cs.size() == 1 && args.size() == 2) return checked_call(at, FuncSymbol::make_oplus(cs[0]), std::move(args));
      if (cs.size() != args.size())
        throw ParseError("oplus needs one coefficient per argument", at.line, at.col);
      return checked_call(at, FuncSymbol::make_oplus(cs), std::move(args));
    }
    if (name == "scale" || name == "thr") {
      expect(Tok::LBrack, "'['");
      Rational p = number(true);
      expect(Tok::RBrack, "']'");
      FuncSymbol f = name == "scale" ? FuncSymbol::make_scale(p) : FuncSymbol::make_threshold(p);
      return checked_call(at, f, call_args());
    }
    if (name == "agree") return checked_call(at, FuncSymbol::make_agree(), call_args());
    if (name == "not") return checked_call(at, FuncSymbol::make_not(), call_args());
    if (name == "implies") return checked_call(at, FuncSymbol::make_implies(), call_args());
    if (name == "iff") return checked_call(at, FuncSymbol::make_iff(), call_args());
    if (name == "or" || name == "and") {
      std::vector<Formula> args = call_args();
      int n = static_cast<int>(args.size());
      return checked_call(at, name == "or" ? FuncSymbol::make_or(n) : FuncSymbol::make_and(n), std::move(args));
    }
    if (name == "loweq" || name == "ratio" || name == "traceeq") {
      std::vector<std::string> props = low_;
      if (peek().kind == Tok::LBrack) {
        next();
        props = ident_list(Tok::RBrack);
        expect(Tok::RBrack, "']'");
      }
      auto [a, b] = var_pair();
      if (name == "loweq") return macro_loweq(props, a, b);
      if (name == "ratio") return macro_ratio(props, a, b);
      return macro_traceeq(props, a, b);
    }
    if (name == "dummy") {
      expect(Tok::LBrack, "'['");
      std::string lambda = expect(Tok::Ident, "proposition").text;
      std::vector<std::string> others;
      if (peek().kind == Tok::Semi) {
        next();
        others = ident_list(Tok::RBrack);
      }
      expect(Tok::RBrack, "']'");
      expect(Tok::LParen, "'('");
      std::string a = bound_var();
      expect(Tok::RParen, "')'");
      return macro_dummy(lambda, others, a);
    }
    throw ParseError("unknown identifier '" + name + "' (atoms are written prop@var)", at.line, at.col);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> low_;
  std::set<std::string> bound_;
};

} // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  Parser p(lex(text), opts);
  return p.parse_file();
}

} // namespace hyperqual
