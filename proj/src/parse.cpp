/* Text front end: tokenizer and recursive-descent parser for the statement
 * grammar, plus the JSON exchange reader.  Grammar, informally:
 *
 *   map       :=  stmt (separator stmt)*          separator: ';' or newline
 *   stmt      :=  name '=' expr
 *   expr      :=  term (('+'|'-') term)*
 *   term      :=  unary (('*'|'/'|juxtapose) unary)*
 *   unary     :=  ('+'|'-')* power
 *   power     :=  atom ['^' natural]
 *   atom      :=  number | name | name '(' expr ')' | '(' expr ')'
 *
 * Juxtaposition multiplies ("3t", "2(1+t)").  Only sin and cos are callable,
 * and their argument must be a bare parameter name.  '#' starts a comment. */

#include <cctype>
#include <map>
#include <memory>
#include <set>

#include <json.hpp>

#include "simplicit/param.hpp"

namespace simplicit {
namespace {

struct Token {
  enum Kind { number, symbol, lparen, rparen, plus, minus, star, slash,
              caret, equals, semi, end } kind;
  std::string text;
  int line, col;
};

[[noreturn]] void syntax(const Token& at, const std::string& msg) {
  fail(ErrorCode::syntax_error, "line " + std::to_string(at.line) + ", col " +
                                    std::to_string(at.col) + ": " + msg);
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_identifier(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, int l, int c) {
    out.push_back(Token{k, std::move(t), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    int l = line, co = col;
    auto advance = [&](std::size_t k) {
      for (std::size_t j = 0; j < k; ++j, ++i) {
        if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
      }
    };
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') { push(Token::semi, "\n", l, co); advance(1); continue; }
    if (c == ' ' || c == '\t' || c == '\r') { advance(1); continue; }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      bool dot = false;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) ||
              (text[j] == '.' && !dot))) {
        if (text[j] == '.') dot = true;
        ++j;
      }
      std::string lit(text.substr(i, j - i));
      if (lit == ".") syntax(Token{Token::number, lit, l, co}, "stray '.'");
      push(Token::number, lit, l, co);
      advance(j - i);
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      push(Token::symbol, std::string(text.substr(i, j - i)), l, co);
      advance(j - i);
      continue;
    }
    switch (c) {
      case '(': push(Token::lparen, "(", l, co); break;
      case ')': push(Token::rparen, ")", l, co); break;
      case '+': push(Token::plus, "+", l, co); break;
      case '-': push(Token::minus, "-", l, co); break;
      case '*': push(Token::star, "*", l, co); break;
      case '/': push(Token::slash, "/", l, co); break;
      case '^': push(Token::caret, "^", l, co); break;
      case '=': push(Token::equals, "=", l, co); break;
      case ';': push(Token::semi, ";", l, co); break;
      default:
        syntax(Token{Token::end, std::string(1, c), l, co},
               std::string("unexpected character '") + c + "'");
    }
    advance(1);
  }
  out.push_back(Token{Token::end, "", line, col});
  return out;
}

struct Node {
  enum Kind { num, sym, call, add, sub, mul, div, neg, pw } kind;
  Rat value;
  std::string name;  // sym: identifier; call: function name
  int exponent = 0;
  std::unique_ptr<Node> a, b;
};
using NodePtr = std::unique_ptr<Node>;

const std::set<std::string> kSupportedCalls = {"sin", "cos"};
const std::set<std::string> kKnownCalls = {
    "sin", "cos", "tan", "cot", "sec", "csc", "sinh", "cosh", "tanh",
    "exp", "log", "ln", "sqrt", "abs", "asin", "acos", "atan"};

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t begin, std::size_t end,
             bool allow_trig)
      : toks_(toks), pos_(begin), end_(end), allow_trig_(allow_trig) {}

  NodePtr parse() {
    NodePtr e = expr();
    if (pos_ != end_) syntax(cur(), "unexpected '" + cur().text + "'");
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_ < end_ ? pos_ : end_]; }
  bool at(Token::Kind k) const { return pos_ < end_ && toks_[pos_].kind == k; }
  const Token& take() { return toks_[pos_++]; }

  NodePtr expr() {
    NodePtr e = term();
    while (at(Token::plus) || at(Token::minus)) {
      bool add = take().kind == Token::plus;
      NodePtr r = term();
      NodePtr n = std::make_unique<Node>();
      n->kind = add ? Node::add : Node::sub;
      n->a = std::move(e);
      n->b = std::move(r);
      e = std::move(n);
    }
    return e;
  }

  bool starts_operand() const {
    return at(Token::number) || at(Token::symbol) || at(Token::lparen);
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      bool mul;
      if (at(Token::star)) { take(); mul = true; }
      else if (at(Token::slash)) { take(); mul = false; }
      else if (starts_operand()) { mul = true; }  // juxtaposition
      else break;
      NodePtr r = unary();
      NodePtr n = std::make_unique<Node>();
      n->kind = mul ? Node::mul : Node::div;
      n->a = std::move(e);
      n->b = std::move(r);
      e = std::move(n);
    }
    return e;
  }

  NodePtr unary() {
    bool negate = false;
    while (at(Token::plus) || at(Token::minus)) {
      if (take().kind == Token::minus) negate = !negate;
    }
    NodePtr e = power();
    if (negate) {
      NodePtr n = std::make_unique<Node>();
      n->kind = Node::neg;
      n->a = std::move(e);
      e = std::move(n);
    }
    return e;
  }

  NodePtr power() {
    NodePtr base = atom();
    if (!at(Token::caret)) return base;
    take();
    if (at(Token::minus))
      syntax(cur(), "negative exponents are only supported through the JSON "
                    "term format");
    if (!at(Token::number) || cur().text.find('.') != std::string::npos)
      syntax(cur(), "exponent must be a natural-number literal");
    const Token& t = take();
    long v = 0;
    for (char c : t.text) {
      v = v * 10 + (c - '0');
      if (v > 1'000'000) syntax(t, "exponent too large");
    }
    NodePtr n = std::make_unique<Node>();
    n->kind = Node::pw;
    n->exponent = static_cast<int>(v);
    n->a = std::move(base);
    return n;
  }

  NodePtr atom() {
    if (at(Token::number)) {
      const Token& t = take();
      NodePtr n = std::make_unique<Node>();
      n->kind = Node::num;
      n->value = rat_from_string(t.text);
      return n;
    }
    if (at(Token::symbol)) {
      const Token& t = take();
      if (at(Token::lparen) && kKnownCalls.count(t.text)) {
        if (!kSupportedCalls.count(t.text))
          fail(ErrorCode::unsupported_function,
               "line " + std::to_string(t.line) + ", col " +
                   std::to_string(t.col) + ": function '" + t.text +
                   "' is not supported (only sin and cos)");
        if (!allow_trig_)
          fail(ErrorCode::invalid_input,
               "trigonometric functions are not allowed in this context");
        take();  // '('
        if (!at(Token::symbol))
          fail(ErrorCode::invalid_input,
               "argument of " + t.text + " must be a bare parameter name");
        const Token& arg = take();
        if (!at(Token::rparen))
          fail(ErrorCode::invalid_input,
               "argument of " + t.text + " must be a bare parameter name");
        take();  // ')'
        NodePtr n = std::make_unique<Node>();
        n->kind = Node::call;
        n->name = t.text;
        NodePtr a = std::make_unique<Node>();
        a->kind = Node::sym;
        a->name = arg.text;
        n->a = std::move(a);
        return n;
      }
      NodePtr n = std::make_unique<Node>();
      n->kind = Node::sym;
      n->name = t.text;
      return n;
    }
    if (at(Token::lparen)) {
      const Token& open = take();
      NodePtr e = expr();
      if (!at(Token::rparen)) syntax(open, "unbalanced '('");
      take();
      return e;
    }
    syntax(cur(), pos_ < end_ ? "unexpected '" + cur().text + "'"
                              : "unexpected end of expression");
  }

  const std::vector<Token>& toks_;
  std::size_t pos_, end_;
  bool allow_trig_;
};

void collect_symbols(const Node* n, std::vector<std::string>& bare,
                     std::vector<std::string>& trig_args) {
  if (!n) return;
  auto remember = [](std::vector<std::string>& v, const std::string& s) {
    for (const auto& x : v)
      if (x == s) return;
    v.push_back(s);
  };
  if (n->kind == Node::sym) remember(bare, n->name);
  if (n->kind == Node::call) {
    remember(trig_args, n->a->name);
    return;  // argument symbol is not a bare occurrence
  }
  collect_symbols(n->a.get(), bare, trig_args);
  collect_symbols(n->b.get(), bare, trig_args);
}

RationalFunction to_rational_function(
    const Node* n, const std::vector<std::string>& vars,
    const std::map<std::string, std::size_t>& index) {
  switch (n->kind) {
    case Node::num:
      return RationalFunction(MultiPoly::constant(vars, n->value));
    case Node::sym:
      return RationalFunction(MultiPoly::variable(vars, index.at(n->name)));
    case Node::call:
      return RationalFunction(
          MultiPoly::variable(vars, index.at(n->name + "(" + n->a->name + ")")));
    case Node::neg:
      return -to_rational_function(n->a.get(), vars, index);
    case Node::add:
      return to_rational_function(n->a.get(), vars, index) +
             to_rational_function(n->b.get(), vars, index);
    case Node::sub:
      return to_rational_function(n->a.get(), vars, index) -
             to_rational_function(n->b.get(), vars, index);
    case Node::mul:
      return to_rational_function(n->a.get(), vars, index) *
             to_rational_function(n->b.get(), vars, index);
    case Node::div:
      return to_rational_function(n->a.get(), vars, index) /
             to_rational_function(n->b.get(), vars, index);
    case Node::pw:
      return to_rational_function(n->a.get(), vars, index)
          .pow(static_cast<unsigned>(n->exponent));
  }
  fail(ErrorCode::internal, "unhandled expression node");
}

ParametricMap parse_text_map(std::string_view text) {
  std::vector<Token> toks = tokenize(text);

  struct Stmt { std::string name; NodePtr rhs; };
  std::vector<Stmt> stmts;
  std::size_t i = 0;
  while (i < toks.size() && toks[i].kind != Token::end) {
    if (toks[i].kind == Token::semi) { ++i; continue; }
    if (toks[i].kind != Token::symbol || toks[i + 1].kind != Token::equals)
      syntax(toks[i], "expected 'name = expression'");
    std::string name = toks[i].text;
    std::size_t begin = i + 2, end = begin;
    while (toks[end].kind != Token::semi && toks[end].kind != Token::end) ++end;
    if (end == begin) syntax(toks[begin], "empty right-hand side");
    ExprParser p(toks, begin, end, /*allow_trig=*/true);
    stmts.push_back(Stmt{std::move(name), p.parse()});
    i = end;
  }
  if (stmts.empty())
    fail(ErrorCode::invalid_input, "input defines no coordinates");

  std::vector<std::string> coord_names;
  for (const auto& s : stmts) {
    for (const auto& seen : coord_names)
      if (seen == s.name)
        fail(ErrorCode::invalid_input,
             "coordinate '" + s.name + "' defined twice");
    coord_names.push_back(s.name);
  }

  std::vector<std::string> bare, trig_args;
  for (const auto& s : stmts) collect_symbols(s.rhs.get(), bare, trig_args);
  for (const auto& b : bare) {
    for (const auto& t : trig_args)
      if (b == t)
        fail(ErrorCode::mixed_trig,
             "parameter '" + b + "' appears both bare and inside sin/cos");
    for (const auto& cn : coord_names)
      if (b == cn)
        fail(ErrorCode::invalid_input,
             "name '" + b + "' used as both coordinate and parameter");
  }
  for (const auto& t : trig_args)
    for (const auto& cn : coord_names)
      if (t == cn)
        fail(ErrorCode::invalid_input,
             "name '" + t + "' used as both coordinate and parameter");

  std::vector<std::string> params = bare;
  params.insert(params.end(), trig_args.begin(), trig_args.end());
  if (params.empty())
    fail(ErrorCode::invalid_input, "input uses no parameters");
  if (coord_names.size() != params.size() + 1)
    fail(ErrorCode::invalid_input,
         "a map with " + std::to_string(params.size()) +
             " parameter(s) must define " + std::to_string(params.size() + 1) +
             " coordinates, got " + std::to_string(coord_names.size()));

  std::vector<std::string> vars = bare;
  for (const auto& t : trig_args) {
    vars.push_back("sin(" + t + ")");
    vars.push_back("cos(" + t + ")");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < vars.size(); ++k) index[vars[k]] = k;

  ParametricMap map;
  map.params = params;
  map.coord_names = coord_names;
  for (const auto& s : stmts)
    map.coords.push_back(to_rational_function(s.rhs.get(), vars, index));

  if (!trig_args.empty()) {
    map.source_form = ParametricMap::SourceForm::trigonometric;
    return half_angle(map);
  }
  bool rational = false;
  for (auto& c : map.coords) {
    c = reduced(c);
    if (!c.is_polynomial()) rational = true;
  }
  map.source_form = rational ? ParametricMap::SourceForm::rational
                             : ParametricMap::SourceForm::polynomial;
  return map;
}

MultiPoly poly_from_json(const nlohmann::json& j,
                         const std::vector<std::string>& vars,
                         std::vector<std::pair<MultiPoly::Exponents, Rat>>& raw) {
  /* Returns a placeholder; actual terms (possibly Laurent) accumulate in raw
   * so the caller can shift num and den together. */
  if (j.is_string()) {
    std::vector<Token> toks = tokenize(j.get<std::string>());
    std::size_t end = 0;
    while (toks[end].kind != Token::end) {
      if (toks[end].kind == Token::semi)
        fail(ErrorCode::syntax_error, "unexpected ';' in JSON expression");
      ++end;
    }
    ExprParser p(toks, 0, end, /*allow_trig=*/false);
    NodePtr ast = p.parse();
    std::vector<std::string> bare, trig;
    collect_symbols(ast.get(), bare, trig);
    for (const auto& b : bare) {
      bool known = false;
      for (const auto& v : vars) known = known || v == b;
      if (!known)
        fail(ErrorCode::invalid_input,
             "symbol '" + b + "' is not a declared parameter");
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < vars.size(); ++k) index[vars[k]] = k;
    RationalFunction rf = to_rational_function(ast.get(), vars, index);
    if (!rf.is_polynomial())
      fail(ErrorCode::invalid_input,
           "JSON numerator/denominator strings must be polynomial; use "
           "separate num and den fields");
    for (const auto& [e, c] : rf.num().terms()) raw.emplace_back(e, c);
    return MultiPoly(vars);
  }
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    fail(ErrorCode::invalid_input,
         "polynomial must be a string or an object with a 'terms' array");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coef"))
      fail(ErrorCode::invalid_input, "term needs 'exp' and 'coef'");
    const auto& je = t["exp"];
    if (!je.is_array() || je.size() != vars.size())
      fail(ErrorCode::invalid_input,
           "term exponent vector must have one entry per parameter");
    MultiPoly::Exponents e;
    for (const auto& v : je) {
      if (!v.is_number_integer())
        fail(ErrorCode::invalid_input, "exponents must be integers");
      long long x = v.get<long long>();
      if (x < -1'000'000 || x > 1'000'000)
        fail(ErrorCode::range_overflow, "exponent out of supported range");
      e.push_back(static_cast<int>(x));
    }
    Rat c;
    if (t["coef"].is_string())
      c = rat_from_string(t["coef"].get<std::string>());
    else if (t["coef"].is_number_integer())
      c = Rat(t["coef"].get<long long>());
    else
      fail(ErrorCode::invalid_input,
           "coefficients must be integers or rational strings");
    raw.emplace_back(std::move(e), std::move(c));
  }
  return MultiPoly(vars);
}

ParametricMap parse_json_map(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::syntax_error, std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("params") || !j.contains("coords"))
    fail(ErrorCode::invalid_input, "JSON map needs 'params' and 'coords'");

  std::vector<std::string> params;
  for (const auto& p : j["params"]) {
    if (!p.is_string() || !valid_identifier(p.get<std::string>()))
      fail(ErrorCode::invalid_input, "parameter names must be identifiers");
    params.push_back(p.get<std::string>());
  }
  if (params.empty()) fail(ErrorCode::invalid_input, "no parameters declared");
  std::set<std::string> seen(params.begin(), params.end());
  if (seen.size() != params.size())
    fail(ErrorCode::invalid_input, "duplicate parameter name");

  const auto& jc = j["coords"];
  if (!jc.is_array() || jc.size() != params.size() + 1)
    fail(ErrorCode::invalid_input,
         "a map with " + std::to_string(params.size()) +
             " parameter(s) must define " + std::to_string(params.size() + 1) +
             " coordinates");

  static const char* kDefault3[] = {"x", "y", "z"};
  ParametricMap map;
  map.params = params;
  bool rational = false;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const auto& c = jc[i];
    if (!c.is_object() || !c.contains("num"))
      fail(ErrorCode::invalid_input, "each coordinate needs a 'num'");
    std::string name;
    if (c.contains("name")) {
      name = c["name"].get<std::string>();
      if (!valid_identifier(name))
        fail(ErrorCode::invalid_input, "coordinate names must be identifiers");
    } else {
      name = jc.size() <= 3 ? kDefault3[i] : "x" + std::to_string(i);
    }
    if (seen.count(name))
      fail(ErrorCode::invalid_input,
           "name '" + name + "' used as both coordinate and parameter");
    for (const auto& prev : map.coord_names)
      if (prev == name)
        fail(ErrorCode::invalid_input, "coordinate '" + name + "' defined twice");
    map.coord_names.push_back(name);

    std::vector<std::pair<MultiPoly::Exponents, Rat>> num_raw, den_raw;
    poly_from_json(c["num"], params, num_raw);
    if (c.contains("den"))
      poly_from_json(c["den"], params, den_raw);
    else
      den_raw.emplace_back(MultiPoly::Exponents(params.size(), 0), Rat(1));

    // Laurent terms: shift num and den together by the most negative exponent.
    std::vector<int> shift(params.size(), 0);
    for (const auto& [e, cc] : num_raw)
      for (std::size_t k = 0; k < e.size(); ++k) shift[k] = std::min(shift[k], e[k]);
    for (const auto& [e, cc] : den_raw)
      for (std::size_t k = 0; k < e.size(); ++k) shift[k] = std::min(shift[k], e[k]);
    MultiPoly num(params), den(params);
    auto build = [&](MultiPoly& dst,
                     const std::vector<std::pair<MultiPoly::Exponents, Rat>>& src) {
      for (const auto& [e, cc] : src) {
        MultiPoly::Exponents adj(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) adj[k] = e[k] - shift[k];
        dst.add_term(adj, cc);
      }
    };
    build(num, num_raw);
    build(den, den_raw);
    if (den.is_zero())
      fail(ErrorCode::denominator_zero,
           "coordinate '" + name + "' has an identically zero denominator");
    RationalFunction rf = reduced(RationalFunction(num, den));
    rational = rational || !rf.is_polynomial();
    map.coords.push_back(std::move(rf));
  }
  map.source_form = rational ? ParametricMap::SourceForm::rational
                             : ParametricMap::SourceForm::polynomial;
  return map;
}

}  // namespace

ParametricMap parse_map(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() &&
         (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r'))
    ++i;
  if (i < text.size() && text[i] == '{') return parse_json_map(text);
  return parse_text_map(text);
}

}  // namespace simplicit
