#include "fdqubo/fzn.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fdqubo::fzn {

ParseError::ParseError(Position pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         message),
      pos_(pos) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  ident,
  integer,
  string,
  dotdot,
  colon,
  coloncolon,
  semicolon,
  comma,
  lbracket,
  rbracket,
  lbrace,
  rbrace,
  lparen,
  rparen,
  equals,
  minus,
  end
};

std::string tok_name(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::string: return "string";
    case Tok::dotdot: return "'..'";
    case Tok::colon: return "':'";
    case Tok::coloncolon: return "'::'";
    case Tok::semicolon: return "';'";
    case Tok::comma: return "','";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::equals: return "'='";
    case Tok::minus: return "'-'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::end;
  std::string text;
  Position pos;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  Position pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') {
        advance(1);
      }
      continue;
    }
    Token t;
    t.pos = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      t.kind = Tok::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        throw ParseError(pos, "float literals are not supported");
      }
      t.kind = Tok::integer;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        ++j;
      }
      if (j >= src.size() || src[j] != '"') {
        throw ParseError(pos, "unterminated string literal");
      }
      t.kind = Tok::string;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else {
      auto two = src.substr(i, 2);
      if (two == "..") {
        t.kind = Tok::dotdot;
        advance(2);
      } else if (two == "::") {
        t.kind = Tok::coloncolon;
        advance(2);
      } else {
        switch (c) {
          case ':': t.kind = Tok::colon; break;
          case ';': t.kind = Tok::semicolon; break;
          case ',': t.kind = Tok::comma; break;
          case '[': t.kind = Tok::lbracket; break;
          case ']': t.kind = Tok::rbracket; break;
          case '{': t.kind = Tok::lbrace; break;
          case '}': t.kind = Tok::rbrace; break;
          case '(': t.kind = Tok::lparen; break;
          case ')': t.kind = Tok::rparen; break;
          case '=': t.kind = Tok::equals; break;
          case '-': t.kind = Tok::minus; break;
          default:
            throw ParseError(pos, std::string("unexpected character '") + c + "'");
        }
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.pos = pos;
  out.push_back(eof);
  return out;
}

// ---------------------------------------------------------------------------
// Symbol lookup shared by the parser, validator and lowering.

enum class SymbolKind { param, param_array, var, var_array };

class Scope {
 public:
  Scope() = default;
  explicit Scope(const FznModel& m) {
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      symbols_[m.params[i].name] = {m.params[i].is_array ? SymbolKind::param_array : SymbolKind::param, i};
    }
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
      symbols_[m.vars[i].name] = {SymbolKind::var, i};
    }
    for (std::size_t i = 0; i < m.var_arrays.size(); ++i) {
      symbols_[m.var_arrays[i].name] = {SymbolKind::var_array, i};
    }
  }

  struct Entry {
    SymbolKind kind;
    std::size_t index;
  };

  const Entry* find(const std::string& name) const {
    auto it = symbols_.find(name);
    return it == symbols_.end() ? nullptr : &it->second;
  }
  bool declare(const std::string& name, SymbolKind kind, std::size_t index) {
    return symbols_.emplace(name, Entry{kind, index}).second;
  }

 private:
  std::map<std::string, Entry> symbols_;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  FznModel run() {
    bool have_solve = false;
    while (peek().kind != Tok::end) {
      if (have_solve) {
        throw ParseError(peek().pos, "unexpected item after solve item");
      }
      const Token& t = peek();
      if (t.kind != Tok::ident) {
        throw expected("an item");
      }
      if (t.text == "constraint") {
        parse_constraint();
      } else if (t.text == "solve") {
        parse_solve();
        have_solve = true;
      } else if (t.text == "var") {
        parse_var();
      } else if (t.text == "array") {
        parse_array();
      } else if (t.text == "int" || t.text == "bool") {
        parse_param();
      } else if (t.text == "predicate") {
        throw ParseError(t.pos, "predicate declarations are not supported");
      } else if (t.text == "float" || t.text == "set") {
        throw ParseError(t.pos, "unsupported type '" + t.text + "'");
      } else {
        throw expected("an item");
      }
    }
    if (!have_solve) {
      throw ParseError(peek().pos, "missing solve item");
    }
    return std::move(model_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) {
      ++pos_;
    }
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind == kind) {
      take();
      return true;
    }
    return false;
  }
  bool accept_word(const char* word) {
    if (peek().kind == Tok::ident && peek().text == word) {
      take();
      return true;
    }
    return false;
  }
  ParseError expected(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::end ? "end of input"
                                           : (t.text.empty() ? tok_name(t.kind) : "'" + t.text + "'");
    return ParseError(t.pos, "expected " + what + ", found " + found);
  }
  Token expect(Tok kind) {
    if (peek().kind != kind) {
      throw expected(tok_name(kind));
    }
    return take();
  }
  void expect_word(const char* word) {
    if (!accept_word(word)) {
      throw expected(std::string("'") + word + "'");
    }
  }
  std::string expect_ident() { return expect(Tok::ident).text; }

  std::int64_t parse_int() {
    bool neg = accept(Tok::minus);
    Token t = expect(Tok::integer);
    try {
      std::int64_t v = std::stoll(t.text);
      return neg ? -v : v;
    } catch (const std::out_of_range&) {
      throw ParseError(t.pos, "integer literal out of range");
    }
  }

  struct TypeSpec {
    BaseType base = BaseType::integer;
    std::optional<Domain> domain;  // nullopt for unbounded `int`
  };

  TypeSpec parse_type() {
    const Token& t = peek();
    if (accept_word("int")) {
      return {BaseType::integer, std::nullopt};
    }
    if (accept_word("bool")) {
      return {BaseType::boolean, Domain::binary()};
    }
    if (t.kind == Tok::ident && (t.text == "float" || t.text == "set")) {
      throw ParseError(t.pos, "unsupported type '" + t.text + "'");
    }
    if (accept(Tok::lbrace)) {
      std::vector<std::int64_t> values;
      if (peek().kind != Tok::rbrace) {
        do {
          values.push_back(parse_int());
        } while (accept(Tok::comma));
      }
      Position at = peek().pos;
      expect(Tok::rbrace);
      if (values.empty()) {
        throw ParseError(at, "empty set domain");
      }
      return {BaseType::integer, Domain::set(std::move(values))};
    }
    if (t.kind == Tok::integer || t.kind == Tok::minus) {
      Position at = t.pos;
      std::int64_t lo = parse_int();
      expect(Tok::dotdot);
      std::int64_t hi = parse_int();
      if (lo > hi) {
        throw ParseError(at, "empty range domain " + std::to_string(lo) + ".." + std::to_string(hi));
      }
      return {BaseType::integer, Domain::interval(lo, hi)};
    }
    throw expected("a type");
  }

  // Returns the names of annotations seen.
  std::vector<std::string> parse_annotations() {
    std::vector<std::string> names;
    while (accept(Tok::coloncolon)) {
      names.push_back(expect_ident());
      if (accept(Tok::lparen)) {
        int depth = 1;
        while (depth > 0) {
          Token t = take();
          if (t.kind == Tok::end) {
            throw ParseError(t.pos, "unterminated annotation");
          }
          depth += t.kind == Tok::lparen ? 1 : t.kind == Tok::rparen ? -1 : 0;
        }
      }
    }
    return names;
  }

  Expr parse_expr() {
    const Token& t = peek();
    if (t.kind == Tok::integer || t.kind == Tok::minus) {
      return Expr{parse_int()};
    }
    if (t.kind == Tok::lbracket) {
      take();
      ExprList items;
      if (peek().kind != Tok::rbracket) {
        do {
          items.push_back(parse_expr());
        } while (accept(Tok::comma));
      }
      expect(Tok::rbracket);
      return Expr{std::move(items)};
    }
    if (t.kind == Tok::ident) {
      Token id = take();
      if (id.text == "true" || id.text == "false") {
        return Expr{id.text == "true"};
      }
      const auto* sym = scope_.find(id.text);
      if (sym == nullptr) {
        throw ParseError(id.pos, "undeclared identifier '" + id.text + "'");
      }
      if (accept(Tok::lbracket)) {
        std::int64_t index = parse_int();
        expect(Tok::rbracket);
        if (sym->kind != SymbolKind::param_array && sym->kind != SymbolKind::var_array) {
          throw ParseError(id.pos, "'" + id.text + "' is not an array");
        }
        return Expr{Expr::Access{id.text, index}};
      }
      return Expr{id.text};
    }
    throw expected("an expression");
  }

  void declare(const Token& name, SymbolKind kind, std::size_t index) {
    if (!scope_.declare(name.text, kind, index)) {
      throw ParseError(name.pos, "duplicate declaration of '" + name.text + "'");
    }
  }

  void parse_param() {
    Position at = peek().pos;
    TypeSpec type = parse_type();
    if (type.domain && type.base == BaseType::integer) {
      throw ParseError(at, "constrained parameter types are not supported");
    }
    expect(Tok::colon);
    Token name = expect(Tok::ident);
    parse_annotations();
    expect(Tok::equals);
    ParamDecl decl;
    decl.name = name.text;
    decl.type = type.base;
    decl.pos = at;
    decl.values.push_back(parse_scalar_literal(type.base));
    expect(Tok::semicolon);
    declare(name, SymbolKind::param, model_.params.size());
    model_.params.push_back(std::move(decl));
  }

  std::int64_t parse_scalar_literal(BaseType base) {
    if (base == BaseType::boolean) {
      if (accept_word("true")) {
        return 1;
      }
      if (accept_word("false")) {
        return 0;
      }
      throw expected("a boolean literal");
    }
    return parse_int();
  }

  void parse_var() {
    Position at = take().pos;  // var
    TypeSpec type = parse_type();
    if (!type.domain) {
      throw ParseError(at, "variables need a finite domain");
    }
    expect(Tok::colon);
    Token name = expect(Tok::ident);
    auto annotations = parse_annotations();
    VarDecl decl;
    decl.name = name.text;
    decl.type = type.base;
    decl.domain = *type.domain;
    decl.output = std::count(annotations.begin(), annotations.end(), "output_var") > 0;
    decl.pos = at;
    if (accept(Tok::equals)) {
      Expr value = parse_expr();
      if (!value.is_int() && !value.is_bool() && !value.is_ident()) {
        throw ParseError(at, "variable initialisers must be a literal or an identifier");
      }
      decl.value = std::move(value);
    }
    expect(Tok::semicolon);
    declare(name, SymbolKind::var, model_.vars.size());
    model_.vars.push_back(std::move(decl));
  }

  void parse_array() {
    Position at = take().pos;  // array
    expect(Tok::lbracket);
    std::int64_t lo = parse_int();
    expect(Tok::dotdot);
    std::int64_t hi = parse_int();
    expect(Tok::rbracket);
    if (lo != 1 || hi < 0) {
      throw ParseError(at, "array index sets must be 1..n");
    }
    expect_word("of");
    bool is_var = accept_word("var");
    TypeSpec type = parse_type();
    expect(Tok::colon);
    Token name = expect(Tok::ident);
    auto annotations = parse_annotations();
    expect(Tok::equals);
    Position lit_at = peek().pos;
    if (is_var) {
      Expr lit = parse_expr();
      if (!lit.is_array()) {
        throw ParseError(lit_at, "expected an array literal");
      }
      VarArrayDecl decl;
      decl.name = name.text;
      decl.type = type.base;
      decl.elements = std::get<ExprList>(std::move(lit.value));
      decl.output = std::count(annotations.begin(), annotations.end(), "output_array") > 0;
      decl.pos = at;
      for (const auto& e : decl.elements) {
        if (e.is_array()) {
          throw ParseError(lit_at, "nested arrays are not supported");
        }
      }
      check_length(lit_at, decl.elements.size(), hi);
      expect(Tok::semicolon);
      declare(name, SymbolKind::var_array, model_.var_arrays.size());
      model_.var_arrays.push_back(std::move(decl));
      return;
    }
    if (type.domain && type.base == BaseType::integer) {
      throw ParseError(at, "constrained parameter types are not supported");
    }
    ParamDecl decl;
    decl.name = name.text;
    decl.type = type.base;
    decl.is_array = true;
    decl.pos = at;
    expect(Tok::lbracket);
    if (peek().kind != Tok::rbracket) {
      do {
        decl.values.push_back(parse_scalar_literal(type.base));
      } while (accept(Tok::comma));
    }
    expect(Tok::rbracket);
    check_length(lit_at, decl.values.size(), hi);
    expect(Tok::semicolon);
    declare(name, SymbolKind::param_array, model_.params.size());
    model_.params.push_back(std::move(decl));
  }

  static void check_length(Position at, std::size_t actual, std::int64_t declared) {
    if (static_cast<std::int64_t>(actual) != declared) {
      throw ParseError(at, "array literal has " + std::to_string(actual) + " elements, expected " +
                               std::to_string(declared));
    }
  }

  void parse_constraint() {
    Position at = take().pos;  // constraint
    ConstraintItem item;
    item.pos = at;
    item.predicate = expect_ident();
    expect(Tok::lparen);
    if (peek().kind != Tok::rparen) {
      do {
        item.args.push_back(parse_expr());
      } while (accept(Tok::comma));
    }
    expect(Tok::rparen);
    parse_annotations();
    expect(Tok::semicolon);
    model_.constraints.push_back(std::move(item));
  }

  void parse_solve() {
    take();  // solve
    parse_annotations();
    SolveItem solve;
    if (accept_word("satisfy")) {
      solve.sense = Sense::satisfy;
    } else if (accept_word("minimize")) {
      solve.sense = Sense::minimize;
      solve.objective = parse_expr();
    } else if (accept_word("maximize")) {
      solve.sense = Sense::maximize;
      solve.objective = parse_expr();
    } else {
      throw expected("'satisfy', 'minimize' or 'maximize'");
    }
    if (solve.objective && solve.objective->is_array()) {
      throw ParseError(peek().pos, "objective must be a scalar");
    }
    expect(Tok::semicolon);
    model_.solve = std::move(solve);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  FznModel model_;
  Scope scope_;
};

// ---------------------------------------------------------------------------
// Argument classification

/// A scalar argument resolved to a constant or a declared variable index.
struct Term {
  std::optional<std::int64_t> constant;
  std::size_t var = 0;  // index into FznModel::vars
};

class Resolver {
 public:
  explicit Resolver(const FznModel& m) : m_(m), scope_(m) {}

  std::optional<Term> scalar(const Expr& e) const {
    if (e.is_int()) {
      return Term{std::get<std::int64_t>(e.value)};
    }
    if (e.is_bool()) {
      return Term{std::get<bool>(e.value) ? 1 : 0};
    }
    if (e.is_ident()) {
      const auto* sym = scope_.find(std::get<std::string>(e.value));
      if (sym == nullptr) {
        return std::nullopt;
      }
      if (sym->kind == SymbolKind::param) {
        return Term{m_.params[sym->index].values.at(0)};
      }
      if (sym->kind == SymbolKind::var) {
        return Term{std::nullopt, sym->index};
      }
      return std::nullopt;
    }
    if (e.is_access()) {
      const auto& acc = std::get<Expr::Access>(e.value);
      const auto* sym = scope_.find(acc.array);
      if (sym == nullptr || acc.index < 1) {
        return std::nullopt;
      }
      auto idx = static_cast<std::size_t>(acc.index - 1);
      if (sym->kind == SymbolKind::param_array) {
        const auto& vals = m_.params[sym->index].values;
        return idx < vals.size() ? std::optional<Term>(Term{vals[idx]}) : std::nullopt;
      }
      if (sym->kind == SymbolKind::var_array) {
        const auto& elems = m_.var_arrays[sym->index].elements;
        return idx < elems.size() ? scalar(elems[idx]) : std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<Term>> array(const Expr& e) const {
    const ExprList* items = nullptr;
    std::vector<Term> out;
    if (e.is_array()) {
      items = &std::get<ExprList>(e.value);
    } else if (e.is_ident()) {
      const auto* sym = scope_.find(std::get<std::string>(e.value));
      if (sym == nullptr) {
        return std::nullopt;
      }
      if (sym->kind == SymbolKind::param_array) {
        for (auto v : m_.params[sym->index].values) {
          out.push_back(Term{v});
        }
        return out;
      }
      if (sym->kind != SymbolKind::var_array) {
        return std::nullopt;
      }
      items = &m_.var_arrays[sym->index].elements;
    } else {
      return std::nullopt;
    }
    for (const auto& item : *items) {
      auto t = scalar(item);
      if (!t) {
        return std::nullopt;
      }
      out.push_back(*t);
    }
    return out;
  }

  std::optional<std::vector<std::int64_t>> int_array(const Expr& e) const {
    auto terms = array(e);
    if (!terms) {
      return std::nullopt;
    }
    std::vector<std::int64_t> out;
    for (const auto& t : *terms) {
      if (!t.constant) {
        return std::nullopt;
      }
      out.push_back(*t.constant);
    }
    return out;
  }

 private:
  const FznModel& m_;
  Scope scope_;
};

struct PredicateShape {
  enum Arg { scalar, int_array, term_array };
  std::vector<Arg> args;
};

const std::map<std::string, PredicateShape>& predicate_shapes() {
  static const std::map<std::string, PredicateShape> shapes = {
      {"int_lin_eq", {{PredicateShape::int_array, PredicateShape::term_array, PredicateShape::scalar}}},
      {"int_lin_le", {{PredicateShape::int_array, PredicateShape::term_array, PredicateShape::scalar}}},
      {"int_times", {{PredicateShape::scalar, PredicateShape::scalar, PredicateShape::scalar}}},
      {"int_eq", {{PredicateShape::scalar, PredicateShape::scalar}}},
      {"int_le", {{PredicateShape::scalar, PredicateShape::scalar}}},
      {"bool2int", {{PredicateShape::scalar, PredicateShape::scalar}}},
  };
  return shapes;
}

std::string where(const Position& p) {
  return " (line " + std::to_string(p.line) + ")";
}

std::vector<std::string> constraint_diagnostics(const ConstraintItem& c, const Resolver& r) {
  std::vector<std::string> diags;
  const auto& shapes = predicate_shapes();
  auto it = shapes.find(c.predicate);
  if (it == shapes.end()) {
    diags.push_back("unsupported predicate " + c.predicate + where(c.pos));
    return diags;
  }
  const auto& shape = it->second;
  if (c.args.size() != shape.args.size()) {
    diags.push_back(c.predicate + " expects " + std::to_string(shape.args.size()) +
                    " arguments, got " + std::to_string(c.args.size()) + where(c.pos));
    return diags;
  }
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    bool ok = false;
    switch (shape.args[i]) {
      case PredicateShape::scalar: ok = r.scalar(c.args[i]).has_value(); break;
      case PredicateShape::int_array: ok = r.int_array(c.args[i]).has_value(); break;
      case PredicateShape::term_array: ok = r.array(c.args[i]).has_value(); break;
    }
    if (!ok) {
      diags.push_back(c.predicate + " argument " + std::to_string(i + 1) + " has the wrong kind" +
                      where(c.pos));
    }
  }
  if (shape.args[0] == PredicateShape::int_array && diags.empty()) {
    if (r.int_array(c.args[0])->size() != r.array(c.args[1])->size()) {
      diags.push_back(c.predicate + " coefficient and variable arrays differ in length" +
                      where(c.pos));
    }
  }
  return diags;
}

// ---------------------------------------------------------------------------
// Printing

void print_expr(std::ostream& os, const Expr& e) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          os << v;
        } else if constexpr (std::is_same_v<T, bool>) {
          os << (v ? "true" : "false");
        } else if constexpr (std::is_same_v<T, std::string>) {
          os << v;
        } else if constexpr (std::is_same_v<T, Expr::Access>) {
          os << v.array << '[' << v.index << ']';
        } else {
          os << '[';
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) {
              os << ", ";
            }
            print_expr(os, v[i]);
          }
          os << ']';
        }
      },
      e.value);
}

std::string type_text(BaseType type, const Domain& d) {
  if (type == BaseType::boolean) {
    return "bool";
  }
  return d.str();
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& supported_predicates() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, shape] : predicate_shapes()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

FznModel parse_model(std::string_view text, const ParseOptions& options) {
  FznModel model = Parser(text).run();
  if (options.check_subset) {
    Resolver r(model);
    for (const auto& c : model.constraints) {
      auto diags = constraint_diagnostics(c, r);
      if (!diags.empty()) {
        throw ParseError(c.pos, diags.front());
      }
    }
  }
  return model;
}

std::vector<std::string> validate_subset(const FznModel& model) {
  std::vector<std::string> diags;
  Resolver r(model);
  for (const auto& c : model.constraints) {
    auto more = constraint_diagnostics(c, r);
    diags.insert(diags.end(), more.begin(), more.end());
  }
  for (const auto& v : model.vars) {
    if (v.value && !r.scalar(*v.value)) {
      diags.push_back("variable " + v.name + " has an unsupported initialiser" + where(v.pos));
    }
  }
  if (model.solve.objective && !r.scalar(*model.solve.objective)) {
    diags.push_back("unsupported objective expression");
  }
  return diags;
}

std::string print_model(const FznModel& model) {
  std::ostringstream os;
  for (const auto& p : model.params) {
    const char* base = p.type == BaseType::boolean ? "bool" : "int";
    auto lit = [&](std::int64_t v) {
      if (p.type == BaseType::boolean) {
        os << (v ? "true" : "false");
      } else {
        os << v;
      }
    };
    if (p.is_array) {
      os << "array [1.." << p.values.size() << "] of " << base << ": " << p.name << " = [";
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (i) {
          os << ", ";
        }
        lit(p.values[i]);
      }
      os << "];\n";
    } else {
      os << base << ": " << p.name << " = ";
      lit(p.values.at(0));
      os << ";\n";
    }
  }
  for (const auto& v : model.vars) {
    os << "var " << type_text(v.type, v.domain) << ": " << v.name;
    if (v.output) {
      os << " :: output_var";
    }
    if (v.value) {
      os << " = ";
      print_expr(os, *v.value);
    }
    os << ";\n";
  }
  for (const auto& a : model.var_arrays) {
    const char* base = a.type == BaseType::boolean ? "bool" : "int";
    os << "array [1.." << a.elements.size() << "] of var " << base << ": " << a.name;
    if (a.output) {
      os << " :: output_array([1.." << a.elements.size() << "])";
    }
    os << " = ";
    print_expr(os, Expr{a.elements});
    os << ";\n";
  }
  for (const auto& c : model.constraints) {
    os << "constraint " << c.predicate << '(';
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) {
        os << ", ";
      }
      print_expr(os, c.args[i]);
    }
    os << ");\n";
  }
  os << "solve ";
  if (model.solve.sense == Sense::satisfy) {
    os << "satisfy";
  } else {
    os << (model.solve.sense == Sense::minimize ? "minimize " : "maximize ");
    print_expr(os, *model.solve.objective);
  }
  os << ";\n";
  return os.str();
}

Outcome<QipModel> lower_to_qip(const FznModel& fzn) {
  auto diags = validate_subset(fzn);
  if (!diags.empty()) {
    throw std::invalid_argument("model is outside the supported subset: " + diags.front());
  }
  Resolver r(fzn);
  QipModel qip;
  std::vector<VarId> ids;
  ids.reserve(fzn.vars.size());
  for (const auto& v : fzn.vars) {
    ids.push_back(qip.add_variable(v.name, v.domain, VarKind::original));
  }

  auto affine = [&](const Term& t, const Rational& coeff) {
    return t.constant ? AffineExpr(coeff * Rational(*t.constant))
                      : AffineExpr::term(ids[t.var], coeff);
  };
  auto fail = [](std::string reason) -> Outcome<QipModel> { return Inconsistent{std::move(reason)}; };

  // Fixed values and aliases.
  for (std::size_t i = 0; i < fzn.vars.size(); ++i) {
    const auto& v = fzn.vars[i];
    if (!v.value) {
      continue;
    }
    Term t = *r.scalar(*v.value);
    if (t.constant) {
      auto fixed = qip.var(ids[i]).domain.restrict_to(*t.constant, *t.constant);
      if (!fixed) {
        return fail("variable " + v.name + " fixed to " + std::to_string(*t.constant) +
                    " outside its domain " + v.domain.str());
      }
      qip.var(ids[i]).domain = *fixed;
    } else {
      AffineExpr e = AffineExpr::term(ids[i]);
      e.add_term(ids[t.var], -1);
      if (auto bad = qip.add_linear(std::move(e), Relation::eq_zero)) {
        return fail(bad->reason);
      }
    }
  }

  // Products are collected first and ordered afterwards.
  std::vector<ProductConstraint> pending;
  auto depends_on = [&](VarId from, VarId goal) {
    // True if `from` is (transitively) computed from `goal` by a pending product.
    std::vector<VarId> stack{from};
    std::set<VarId> seen;
    while (!stack.empty()) {
      VarId v = stack.back();
      stack.pop_back();
      if (v == goal) {
        return true;
      }
      if (!seen.insert(v).second) {
        continue;
      }
      for (const auto& p : pending) {
        if (p.result == v) {
          stack.push_back(p.lhs);
          stack.push_back(p.rhs);
        }
      }
    }
    return false;
  };

  for (const auto& c : fzn.constraints) {
    const std::string& pred = c.predicate;
    std::optional<Inconsistent> bad;
    if (pred == "int_lin_eq" || pred == "int_lin_le") {
      auto coeffs = *r.int_array(c.args[0]);
      auto terms = *r.array(c.args[1]);
      auto rhs = *r.scalar(c.args[2]);
      AffineExpr e;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        e.add(affine(terms[i], coeffs[i]));
      }
      e.add(affine(rhs, -1));
      bad = qip.add_linear(std::move(e), pred == "int_lin_eq" ? Relation::eq_zero : Relation::le_zero);
    } else if (pred == "int_eq" || pred == "bool2int" || pred == "int_le") {
      AffineExpr e = affine(*r.scalar(c.args[0]), 1);
      e.add(affine(*r.scalar(c.args[1]), -1));
      bad = qip.add_linear(std::move(e), pred == "int_le" ? Relation::le_zero : Relation::eq_zero);
    } else if (pred == "int_times") {
      Term a = *r.scalar(c.args[0]);
      Term b = *r.scalar(c.args[1]);
      Term out = *r.scalar(c.args[2]);
      if (a.constant || b.constant) {
        AffineExpr e = affine(out, 1);
        if (a.constant && b.constant) {
          e.add_constant(-Rational(*a.constant) * Rational(*b.constant));
        } else {
          const Term& k = a.constant ? a : b;
          const Term& z = a.constant ? b : a;
          e.add(affine(z, -Rational(*k.constant)));
        }
        bad = qip.add_linear(std::move(e), Relation::eq_zero);
      } else {
        VarId lhs = ids[a.var];
        VarId rhs = ids[b.var];
        const Domain& dl = qip.domain(lhs);
        const Domain& dr = qip.domain(rhs);
        auto [lo, hi] = lhs == rhs ? square_hull(dl.min(), dl.max())
                                   : product_hull(dl.min(), dl.max(), dr.min(), dr.max());
        bool reuse = false;
        if (!out.constant) {
          VarId res = ids[out.var];
          const Domain& dres = qip.domain(res);
          if (dres.max() < lo || dres.min() > hi || !dres.restrict_to(lo, hi)) {
            return fail("product " + fzn.vars[out.var].name + " = " + fzn.vars[a.var].name +
                        " * " + fzn.vars[b.var].name + " has no value in " + dres.str());
          }
          bool already_result = std::any_of(pending.begin(), pending.end(),
                                            [&](const auto& p) { return p.result == res; });
          reuse = !already_result && res != lhs && res != rhs && !depends_on(lhs, res) &&
                  !depends_on(rhs, res);
          if (reuse) {
            pending.push_back({res, lhs, rhs});
          }
        } else if (*out.constant < lo || *out.constant > hi) {
          return fail("product of " + fzn.vars[a.var].name + " and " + fzn.vars[b.var].name +
                      " can never equal " + std::to_string(*out.constant));
        }
        if (!reuse) {
          VarId y = qip.add_variable("(" + qip.var(lhs).name + "*" + qip.var(rhs).name + ")",
                                     Domain::interval(lo, hi), VarKind::product_result);
          pending.push_back({y, lhs, rhs});
          AffineExpr e = affine(out, 1);
          e.add_term(y, -1);
          bad = qip.add_linear(std::move(e), Relation::eq_zero);
        }
      }
    }
    if (bad) {
      return fail(bad->reason);
    }
  }

  // Order products so every factor is computed before it is used.
  std::vector<bool> placed(pending.size(), false);
  std::set<VarId> pending_results;
  for (const auto& p : pending) {
    pending_results.insert(p.result);
  }
  while (qip.products.size() < pending.size()) {
    std::size_t before = qip.products.size();
    for (std::size_t k = 0; k < pending.size(); ++k) {
      if (placed[k]) {
        continue;
      }
      const auto& p = pending[k];
      if (pending_results.count(p.lhs) == 0 && pending_results.count(p.rhs) == 0) {
        placed[k] = true;
        qip.products.push_back(p);
        pending_results.erase(p.result);
        break;
      }
    }
    if (qip.products.size() == before) {
      throw std::logic_error("cyclic product definitions");
    }
  }

  // Objective.
  qip.objective.sense = fzn.solve.sense;
  if (fzn.solve.objective) {
    Term t = *r.scalar(*fzn.solve.objective);
    qip.objective.expr = affine(t, fzn.solve.sense == Sense::maximize ? -1 : 1);
  }

  // Outputs; with no annotations every declared variable is reported.
  std::set<VarId> outs;
  for (std::size_t i = 0; i < fzn.vars.size(); ++i) {
    if (fzn.vars[i].output) {
      outs.insert(ids[i]);
    }
  }
  for (const auto& a : fzn.var_arrays) {
    if (!a.output) {
      continue;
    }
    for (const auto& e : a.elements) {
      if (auto t = r.scalar(e); t && !t->constant) {
        outs.insert(ids[t->var]);
      }
    }
  }
  bool annotated = !outs.empty() ||
                   std::any_of(fzn.var_arrays.begin(), fzn.var_arrays.end(),
                               [](const auto& a) { return a.output; });
  if (!annotated) {
    outs.insert(ids.begin(), ids.end());
  }
  qip.outputs.assign(outs.begin(), outs.end());
  qip.stage = Stage::raw;
  return qip;
}

}  // namespace fdqubo::fzn
