#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fsc/replace.hpp"

namespace fsc {

struct SyntaxError : std::runtime_error {
  std::size_t pos;
  SyntaxError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " (at offset " + std::to_string(p) + ")"), pos(p) {}
};

struct UnbalancedBracket : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct UnknownOperator : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct UnboundVariable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tokens

enum class Tok {
  Sym, Str, Zero, Any, Boundary,
  LBracket, RBracket, LParen, RParen, LBrace, RBrace, LDot, RDot,
  Star, Plus, Ignore, IgnoreInside, Tilde, Dollar, Amp, Bar, Minus,
  Cross, Compose, Colon, Comma, Underscore, Semicolon,
  ArrowRight, ArrowLeft, ArrowBoth, OptArrowRight, OptArrowLeft, OptArrowBoth,
  MarkUp, MarkRight, MarkLeft, MarkDown,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos = 0;
};

namespace detail {

inline bool is_ident_char(char c) {
  static const std::string specials = "[](){}*+/~$&|-.,:;_?%<>\\=\"#! \t\n\r";
  return specials.find(c) == std::string::npos;
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> toks;
  std::size_t i = 0, n = src.size();
  auto starts = [&](const char* s) {
    return src.compare(i, std::char_traits<char>::length(s), s) == 0;
  };
  while (i < n) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t at = i;
    auto push = [&](Tok k, std::size_t len, std::string text = "") {
      toks.push_back(Token{k, std::move(text), at});
      i += len;
    };
    if (c == '%') {
      if (i + 1 >= n) throw SyntaxError("dangling escape", at);
      push(Tok::Sym, 2, std::string(1, src[i + 1]));
    } else if (c == '"') {
      std::size_t close = src.find('"', i + 1);
      if (close == std::string::npos) throw SyntaxError("unterminated string literal", at);
      push(Tok::Str, close - i + 1, src.substr(i + 1, close - i - 1));
    } else if (c == '[') {
      // "[." opens a dotted bracket unless it is a bracketed boundary "[.#."
      if (i + 1 < n && src[i + 1] == '.' && !starts("[.#.")) push(Tok::LDot, 2);
      else push(Tok::LBracket, 1);
    } else if (c == ']') {
      push(Tok::RBracket, 1);
    } else if (c == '.') {
      if (starts(".]")) push(Tok::RDot, 2);
      else if (starts(".#.")) push(Tok::Boundary, 3);
      else if (starts(".x.")) push(Tok::Cross, 3);
      else if (starts(".o.")) push(Tok::Compose, 3);
      else if (starts("./.")) push(Tok::IgnoreInside, 3);
      else throw UnknownOperator("unknown operator starting with '.'", at);
    } else if (c == '(') {
      if (starts("(->)")) push(Tok::OptArrowRight, 4);
      else if (starts("(<->)")) push(Tok::OptArrowBoth, 5);
      else if (starts("(<-)")) push(Tok::OptArrowLeft, 4);
      else push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == '{') {
      push(Tok::LBrace, 1);
    } else if (c == '}') {
      push(Tok::RBrace, 1);
    } else if (c == '*') {
      push(Tok::Star, 1);
    } else if (c == '+') {
      push(Tok::Plus, 1);
    } else if (c == '/') {
      if (starts("//")) push(Tok::MarkRight, 2);
      else push(Tok::Ignore, 1);
    } else if (c == '~') {
      push(Tok::Tilde, 1);
    } else if (c == '$') {
      push(Tok::Dollar, 1);
    } else if (c == '&') {
      push(Tok::Amp, 1);
    } else if (c == '|') {
      if (starts("||")) push(Tok::MarkUp, 2);
      else push(Tok::Bar, 1);
    } else if (c == '-') {
      if (starts("->")) push(Tok::ArrowRight, 2);
      else push(Tok::Minus, 1);
    } else if (c == '<') {
      if (starts("<->")) push(Tok::ArrowBoth, 3);
      else if (starts("<=") || starts("<=>"))
        throw UnknownOperator(
            "two-level rule notation (<=, <=>, =>) is not supported; use replacement rules", at);
      else if (starts("<-")) push(Tok::ArrowLeft, 2);
      else throw UnknownOperator("unexpected '<'", at);
    } else if (c == '=') {
      throw UnknownOperator(
          "two-level rule notation (<=, <=>, =>) is not supported; use replacement rules", at);
    } else if (c == '\\') {
      if (starts("\\\\")) push(Tok::MarkLeft, 2);
      else if (starts("\\/")) push(Tok::MarkDown, 2);
      else throw UnknownOperator("unexpected '\\'", at);
    } else if (c == ':') {
      push(Tok::Colon, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == '_') {
      push(Tok::Underscore, 1);
    } else if (c == ';') {
      push(Tok::Semicolon, 1);
    } else if (c == '?') {
      push(Tok::Any, 1);
    } else if (c == '0' && (i + 1 >= n || !is_ident_char(src[i + 1]))) {
      push(Tok::Zero, 1);
    } else if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < n && is_ident_char(src[j])) ++j;
      push(Tok::Sym, j - i, src.substr(i, j - i));
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", at);
    }
  }
  toks.push_back(Token{Tok::End, "", n});
  return toks;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// AST

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct RuleContextAst {
  AstPtr left;   // null = unspecified
  AstPtr right;  // null = unspecified
};

struct RuleClauseAst {
  std::vector<AstPtr> uppers;
  std::vector<AstPtr> lowers;
  std::vector<RuleContextAst> contexts;
};

struct Ast {
  enum class K {
    Name,         // symbol literal or variable reference, resolved at compile
    Pair,         // upper:lower symbol pair
    Epsilon, Any, Boundary,
    Str,          // quoted string: concatenation of single-character symbols
    DotBracketed, // [. inner .]
    Op,
    RuleSet,
  };
  K kind;
  std::string text;   // Name spelling, Str content, Pair upper spelling
  std::string text2;  // Pair lower spelling
  OpKind op = OpKind::Concat;
  std::vector<AstPtr> kids;

  std::vector<RuleClauseAst> clauses;
  Orientation orientation = Orientation::Upward;
  bool optional = false;
  Direction direction = Direction::Forward;
};

inline AstPtr make_ast(Ast::K k) {
  auto a = std::make_shared<Ast>();
  a->kind = k;
  return a;
}

inline AstPtr make_op(OpKind op, std::vector<AstPtr> kids) {
  auto a = std::make_shared<Ast>();
  a->kind = Ast::K::Op;
  a->op = op;
  a->kids = std::move(kids);
  return a;
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  const Token& peek(std::size_t ahead = 0) const {
    return toks[std::min(at + ahead, toks.size() - 1)];
  }
  bool check(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!check(k)) return false;
    ++at;
    return true;
  }
  Token expect(Tok k, const char* what) {
    if (!check(k)) throw SyntaxError(std::string("expected ") + what, peek().pos);
    return toks[at++];
  }

  static bool is_arrow(Tok k) {
    return k == Tok::ArrowRight || k == Tok::ArrowLeft || k == Tok::ArrowBoth ||
           k == Tok::OptArrowRight || k == Tok::OptArrowLeft || k == Tok::OptArrowBoth;
  }
  static bool is_marker(Tok k) {
    return k == Tok::MarkUp || k == Tok::MarkRight || k == Tok::MarkLeft || k == Tok::MarkDown;
  }

  bool starts_term() const {
    switch (peek().kind) {
      case Tok::Sym: case Tok::Str: case Tok::Zero: case Tok::Any: case Tok::Boundary:
      case Tok::LBracket: case Tok::LParen: case Tok::LDot: case Tok::Tilde: case Tok::Dollar:
        return true;
      default:
        return false;
    }
  }

  AstPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Sym: {
        ++at;
        if (accept(Tok::Colon)) return finish_pair(t.text);
        auto a = make_ast(Ast::K::Name);
        const_cast<Ast&>(*a).text = t.text;
        return a;
      }
      case Tok::Zero: {
        ++at;
        if (accept(Tok::Colon)) return finish_pair("0");
        return make_ast(Ast::K::Epsilon);
      }
      case Tok::Any: {
        ++at;
        if (accept(Tok::Colon)) return finish_pair("?");
        return make_ast(Ast::K::Any);
      }
      case Tok::Boundary:
        ++at;
        return make_ast(Ast::K::Boundary);
      case Tok::Str: {
        ++at;
        auto a = make_ast(Ast::K::Str);
        const_cast<Ast&>(*a).text = t.text;
        return a;
      }
      case Tok::LBracket: {
        ++at;
        if (accept(Tok::RBracket)) return make_ast(Ast::K::Epsilon);
        AstPtr inner = parse_expr();
        if (!accept(Tok::RBracket)) throw UnbalancedBracket("expected ']'", peek().pos);
        return inner;
      }
      case Tok::LParen: {
        ++at;
        AstPtr inner = parse_expr();
        if (!accept(Tok::RParen)) throw UnbalancedBracket("expected ')'", peek().pos);
        return make_op(OpKind::Option, {inner});
      }
      case Tok::LDot: {
        ++at;
        if (accept(Tok::RDot)) {
          auto a = make_ast(Ast::K::DotBracketed);
          const_cast<Ast&>(*a).kids.push_back(make_ast(Ast::K::Epsilon));
          return a;
        }
        AstPtr inner = parse_expr();
        if (!accept(Tok::RDot)) throw UnbalancedBracket("expected '.]'", peek().pos);
        auto a = make_ast(Ast::K::DotBracketed);
        const_cast<Ast&>(*a).kids.push_back(inner);
        return a;
      }
      default:
        throw SyntaxError("expected an expression", t.pos);
    }
  }

  AstPtr finish_pair(const std::string& upper) {
    const Token& t = peek();
    std::string lower;
    if (t.kind == Tok::Sym) lower = t.text;
    else if (t.kind == Tok::Zero) lower = "0";
    else if (t.kind == Tok::Any) lower = "?";
    else throw SyntaxError("expected a symbol after ':'", t.pos);
    ++at;
    auto a = make_ast(Ast::K::Pair);
    const_cast<Ast&>(*a).text = upper;
    const_cast<Ast&>(*a).text2 = lower;
    return a;
  }

  AstPtr parse_postfix() {
    AstPtr e = parse_primary();
    while (true) {
      if (accept(Tok::Star)) e = make_op(OpKind::Star, {e});
      else if (accept(Tok::Plus)) e = make_op(OpKind::Plus, {e});
      else if (accept(Tok::Ignore)) e = make_op(OpKind::Ignore, {e, parse_primary()});
      else if (accept(Tok::IgnoreInside)) e = make_op(OpKind::IgnoreInside, {e, parse_primary()});
      else break;
    }
    return e;
  }

  AstPtr parse_prefix() {
    if (accept(Tok::Tilde)) return make_op(OpKind::Complement, {parse_prefix()});
    if (accept(Tok::Dollar)) return make_op(OpKind::Contains, {parse_prefix()});
    return parse_postfix();
  }

  AstPtr parse_concat() {
    AstPtr e = parse_prefix();
    while (starts_term()) e = make_op(OpKind::Concat, {e, parse_prefix()});
    return e;
  }

  AstPtr parse_minus() {
    AstPtr e = parse_concat();
    while (accept(Tok::Minus)) e = make_op(OpKind::Minus, {e, parse_concat()});
    return e;
  }

  AstPtr parse_intersect() {
    AstPtr e = parse_minus();
    while (accept(Tok::Amp)) e = make_op(OpKind::Intersect, {e, parse_minus()});
    return e;
  }

  AstPtr parse_union() {
    AstPtr e = parse_intersect();
    while (accept(Tok::Bar)) e = make_op(OpKind::Union, {e, parse_intersect()});
    return e;
  }

  AstPtr parse_cross() {
    AstPtr e = parse_union();
    while (accept(Tok::Cross)) e = make_op(OpKind::Crossproduct, {e, parse_union()});
    return e;
  }

  AstPtr parse_compose() {
    AstPtr e = parse_cross();
    while (accept(Tok::Compose)) e = make_op(OpKind::Compose, {e, parse_cross()});
    return e;
  }

  // One brace group or unbraced rule clause; `first` is the already-parsed
  // first UPPER when called from expression context.
  struct ClauseResult {
    RuleClauseAst clause;
    Tok arrow;
    std::optional<Tok> marker;
  };

  ClauseResult parse_clause(AstPtr first_upper) {
    ClauseResult res;
    Tok arrow = peek().kind;
    if (!is_arrow(arrow)) throw SyntaxError("expected a replacement arrow", peek().pos);
    res.arrow = arrow;
    AstPtr upper = first_upper;
    while (true) {
      ++at;  // consume arrow (validated identical below)
      res.clause.uppers.push_back(upper);
      res.clause.lowers.push_back(parse_compose());
      if (!accept(Tok::Comma)) break;
      upper = parse_compose();
      if (!is_arrow(peek().kind)) throw SyntaxError("expected a replacement arrow", peek().pos);
      if (peek().kind != arrow)
        throw SyntaxError("mixed replacement arrows in one parallel set", peek().pos);
    }
    if (is_marker(peek().kind)) {
      res.marker = peek().kind;
      ++at;
      while (true) {
        RuleContextAst ctx;
        if (!check(Tok::Underscore)) ctx.left = parse_compose();
        expect(Tok::Underscore, "'_' in context");
        if (starts_term()) ctx.right = parse_compose();
        res.clause.contexts.push_back(std::move(ctx));
        if (check(Tok::Comma) && peek(1).kind != Tok::LBrace) {
          ++at;
          continue;
        }
        break;
      }
    }
    return res;
  }

  static Orientation marker_orientation(Tok t) {
    switch (t) {
      case Tok::MarkUp: return Orientation::Upward;
      case Tok::MarkRight: return Orientation::Right;
      case Tok::MarkLeft: return Orientation::Left;
      default: return Orientation::Downward;
    }
  }

  static Direction arrow_direction(Tok t) {
    switch (t) {
      case Tok::ArrowRight: case Tok::OptArrowRight: return Direction::Forward;
      case Tok::ArrowLeft: case Tok::OptArrowLeft: return Direction::Inverse;
      default: return Direction::Bidirectional;
    }
  }

  static bool arrow_optional(Tok t) {
    return t == Tok::OptArrowRight || t == Tok::OptArrowLeft || t == Tok::OptArrowBoth;
  }

  // item := '{' clause '}' | compose [rule-tail]
  // expr := item (',' item)*         (multi-item form requires rule clauses)
  AstPtr parse_expr() {
    std::vector<ClauseResult> clauses;
    AstPtr plain;
    auto parse_item = [&]() -> std::optional<ClauseResult> {
      if (accept(Tok::LBrace)) {
        AstPtr u = parse_compose();
        ClauseResult c = parse_clause(u);
        expect(Tok::RBrace, "'}'");
        return c;
      }
      AstPtr e = parse_compose();
      if (is_arrow(peek().kind)) return parse_clause(e);
      plain = e;
      return std::nullopt;
    };
    auto first = parse_item();
    if (!first) {
      if (check(Tok::Comma))
        throw SyntaxError("',' outside a rule context", peek().pos);
      return plain;
    }
    clauses.push_back(std::move(*first));
    while (check(Tok::Comma) && peek(1).kind == Tok::LBrace) {
      ++at;
      auto next = parse_item();
      if (!next) throw SyntaxError("expected a rule block after ','", peek().pos);
      if (next->arrow != clauses.front().arrow)
        throw SyntaxError("mixed replacement arrows in one parallel set", peek().pos);
      if (next->marker && clauses.front().marker && *next->marker != *clauses.front().marker)
        throw SyntaxError("mixed context orientations in one parallel set", peek().pos);
      clauses.push_back(std::move(*next));
    }
    auto a = std::make_shared<Ast>();
    a->kind = Ast::K::RuleSet;
    for (auto& c : clauses) a->clauses.push_back(std::move(c.clause));
    Tok arrow = clauses.front().arrow;
    a->direction = arrow_direction(arrow);
    a->optional = arrow_optional(arrow);
    std::optional<Tok> marker;
    for (const auto& c : clauses)
      if (c.marker) marker = c.marker;
    a->orientation = marker ? marker_orientation(*marker) : Orientation::Upward;
    return a;
  }
};

}  // namespace detail

inline AstPtr parse(const std::string& src) {
  detail::Parser p;
  p.toks = detail::lex(src);
  AstPtr e = p.parse_expr();
  p.accept(Tok::Semicolon);
  if (!p.check(Tok::End)) throw SyntaxError("trailing input after expression", p.peek().pos);
  return e;
}

// ---------------------------------------------------------------------------
// Pretty printer (round-trip surface).

namespace detail {

inline void print_ast(const Ast& a, std::ostream& os);

inline void print_name(const std::string& text, std::ostream& os) {
  for (char c : text) {
    if (!is_ident_char(c)) os << '%';
    os << c;
  }
}

inline void print_child(const AstPtr& a, std::ostream& os) {
  os << '[';
  print_ast(*a, os);
  os << ']';
}

inline void print_ast(const Ast& a, std::ostream& os) {
  switch (a.kind) {
    case Ast::K::Name: print_name(a.text, os); return;
    case Ast::K::Pair: print_name(a.text, os); os << ':'; print_name(a.text2, os); return;
    case Ast::K::Epsilon: os << "0"; return;
    case Ast::K::Any: os << "?"; return;
    case Ast::K::Boundary: os << ".#."; return;
    case Ast::K::Str: os << '"' << a.text << '"'; return;
    case Ast::K::DotBracketed:
      os << "[. ";
      print_ast(*a.kids[0], os);
      os << " .]";
      return;
    case Ast::K::Op:
      switch (a.op) {
        case OpKind::Option: os << '('; print_ast(*a.kids[0], os); os << ')'; return;
        case OpKind::Star: print_child(a.kids[0], os); os << '*'; return;
        case OpKind::Plus: print_child(a.kids[0], os); os << '+'; return;
        case OpKind::Complement: os << '~'; print_child(a.kids[0], os); return;
        case OpKind::Contains: os << '$'; print_child(a.kids[0], os); return;
        case OpKind::Concat:
          print_child(a.kids[0], os); os << ' '; print_child(a.kids[1], os); return;
        case OpKind::Union:
          print_child(a.kids[0], os); os << " | "; print_child(a.kids[1], os); return;
        case OpKind::Intersect:
          print_child(a.kids[0], os); os << " & "; print_child(a.kids[1], os); return;
        case OpKind::Minus:
          print_child(a.kids[0], os); os << " - "; print_child(a.kids[1], os); return;
        case OpKind::Ignore:
          print_child(a.kids[0], os); os << '/'; print_child(a.kids[1], os); return;
        case OpKind::IgnoreInside:
          print_child(a.kids[0], os); os << "./."; print_child(a.kids[1], os); return;
        case OpKind::Crossproduct:
          print_child(a.kids[0], os); os << " .x. "; print_child(a.kids[1], os); return;
        case OpKind::Compose:
          print_child(a.kids[0], os); os << " .o. "; print_child(a.kids[1], os); return;
        default: throw std::logic_error("unprintable operator");
      }
    case Ast::K::RuleSet: {
      const char* arrow = nullptr;
      switch (a.direction) {
        case Direction::Forward: arrow = a.optional ? "(->)" : "->"; break;
        case Direction::Inverse: arrow = a.optional ? "(<-)" : "<-"; break;
        case Direction::Bidirectional: arrow = a.optional ? "(<->)" : "<->"; break;
      }
      const char* marker = "||";
      switch (a.orientation) {
        case Orientation::Upward: marker = "||"; break;
        case Orientation::Right: marker = "//"; break;
        case Orientation::Left: marker = "\\\\"; break;
        case Orientation::Downward: marker = "\\/"; break;
      }
      bool first_clause = true;
      for (const RuleClauseAst& c : a.clauses) {
        if (!first_clause) os << ", ";
        first_clause = false;
        os << "{ ";
        for (std::size_t i = 0; i < c.uppers.size(); ++i) {
          if (i) os << ", ";
          print_child(c.uppers[i], os);
          os << ' ' << arrow << ' ';
          print_child(c.lowers[i], os);
        }
        if (!c.contexts.empty()) {
          os << ' ' << marker << ' ';
          for (std::size_t i = 0; i < c.contexts.size(); ++i) {
            if (i) os << ", ";
            if (c.contexts[i].left) { print_child(c.contexts[i].left, os); os << ' '; }
            os << '_';
            if (c.contexts[i].right) { os << ' '; print_child(c.contexts[i].right, os); }
          }
        }
        os << " }";
      }
      return;
    }
  }
}

}  // namespace detail

inline std::string pretty_print(const AstPtr& a) {
  std::ostringstream os;
  detail::print_ast(*a, os);
  return os.str();
}

inline bool ast_equal(const AstPtr& x, const AstPtr& y);

namespace detail {

inline bool clause_equal(const RuleClauseAst& a, const RuleClauseAst& b) {
  if (a.uppers.size() != b.uppers.size() || a.contexts.size() != b.contexts.size()) return false;
  for (std::size_t i = 0; i < a.uppers.size(); ++i)
    if (!ast_equal(a.uppers[i], b.uppers[i]) || !ast_equal(a.lowers[i], b.lowers[i]))
      return false;
  for (std::size_t i = 0; i < a.contexts.size(); ++i) {
    const auto& ca = a.contexts[i];
    const auto& cb = b.contexts[i];
    if (static_cast<bool>(ca.left) != static_cast<bool>(cb.left)) return false;
    if (static_cast<bool>(ca.right) != static_cast<bool>(cb.right)) return false;
    if (ca.left && !ast_equal(ca.left, cb.left)) return false;
    if (ca.right && !ast_equal(ca.right, cb.right)) return false;
  }
  return true;
}

}  // namespace detail

inline bool ast_equal(const AstPtr& x, const AstPtr& y) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Ast::K::Name: case Ast::K::Str: return x->text == y->text;
    case Ast::K::Pair: return x->text == y->text && x->text2 == y->text2;
    case Ast::K::Epsilon: case Ast::K::Any: case Ast::K::Boundary: return true;
    case Ast::K::DotBracketed: return ast_equal(x->kids[0], y->kids[0]);
    case Ast::K::Op: {
      if (x->op != y->op || x->kids.size() != y->kids.size()) return false;
      for (std::size_t i = 0; i < x->kids.size(); ++i)
        if (!ast_equal(x->kids[i], y->kids[i])) return false;
      return true;
    }
    case Ast::K::RuleSet: {
      if (x->orientation != y->orientation || x->optional != y->optional ||
          x->direction != y->direction || x->clauses.size() != y->clauses.size())
        return false;
      for (std::size_t i = 0; i < x->clauses.size(); ++i)
        if (!detail::clause_equal(x->clauses[i], y->clauses[i])) return false;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Compiler

struct Environment {
  std::map<std::string, Network> bindings;

  const Network* find(const std::string& name) const {
    auto it = bindings.find(name);
    return it == bindings.end() ? nullptr : &it->second;
  }
};

namespace detail {

inline SymbolId pair_side(const std::string& spelling) {
  if (spelling == "0") return kEpsilon;
  if (spelling == "?") return kUnknown;
  return intern_symbol(spelling);
}

}  // namespace detail

inline Network compile(const AstPtr& ast, const Environment& env);

namespace detail {

inline Network compile_node(const Ast& a, const Environment& env) {
  switch (a.kind) {
    case Ast::K::Name: {
      auto it = env.bindings.find(a.text);
      if (it != env.bindings.end()) return it->second;
      return symbol_network(intern_symbol(a.text));
    }
    case Ast::K::Pair: {
      SymbolId u = pair_side(a.text);
      SymbolId l = pair_side(a.text2);
      if (u == kUnknown && l == kUnknown) {
        Network n = label_network(identity_label(kIdentity));
        n.add_arc(0, Label{kUnknown, kUnknown}, 1);
        return n;
      }
      return label_network(Label{u, l});
    }
    case Ast::K::Epsilon: return epsilon_network();
    case Ast::K::Any: return label_network(identity_label(kIdentity));
    case Ast::K::Boundary: return symbol_network(kBoundary);
    case Ast::K::Str: {
      Network n = epsilon_network();
      for (char c : a.text)
        n = concat_nets(n, symbol_network(intern_symbol(std::string(1, c))));
      return n;
    }
    case Ast::K::DotBracketed:
      throw SyntaxError("'[. .]' may only appear as the UPPER of a replacement rule", 0);
    case Ast::K::Op: {
      std::vector<Network> args;
      for (const AstPtr& k : a.kids) args.push_back(compile(k, env));
      return apply_op(a.op, args);
    }
    case Ast::K::RuleSet: {
      RuleSetSpec spec;
      spec.orientation = a.orientation;
      spec.optional = a.optional;
      spec.direction = a.direction;
      for (const RuleClauseAst& c : a.clauses) {
        RuleBlock block;
        for (std::size_t i = 0; i < c.uppers.size(); ++i) {
          const Ast& u = *c.uppers[i];
          if (u.kind == Ast::K::DotBracketed) {
            block.uppers.push_back(compile(u.kids[0], env));
            block.dotted.push_back(true);
          } else {
            block.uppers.push_back(compile(c.uppers[i], env));
            block.dotted.push_back(false);
          }
          block.lowers.push_back(compile(c.lowers[i], env));
          require_language(block.uppers.back(), "replacement UPPER");
          require_language(block.lowers.back(), "replacement LOWER");
        }
        for (const RuleContextAst& ctx : c.contexts) {
          std::optional<Network> l, r;
          if (ctx.left) {
            l = compile(ctx.left, env);
            require_language(*l, "rule context");
          }
          if (ctx.right) {
            r = compile(ctx.right, env);
            require_language(*r, "rule context");
          }
          block.contexts.push_back({std::move(l), std::move(r)});
        }
        spec.blocks.push_back(std::move(block));
      }
      return compile_ruleset(spec);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

inline Network compile(const AstPtr& ast, const Environment& env) {
  return detail::compile_node(*ast, env);
}

inline Network compile(const std::string& src, const Environment& env = {}) {
  return compile(parse(src), env);
}

}  // namespace fsc
