#include "lineal/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace lineal {

namespace {

enum class Tok : unsigned char {
  Lambda, Dot, Colon, LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Plus, Minus, Slash, Comma, ParPar, Ket, Star, Arrow, At,
  Ident, Num, Imag, Sqrt, If, Then, Else, Zero, Meas, Dpar, Dmeas,
  End,
};

struct Token {
  Tok kind;
  std::string text;  // Ident name / Ket bits
  double num = 0.0;  // Num/Imag/Sqrt value
  int arity = 0;     // Meas
  int line = 1;
  int col = 1;
};

struct Lexer {
  const std::string& src;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  char peek(std::size_t k = 0) const { return i + k < src.size() ? src[i + k] : '\0'; }

  void advance() {
    if (peek() == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      while (true) {
        if (std::isspace(static_cast<unsigned char>(peek()))) {
          advance();
        } else if (peek() == '-' && peek(1) == '-') {
          while (peek() != '\n' && peek() != '\0') advance();
        } else {
          break;
        }
      }
      Token t;
      t.line = line;
      t.col = col;
      char c = peek();
      if (c == '\0') {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = lex_number(t.num) ? Tok::Imag : Tok::Num;
        out.push_back(t);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
               peek() == '\'') {
          word += peek();
          advance();
        }
        classify_word(word, t);
        out.push_back(t);
        continue;
      }
      switch (c) {
        case '\\': t.kind = Tok::Lambda; advance(); break;
        case '.': t.kind = Tok::Dot; advance(); break;
        case ':': t.kind = Tok::Colon; advance(); break;
        case '(': t.kind = Tok::LParen; advance(); break;
        case ')': t.kind = Tok::RParen; advance(); break;
        case '[': t.kind = Tok::LBrack; advance(); break;
        case ']': t.kind = Tok::RBrack; advance(); break;
        case '{': t.kind = Tok::LBrace; advance(); break;
        case '}': t.kind = Tok::RBrace; advance(); break;
        case '+': t.kind = Tok::Plus; advance(); break;
        case '/': t.kind = Tok::Slash; advance(); break;
        case ',': t.kind = Tok::Comma; advance(); break;
        case '*': t.kind = Tok::Star; advance(); break;
        case '@': t.kind = Tok::At; advance(); break;
        case '-':
          advance();
          if (peek() == '>') {
            advance();
            t.kind = Tok::Arrow;
          } else {
            t.kind = Tok::Minus;
          }
          break;
        case '|':
          advance();
          if (peek() == '|') {
            advance();
            t.kind = Tok::ParPar;
          } else {
            while (peek() == '0' || peek() == '1') {
              t.text += peek();
              advance();
            }
            if (t.text.empty()) fail("expected qubit bits after '|'");
            if (peek() != '>') fail("unterminated ket, expected '>'");
            advance();
            t.kind = Tok::Ket;
          }
          break;
        default:
          fail(std::string("unexpected character '") + c + "'");
      }
      out.push_back(t);
    }
  }

  // Reads a number (with optional fraction and exponent); returns true when
  // it is an imaginary literal (trailing 'i').
  bool lex_number(double& value) {
    std::string text;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      text += peek();
      advance();
    }
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      text += peek();
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        text += peek();
        advance();
      }
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      text += peek();
      advance();
      if (peek() == '+' || peek() == '-') {
        text += peek();
        advance();
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        text += peek();
        advance();
      }
    }
    value = std::strtod(text.c_str(), nullptr);
    if (peek() == 'i' && !(std::isalnum(static_cast<unsigned char>(peek(1))) ||
                           peek(1) == '_' || peek(1) == '\'')) {
      advance();
      return true;
    }
    return false;
  }

  void classify_word(const std::string& word, Token& t) {
    if (word == "if") { t.kind = Tok::If; return; }
    if (word == "then") { t.kind = Tok::Then; return; }
    if (word == "else") { t.kind = Tok::Else; return; }
    if (word == "zero") { t.kind = Tok::Zero; return; }
    if (word == "dpar") { t.kind = Tok::Dpar; return; }
    if (word == "dmeas") { t.kind = Tok::Dmeas; return; }
    if (word == "pi") {
      t.kind = Tok::Meas;
      t.arity = 1;
      return;
    }
    if (word.rfind("pi_", 0) == 0 && word.size() > 3) {
      bool digits = true;
      for (std::size_t k = 3; k < word.size(); ++k)
        digits = digits && std::isdigit(static_cast<unsigned char>(word[k]));
      if (digits) {
        t.kind = Tok::Meas;
        t.arity = std::atoi(word.c_str() + 3);
        return;
      }
    }
    if (word.rfind("sqrt", 0) == 0 && word.size() > 4) {
      bool digits = true;
      for (std::size_t k = 4; k < word.size(); ++k)
        digits = digits && std::isdigit(static_cast<unsigned char>(word[k]));
      if (digits) {
        t.kind = Tok::Sqrt;
        t.num = std::sqrt(std::atof(word.c_str() + 4));
        return;
      }
    }
    t.kind = Tok::Ident;
    t.text = word;
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  Dialect dialect;

  const Token& cur() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++pos;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }

  void expect(Tok k, const char* what) {
    if (!eat(k)) fail(std::string("expected ") + what);
  }

  void require_dialect(TermKind kind, const char* what) {
    if (!kind_in_dialect(kind, dialect))
      throw DialectError(std::string(what) + " is not part of the " + dialect_name(dialect) +
                         " dialect at " + std::to_string(cur().line) + ":" +
                         std::to_string(cur().col));
  }

  // ---- types ----

  TypePtr parse_type() {
    TypePtr left = parse_type_odot();
    if (eat(Tok::Arrow)) return ty_arrow(left, parse_type());
    return left;
  }

  TypePtr parse_type_odot() {
    TypePtr t = parse_type_prod();
    while (eat(Tok::At)) t = ty_odot(t, parse_type_prod());
    return t;
  }

  TypePtr parse_type_prod() {
    TypePtr t = parse_type_s();
    if (eat(Tok::Star)) return ty_prod(t, parse_type_prod());
    return t;
  }

  TypePtr parse_type_s() {
    if (at(Tok::Ident) && cur().text == "S") {
      ++pos;
      return ty_s(parse_type_s());
    }
    return parse_type_atom();
  }

  TypePtr parse_type_atom() {
    if (at(Tok::Ident) && cur().text == "B") {
      ++pos;
      return ty_b();
    }
    if (at(Tok::Ident) && cur().text == "Top") {
      ++pos;
      return ty_top();
    }
    if (eat(Tok::LParen)) {
      TypePtr t = parse_type();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected type");
  }

  // ---- scalars ----

  bool try_real(double& out) {
    bool neg = eat(Tok::Minus);
    double v;
    if (at(Tok::Num) || at(Tok::Sqrt)) {
      v = next().num;
    } else {
      return false;
    }
    if (eat(Tok::Slash)) {
      if (!(at(Tok::Num) || at(Tok::Sqrt))) return false;
      double d = next().num;
      if (d == 0.0) fail("division by zero in scalar");
      v /= d;
    }
    out = neg ? -v : v;
    return true;
  }

  // Attempts a scalar literal at the current position; restores pos on
  // failure. Forms: 1/sqrt2, sqrt3/2, -2, (1/2), (-1/sqrt2), (1+2i), (0-1i).
  bool try_scalar(Scalar& out) {
    std::size_t save = pos;
    double re;
    if (at(Tok::Num) || at(Tok::Sqrt) || at(Tok::Minus)) {
      if (try_real(re)) {
        out = Scalar(re, 0.0);
        return true;
      }
      pos = save;
      return false;
    }
    if (at(Tok::LParen)) {
      ++pos;
      if (try_real(re)) {
        if (eat(Tok::RParen)) {
          out = Scalar(re, 0.0);
          return true;
        }
        bool plus = at(Tok::Plus);
        if ((plus || at(Tok::Minus)) && toks[pos + 1].kind == Tok::Imag) {
          ++pos;
          double im = next().num;
          if (eat(Tok::RParen)) {
            out = Scalar(re, plus ? im : -im);
            return true;
          }
        }
      }
      pos = save;
      return false;
    }
    return false;
  }

  // ---- terms ----

  TermPtr parse_expr() { return parse_parallel(); }

  TermPtr parse_parallel() {
    TermPtr first = parse_sum();
    if (!at(Tok::ParPar)) return first;
    require_dialect(TermKind::Parallel, "parallel");
    std::vector<TermPtr> entries{first};
    while (eat(Tok::ParPar)) entries.push_back(parse_sum());
    return t_parallel(std::move(entries));
  }

  TermPtr parse_sum() {
    TermPtr t = parse_scaled();
    while (eat(Tok::Plus)) t = t_sum2(t, parse_scaled());  // left-nested pairs
    return t;
  }

  TermPtr parse_scaled() {
    Scalar s;
    std::size_t save = pos;
    if (try_scalar(s)) {
      if (eat(Tok::Dot)) return t_scale(s, parse_scaled());
      pos = save;
    }
    if (at(Tok::If)) return parse_if();
    return parse_app();
  }

  TermPtr parse_if() {
    require_dialect(TermKind::If, "if-then-else");
    expect(Tok::If, "'if'");
    TermPtr c = parse_sum();
    expect(Tok::Then, "'then'");
    TermPtr a = parse_sum();
    expect(Tok::Else, "'else'");
    TermPtr b = parse_sum();
    return t_if(c, a, b);
  }

  bool atom_starts() const {
    switch (cur().kind) {
      case Tok::Ident:
      case Tok::Ket:
      case Tok::Zero:
      case Tok::Star:
      case Tok::Meas:
      case Tok::LParen:
      case Tok::LBrack:
      case Tok::LBrace:
      case Tok::Lambda:
      case Tok::Dpar:
      case Tok::Dmeas:
        return true;
      default:
        return false;
    }
  }

  TermPtr parse_app() {
    TermPtr t = parse_atom();
    while (atom_starts()) t = t_app(t, parse_atom());
    return t;
  }

  TermPtr parse_atom() {
    switch (cur().kind) {
      case Tok::Ident:
        return t_var(next().text);
      case Tok::Ket: {
        require_dialect(TermKind::Ket0, "ket");
        return t_ket_string(next().text);
      }
      case Tok::Zero:
        ++pos;
        return t_zero();
      case Tok::Star:
        require_dialect(TermKind::Star, "*");
        ++pos;
        return t_star();
      case Tok::Meas: {
        require_dialect(TermKind::Meas, "pi");
        return t_meas(next().arity);
      }
      case Tok::Lambda: {
        ++pos;
        if (!at(Tok::Ident)) fail("expected binder name");
        std::string binder = next().text;
        TypePtr ann;
        if (eat(Tok::Colon)) ann = parse_type();
        expect(Tok::Dot, "'.' after binder");
        TermPtr body = parse_sum();
        return t_abs(binder, ann, body);
      }
      case Tok::LParen: {
        ++pos;
        TermPtr e = parse_expr();
        if (eat(Tok::Comma)) {
          require_dialect(TermKind::Pair, "pair");
          std::vector<TermPtr> parts{e, parse_expr()};
          while (eat(Tok::Comma)) parts.push_back(parse_expr());
          expect(Tok::RParen, "')'");
          TermPtr p = parts.back();
          for (int k = static_cast<int>(parts.size()) - 2; k >= 0; --k)
            p = t_pair(parts[static_cast<std::size_t>(k)], p);
          return p;
        }
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBrack: {
        ++pos;
        TermPtr e = parse_expr();
        expect(Tok::RBrack, "']'");
        return t_thunk(e);
      }
      case Tok::LBrace: {
        ++pos;
        TermPtr e = parse_expr();
        expect(Tok::RBrace, "'}'");
        return t_release(e);
      }
      case Tok::Dpar:
      case Tok::Dmeas: {
        bool par = cur().kind == Tok::Dpar;
        require_dialect(par ? TermKind::DeltaPar : TermKind::DeltaMeas, par ? "dpar" : "dmeas");
        ++pos;
        expect(Tok::LParen, "'('");
        TermPtr scrut = parse_expr();
        expect(Tok::Comma, "','");
        expect(Tok::LBrack, "'['");
        if (!at(Tok::Ident)) fail("expected binder name");
        std::string x = next().text;
        expect(Tok::RBrack, "']'");
        TermPtr left = parse_expr();
        expect(Tok::Comma, "','");
        expect(Tok::LBrack, "'['");
        if (!at(Tok::Ident)) fail("expected binder name");
        std::string y = next().text;
        expect(Tok::RBrack, "']'");
        TermPtr right = parse_expr();
        expect(Tok::RParen, "')'");
        return par ? t_dpar(scrut, x, left, y, right) : t_dmeas(scrut, x, left, y, right);
      }
      default:
        fail("expected term");
    }
  }
};

}  // namespace

TermPtr parse(const std::string& source, Dialect dialect) {
  Lexer lex(source);
  Parser p{lex.run(), 0, dialect};
  TermPtr t = p.parse_expr();
  if (!p.at(Tok::End)) p.fail("unexpected trailing input");
  return t;
}

TypePtr parse_type(const std::string& source) {
  Lexer lex(source);
  Parser p{lex.run(), 0, Dialect::LambdaS};
  TypePtr t = p.parse_type();
  if (!p.at(Tok::End)) p.fail("unexpected trailing input");
  return t;
}

}  // namespace lineal
