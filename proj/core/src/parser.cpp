#include "ambilogic/parser.hpp"

#include <cctype>
#include <optional>

namespace ambilogic {

namespace {

enum class Tok : std::uint8_t {
  End,
  True,
  Ident,     // proposition name
  Int,
  BOp,       // B_<n>
  KOp,       // K_<n>
  PrOp,      // Pr_<n>
  EbMark,    // "EB", player list follows as ^m_{...}
  CbMark,    // "CB_", group follows as {...}
  LParen, RParen, LBrace, RBrace,
  Comma, Plus, Minus, Star, Slash, Caret, Underscore,
  Bang, Amp, Pipe, Arrow, DArrow,
  Ge, Le, Gt, Lt, Eq,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long value = 0;  // Int payload and the player index of B_/K_/Pr_
  int line = 1;
  int col = 1;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::True: return "'true'";
    case Tok::Ident: return "proposition";
    case Tok::Int: return "integer";
    case Tok::BOp: return "'B_<player>'";
    case Tok::KOp: return "'K_<player>'";
    case Tok::PrOp: return "'Pr_<player>'";
    case Tok::EbMark: return "'EB'";
    case Tok::CbMark: return "'CB_'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::Underscore: return "'_'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::Ge: return "'>='";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Lt: return "'<'";
    case Tok::Eq: return "'='";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;

    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) return lex_word(t);
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_int(t);

    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case ',': t.kind = Tok::Comma; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '*': t.kind = Tok::Star; return t;
      case '/': t.kind = Tok::Slash; return t;
      case '^': t.kind = Tok::Caret; return t;
      case '_': t.kind = Tok::Underscore; return t;
      case '!': t.kind = Tok::Bang; return t;
      case '&': t.kind = Tok::Amp; return t;
      case '|': t.kind = Tok::Pipe; return t;
      case '=': t.kind = Tok::Eq; return t;
      case '-':
        if (peek() == '>') { advance(); t.kind = Tok::Arrow; return t; }
        t.kind = Tok::Minus;
        return t;
      case '>':
        if (peek() == '=') { advance(); t.kind = Tok::Ge; return t; }
        t.kind = Tok::Gt;
        return t;
      case '<':
        if (peek() == '-' && peek(1) == '>') { advance(); advance(); t.kind = Tok::DArrow; return t; }
        if (peek() == '=') { advance(); t.kind = Tok::Le; return t; }
        t.kind = Tok::Lt;
        return t;
      default:
        throw ParseError(t.line, t.col, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  Token lex_word(Token t) {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
      advance();
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    if (t.text == "true") { t.kind = Tok::True; return t; }
    if (t.text == "EB") { t.kind = Tok::EbMark; return t; }
    if (t.text == "CB_" || t.text.rfind("CB_", 0) == 0) {
      // "CB_{1,2}" lexes as the word "CB_" because '_' continues a word;
      // anything longer (e.g. "CB_x") would shadow the operator, so reject.
      if (t.text == "CB_") { t.kind = Tok::CbMark; return t; }
      throw ParseError(t.line, t.col, "identifiers starting 'CB_' are reserved");
    }
    if (auto idx = op_index(t.text, "B_")) { t.kind = Tok::BOp; t.value = *idx; return t; }
    if (auto idx = op_index(t.text, "K_")) { t.kind = Tok::KOp; t.value = *idx; return t; }
    if (auto idx = op_index(t.text, "Pr_")) { t.kind = Tok::PrOp; t.value = *idx; return t; }
    t.kind = Tok::Ident;
    return t;
  }

  static std::optional<long long> op_index(const std::string& word, std::string_view prefix) {
    if (word.size() <= prefix.size() || word.rfind(prefix, 0) != 0) return std::nullopt;
    long long value = 0;
    for (std::size_t k = prefix.size(); k < word.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(word[k]))) return std::nullopt;
      value = value * 10 + (word[k] - '0');
      if (value > 1'000'000) return std::nullopt;
    }
    return value;
  }

  Token lex_int(Token t) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    t.kind = Tok::Int;
    t.text = std::string(text_.substr(start, pos_ - start));
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, FormulaFactory& factory) : lexer_(text), factory_(factory) {
    cur_ = lexer_.next();
  }

  FormulaId run() {
    FormulaId f = parse_iff();
    if (cur_.kind != Tok::End)
      throw ParseError(cur_.line, cur_.col, "trailing input after formula", {tok_name(Tok::End)});
    return f;
  }

 private:
  void bump() { cur_ = lexer_.next(); }

  bool accept(Tok t) {
    if (cur_.kind != t) return false;
    bump();
    return true;
  }

  Token expect(Tok t) {
    if (cur_.kind != t)
      throw ParseError(cur_.line, cur_.col,
                       std::string("expected ") + tok_name(t) + ", found " + tok_name(cur_.kind),
                       {tok_name(t)});
    Token out = cur_;
    bump();
    return out;
  }

  FormulaId parse_iff() {
    FormulaId left = parse_implies();
    if (accept(Tok::DArrow)) return factory_.iff(left, parse_iff());
    return left;
  }

  FormulaId parse_implies() {
    FormulaId left = parse_or();
    if (accept(Tok::Arrow)) return factory_.implies(left, parse_implies());
    return left;
  }

  FormulaId parse_or() {
    FormulaId left = parse_and();
    while (accept(Tok::Pipe)) left = factory_.disj(left, parse_and());
    return left;
  }

  FormulaId parse_and() {
    FormulaId left = parse_unary();
    while (accept(Tok::Amp)) left = factory_.conj(left, parse_unary());
    return left;
  }

  FormulaId parse_unary() {
    if (accept(Tok::Bang)) return factory_.negation(parse_unary());
    return parse_primary();
  }

  FormulaId parse_primary() {
    switch (cur_.kind) {
      case Tok::True:
        bump();
        return factory_.truth();
      case Tok::Ident: {
        std::string name = cur_.text;
        bump();
        return factory_.prim(name);
      }
      case Tok::LParen: {
        bump();
        FormulaId f = parse_iff();
        expect(Tok::RParen);
        return f;
      }
      case Tok::BOp: {
        PlayerId i = static_cast<PlayerId>(cur_.value);
        bump();
        expect(Tok::LParen);
        FormulaId f = parse_iff();
        expect(Tok::RParen);
        return factory_.belief(i, f);
      }
      case Tok::KOp: {
        PlayerId i = static_cast<PlayerId>(cur_.value);
        bump();
        expect(Tok::LParen);
        FormulaId f = parse_iff();
        expect(Tok::RParen);
        return factory_.knows(i, f);
      }
      case Tok::EbMark: {
        bump();
        expect(Tok::Caret);
        Token m = expect(Tok::Int);
        long long depth = std::stoll(m.text);
        if (depth < 1) throw ParseError(m.line, m.col, "EB iteration depth must be >= 1");
        expect(Tok::Underscore);
        std::vector<PlayerId> group = parse_group();
        expect(Tok::LParen);
        FormulaId f = parse_iff();
        expect(Tok::RParen);
        return factory_.everyone_believes(static_cast<int>(depth), std::move(group), f);
      }
      case Tok::CbMark: {
        bump();
        std::vector<PlayerId> group = parse_group();
        expect(Tok::LParen);
        FormulaId f = parse_iff();
        expect(Tok::RParen);
        return factory_.common_belief(std::move(group), f);
      }
      case Tok::PrOp:
      case Tok::Int:
      case Tok::Minus:
        return parse_prob_atom();
      default:
        throw ParseError(cur_.line, cur_.col,
                         std::string("expected a formula, found ") + tok_name(cur_.kind),
                         {"'true'", "proposition", "'!'", "'('", "'B_<player>'",
                          "'K_<player>'", "'EB'", "'CB_'", "probability sum"});
    }
  }

  std::vector<PlayerId> parse_group() {
    expect(Tok::LBrace);
    std::vector<PlayerId> group;
    do {
      Token t = expect(Tok::Int);
      long long idx = std::stoll(t.text);
      if (idx < 1) throw ParseError(t.line, t.col, "player indices are 1-based");
      group.push_back(static_cast<PlayerId>(idx));
    } while (accept(Tok::Comma));
    expect(Tok::RBrace);
    return group;
  }

  FormulaId parse_prob_atom() {
    std::vector<ProbTerm> terms;
    terms.push_back(parse_term());
    while (accept(Tok::Plus)) terms.push_back(parse_term());

    CmpOp op;
    switch (cur_.kind) {
      case Tok::Ge: op = CmpOp::Ge; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Eq: op = CmpOp::Eq; break;
      default:
        throw ParseError(cur_.line, cur_.col,
                         std::string("unknown comparison operator, found ") + tok_name(cur_.kind),
                         {"'>='", "'<='", "'>'", "'<'", "'='"});
    }
    bump();
    Rational bound = parse_rational();
    return factory_.prob_cmp(op, std::move(terms), std::move(bound));
  }

  ProbTerm parse_term() {
    ProbTerm term;
    term.coeff = Rational(1);
    if (cur_.kind != Tok::PrOp) {
      term.coeff = parse_rational();
      expect(Tok::Star);
    }
    Token pr = expect(Tok::PrOp);
    term.player = static_cast<PlayerId>(pr.value);
    expect(Tok::LParen);
    term.arg = parse_iff();
    expect(Tok::RParen);
    return term;
  }

  Rational parse_rational() {
    bool negative = accept(Tok::Minus);
    Token num = expect(Tok::Int);
    std::string text = num.text;
    if (accept(Tok::Slash)) {
      Token den = expect(Tok::Int);
      bool zero = den.text.find_first_not_of('0') == std::string::npos;
      if (zero) throw ParseError(den.line, den.col, "zero denominator in rational literal");
      text += "/" + den.text;
    }
    if (negative) text.insert(text.begin(), '-');
    auto r = Rational::parse(text);
    if (!r) throw ParseError(num.line, num.col, "malformed rational literal");
    return *r;
  }

  Lexer lexer_;
  FormulaFactory& factory_;
  Token cur_;
};

}  // namespace

FormulaId parse_formula(std::string_view text, FormulaFactory& factory) {
  if (text.size() > 64 * 1024)
    throw ParseError(1, 1, "formula text exceeds the 64 KiB limit");
  Parser parser(text, factory);
  return parser.run();
}

Rational parse_rational_text(std::string_view text) {
  auto r = Rational::parse(text);
  if (!r) {
    if (text.find('/') != std::string_view::npos) {
      auto den = text.substr(text.find('/') + 1);
      if (!den.empty() && den.find_first_not_of('0') == std::string_view::npos)
        throw ParseError(1, 1, "zero denominator in rational literal");
    }
    throw ParseError(1, 1, "malformed rational literal '" + std::string(text) + "'");
  }
  return *r;
}

}  // namespace ambilogic
