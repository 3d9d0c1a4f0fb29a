#include "infectio/formula.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "infectio/error.hpp"

namespace infectio {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Connective kind, std::string name, std::vector<Formula> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->hash = mix(std::hash<std::string>{}(node->name), static_cast<std::size_t>(kind));
  for (const auto& c : children) {
    node->degree += c.degree();
    node->size += c.size();
    node->hash = mix(node->hash, c.hash());
  }
  if (kind != Connective::var) node->degree += 1;
  node->children = std::move(children);
  return Formula(std::move(node));
}

Formula Formula::var(std::string name) { return make(Connective::var, std::move(name), {}); }
Formula Formula::neg(Formula operand) { return make(Connective::neg, {}, {std::move(operand)}); }
Formula Formula::conj(Formula left, Formula right) {
  return make(Connective::conj, {}, {std::move(left), std::move(right)});
}
Formula Formula::disj(Formula left, Formula right) {
  return make(Connective::disj, {}, {std::move(left), std::move(right)});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.is_var()) return a.name() == b.name();
  const auto& ac = a.node_->children;
  const auto& bc = b.node_->children;
  return std::equal(ac.begin(), ac.end(), bc.begin());
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_var()) return a.name() <=> b.name();
  const auto& ac = a.node_->children;
  const auto& bc = b.node_->children;
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (auto c = ac[i] <=> bc[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { var, neg, conj, disj, lparen, rparen, end };

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  Tok kind() const { return kind_; }
  std::size_t pos() const { return start_; }
  const std::string& lexeme() const { return lexeme_; }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    start_ = pos_;
    lexeme_.clear();
    if (pos_ >= text_.size()) {
      kind_ = Tok::end;
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        lexeme_.push_back(text_[pos_++]);
      }
      kind_ = Tok::var;
      return;
    }
    switch (c) {
      case '~': ++pos_; kind_ = Tok::neg; return;
      case '&': ++pos_; kind_ = Tok::conj; return;
      case '|': ++pos_; kind_ = Tok::disj; return;
      case '(': ++pos_; kind_ = Tok::lparen; return;
      case ')': ++pos_; kind_ = Tok::rparen; return;
      default: break;
    }
    if (match("\xC2\xAC")) { kind_ = Tok::neg; return; }       // ¬
    if (match("\xE2\x88\xA7")) { kind_ = Tok::conj; return; }  // ∧
    if (match("\xE2\x88\xA8")) { kind_ = Tok::disj; return; }  // ∨
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

 private:
  bool match(std::string_view s) {
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  Tok kind_ = Tok::end;
  std::string lexeme_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Formula parse() {
    if (lex_.kind() == Tok::end) throw ParseError("empty formula", lex_.pos());
    Formula f = disjunction();
    if (lex_.kind() != Tok::end) throw ParseError("trailing input", lex_.pos());
    return f;
  }

 private:
  Formula disjunction() {
    Formula f = conjunction();
    while (lex_.kind() == Tok::disj) {
      lex_.advance();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (lex_.kind() == Tok::conj) {
      lex_.advance();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    switch (lex_.kind()) {
      case Tok::neg:
        lex_.advance();
        return Formula::neg(unary());
      case Tok::var: {
        Formula f = Formula::var(lex_.lexeme());
        lex_.advance();
        return f;
      }
      case Tok::lparen: {
        lex_.advance();
        Formula f = disjunction();
        if (lex_.kind() != Tok::rparen) throw ParseError("expected ')'", lex_.pos());
        lex_.advance();
        return f;
      }
      case Tok::end:
        throw ParseError("unexpected end of formula", lex_.pos());
      default:
        throw ParseError("expected a variable, '~' or '('", lex_.pos());
    }
  }

  Lexer lex_;
};

void render(const Formula& f, std::string& out) {
  auto sub = [&out](const Formula& g, bool parens) {
    if (parens) out.push_back('(');
    render(g, out);
    if (parens) out.push_back(')');
  };
  switch (f.kind()) {
    case Connective::var:
      out += f.name();
      break;
    case Connective::neg:
      out.push_back('~');
      sub(f.operand(), !f.operand().is_var() && !f.operand().is_neg());
      break;
    case Connective::conj:
      sub(f.left(), f.left().is_disj());
      out += " & ";
      sub(f.right(), f.right().is_disj() || f.right().is_conj());
      break;
    case Connective::disj:
      sub(f.left(), false);
      out += " | ";
      sub(f.right(), f.right().is_disj());
      break;
  }
}

void collect_subformulas(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  if (f.is_neg()) collect_subformulas(f.operand(), out);
  if (f.is_conj() || f.is_disj()) {
    collect_subformulas(f.left(), out);
    collect_subformulas(f.right(), out);
  }
}

void collect_variables(const Formula& f, std::set<std::string>& out) {
  if (f.is_var()) {
    out.insert(f.name());
  } else if (f.is_neg()) {
    collect_variables(f.operand(), out);
  } else {
    collect_variables(f.left(), out);
    collect_variables(f.right(), out);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render_formula(f); }

std::size_t depth(const Formula& f) {
  switch (f.kind()) {
    case Connective::var: return 0;
    case Connective::neg: return 1 + depth(f.operand());
    default: return 1 + std::max(depth(f.left()), depth(f.right()));
  }
}

FormulaSet subformulas(const Formula& f) {
  FormulaSet out;
  collect_subformulas(f, out);
  return out;
}

FormulaSet subformulas(std::span<const Formula> fs) {
  FormulaSet out;
  for (const auto& f : fs) collect_subformulas(f, out);
  return out;
}

FormulaSet negation_closure(std::span<const Formula> fs) {
  FormulaSet out = subformulas(fs);
  std::vector<Formula> negs;
  negs.reserve(out.size());
  for (const auto& g : out) negs.push_back(Formula::neg(g));
  out.insert(negs.begin(), negs.end());
  return out;
}

FormulaSet negation_closure(const FormulaSet& fs) {
  std::vector<Formula> v(fs.begin(), fs.end());
  return negation_closure(std::span<const Formula>(v));
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  collect_variables(f, out);
  return out;
}

std::set<std::string> variables(std::span<const Formula> fs) {
  std::set<std::string> out;
  for (const auto& f : fs) collect_variables(f, out);
  return out;
}

}  // namespace infectio
