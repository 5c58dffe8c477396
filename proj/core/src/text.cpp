#include "kgen/text.hpp"

#include <cctype>
#include <sstream>

namespace kgen {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    skip_ws();
    expect_token("(and");
    Formula f;
    skip_ws();
    while (!peek_close()) {
      Clause c = parse_clause();
      for (const auto& prev : f.clauses)
        if (equal(prev, c)) fail("repeated clause in formula");
      f.clauses.push_back(std::move(c));
      skip_ws();
    }
    expect_char(')');
    if (f.clauses.empty()) fail("empty formula");
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after formula");
    return f;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at line " + std::to_string(line_) + ", column " +
                         std::to_string(col_),
                     line_, col_);
  }

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (cur() == ' ' || cur() == '\n' || cur() == '\t' || cur() == '\r')
      advance();
  }

  bool peek_close() const { return cur() == ')'; }

  void expect_char(char c) {
    if (cur() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void expect_token(std::string_view tok) {
    for (char c : tok) {
      if (cur() != c) fail("expected '" + std::string(tok) + "'");
      advance();
    }
    if (cur() != ' ' && cur() != '\n' && cur() != '\t' && cur() != '\r')
      fail("expected whitespace after '" + std::string(tok) + "'");
  }

  int parse_int() {
    if (!std::isdigit(static_cast<unsigned char>(cur()))) fail("expected integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(cur()))) {
      v = v * 10 + (cur() - '0');
      if (v > 1000000000) fail("integer too large");
      advance();
    }
    if (v < 1) fail("integer must be >= 1");
    return static_cast<int>(v);
  }

  Clause parse_clause() {
    expect_char('(');
    if (cur() != 'o') fail("expected 'or'");
    advance();
    if (cur() != 'r') fail("expected 'or'");
    advance();
    std::vector<Literal> lits;
    skip_ws();
    while (!peek_close()) {
      Literal l = parse_literal();
      for (const auto& prev : lits)
        if (equal(prev.atom, l.atom)) fail("repeated atom in clause");
      lits.push_back(std::move(l));
      skip_ws();
    }
    expect_char(')');
    if (lits.empty()) fail("empty clause");
    return canonicalize_clause(std::move(lits));
  }

  Literal parse_literal() {
    if (cur() == 'A') return Literal{false, parse_atom()};
    if (cur() != '(') fail("expected literal");
    // (not atom) | (box i clause)
    size_t save_pos = pos_;
    int save_line = line_, save_col = col_;
    advance();
    if (cur() == 'n') {
      expect_token("not");
      skip_ws();
      Atom a = parse_atom();
      skip_ws();
      expect_char(')');
      return Literal{true, std::move(a)};
    }
    pos_ = save_pos;
    line_ = save_line;
    col_ = save_col;
    return Literal{false, parse_atom()};
  }

  Atom parse_atom() {
    if (cur() == 'A') {
      advance();
      return Atom::prop(parse_int());
    }
    expect_char('(');
    expect_token("box");
    skip_ws();
    int r = parse_int();
    skip_ws();
    Clause body = parse_clause();
    skip_ws();
    expect_char(')');
    return Atom::box(r, std::move(body));
  }
};

void print_atom(std::ostream& os, const Atom& a);

void print_clause_to(std::ostream& os, const Clause& c) {
  os << "(or";
  for (const auto& l : c.literals) {
    os << ' ';
    if (l.negated) {
      os << "(not ";
      print_atom(os, l.atom);
      os << ')';
    } else {
      print_atom(os, l.atom);
    }
  }
  os << ')';
}

void print_atom(std::ostream& os, const Atom& a) {
  if (a.is_prop()) {
    os << 'A' << a.index;
  } else {
    os << "(box " << a.index << ' ';
    print_clause_to(os, *a.body);
    os << ')';
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  os << "(and";
  for (const auto& c : f.clauses) {
    os << ' ';
    print_clause_to(os, c);
  }
  os << ')';
  return os.str();
}

std::string print_clause(const Clause& c) {
  std::ostringstream os;
  print_clause_to(os, c);
  return os.str();
}

}  // namespace kgen
