#include "kmcoh/parse.hpp"

#include <cctype>

namespace kmc {

namespace {

class Lexer {
 public:
  Lexer(const std::string& s, const std::vector<std::string>& names) : s_(s), names_(names) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string& w) {
    skip();
    if (s_.compare(i_, w.size(), w) == 0) {
      size_t e = i_ + w.size();
      if (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_')) return false;
      i_ = e;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at position " + std::to_string(i_) + " in '" + s_ + "'");
  }

  Rat expr() {
    int nv = int(names_.size());
    Rat r(nv);
    bool first = true;
    for (;;) {
      if (!accept('+') && !accept('-') && !first) break;
      r += term();
      first = false;
    }
    return r;
  }

  Rat term() {
    Rat r = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++i_;
        r *= factor();
      } else if (c == '/') {
        ++i_;
        Rat d = factor();
        if (d.is_zero()) fail("division by zero");
        r /= d;
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) {
        r *= factor();
      } else {
        break;
      }
    }
    return r;
  }

  Rat factor() {
    Rat b = base();
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      int e = std::stoi(s_.substr(st, i_ - st));
      if (neg && b.is_zero()) fail("negative power of zero");
      b = b.pow(neg ? -e : e);
    }
    return b;
  }

  Rat base() {
    int nv = int(names_.size());
    skip();
    if (accept('(')) {
      Rat r = expr();
      expect(')');
      return r;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      int last = s_[i_ - 1] - '0';
      return Rat::constant(nv, last % 2 == 1);
    }
    size_t st = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    std::string w = s_.substr(st, i_ - st);
    if (w.empty()) fail("expected a term");
    for (int k = 0; k < nv; ++k)
      if (names_[k] == w) return Rat::var(nv, k);
    i_ = st;
    fail("unknown variable '" + w + "'");
  }

  size_t pos() const { return i_; }

 private:
  const std::string& s_;
  const std::vector<std::string>& names_;
  size_t i_ = 0;
};

}  // namespace

Rat parse_rat(const std::string& text, const std::vector<std::string>& names) {
  Lexer lx(text, names);
  Rat r = lx.expr();
  if (!lx.at_end()) lx.fail("trailing input");
  return r;
}

Poly parse_poly(const std::string& text, const std::vector<std::string>& names) {
  Rat r = parse_rat(text, names);
  Poly num, den;
  Poly::from_rat(r, &num, &den);
  if (den.deg() != 0) throw ParseError("not a polynomial in " + names.back() + ": '" + text + "'");
  return num.scale(den.lc().inv());
}

LogForm parse_class(const std::string& text, const std::vector<std::string>& names, int* degree) {
  Lexer lx(text, names);
  int nv = int(names.size());
  LogForm out(nv);
  int deg = -1;
  bool first = true;
  while (!lx.at_end()) {
    if (!first) {
      if (!lx.accept('+') && !lx.accept('-')) lx.fail("expected '+'");
    }
    first = false;
    Rat c = Rat::one(nv);
    bool have_coef = false;
    if (lx.peek() == '(') {
      lx.expect('(');
      c = lx.expr();
      lx.expect(')');
      have_coef = true;
    }
    std::vector<Rat> fs;
    while (lx.accept_word("dlog")) {
      lx.expect('(');
      Rat f = lx.expr();
      lx.expect(')');
      if (f.is_zero()) lx.fail("dlog of zero");
      fs.push_back(f);
      if (!lx.accept('^')) break;
    }
    if (!have_coef && fs.empty()) lx.fail("expected a coefficient or dlog");
    int k = int(fs.size());
    if (deg >= 0 && k != deg) lx.fail("mixed form degrees");
    deg = k;
    LogForm t = LogForm::term(c, 0);
    for (const auto& f : fs) t = wedge(t, dlog_expand(f));
    out += t;
  }
  if (deg < 0) lx.fail("empty class");
  if (degree) *degree = deg;
  return out;
}

}  // namespace kmc
