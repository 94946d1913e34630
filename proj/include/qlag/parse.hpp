#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "weyl.hpp"

namespace qlag {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " at offset " + std::to_string(p)), pos(p) {}
};

namespace detail {

class OpParser {
 public:
  OpParser(const std::string& s, TwistPtr tw) : s_(s), tw_(std::move(tw)), n_(tw_->nvars()) {}

  WeylOp parse() {
    WeylOp r = expr();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  WeylOp expr() {
    skip();
    WeylOp r(tw_);
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else if (!first) break;
      WeylOp t = term();
      r += sign > 0 ? t : -t;
      first = false;
    }
    return r;
  }

  WeylOp term() {
    WeylOp r = power();
    while (eat('*')) r = r * power();
    return r;
  }

  WeylOp power() {
    WeylOp base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = i_;
      long e = integer();
      if (e < 0 || e > 64) throw ParseError("exponent out of range", start);
      WeylOp r = WeylOp::scalar(tw_, 1);
      for (long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  long integer() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("expected integer", start);
    std::string digits = s_.substr(start, i_ - start);
    if (digits.size() > 9) throw ParseError("integer too large for an exponent", start);
    return std::stol(digits);
  }

  WeylOp atom() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      WeylOp r = expr();
      if (!eat(')')) throw ParseError("expected ')'", i_);
      return r;
    }
    if (c == '-') {
      ++i_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      Int num(s_.substr(start, i_ - start));
      Int den = 1;
      skip();
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        skip();
        std::size_t ds = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (ds == i_) throw ParseError("expected denominator", ds);
        den = Int(s_.substr(ds, i_ - ds));
        if (den == 0) throw ParseError("zero denominator", ds);
      }
      Rat q(num, den);
      q.canonicalize();
      return WeylOp::scalar(tw_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string id = s_.substr(start, i_ - start);
      bool deriv = false;
      std::string v = id;
      if (id.size() >= 2 && id[0] == 'd') {
        deriv = true;
        v = id.substr(1);
        if (std::isdigit(static_cast<unsigned char>(v[0]))) v = "x" + v;
      }
      int idx = var_index(v, start);
      return deriv ? WeylOp::d(tw_, idx) : WeylOp::x(tw_, idx);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
  }

  int var_index(const std::string& v, std::size_t pos) const {
    if (v.size() == 1 && (v == "x" || v == "y" || v == "z")) {
      int k = v[0] - 'x';
      if (n_ > 3) throw ParseError("alias '" + v + "' needs at most 3 variables", pos);
      if (k >= n_) throw ParseError("variable '" + v + "' exceeds variable count", pos);
      return k;
    }
    if (v.size() >= 2 && v[0] == 'x') {
      for (std::size_t k = 1; k < v.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(v[k])))
          throw ParseError("unknown identifier '" + v + "'", pos);
      int k = std::stoi(v.substr(1));
      if (k < 1 || k > n_) throw ParseError("variable '" + v + "' exceeds variable count", pos);
      return k - 1;
    }
    throw ParseError("unknown identifier '" + v + "'", pos);
  }

  const std::string& s_;
  TwistPtr tw_;
  int n_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline WeylOp parse_op(const std::string& s, const TwistPtr& tw) {
  return detail::OpParser(s, tw).parse();
}
inline WeylOp parse_op(const std::string& s, int nvars) { return parse_op(s, zero_twist(nvars)); }

inline Poly parse_poly(const std::string& s, int nvars) {
  WeylOp op = parse_op(s, nvars);
  if (op.order() > 0) throw ParseError("derivations are not allowed in a polynomial", 0);
  return op.as_function();
}

// Either comma separated components "nu_1, ..., nu_n" or one-form syntax in
// which dx_i stands for the differential, e.g. "x^2*dy".
inline OneForm parse_one_form(const std::string& s, int nvars) {
  std::string t = s;
  if (t.find_first_not_of(" \t") == std::string::npos || t == "0") return OneForm(nvars);
  if (t.find(',') != std::string::npos) {
    std::vector<Poly> comp;
    std::size_t start = 0;
    while (true) {
      std::size_t k = t.find(',', start);
      std::string piece = t.substr(start, k == std::string::npos ? std::string::npos : k - start);
      try {
        comp.push_back(parse_poly(piece, nvars));
      } catch (const ParseError& e) {
        throw ParseError(std::string("in one-form component: ") + e.what(), start + e.pos);
      }
      if (k == std::string::npos) break;
      start = k + 1;
    }
    if (static_cast<int>(comp.size()) != nvars) throw ParseError("one-form needs one component per variable", 0);
    return OneForm(nvars, comp);
  }
  WeylOp op = parse_op(t, nvars);
  OneForm w(nvars);
  for (const auto& [k, c] : op.terms()) {
    if (k.b.deg() != 1) throw ParseError("one-form terms must contain exactly one differential", 0);
    int i = 0;
    while (k.b[i] == 0) ++i;
    w.comp[i].add_term(k.a, c);
  }
  return w;
}

}  // namespace qlag
