#pragma once

#include <string>
#include <vector>

#include "lincomb.hpp"
#include "mono.hpp"

namespace qlag {

inline std::string var_name(int nvars, int i) {
  if (nvars <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

// Renders c * x^a-style products; `pre` and `post` are extra factor strings.
inline std::string render_term(const Rat& c, const std::vector<std::string>& factors, bool first) {
  std::string s;
  Rat a = abs(c);
  if (!first) s += sgn(c) < 0 ? " - " : " + ";
  else if (sgn(c) < 0) s += "-";
  bool unit = a == 1;
  if (!unit || factors.empty()) s += to_string(a);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0 || !unit) s += "*";
    s += factors[i];
  }
  return s;
}

inline void append_powers(std::vector<std::string>& out, const Mono& m, int nvars,
                          const std::string& prefix_d = "") {
  for (int i = 0; i < nvars; ++i) {
    if (!m[i]) continue;
    std::string v = prefix_d.empty() ? var_name(nvars, i)
                                     : (nvars <= 3 ? prefix_d + var_name(nvars, i)
                                                   : prefix_d + std::to_string(i + 1));
    out.push_back(m[i] == 1 ? v : v + "^" + std::to_string(m[i]));
  }
}

class Poly {
 public:
  Poly() : nvars_(1) {}
  explicit Poly(int nvars) : nvars_(nvars) { check_nvars(nvars); }
  Poly(int nvars, const Rat& c) : Poly(nvars) { t_.add(Mono{}, c); }
  Poly(int nvars, const Mono& m, const Rat& c = 1) : Poly(nvars) { t_.add(m, c); }

  static Poly var(int nvars, int i) { return Poly(nvars, Mono::unit(i)); }

  int nvars() const { return nvars_; }
  const LinComb<Mono>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m.deg());
    return d;
  }
  Rat coeff(const Mono& m) const { return t_.coeff(m); }
  void add_term(const Mono& m, const Rat& c) { t_.add(m, c); }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && t_ == o.t_; }

  Poly& operator+=(const Poly& o) { same(o); t_ += o.t_; return *this; }
  Poly& operator-=(const Poly& o) { same(o); t_ -= o.t_; return *this; }
  Poly operator+(const Poly& o) const { Poly r = *this; r += o; return r; }
  Poly operator-(const Poly& o) const { Poly r = *this; r -= o; return r; }
  Poly operator-() const { Poly r = *this; r.t_.scale(-1); return r; }
  Poly operator*(const Rat& s) const { Poly r = *this; r.t_.scale(s); return r; }

  Poly operator*(const Poly& o) const {
    same(o);
    Poly r(nvars_);
    for (const auto& [m1, c1] : t_)
      for (const auto& [m2, c2] : o.t_) r.t_.add(m1 + m2, c1 * c2);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(int k) const {
    Poly r(nvars_, Rat(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  // d^c applied to the polynomial.
  Poly derivative(const Mono& c) const {
    Poly r(nvars_);
    for (const auto& [m, k] : t_)
      if (c.divides(m)) r.t_.add(m - c, k * Rat(falling(m, c)));
    return r;
  }
  Poly partial(int i) const {
    if (i < 0 || i >= nvars_) throw VariableError("partial derivative index out of range");
    return derivative(Mono::unit(i));
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.terms().rbegin(); it != t_.terms().rend(); ++it) {
      std::vector<std::string> f;
      append_powers(f, it->first, nvars_);
      s += render_term(it->second, f, first);
      first = false;
    }
    return s;
  }

 private:
  void same(const Poly& o) const {
    if (o.nvars_ != nvars_) throw VariableError("polynomials over different variable counts");
  }
  int nvars_;
  LinComb<Mono> t_;
};

inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
inline Poly poly_partial(const Poly& p, int i) { return p.partial(i); }

}  // namespace qlag
