#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rat.hpp"

namespace qlag {

inline constexpr int kMaxVars = 6;

struct VariableError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exponent vector. Unused trailing entries stay zero, so a Mono does not need
// to know its own variable count.
struct Mono {
  std::array<std::uint16_t, kMaxVars> e{};

  static Mono unit(int i) {
    Mono m;
    m.e[i] = 1;
    return m;
  }

  int deg() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const { return deg() == 0; }
  int operator[](int i) const { return e[i]; }

  Mono operator+(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(e[i]) + o.e[i];
      if (s > 0xffff) throw std::overflow_error("exponent overflow");
      r.e[i] = static_cast<std::uint16_t>(s);
    }
    return r;
  }
  // Caller guarantees o <= *this componentwise.
  Mono operator-(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
    return r;
  }
  bool divides(const Mono& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  bool operator==(const Mono& o) const = default;

  // Graded lexicographic, x1 > x2 > ... within a degree.
  std::strong_ordering operator<=>(const Mono& o) const {
    int d1 = deg(), d2 = o.deg();
    if (d1 != d2) return d1 <=> d2;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] != o.e[i]) return e[i] <=> o.e[i];
    return std::strong_ordering::equal;
  }
};

// prod_i binom(b_i, c_i)
inline Int multi_binomial(const Mono& b, const Mono& c) {
  Int r = 1;
  for (int i = 0; i < kMaxVars; ++i) {
    if (c.e[i] > b.e[i]) return 0;
    if (c.e[i] && c.e[i] != b.e[i]) r *= binomial(b.e[i], c.e[i]);
  }
  return r;
}

// Falling factorial prod_i a_i!/(a_i-c_i)!, the coefficient of x^(a-c) in d^c x^a.
inline Int falling(const Mono& a, const Mono& c) {
  Int r = 1;
  for (int i = 0; i < kMaxVars; ++i) {
    if (c.e[i] > a.e[i]) return 0;
    for (int k = 0; k < c.e[i]; ++k) r *= (a.e[i] - k);
  }
  return r;
}

// All c with c <= b componentwise, in a fixed order.
inline std::vector<Mono> sub_monos(const Mono& b, int nvars) {
  std::vector<Mono> out{Mono{}};
  for (int i = 0; i < nvars; ++i) {
    std::vector<Mono> next;
    for (const auto& m : out)
      for (int k = 0; k <= b.e[i]; ++k) {
        Mono t = m;
        t.e[i] = static_cast<std::uint16_t>(k);
        next.push_back(t);
      }
    out.swap(next);
  }
  return out;
}

// All monomials in nvars variables of total degree exactly d.
inline std::vector<Mono> monos_of_degree(int nvars, int d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  if (nvars == 0) {
    if (d == 0) out.push_back(Mono{});
    return out;
  }
  Mono cur;
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == nvars - 1) {
      cur.e[i] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      cur.e[i] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur.e[i] = static_cast<std::uint16_t>(k);
      self(self, i + 1, left - k);
    }
    cur.e[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Mono> monos_up_to(int nvars, int d) {
  std::vector<Mono> out;
  for (int k = 0; k <= d; ++k) {
    auto v = monos_of_degree(nvars, k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

inline void check_nvars(int nvars) {
  if (nvars < 1 || nvars > kMaxVars)
    throw VariableError("variable count must be in 1.." + std::to_string(kMaxVars));
}

}  // namespace qlag
