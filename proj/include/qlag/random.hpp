#pragma once

#include <cstdint>
#include <random>

#include "cochain.hpp"

namespace qlag {

// Seeded source of test instances. Only raw mt19937_64 output is used, so the
// instance stream is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t raw() { return g_(); }
  int uniform(int lo, int hi) {  // inclusive
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(g_() % span);
  }
  bool coin() { return g_() & 1; }

  Rat small_rat() {
    int num = 0;
    while (num == 0) num = uniform(-4, 4);
    return rat(num, uniform(1, 3));
  }

  Mono mono(int nvars, int max_deg) {
    int d = uniform(0, max_deg);
    Mono m;
    for (int k = 0; k < d; ++k) m.e[uniform(0, nvars - 1)]++;
    return m;
  }

  Poly poly(int nvars, int max_deg, int max_terms) {
    Poly p(nvars);
    int t = uniform(1, max_terms);
    for (int k = 0; k < t; ++k) p.add_term(mono(nvars, max_deg), small_rat());
    return p;
  }
  Poly nonzero_poly(int nvars, int max_deg, int max_terms) {
    Poly p(nvars);
    while (p.is_zero()) p = poly(nvars, max_deg, max_terms);
    return p;
  }

  WeylOp weyl(const TwistPtr& tw, int max_order, int max_deg, int max_terms) {
    WeylOp w(tw);
    int t = uniform(1, max_terms);
    for (int k = 0; k < t; ++k) w.add_term(mono(tw->nvars(), max_deg), mono(tw->nvars(), max_order), small_rat());
    return w;
  }
  WeylOp nonzero_weyl(const TwistPtr& tw, int max_order, int max_deg, int max_terms) {
    WeylOp w(tw);
    while (w.is_zero()) w = weyl(tw, max_order, max_deg, max_terms);
    return w;
  }

  // Random cochain; slot and coefficient orders at most max_order.
  Cochain cochain(const CoeffKind& kind, int arity, int max_order, int max_deg, int max_terms) {
    Cochain c(arity, kind);
    int n = kind.nvars();
    while (c.is_zero()) {
      int t = uniform(1, max_terms);
      for (int k = 0; k < t; ++k) {
        CKey key;
        for (int j = 0; j < arity; ++j) key.slots.push_back(mono(n, max_order));
        key.a = mono(n, max_deg);
        if (!kind.is_O()) key.b = mono(n, max_order);
        c.add_term(key, small_rat());
      }
    }
    return c;
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace qlag
