#pragma once

// Polynomial forms and polyvectors on affine n-space: the Koszul complex with
// df^, the twisted de Rham complex d + df^, contraction with df, the BV
// divergence and the transport through the standard volume form.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "poly.hpp"

namespace qlag {

struct AltKey {
  Mono m;
  std::uint32_t mask = 0;  // bit i set: dx_i (forms) or d_i (polyvectors)
  bool operator==(const AltKey&) const = default;
  auto operator<=>(const AltKey& o) const {
    if (auto c = std::popcount(mask) <=> std::popcount(o.mask); c != 0) return c;
    if (auto c = mask <=> o.mask; c != 0) return c;
    return m <=> o.m;
  }
  int degree() const { return std::popcount(mask); }
};

struct FormTag {};
struct VectorTag {};

// Antisymmetry is structural: index sets are bitmasks, always sorted.
template <class Tag>
class Alt {
 public:
  explicit Alt(int nvars) : n_(nvars) { check_nvars(nvars); }
  Alt(int nvars, LinComb<AltKey> t) : n_(nvars), t_(std::move(t)) {}

  static Alt basis(int nvars, const Mono& m, std::uint32_t mask, const Rat& c = 1) {
    Alt r(nvars);
    r.t_.add(AltKey{m, mask}, c);
    return r;
  }
  static Alt function(const Poly& f) {
    Alt r(f.nvars());
    for (const auto& [m, c] : f.terms()) r.t_.add(AltKey{m, 0}, c);
    return r;
  }

  int nvars() const { return n_; }
  const LinComb<AltKey>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(const AltKey& k, const Rat& c) { t_.add(k, c); }

  Alt homogeneous(int k) const {
    Alt r(n_);
    for (const auto& [key, c] : t_)
      if (key.degree() == k) r.t_.add(key, c);
    return r;
  }

  bool operator==(const Alt& o) const { return n_ == o.n_ && t_ == o.t_; }
  Alt& operator+=(const Alt& o) { t_ += o.t_; return *this; }
  Alt& operator-=(const Alt& o) { t_ -= o.t_; return *this; }
  Alt operator+(const Alt& o) const { Alt r = *this; r += o; return r; }
  Alt operator-(const Alt& o) const { Alt r = *this; r -= o; return r; }
  Alt operator-() const { Alt r = *this; r.t_.scale(-1); return r; }
  Alt operator*(const Rat& s) const { Alt r = *this; r.t_.scale(s); return r; }

  std::string str() const {
    if (t_.empty()) return "0";
    // Group by index set, highest first.
    std::map<std::uint32_t, Poly> g;
    for (const auto& [k, c] : t_) g.try_emplace(k.mask, Poly(n_)).first->second.add_term(k.m, c);
    std::string s;
    bool first = true;
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
      if (!first) s += " + ";
      first = false;
      s += "(" + it->second.str() + ")";
      for (int i = 0; i < n_; ++i)
        if (it->first >> i & 1u)
          s += (std::is_same_v<Tag, FormTag> ? "*d" : "*D") + var_name(n_, i);
    }
    return s;
  }

 private:
  int n_;
  LinComb<AltKey> t_;
};

using PolyForm = Alt<FormTag>;
using PolyVector = Alt<VectorTag>;

namespace detail {

inline int bits_below(std::uint32_t mask, int i) { return std::popcount(mask & ((1u << i) - 1u)); }
inline int bits_above(std::uint32_t mask, int i) { return std::popcount(mask >> (i + 1)); }

// Sign of sorting the concatenation (S, T) of disjoint index sets.
inline int merge_sign(std::uint32_t s, std::uint32_t t) {
  int inv = 0;
  for (int i = 0; i < 32; ++i)
    if (t >> i & 1u) inv += bits_above(s, i);
  return inv;
}

inline Poly key_poly(int n, const AltKey& k, const Rat& c) {
  Poly p(n);
  p.add_term(k.m, c);
  return p;
}

template <class Tag>
void add_poly(Alt<Tag>& out, const Poly& p, std::uint32_t mask, const Rat& s) {
  for (const auto& [m, c] : p.terms()) out.add_term(AltKey{m, mask}, c * s);
}

}  // namespace detail

// df ^ w
inline PolyForm wedge_df(const PolyForm& w, const Poly& f) {
  const int n = w.nvars();
  if (f.nvars() != n) throw VariableError("variable counts differ");
  PolyForm out(n);
  for (int i = 0; i < n; ++i) {
    Poly fi = f.partial(i);
    if (fi.is_zero()) continue;
    for (const auto& [k, c] : w.terms()) {
      if (k.mask >> i & 1u) continue;
      detail::add_poly(out, fi * detail::key_poly(n, k, c), k.mask | (1u << i),
                       sign_rat(detail::bits_below(k.mask, i)));
    }
  }
  return out;
}

inline PolyForm de_rham_d(const PolyForm& w) {
  const int n = w.nvars();
  PolyForm out(n);
  for (const auto& [k, c] : w.terms())
    for (int i = 0; i < n; ++i) {
      if ((k.mask >> i & 1u) || k.m[i] == 0) continue;
      Mono m = k.m;
      m.e[i]--;
      out.add_term(AltKey{m, k.mask | (1u << i)}, c * k.m[i] * sign_rat(detail::bits_below(k.mask, i)));
    }
  return out;
}

inline PolyForm twisted_dr_d(const PolyForm& w, const Poly& f) { return de_rham_d(w) + wedge_df(w, f); }

// Contraction from the left: g d_S -> sum_k (-1)^{k-1} g (d_{s_k} f) d_{S - s_k}.
inline PolyVector contract_df(const PolyVector& v, const Poly& f) {
  const int n = v.nvars();
  if (f.nvars() != n) throw VariableError("variable counts differ");
  PolyVector out(n);
  for (const auto& [k, c] : v.terms())
    for (int i = 0; i < n; ++i) {
      if (!(k.mask >> i & 1u)) continue;
      detail::add_poly(out, f.partial(i) * detail::key_poly(n, k, c), k.mask & ~(1u << i),
                       sign_rat(detail::bits_below(k.mask, i)));
    }
  return out;
}

// Divergence for the standard volume, same convention:
// g d_S -> sum_k (-1)^{k-1} (d_{s_k} g) d_{S - s_k}.
inline PolyVector bv_delta(const PolyVector& v) {
  const int n = v.nvars();
  PolyVector out(n);
  for (const auto& [k, c] : v.terms())
    for (int i = 0; i < n; ++i) {
      if (!(k.mask >> i & 1u) || k.m[i] == 0) continue;
      Mono m = k.m;
      m.e[i]--;
      out.add_term(AltKey{m, k.mask & ~(1u << i)}, c * k.m[i] * sign_rat(detail::bits_below(k.mask, i)));
    }
  return out;
}

// Wedge product of polyvectors.
inline PolyVector wedge(const PolyVector& a, const PolyVector& b) {
  const int n = a.nvars();
  if (b.nvars() != n) throw VariableError("variable counts differ");
  PolyVector out(n);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.mask & kb.mask) continue;
      out.add_term(AltKey{ka.m + kb.m, ka.mask | kb.mask}, ca * cb * sign_rat(detail::merge_sign(ka.mask, kb.mask)));
    }
  return out;
}

// d_S -> (-1)^{k(k-1)/2} eps(S, S^c) dx_{S^c}, k = |S|, eps the sign of
// sorting (S, S^c). With this sign both transport squares commute on the nose.
inline PolyForm volume_transport(const PolyVector& v) {
  const int n = v.nvars();
  const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  PolyForm out(n);
  for (const auto& [k, c] : v.terms()) {
    std::uint32_t comp = full & ~k.mask;
    int deg = k.degree();
    out.add_term(AltKey{k.m, comp}, c * sign_rat(detail::merge_sign(k.mask, comp) + deg * (deg - 1) / 2));
  }
  return out;
}

// Second polarization of delta: delta(ab) - delta(a) b - (-1)^{|a|} a delta(b),
// for a homogeneous of degree |a|.
inline PolyVector bv_bracket(const PolyVector& a, const PolyVector& b) {
  PolyVector out(a.nvars());
  for (int k = 0; k <= a.nvars(); ++k) {
    PolyVector ak = a.homogeneous(k);
    if (ak.is_zero()) continue;
    out += bv_delta(wedge(ak, b)) - wedge(bv_delta(ak), b) - wedge(ak, bv_delta(b)) * sign_rat(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Windowed cohomology

enum class Flavor { Koszul, TwistedDR };

struct CohomologyRow {
  int degree = 0;
  int dim = 0;
  bool stable = false;
};

namespace detail {

// Coefficient degree bound for form degree k.
inline int form_cap(const Poly& f, int cap, int k) {
  int s = f.degree() >= 1 ? f.degree() - 1 : -1;
  return cap + k * s;
}

inline std::vector<int> form_cohomology(const Poly& f, Flavor fl, int cap) {
  const int n = f.nvars();
  std::vector<std::vector<AltKey>> basis(n + 1);
  std::vector<std::map<AltKey, int>> index(n + 1);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int k = std::popcount(mask);
    int c = form_cap(f, cap, k);
    if (c < 0) continue;
    for (const Mono& m : monos_up_to(n, c)) basis[k].push_back(AltKey{m, mask});
  }
  for (int k = 0; k <= n; ++k) {
    std::sort(basis[k].begin(), basis[k].end());
    for (int i = 0; i < static_cast<int>(basis[k].size()); ++i) index[k][basis[k][i]] = i;
  }
  std::vector<int> rk(n + 1, 0);
  for (int k = 0; k < n; ++k) {
    SparseMat m(static_cast<int>(basis[k + 1].size()), static_cast<int>(basis[k].size()));
    for (int j = 0; j < static_cast<int>(basis[k].size()); ++j) {
      PolyForm e = PolyForm::basis(n, basis[k][j].m, basis[k][j].mask);
      PolyForm img = fl == Flavor::Koszul ? wedge_df(e, f) : twisted_dr_d(e, f);
      for (const auto& [key, c] : img.terms()) m.add(index[k + 1].at(key), j, c);
    }
    rk[k] = rank(m);
  }
  std::vector<int> h;
  for (int k = 0; k <= n; ++k)
    h.push_back(static_cast<int>(basis[k].size()) - rk[k] - (k ? rk[k - 1] : 0));
  return h;
}

}  // namespace detail

// Dimensions at coefficient cap and cap + 2; stable where they agree.
inline std::vector<CohomologyRow> twisted_cohomology_dims(const Poly& f, Flavor fl, int cap) {
  auto a = detail::form_cohomology(f, fl, cap);
  auto b = detail::form_cohomology(f, fl, cap + 2);
  std::vector<CohomologyRow> out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back({static_cast<int>(k), a[k], a[k] == b[k]});
  return out;
}

// dim Q[x]/(d_1 f, .., d_n f), from degree-truncated slices: the quotient of
// polynomials of degree <= D by the multiples m * d_i f of degree <= D.
// Empty when the slices have not settled by the cap.
inline std::vector<int> jacobian_slices(const Poly& f, int cap) {
  const int n = f.nvars();
  std::vector<int> dims;
  for (int D = 0; D <= cap; ++D) {
    auto monos = monos_up_to(n, D);
    std::map<Mono, int> idx;
    for (int i = 0; i < static_cast<int>(monos.size()); ++i) idx[monos[i]] = i;
    std::vector<Poly> gens;
    for (int i = 0; i < n; ++i) {
      Poly fi = f.partial(i);
      if (fi.is_zero()) continue;
      for (const Mono& m : monos_up_to(n, D - fi.degree())) {
        Poly mm(n);
        mm.add_term(m, 1);
        gens.push_back(mm * fi);
      }
    }
    SparseMat mat(static_cast<int>(gens.size()), static_cast<int>(monos.size()));
    for (int r = 0; r < static_cast<int>(gens.size()); ++r)
      for (const auto& [m, c] : gens[r].terms()) mat.add(r, idx.at(m), c);
    dims.push_back(static_cast<int>(monos.size()) - rank(mat));
  }
  return dims;
}

inline std::optional<int> jacobian_ring_dim(const Poly& f, int cap) {
  auto s = jacobian_slices(f, cap);
  const int k = static_cast<int>(s.size());
  // Settled: the last three slices agree.
  if (k >= 3 && s[k - 1] == s[k - 2] && s[k - 2] == s[k - 3]) return s[k - 1];
  return std::nullopt;
}

}  // namespace qlag
