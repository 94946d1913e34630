#pragma once

#include <map>
#include <string>
#include <vector>

#include "bar.hpp"

namespace qlag {

// Elements of Diff(O, D_nu) are arity-1 cochains with coefficient TDO: the
// key (d^s; x^a nabla^b) is the right normal form d^s (x) x^a nabla^b.
using DiffOD = Cochain;

inline Cochain constant_op(const WeylOp& p) { return Cochain::constant(CoeffKind::TDO(p.twist()), p); }

// x -> p x - x p
inline DiffOD d_D(const WeylOp& p) { return hochschild_d(constant_op(p)); }

// 1 (x) p
inline DiffOD one_tensor(const WeylOp& p) {
  DiffOD r(1, CoeffKind::TDO(p.twist()));
  for (const auto& [k, c] : p.terms()) r.add_term(CKey{{Mono{}}, k.a, k.b}, c);
  return r;
}

inline DiffOD phi(const WeylOp& p) { return d_D(p) + one_tensor(p); }

// (d^a (x) r)(d^b (x) s) = d^{a+b} (x) r s on right normal forms.
inline DiffOD diffod_mul(const DiffOD& u, const DiffOD& v) {
  if (u.arity() != 1 || v.arity() != 1 || u.kind().kind != Kind::TDO || !(u.kind() == v.kind()))
    throw KindMismatch("diffod_mul expects two elements of Diff(O, D)");
  const TwistPtr& tw = u.kind().twist;
  DiffOD out(1, u.kind());
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      WComb prod = nabla_power_times(*tw, ku.b, WComb(WKey{kv.a, kv.b}, 1));
      for (const auto& [wk, wc] : prod)
        out.add_term(CKey{{ku.slots[0] + kv.slots[0]}, ku.a + wk.a, wk.b}, cu * cv * wc);
    }
  return out;
}

// psi(n, m) = n | m as a two-sided word of length 0; n in D_X, m in D_nu.
inline BarChain psi(const WeylOp& n, const WeylOp& m) {
  if (!n.untwisted()) throw TwistMismatch("the left factor lives in the untwisted D_X");
  BarSpace sp = BarSpace::two_sided(m.twist());
  return two_sided(sp, Cochain::constant(sp.n_kind(), n), {}, constant_op(m));
}

// psi applied to an element of D_X (x) D written as d^s (x) x^a nabla^b.
inline BarChain psi_tensor(const DiffOD& t) {
  BarSpace sp = BarSpace::two_sided(t.kind().twist);
  BarChain out(sp);
  for (const auto& [k, c] : t.terms()) {
    BarKey w;
    w.left = CKey{{}, Mono{}, k.slots[0]};
    w.right = CKey{{}, k.a, k.b};
    out.add_term(w, c);
  }
  return out;
}

namespace detail {

inline Int multinomial(const std::vector<Mono>& parts) {
  Mono total;
  for (const auto& p : parts) total = total + p;
  Int r = 1;
  Mono acc;
  for (const auto& p : parts) {
    acc = acc + p;
    r *= multi_binomial(acc, p);
  }
  return r;
}

}  // namespace detail

// chi(x^a nabla^c) = sum over ordered splittings c = c_0 + c_1 + .. + c_r + c_{r+1}
// with c_1..c_r nonzero of multinomial * nabla^{c_0} | [c_1] | .. | [c_r] | x^a nabla^{c_{r+1}},
// where [e] is the arity-1 letter g -> d^e g. The length-0 part is psi(phi(p)).
inline BarChain chi(const WeylOp& p) {
  BarSpace sp = BarSpace::two_sided(p.twist());
  BarChain out(sp);
  const int n = p.nvars();
  for (const auto& [k, c] : p.terms()) {
    std::vector<Mono> parts;
    auto rec = [&](auto&& self, const Mono& rest) -> void {
      // Close: remaining exponent goes to the right end.
      {
        BarKey w;
        w.left = CKey{{}, Mono{}, parts[0]};
        for (std::size_t t = 1; t < parts.size(); ++t) w.letters.push_back(CKey{{parts[t]}, Mono{}, Mono{}});
        w.right = CKey{{}, k.a, rest};
        std::vector<Mono> all = parts;
        all.push_back(rest);
        out.add_term(w, c * Rat(detail::multinomial(all)));
      }
      for (const Mono& e : sub_monos(rest, n)) {
        if (e.is_one()) continue;
        parts.push_back(e);
        self(self, rest - e);
        parts.pop_back();
      }
    };
    for (const Mono& c0 : sub_monos(k.b, n)) {
      parts = {c0};
      rec(rec, k.b - c0);
    }
  }
  return out;
}

// Independent construction: for each monomial of p, solve
// bar_d(psi(phi(m)) + sum c_i w_i) = 0 over the degree-0 words w_i of length
// >= 1 with the same total order and weight.
struct ChiLift {
  bool solvable = true;
  bool unique = true;
  BarChain chain;
};

inline ChiLift chi_lift(const WeylOp& p) {
  BarSpace sp = BarSpace::two_sided(p.twist());
  ChiLift res{true, true, BarChain(sp)};
  for (const auto& [k, c] : p.terms()) {
    WeylOp mono = WeylOp::monomial(p.twist(), k.a, k.b);
    BarChain base = relative_normal(psi_tensor(phi(mono)));
    const int T = k.b.deg();
    BarWindow win{p.nvars(), T, std::max(T, 1), T, k.a.deg() - T};
    std::vector<BarKey> unknowns;
    for (const auto& w : two_sided_basis(win))
      if (w.degree() == 0 && w.length() >= 1 && w.total_order() == T) unknowns.push_back(w);
    std::map<BarKey, int> rows;
    std::vector<BarChain> images;
    for (const auto& w : unknowns) {
      BarChain e(sp);
      e.add_term(w, 1);
      images.push_back(bar_d(e));
      for (const auto& [rk, rc] : images.back().terms()) rows.try_emplace(rk, static_cast<int>(rows.size()));
    }
    BarChain rhs = bar_d(base);
    for (const auto& [rk, rc] : rhs.terms()) rows.try_emplace(rk, static_cast<int>(rows.size()));
    SparseMat m(static_cast<int>(rows.size()), static_cast<int>(unknowns.size()));
    for (int j = 0; j < static_cast<int>(unknowns.size()); ++j)
      for (const auto& [rk, rc] : images[j].terms()) m.add(rows.at(rk), j, rc);
    std::vector<Rat> b(rows.size());
    for (const auto& [rk, rc] : rhs.terms()) b[rows.at(rk)] = -rc;
    auto x = solve(m, b);
    if (!x) {
      res.solvable = false;
      continue;
    }
    if (rank(m) != static_cast<int>(unknowns.size())) res.unique = false;
    BarChain lift = base;
    for (int j = 0; j < static_cast<int>(unknowns.size()); ++j) lift.add_term(unknowns[j], (*x)[j]);
    res.chain += lift * c;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Windowed Hochschild complex Diff(O^., D_nu)

struct DiffWindow {
  int nvars = 1;
  int order_cap = 2;  // total order over slots and coefficient
  int arity_cap = 3;  // cochains of arity 0..arity_cap
  int weight = 0;
};

struct DiffCohomology {
  std::vector<int> dims;        // C^0..C^I
  std::vector<int> cohomology;  // H^0..H^{I-1}
  bool d_squared_zero = true;
  bool closed = true;
};

// Unnormalized basis of arity k, total order <= T, weight w.
inline std::vector<CKey> diff_basis(int nvars, int k, int T, int w) {
  std::vector<CKey> out;
  std::vector<Mono> slots(k);
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == k) {
      for (int tb = 0; used + tb <= T; ++tb)
        for (const Mono& b : monos_of_degree(nvars, tb)) {
          int adeg = w + used + tb;
          if (adeg < 0) continue;
          for (const Mono& a : monos_of_degree(nvars, adeg)) out.push_back(CKey{slots, a, b});
        }
      return;
    }
    for (int o = 0; used + o <= T; ++o)
      for (const Mono& s : monos_of_degree(nvars, o)) {
        slots[pos] = s;
        self(self, pos + 1, used + o);
      }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline DiffCohomology diff_complex_cohomology(const CoeffKind& kind, const DiffWindow& win) {
  if (kind.is_O()) throw KindMismatch("the windowed complex is built for D or D^op coefficients");
  DiffCohomology res;
  const int I = win.arity_cap;
  std::vector<std::vector<CKey>> basis(I + 1);
  std::vector<std::map<CKey, int>> index(I + 1);
  for (int k = 0; k <= I; ++k) {
    basis[k] = diff_basis(win.nvars, k, win.order_cap, win.weight);
    for (int i = 0; i < static_cast<int>(basis[k].size()); ++i) index[k][basis[k][i]] = i;
    res.dims.push_back(static_cast<int>(basis[k].size()));
  }
  std::vector<SparseMat> d;
  for (int k = 0; k < I; ++k) {
    SparseMat m(res.dims[k + 1], res.dims[k]);
    for (int j = 0; j < res.dims[k]; ++j) {
      Cochain img = hochschild_d(Cochain(k, kind, CComb(basis[k][j], 1)));
      for (const auto& [key, c] : img.terms()) {
        auto it = index[k + 1].find(key);
        if (it == index[k + 1].end()) {
          res.closed = false;
          continue;
        }
        m.add(it->second, j, c);
      }
    }
    d.push_back(std::move(m));
  }
  std::vector<int> rk;
  for (const auto& m : d) rk.push_back(rank(m));
  for (int k = 0; k + 1 < I; ++k)
    if (!(d[k + 1] * d[k]).is_zero_matrix()) res.d_squared_zero = false;
  for (int k = 0; k < I; ++k) res.cohomology.push_back(res.dims[k] - rk[k] - (k ? rk[k - 1] : 0));
  return res;
}

// Kernel dimension of p -> ([p, x_1], .., [p, x_n]) on the weight-w slice of
// D_nu with order <= T.
inline int centralizer_dim(const TwistPtr& tw, int T, int w) {
  const int n = tw->nvars();
  std::vector<WKey> basis;
  for (int t = 0; t <= T; ++t)
    for (const Mono& b : monos_of_degree(n, t))
      if (w + t >= 0)
        for (const Mono& a : monos_of_degree(n, w + t)) basis.push_back(WKey{a, b});
  std::map<std::pair<int, WKey>, int> rows;
  std::vector<std::vector<std::pair<std::pair<int, WKey>, Rat>>> cols;
  for (const auto& key : basis) {
    WeylOp p = WeylOp::monomial(tw, key.a, key.b);
    std::vector<std::pair<std::pair<int, WKey>, Rat>> col;
    for (int i = 0; i < n; ++i) {
      WeylOp xi = WeylOp::x(tw, i);
      WeylOp cm = p * xi - xi * p;
      for (const auto& [k, c] : cm.terms()) {
        rows.try_emplace({i, k}, static_cast<int>(rows.size()));
        col.push_back({{i, k}, c});
      }
    }
    cols.push_back(std::move(col));
  }
  SparseMat m(static_cast<int>(rows.size()), static_cast<int>(basis.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j)
    for (const auto& [rk, c] : cols[j]) m.add(rows.at(rk), j, c);
  return static_cast<int>(basis.size()) - rank(m);
}

// Monomials x^a nabla^b with |a| - |b| = w and |b| <= T.
inline int weyl_window_count(int nvars, int T, int w) {
  int cnt = 0;
  for (int t = 0; t <= T; ++t)
    if (w + t >= 0) cnt += static_cast<int>(monos_of_degree(nvars, t).size() * monos_of_degree(nvars, w + t).size());
  return cnt;
}

// Basis of the same window as WeylOps.
inline std::vector<WeylOp> weyl_window(const TwistPtr& tw, int T, int w) {
  std::vector<WeylOp> out;
  const int n = tw->nvars();
  for (int t = 0; t <= T; ++t)
    if (w + t >= 0)
      for (const Mono& b : monos_of_degree(n, t))
        for (const Mono& a : monos_of_degree(n, w + t)) out.push_back(WeylOp::monomial(tw, a, b));
  return out;
}

// Rank of a family of chains inside a fixed basis (keys outside are counted
// as extra coordinates).
inline int chain_rank(const std::vector<BarChain>& v) {
  std::map<BarKey, int> idx;
  for (const auto& c : v)
    for (const auto& [k, x] : c.terms()) idx.try_emplace(k, static_cast<int>(idx.size()));
  SparseMat m(static_cast<int>(v.size()), static_cast<int>(idx.size()));
  for (int r = 0; r < static_cast<int>(v.size()); ++r)
    for (const auto& [k, x] : v[r].terms()) m.add(r, idx.at(k), x);
  return rank(m);
}

}  // namespace qlag
