#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "weyl.hpp"

namespace qlag {

enum class Kind { O, TDO, TDO_op };

// Coefficient bimodule of a cochain: the functions, D_nu, or D_nu^op.
// outer_op marks Diff(O^., D^op)^op, whose product is the reversed one.
struct CoeffKind {
  Kind kind = Kind::O;
  TwistPtr twist;
  bool outer_op = false;

  static CoeffKind O(int nvars) { return {Kind::O, zero_twist(nvars), false}; }
  static CoeffKind TDO(TwistPtr tw) { return {Kind::TDO, std::move(tw), false}; }
  static CoeffKind TDO_op(TwistPtr tw, bool outer = false) {
    return {Kind::TDO_op, std::move(tw), outer};
  }

  int nvars() const { return twist->nvars(); }
  bool is_O() const { return kind == Kind::O; }

  bool operator==(const CoeffKind& o) const {
    return kind == o.kind && outer_op == o.outer_op &&
           (twist == o.twist || twist->form() == o.twist->form());
  }

  std::string str() const {
    switch (kind) {
      case Kind::O: return "@O";
      case Kind::TDO: return "@D(" + twist->form().str() + ")";
      case Kind::TDO_op: return "@Dop(" + twist->form().str() + ")" + (outer_op ? "^op" : "");
    }
    return "";
  }
};

struct KindMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ArityMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Basis tensor d^{s_1} (x) ... (x) d^{s_k} (x) x^a nabla^b, whose value on
// (g_1..g_k) is d^{s_1}g_1 ... d^{s_k}g_k * x^a nabla^b.
struct CKey {
  std::vector<Mono> slots;
  Mono a, b;
  bool operator==(const CKey&) const = default;
  auto operator<=>(const CKey& o) const {
    if (slots.size() != o.slots.size()) return slots.size() <=> o.slots.size();
    if (auto c = slots <=> o.slots; c != 0) return c;
    if (auto c = b <=> o.b; c != 0) return c;
    return a <=> o.a;
  }
  int total_order() const {
    int t = b.deg();
    for (const auto& s : slots) t += s.deg();
    return t;
  }
  int weight() const { return a.deg() - total_order(); }
};

using CComb = LinComb<CKey>;

class Cochain {
 public:
  Cochain() : arity_(0), kind_(CoeffKind::O(1)) {}
  Cochain(int arity, CoeffKind kind) : arity_(arity), kind_(std::move(kind)) {}
  Cochain(int arity, CoeffKind kind, CComb t) : arity_(arity), kind_(std::move(kind)), t_(std::move(t)) {
    for (const auto& [k, c] : t_) check(k);
  }

  static Cochain basis(const CoeffKind& kind, std::vector<Mono> slots, const Mono& a,
                       const Mono& b = Mono{}, const Rat& c = 1) {
    Cochain r(static_cast<int>(slots.size()), kind);
    r.add_term(CKey{std::move(slots), a, b}, c);
    return r;
  }
  // Arity-0 cochain from a coefficient element.
  static Cochain constant(const CoeffKind& kind, const WeylOp& p) {
    Cochain r(0, kind);
    for (const auto& [k, c] : p.terms()) r.add_term(CKey{{}, k.a, k.b}, c);
    return r;
  }

  int nvars() const { return kind_.nvars(); }
  int arity() const { return arity_; }
  const CoeffKind& kind() const { return kind_; }
  const CComb& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const CKey& k, const Rat& c) {
    check(k);
    t_.add(k, c);
  }
  void add(const CComb& c, const Rat& s = 1) {
    for (const auto& [k, v] : c) add_term(k, v * s);
  }

  bool operator==(const Cochain& o) const {
    return arity_ == o.arity_ && kind_ == o.kind_ && t_ == o.t_;
  }
  Cochain& operator+=(const Cochain& o) { same(o); t_ += o.t_; return *this; }
  Cochain& operator-=(const Cochain& o) { same(o); t_ -= o.t_; return *this; }
  Cochain operator+(const Cochain& o) const { Cochain r = *this; r += o; return r; }
  Cochain operator-(const Cochain& o) const { Cochain r = *this; r -= o; return r; }
  Cochain operator-() const { Cochain r = *this; r.t_.scale(-1); return r; }
  Cochain operator*(const Rat& s) const { Cochain r = *this; r.t_.scale(s); return r; }

  std::string str() const {
    std::string s;
    bool first = true;
    // Group terms by slot tuple so each bracket shows one coefficient operator.
    std::map<std::vector<Mono>, WeylOp> grouped;
    for (const auto& [k, c] : t_) {
      auto it = grouped.try_emplace(k.slots, WeylOp(kind_.twist)).first;
      it->second.add_term(k.a, k.b, c);
    }
    for (auto it = grouped.rbegin(); it != grouped.rend(); ++it) {
      if (!first) s += " + ";
      first = false;
      s += "[";
      for (const auto& m : it->first) {
        std::vector<std::string> f;
        append_powers(f, m, nvars(), "d");
        std::string t;
        for (std::size_t q = 0; q < f.size(); ++q) t += (q ? "*" : "") + f[q];
        s += (t.empty() ? "1" : t) + " ⊗ ";
      }
      s += it->second.str() + "]";
    }
    if (first) s = "0";
    return s + " " + kind_.str() + " (arity " + std::to_string(arity_) + ")";
  }

 private:
  void check(const CKey& k) const {
    if (static_cast<int>(k.slots.size()) != arity_) throw ArityMismatch("tensor length differs from arity");
    if (kind_.is_O() && !k.b.is_one()) throw KindMismatch("function-valued cochain with a derivation coefficient");
  }
  void same(const Cochain& o) const {
    if (arity_ != o.arity_) throw ArityMismatch("adding cochains of different arity");
    if (!(kind_ == o.kind_)) throw KindMismatch("adding cochains with different coefficients");
  }

  int arity_;
  CoeffKind kind_;
  CComb t_;
};

// ---------------------------------------------------------------------------
// Combinatorial helpers

// All splittings c = e_1 + ... + e_m with their multinomial coefficients.
inline std::vector<std::pair<std::vector<Mono>, Int>> distribute(const Mono& c, int m, int nvars) {
  std::vector<std::pair<std::vector<Mono>, Int>> out;
  if (m == 0) {
    if (c.is_one()) out.push_back({{}, 1});
    return out;
  }
  std::vector<Mono> cur(m);
  auto rec = [&](auto&& self, int l, const Mono& left, const Int& coef) -> void {
    if (l == m - 1) {
      cur[l] = left;
      out.push_back({cur, coef});
      return;
    }
    for (const Mono& e : sub_monos(left, nvars)) {
      cur[l] = e;
      self(self, l + 1, left - e, coef * multi_binomial(left, e));
    }
  };
  rec(rec, 0, c, Int(1));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

inline WeylOp eval_polydiff(const Cochain& A, const std::vector<Poly>& args) {
  if (static_cast<int>(args.size()) != A.arity()) throw ArityMismatch("argument count differs from arity");
  WeylOp out(A.kind().twist);
  for (const auto& [k, c] : A.terms()) {
    Poly f(A.nvars(), Rat(c));
    for (int j = 0; j < A.arity(); ++j) {
      f = f * args[j].derivative(k.slots[j]);
      if (f.is_zero()) break;
    }
    if (f.is_zero()) continue;
    out += WeylOp::monomial(A.kind().twist, k.a, k.b).times_function_left(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form

// Raw tensor t_1 (x) ... (x) t_k (x) p with arbitrary untwisted slot operators.
struct RawTensor {
  std::vector<WeylOp> slots;
  WeylOp coef;
  Rat c = 1;
};

// Functions in the slots act by multiplying the output, so x^a d^b in a slot
// becomes d^b in the slot and x^a on the left of the coefficient.
inline Cochain to_canonical(const std::vector<RawTensor>& raw, int arity, const CoeffKind& kind) {
  Cochain out(arity, kind);
  for (const auto& r : raw) {
    if (static_cast<int>(r.slots.size()) != arity) throw ArityMismatch("raw tensor length");
    for (const auto& s : r.slots)
      if (!s.untwisted()) throw KindMismatch("slot operators must be untwisted");
    std::vector<std::pair<std::vector<Mono>, std::pair<Mono, Rat>>> partial{{{}, {Mono{}, r.c}}};
    for (const auto& s : r.slots) {
      decltype(partial) next;
      for (const auto& [sl, fm] : partial)
        for (const auto& [k, c] : s.terms()) {
          auto sl2 = sl;
          sl2.push_back(k.b);
          next.push_back({std::move(sl2), {fm.first + k.a, fm.second * c}});
        }
      partial.swap(next);
    }
    for (const auto& [sl, fm] : partial)
      for (const auto& [k, c] : r.coef.terms()) out.add_term(CKey{sl, fm.first + k.a, k.b}, fm.second * c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hochschild differential

// Structural differential of the bimodule Hochschild complex. For TDO and
// TDO_op the arity-0 case carries the global sign making d(p) = (g -> p g - g p).
inline Cochain hochschild_d(const Cochain& A) {
  const int k = A.arity();
  const CoeffKind& kind = A.kind();
  Cochain out(k + 1, kind);
  const Rat last_sign = sign_rat(k + 1);
  for (const auto& [key, c] : A.terms()) {
    // Outer left term g_1 * A(g_2, ...).
    if (kind.kind == Kind::TDO_op) {
      // g_1 acts through the opposite product: A(...) * g_1, expanded.
      for (const Mono& e : sub_monos(key.b, A.nvars())) {
        std::vector<Mono> sl{e};
        sl.insert(sl.end(), key.slots.begin(), key.slots.end());
        out.add_term(CKey{sl, key.a, key.b - e}, c * Rat(multi_binomial(key.b, e)));
      }
    } else {
      std::vector<Mono> sl{Mono{}};
      sl.insert(sl.end(), key.slots.begin(), key.slots.end());
      out.add_term(CKey{sl, key.a, key.b}, c);
    }
    // Merge terms A(..., g_j g_{j+1}, ...).
    for (int j = 0; j < k; ++j) {
      Rat sj = sign_rat(j + 1);
      for (const Mono& e : sub_monos(key.slots[j], A.nvars())) {
        std::vector<Mono> sl;
        sl.reserve(k + 1);
        for (int q = 0; q < j; ++q) sl.push_back(key.slots[q]);
        sl.push_back(e);
        sl.push_back(key.slots[j] - e);
        for (int q = j + 1; q < k; ++q) sl.push_back(key.slots[q]);
        out.add_term(CKey{sl, key.a, key.b}, sj * c * Rat(multi_binomial(key.slots[j], e)));
      }
    }
    // Outer right term A(g_1..g_k) * g_{k+1}.
    if (kind.kind == Kind::TDO_op) {
      std::vector<Mono> sl = key.slots;
      sl.push_back(Mono{});
      out.add_term(CKey{sl, key.a, key.b}, last_sign * c);
    } else {
      for (const Mono& e : sub_monos(key.b, A.nvars())) {
        std::vector<Mono> sl = key.slots;
        sl.push_back(e);
        out.add_term(CKey{sl, key.a, key.b - e}, last_sign * c * Rat(multi_binomial(key.b, e)));
      }
    }
  }
  if (k == 0 && !kind.is_O()) return -out;
  return out;
}

// ---------------------------------------------------------------------------
// Products

namespace detail {

// Value of P * Q in D, P and Q basis tensors, where P's derivations pass over
// Q's slot functions. Output slots: P's first iff p_slots_first.
inline void dproduct(CComb& out, const CKey& P, const CKey& Q, const Rat& coef,
                     const TwistPtr& tw, bool p_slots_first) {
  const int n = tw->nvars();
  const int jq = static_cast<int>(Q.slots.size());
  for (const Mono& e : sub_monos(P.b, n)) {
    Int be = multi_binomial(P.b, e);
    WComb tail = nabla_power_times(*tw, P.b - e, WComb(WKey{Q.a, Q.b}, 1));
    for (const auto& [dist, mult] : distribute(e, jq, n)) {
      std::vector<Mono> qs(jq);
      for (int l = 0; l < jq; ++l) qs[l] = Q.slots[l] + dist[l];
      std::vector<Mono> sl;
      if (p_slots_first) {
        sl = P.slots;
        sl.insert(sl.end(), qs.begin(), qs.end());
      } else {
        sl = qs;
        sl.insert(sl.end(), P.slots.begin(), P.slots.end());
      }
      Rat w = coef * Rat(be * mult);
      for (const auto& [wk, wc] : tail) out.add(CKey{sl, P.a + wk.a, wk.b}, w * wc);
    }
  }
}

}  // namespace detail

// Signed cup product (-1)^{ij} A(g_1..g_i) * B(g_{i+1}..g_{i+j}) in P.
inline Cochain cup(const Cochain& A, const Cochain& B) {
  if (!(A.kind() == B.kind())) throw KindMismatch("cup of cochains with different coefficients");
  const CoeffKind& kind = A.kind();
  if (kind.outer_op) {
    // Diff(O^., D^op)^op: reversed product.
    CoeffKind inner = kind;
    inner.outer_op = false;
    Cochain a2(A.arity(), inner, A.terms()), b2(B.arity(), inner, B.terms());
    Cochain r = cup(b2, a2);
    return Cochain(r.arity(), kind, r.terms());
  }
  const int i = A.arity(), j = B.arity();
  Rat s = sign_rat(i * j);
  CComb out;
  for (const auto& [ka, ca] : A.terms())
    for (const auto& [kb, cb] : B.terms()) {
      if (kind.kind == Kind::TDO_op)
        detail::dproduct(out, kb, ka, s * ca * cb, kind.twist, false);
      else
        detail::dproduct(out, ka, kb, s * ca * cb, kind.twist, true);
    }
  return Cochain(i + j, kind, out);
}

// a(g_1..g_i) * X(...) or X(...) * a(...) where a is function valued and acts
// by left multiplication on the value of X. The sign (-1)^{ij} is included.
inline Cochain act_function_cochain(const Cochain& a, const Cochain& X, bool a_first) {
  if (!a.kind().is_O()) throw KindMismatch("acting cochain must be function valued");
  if (a.nvars() != X.nvars()) throw VariableError("variable counts differ");
  const int i = a.arity(), j = X.arity();
  Rat s = sign_rat(i * j);
  Cochain out(i + j, X.kind());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kx, cx] : X.terms()) {
      std::vector<Mono> sl = a_first ? ka.slots : kx.slots;
      const auto& rest = a_first ? kx.slots : ka.slots;
      sl.insert(sl.end(), rest.begin(), rest.end());
      out.add_term(CKey{sl, ka.a + kx.a, kx.b}, s * ca * cx);
    }
  return out;
}

// Left A-action on M = Diff(O^., D): (-1)^{ij} a(..) m(..).
inline Cochain act_left(const Cochain& a, const Cochain& m) {
  if (m.kind().kind != Kind::TDO) throw KindMismatch("left action expects a D-valued cochain");
  return act_function_cochain(a, m, true);
}

// Right A-action on N = Diff(O^., D^op)^op: (-1)^{ki} n(..) *op a(..), that is
// a(..) n(..) in D.
inline Cochain act_right(const Cochain& n, const Cochain& a) {
  if (n.kind().kind != Kind::TDO_op) throw KindMismatch("right action expects a D^op-valued cochain");
  return act_function_cochain(a, n, false);
}

// ---------------------------------------------------------------------------
// Braces

// A{A_1..A_m}: insertion into increasing, non-overlapping slot positions with
// sign (-1)^eps, eps = sum_l i_l (j_l - 1), i_l the number of arguments
// before the l-th inserted block.
inline Cochain brace_any(const Cochain& A, const std::vector<Cochain>& args) {
  const int i = A.arity();
  const int m = static_cast<int>(args.size());
  int n_out = i - m;
  for (const auto& a : args) {
    if (!a.kind().is_O()) throw KindMismatch("brace arguments must be function valued");
    if (a.nvars() != A.nvars()) throw VariableError("variable counts differ");
    n_out += a.arity();
  }
  Cochain out(std::max(n_out, 0), A.kind());
  if (m == 0) return A;
  if (m > i) return out;
  const int nv = A.nvars();

  // Choose positions p_0 < ... < p_{m-1}.
  std::vector<int> pos(m);
  auto for_positions = [&](auto&& self, int l, int start, auto&& body) -> void {
    if (l == m) {
      body();
      return;
    }
    for (int p = start; p <= i - (m - l); ++p) {
      pos[l] = p;
      self(self, l + 1, p + 1, body);
    }
  };

  for (const auto& [ka, ca] : A.terms()) {
    for_positions(for_positions, 0, 0, [&]() {
      int eps = 0, before = 0;
      for (int l = 0; l < m; ++l) {
        int il = (pos[l] - l) + before;
        eps += il * (args[l].arity() - 1);
        before += args[l].arity();
      }
      Rat sgn = sign_rat(eps) * ca;
      // Expand: walk A's slots, substituting inserted blocks.
      struct Partial {
        std::vector<Mono> slots;
        Mono a;
        Rat c;
      };
      std::vector<Partial> parts{{{}, ka.a, sgn}};
      int l = 0;
      for (int q = 0; q < i; ++q) {
        if (l < m && pos[l] == q) {
          std::vector<Partial> next;
          for (const auto& pt : parts)
            for (const auto& [kb, cb] : args[l].terms()) {
              int jl = static_cast<int>(kb.slots.size());
              // d^{s_q} of the product of j_l slot values and x^{a_l}.
              for (const auto& [dist, mult] : distribute(ka.slots[q], jl + 1, nv)) {
                const Mono& e0 = dist[jl];
                if (!e0.divides(kb.a)) continue;
                Partial np = pt;
                for (int t = 0; t < jl; ++t) np.slots.push_back(kb.slots[t] + dist[t]);
                np.a = np.a + (kb.a - e0);
                np.c = pt.c * cb * Rat(mult * falling(kb.a, e0));
                next.push_back(std::move(np));
              }
            }
          parts.swap(next);
          ++l;
        } else {
          for (auto& pt : parts) pt.slots.push_back(ka.slots[q]);
        }
      }
      for (const auto& pt : parts) out.add_term(CKey{pt.slots, pt.a, ka.b}, pt.c);
    });
  }
  return out;
}

inline Cochain brace(const Cochain& A, const std::vector<Cochain>& args) {
  if (!A.kind().is_O()) throw KindMismatch("brace expects a function-valued cochain; use brace_module");
  return brace_any(A, args);
}

inline Cochain brace_module(const Cochain& B, const std::vector<Cochain>& args) {
  if (B.kind().is_O()) throw KindMismatch("brace_module expects a D- or D^op-valued cochain");
  return brace_any(B, args);
}

// The multiplication cochain mu(g_1, g_2) = g_1 g_2.
inline Cochain mu_cochain(int nvars) {
  return Cochain::basis(CoeffKind::O(nvars), {Mono{}, Mono{}}, Mono{});
}

}  // namespace qlag
