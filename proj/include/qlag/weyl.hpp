#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "poly.hpp"

namespace qlag {

// nu = sum_i nu_i dx_i
struct OneForm {
  int nvars = 1;
  std::vector<Poly> comp;

  OneForm() : comp(1, Poly(1)) {}
  explicit OneForm(int n) : nvars(n), comp(n, Poly(n)) { check_nvars(n); }
  OneForm(int n, std::vector<Poly> c) : nvars(n), comp(std::move(c)) {
    check_nvars(n);
    if (static_cast<int>(comp.size()) != n) throw VariableError("one-form component count");
    for (auto& p : comp)
      if (p.nvars() != n) throw VariableError("one-form component variable count");
  }
  static OneForm exact(const Poly& g) {
    OneForm w(g.nvars());
    for (int i = 0; i < g.nvars(); ++i) w.comp[i] = g.partial(i);
    return w;
  }

  bool is_zero() const {
    for (auto& p : comp)
      if (!p.is_zero()) return false;
    return true;
  }
  OneForm operator+(const OneForm& o) const {
    OneForm r = *this;
    for (int i = 0; i < nvars; ++i) r.comp[i] += o.comp[i];
    return r;
  }
  bool operator==(const OneForm& o) const { return nvars == o.nvars && comp == o.comp; }

  std::string str() const {
    std::string s;
    for (int i = 0; i < nvars; ++i) {
      if (comp[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + comp[i].str() + ")*d" + var_name(nvars, i);
    }
    return s.empty() ? "0" : s;
  }
};

// (dnu)_{ij} = d_i nu_j - d_j nu_i
inline std::vector<std::vector<Poly>> curvature(const OneForm& nu) {
  std::vector<std::vector<Poly>> F(nu.nvars, std::vector<Poly>(nu.nvars, Poly(nu.nvars)));
  for (int i = 0; i < nu.nvars; ++i)
    for (int j = 0; j < nu.nvars; ++j) F[i][j] = nu.comp[j].partial(i) - nu.comp[i].partial(j);
  return F;
}

// Basis element x^a nabla^b of the left normal form.
struct WKey {
  Mono a, b;
  bool operator==(const WKey&) const = default;
  auto operator<=>(const WKey& o) const {
    if (auto c = b <=> o.b; c != 0) return c;
    return a <=> o.a;
  }
};

using WComb = LinComb<WKey>;

// Shared, immutable description of a twist plus a memo table for reordering
// products of covariant derivatives.
class Twist {
 public:
  explicit Twist(OneForm nu) : nu_(std::move(nu)), F_(curvature(nu_)), flat_(true) {
    for (auto& row : F_)
      for (auto& p : row)
        if (!p.is_zero()) flat_ = false;
  }
  const OneForm& form() const { return nu_; }
  int nvars() const { return nu_.nvars; }
  bool flat() const { return flat_; }
  const Poly& F(int i, int j) const { return F_[i][j]; }

  // nabla_i * nabla^b in normal form.
  WComb nabla_times(int i, const Mono& b) const {
    int j = 0;
    while (j < nvars() && b[j] == 0) ++j;
    if (flat_ || j >= i) {
      Mono nb = b + Mono::unit(i);
      return WComb(WKey{Mono{}, nb}, 1);
    }
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find({i, b});
      if (it != memo_.end()) return it->second;
    }
    // nabla_i nabla_j = nabla_j nabla_i + F_ij
    Mono rest = b - Mono::unit(j);
    WComb out = left_gen(j, nabla_times(i, rest));
    for (const auto& [m, c] : F_[i][j].terms()) out.add(WKey{m, rest}, c);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(std::make_pair(i, b), out);
    return out;
  }

  // nabla_i * P for P in normal form.
  WComb left_gen(int i, const WComb& P) const {
    WComb out;
    for (const auto& [k, c] : P) {
      if (k.a[i] > 0) out.add(WKey{k.a - Mono::unit(i), k.b}, c * k.a[i]);
      if (flat_) {
        out.add(WKey{k.a, k.b + Mono::unit(i)}, c);
        continue;
      }
      for (const auto& [k2, c2] : nabla_times(i, k.b)) out.add(WKey{k.a + k2.a, k2.b}, c * c2);
    }
    return out;
  }

 private:
  OneForm nu_;
  std::vector<std::vector<Poly>> F_;
  bool flat_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, Mono>, WComb> memo_;
};

using TwistPtr = std::shared_ptr<const Twist>;

inline TwistPtr make_twist(const OneForm& nu) { return std::make_shared<const Twist>(nu); }
inline TwistPtr zero_twist(int nvars) { return make_twist(OneForm(nvars)); }

struct TwistMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class WeylOp {
 public:
  WeylOp() : WeylOp(zero_twist(1)) {}
  explicit WeylOp(TwistPtr tw) : tw_(std::move(tw)) {}
  WeylOp(TwistPtr tw, WComb t) : tw_(std::move(tw)), t_(std::move(t)) {}

  static WeylOp function(TwistPtr tw, const Poly& f) {
    WeylOp r(std::move(tw));
    for (const auto& [m, c] : f.terms()) r.t_.add(WKey{m, Mono{}}, c);
    return r;
  }
  static WeylOp scalar(TwistPtr tw, const Rat& c) {
    WeylOp r(std::move(tw));
    r.t_.add(WKey{}, c);
    return r;
  }
  static WeylOp monomial(TwistPtr tw, const Mono& a, const Mono& b, const Rat& c = 1) {
    WeylOp r(std::move(tw));
    r.t_.add(WKey{a, b}, c);
    return r;
  }
  static WeylOp x(TwistPtr tw, int i) { return monomial(std::move(tw), Mono::unit(i), Mono{}); }
  static WeylOp d(TwistPtr tw, int i) { return monomial(std::move(tw), Mono{}, Mono::unit(i)); }

  int nvars() const { return tw_->nvars(); }
  const TwistPtr& twist() const { return tw_; }
  const OneForm& twist_form() const { return tw_->form(); }
  bool untwisted() const { return tw_->form().is_zero(); }
  const WComb& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(const Mono& a, const Mono& b, const Rat& c) { t_.add(WKey{a, b}, c); }

  int order() const {
    int o = -1;
    for (const auto& [k, c] : t_) o = std::max(o, k.b.deg());
    return o;
  }

  bool same_algebra(const WeylOp& o) const {
    return tw_ == o.tw_ || tw_->form() == o.tw_->form();
  }
  void require_same(const WeylOp& o) const {
    if (!same_algebra(o)) throw TwistMismatch("operators live in different twisted Weyl algebras");
  }

  bool operator==(const WeylOp& o) const { return same_algebra(o) && t_ == o.t_; }

  WeylOp& operator+=(const WeylOp& o) { require_same(o); t_ += o.t_; return *this; }
  WeylOp& operator-=(const WeylOp& o) { require_same(o); t_ -= o.t_; return *this; }
  WeylOp operator+(const WeylOp& o) const { WeylOp r = *this; r += o; return r; }
  WeylOp operator-(const WeylOp& o) const { WeylOp r = *this; r -= o; return r; }
  WeylOp operator-() const { WeylOp r = *this; r.t_.scale(-1); return r; }
  WeylOp operator*(const Rat& s) const { WeylOp r = *this; r.t_.scale(s); return r; }

  // f * op: left multiplication by a function never leaves normal form.
  WeylOp times_function_left(const Poly& f) const {
    WeylOp r(tw_);
    for (const auto& [m, c] : f.terms())
      for (const auto& [k, c2] : t_) r.t_.add(WKey{m + k.a, k.b}, c * c2);
    return r;
  }
  WeylOp times_monomial_left(const Mono& m) const {
    WeylOp r(tw_);
    for (const auto& [k, c] : t_) r.t_.add(WKey{m + k.a, k.b}, c);
    return r;
  }

  WeylOp operator*(const WeylOp& o) const;

  // Is the operator a function (order <= 0)?
  bool is_function() const { return order() <= 0; }
  Poly as_function() const {
    Poly p(nvars());
    for (const auto& [k, c] : t_) {
      if (!k.b.is_one()) throw std::logic_error("operator is not a function");
      p.add_term(k.a, c);
    }
    return p;
  }

  // Part of exact order k.
  WeylOp homogeneous_order(int k) const {
    WeylOp r(tw_);
    for (const auto& [key, c] : t_)
      if (key.b.deg() == k) r.t_.add(key, c);
    return r;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.terms().rbegin(); it != t_.terms().rend(); ++it) {
      std::vector<std::string> f;
      append_powers(f, it->first.a, nvars());
      append_powers(f, it->first.b, nvars(), "d");
      s += render_term(it->second, f, first);
      first = false;
    }
    return s;
  }

 private:
  TwistPtr tw_;
  WComb t_;
};

// nabla^b * P
inline WComb nabla_power_times(const Twist& tw, const Mono& b, const WComb& P) {
  if (tw.flat()) {
    // Leibniz: nabla^b x^a = sum_c binom(b,c) d^c(x^a) nabla^(b-c)
    WComb out;
    for (const auto& [k, c] : P)
      for (const Mono& e : sub_monos(b, tw.nvars())) {
        if (!e.divides(k.a)) continue;
        Rat coef = c * Rat(multi_binomial(b, e) * falling(k.a, e));
        out.add(WKey{k.a - e, k.b + (b - e)}, coef);
      }
    return out;
  }
  WComb Q = P;
  for (int i = tw.nvars() - 1; i >= 0; --i)
    for (int r = 0; r < b[i]; ++r) Q = tw.left_gen(i, Q);
  return Q;
}

inline WeylOp WeylOp::operator*(const WeylOp& o) const {
  require_same(o);
  WeylOp r(tw_);
  std::map<Mono, WComb> cache;
  for (const auto& [k, c] : t_) {
    auto it = cache.find(k.b);
    if (it == cache.end()) it = cache.emplace(k.b, nabla_power_times(*tw_, k.b, o.t_)).first;
    for (const auto& [k2, c2] : it->second) r.t_.add(WKey{k.a + k2.a, k2.b}, c * c2);
  }
  return r;
}

inline WeylOp weyl_mul(const WeylOp& a, const WeylOp& b) { return a * b; }

struct NoCanonicalAction : std::logic_error {
  using std::logic_error::logic_error;
};

inline Poly weyl_apply(const WeylOp& op, const Poly& f) {
  if (!op.untwisted()) throw NoCanonicalAction("twisted operators have no canonical action on functions");
  if (f.nvars() != op.nvars()) throw VariableError("operator and function variable counts differ");
  Poly out(f.nvars());
  for (const auto& [k, c] : op.terms()) {
    Poly d = f.derivative(k.b);
    for (const auto& [m, c2] : d.terms()) out.add_term(m + k.a, c * c2);
  }
  return out;
}

// Right normal form: sum c * nabla^b x^a, keyed by the same (a, b) pairs.
inline WComb to_right_normal(const WeylOp& p) {
  WComb out;
  WeylOp rest = p;
  while (!rest.is_zero()) {
    // Highest order term first; its reordering only produces lower orders.
    const auto& [k, c] = *rest.terms().terms().rbegin();
    WKey key = k;
    Rat coef = c;
    out.add(key, coef);
    WeylOp nb = WeylOp::monomial(p.twist(), Mono{}, key.b);
    WeylOp xa = WeylOp::monomial(p.twist(), key.a, Mono{});
    rest -= (nb * xa) * coef;
  }
  return out;
}

inline WeylOp from_right_normal(const TwistPtr& tw, const WComb& r) {
  WeylOp out(tw);
  for (const auto& [k, c] : r)
    out += (WeylOp::monomial(tw, Mono{}, k.b) * WeylOp::monomial(tw, k.a, Mono{})) * c;
  return out;
}

// p * g = sum_c (d^c g) * q_c: returns the q_c keyed by c.
inline std::map<Mono, WeylOp> right_mul_expand(const WeylOp& p) {
  std::map<Mono, WeylOp> out;
  for (const auto& [k, c] : p.terms())
    for (const Mono& e : sub_monos(k.b, p.nvars())) {
      auto it = out.try_emplace(e, WeylOp(p.twist())).first;
      it->second.add_term(k.a, k.b - e, c * Rat(multi_binomial(k.b, e)));
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// Leibniz coproduct: x^a d^b -> sum_c binom(b,c) x^a d^c (x) d^(b-c).
inline std::vector<std::pair<WeylOp, WeylOp>> coproduct(const WeylOp& t) {
  if (!t.untwisted()) throw NoCanonicalAction("coproduct is defined for untwisted operators");
  std::map<std::pair<WKey, Mono>, Rat> acc;
  for (const auto& [k, c] : t.terms())
    for (const Mono& e : sub_monos(k.b, t.nvars()))
      acc[{WKey{k.a, e}, k.b - e}] += c * Rat(multi_binomial(k.b, e));
  std::vector<std::pair<WeylOp, WeylOp>> out;
  for (const auto& [key, c] : acc) {
    if (is_zero(c)) continue;
    out.emplace_back(WeylOp::monomial(t.twist(), key.first.a, key.first.b, c),
                     WeylOp::monomial(t.twist(), Mono{}, key.second));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Order predicate

using Endomap = std::function<Poly(const Poly&)>;

// A is of order <= N iff every (N+1)-fold commutator with coordinate
// multiplications vanishes; checked on all monomials of degree <= degree_cap.
inline bool is_order_at_most(const Endomap& A, int nvars, int N, int degree_cap) {
  std::vector<Endomap> layer{A};
  for (int step = 0; step <= N; ++step) {
    std::vector<Endomap> next;
    for (const auto& B : layer)
      for (int i = 0; i < nvars; ++i) {
        Poly xi = Poly::var(nvars, i);
        next.push_back([B, xi](const Poly& g) { return xi * B(g) - B(xi * g); });
      }
    layer.swap(next);
  }
  for (const auto& B : layer)
    for (const Mono& m : monos_up_to(nvars, degree_cap))
      if (!B(Poly(nvars, m)).is_zero()) return false;
  return true;
}

inline bool is_order_at_most(const WeylOp& A, int N, int degree_cap) {
  if (A.untwisted())
    return is_order_at_most([A](const Poly& g) { return weyl_apply(A, g); }, A.nvars(), N,
                            degree_cap);
  // Twisted operators: commutators computed inside the algebra.
  std::vector<WeylOp> layer{A};
  for (int step = 0; step <= N; ++step) {
    std::vector<WeylOp> next;
    for (const auto& B : layer)
      for (int i = 0; i < A.nvars(); ++i) {
        WeylOp xi = WeylOp::x(A.twist(), i);
        WeylOp c = xi * B - B * xi;
        if (!c.is_zero()) next.push_back(c);
      }
    layer.swap(next);
  }
  return layer.empty();
}

// Def-level check with arbitrary functions: commutators against the supplied
// functions instead of coordinates.
inline bool order_vanishes_against(const Endomap& A, const std::vector<Poly>& fs, int nvars,
                                   int N, int degree_cap) {
  if (static_cast<int>(fs.size()) != N + 1) throw std::invalid_argument("need N+1 functions");
  Endomap B = A;
  for (const auto& f : fs) B = [B, f](const Poly& g) { return f * B(g) - B(f * g); };
  for (const Mono& m : monos_up_to(nvars, degree_cap))
    if (!B(Poly(nvars, m)).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Torsor isomorphisms D_nu -> D_{nu + dg}

class TorsorIso {
 public:
  TorsorIso(const OneForm& nu, const Poly& g)
      : src_(make_twist(nu)), dst_(make_twist(nu + OneForm::exact(g))), g_(g) {}

  const TwistPtr& source() const { return src_; }
  const TwistPtr& target() const { return dst_; }
  const Poly& g() const { return g_; }

  // Image of nabla_i: nabla_i + d_i g.
  WeylOp image_nabla(int i) const {
    return WeylOp::d(dst_, i) + WeylOp::function(dst_, g_.partial(i));
  }

  WeylOp operator()(const WeylOp& p) const {
    if (!(p.twist_form() == src_->form())) throw TwistMismatch("operator not in the source algebra");
    WeylOp out(dst_);
    std::map<Mono, WeylOp> cache;
    for (const auto& [k, c] : p.terms()) {
      auto it = cache.find(k.b);
      if (it == cache.end()) {
        WeylOp img = WeylOp::scalar(dst_, 1);
        for (int i = 0; i < p.nvars(); ++i)
          for (int r = 0; r < k.b[i]; ++r) img = img * image_nabla(i);
        it = cache.emplace(k.b, img).first;
      }
      out += it->second.times_monomial_left(k.a) * c;
    }
    return out;
  }

 private:
  TwistPtr src_, dst_;
  Poly g_;
};

inline TorsorIso torsor_iso(const OneForm& nu, const Poly& g) { return TorsorIso(nu, g); }

// ---------------------------------------------------------------------------
// Associated graded check

struct GrRow {
  int k;
  int dim;
  int expected;
};

// Rank of the order-k symbols of x^a * (all words of k covariant derivatives),
// |a| <= degree_cap, against #monomials * dim Sym^k.
inline std::vector<GrRow> gr_dimension_check(const OneForm& nu, int order_cap, int degree_cap) {
  TwistPtr tw = make_twist(nu);
  int n = nu.nvars;
  std::vector<GrRow> rows;
  for (int k = 0; k <= order_cap; ++k) {
    std::vector<WeylOp> words{WeylOp::scalar(tw, 1)};
    for (int step = 0; step < k; ++step) {
      std::vector<WeylOp> next;
      for (const auto& w : words)
        for (int i = 0; i < n; ++i) next.push_back(w * WeylOp::d(tw, i));
      words.swap(next);
    }
    std::map<WKey, int> col;
    std::vector<WeylOp> symbols;
    for (const Mono& a : monos_up_to(n, degree_cap))
      for (const auto& w : words) {
        WeylOp s = w.times_monomial_left(a).homogeneous_order(k);
        for (const auto& [key, c] : s.terms()) col.emplace(key, 0);
        symbols.push_back(std::move(s));
      }
    int idx = 0;
    for (auto& kv : col) kv.second = idx++;
    SparseMat m(static_cast<int>(symbols.size()), idx);
    for (std::size_t r = 0; r < symbols.size(); ++r)
      for (const auto& [key, c] : symbols[r].terms()) m.add(static_cast<int>(r), col[key], c);
    int expected = static_cast<int>(monos_up_to(n, degree_cap).size() * monos_of_degree(n, k).size());
    rows.push_back(GrRow{k, rank(m), expected});
  }
  return rows;
}

}  // namespace qlag
