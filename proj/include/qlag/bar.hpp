#pragma once

// Bar words over A = Diff(O^., O) with optional ends in N = Diff(O^., D^op)^op
// (left) and M = Diff(O^., D) (right).
//
// Sign conventions: every element x carries the shifted degree |x|' = arity - 1,
// ends included. The differential is
//   sum_s (-1)^{|x_0|'+..+|x_{s-1}|'} b1(x_s) + sum_s (same sign) b2(x_s, x_{s+1})
// with b1(x) = (-1)^{k-1} d_std(x) and b2 the shifted products below.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cochain.hpp"
#include "linalg.hpp"

namespace qlag {

struct TruncationOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BarKey {
  std::optional<CKey> left;
  std::vector<CKey> letters;
  std::optional<CKey> right;
  bool operator==(const BarKey&) const = default;
  auto operator<=>(const BarKey& o) const {
    if (letters.size() != o.letters.size()) return letters.size() <=> o.letters.size();
    if (auto c = left <=> o.left; c != 0) return c;
    if (auto c = letters <=> o.letters; c != 0) return c;
    return right <=> o.right;
  }

  int length() const { return static_cast<int>(letters.size()); }
  // Sum of shifted degrees plus 2 for each end present.
  int degree() const {
    int d = 0;
    if (left) d += static_cast<int>(left->slots.size());
    if (right) d += static_cast<int>(right->slots.size());
    for (const auto& l : letters) d += static_cast<int>(l.slots.size()) - 1;
    return d;
  }
  int total_order() const {
    int t = 0;
    if (left) t += left->total_order();
    if (right) t += right->total_order();
    for (const auto& l : letters) t += l.total_order();
    return t;
  }
  int weight() const {
    int w = 0;
    if (left) w += left->weight();
    if (right) w += right->weight();
    for (const auto& l : letters) w += l.weight();
    return w;
  }
  int max_arity() const {
    int m = 0;
    if (left) m = std::max<int>(m, left->slots.size());
    if (right) m = std::max<int>(m, right->slots.size());
    for (const auto& l : letters) m = std::max<int>(m, l.slots.size());
    return m;
  }
  // Normalized: no slot of order zero anywhere.
  bool normalized() const {
    auto ok = [](const CKey& k) {
      for (const auto& s : k.slots)
        if (s.is_one()) return false;
      return true;
    };
    if (left && !ok(*left)) return false;
    if (right && !ok(*right)) return false;
    for (const auto& l : letters)
      if (!ok(l)) return false;
    return true;
  }
};

// Which ends the words carry, and the twisted Weyl algebra behind M. The left
// end N = Diff(O^., D_X^op)^op is built on the untwisted D_X, whose derivations
// act on the arguments.
struct BarSpace {
  int nvars = 1;
  TwistPtr twist;
  bool left = false, right = false;

  static BarSpace plain(int n) { return {n, zero_twist(n), false, false}; }
  static BarSpace two_sided(TwistPtr tw) {
    int n = tw->nvars();
    return {n, std::move(tw), true, true};
  }

  CoeffKind a_kind() const { return CoeffKind::O(nvars); }
  CoeffKind n_kind() const { return CoeffKind::TDO_op(zero_twist(nvars), true); }
  CoeffKind m_kind() const { return CoeffKind::TDO(twist); }
  bool operator==(const BarSpace& o) const {
    return nvars == o.nvars && left == o.left && right == o.right &&
           (twist == o.twist || twist->form() == o.twist->form());
  }
};

class BarChain {
 public:
  explicit BarChain(BarSpace sp) : sp_(std::move(sp)) {}
  BarChain(BarSpace sp, LinComb<BarKey> t) : sp_(std::move(sp)) {
    for (const auto& [k, c] : t) add_term(k, c);
  }

  const BarSpace& space() const { return sp_; }
  const LinComb<BarKey>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const BarKey& k, const Rat& c) {
    if (k.left.has_value() != sp_.left || k.right.has_value() != sp_.right)
      throw std::invalid_argument("bar word ends do not match the space");
    t_.add(k, c);
  }

  bool operator==(const BarChain& o) const { return sp_ == o.sp_ && t_ == o.t_; }
  BarChain& operator+=(const BarChain& o) { same(o); t_ += o.t_; return *this; }
  BarChain& operator-=(const BarChain& o) { same(o); t_ -= o.t_; return *this; }
  BarChain operator+(const BarChain& o) const { BarChain r = *this; r += o; return r; }
  BarChain operator-(const BarChain& o) const { BarChain r = *this; r -= o; return r; }
  BarChain operator-() const { BarChain r = *this; r.t_.scale(-1); return r; }
  BarChain operator*(const Rat& s) const { BarChain r = *this; r.t_.scale(s); return r; }

  int max_length() const {
    int m = 0;
    for (const auto& [k, c] : t_) m = std::max(m, k.length());
    return m;
  }

  std::string str() const;

 private:
  void same(const BarChain& o) const {
    if (!(sp_ == o.sp_)) throw std::invalid_argument("bar chains from different spaces");
  }
  BarSpace sp_;
  LinComb<BarKey> t_;
};

namespace detail {

inline std::string key_str(const CKey& k, const CoeffKind& kind) {
  return Cochain(static_cast<int>(k.slots.size()), kind, CComb(k, 1)).str();
}

inline Cochain as_cochain(const CKey& k, const CoeffKind& kind) {
  return Cochain(static_cast<int>(k.slots.size()), kind, CComb(k, 1));
}

}  // namespace detail

inline std::string BarChain::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) s += "\n";
    first = false;
    s += to_string(c) + " *";
    auto strip = [](std::string x) {
      auto p = x.rfind(" @");
      return p == std::string::npos ? x : x.substr(0, p);
    };
    if (k.left) s += " " + strip(detail::key_str(*k.left, sp_.n_kind())) + " |";
    for (const auto& l : k.letters) s += " " + strip(detail::key_str(l, sp_.a_kind())) + " |";
    if (k.right) s += " " + strip(detail::key_str(*k.right, sp_.m_kind()));
    if (s.back() == '|') s.pop_back();
  }
  return s;
}

// Relative normal form over O: functions travel to the right end. In N the
// right O-action is left multiplication, letters absorb functions into their
// coefficient and M multiplies its value from the left, so only exponents move.
inline BarKey relative_normal(BarKey k) {
  if (!k.right) return k;
  Mono acc;
  if (k.left) {
    acc = acc + k.left->a;
    k.left->a = Mono{};
  }
  for (auto& l : k.letters) {
    acc = acc + l.a;
    l.a = Mono{};
  }
  k.right->a = k.right->a + acc;
  return k;
}

inline BarChain relative_normal(const BarChain& c) {
  BarChain out(c.space());
  for (const auto& [k, v] : c.terms()) out.add_term(relative_normal(k), v);
  return out;
}

namespace detail {

// Element position inside a word: 0 = left end (if any), then letters, then right end.
struct WordView {
  const BarKey& k;
  const BarSpace& sp;
  int count() const { return (k.left ? 1 : 0) + k.length() + (k.right ? 1 : 0); }
  int nletter(int pos) const { return pos - (k.left ? 1 : 0); }
  bool is_left(int pos) const { return k.left && pos == 0; }
  bool is_right(int pos) const { return k.right && pos == count() - 1; }
  const CKey& at(int pos) const {
    if (is_left(pos)) return *k.left;
    if (is_right(pos)) return *k.right;
    return k.letters[nletter(pos)];
  }
  CoeffKind kind(int pos) const {
    if (is_left(pos)) return sp.n_kind();
    if (is_right(pos)) return sp.m_kind();
    return sp.a_kind();
  }
  int shifted(int pos) const { return static_cast<int>(at(pos).slots.size()) - 1; }
};

// Word with elements [pos, pos+span) replaced by key r (kind decided by position).
inline BarKey replace(const WordView& v, int pos, int span, const CKey& r) {
  BarKey out;
  const int cnt = v.count();
  for (int p = 0; p < cnt; ++p) {
    if (p > pos && p < pos + span) continue;
    const CKey& src = p == pos ? r : v.at(p);
    bool first = p == pos ? v.is_left(pos) : v.is_left(p);
    bool last = p == pos ? v.is_right(pos + span - 1) : v.is_right(p);
    if (first) out.left = src;
    else if (last) out.right = src;
    else out.letters.push_back(src);
  }
  return out;
}

}  // namespace detail

// b1(x) = (-1)^{k-1} d_std(x); at arity 0 hochschild_d already carries the
// flip that makes it equal to -d_std.
inline Cochain bar_b1(const Cochain& x) {
  Cochain h = hochschild_d(x);
  return x.arity() == 0 ? h : h * sign_rat(x.arity() - 1);
}

// Shifted products: letter-letter (-1)^{i} cup, N-letter (-1)^{k_n} act_right,
// letter-M (-1)^{i} act_left.
inline Cochain bar_b2(const Cochain& x, const Cochain& y) {
  if (x.kind().is_O() && y.kind().is_O()) return cup(x, y) * sign_rat(x.arity());
  if (!x.kind().is_O() && y.kind().is_O()) return act_right(x, y) * sign_rat(x.arity());
  if (x.kind().is_O() && !y.kind().is_O()) return act_left(x, y) * sign_rat(x.arity());
  throw KindMismatch("the two ends of a bar word do not multiply");
}

inline BarChain bar_d(const BarChain& w) {
  const BarSpace& sp = w.space();
  BarChain out(sp);
  for (const auto& [key, c] : w.terms()) {
    detail::WordView v{key, sp};
    const int cnt = v.count();
    int prefix = 0;
    for (int s = 0; s < cnt; ++s) {
      Rat sg = sign_rat(prefix) * c;
      Cochain b1 = bar_b1(detail::as_cochain(v.at(s), v.kind(s)));
      for (const auto& [k, cc] : b1.terms()) out.add_term(detail::replace(v, s, 1, k), sg * cc);
      if (s + 1 < cnt && !(v.is_left(s) && v.is_right(s + 1))) {
        Cochain b2 = bar_b2(detail::as_cochain(v.at(s), v.kind(s)),
                            detail::as_cochain(v.at(s + 1), v.kind(s + 1)));
        for (const auto& [k, cc] : b2.terms()) out.add_term(detail::replace(v, s, 2, k), sg * cc);
      }
      prefix += v.shifted(s);
    }
  }
  return sp.right ? relative_normal(out) : out;
}

// ---------------------------------------------------------------------------
// Gerstenhaber-Voronov product on plain words

inline BarChain word(int nvars, const std::vector<Cochain>& letters) {
  BarChain w(BarSpace::plain(nvars));
  LinComb<BarKey> acc(BarKey{}, 1);
  for (const auto& l : letters) {
    if (!l.kind().is_O()) throw KindMismatch("bar letters must be function valued");
    LinComb<BarKey> next;
    for (const auto& [k, c] : acc)
      for (const auto& [lk, lc] : l.terms()) {
        BarKey k2 = k;
        k2.letters.push_back(lk);
        next.add(k2, c * lc);
      }
    acc = std::move(next);
  }
  for (const auto& [k, c] : acc) w.add_term(k, c);
  return w;
}

namespace detail {

inline int shifted_sum(const std::vector<CKey>& v, int from, int to) {
  int s = 0;
  for (int t = from; t < to; ++t) s += static_cast<int>(v[t].slots.size()) - 1;
  return s;
}

// Words u = a_0..a_{p-1}, v = b_0..b_{q-1}: each b either stands alone or sits
// in a consecutive run inserted into one a. Koszul sign from every b that ends
// up in front of an a; an inserted b counts as placed after its host.
inline void gv_words(const std::vector<CKey>& a, const std::vector<CKey>& b, const Rat& coef,
                     int nvars, int cap, LinComb<BarKey>& out) {
  const int p = static_cast<int>(a.size()), q = static_cast<int>(b.size());
  const CoeffKind O = CoeffKind::O(nvars);
  struct Item {
    std::vector<CKey> letters;
    Rat c;
  };
  auto rec = [&](auto&& self, int i, int j, Item cur) -> void {
    if (i == p && j == q) {
      if (static_cast<int>(cur.letters.size()) > cap)
        throw TruncationOverflow("product word longer than the bar length cap");
      BarKey k;
      k.letters = std::move(cur.letters);
      out.add(k, cur.c);
      return;
    }
    if (j < q) {
      Item nx = cur;
      int sb = static_cast<int>(b[j].slots.size()) - 1;
      nx.c *= sign_rat(sb * shifted_sum(a, i, p));
      nx.letters.push_back(b[j]);
      self(self, i, j + 1, std::move(nx));
    }
    if (i < p) {
      for (int k = j; k <= q; ++k) {
        int blk = shifted_sum(b, j, k);
        Rat s = sign_rat(blk * shifted_sum(a, i + 1, p));
        if (k == j) {
          Item nx = cur;
          nx.letters.push_back(a[i]);
          self(self, i + 1, k, std::move(nx));
          continue;
        }
        if (k - j > static_cast<int>(a[i].slots.size())) break;
        std::vector<Cochain> args;
        for (int t = j; t < k; ++t) args.push_back(as_cochain(b[t], O));
        Cochain br = brace(as_cochain(a[i], O), args);
        for (const auto& [bk, bc] : br.terms()) {
          Item nx = cur;
          nx.c *= s * bc;
          nx.letters.push_back(bk);
          self(self, i + 1, k, std::move(nx));
        }
      }
    }
  };
  rec(rec, 0, 0, Item{{}, coef});
}

}  // namespace detail

// Product of plain bar words; throws TruncationOverflow past length_cap.
inline BarChain gv_mul(const BarChain& u, const BarChain& v, int length_cap) {
  if (u.space().left || u.space().right || v.space().left || v.space().right)
    throw std::invalid_argument("gv_mul expects plain bar words; use two_sided_mul");
  if (u.space().nvars != v.space().nvars) throw VariableError("variable counts differ");
  LinComb<BarKey> out;
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms())
      detail::gv_words(ku.letters, kv.letters, cu * cv, u.space().nvars, length_cap, out);
  return BarChain(u.space(), out);
}

// Shifted total degree of a homogeneous plain chain (sum of |a|').
inline int plain_degree(const BarKey& k) {
  return detail::shifted_sum(k.letters, 0, k.length());
}

// Deconcatenation coproduct, as pairs of words with coefficients.
inline std::vector<std::tuple<BarKey, BarKey, Rat>> deconcatenate(const BarChain& w) {
  std::vector<std::tuple<BarKey, BarKey, Rat>> out;
  for (const auto& [k, c] : w.terms())
    for (int s = 0; s <= k.length(); ++s) {
      BarKey l, r;
      l.letters.assign(k.letters.begin(), k.letters.begin() + s);
      r.letters.assign(k.letters.begin() + s, k.letters.end());
      out.emplace_back(l, r, c);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Two-sided words

inline BarChain two_sided(const BarSpace& sp, const Cochain& n, const std::vector<Cochain>& letters,
                          const Cochain& m) {
  if (!(n.kind() == sp.n_kind())) throw KindMismatch("left end must lie in Diff(O^., D^op)^op");
  if (!(m.kind() == sp.m_kind())) throw KindMismatch("right end must lie in Diff(O^., D)");
  BarChain mid = word(sp.nvars, letters);
  BarChain out(sp);
  for (const auto& [kn, cn] : n.terms())
    for (const auto& [kw, cw] : mid.terms())
      for (const auto& [km, cm] : m.terms()) {
        BarKey k = kw;
        k.left = kn;
        k.right = km;
        out.add_term(k, cn * cw * cm);
      }
  return relative_normal(out);
}

// (n|w|m)(n'|w'|m') = (n n')|(w w')|(m m') for n' and m of arity 0, computed
// on relative normal forms.
inline BarChain two_sided_mul(const BarChain& u, const BarChain& v, int length_cap) {
  const BarSpace& sp = u.space();
  if (!(sp == v.space()) || !sp.left || !sp.right)
    throw std::invalid_argument("two_sided_mul expects two-sided words of one space");
  BarChain out(sp);
  const CoeffKind nk = sp.n_kind(), mk = sp.m_kind();
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      if (!ku.right->slots.empty() || !kv.left->slots.empty())
        throw std::invalid_argument("two_sided_mul needs arity-0 inner ends");
      Cochain nn = cup(detail::as_cochain(*ku.left, nk), detail::as_cochain(*kv.left, nk));
      Cochain mm = cup(detail::as_cochain(*ku.right, mk), detail::as_cochain(*kv.right, mk));
      LinComb<BarKey> mid;
      detail::gv_words(ku.letters, kv.letters, cu * cv, sp.nvars, length_cap, mid);
      for (const auto& [kn, cn] : nn.terms())
        for (const auto& [kw, cw] : mid)
          for (const auto& [km, cm] : mm.terms()) {
            BarKey k = kw;
            k.left = kn;
            k.right = km;
            out.add_term(relative_normal(k), cn * cw * cm);
          }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Windowed two-sided complex

struct BarWindow {
  int nvars = 1;
  int order_cap = 1;   // total differential order over the whole word
  int arity_cap = 2;   // per element; larger arities are quotiented out
  int length_cap = 2;  // number of letters
  int weight = 0;
};

struct ComplexData {
  std::map<int, std::vector<BarKey>> basis;   // by degree
  std::map<int, SparseMat> d;                 // d: degree k -> k+1
  std::map<int, int> rank;
  std::map<int, int> cohomology;
  bool closed = true;                         // image stays inside the window
  bool d_squared_zero = true;
  std::string closure_witness;
};

namespace detail {

// All normalized CKeys with given arity and total order exactly t; coefficient
// exponent a set to zero (callers fill in a).
inline void keys_of_order(int nvars, int arity, int t, bool with_b, std::vector<CKey>& out) {
  // Distribute t among arity slots (each >= 1) and, optionally, b.
  std::vector<Mono> slots(arity);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == arity) {
      if (!with_b) {
        if (left == 0) out.push_back(CKey{slots, Mono{}, Mono{}});
        return;
      }
      for (const Mono& b : monos_of_degree(nvars, left)) out.push_back(CKey{slots, Mono{}, b});
      return;
    }
    int remaining = arity - pos - 1;
    for (int o = 1; o <= left - remaining; ++o)
      for (const Mono& s : monos_of_degree(nvars, o)) {
        slots[pos] = s;
        self(self, pos + 1, left - o);
      }
  };
  if (arity == 0) {
    if (with_b)
      for (const Mono& b : monos_of_degree(nvars, t)) out.push_back(CKey{{}, Mono{}, b});
    else if (t == 0)
      out.push_back(CKey{{}, Mono{}, Mono{}});
    return;
  }
  rec(rec, 0, t);
}

}  // namespace detail

// Normalized two-sided words n|a_1..a_r|m in relative normal form inside the window.
inline std::vector<BarKey> two_sided_basis(const BarWindow& win) {
  std::vector<BarKey> out;
  const int n = win.nvars, T = win.order_cap, I = win.arity_cap;
  // Letters: arity >= 1, order >= arity.
  std::vector<std::vector<CKey>> letters_of_order(T + 1);
  for (int t = 1; t <= T; ++t)
    for (int k = 1; k <= std::min(t, I); ++k) detail::keys_of_order(n, k, t, false, letters_of_order[t]);
  std::vector<std::vector<CKey>> ends_of_order(T + 1);
  for (int t = 0; t <= T; ++t)
    for (int k = 0; k <= std::min(t, I); ++k) detail::keys_of_order(n, k, t, true, ends_of_order[t]);

  BarKey cur;
  auto fill_letters = [&](auto&& self, int budget, int r) -> void {
    // The right end carries all functions; its degree is fixed by the weight.
    for (int tm = 0; tm <= budget; ++tm) {
      int total = T - budget + tm;
      int adeg = win.weight + total;
      if (adeg >= 0)
        for (const CKey& m : ends_of_order[tm])
          for (const Mono& a : monos_of_degree(n, adeg)) {
            BarKey k = cur;
            CKey mm = m;
            mm.a = a;
            k.right = mm;
            out.push_back(std::move(k));
          }
    }
    if (r == win.length_cap) return;
    for (int t = 1; t <= budget; ++t)
      for (const CKey& l : letters_of_order[t]) {
        cur.letters.push_back(l);
        self(self, budget - t, r + 1);
        cur.letters.pop_back();
      }
  };
  for (int tn = 0; tn <= T; ++tn)
    for (const CKey& nk : ends_of_order[tn]) {
      cur = BarKey{};
      cur.left = nk;
      fill_letters(fill_letters, T - tn, 0);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline ComplexData two_sided_build(const BarWindow& win, const TwistPtr& tw) {
  if (tw->nvars() != win.nvars) throw VariableError("window and twist variable counts differ");
  ComplexData cd;
  BarSpace sp = BarSpace::two_sided(tw);
  for (auto& k : two_sided_basis(win)) cd.basis[k.degree()].push_back(std::move(k));
  std::map<BarKey, std::pair<int, int>> index;  // key -> (degree, position)
  for (const auto& [deg, ks] : cd.basis)
    for (int i = 0; i < static_cast<int>(ks.size()); ++i) index[ks[i]] = {deg, i};

  for (const auto& [deg, ks] : cd.basis) {
    auto nx = cd.basis.find(deg + 1);
    int rows = nx == cd.basis.end() ? 0 : static_cast<int>(nx->second.size());
    SparseMat m(rows, static_cast<int>(ks.size()));
    for (int j = 0; j < static_cast<int>(ks.size()); ++j) {
      BarChain e(sp);
      e.add_term(ks[j], 1);
      BarChain de = bar_d(e);
      for (const auto& [k, c] : de.terms()) {
        if (k.max_arity() > win.arity_cap) continue;  // quotient
        auto it = index.find(k);
        if (it == index.end()) {
          if (cd.closed) {
            BarChain w(sp);
            w.add_term(k, c);
            cd.closure_witness = w.str();
          }
          cd.closed = false;
          continue;
        }
        m.add(it->second.second, j, c);
      }
    }
    cd.d.emplace(deg, std::move(m));
  }
  for (const auto& [deg, m] : cd.d) {
    cd.rank[deg] = rank(m);
    auto nx = cd.d.find(deg + 1);
    if (nx != cd.d.end() && !(nx->second * m).is_zero_matrix()) cd.d_squared_zero = false;
  }
  for (const auto& [deg, ks] : cd.basis) {
    int in = cd.rank.count(deg - 1) ? cd.rank[deg - 1] : 0;
    cd.cohomology[deg] = static_cast<int>(ks.size()) - cd.rank[deg] - in;
  }
  return cd;
}

}  // namespace qlag
