#pragma once

// Verification suites shared by the command line tool and the acceptance
// runner. Every randomized instance comes from Rng(seed), so a report is a
// function of its configuration.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include "koszul_bv.hpp"
#include "parse.hpp"
#include "quantize.hpp"
#include "random.hpp"
#include "reference.hpp"
#include "report.hpp"

namespace qlag {

struct SuiteConfig {
  int vars = 1;
  int order = 2;
  int arity = 3;
  std::optional<int> degree_cap;
  int bar_length = 2;
  std::optional<int> weight;
  std::string twist;
  std::string f;
  std::uint64_t seed = 42;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["vars"] = vars;
    j["order"] = order;
    j["arity"] = arity;
    j["degree_cap"] = degree_cap ? nlohmann::json(*degree_cap) : nlohmann::json(nullptr);
    j["bar_length"] = bar_length;
    j["weight"] = weight ? nlohmann::json(*weight) : nlohmann::json(nullptr);
    j["twist"] = twist;
    j["f"] = f;
    j["seed"] = seed;
    return j;
  }
};

namespace suite_detail {

using json = nlohmann::json;

// The configured twist, or x^2 dy when n >= 2 and none is given.
inline TwistPtr twist_for(const SuiteConfig& cfg, int n, bool default_curved = true) {
  if (!cfg.twist.empty()) {
    if (n != cfg.vars) return zero_twist(n);
    return make_twist(parse_one_form(cfg.twist, n));
  }
  if (default_curved && n >= 2) return make_twist(parse_one_form("x^2*dy", n));
  return zero_twist(n);
}

inline std::vector<CoeffKind> kinds_for(const SuiteConfig& cfg, int n) {
  std::vector<CoeffKind> ks{CoeffKind::O(n), CoeffKind::TDO(zero_twist(n))};
  TwistPtr tw = twist_for(cfg, n);
  if (!tw->form().is_zero()) ks.push_back(CoeffKind::TDO(tw));
  ks.push_back(CoeffKind::TDO_op(zero_twist(n)));
  ks.push_back(CoeffKind::TDO_op(zero_twist(n), true));
  return ks;
}

inline std::string tag(const CoeffKind& k, int n) { return k.str() + "/n" + std::to_string(n); }

// Differential without the arity-0 flip.
inline Cochain d_std(const Cochain& A) {
  Cochain h = hochschild_d(A);
  return (A.arity() == 0 && !A.kind().is_O()) ? -h : h;
}

// All tuples of k monomials of degree <= deg, as polynomials.
inline std::vector<std::vector<Poly>> monomial_tuples(int n, int k, int deg) {
  std::vector<Poly> ms;
  for (const Mono& m : monos_up_to(n, deg)) ms.push_back(Poly(n, m));
  std::vector<std::vector<Poly>> out{{}};
  for (int s = 0; s < k; ++s) {
    std::vector<std::vector<Poly>> next;
    for (const auto& t : out)
      for (const auto& m : ms) {
        auto t2 = t;
        t2.push_back(m);
        next.push_back(std::move(t2));
      }
    out.swap(next);
  }
  return out;
}

// f * d_{i1} ^ .. ^ d_{ik} as an antisymmetrized polydifferential cochain; d-closed.
inline Cochain hkr(const Poly& f, const std::vector<int>& idx) {
  const int n = f.nvars();
  Cochain c(static_cast<int>(idx.size()), CoeffKind::O(n));
  std::vector<int> p(idx.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
  do {
    int inv = 0;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b)
        if (p[a] > p[b]) ++inv;
    for (const auto& [m, cf] : f.terms()) {
      CKey k;
      for (int q : p) k.slots.push_back(Mono::unit(idx[q]));
      k.a = m;
      c.add_term(k, cf * sign_rat(inv));
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return c;
}

inline Cochain random_closed(Rng& r, int n, int arity) {
  std::vector<int> idx;
  std::vector<int> all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  // A random subset of size arity (arity <= n).
  for (int i = 0; i < n && static_cast<int>(idx.size()) < arity; ++i)
    if (n - i == arity - static_cast<int>(idx.size()) || r.coin()) idx.push_back(i);
  Cochain c = hkr(r.nonzero_poly(n, 2, 2), idx);
  if (arity >= 1 && r.coin()) c += hochschild_d(r.cochain(CoeffKind::O(n), arity - 1, 1, 1, 2));
  return c;
}

// Is the O-valued cochain t in the image of d? Exact solve over the arity
// k-1 cochains sharing t's coefficient exponents and total orders, both of
// which d preserves.
inline bool in_image_of_d(const Cochain& t) {
  const int k = t.arity(), n = t.nvars();
  if (k == 0) return t.is_zero();
  std::set<std::pair<Mono, int>> grades;
  for (const auto& [key, c] : t.terms()) grades.insert({key.a, key.total_order()});
  std::vector<CKey> cols;
  for (const auto& [a, ord] : grades) {
    std::vector<Mono> slots(k - 1);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == k - 1) {
        if (left == 0) cols.push_back(CKey{slots, a, Mono{}});
        return;
      }
      for (int o = 0; o <= left; ++o)
        for (const Mono& s : monos_of_degree(n, o)) {
          slots[pos] = s;
          self(self, pos + 1, left - o);
        }
    };
    rec(rec, 0, ord);
  }
  std::map<CKey, int> rows;
  std::vector<Cochain> imgs;
  for (const auto& c : cols) {
    imgs.push_back(hochschild_d(Cochain(k - 1, t.kind(), CComb(c, 1))));
    for (const auto& [rk, rc] : imgs.back().terms()) rows.try_emplace(rk, static_cast<int>(rows.size()));
  }
  for (const auto& [rk, rc] : t.terms()) rows.try_emplace(rk, static_cast<int>(rows.size()));
  SparseMat m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j)
    for (const auto& [rk, rc] : imgs[j].terms()) m.add(rows.at(rk), j, rc);
  std::vector<Rat> b(rows.size());
  for (const auto& [rk, rc] : t.terms()) b[rows.at(rk)] = rc;
  return solve(m, b).has_value();
}

inline json witness(std::initializer_list<std::pair<const char*, std::string>> items) {
  json w = json::object();
  for (const auto& [k, v] : items) w[k] = v;
  return w;
}

// Records the first failure of a counted property.
struct Tally {
  int instances = 0;
  int failures = 0;
  json first_witness;
  void record(bool ok, const std::function<json()>& wit) {
    ++instances;
    if (!ok && failures++ == 0) first_witness = wit();
  }
  void emit(Report& rep, const std::string& id, json extra = json::object()) const {
    extra["instances"] = instances;
    if (failures) {
      extra["failures"] = failures;
      extra["witness"] = first_witness;
    }
    rep.check(id, failures == 0 && instances > 0, std::move(extra));
  }
};

inline int degree_cap_or(const SuiteConfig& cfg, int dflt) { return cfg.degree_cap.value_or(dflt); }

}  // namespace suite_detail

// ---------------------------------------------------------------------------

inline Report suite_hochschild(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify hochschild", cfg.to_json());
  Rng r(cfg.seed);
  const int deg = degree_cap_or(cfg, 3);
  int total = 0;
  for (int n = 1; n <= cfg.vars; ++n) {
    auto kinds = kinds_for(cfg, n);
    const int per = (200 + static_cast<int>(kinds.size()) * cfg.vars - 1) / (static_cast<int>(kinds.size()) * cfg.vars);
    for (const auto& kind : kinds) {
      Tally d2, ar;
      for (int t = 0; t < per; ++t) {
        Cochain A = r.cochain(kind, r.uniform(0, cfg.arity), cfg.order, 2, 3);
        Cochain dA = hochschild_d(A);
        ar.record(dA.arity() == A.arity() + 1, [&] { return witness({{"A", A.str()}}); });
        d2.record(hochschild_d(dA).is_zero(), [&] { return witness({{"A", A.str()}}); });
      }
      total += d2.instances;
      d2.emit(rep, "d-squared/" + tag(kind, n));
      ar.emit(rep, "arity/" + tag(kind, n));
    }
  }
  rep.check("d-squared/instance-count", total >= 200, {{"instances", total}});

  // Structural differential against the evaluation formula.
  int coh_total = 0;
  for (int n = 1; n <= cfg.vars; ++n) {
    auto kinds = kinds_for(cfg, n);
    const int per = (100 + static_cast<int>(kinds.size()) * cfg.vars - 1) / (static_cast<int>(kinds.size()) * cfg.vars);
    for (const auto& kind : kinds) {
      Tally coh;
      for (int t = 0; t < per; ++t) {
        int k = r.uniform(0, std::min(cfg.arity, n == 1 ? 3 : 2));
        Cochain A = r.cochain(kind, k, cfg.order, 2, 3);
        Cochain dA = hochschild_d(A);
        bool ok = true;
        std::string bad;
        for (const auto& g : monomial_tuples(n, k + 1, deg)) {
          if (eval_polydiff(dA, g) == ref::hochschild_d(A, g)) continue;
          ok = false;
          for (const auto& p : g) bad += p.str() + "; ";
          break;
        }
        coh.record(ok, [&] { return witness({{"A", A.str()}, {"args", bad}}); });
      }
      coh_total += coh.instances;
      coh.emit(rep, "coherence/" + tag(kind, n), {{"arg_degree_cap", deg}});
    }
  }
  rep.check("coherence/instance-count", coh_total >= 100, {{"instances", coh_total}});

  // Worked values.
  {
    auto O1 = CoeffKind::O(1);
    Cochain id = Cochain::basis(O1, {Mono{}}, Mono{});
    rep.check("example/d(1x1)=1x1x1", hochschild_d(id) == Cochain::basis(O1, {Mono{}, Mono{}}, Mono{}));
    Cochain p = Cochain::basis(O1, {}, Mono::unit(0) + Mono::unit(0));
    rep.check("example/d(function)=0", hochschild_d(p).is_zero());
    auto D1 = CoeffKind::TDO(zero_twist(1));
    rep.check("example/d(function@D)=0", hochschild_d(Cochain::basis(D1, {}, Mono::unit(0))).is_zero());
  }
  return rep;
}

inline Report suite_cup(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify cup", cfg.to_json());
  Rng r(cfg.seed);
  const int deg = degree_cap_or(cfg, 2);
  for (int n = 1; n <= cfg.vars; ++n)
    for (const auto& kind : kinds_for(cfg, n)) {
      Tally assoc, leib, coh;
      for (int t = 0; t < 40; ++t) {
        int i = r.uniform(0, 2), j = r.uniform(0, 2), l = r.uniform(0, 1);
        Cochain A = r.cochain(kind, i, cfg.order, 2, 2), B = r.cochain(kind, j, cfg.order, 2, 2),
                C = r.cochain(kind, l, cfg.order, 1, 2);
        assoc.record(cup(cup(A, B), C) == cup(A, cup(B, C)),
                     [&] { return witness({{"A", A.str()}, {"B", B.str()}, {"C", C.str()}}); });
        Cochain lhs = d_std(cup(A, B));
        Cochain rhs = kind.outer_op ? cup(d_std(A), B) + cup(A, d_std(B)) * sign_rat(i)
                                    : cup(d_std(A), B) * sign_rat(j) + cup(A, d_std(B));
        leib.record(lhs == rhs, [&] { return witness({{"A", A.str()}, {"B", B.str()}}); });
        if (i + j <= 3) {
          Cochain AB = cup(A, B);
          bool ok = true;
          for (const auto& g : monomial_tuples(n, i + j, deg))
            if (!(eval_polydiff(AB, g) == ref::cup(A, B, g))) {
              ok = false;
              break;
            }
          coh.record(ok, [&] { return witness({{"A", A.str()}, {"B", B.str()}}); });
        }
      }
      assoc.emit(rep, "associativity/" + tag(kind, n));
      leib.emit(rep, "leibniz/" + tag(kind, n),
                {{"rule", kind.outer_op ? "d(AB) = dA.B + (-1)^i A.dB" : "d(AB) = (-1)^j dA.B + A.dB"}});
      coh.emit(rep, "coherence/" + tag(kind, n));
    }
  {
    auto O1 = CoeffKind::O(1);
    Cochain id = Cochain::basis(O1, {Mono{}}, Mono{});
    rep.check("example/(1x1).(1x1)=-(1x1x1)", cup(id, id) == -Cochain::basis(O1, {Mono{}, Mono{}}, Mono{}));
    Cochain m = mu_cochain(1), p = Cochain::basis(O1, {}, Mono::unit(0));
    rep.check("example/m.p", cup(m, p) == Cochain::basis(O1, {Mono{}, Mono{}}, Mono::unit(0)));
  }
  return rep;
}

inline Report suite_braces(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify braces", cfg.to_json());
  Rng r(cfg.seed);
  const int deg = degree_cap_or(cfg, 2);
  for (int n = 1; n <= cfg.vars; ++n) {
    auto O = CoeffKind::O(n);
    Tally eps, arity, gv, empty, over;
    for (int t = 0; t < 60; ++t) {
      int i = r.uniform(1, 3), m = r.uniform(1, std::min(i, 2));
      Cochain A = r.cochain(O, i, cfg.order, 2, 2);
      std::vector<Cochain> args;
      int expected = i - m;
      for (int l = 0; l < m; ++l) {
        args.push_back(r.cochain(O, r.uniform(0, 2), cfg.order, 1, 2));
        expected += args.back().arity();
      }
      Cochain br = brace(A, args);
      arity.record(br.arity() == expected, [&] { return witness({{"A", A.str()}}); });
      if (br.arity() <= 3) {
        bool ok = true;
        for (const auto& g : monomial_tuples(n, br.arity(), deg))
          if (!(eval_polydiff(br, g) == ref::brace(A, args, g))) {
            ok = false;
            break;
          }
        eps.record(ok, [&] {
          json w = witness({{"A", A.str()}});
          for (const auto& a : args) w["args"].push_back(a.str());
          return w;
        });
      }
      empty.record(brace(A, {}) == A, [&] { return witness({{"A", A.str()}}); });
      std::vector<Cochain> many(i + 1, args[0]);
      over.record(brace(A, many).is_zero(), [&] { return witness({{"A", A.str()}}); });

      Cochain B = r.cochain(O, r.uniform(1, 3), cfg.order, 1, 2), C = r.cochain(O, r.uniform(1, 3), cfg.order, 1, 2);
      Cochain lhs = brace(brace(A, {B}), {C});
      Cochain rhs = brace(A, {brace(B, {C})}) + brace(A, {B, C}) +
                    brace(A, {C, B}) * sign_rat((B.arity() - 1) * (C.arity() - 1));
      gv.record(lhs == rhs, [&] { return witness({{"A", A.str()}, {"B", B.str()}, {"C", C.str()}}); });
    }
    eps.emit(rep, "epsilon-sign/n" + std::to_string(n), {{"arg_degree_cap", deg}});
    arity.emit(rep, "arity-formula/n" + std::to_string(n));
    gv.emit(rep, "gerstenhaber-voronov/n" + std::to_string(n));
    empty.emit(rep, "empty-brace/n" + std::to_string(n));
    over.emit(rep, "too-many-arguments/n" + std::to_string(n));

    // Module braces for D and D^op coefficients.
    for (const auto& kind : kinds_for(cfg, n)) {
      if (kind.is_O()) continue;
      Tally mod;
      for (int t = 0; t < 20; ++t) {
        int i = r.uniform(0, 2);
        Cochain B = r.cochain(kind, i, cfg.order, 1, 2);
        Cochain a = r.cochain(O, r.uniform(0, 2), cfg.order, 1, 2);
        Cochain br = brace_module(B, {a});
        bool ok = true;
        if (br.arity() <= 3)
          for (const auto& g : monomial_tuples(n, br.arity(), std::min(deg, 2)))
            if (!(eval_polydiff(br, g) == ref::brace(B, {a}, g))) {
              ok = false;
              break;
            }
        if (i == 0) ok = ok && br.is_zero();
        mod.record(ok, [&] { return witness({{"B", B.str()}, {"a", a.str()}}); });
      }
      mod.emit(rep, "module-brace/" + tag(kind, n));
    }

    // Homotopy commutativity of the cup product on closed cochains.
    Tally hom, wit;
    for (int t = 0; t < 16; ++t) {
      int i = r.uniform(1, std::min(n, 2)), j = r.uniform(1, std::min(n, 2));
      Cochain A = random_closed(r, n, i), B = random_closed(r, n, j);
      Cochain comm = cup(A, B) - cup(B, A) * sign_rat(i * j);
      hom.record(in_image_of_d(comm), [&] { return witness({{"A", A.str()}, {"B", B.str()}}); });
      wit.record(hochschild_d(brace(A, {B})) == comm * sign_rat(j + 1),
                 [&] { return witness({{"A", A.str()}, {"B", B.str()}}); });
    }
    hom.emit(rep, "homotopy-commutativity/n" + std::to_string(n));
    wit.emit(rep, "homotopy-witness/n" + std::to_string(n), {{"rule", "d(A{B}) = (-1)^{j+1} (A.B - (-1)^{ij} B.A)"}});
  }
  {
    auto D1 = CoeffKind::TDO(zero_twist(1));
    Cochain B = Cochain::basis(D1, {Mono::unit(0)}, Mono{});
    Cochain id = Cochain::basis(CoeffKind::O(1), {Mono{}}, Mono{});
    rep.check("example/B{1x1}=B", brace_module(B, {id}) == B);
    Cochain m = mu_cochain(1);
    Cochain b = Cochain::basis(CoeffKind::O(1), {Mono::unit(0)}, Mono{});
    Cochain expect = Cochain::basis(CoeffKind::O(1), {Mono::unit(0), Mono{}}, Mono{}) +
                     Cochain::basis(CoeffKind::O(1), {Mono{}, Mono::unit(0)}, Mono{});
    rep.check("example/m{B}", brace(m, {b}) == expect);
  }
  return rep;
}

inline Report suite_phi(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify phi", cfg.to_json());
  Rng r(cfg.seed);
  {
    TwistPtr t1 = zero_twist(1);
    WeylOp d = WeylOp::d(t1, 0), x = WeylOp::x(t1, 0);
    auto D1 = CoeffKind::TDO(t1);
    Cochain d1 = Cochain::basis(D1, {Mono::unit(0)}, Mono{});
    Cochain one_d = Cochain::basis(D1, {Mono{}}, Mono{}, Mono::unit(0));
    Mono e2 = Mono::unit(0) + Mono::unit(0);
    rep.check("example/phi(d)", phi(d) == d1 + one_d, {{"value", phi(d).str()}});
    Cochain phid2 = Cochain::basis(D1, {e2}, Mono{}) + Cochain::basis(D1, {Mono::unit(0)}, Mono{}, Mono::unit(0), 2) +
                    Cochain::basis(D1, {Mono{}}, Mono{}, e2);
    rep.check("example/phi(d^2)", phi(d * d) == phid2, {{"value", phi(d * d).str()}});
    rep.check("example/phi(d)^2=phi(d^2)", diffod_mul(phi(d), phi(d)) == phid2);
    rep.check("example/phi(f)=1xf", phi(x * x) == one_tensor(x * x));
    rep.check("example/d_D(d)", d_D(d) == d1);
    rep.check("example/d_D(d^2)", d_D(d * d) == Cochain::basis(D1, {e2}, Mono{}) +
                                                     Cochain::basis(D1, {Mono::unit(0)}, Mono{}, Mono::unit(0), 2));
    rep.check("example/(1xx).phi(d)=phi(xd)", diffod_mul(one_tensor(x), phi(d)) == phi(x * d));
    rep.check("example/unit", diffod_mul(one_tensor(WeylOp::scalar(t1, 1)), phi(d * x)) == phi(d * x));
  }
  int random_total = 0;
  for (int n = 1; n <= cfg.vars; ++n) {
    std::vector<TwistPtr> tws{zero_twist(n)};
    TwistPtr tw = twist_for(cfg, n);
    if (!tw->form().is_zero()) tws.push_back(tw);
    for (const auto& t : tws) {
      std::string lbl = "nu=" + t->form().str() + "/n" + std::to_string(n);
      std::vector<WeylOp> gens;
      for (int i = 0; i < n; ++i) {
        gens.push_back(WeylOp::x(t, i));
        gens.push_back(WeylOp::d(t, i));
      }
      Tally g, rnd, dd, cent;
      for (const auto& p : gens)
        for (const auto& q : gens)
          g.record(phi(p * q) == diffod_mul(phi(p), phi(q)), [&] { return witness({{"p", p.str()}, {"q", q.str()}}); });
      const int per = (200 + cfg.vars * static_cast<int>(tws.size()) - 1) / (cfg.vars * static_cast<int>(tws.size())) + 1;
      for (int k = 0; k < per; ++k) {
        WeylOp p = r.weyl(t, cfg.order, 3, 3), q = r.weyl(t, cfg.order, 3, 3);
        rnd.record(phi(p * q) == diffod_mul(phi(p), phi(q)), [&] { return witness({{"p", p.str()}, {"q", q.str()}}); });
        dd.record(hochschild_d(d_D(p)).is_zero(), [&] { return witness({{"p", p.str()}}); });
        Poly f = r.poly(n, 3, 2);
        cent.record(d_D(WeylOp::function(t, f)).is_zero(), [&] { return witness({{"f", f.str()}}); });
      }
      random_total += rnd.instances;
      g.emit(rep, "generators/" + lbl);
      rnd.emit(rep, "random-pairs/" + lbl);
      dd.emit(rep, "d-after-d_D/" + lbl);
      cent.emit(rep, "functions-central/" + lbl);
    }
  }
  rep.check("random-pairs/instance-count", random_total >= 200, {{"instances", random_total}});
  return rep;
}

inline Report suite_torsor(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify torsor", cfg.to_json());
  Rng r(cfg.seed);
  for (int n = 1; n <= cfg.vars; ++n) {
    TwistPtr tw = twist_for(cfg, n);
    std::string lbl = "n" + std::to_string(n);
    Tally gen, rnd, inv, curv, gr;
    for (int t = 0; t < 8; ++t) {
      Poly g = r.poly(n, 3, 3);
      TorsorIso F(tw->form(), g), G(F.target()->form(), -g);
      std::vector<WeylOp> gens;
      for (int i = 0; i < n; ++i) {
        gens.push_back(WeylOp::x(tw, i));
        gens.push_back(WeylOp::d(tw, i));
      }
      for (const auto& p : gens)
        for (const auto& q : gens)
          gen.record(F(p * q) == F(p) * F(q), [&] { return witness({{"g", g.str()}, {"p", p.str()}, {"q", q.str()}}); });
      for (int k = 0; k < 6; ++k) {
        WeylOp p = r.weyl(tw, cfg.order, 2, 3), q = r.weyl(tw, cfg.order, 2, 3);
        rnd.record(F(p * q) == F(p) * F(q), [&] { return witness({{"g", g.str()}, {"p", p.str()}, {"q", q.str()}}); });
        inv.record(G(F(p)) == p, [&] { return witness({{"g", g.str()}, {"p", p.str()}}); });
      }
      curv.record(curvature(F.source()->form()) == curvature(F.target()->form()),
                  [&] { return witness({{"g", g.str()}}); });
    }
    for (const auto& row : gr_dimension_check(tw->form(), std::min(cfg.order, 3), 2))
      gr.record(row.dim == row.expected, [&] {
        return json{{"k", row.k}, {"dim", row.dim}, {"expected", row.expected}};
      });
    gen.emit(rep, "generator-pairs/" + lbl, {{"nu", tw->form().str()}});
    rnd.emit(rep, "random-pairs/" + lbl);
    inv.emit(rep, "inverse/" + lbl);
    curv.emit(rep, "curvature-preserved/" + lbl);
    gr.emit(rep, "associated-graded/" + lbl);
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace suite_detail {

inline BarChain random_plain_word(Rng& r, int n, int len, int order) {
  std::vector<Cochain> ls;
  for (int i = 0; i < len; ++i) ls.push_back(r.cochain(CoeffKind::O(n), r.uniform(1, 2), order, 1, 2));
  return word(n, ls);
}

inline BarChain single_term(const BarChain& c) {
  BarChain out(c.space());
  if (!c.is_zero()) out.add_term(c.terms().begin()->first, c.terms().begin()->second);
  return out;
}

using Tensor2 = LinComb<std::pair<BarKey, BarKey>>;

inline Tensor2 coproduct(const BarChain& w) {
  Tensor2 t;
  for (const auto& [l, rr, c] : deconcatenate(w)) t.add({l, rr}, c);
  return t;
}

}  // namespace suite_detail

inline Report suite_bar(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify bar", cfg.to_json());
  Rng r(cfg.seed);
  const int n = cfg.vars;
  const int cap = 12;
  Tally d2, ad, assoc, unit, leib, coalg, two_d2;
  BarChain mu = word(n, {mu_cochain(n)});
  BarChain empty(BarSpace::plain(n));
  empty.add_term(BarKey{}, 1);
  for (int t = 0; t < 30; ++t) {
    BarChain u = single_term(random_plain_word(r, n, r.uniform(1, 2), cfg.order));
    BarChain v = single_term(random_plain_word(r, n, r.uniform(1, 2), cfg.order));
    BarChain w = single_term(random_plain_word(r, n, 1, cfg.order));
    int du = plain_degree(u.terms().begin()->first);
    int dv = plain_degree(v.terms().begin()->first);
    auto wit = [&] { return witness({{"u", u.str()}, {"v", v.str()}}); };
    d2.record(bar_d(bar_d(u)).is_zero(), wit);
    ad.record(bar_d(u) == gv_mul(mu, u, cap) - gv_mul(u, mu, cap) * sign_rat(du), wit);
    assoc.record(gv_mul(gv_mul(u, v, cap), w, cap) == gv_mul(u, gv_mul(v, w, cap), cap),
                 [&] { return witness({{"u", u.str()}, {"v", v.str()}, {"w", w.str()}}); });
    unit.record(gv_mul(empty, u, cap) == u && gv_mul(u, empty, cap) == u, wit);
    leib.record(bar_d(gv_mul(u, v, cap)) == gv_mul(bar_d(u), v, cap) + gv_mul(u, bar_d(v), cap) * sign_rat(du), wit);
    // Delta(uv) = sum (-1)^{|u2||v1|} u1 v1 (x) u2 v2
    Tensor2 lhs = coproduct(gv_mul(u, v, cap)), rhs;
    for (const auto& [u1, u2, cu] : deconcatenate(u))
      for (const auto& [v1, v2, cv] : deconcatenate(v)) {
        BarChain a(BarSpace::plain(n)), b(BarSpace::plain(n)), c(BarSpace::plain(n)), e(BarSpace::plain(n));
        a.add_term(u1, 1);
        b.add_term(v1, 1);
        c.add_term(u2, 1);
        e.add_term(v2, 1);
        Rat s = cu * cv * sign_rat(plain_degree(u2) * plain_degree(v1));
        BarChain left = gv_mul(a, b, cap), right = gv_mul(c, e, cap);
        for (const auto& [kl, cl] : left.terms())
          for (const auto& [kr, cr] : right.terms()) rhs.add({kl, kr}, s * cl * cr);
      }
    coalg.record(lhs == rhs, wit);
    (void)dv;
  }
  d2.emit(rep, "plain/d-squared");
  ad.emit(rep, "plain/d-equals-ad-mu");
  assoc.emit(rep, "plain/gv-associative");
  unit.emit(rep, "plain/gv-unit");
  leib.emit(rep, "plain/d-derivation-of-gv");
  coalg.emit(rep, "plain/gv-coalgebra-morphism");
  {
    BarChain a = word(n, {Cochain::basis(CoeffKind::O(n), {Mono::unit(0)}, Mono{})});
    bool thrown = false;
    try {
      gv_mul(a, gv_mul(a, a, 2), 2);
    } catch (const TruncationOverflow&) {
      thrown = true;
    }
    rep.check("plain/overflow-signalled", thrown);
  }

  TwistPtr tw = twist_for(cfg, n, false);
  BarSpace sp = BarSpace::two_sided(tw);
  for (int t = 0; t < 30; ++t) {
    Cochain nn = r.cochain(sp.n_kind(), r.uniform(0, 1), cfg.order, 0, 2);
    Cochain mm = r.cochain(sp.m_kind(), r.uniform(0, 1), cfg.order, 2, 2);
    std::vector<Cochain> ls;
    for (int l = r.uniform(0, 2); l > 0; --l) ls.push_back(r.cochain(CoeffKind::O(n), r.uniform(1, 2), cfg.order, 1, 2));
    BarChain w = two_sided(sp, nn, ls, mm);
    two_d2.record(bar_d(bar_d(w)).is_zero(), [&] { return witness({{"w", w.str()}}); });
  }
  two_d2.emit(rep, "two-sided/d-squared", {{"nu", tw->form().str()}});

  BarWindow win{n, cfg.order, cfg.arity, cfg.bar_length, cfg.weight.value_or(0)};
  ComplexData cd = two_sided_build(win, tw);
  json dims = json::object(), hs = json::object();
  int euler_c = 0, euler_h = 0;
  for (const auto& [deg, ks] : cd.basis) {
    dims[std::to_string(deg)] = ks.size();
    hs[std::to_string(deg)] = cd.cohomology[deg];
    euler_c += (deg % 2 ? -1 : 1) * static_cast<int>(ks.size());
    euler_h += (deg % 2 ? -1 : 1) * cd.cohomology[deg];
  }
  rep.check("window/d-squared", cd.d_squared_zero, {{"basis", dims}});
  rep.check("window/closed", cd.closed, cd.closed ? json::object() : json{{"witness", cd.closure_witness}});
  rep.check("window/euler-characteristic", euler_c == euler_h, {{"chi_chain", euler_c}, {"chi_cohomology", euler_h}, {"cohomology", hs}});
  return rep;
}

inline Report suite_main_theorem(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify main-theorem", cfg.to_json());
  Rng r(cfg.seed);
  const int n = cfg.vars, T = cfg.order, I = cfg.arity, L = cfg.bar_length, w = cfg.weight.value_or(0);
  TwistPtr tw = twist_for(cfg, n, false);
  const int cap = 64;

  std::vector<WeylOp> gens{WeylOp::scalar(tw, 1)};
  for (int i = 0; i < n; ++i) {
    gens.push_back(WeylOp::x(tw, i));
    gens.push_back(WeylOp::d(tw, i));
  }
  Tally cyc_g, cyc_r, mul_g, mul_r, lift;
  for (const auto& p : gens) cyc_g.record(bar_d(chi(p)).is_zero(), [&] { return witness({{"p", p.str()}}); });
  for (int k = 0; k < 50; ++k) {
    WeylOp p = r.weyl(tw, 3, 2, 3);
    cyc_r.record(bar_d(chi(p)).is_zero(), [&] { return witness({{"p", p.str()}}); });
  }
  for (const auto& p : gens)
    for (const auto& q : gens)
      mul_g.record(two_sided_mul(chi(p), chi(q), cap) == chi(p * q), [&] { return witness({{"p", p.str()}, {"q", q.str()}}); });
  for (int k = 0; k < 30; ++k) {
    WeylOp p = r.weyl(tw, 2, 2, 2), q = r.weyl(tw, 2, 2, 2);
    mul_r.record(two_sided_mul(chi(p), chi(q), cap) == chi(p * q), [&] { return witness({{"p", p.str()}, {"q", q.str()}}); });
  }
  for (int k = 0; k < 20; ++k) {
    WeylOp p = k < static_cast<int>(gens.size()) ? gens[k] : r.weyl(tw, 2, 2, 2);
    ChiLift cl = chi_lift(p);
    lift.record(cl.solvable && cl.unique && cl.chain == chi(p), [&] { return witness({{"p", p.str()}}); });
  }
  cyc_g.emit(rep, "chi-cycle/generators", {{"nu", tw->form().str()}});
  cyc_r.emit(rep, "chi-cycle/random");
  mul_g.emit(rep, "chi-multiplicative/generators");
  mul_r.emit(rep, "chi-multiplicative/random");
  lift.emit(rep, "chi-unique-lift");
  {
    TwistPtr z = zero_twist(n);
    WeylOp d = WeylOp::d(z, 0), one = WeylOp::scalar(z, 1);
    BarChain a = psi(d, one), b = psi(one, d);
    rep.check("psi/product", two_sided_mul(a, b, cap) == psi(d, d));
    BarChain u = psi(one, one);
    rep.check("psi/unit", two_sided_mul(u, a, cap) == a && two_sided_mul(a, u, cap) == a);
  }

  // Windowed cohomology and the Weyl window.
  BarWindow win{n, T, I, L, w};
  ComplexData cd = two_sided_build(win, tw);
  BarWindow big{n, T + 1, I + 1, L + 1, w};
  ComplexData cb = two_sided_build(big, tw);
  const int expected = weyl_window_count(n, T, w);
  const int h0 = cd.cohomology.count(0) ? cd.cohomology[0] : 0;
  rep.check("window/h0-equals-weyl-count", h0 == expected,
            {{"h0", h0}, {"weyl_count", expected}, {"window", {{"vars", n}, {"order", T}, {"arity", I}, {"bar_length", L}, {"weight", w}}}});
  {
    std::set<BarKey> deg0(cd.basis[0].begin(), cd.basis[0].end());
    std::vector<BarChain> imgs;
    bool inside = true;
    for (const auto& p : weyl_window(tw, T, w)) {
      BarChain c = chi(p);
      for (const auto& [k, x] : c.terms()) inside = inside && deg0.count(k);
      imgs.push_back(std::move(c));
    }
    int rk = chain_rank(imgs);
    rep.check("window/chi-onto-h0", inside && rk == expected && rk == h0,
              {{"rank", rk}, {"inside_window", inside}});
  }
  {
    json hs = json::object();
    bool zero = true, zero_big = true;
    for (const auto& [deg, h] : cd.cohomology) {
      hs[std::to_string(deg)] = h;
      if (deg >= 1 && h != 0) zero = false;
    }
    // Degrees below the largest degree of the small window.
    int top = cd.cohomology.empty() ? 0 : cd.cohomology.rbegin()->first;
    for (const auto& [deg, h] : cb.cohomology)
      if (deg >= 1 && deg <= top && h != 0) zero_big = false;
    Status st = zero && zero_big ? Status::Pass : (!zero ? Status::Fail : Status::Provisional);
    rep.add("window/higher-cohomology-vanishes", st, {{"cohomology", hs}, {"stable", zero == zero_big}});
  }
  rep.check("window/d-squared", cd.d_squared_zero && cb.d_squared_zero);
  rep.check("window/closed", cd.closed && cb.closed);
  if (!tw->form().is_zero()) {
    ComplexData c0 = two_sided_build(win, zero_twist(n));
    rep.check("window/agrees-with-untwisted", c0.cohomology == cd.cohomology);
  }
  return rep;
}

inline Report suite_bv(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("verify bv", cfg.to_json());
  Rng r(cfg.seed);
  auto rand_alt = [&](int n, int k) {
    LinComb<AltKey> t;
    int terms = r.uniform(1, 3);
    for (int i = 0; i < terms; ++i) {
      std::uint32_t m;
      do m = static_cast<std::uint32_t>(r.uniform(0, (1 << n) - 1));
      while (k >= 0 && std::popcount(m) != k);
      t.add(AltKey{r.mono(n, 3), m}, r.small_rat());
    }
    return t;
  };
  int nonzero = 0;
  std::string nonzero_witness;
  for (int n = 1; n <= std::min(cfg.vars, 3); ++n) {
    Tally dr2, kz2, bv2, del2, td, tf, bider;
    for (int t = 0; t < 40; ++t) {
      Poly f = cfg.f.empty() ? r.poly(n, 3, 3) : parse_poly(cfg.f, n);
      PolyForm w(n, rand_alt(n, -1));
      PolyVector v(n, rand_alt(n, -1));
      auto wit = [&] { return witness({{"f", f.str()}, {"form", w.str()}, {"vector", v.str()}}); };
      dr2.record(twisted_dr_d(twisted_dr_d(w, f), f).is_zero(), wit);
      kz2.record(wedge_df(wedge_df(w, f), f).is_zero(), wit);
      PolyVector s = contract_df(v, f) + bv_delta(v);
      bv2.record((contract_df(s, f) + bv_delta(s)).is_zero(), wit);
      del2.record(bv_delta(bv_delta(v)).is_zero(), wit);
      td.record(volume_transport(bv_delta(v)) == de_rham_d(volume_transport(v)), wit);
      tf.record(volume_transport(contract_df(v, f)) == wedge_df(volume_transport(v), f), wit);
      int ka = r.uniform(0, n), kb = r.uniform(0, n);
      PolyVector a(n, rand_alt(n, ka)), b(n, rand_alt(n, kb)), c(n, rand_alt(n, -1));
      PolyVector lhs = bv_bracket(a, wedge(b, c));
      PolyVector rhs = wedge(bv_bracket(a, b), c) + wedge(b, bv_bracket(a, c)) * sign_rat(kb * (ka + 1));
      bider.record(lhs == rhs, [&] { return witness({{"a", a.str()}, {"b", b.str()}, {"c", c.str()}}); });
      PolyVector ph = bv_bracket(a, b);
      if (!ph.is_zero() && nonzero++ == 0) nonzero_witness = "a = " + a.str() + "; b = " + b.str() + "; Phi = " + ph.str();
    }
    std::string lbl = "n" + std::to_string(n);
    dr2.emit(rep, "twisted-de-rham-squared/" + lbl);
    kz2.emit(rep, "koszul-squared/" + lbl);
    bv2.emit(rep, "contraction-plus-delta-squared/" + lbl);
    del2.emit(rep, "delta-squared/" + lbl);
    td.emit(rep, "transport-delta/" + lbl, {{"sign", "+1"}});
    tf.emit(rep, "transport-contraction/" + lbl, {{"sign", "+1"}});
    bider.emit(rep, "polarization-biderivation/" + lbl,
               {{"rule", "Phi(a, bc) = Phi(a,b)c + (-1)^{(|a|+1)|b|} b Phi(a,c)"}});
  }
  rep.check("polarization-nonzero", nonzero > 0, {{"count", nonzero}, {"witness", nonzero_witness}});
  {
    Poly x2 = parse_poly("x^2", 1);
    PolyVector d = PolyVector::basis(1, Mono{}, 1);
    PolyVector xd = PolyVector::basis(1, Mono::unit(0), 1);
    rep.check("example/contract(d, x^2)=2x", contract_df(d, x2) == PolyVector::function(parse_poly("2*x", 1)));
    rep.check("example/delta(xd)=1", bv_delta(xd) == PolyVector::function(parse_poly("1", 1)));
    rep.check("example/delta(d)=0", bv_delta(d).is_zero());
    rep.check("example/transport(d)=1", volume_transport(d) == PolyForm::function(parse_poly("1", 1)));
    rep.check("example/transport(1)=dx", volume_transport(PolyVector::function(parse_poly("1", 1))) == PolyForm::basis(1, Mono{}, 1));
    Poly xy = parse_poly("x*y", 2);
    rep.check("example/wedge_df(dx, xy)", wedge_df(PolyForm::basis(2, Mono{}, 1), xy) == PolyForm::basis(2, Mono::unit(0), 3, -1));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cohomology tables

inline Report cohomology_diff_complex(const SuiteConfig& cfg) {
  using namespace suite_detail;
  Report rep("cohomology diff-complex", cfg.to_json());
  const int n = cfg.vars, T = cfg.order, I = cfg.arity;
  TwistPtr tw = twist_for(cfg, n, false);
  std::vector<int> weights;
  if (cfg.weight) weights.push_back(*cfg.weight);
  else
    for (int w = -2; w <= 2; ++w) weights.push_back(w);
  for (const auto& kind : {CoeffKind::TDO(tw), CoeffKind::TDO_op(zero_twist(n), true)}) {
    for (int w : weights) {
      DiffCohomology a = diff_complex_cohomology(kind, DiffWindow{n, T, I, w});
      DiffCohomology b = diff_complex_cohomology(kind, DiffWindow{n, T + 1, I + 1, w});
      int mon = w >= 0 ? static_cast<int>(monos_of_degree(n, w).size()) : 0;
      int cent = centralizer_dim(kind.kind == Kind::TDO ? tw : zero_twist(n), T, w);
      std::string id = kind.str() + "/w" + std::to_string(w);
      json hs = json::array(), hb = json::array();
      for (int h : a.cohomology) hs.push_back(h);
      for (int k = 0; k < I; ++k) hb.push_back(b.cohomology[k]);
      bool stable = hs == hb;
      bool vanish = true;
      for (int k = 1; k < I; ++k) vanish = vanish && a.cohomology[k] == 0;
      json det{{"cohomology", hs}, {"stable", stable}, {"monomials", mon}, {"centralizer", cent}, {"dims", a.dims}};
      bool ok = a.d_squared_zero && a.closed && a.cohomology[0] == mon && a.cohomology[0] == cent;
      if (!ok || (stable && !vanish)) rep.add(id, Status::Fail, det);
      else rep.add(id, stable ? Status::Pass : Status::Provisional, det);
    }
  }
  return rep;
}

inline int infer_vars(const std::string& f, int given) {
  if (given > 0) return given;
  for (int n = 1; n <= kMaxVars; ++n) {
    try {
      parse_poly(f, n);
      return n;
    } catch (const ParseError&) {
    }
  }
  return 1;
}

inline Report cohomology_forms(const SuiteConfig& cfg, Flavor fl, int vars) {
  using namespace suite_detail;
  Report rep(fl == Flavor::Koszul ? "cohomology koszul" : "cohomology twisted-derham", cfg.to_json());
  Poly f = parse_poly(cfg.f.empty() ? "0" : cfg.f, vars);
  const int cap = degree_cap_or(cfg, 10);
  auto rows = twisted_cohomology_dims(f, fl, cap);
  json table = json::array();
  for (const auto& row : rows) table.push_back({{"degree", row.degree}, {"dim", row.dim}, {"stable", row.stable}});
  rep.add("table", Status::Pass, {{"rows", table}, {"f", f.str()}, {"vars", vars}});
  const int top = vars;
  if (f.degree() <= 0) {
    if (fl == Flavor::TwistedDR) {
      bool ok = rows[0].dim == 1;
      for (int k = 1; k <= top; ++k) ok = ok && rows[k].dim == 0;
      rep.check("poincare-lemma", ok);
    }
    return rep;
  }
  auto mu = jacobian_ring_dim(f, cap);
  if (!mu) {
    rep.add("milnor", Status::Provisional, {{"jacobian", "not isolated"}});
    return rep;
  }
  bool homogeneous = true;
  for (const auto& [m, c] : f.terms()) homogeneous = homogeneous && m.deg() == f.degree();
  if (fl == Flavor::TwistedDR || homogeneous) {
    bool lower = true;
    for (int k = 0; k < top; ++k) lower = lower && (!rows[k].stable || rows[k].dim == 0);
    Status st = !rows[top].stable ? Status::Provisional
                                  : (rows[top].dim == *mu && lower ? Status::Pass : Status::Fail);
    rep.add("milnor", st, {{"top", rows[top].dim}, {"jacobian", *mu}});
  } else {
    rep.add("milnor", Status::Provisional, {{"top", rows[top].dim}, {"jacobian", *mu}, {"note", "koszul flavor of a non-homogeneous f"}});
  }
  return rep;
}

inline Report oracle_jacobian(const SuiteConfig& cfg, int vars) {
  Report rep("oracle jacobian", cfg.to_json());
  Poly f = parse_poly(cfg.f.empty() ? "0" : cfg.f, vars);
  const int cap = cfg.degree_cap.value_or(10);
  auto slices = jacobian_slices(f, cap);
  auto mu = jacobian_ring_dim(f, cap);
  nlohmann::json det{{"f", f.str()}, {"slices", slices}};
  if (mu) {
    det["dim"] = *mu;
    rep.add("jacobian-ring", Status::Pass, det);
  } else {
    det["dim"] = "not isolated";
    rep.add("jacobian-ring", Status::Provisional, det);
  }
  return rep;
}

inline Report oracle_weyl_window(const SuiteConfig& cfg) {
  Report rep("oracle weyl-window", cfg.to_json());
  const int w = cfg.weight.value_or(0);
  TwistPtr tw = suite_detail::twist_for(cfg, cfg.vars, false);
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& p : weyl_window(tw, cfg.order, w)) ms.push_back(p.str());
  int cnt = weyl_window_count(cfg.vars, cfg.order, w);
  rep.check("weyl-window", cnt == static_cast<int>(ms.size()), {{"count", cnt}, {"monomials", ms}});
  return rep;
}

}  // namespace qlag
