#pragma once

// Evaluation-level formulas, used as independent oracles against the
// structural (tensor normal form) operations.

#include <vector>

#include "cochain.hpp"

namespace qlag::ref {

// f *_P V and V *_P f for the bimodule P of the given kind.
inline WeylOp star_left(const CoeffKind& k, const Poly& f, const WeylOp& v) {
  WeylOp F = WeylOp::function(v.twist(), f);
  return k.kind == Kind::TDO_op ? v * F : F * v;
}
inline WeylOp star_right(const CoeffKind& k, const WeylOp& v, const Poly& f) {
  WeylOp F = WeylOp::function(v.twist(), f);
  return k.kind == Kind::TDO_op ? F * v : v * F;
}

inline WeylOp hochschild_d(const Cochain& A, const std::vector<Poly>& g) {
  const int k = A.arity();
  std::vector<Poly> tail(g.begin() + 1, g.end());
  WeylOp out = star_left(A.kind(), g[0], eval_polydiff(A, tail));
  for (int j = 1; j <= k; ++j) {
    std::vector<Poly> merged;
    for (int q = 0; q < k + 1; ++q) {
      if (q == j - 1) {
        merged.push_back(g[q] * g[q + 1]);
        ++q;
      } else {
        merged.push_back(g[q]);
      }
    }
    WeylOp v = eval_polydiff(A, merged);
    out += (j % 2) ? -v : v;
  }
  std::vector<Poly> head(g.begin(), g.end() - 1);
  WeylOp last = star_right(A.kind(), eval_polydiff(A, head), g[k]);
  out += ((k + 1) % 2) ? -last : last;
  if (k == 0 && !A.kind().is_O()) out = -out;
  return out;
}

inline WeylOp cup(const Cochain& A, const Cochain& B, const std::vector<Poly>& g) {
  const int i = A.arity(), j = B.arity();
  std::vector<Poly> ga(g.begin(), g.begin() + i), gb(g.begin() + i, g.end());
  const CoeffKind& k = A.kind();
  WeylOp out(k.twist);
  if (k.outer_op) {
    // reversed: B on the first j arguments
    std::vector<Poly> hb(g.begin(), g.begin() + j), ha(g.begin() + j, g.end());
    WeylOp vb = eval_polydiff(B, hb), va = eval_polydiff(A, ha);
    // B *op A, computed in D
    out = va * vb;
    return ((i * j) % 2) ? -out : out;
  }
  WeylOp va = eval_polydiff(A, ga), vb = eval_polydiff(B, gb);
  out = k.kind == Kind::TDO_op ? vb * va : va * vb;
  return ((i * j) % 2) ? -out : out;
}

// A{A_1..A_m} evaluated by plugging the inner values into A.
inline WeylOp brace(const Cochain& A, const std::vector<Cochain>& args, const std::vector<Poly>& g) {
  const int i = A.arity(), m = static_cast<int>(args.size());
  WeylOp out(A.kind().twist);
  if (m == 0) return eval_polydiff(A, g);
  std::vector<int> pos(m);
  auto rec = [&](auto&& self, int l, int start) -> void {
    if (l == m) {
      std::vector<Poly> inner;
      int gi = 0, eps = 0, lq = 0;
      for (int q = 0; q < i; ++q) {
        if (lq < m && pos[lq] == q) {
          int jl = args[lq].arity();
          eps += gi * (jl - 1);
          std::vector<Poly> blk(g.begin() + gi, g.begin() + gi + jl);
          inner.push_back(eval_polydiff(args[lq], blk).as_function());
          gi += jl;
          ++lq;
        } else {
          inner.push_back(g[gi++]);
        }
      }
      WeylOp v = eval_polydiff(A, inner);
      out += (eps % 2) ? -v : v;
      return;
    }
    for (int p = start; p <= i - (m - l); ++p) {
      pos[l] = p;
      self(self, l + 1, p + 1);
    }
  };
  if (m <= i) rec(rec, 0, 0);
  return out;
}

}  // namespace qlag::ref
