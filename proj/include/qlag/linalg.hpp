#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rat.hpp"

namespace qlag {

class SparseMat {
 public:
  SparseMat(int rows = 0, int cols = 0) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int r, int c, const Rat& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("SparseMat index");
    if (is_zero(v)) return;
    auto& row = e_[r];
    auto [it, ins] = row.try_emplace(c, v);
    if (!ins) {
      it->second += v;
      if (is_zero(it->second)) row.erase(it);
    }
    if (row.empty()) e_.erase(r);
  }
  Rat at(int r, int c) const {
    auto it = e_.find(r);
    if (it == e_.end()) return 0;
    auto jt = it->second.find(c);
    return jt == it->second.end() ? Rat(0) : jt->second;
  }
  const std::map<int, std::map<int, Rat>>& rows_map() const { return e_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& [r, row] : e_) n += row.size();
    return n;
  }

  SparseMat transpose() const {
    SparseMat t(cols_, rows_);
    for (const auto& [r, row] : e_)
      for (const auto& [c, v] : row) t.add(c, r, v);
    return t;
  }

  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("dimension mismatch");
    std::vector<Rat> y(rows_);
    for (const auto& [r, row] : e_)
      for (const auto& [c, v] : row) y[r] += v * x[c];
    return y;
  }

  SparseMat operator*(const SparseMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch");
    SparseMat p(rows_, o.cols_);
    for (const auto& [r, row] : e_)
      for (const auto& [k, v] : row) {
        auto it = o.e_.find(k);
        if (it == o.e_.end()) continue;
        for (const auto& [c, w] : it->second) p.add(r, c, v * w);
      }
    return p;
  }

  bool is_zero_matrix() const { return e_.empty(); }

 private:
  int rows_, cols_;
  std::map<int, std::map<int, Rat>> e_;
};

namespace detail {

using Row = std::vector<std::pair<int, Rat>>;  // sorted by column

// r := r - f * p
inline Row axpy(const Row& r, const Rat& f, const Row& p) {
  Row out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -f * p[j].second);
      ++j;
    } else {
      Rat v = r[i].second - f * p[j].second;
      if (!is_zero(v)) out.emplace_back(r[i].first, v);
      ++i, ++j;
    }
  }
  return out;
}

// Incremental row echelon form. Pivot rows are normalized to leading
// coefficient 1 and keyed by their leading column.
class Echelon {
 public:
  // Returns true if the row was independent of the rows inserted so far.
  bool insert(Row r) {
    while (!r.empty()) {
      auto it = piv_.find(r.front().first);
      if (it == piv_.end()) {
        Rat lead = r.front().second;
        for (auto& kv : r) kv.second /= lead;
        piv_.emplace(r.front().first, std::move(r));
        return true;
      }
      r = axpy(r, r.front().second, it->second);
    }
    return false;
  }
  int rank() const { return static_cast<int>(piv_.size()); }
  const std::map<int, Row>& pivots() const { return piv_; }

 private:
  std::map<int, Row> piv_;
};

inline Row to_row(const std::map<int, Rat>& m) { return Row(m.begin(), m.end()); }

}  // namespace detail

// Exact rank by rational Gaussian elimination.
inline int rank(const SparseMat& m) {
  detail::Echelon ech;
  // Sparse rows first keeps fill-in low.
  std::vector<const std::map<int, Rat>*> rows;
  for (const auto& [r, row] : m.rows_map()) rows.push_back(&row);
  std::stable_sort(rows.begin(), rows.end(),
                   [](auto* a, auto* b) { return a->size() < b->size(); });
  for (auto* row : rows) ech.insert(detail::to_row(*row));
  return ech.rank();
}

struct RankKernel {
  int rank = 0;
  std::vector<std::vector<Rat>> kernel;
};

inline RankKernel rank_and_kernel(const SparseMat& m) {
  detail::Echelon ech;
  for (const auto& [r, row] : m.rows_map()) ech.insert(detail::to_row(row));
  // Back substitution to reduced echelon form.
  std::map<int, detail::Row> rref;
  for (auto it = ech.pivots().rbegin(); it != ech.pivots().rend(); ++it) {
    detail::Row r = it->second;
    detail::Row out{r.front()};
    detail::Row rest(r.begin() + 1, r.end());
    while (!rest.empty()) {
      auto jt = rref.find(rest.front().first);
      if (jt == rref.end()) {
        out.push_back(rest.front());
        rest.erase(rest.begin());
        continue;
      }
      rest = detail::axpy(rest, rest.front().second, jt->second);
    }
    rref.emplace(it->first, std::move(out));
  }
  RankKernel res;
  res.rank = static_cast<int>(rref.size());
  for (int free = 0; free < m.cols(); ++free) {
    if (rref.count(free)) continue;
    std::vector<Rat> v(m.cols());
    v[free] = 1;
    for (const auto& [pc, row] : rref)
      for (const auto& [c, val] : row)
        if (c == free) v[pc] = -val;
    res.kernel.push_back(std::move(v));
  }
  return res;
}

// Some x with m x = b, if one exists.
inline std::optional<std::vector<Rat>> solve(const SparseMat& m, const std::vector<Rat>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("dimension mismatch");
  // Eliminate on the augmented transpose-free system: rows [m | b].
  detail::Echelon ech;
  for (int r = 0; r < m.rows(); ++r) {
    detail::Row row;
    auto it = m.rows_map().find(r);
    if (it != m.rows_map().end()) row = detail::to_row(it->second);
    if (!is_zero(b[r])) row.emplace_back(m.cols(), b[r]);
    if (!row.empty()) ech.insert(std::move(row));
  }
  if (ech.pivots().count(m.cols())) return std::nullopt;
  std::vector<Rat> x(m.cols());
  for (auto it = ech.pivots().rbegin(); it != ech.pivots().rend(); ++it) {
    Rat acc = 0;
    for (const auto& [c, v] : it->second) {
      if (c == it->first) continue;
      if (c == m.cols()) acc += v;
      else acc -= v * x[c];
    }
    x[it->first] = acc;
  }
  return x;
}

}  // namespace qlag
