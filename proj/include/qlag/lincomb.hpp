#pragma once

#include <map>
#include <utility>

#include "rat.hpp"

namespace qlag {

// Finite Q-linear combination of basis keys. Zero coefficients are never
// stored, so equality of the maps is equality of the vectors.
template <class Key>
class LinComb {
 public:
  using Map = std::map<Key, Rat>;

  LinComb() = default;
  LinComb(const Key& k, const Rat& c) { add(k, c); }

  void add(const Key& k, const Rat& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }
  void add(const LinComb& o, const Rat& s = 1) {
    for (const auto& [k, c] : o.terms_) add(k, c * s);
  }
  void scale(const Rat& s) {
    if (is_zero(s)) {
      terms_.clear();
      return;
    }
    for (auto& kv : terms_) kv.second *= s;
  }
  Rat coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

  LinComb& operator+=(const LinComb& o) { add(o); return *this; }
  LinComb& operator-=(const LinComb& o) { add(o, -1); return *this; }

 private:
  Map terms_;
};

}  // namespace qlag
