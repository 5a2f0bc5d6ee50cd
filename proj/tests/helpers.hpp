#pragma once

#include <string>
#include <vector>

#include "alexandrov/exactla.hpp"
#include "alexandrov/poset.hpp"

namespace fixtures {

using alexandrov::Poset;

// 0 <= 1 <= 2 ... named by digit
inline Poset chain(int n) { return Poset::chain(n); }

inline Poset anti2() { return Poset::validate({"x", "y"}, {}); }

// a,b minimal; c,d maximal; a,b <= c and a,b <= d (the 4-point circle)
inline Poset circ4() {
  return Poset::validate({"a", "b", "c", "d"},
                         {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

// a, b <= m
inline Poset vee() { return Poset::validate({"a", "b", "m"}, {{"a", "m"}, {"b", "m"}}); }

// a <= c, a <= d
inline Poset wedge() { return Poset::validate({"a", "c", "d"}, {{"a", "c"}, {"a", "d"}}); }

template <class S>
alexandrov::Mat<S> mat(int rows, int cols, std::vector<long long> entries) {
  alexandrov::Mat<S> m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = S(entries[static_cast<std::size_t>(r * cols + c)]);
  return m;
}

}  // namespace fixtures
