#pragma once

// Published (r1, r2) values of the fifteen (3,6) reflection-regular points
// with x = omega, written over Q(zeta_9).

#include "dmrep/cyclotomic.hpp"

#include <array>
#include <utility>
#include <vector>

namespace published {

using dmrep::CycloNum;
using dmrep::Rational;

// coefficients of 1, z, z^2, z^3, z^4, z^5 (times 1/2)
inline CycloNum half_z9(std::array<int, 6> c) {
  std::vector<Rational> v(6);
  for (int i = 0; i < 6; ++i) v[static_cast<std::size_t>(i)] = Rational(c[static_cast<std::size_t>(i)], 2);
  for (auto& x : v) x.canonicalize();
  return CycloNum::from_coeffs(9, v).canonical();
}

inline std::vector<std::pair<CycloNum, CycloNum>> alphas() {
  CycloNum w = dmrep::omega(), one(1);
  CycloNum h(Rational(1, 2));
  std::vector<std::pair<CycloNum, CycloNum>> a = {
      {CycloNum(0), one},
      {w - one, one},
      {h * (w - one), h * (w + CycloNum(3))},
      {h * (w - one), CycloNum(Rational(-1, 2)) * (CycloNum(3) * w + one)},
      {CycloNum(0), -w},
      {w - one, -w},
  };
  //                  1   z  z2  z3  z4  z5
  a.push_back({half_z9({-1, -1, 1, 1, 0, 0}), half_z9({1, 1, 1, -1, 0, 0})});
  a.push_back({half_z9({-1, 1, 0, 1, 1, 1}), half_z9({1, -1, 0, -1, -1, 1})});
  a.push_back({half_z9({-1, 0, -1, 1, -1, -1}), half_z9({1, 0, -1, -1, 1, -1})});
  a.push_back({half_z9({-1, -1, 1, 1, 0, 0}), half_z9({1, -1, -1, -1, 0, 0})});
  a.push_back({half_z9({-1, 0, -1, 1, -1, -1}), half_z9({1, 0, 1, -1, -1, 1})});
  a.push_back({half_z9({-1, 1, 0, 1, 1, 1}), half_z9({1, 1, 0, -1, 1, -1})});
  a.push_back({half_z9({-1, 1, -1, 1, 0, 0}), half_z9({1, -1, -1, -1, 0, 0})});
  a.push_back({half_z9({-1, 0, 1, 1, 1, 1}), half_z9({1, 0, 1, -1, -1, 1})});
  a.push_back({half_z9({-1, -1, 0, 1, -1, -1}), half_z9({1, 1, 0, -1, 1, -1})});
  return a;
}

}  // namespace published
