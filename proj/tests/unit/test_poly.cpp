#include "torcal/poly.hpp"

#include "doctest.h"

using namespace torcal;

TEST_CASE("polynomial arithmetic and substitution") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * x - y * y;
  QMat swap(2, 2, {0, 1, 1, 0});
  CHECK(p.substitute_linear(swap) == p * Rat(-1));
  Poly q;
  REQUIRE(p.divide(x - y, q));
  CHECK(q == x + y);
  Poly r;
  CHECK_FALSE((x * x + y * y).divide(x - y, r));
}

TEST_CASE("monomial bases") {
  CHECK(monomials_of_degree(2, 3).size() == 4);
  CHECK(monomials_of_degree(1, 5).size() == 1);
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * y * Rat(3) - x * x;
  QMat v = poly_to_vec(p, 2);
  CHECK(vec_to_poly(v, 2, 2) == p);
}

TEST_CASE("power series inversion and free series") {
  // 1/(1-t^2) = 1 + t^2 + t^4 + ...
  PowerSeries s = graded_free_series({2}, 10);
  for (int i = 0; i <= 10; ++i) CHECK(s[i] == (i % 2 == 0 ? 1 : 0));
  // 1/((1-t^4)(1-t^6)): coefficients at 0,4,6,8,10,12 are 1,1,1,1,1,2
  PowerSeries m = graded_free_series({4, 6}, 12);
  CHECK(m[0] == 1);
  CHECK(m[2] == 0);
  CHECK(m[4] == 1);
  CHECK(m[6] == 1);
  CHECK(m[8] == 1);
  CHECK(m[10] == 1);
  CHECK(m[12] == 2);
}

TEST_CASE("rank-2 polynomial ring Hilbert series") {
  // dims of Q[c1,c2] in codegree 2m: m+1, i.e. 1/(1-t^2)^2
  PowerSeries expect = graded_free_series({2, 2}, 20);
  for (int m = 0; 2 * m <= 20; ++m)
    CHECK(expect[2 * m] == int(monomials_of_degree(2, m).size()));
}
