#include "torcal/qlinalg.hpp"

#include "doctest.h"

using namespace torcal;

TEST_CASE("rref ranks and kernels") {
  QMat a(2, 3, {1, 2, 3, 2, 4, 6});
  CHECK(a.rank() == 1);
  QMat k = a.kernel();
  CHECK(k.cols() == 2);
  CHECK((a * k).is_zero());

  QMat b(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, Rat(1, 7)});
  CHECK(b.rank() == 3);
  QMat binv = b.inverse();
  CHECK(b * binv == QMat::identity(3));
}

TEST_CASE("solve consistent and inconsistent systems") {
  QMat a(2, 2, {1, 1, 0, 1});
  QMat rhs(2, 1, {3, 1});
  QMat x;
  REQUIRE(a.solve(rhs, x));
  CHECK(a * x == rhs);

  QMat c(2, 1, {1, 2});
  QMat bad(2, 1, {1, 3});
  CHECK_FALSE(c.solve(bad, x));
}

TEST_CASE("image and intersection dims") {
  QMat a(3, 2, {1, 0, 0, 1, 0, 0});
  QMat b(3, 2, {0, 0, 1, 0, 0, 1});
  CHECK(a.image().cols() == 2);
  CHECK(intersection_dim(a, b) == 1);
}

TEST_CASE("linear system kernel") {
  LinearSystem sys(3);
  sys.add_row({{0, Rat(1)}, {1, Rat(-1)}});
  sys.add_row({{1, Rat(1)}, {2, Rat(-1)}});
  QMat k = sys.solve_kernel();
  CHECK(k.cols() == 1);
  CHECK(k(0, 0) == k(1, 0));
  CHECK(k(1, 0) == k(2, 0));
}
