#include "doctest.h"

#include <cmath>

#include "minkgeo/error.hpp"
#include "minkgeo/linalg.hpp"
#include "minkgeo/rng.hpp"

using namespace minkgeo;

namespace {

Mat make(int r, int c, std::initializer_list<double> vals) {
  Mat m(r, c);
  int k = 0;
  for (double v : vals) m.a[k++] = v;
  return m;
}

Mat rotation(double theta) {
  return make(2, 2, {std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)});
}

// Random symmetric matrix with entries in [-1, 1], deterministic per seed.
Mat random_symmetric(int n, std::uint64_t seed) {
  Mat s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = rng::uniform(seed, static_cast<std::uint64_t>(i * n + j), 0, -1.0, 1.0);
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

}  // namespace

TEST_CASE("vector helpers") {
  Vec x = {3.0, 4.0};
  Vec y = {1.0, -2.0};
  CHECK(dot(x, y) == doctest::Approx(-5.0));
  CHECK(norm2(x) == doctest::Approx(5.0));
  CHECK(add(x, y) == Vec{4.0, 2.0});
  CHECK(sub(x, y) == Vec{2.0, 6.0});
  CHECK(scale(x, 0.5) == Vec{1.5, 2.0});
  Vec u = normalized(x);
  CHECK(u[0] == doctest::Approx(0.6));
  CHECK(u[1] == doctest::Approx(0.8));
  CHECK_THROWS_AS(normalized(Vec{0.0, 0.0}), Error);
}

TEST_CASE("matrix products and transpose") {
  Mat a = make(2, 3, {1, 2, 3, 4, 5, 6});
  Mat b = make(3, 2, {7, 8, 9, 10, 11, 12});
  Mat p = matmul(a, b);
  CHECK(p(0, 0) == doctest::Approx(58));
  CHECK(p(0, 1) == doctest::Approx(64));
  CHECK(p(1, 0) == doctest::Approx(139));
  CHECK(p(1, 1) == doctest::Approx(154));
  Vec v = matvec(a, {1.0, 0.0, -1.0});
  CHECK(v == Vec{-2.0, -2.0});
  Mat t = transpose(a);
  CHECK(t.rows == 3);
  CHECK(t(2, 1) == doctest::Approx(6));
  CHECK(max_abs_diff(transpose(t), a) == 0.0);
  CHECK(max_abs_diff(Mat::identity(3), matmul(Mat::identity(3), Mat::identity(3))) == 0.0);
}

TEST_CASE("LU solve, inverse, determinant") {
  Mat m = make(3, 3, {2, 1, 1, 1, 3, 2, 1, 0, 0});
  // det by cofactor along the last row: 1 * (1*2 - 1*3) = -1
  CHECK(determinant(m) == doctest::Approx(-1.0));
  Vec b = {5, 10, 1};
  Vec x = solve(m, b);
  Vec back = matvec(m, x);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-12));

  Mat inv = inverse(m);
  CHECK(max_abs_diff(matmul(m, inv), Mat::identity(3)) < 1e-12);
  CHECK(max_abs_diff(matmul(inv, m), Mat::identity(3)) < 1e-12);

  Mat sing = make(2, 2, {1, 2, 2, 4});
  CHECK(determinant(sing) == doctest::Approx(0.0));
  CHECK_THROWS_AS(solve(sing, Vec{1, 1}), Error);
  CHECK_THROWS_AS(inverse(sing), Error);
}

TEST_CASE("jacobi eigensystem on a known matrix") {
  // [[2,1],[1,2]] has eigenpairs (1, (1,-1)/sqrt2) and (3, (1,1)/sqrt2).
  Mat s = make(2, 2, {2, 1, 1, 2});
  SymEigen e = jacobi_eigensystem(s);
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));
  // Columns are eigenvectors (up to sign).
  for (int k = 0; k < 2; ++k) {
    Vec v = {e.vectors(0, k), e.vectors(1, k)};
    Vec sv = matvec(s, v);
    for (int i = 0; i < 2; ++i) CHECK(sv[i] == doctest::Approx(e.values[k] * v[i]).epsilon(1e-10));
  }
}

TEST_CASE("jacobi reconstructs random symmetric matrices") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (int n : {2, 3, 5}) {
      Mat s = random_symmetric(n, seed * 100 + n);
      SymEigen e = jacobi_eigensystem(s);
      for (int k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1]);
      // V diag(values) V^T == s
      Mat d(n, n);
      for (int k = 0; k < n; ++k) d(k, k) = e.values[k];
      Mat rec = matmul(e.vectors, matmul(d, transpose(e.vectors)));
      CHECK(max_abs_diff(rec, s) < 1e-10);
      // Orthonormal columns.
      CHECK(max_abs_diff(matmul(transpose(e.vectors), e.vectors), Mat::identity(n)) < 1e-10);
    }
  }
}

TEST_CASE("symmetric square root") {
  Mat d = make(2, 2, {1, 0, 0, 4});
  Mat r = sym_sqrt(d);
  CHECK(r(0, 0) == doctest::Approx(1.0));
  CHECK(r(1, 1) == doctest::Approx(2.0));
  CHECK(std::abs(r(0, 1)) < 1e-12);

  Mat rot = rotation(0.7);
  Mat m = matmul(rot, matmul(d, transpose(rot)));
  Mat a = sym_sqrt(m);
  CHECK(max_abs_diff(matmul(a, a), m) < 1e-9);
  Mat expect = matmul(rot, matmul(make(2, 2, {1, 0, 0, 2}), transpose(rot)));
  CHECK(max_abs_diff(a, expect) < 1e-9);

  Mat ia = sym_inv_sqrt(m);
  CHECK(max_abs_diff(matmul(ia, a), Mat::identity(2)) < 1e-9);

  // Indefinite input must be rejected: [[1,2],[2,1]] has eigenvalues 3, -1.
  CHECK_THROWS_AS(sym_sqrt(make(2, 2, {1, 2, 2, 1})), Error);
}
