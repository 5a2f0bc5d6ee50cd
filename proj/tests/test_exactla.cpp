#include "alexandrov/exactla.hpp"

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

using namespace alexandrov;
using fixtures::mat;

namespace {

// Independent oracle: fraction-free (Bareiss) elimination on __int128,
// giving exact determinant and rank of integer matrices without touching
// the Rat/Fp code paths under test.
struct BareissResult {
  __int128 det;
  int rank;
};

BareissResult bareiss(std::vector<std::vector<long long>> a) {
  int n = static_cast<int>(a.size());
  int m = n == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<std::vector<__int128>> w(static_cast<std::size_t>(n),
                                       std::vector<__int128>(static_cast<std::size_t>(m)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) w[i][j] = a[i][j];
  __int128 prev = 1;
  int sign = 1, row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int pivot = -1;
    for (int r = row; r < n; ++r)
      if (w[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row) {
      std::swap(w[pivot], w[row]);
      sign = -sign;
    }
    for (int r = row + 1; r < n; ++r) {
      for (int c = col + 1; c < m; ++c)
        w[r][c] = (w[row][col] * w[r][c] - w[r][col] * w[row][c]) / prev;
      w[r][col] = 0;
    }
    prev = w[row][col];
    ++row;
  }
  BareissResult out;
  out.rank = row;
  out.det = (n == m && row == n) ? sign * prev : 0;
  return out;
}

Rat det_via_rref(Mat<Rat> m) {
  // product of pivots with row-swap signs, via plain fraction elimination
  Rat det(1);
  Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      Rat f = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

}  // namespace

TEST_CASE("kernel bases match the worked examples") {
  Mat<Fp> m = mat<Fp>(1, 2, {1, 1});
  for (Eigen::Index j = 0; j < 2; ++j) m(0, j) = Fp(m(0, j).value(), 2);
  auto k = kernel_basis(m);
  CHECK(k.dim() == 1);
  CHECK(k.basis_rows()(0, 0) == Fp(1, 2));
  CHECK(k.basis_rows()(0, 1) == Fp(1, 2));

  CHECK(kernel_basis(identity_mat<Rat>(3)).dim() == 0);
  CHECK(kernel_basis(Mat<Rat>(Mat<Rat>::Zero(2, 3))).dim() == 3);
}

TEST_CASE("image bases match the worked examples") {
  Mat<Fp> m(2, 2);
  m << Fp(1, 2), Fp(1, 2), Fp(1, 2), Fp(1, 2);
  CHECK(image_basis(m).dim() == 1);
  CHECK(image_basis(Mat<Rat>(Mat<Rat>::Zero(3, 2))).dim() == 0);

  Mat<Rat> two(1, 1);
  two(0, 0) = Rat(2);
  CHECK(image_basis(two).dim() == 1);
  Mat<Fp> two_mod2(1, 1);
  two_mod2(0, 0) = Fp(2, 2);
  CHECK(image_basis(two_mod2).dim() == 0);
}

TEST_CASE("quotient dimension and containment") {
  // Z = span{e1,e2,e3}, B = span{e1} in ambient 4
  Mat<Rat> z = Mat<Rat>::Zero(3, 4);
  z(0, 0) = Rat(1);
  z(1, 1) = Rat(1);
  z(2, 2) = Rat(1);
  Mat<Rat> b = Mat<Rat>::Zero(1, 4);
  b(0, 0) = Rat(1);
  CHECK(quotient_dim(Subspace<Rat>(4, z), Subspace<Rat>(4, b)) == 2);
  CHECK(quotient_dim(Subspace<Rat>(4, z), Subspace<Rat>(4, z)) == 0);

  Mat<Rat> e1 = Mat<Rat>::Zero(1, 2), e2 = Mat<Rat>::Zero(1, 2);
  e1(0, 0) = Rat(1);
  e2(0, 1) = Rat(1);
  CHECK_THROWS_AS(quotient_dim(Subspace<Rat>(2, e2), Subspace<Rat>(2, e1)), NotContained);
}

TEST_CASE("two-term complexes") {
  {
    CochainComplex<Fp> c({1, 1}, {mat<Fp>(1, 1, {1})});
    CHECK(complex_cohomology(c, 0) == 0);
    CHECK(complex_cohomology(c, 1) == 0);
  }
  {
    CochainComplex<Rat> c({2, 3}, {Mat<Rat>(Mat<Rat>::Zero(3, 2))});
    CHECK(complex_cohomology(c, 0) == 2);
    CHECK(complex_cohomology(c, 1) == 3);
    CHECK_THROWS_AS(complex_cohomology(c, 2), DegreeOutOfRange);
  }
}

TEST_CASE("circle incidence complex has H^0 = H^1 = 1 over F_2") {
  // rows: relations a<c, a<d, b<c, b<d of the 4-point circle;
  // d(f)(i<j) = f(j) - f(i) with columns ordered a,b,c,d
  Mat<Fp> d0(4, 4);
  auto e = [](long long v) { return Fp(v, 2); };
  d0 << e(1), e(0), e(1), e(0),   // a<c
      e(1), e(0), e(0), e(1),     // a<d
      e(0), e(1), e(1), e(0),     // b<c
      e(0), e(1), e(0), e(1);     // b<d
  CHECK(rank(d0) == 3);
  CochainComplex<Fp> c({4, 4}, {d0});
  CHECK(complex_cohomology(c, 0) == 1);
  CHECK(complex_cohomology(c, 1) == 1);
}

TEST_CASE("rank-nullity on random matrices") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Field f = seed % 2 == 0 ? Field::prime(5) : Field::prime(2);
    int rows = static_cast<int>(rng.below(6)) + 1;
    int cols = static_cast<int>(rng.below(6)) + 1;
    Mat<Fp> m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = ScalarOps<Fp>::random(f, rng);
    CHECK(rank(m) + kernel_basis(m).dim() == cols);
  }
}

TEST_CASE("kernel bases are canonical under row permutation") {
  Rng rng(41);
  Field f = Field::prime(3);
  for (int trial = 0; trial < 20; ++trial) {
    Mat<Fp> m(4, 5);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 5; ++c) m(r, c) = ScalarOps<Fp>::random(f, rng);
    Mat<Fp> shuffled = m;
    shuffled.row(0).swap(shuffled.row(3));
    shuffled.row(1).swap(shuffled.row(2));
    CHECK(kernel_basis(m) == kernel_basis(shuffled));
  }
}

TEST_CASE("rational elimination agrees with a fraction-free bigint oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 6;
    std::vector<std::vector<long long>> a(static_cast<std::size_t>(n),
                                          std::vector<long long>(static_cast<std::size_t>(n)));
    Mat<Rat> m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        long long v = rng.range(-9, 9);
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
        m(r, c) = Rat(v);
      }
    BareissResult expect = bareiss(a);
    CHECK(rank(m) == expect.rank);
    Rat det = det_via_rref(m);
    CHECK(det == Rat(static_cast<long long>(expect.det)));
  }
}

TEST_CASE("solve returns exact solutions and detects inconsistency") {
  Mat<Rat> a(2, 2);
  a << Rat(1), Rat(2), Rat(3), Rat(4);
  Mat<Rat> rhs(2, 1);
  rhs << Rat(5), Rat(6);
  auto x = solve(a, rhs);
  REQUIRE(x.has_value());
  CHECK(mat_equal(Mat<Rat>(a * *x), rhs));

  Mat<Rat> singular(2, 1);
  singular << Rat(1), Rat(2);
  Mat<Rat> bad(2, 1);
  bad << Rat(1), Rat(3);
  CHECK(!solve(singular, bad).has_value());
}

TEST_CASE("Fp arithmetic basics") {
  CHECK(Fp(7, 5) == Fp(2, 5));
  CHECK(Fp(3, 5).inverse() == Fp(2, 5));
  CHECK((Fp(3, 5) * Fp(2, 5)) == Fp(1, 5));
  CHECK((Fp(1, 5) + Fp(-1)) == Fp(0, 5));  // literal adopts the modulus
  CHECK_THROWS_AS(Fp(1, 3) + Fp(1, 5), BadField);
  CHECK_THROWS_AS(Field::prime(6), BadField);
  CHECK(Field::parse("fp:97").characteristic() == 97);
  CHECK(Field::parse("q").kind() == Field::Kind::rational);
}

TEST_CASE("complex validation rejects non-complexes") {
  Mat<Rat> d0 = identity_mat<Rat>(1);
  Mat<Rat> d1 = identity_mat<Rat>(1);
  CHECK_THROWS_AS(CochainComplex<Rat>({1, 1, 1}, {d0, d1}), NotExact);
}
