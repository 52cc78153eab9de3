#include "doctest.h"
#include "spaceform/errors.hpp"
#include "spaceform/linalg.hpp"
#include "test_util.hpp"

using namespace spaceform;
using testutil::ivec;
using testutil::Lcg;
using testutil::mat;
using testutil::rvec;
using testutil::sqmat;

namespace {

void check_snf_contract(const IntMatrix& m) {
  SmithDecomposition s = snf(m);
  CHECK(s.u * m * s.v == s.d);
  Int du = determinant(s.u);
  Int dv = determinant(s.v);
  CHECK((du == 1 || du == -1));
  CHECK((dv == 1 || dv == -1));
  IntVec divs = s.divisors();
  for (std::size_t i = 0; i + 1 < divs.size(); ++i) {
    CHECK(divs[i] > 0);
    CHECK(divs[i + 1] % divs[i] == 0);
  }
  // off-diagonal zero
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j) CHECK(s.d(i, j) == 0);
}

}  // namespace

TEST_CASE("snf on hand-checked instances") {
  // identity stays diag(1,1)
  SmithDecomposition s1 = snf(IntMatrix::identity(2));
  CHECK(s1.d == IntMatrix::identity(2));

  // gcd of entries is 2 and d1*d2 = |det| = 8, so diag(2,4)
  SmithDecomposition s2 = snf(sqmat(2, {2, 4, 6, 8}));
  CHECK(s2.d(0, 0) == 2);
  CHECK(s2.d(1, 1) == 4);
  check_snf_contract(sqmat(2, {2, 4, 6, 8}));

  SmithDecomposition s3 = snf(sqmat(1, {2}));
  CHECK(s3.d(0, 0) == 2);
}

TEST_CASE("snf contract holds on random matrices") {
  Lcg rng(0x5eedULL);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng.next() % 5;
    std::size_t c = 1 + rng.next() % 5;
    check_snf_contract(testutil::random_matrix(rng, r, c, -9, 9));
  }
  // degenerate shapes
  check_snf_contract(IntMatrix(0, 3));
  check_snf_contract(IntMatrix(3, 0));
  check_snf_contract(IntMatrix(2, 2));  // zero matrix
}

TEST_CASE("kernel_lattice on hand-checked instances") {
  LatticeBasis k1 = kernel_lattice(mat(1, 2, {1, 0}));
  REQUIRE(k1.rank() == 1);
  CHECK(k1.vectors[0] == ivec({0, 1}));

  LatticeBasis k2 = kernel_lattice(sqmat(2, {2, 0, 0, 3}));
  CHECK(k2.rank() == 0);

  LatticeBasis k3 = kernel_lattice(mat(1, 2, {2, 4}));
  REQUIRE(k3.rank() == 1);
  CHECK(k3.vectors[0] == ivec({2, -1}));
}

TEST_CASE("kernel_lattice is saturated") {
  // every integer solution in a small box must be an integer combination
  // of the returned basis
  Lcg rng(0xabcdULL);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t r = 1 + rng.next() % 3;
    std::size_t c = 2 + rng.next() % 2;  // 2 or 3 columns
    IntMatrix m = testutil::random_matrix(rng, r, c, -3, 3);
    LatticeBasis ker = kernel_lattice(m);
    IntMatrix basis_cols = ker.as_cols();
    std::vector<long> x(c, -3);
    for (;;) {
      IntVec xv(c);
      for (std::size_t i = 0; i < c; ++i) xv[i] = Int(x[i]);
      if (is_zero_vec(m * xv) && !is_zero_vec(xv)) {
        CAPTURE(m.to_string());
        CHECK(solve_integer(basis_cols, xv).has_value());
      }
      std::size_t pos = 0;
      while (pos < c && x[pos] == 3) x[pos++] = -3;
      if (pos == c) break;
      ++x[pos];
    }
  }
}

TEST_CASE("solve_integer on hand-checked instances") {
  auto s1 = solve_integer(sqmat(1, {2}), ivec({4}));
  REQUIRE(s1.has_value());
  CHECK((*s1)[0] == 2);

  CHECK_FALSE(solve_integer(sqmat(1, {2}), ivec({3})).has_value());
  CHECK_FALSE(solve_integer(sqmat(2, {2, 0, 0, 0}), ivec({1, 0})).has_value());
}

TEST_CASE("solve_integer finds solutions exactly when they exist") {
  Lcg rng(0x777ULL);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng.next() % 3;
    std::size_t c = 1 + rng.next() % 3;
    IntMatrix m = testutil::random_matrix(rng, r, c, -4, 4);
    IntVec hidden(c);
    for (std::size_t i = 0; i < c; ++i) hidden[i] = Int(rng.range(-3, 3));
    IntVec b = m * hidden;
    auto sol = solve_integer(m, b);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == b);
  }
}

TEST_CASE("solve_rational on hand-checked instances") {
  RatMatrix i2 = to_rat(IntMatrix::identity(2));
  auto s1 = solve_rational(i2, rvec({"1/2", "1/3"}));
  REQUIRE(s1.has_value());
  CHECK(s1->particular == rvec({"1/2", "1/3"}));
  CHECK(s1->kernel.empty());

  auto s2 = solve_rational(to_rat(mat(1, 2, {1, 1})), rvec({"1"}));
  REQUIRE(s2.has_value());
  CHECK(s2->particular == rvec({"1", "0"}));
  REQUIRE(s2->kernel.size() == 1);
  // kernel spans (1,-1)
  CHECK(s2->kernel[0][0] == -s2->kernel[0][1]);
  CHECK(s2->kernel[0][0] != 0);

  CHECK_FALSE(solve_rational(to_rat(mat(2, 1, {1, 2})), rvec({"1", "1"})).has_value());
}

TEST_CASE("complement_in_lattice on hand-checked instances") {
  LatticeBasis sub;
  sub.ambient = 2;
  sub.vectors.push_back(ivec({0, 1}));

  LatticeBasis b1 = complement_in_lattice(sub, mat(1, 2, {1, 0}));
  REQUIRE(b1.rank() == 1);
  CHECK(b1.vectors[0] == ivec({1, 0}));

  LatticeBasis b2 = complement_in_lattice(sub, mat(1, 2, {2, 0}));
  REQUIRE(b2.rank() == 1);
  CHECK(b2.vectors[0] == ivec({1, 0}));
  // image lattice A = 2Z has index 2
  IntVec img = mat(1, 2, {2, 0}) * b2.vectors[0];
  CHECK(img == ivec({2}));

  LatticeBasis empty_sub;
  empty_sub.ambient = 1;
  LatticeBasis b3 = complement_in_lattice(empty_sub, sqmat(1, {1}));
  REQUIRE(b3.rank() == 1);
  CHECK(b3.vectors[0] == ivec({1}));
}

TEST_CASE("complement completes the sublattice to a unimodular basis") {
  Lcg rng(0x31415ULL);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng.next() % 4;
    std::size_t r = 1 + rng.next() % (n - 1);
    // saturated sublattice: kernel of a random map
    IntMatrix m = testutil::random_matrix(rng, n - r, n, -3, 3);
    LatticeBasis sub = kernel_lattice(m);
    if (sub.rank() + rank_integer(m) != n) continue;  // map was rank-deficient
    LatticeBasis comp = complement_in_lattice(sub, m);
    REQUIRE(sub.rank() + comp.rank() == n);
    IntMatrix full(n, n);
    for (std::size_t i = 0; i < sub.rank(); ++i) full.set_row(i, sub.vectors[i]);
    for (std::size_t i = 0; i < comp.rank(); ++i) full.set_row(sub.rank() + i, comp.vectors[i]);
    Int det = determinant(full);
    CHECK((det == 1 || det == -1));
  }
}

TEST_CASE("complement rejects non-saturated input") {
  LatticeBasis sub;
  sub.ambient = 2;
  sub.vectors.push_back(ivec({0, 2}));  // index 2 in its saturation
  CHECK_THROWS_AS(complement_in_lattice(sub, mat(1, 2, {1, 0})), InternalInconsistencyError);
}

TEST_CASE("fixed_sublattice on hand-checked instances") {
  CHECK(fixed_sublattice({IntMatrix::identity(3)}).rank() == 3);

  LatticeBasis f1 = fixed_sublattice({sqmat(2, {1, 0, 0, -1})});
  REQUIRE(f1.rank() == 1);
  CHECK(f1.vectors[0] == ivec({1, 0}));

  LatticeBasis f2 = fixed_sublattice(
      {sqmat(3, {1, 0, 0, 0, -1, 0, 0, 0, -1}), sqmat(3, {-1, 0, 0, 0, 1, 0, 0, 0, -1})});
  CHECK(f2.rank() == 0);
}

TEST_CASE("fixed_sublattice rank equals the common eigenvalue-1 multiplicity") {
  // rank of the fixed lattice = dim of the rational kernel of the stack
  std::vector<IntMatrix> gens = {sqmat(2, {0, 1, 1, 0})};
  LatticeBasis f = fixed_sublattice(gens);
  CHECK(f.rank() == 1);
  CHECK(f.vectors[0] == ivec({1, 1}));
  IntMatrix diff(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      diff(i, j) = gens[0](i, j) - (i == j ? Int(1) : Int(0));
  CHECK(rank_integer(diff) + f.rank() == 2);
}

TEST_CASE("exterior_trace_poly on hand-checked instances") {
  CHECK(exterior_trace_poly(IntMatrix::identity(3)) == ivec({1, 3, 3, 1}));
  CHECK(exterior_trace_poly(sqmat(2, {1, 0, 0, -1})) == ivec({1, 0, -1}));
  CHECK(exterior_trace_poly(sqmat(3, {1, 0, 0, 0, -1, 0, 0, 0, -1})) == ivec({1, -1, -1, 1}));
}

TEST_CASE("exterior_trace_poly matches the explicit wedge-power traces") {
  // independent oracle: build each exterior power on the wedge basis and
  // take its trace
  Lcg rng(0x600dULL);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng.next() % 6;
    IntMatrix a = testutil::random_matrix(rng, n, n, -3, 3);
    IntVec coeffs = exterior_trace_poly(a);
    REQUIRE(coeffs.size() == n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      IntMatrix w = wedge_power(a, j);
      Int tr(0);
      for (std::size_t d = 0; d < w.rows(); ++d) tr += w(d, d);
      CHECK(coeffs[j] == tr);
    }
    CHECK(coeffs[0] == 1);
    CHECK(coeffs[n] == determinant(a));
  }
}

TEST_CASE("hermite normal form is canonical") {
  // re-running on row-shuffled generators of the same lattice gives the
  // identical basis
  IntMatrix a = mat(3, 3, {2, 4, 4, -6, 6, 12, 10, 4, 16});
  IntMatrix h1 = hermite_rows(a);
  IntMatrix shuffled = mat(3, 3, {10, 4, 16, 2, 4, 4, -6, 6, 12});
  shuffled.add_row_multiple(0, 1, Int(3));
  CHECK(hermite_rows(shuffled) == h1);
  CHECK(hermite_rows(h1) == h1);
}

TEST_CASE("inverse_unimodular round trips") {
  Lcg rng(0xfaceULL);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng.next() % 5;
    // random unimodular: product of elementary row operations on I
    IntMatrix m = IntMatrix::identity(n);
    for (int ops = 0; ops < 12; ++ops) {
      std::size_t i = rng.next() % n, j = rng.next() % n;
      if (i == j) continue;
      m.add_row_multiple(i, j, Int(rng.range(-2, 2)));
    }
    IntMatrix inv = inverse_unimodular(m);
    CHECK(m * inv == IntMatrix::identity(n));
  }
}

TEST_CASE("exterior_trace_poly over the rationals") {
  RatMatrix half(1, 1);
  half(0, 0) = *parse_rational("1/2");
  RatVec c1 = exterior_trace_poly(half);
  REQUIRE(c1.size() == 2);
  CHECK(c1[0] == 1);
  CHECK(c1[1] == *parse_rational("1/2"));

  // det(I + tA) for A = [[1/2, 1], [0, 1/3]] is (1 + t/2)(1 + t/3)
  RatMatrix a(2, 2);
  a(0, 0) = *parse_rational("1/2");
  a(0, 1) = 1;
  a(1, 1) = *parse_rational("1/3");
  RatVec c2 = exterior_trace_poly(a);
  CHECK(c2[0] == 1);
  CHECK(c2[1] == *parse_rational("5/6"));
  CHECK(c2[2] == *parse_rational("1/6"));
}
