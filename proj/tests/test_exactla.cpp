#include "doctest.h"

#include <random>

#include "qtilt/mat.hpp"

using namespace qtilt;

namespace {

Mat<RatField> qmat(std::initializer_list<std::initializer_list<int>> rows) {
  RatField f;
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  Mat<RatField> m(f, r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (int v : row) m.at(i, j++) = BigRat(v);
    ++i;
  }
  return m;
}

// Deterministic pseudo-random small-integer matrices for property tests.
Mat<RatField> random_qmat(std::mt19937& rng, int r, int c) {
  RatField f;
  Mat<RatField> m(f, r, c);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = BigRat(d(rng));
  return m;
}

}  // namespace

TEST_CASE("rref: proportional rows collapse to rank 1") {
  auto m = qmat({{2, 4}, {1, 2}});
  auto r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.mat == qmat({{1, 2}, {0, 0}}));
}

TEST_CASE("rref: identity is fixed") {
  RatField f;
  auto id = Mat<RatField>::identity(f, 3);
  auto r = rref(id);
  CHECK(r.rank == 3);
  CHECK(r.mat == id);
}

TEST_CASE("rref over F_2") {
  PrimeField f2(2);
  Mat<PrimeField> m(f2, 2, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 1;
  m.at(1, 0) = 1; m.at(1, 1) = 0;
  CHECK(rref(m).rank == 2);
}

TEST_CASE("kernel_basis basics") {
  RatField f;
  CHECK(kernel_basis(Mat<RatField>(f, 2, 3)).dim() == 3);
  CHECK(kernel_basis(Mat<RatField>::identity(f, 4)).dim() == 0);
  auto k = kernel_basis(qmat({{1, 2}}));
  REQUIRE(k.dim() == 1);
  // spanned by (-2, 1): rref normalizes to leading 1
  CHECK(k.basis.at(0, 0) * BigRat(1) + k.basis.at(0, 1) * BigRat(0) != 0);
  BigRat x = k.basis.at(0, 0), y = k.basis.at(0, 1);
  CHECK(x * 1 + y * 2 == 0);
}

TEST_CASE("solve produces particular solutions and detects inconsistency") {
  auto sol = solve(qmat({{1, 1}}), {BigRat(3)});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] + (*sol)[1] == 3);
  auto none = solve(qmat({{1, 1}, {1, 1}}), {BigRat(0), BigRat(1)});
  CHECK(!none.has_value());
}

TEST_CASE("quotient_basis coordinate case") {
  RatField f;
  auto amb = full_space(f, 3);
  auto sub = make_subspace(qmat({{1, 0, 0}}));
  auto qd = quotient_basis(amb, sub);
  CHECK(qd.section.rows == 2);
  CHECK(qd.projection.rows == 2);
  // projection kills the subspace
  auto p = mat_apply(qd.projection, {BigRat(5), BigRat(0), BigRat(0)});
  CHECK(p[0] == 0);
  CHECK(p[1] == 0);
}

TEST_CASE("quotient_basis rejects non-subspaces") {
  RatField f;
  auto amb = make_subspace(qmat({{1, 0, 0}, {0, 1, 0}}));
  auto bad = make_subspace(qmat({{0, 0, 1}}));
  CHECK_THROWS_AS(quotient_basis(amb, bad), NotASubspace);
}

TEST_CASE("intersect of transverse lines is zero") {
  auto a = make_subspace(qmat({{1, 0}}));
  auto b = make_subspace(qmat({{0, 1}}));
  CHECK(intersect(a, b).dim() == 0);
}

TEST_CASE("property: rank + nullity = cols, rref idempotent, modular dims") {
  std::mt19937 rng(20240517);
  for (int iter = 0; iter < 60; ++iter) {
    int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
    auto m = random_qmat(rng, r, c);
    auto rr = rref(m);
    CHECK(rr.rank + kernel_basis(m).dim() == c);
    CHECK(rref(rr.mat).mat == rr.mat);

    auto a = make_subspace(random_qmat(rng, 1 + rng() % 3, 4));
    auto b = make_subspace(random_qmat(rng, 1 + rng() % 3, 4));
    CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
  }
}

TEST_CASE("property: exact round-trip through the scalar encoding") {
  RatField f;
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    BigRat x(static_cast<int>(rng() % 2000) - 1000, 1 + static_cast<int>(rng() % 997));
    CHECK(f.from_string(f.to_string(x)) == x);
  }
  PrimeField f5(5);
  for (int64_t v = 0; v < 5; ++v) CHECK(f5.from_string(f5.to_string(v)) == v);
}

TEST_CASE("prime field arithmetic") {
  PrimeField f7(7);
  CHECK(f7.mul(f7.inv(3), 3) == 1);
  CHECK(f7.from_int(-1) == 6);
  CHECK_THROWS(PrimeField(6));
}
