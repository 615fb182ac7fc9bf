#include <doctest.h>

#include <random>

#include "confseq/linalg.hpp"
#include "support.hpp"

using namespace confseq;

namespace {

Matrix dense(std::size_t cols, std::vector<std::vector<long>> rows) {
  std::vector<SparseVector> data;
  for (auto& r : rows) {
    std::vector<Scalar> s(r.begin(), r.end());
    data.push_back(SparseVector::from_dense(s));
  }
  return Matrix::from_rows(cols, std::move(data));
}

}  // namespace

TEST_CASE("scalar arithmetic is exact and canonical") {
  Scalar a(2, 4);
  CHECK(a == Scalar(1, 2));
  CHECK(a.to_string() == "1/2");
  CHECK((a + Scalar(1, 3)).to_string() == "5/6");
  CHECK((Scalar(-6, 4)).to_string() == "-3/2");
  CHECK((a / Scalar(3)).to_string() == "1/6");
  CHECK_THROWS(Scalar(0).inverse());
}

TEST_CASE("prime field scalars") {
  Field f = Field::prime(7);
  Scalar x = Scalar::in_field(10, f);
  CHECK(x.residue() == 3);
  CHECK((x * x.inverse()).is_one());
  CHECK((Scalar(1, 2) * Scalar::in_field(2, f)).is_one());
  CHECK(Scalar::parse("-2/5", f) == Scalar::in_field(-2, f) / Scalar::in_field(5, f));
  CHECK_THROWS(Field::prime(8));
  CHECK(Field::parse("F5").characteristic() == 5);
  CHECK(Field::parse("Fp 11").characteristic() == 11);
  CHECK(Field::parse("Q").is_rational());
  CHECK_THROWS(Scalar::in_field(1, Field::prime(5)) + Scalar::in_field(1, Field::prime(7)));
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix(0, 0)) == 0);
  CHECK(rank(Matrix::identity(2)) == 2);
  CHECK(rank(dense(2, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Matrix::identity(3)).empty());
  CHECK(kernel_basis(Matrix(3, 3)).size() == 3);
  auto k = kernel_basis(dense(2, {{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == SparseVector::from_dense({Scalar(-1), Scalar(1)}));
}

TEST_CASE("quotient examples") {
  CHECK(Quotient(2, {SparseVector::unit(0)}).dim() == 1);
  CHECK(Quotient(3, {SparseVector::unit(0), SparseVector::unit(1), SparseVector::unit(2)}).dim() == 0);
  SparseVector diag = SparseVector::from_dense({Scalar(1), Scalar(1)});
  Quotient q(2, {diag});
  CHECK(q.dim() == 1);
  CHECK(q.project(diag).is_zero());
  CHECK(!q.project(SparseVector::unit(0)).is_zero());
  CHECK(q.project(SparseVector::unit(0)) == q.project(SparseVector::unit(1)).scaled(Scalar(-1)));
}

TEST_CASE("solve examples") {
  auto x = solve(Matrix::identity(3), SparseVector::unit(0));
  REQUIRE(x);
  CHECK(*x == SparseVector::unit(0));
  CHECK(!solve(Matrix(2, 2), SparseVector::unit(1)));
  Matrix m = dense(2, {{1, 1}});
  auto y = solve(m, SparseVector::unit(0, Scalar(2)));
  REQUIRE(y);
  CHECK(m.apply(*y) == SparseVector::unit(0, Scalar(2)));
}

TEST_CASE("rank plus nullity equals columns") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 9;
    Matrix m = testing::random_matrix(rng, r, c);
    auto k = kernel_basis(m);
    CHECK(rank(m) + k.size() == c);
    for (const auto& v : k) CHECK(m.apply(v).is_zero());
    CHECK(rank(m) == rank(m.transpose()));
    CHECK(image_basis(m).size() == rank(m));
  }
}

TEST_CASE("solve recovers images") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    Matrix m = testing::random_matrix(rng, r, c);
    SparseVector v = testing::random_vector(rng, c);
    SparseVector rhs = m.apply(v);
    auto x = solve(m, rhs);
    REQUIRE(x);
    CHECK(m.apply(*x) == rhs);
    SparseVector other = testing::random_vector(rng, r);
    if (auto y = solve(m, other)) CHECK(m.apply(*y) == other);
  }
}

TEST_CASE("subquotient projections are linear and kill the denominator") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t dim = 2 + rng() % 6;
    std::vector<SparseVector> den, num;
    for (int i = 0; i < 2; ++i) den.push_back(testing::random_vector(rng, dim));
    num = den;
    for (int i = 0; i < 3; ++i) num.push_back(testing::random_vector(rng, dim));
    Subquotient sq(num, den);
    Echelon e_num, e_den;
    for (auto& v : num) e_num.insert(v);
    for (auto& v : den) e_den.insert(v);
    CHECK(sq.dim() == e_num.rank() - e_den.rank());
    for (auto& v : den) CHECK(sq.project(v).is_zero());
    for (std::size_t i = 0; i < sq.dim(); ++i) CHECK(sq.project(sq.representatives()[i]) == SparseVector::unit(i));
    SparseVector a = num[2] + num[3].scaled(Scalar(3));
    CHECK(sq.project(a) == sq.project(num[2]) + sq.project(num[3]).scaled(Scalar(3)));
  }
}

TEST_CASE("matrix product and transpose") {
  Matrix a = dense(3, {{1, 2, 0}, {0, 1, -1}});
  Matrix b = dense(2, {{1, 0}, {0, 1}, {1, 1}});
  Matrix p = a * b;
  CHECK(p == dense(2, {{1, 2}, {-1, 0}}));
  CHECK(a.transpose().transpose() == a);
}
