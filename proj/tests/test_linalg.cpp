#include "mvkit/generate.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mvkit;

namespace {

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(-bound, bound);
  return m;
}

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("snf of small fixed matrices") {
  SmithResult s = snf(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(s.diagonal() == std::vector<Integer>{2, 6, 12});
  CHECK(s.U * IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}} * s.V == s.D);

  CHECK(snf(IntMatrix{{2, 0}, {0, 3}}).diagonal() == std::vector<Integer>{1, 6});
  CHECK(snf(IntMatrix::zero(2, 3)).rank == 0);
  CHECK(snf(IntMatrix(0, 4)).D.cols() == 4);
  CHECK(snf(IntMatrix{{-7}}).diagonal() == std::vector<Integer>{7});
}

TEST_CASE("snf agrees with determinantal divisors") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = rng.uniform(1, 4), c = rng.uniform(1, 4);
    IntMatrix m = random_matrix(rng, r, c, t % 2 ? 4 : 30);
    SmithResult s = snf(m);
    CAPTURE(m);
    REQUIRE(s.U * m * s.V == s.D);
    CHECK(is_diagonal(s.D));
    CHECK(abs(oracle::det(s.U)) == 1);
    CHECK(abs(oracle::det(s.V)) == 1);
    auto factors = oracle::invariant_factors(m);
    factors.resize(std::min(r, c), 0);
    CHECK(s.diagonal() == factors);
    CHECK(s.rank == oracle::rank(m));
  }
}

TEST_CASE("snf handles large entries") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m = random_matrix(rng, 6, 6, 100);
    SmithResult s = snf(m);
    REQUIRE(s.U * m * s.V == s.D);
    auto d = s.diagonal();
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
  }
}

TEST_CASE("hermite form") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    IntMatrix m = random_matrix(rng, rng.uniform(1, 5), rng.uniform(1, 5), 9);
    HermiteResult h = hnf(m);
    REQUIRE(h.U * m == h.H);
    CHECK(is_unimodular(h.U));
    CHECK(h.rank == oracle::rank(m));
    std::size_t col = 0;
    for (std::size_t i = 0; i < h.rank; ++i) {
      while (h.H(i, col) == 0) ++col;
      CHECK(h.H(i, col) > 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h.H(k, col) >= 0);
        CHECK(h.H(k, col) < h.H(i, col));
      }
      for (std::size_t k = i + 1; k < h.H.rows(); ++k) CHECK(h.H(k, col) == 0);
    }
    for (std::size_t i = h.rank; i < h.H.rows(); ++i)
      for (std::size_t j = 0; j < h.H.cols(); ++j) CHECK(h.H(i, j) == 0);
  }
}

TEST_CASE("kernel, solve and determinant") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = rng.uniform(1, 4), c = rng.uniform(1, 5);
    IntMatrix a = random_matrix(rng, r, c, 6);
    IntMatrix k = kernel_basis(a);
    CHECK(k.cols() == c - oracle::rank(a));
    CHECK((a * k).is_zero());

    IntMatrix x = random_matrix(rng, c, 1, 5);
    auto y = solve_linear(a, a * x);
    REQUIRE(y);
    CHECK(a * *y == a * x);

    IntMatrix sq = random_matrix(rng, r, r, 8);
    CHECK(determinant(sq) == oracle::det(sq));
  }
  CHECK_FALSE(solve_linear(IntMatrix{{2}}, IntMatrix{{1}}));
  IntMatrix k = kernel_basis(IntMatrix{{1, 1}});
  REQUIRE(k.cols() == 1);
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == -k(1, 0));
}

TEST_CASE("unimodular inverse") {
  IntMatrix u{{2, 1}, {1, 1}};
  CHECK(u * unimodular_inverse(u) == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), InputError);
}

TEST_CASE("floor division") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_mod(-7, 2) == 1);
  CHECK(floor_div(7, -2) == -4);
}

TEST_CASE("literals") {
  CHECK(to_literal(IntMatrix{{1, -2}, {0, 3}}) == "[[1, -2], [0, 3]]");
}

TEST_CASE("normal form examples") {
  HermiteResult h = hnf(IntMatrix{{2, 4}, {6, 8}});
  CHECK(h.H(0, 0) == 2);
  CHECK(h.H(1, 1) == 4);
  CHECK(h.U * IntMatrix{{2, 4}, {6, 8}} == h.H);
  CHECK(hnf(IntMatrix::identity(3)).H == IntMatrix::identity(3));
  CHECK(hnf(IntMatrix::zero(2, 3)).H.is_zero());

  CHECK(snf(IntMatrix{{2, 4}, {6, 8}}).diagonal() == std::vector<Integer>{2, 4});
  CHECK(snf(IntMatrix{{6, 0}, {0, 4}}).diagonal() == std::vector<Integer>{2, 12});
  SmithResult id = snf(IntMatrix::identity(3));
  CHECK(id.D == IntMatrix::identity(3));

  CHECK_FALSE(solve_linear(IntMatrix{{2}}, IntMatrix{{3}}));
  CHECK(*solve_linear(IntMatrix{{2}}, IntMatrix{{4}}) == IntMatrix{{2}});
  auto x = solve_linear(IntMatrix{{2, 3}}, IntMatrix{{1}});
  REQUIRE(x);
  CHECK(IntMatrix{{2, 3}} * *x == IntMatrix{{1}});

  CHECK(kernel_basis(IntMatrix::identity(2)).cols() == 0);
  IntMatrix k = kernel_basis(IntMatrix{{2, -3}});
  REQUIRE(k.cols() == 1);
  CHECK(abs(k(0, 0)) == 3);
  CHECK(k(0, 0) * 2 == k(1, 0) * 3);
  CHECK(kernel_basis(IntMatrix::zero(1, 2)).cols() == 2);
}
