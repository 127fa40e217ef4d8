#include <random>

#include "doctest.h"
#include "projrig/exact_matrix.hpp"

using namespace projrig;

namespace {

Rational rq(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

ExactMatrix random_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  std::mt19937_64 engine(seed);
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      long num = static_cast<long>(engine() % 19) - 9;
      long den = 1 + static_cast<long>(engine() % 4);
      m.at(r, c) = rq(num, den);
    }
  }
  return m;
}

bool is_zero_vector(const std::vector<Rational>& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

std::vector<Rational> transpose_apply(const ExactMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.cols(), Rational(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational term = v[r] * m.at(r, c);
      out[c] += term;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("rank of hand-sized matrices is exact") {
  ExactMatrix m(0, 3);
  m.append_row({rq(1), rq(2), rq(3)});
  m.append_row({rq(2), rq(4), rq(6)});
  m.append_row({rq(0), rq(1), rq(1)});
  CHECK(m.rank() == 2);

  ExactMatrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = rq(1);
  CHECK(id.rank() == 3);

  ExactMatrix zero(4, 5);
  CHECK(zero.rank() == 0);

  // A dependence that only holds with exact fractions: row2 = row0/3 + row1/7.
  ExactMatrix frac(0, 3);
  frac.append_row({rq(1, 3), rq(1, 5), rq(1)});
  frac.append_row({rq(1, 7), rq(2), rq(-1, 2)});
  frac.append_row({rq(1, 9) + rq(1, 49), rq(1, 15) + rq(2, 7), rq(1, 3) - rq(1, 14)});
  CHECK(frac.rank() == 2);
}

TEST_CASE("reduced echelon form has unit pivots and cleared columns") {
  ExactMatrix m = random_matrix(3, 5, 7);
  auto ech = m.reduced_echelon();
  CHECK(ech.rank == ech.rref.size());
  CHECK(ech.pivotCols.size() == ech.rank);
  for (std::size_t r = 0; r < ech.rank; ++r) {
    std::size_t pc = ech.pivotCols[r];
    CHECK(ech.rref[r][pc] == 1);
    for (std::size_t other = 0; other < ech.rank; ++other) {
      if (other != r) CHECK(ech.rref[other][pc] == 0);
    }
    // Echelon shape: nothing to the left of the pivot.
    for (std::size_t c = 0; c < pc; ++c) CHECK(ech.rref[r][c] == 0);
  }
  // Pivot columns strictly increase.
  for (std::size_t r = 1; r < ech.rank; ++r) CHECK(ech.pivotCols[r - 1] < ech.pivotCols[r]);
}

TEST_CASE("kernel and cokernel satisfy their defining equations") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5, 6, 7, 8}) {
    std::mt19937_64 shape(seed * 977);
    std::size_t rows = 2 + shape() % 6;
    std::size_t cols = 2 + shape() % 6;
    ExactMatrix m = random_matrix(seed, rows, cols);
    std::size_t r = m.rank();

    auto kernel = m.kernel_basis();
    CHECK(kernel.size() == cols - r);
    for (const auto& v : kernel) {
      CHECK_FALSE(is_zero_vector(v));
      CHECK(is_zero_vector(m.apply(v)));
    }

    auto cokernel = m.cokernel_basis();
    CHECK(cokernel.size() == rows - r);
    for (const auto& w : cokernel) {
      CHECK_FALSE(is_zero_vector(w));
      CHECK(is_zero_vector(transpose_apply(m, w)));
    }
  }
}

TEST_CASE("kernel vectors are canonical integer vectors") {
  ExactMatrix m = random_matrix(11, 4, 7);
  for (const auto& v : m.kernel_basis()) {
    Rational content(0);
    bool sawNonzero = false;
    for (const auto& x : v) {
      CHECK(x.get_den() == 1);
      if (!sawNonzero && x != 0) {
        CHECK(x > 0);
        sawNonzero = true;
      }
    }
    CHECK(sawNonzero);
    CHECK(canonical_integer_vector(v) == v);
    (void)content;
  }
}

TEST_CASE("solve returns an exact particular solution or a witness row") {
  for (std::uint64_t seed : {10, 20, 30, 40}) {
    ExactMatrix m = random_matrix(seed, 5, 4);
    // Right-hand sides in the column space are solvable.
    std::vector<Rational> x = {rq(1, 3), rq(-2), rq(7, 5), rq(0)};
    auto solvable = m.solve(m.apply(x));
    REQUIRE(solvable.consistent);
    CHECK(m.apply(solvable.solution) == m.apply(x));
  }

  // 0 = 1 inconsistency is detected with its echelon position.
  ExactMatrix m(0, 2);
  m.append_row({rq(1), rq(1)});
  m.append_row({rq(2), rq(2)});
  auto res = m.solve({rq(1), rq(3)});
  CHECK_FALSE(res.consistent);
  CHECK(res.inconsistentRow == 1);

  auto ok = m.solve({rq(1), rq(2)});
  REQUIRE(ok.consistent);
  CHECK(m.apply(ok.solution) == std::vector<Rational>{rq(1), rq(2)});
}

TEST_CASE("elimination is deterministic") {
  ExactMatrix m = random_matrix(42, 6, 6);
  auto first = m.reduced_echelon();
  auto second = m.reduced_echelon();
  CHECK(first.rref == second.rref);
  CHECK(first.pivotCols == second.pivotCols);
  CHECK(m.kernel_basis() == m.kernel_basis());
}

TEST_CASE("rank is invariant under transposition and row scaling") {
  for (std::uint64_t seed : {5, 15, 25}) {
    ExactMatrix m = random_matrix(seed, 4, 6);
    CHECK(m.rank() == m.transposed().rank());

    ExactMatrix scaled = m;
    for (std::size_t c = 0; c < scaled.cols(); ++c) {
      Rational v = scaled.at(2, c) * rq(-7, 3);
      scaled.at(2, c) = v;
    }
    CHECK(scaled.rank() == m.rank());
  }
}

TEST_CASE("canonical integer vector clears denominators and fixes the sign") {
  std::vector<Rational> v = {rq(0), rq(-1, 2), rq(1, 3), rq(-2)};
  auto canon = canonical_integer_vector(v);
  CHECK(canon == std::vector<Rational>{rq(0), rq(3), rq(-2), rq(12)});
  // Idempotent and scale invariant.
  CHECK(canonical_integer_vector(canon) == canon);
  std::vector<Rational> scaled = v;
  for (auto& x : scaled) x *= rq(-5, 7);
  CHECK(canonical_integer_vector(scaled) == canon);
}

TEST_CASE("large intermediate values stay exact") {
  // Hilbert-like matrix: notoriously ill-conditioned in floating point, rank
  // is full in exact arithmetic.
  ExactMatrix h(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      h.at(i, j) = rq(1, static_cast<long>(i + j + 1));
    }
  }
  CHECK(h.rank() == 6);
  CHECK(h.kernel_basis().empty());
}
