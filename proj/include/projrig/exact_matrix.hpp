#pragma once

#include <cstddef>
#include <vector>

#include "projrig/rational.hpp"

namespace projrig {

// Clears denominators, divides by the gcd and makes the first nonzero entry
// positive. The canonical scale-class representative used for kernel and
// cokernel basis vectors.
std::vector<Rational> canonical_integer_vector(std::vector<Rational> v);

// Dense matrix of exact rationals with deterministic fraction-free
// elimination: rows are scaled to integers, then Bareiss one-step
// elimination pivots on the entry of largest absolute value (ties broken by
// lowest row index), so rank, kernels and solutions are reproducible
// bit for bit.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<Rational>& row);
  std::vector<Rational> row(std::size_t r) const;

  ExactMatrix transposed() const;

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  struct Echelon {
    // rank rows in reduced row-echelon form (unit pivots, zeros above and
    // below), over the row space of the input.
    std::vector<std::vector<Rational>> rref;
    std::vector<std::size_t> pivotCols;
    std::size_t rank = 0;
  };
  Echelon reduced_echelon() const;

  std::size_t rank() const;

  // Kernel basis from the reduced echelon form, one vector per free column
  // in column order, each vector canonicalized.
  std::vector<std::vector<Rational>> kernel_basis() const;

  // Kernel of the transpose.
  std::vector<std::vector<Rational>> cokernel_basis() const;

  struct SolveResult {
    bool consistent = false;
    std::vector<Rational> solution;        // particular solution, free variables zero
    std::size_t inconsistentRow = 0;       // echelon row position witnessing 0 = nonzero
  };
  SolveResult solve(const std::vector<Rational>& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace projrig
