#include "projrig/exact_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace projrig {

namespace {

// Forward fraction-free pass shared by rank, RREF and solve. Rows are first
// scaled to integers; Bareiss one-step updates keep every intermediate entry
// an integer. An optional trailing augmented column takes part in the row
// operations but is never chosen as a pivot.
struct ForwardResult {
  std::vector<std::vector<Rational>> rows;  // echelon rows (integers), pivot rows first
  std::vector<std::size_t> pivotCols;
};

ForwardResult forward_eliminate(std::vector<std::vector<Rational>> work, std::size_t pivotableCols) {
  for (auto& row : work) {
    mpz_class scale = 1;
    for (const auto& entry : row) {
      mpz_class den = entry.get_den();
      scale = scale / gcd(scale, den) * den;
    }
    if (scale != 1) {
      Rational factor{scale};
      for (auto& entry : row) entry *= factor;
    }
  }

  std::vector<std::size_t> pivotCols;
  Rational prev(1);
  std::size_t pivotRow = 0;
  for (std::size_t col = 0; col < pivotableCols && pivotRow < work.size(); ++col) {
    std::size_t best = work.size();
    Rational bestAbs(0);
    for (std::size_t r = pivotRow; r < work.size(); ++r) {
      if (work[r][col] == 0) continue;
      Rational magnitude = abs(work[r][col]);
      if (best == work.size() || magnitude > bestAbs) {
        best = r;
        bestAbs = std::move(magnitude);
      }
    }
    if (best == work.size()) continue;
    std::swap(work[pivotRow], work[best]);
    const std::size_t width = work[pivotRow].size();
    const Rational& pivot = work[pivotRow][col];
    for (std::size_t r = pivotRow + 1; r < work.size(); ++r) {
      if (work[r][col] == 0) continue;
      Rational factor = work[r][col];
      for (std::size_t j = col + 1; j < width; ++j) {
        Rational updated = pivot * work[r][j];
        updated -= factor * work[pivotRow][j];
        updated /= prev;
        work[r][j] = std::move(updated);
      }
      work[r][col] = 0;
    }
    // Entries to the left of earlier pivots in the rows below are already
    // zero, but the Bareiss update also rescales untouched zero prefixes;
    // nothing to do since those are exact zeros.
    prev = work[pivotRow][col];
    pivotCols.push_back(col);
    ++pivotRow;
  }
  return ForwardResult{std::move(work), std::move(pivotCols)};
}

}  // namespace

std::vector<Rational> canonical_integer_vector(std::vector<Rational> v) {
  mpz_class scale = 1;
  for (const auto& entry : v) {
    mpz_class den = entry.get_den();
    scale = scale / gcd(scale, den) * den;
  }
  mpz_class content = 0;
  std::vector<mpz_class> nums(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(scale);
    nums[i] = scaled.get_num();
    content = gcd(content, nums[i]);
  }
  if (content == 0) {
    return v;  // zero vector
  }
  for (const auto& n : nums) {
    if (n != 0) {
      if (n < 0) content = -content;
      break;
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_class reduced = nums[i] / content;
    v[i] = Rational(reduced);
  }
  return v;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

void ExactMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) {
    cols_ = row.size();
  }
  if (row.size() != cols_) {
    throw std::invalid_argument("appended row has wrong width");
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Rational> ExactMatrix::row(std::size_t r) const {
  return std::vector<Rational>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

ExactMatrix ExactMatrix::transposed() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      t.at(c, r) = at(r, c);
    }
  }
  return t;
}

std::vector<Rational> ExactMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) {
    throw std::invalid_argument("vector length does not match column count");
  }
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational sum(0);
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& entry = at(r, c);
      if (entry != 0) sum += entry * v[c];
    }
    out[r] = std::move(sum);
  }
  return out;
}

ExactMatrix::Echelon ExactMatrix::reduced_echelon() const {
  std::vector<std::vector<Rational>> work(rows_);
  for (std::size_t r = 0; r < rows_; ++r) work[r] = row(r);
  ForwardResult fwd = forward_eliminate(std::move(work), cols_);

  Echelon result;
  result.pivotCols = fwd.pivotCols;
  result.rank = fwd.pivotCols.size();
  result.rref.assign(fwd.rows.begin(), fwd.rows.begin() + result.rank);
  for (std::size_t i = result.rank; i-- > 0;) {
    auto& rowI = result.rref[i];
    const std::size_t pc = result.pivotCols[i];
    Rational pivot = rowI[pc];
    for (std::size_t j = pc; j < cols_; ++j) {
      if (rowI[j] != 0) rowI[j] /= pivot;
    }
    for (std::size_t k = 0; k < i; ++k) {
      auto& rowK = result.rref[k];
      if (rowK[pc] == 0) continue;
      Rational factor = rowK[pc];
      for (std::size_t j = pc; j < cols_; ++j) {
        if (rowI[j] != 0) rowK[j] -= factor * rowI[j];
      }
    }
  }
  return result;
}

std::size_t ExactMatrix::rank() const {
  std::vector<std::vector<Rational>> work(rows_);
  for (std::size_t r = 0; r < rows_; ++r) work[r] = row(r);
  return forward_eliminate(std::move(work), cols_).pivotCols.size();
}

std::vector<std::vector<Rational>> ExactMatrix::kernel_basis() const {
  Echelon ech = reduced_echelon();
  std::vector<bool> isPivot(cols_, false);
  for (std::size_t pc : ech.pivotCols) isPivot[pc] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (isPivot[f]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < ech.rank; ++r) {
      v[ech.pivotCols[r]] = -ech.rref[r][f];
    }
    basis.push_back(canonical_integer_vector(std::move(v)));
  }
  return basis;
}

std::vector<std::vector<Rational>> ExactMatrix::cokernel_basis() const {
  return transposed().kernel_basis();
}

ExactMatrix::SolveResult ExactMatrix::solve(const std::vector<Rational>& rhs) const {
  if (rhs.size() != rows_) {
    throw std::invalid_argument("rhs length does not match row count");
  }
  std::vector<std::vector<Rational>> work(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    work[r] = row(r);
    work[r].push_back(rhs[r]);
  }
  ForwardResult fwd = forward_eliminate(std::move(work), cols_);
  const std::size_t rank = fwd.pivotCols.size();

  SolveResult result;
  for (std::size_t r = rank; r < rows_; ++r) {
    if (fwd.rows[r][cols_] != 0) {
      result.consistent = false;
      result.inconsistentRow = r;
      return result;
    }
  }
  result.consistent = true;
  result.solution.assign(cols_, Rational(0));
  for (std::size_t i = rank; i-- > 0;) {
    const std::size_t pc = fwd.pivotCols[i];
    Rational acc = fwd.rows[i][cols_];
    for (std::size_t j = pc + 1; j < cols_; ++j) {
      if (fwd.rows[i][j] != 0 && result.solution[j] != 0) {
        acc -= fwd.rows[i][j] * result.solution[j];
      }
    }
    result.solution[pc] = acc / fwd.rows[i][pc];
  }
  return result;
}

}  // namespace projrig
