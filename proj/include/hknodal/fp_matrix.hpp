#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hknodal/prime_field.hpp"

namespace hknodal {

/// Dense row-major matrix over F_p, consumed by rank().
class FpMatrix {
 public:
  using value_type = PrimeField::value_type;

  FpMatrix(PrimeField field, std::size_t cols) : field_(field), cols_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// Appends a zero row and returns a pointer to it.
  value_type* append_row() {
    data_.resize(data_.size() + cols_, 0);
    ++rows_;
    return data_.data() + data_.size() - cols_;
  }

  void append_row(const std::vector<value_type>& row) {
    value_type* dst = append_row();
    for (std::size_t c = 0; c < cols_; ++c) dst[c] = row[c];
  }

  value_type* row(std::size_t r) noexcept { return data_.data() + r * cols_; }

  /// Rank by Gaussian elimination; destroys the contents.
  std::size_t rank() {
    const std::size_t nrows = rows();
    const std::uint64_t p = field_.characteristic();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < nrows; ++col) {
      std::size_t pivot = rank;
      while (pivot < nrows && row(pivot)[col] == 0) ++pivot;
      if (pivot == nrows) continue;
      if (pivot != rank)
        for (std::size_t c = col; c < cols_; ++c) std::swap(row(pivot)[c], row(rank)[c]);
      value_type* prow = row(rank);
      const value_type inv = field_.inv(prow[col]);
      for (std::size_t c = col; c < cols_; ++c) prow[c] = field_.mul(prow[c], inv);
      for (std::size_t r = rank + 1; r < nrows; ++r) {
        value_type* cur = row(r);
        const std::uint64_t factor = cur[col];
        if (factor == 0) continue;
        const std::uint64_t neg = p - factor;
        for (std::size_t c = col; c < cols_; ++c)
          if (prow[c]) cur[c] = static_cast<value_type>((cur[c] + neg * prow[c]) % p);
      }
      ++rank;
    }
    return rank;
  }

 private:
  PrimeField field_;
  std::size_t cols_;
  std::size_t rows_ = 0;
  std::vector<value_type> data_;
};

}  // namespace hknodal
