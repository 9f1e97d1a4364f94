#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ocs_toe {

using Count = std::int64_t;

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Count fill = 0);
  IntMatrix(std::initializer_list<std::initializer_list<Count>> rows);
  static IntMatrix square(std::size_t n, Count fill = 0) { return IntMatrix(n, n, fill); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Count& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Count operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Count row_sum(std::size_t i) const;
  Count col_sum(std::size_t j) const;
  Count total() const;
  Count max_entry() const;
  bool is_symmetric() const;
  IntMatrix transposed() const;

  IntMatrix& operator+=(const IntMatrix& other);
  IntMatrix& operator-=(const IntMatrix& other);
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  const std::vector<Count>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Count> data_;
};

// P x P x K integer tensor, indexed (i, j, k). Used for OCS link counts where
// k is the OCS (or OCS group) axis.
class CountTensor {
 public:
  CountTensor() = default;
  CountTensor(std::size_t p, std::size_t layers, Count fill = 0)
      : p_(p), layers_(layers), data_(p * p * layers, fill) {}

  std::size_t p() const { return p_; }
  std::size_t layers() const { return layers_; }

  Count& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * p_ + j) * layers_ + k]; }
  Count operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * p_ + j) * layers_ + k];
  }

  // x(., ., k) as a P x P matrix.
  IntMatrix layer(std::size_t k) const;
  void set_layer(std::size_t k, const IntMatrix& m);
  // Sum over the layer axis.
  IntMatrix collapse() const;
  Count total() const;
  const std::vector<Count>& data() const { return data_; }

  friend bool operator==(const CountTensor&, const CountTensor&) = default;

 private:
  std::size_t p_ = 0;
  std::size_t layers_ = 0;
  std::vector<Count> data_;
};

std::string to_string(const IntMatrix& m);

}  // namespace ocs_toe
