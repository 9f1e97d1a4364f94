#include "ocs_toe/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ocs_toe/errors.hpp"

namespace ocs_toe {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, Count fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Count>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Count IntMatrix::row_sum(std::size_t i) const {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  return std::accumulate(first, first + static_cast<std::ptrdiff_t>(cols_), Count{0});
}

Count IntMatrix::col_sum(std::size_t j) const {
  Count s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
  return s;
}

Count IntMatrix::total() const { return std::accumulate(data_.begin(), data_.end(), Count{0}); }

Count IntMatrix::max_entry() const { return data_.empty() ? 0 : *std::max_element(data_.begin(), data_.end()); }

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shapes differ");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shapes differ");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
  return *this;
}

IntMatrix CountTensor::layer(std::size_t k) const {
  IntMatrix m = IntMatrix::square(p_);
  for (std::size_t i = 0; i < p_; ++i)
    for (std::size_t j = 0; j < p_; ++j) m(i, j) = (*this)(i, j, k);
  return m;
}

void CountTensor::set_layer(std::size_t k, const IntMatrix& m) {
  if (m.rows() != p_ || m.cols() != p_) throw DimensionError("layer shape differs from tensor");
  for (std::size_t i = 0; i < p_; ++i)
    for (std::size_t j = 0; j < p_; ++j) (*this)(i, j, k) = m(i, j);
}

IntMatrix CountTensor::collapse() const {
  IntMatrix m = IntMatrix::square(p_);
  for (std::size_t i = 0; i < p_; ++i)
    for (std::size_t j = 0; j < p_; ++j)
      for (std::size_t k = 0; k < layers_; ++k) m(i, j) += (*this)(i, j, k);
  return m;
}

Count CountTensor::total() const { return std::accumulate(data_.begin(), data_.end(), Count{0}); }

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace ocs_toe
