#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string_view>
#include <type_traits>
#include <vector>

#include "tqfa/error.hpp"

namespace tqfa {

/// The two-element Boolean semiring: addition is OR, multiplication is AND,
/// so 1 + 1 = 1.
struct Boolean {
  using value_type = bool;
  static constexpr std::string_view name = "bool";
  static constexpr value_type zero() noexcept { return false; }
  static constexpr value_type one() noexcept { return true; }
  static constexpr value_type add(value_type a, value_type b) noexcept { return a || b; }
  static constexpr value_type mul(value_type a, value_type b) noexcept { return a && b; }
};

/// Natural numbers with ordinary + and x. Used for path counting; values
/// wrap on overflow, which never happens at the sizes this library accepts.
struct Natural {
  using value_type = std::uint64_t;
  static constexpr std::string_view name = "nat";
  static constexpr value_type zero() noexcept { return 0; }
  static constexpr value_type one() noexcept { return 1; }
  static constexpr value_type add(value_type a, value_type b) noexcept { return a + b; }
  static constexpr value_type mul(value_type a, value_type b) noexcept { return a * b; }
};

template <class S>
concept Semiring = requires(typename S::value_type a, typename S::value_type b) {
  { S::zero() } -> std::same_as<typename S::value_type>;
  { S::one() } -> std::same_as<typename S::value_type>;
  { S::add(a, b) } -> std::same_as<typename S::value_type>;
  { S::mul(a, b) } -> std::same_as<typename S::value_type>;
};

/// Dense row-major matrix over a commutative semiring.
///
/// Boolean matrices pack each row into 64-bit words; unused trailing bits of
/// every row are kept at zero so that equality is plain storage equality.
template <Semiring S>
class Matrix {
 public:
  using semiring = S;
  using value_type = typename S::value_type;

  static constexpr bool kPacked = std::is_same_v<S, Boolean>;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows),
        cols_(cols),
        stride_(kPacked ? (cols + 63) / 64 : cols),
        data_(rows * stride_, Cell{}) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, S::one());
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<value_type>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw ShapeError("from_rows: ragged row");
      std::size_t j = 0;
      for (const auto& v : row) m.set(i, j++, v);
      ++i;
    }
    return m;
  }

  /// Column vector with a one at every index where `mask` is true.
  static Matrix column(const std::vector<bool>& mask) {
    Matrix m(mask.size(), 1);
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) m.set(i, 0, S::one());
    return m;
  }

  static Matrix row(const std::vector<bool>& mask) {
    Matrix m(1, mask.size());
    for (std::size_t j = 0; j < mask.size(); ++j)
      if (mask[j]) m.set(0, j, S::one());
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  value_type operator()(std::size_t i, std::size_t j) const {
    if constexpr (kPacked) {
      return (data_[i * stride_ + j / 64] >> (j % 64)) & 1u;
    } else {
      return data_[i * stride_ + j];
    }
  }

  void set(std::size_t i, std::size_t j, value_type v) {
    if constexpr (kPacked) {
      const std::uint64_t bit = std::uint64_t{1} << (j % 64);
      auto& w = data_[i * stride_ + j / 64];
      w = v ? (w | bit) : (w & ~bit);
    } else {
      data_[i * stride_ + j] = v;
    }
  }

  /// this[i][j] += v
  void accumulate(std::size_t i, std::size_t j, value_type v) {
    if constexpr (kPacked) {
      if (v) data_[i * stride_ + j / 64] |= std::uint64_t{1} << (j % 64);
    } else {
      data_[i * stride_ + j] = S::add(data_[i * stride_ + j], v);
    }
  }

  /// this.row(dst) += scale * src.row(src_row). Column counts must agree.
  void add_scaled_row(std::size_t dst, value_type scale, const Matrix& src, std::size_t src_row) {
    if constexpr (kPacked) {
      if (!scale) return;
      auto* out = data_.data() + dst * stride_;
      const auto* in = src.data_.data() + src_row * src.stride_;
      for (std::size_t w = 0; w < stride_; ++w) out[w] |= in[w];
    } else {
      if (scale == S::zero()) return;
      auto* out = data_.data() + dst * stride_;
      const auto* in = src.data_.data() + src_row * src.stride_;
      for (std::size_t j = 0; j < cols_; ++j) out[j] = S::add(out[j], S::mul(scale, in[j]));
    }
  }

  bool row_is_zero(std::size_t i) const {
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * stride_);
    return std::all_of(first, first + static_cast<std::ptrdiff_t>(stride_),
                       [](const Cell& c) { return c == Cell{}; });
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Cell& c) { return c == Cell{}; });
  }

  /// Sum of all entries.
  value_type total() const {
    value_type acc = S::zero();
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) acc = S::add(acc, (*this)(i, j));
    return acc;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  using Cell = std::conditional_t<kPacked, std::uint64_t, value_type>;

  template <Semiring>
  friend class Matrix;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Cell> data_;
};

template <Semiring S>
Matrix<S> mat_mul(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows())
    throw ShapeError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix<S> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out.add_scaled_row(i, a(i, k), b, k);
  return out;
}

template <Semiring S>
Matrix<S> mat_add(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("mat_add: shape mismatch");
  Matrix<S> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out.add_scaled_row(i, S::one(), b, i);
  return out;
}

template <Semiring S>
Matrix<S> mat_transpose(const Matrix<S>& a) {
  Matrix<S> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != S::zero()) out.set(j, i, a(i, j));
  return out;
}

/// Kronecker product. Index convention: row (i, k) of the result is
/// i * b.rows() + k, column (j, l) is j * b.cols() + l, i.e. the left
/// factor is the most significant digit.
template <Semiring S>
Matrix<S> mat_kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto x = a(i, j);
      if (x == S::zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const auto y = b(k, l);
          if (y != S::zero()) out.set(i * b.rows() + k, j * b.cols() + l, S::mul(x, y));
        }
    }
  return out;
}

template <Semiring S>
typename S::value_type mat_trace(const Matrix<S>& a) {
  if (!a.square()) throw ShapeError("mat_trace: matrix is not square");
  auto acc = S::zero();
  for (std::size_t i = 0; i < a.rows(); ++i) acc = S::add(acc, a(i, i));
  return acc;
}

template <Semiring S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  return mat_mul(a, b);
}

template <Semiring S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
  return mat_add(a, b);
}

/// Entrywise a <= b in the natural order of the Boolean semiring (a + b = b).
inline bool mat_leq(const Matrix<Boolean>& a, const Matrix<Boolean>& b) {
  return mat_add(a, b) == b;
}

/// Reinterpret a Boolean matrix over another semiring (1 -> one, 0 -> zero).
template <Semiring T>
Matrix<T> convert(const Matrix<Boolean>& a) {
  if constexpr (std::is_same_v<T, Boolean>) {
    return a;
  } else {
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j)) out.set(i, j, T::one());
    return out;
  }
}

template <Semiring S>
std::ostream& operator<<(std::ostream& os, const Matrix<S>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      if constexpr (std::is_same_v<S, Boolean>)
        os << (m(i, j) ? 1 : 0);
      else
        os << m(i, j);
    }
    os << '\n';
  }
  return os;
}

}  // namespace tqfa
