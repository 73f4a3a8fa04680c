#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tightcert {

// Dense real symmetric matrix in full row-major storage. Writes go through
// set(), which stores both (i,j) and (j,i), so the two triangles are always
// bit-identical. All stored entries are finite.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n);

  static SymmetricMatrix identity(std::size_t n);
  static SymmetricMatrix ones(std::size_t n);
  static SymmetricMatrix diagonal(std::span<const double> d);
  static SymmetricMatrix outer(std::span<const double> v);

  // Requires exact symmetry of `row_major` (n*n values).
  static SymmetricMatrix from_dense(std::size_t n, std::span<const double> row_major);
  // Averages with the transpose; reports the max asymmetry |a_ij - a_ji|.
  static SymmetricMatrix symmetrized(std::size_t n, std::span<const double> row_major,
                                     double* max_asymmetry = nullptr);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value) { set(i, j, (*this)(i, j) + value); }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return data_; }

  double max_abs() const noexcept;
  double trace() const noexcept;
  double inf_norm() const noexcept;  // max absolute row sum
  std::vector<double> row_sums() const;
  std::vector<double> multiply(std::span<const double> v) const;

  SymmetricMatrix& operator+=(const SymmetricMatrix& other);
  SymmetricMatrix& operator-=(const SymmetricMatrix& other);
  SymmetricMatrix& operator*=(double c);

  // diag(s) * M * diag(s)
  SymmetricMatrix conjugated(std::span<const double> s) const;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b);
SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b);
SymmetricMatrix operator*(double c, SymmetricMatrix a);

using SignVector = std::vector<double>;

bool is_sign_vector(std::span<const double> x) noexcept;

}  // namespace tightcert
