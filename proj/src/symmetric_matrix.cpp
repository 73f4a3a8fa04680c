#include "tightcert/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tightcert/error.hpp"

namespace tightcert {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kOddDimension: return "OddDimension";
    case ErrorCode::kUnknownEnsemble: return "UnknownEnsemble";
    case ErrorCode::kRequiresDiscreteInstance: return "RequiresDiscreteInstance";
    case ErrorCode::kMissingLabels: return "MissingLabels";
    case ErrorCode::kMissingParams: return "MissingParams";
    case ErrorCode::kNonSignVector: return "NonSignVector";
    case ErrorCode::kNonLaplacian: return "NonLaplacian";
    case ErrorCode::kNonPositiveDiagonalMax: return "NonPositiveDiagonalMax";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kUnequalRowSums: return "UnequalRowSums";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "matrix entry is not finite");
}

void require_same_size(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dimension mismatch " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

SymmetricMatrix SymmetricMatrix::ones(std::size_t n) {
  SymmetricMatrix m(n);
  std::fill(m.data_.begin(), m.data_.end(), 1.0);
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> d) {
  SymmetricMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

SymmetricMatrix SymmetricMatrix::outer(std::span<const double> v) {
  const std::size_t n = v.size();
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    require_finite(v[i]);
    for (std::size_t j = 0; j < n; ++j) m.data_[i * n + j] = v[i] * v[j];
  }
  return m;
}

SymmetricMatrix SymmetricMatrix::from_dense(std::size_t n, std::span<const double> row_major) {
  if (row_major.size() != n * n) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(n * n) + " entries");
  }
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (row_major[i * n + j] != row_major[j * n + i]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "input not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      m.set(i, j, row_major[i * n + j]);
    }
  }
  return m;
}

SymmetricMatrix SymmetricMatrix::symmetrized(std::size_t n, std::span<const double> row_major,
                                             double* max_asymmetry) {
  if (row_major.size() != n * n) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(n * n) + " entries");
  }
  SymmetricMatrix m(n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double a = row_major[i * n + j];
      const double b = row_major[j * n + i];
      worst = std::max(worst, std::abs(a - b));
      m.set(i, j, 0.5 * (a + b));
    }
  }
  if (max_asymmetry != nullptr) *max_asymmetry = worst;
  return m;
}

double SymmetricMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw Error(ErrorCode::kIndexOutOfRange, "matrix index");
  return data_[i * n_ + j];
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw Error(ErrorCode::kIndexOutOfRange, "matrix index");
  require_finite(value);
  data_[i * n_ + j] = value;
  data_[j * n_ + i] = value;
}

double SymmetricMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

double SymmetricMatrix::inf_norm() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> SymmetricMatrix::row_sums() const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += v;
    out[i] = s;
  }
  return out;
}

std::vector<double> SymmetricMatrix::multiply(std::span<const double> v) const {
  if (v.size() != n_) throw Error(ErrorCode::kInvalidArgument, "vector length mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* r = data_.data() + i * n_;
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  for (double v : data_) require_finite(v);
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator-=(const SymmetricMatrix& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  for (double v : data_) require_finite(v);
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator*=(double c) {
  require_finite(c);
  for (double& v : data_) v *= c;
  for (double v : data_) require_finite(v);
  return *this;
}

SymmetricMatrix SymmetricMatrix::conjugated(std::span<const double> s) const {
  if (s.size() != n_) throw Error(ErrorCode::kInvalidArgument, "vector length mismatch");
  SymmetricMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) out.set(i, j, s[i] * data_[i * n_ + j] * s[j]);
  }
  return out;
}

SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
SymmetricMatrix operator*(double c, SymmetricMatrix a) { return a *= c; }

bool is_sign_vector(std::span<const double> x) noexcept {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 1.0 || v == -1.0; });
}

}  // namespace tightcert
