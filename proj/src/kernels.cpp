#include "tightcert/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tightcert/error.hpp"

namespace tightcert::kernels {

namespace {

// Below this dimension the fork/join overhead dominates.
constexpr std::size_t kParallelMinRows = 128;

void check_vec(const SymmetricMatrix& m, std::span<const double> v, std::span<double> out) {
  if (v.size() != m.size() || out.size() != m.size()) {
    throw Error(ErrorCode::kInvalidArgument, "symv: length mismatch");
  }
}

void check_dense(const SymmetricMatrix& m, std::span<const double> r, std::size_t k,
                 std::span<double> out) {
  if (r.size() != m.size() * k || out.size() != m.size() * k) {
    throw Error(ErrorCode::kInvalidArgument, "sym_times_dense: shape mismatch");
  }
}

inline double row_dot(const SymmetricMatrix& m, std::size_t i, std::span<const double> v) {
  const auto row = m.row(i);
  double s = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
  return s;
}

inline void row_times_dense(const SymmetricMatrix& m, std::size_t i, std::span<const double> r,
                            std::size_t k, std::span<double> out) {
  const auto row = m.row(i);
  double* o = out.data() + i * k;
  for (std::size_t c = 0; c < k; ++c) o[c] = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double a = row[j];
    if (a == 0.0) continue;
    const double* rj = r.data() + j * k;
    for (std::size_t c = 0; c < k; ++c) o[c] += a * rj[c];
  }
}

inline double row_offdiag_sum(const SymmetricMatrix& m, std::size_t i) {
  const auto row = m.row(i);
  double s = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j != i) s += row[j];
  }
  return s;
}

}  // namespace

void symv(const SymmetricMatrix& m, std::span<const double> v, std::span<double> out) {
  check_vec(m, v, out);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.size());
#pragma omp parallel for schedule(static) if (m.size() >= kParallelMinRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = row_dot(m, static_cast<std::size_t>(i), v);
}

void symv_serial(const SymmetricMatrix& m, std::span<const double> v, std::span<double> out) {
  check_vec(m, v, out);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = row_dot(m, i, v);
}

void sym_times_dense(const SymmetricMatrix& m, std::span<const double> r, std::size_t k,
                     std::span<double> out) {
  check_dense(m, r, k, out);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.size());
#pragma omp parallel for schedule(static) if (m.size() >= kParallelMinRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) row_times_dense(m, static_cast<std::size_t>(i), r, k, out);
}

void sym_times_dense_serial(const SymmetricMatrix& m, std::span<const double> r, std::size_t k,
                            std::span<double> out) {
  check_dense(m, r, k, out);
  for (std::size_t i = 0; i < m.size(); ++i) row_times_dense(m, i, r, k, out);
}

void offdiag_row_sums(const SymmetricMatrix& m, std::span<double> out) {
  if (out.size() != m.size()) throw Error(ErrorCode::kInvalidArgument, "row sums: length mismatch");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.size());
#pragma omp parallel for schedule(static) if (m.size() >= kParallelMinRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = row_offdiag_sum(m, static_cast<std::size_t>(i));
}

void offdiag_row_sums_serial(const SymmetricMatrix& m, std::span<double> out) {
  if (out.size() != m.size()) throw Error(ErrorCode::kInvalidArgument, "row sums: length mismatch");
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = row_offdiag_sum(m, i);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace tightcert::kernels
