#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference with the same per-element arithmetic order, so both produce
// bit-identical results for any thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "tightcert/symmetric_matrix.hpp"

namespace tightcert::kernels {

// out = m * v
void symv(const SymmetricMatrix& m, std::span<const double> v, std::span<double> out);
void symv_serial(const SymmetricMatrix& m, std::span<const double> v, std::span<double> out);

// out (n x k, row-major) = m * r (n x k, row-major)
void sym_times_dense(const SymmetricMatrix& m, std::span<const double> r, std::size_t k,
                     std::span<double> out);
void sym_times_dense_serial(const SymmetricMatrix& m, std::span<const double> r, std::size_t k,
                            std::span<double> out);

// Off-diagonal row sums: out_i = sum_{j != i} m_ij.
void offdiag_row_sums(const SymmetricMatrix& m, std::span<double> out);
void offdiag_row_sums_serial(const SymmetricMatrix& m, std::span<double> out);

int max_threads();

}  // namespace tightcert::kernels
