#pragma once

#include <cstddef>
#include <vector>

namespace slag {

// Dense helpers for the small systems that appear throughout (n <= 8 plus the
// (dim+1)-sized normal equations of local least-squares fits).  Row-major.

/// Solves A x = b in place (partial pivoting).  Throws InvalidInput if singular.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, std::size_t n);

/// Determinant by LU with partial pivoting.
double det_dense(std::vector<double> a, std::size_t n);

}  // namespace slag
