#pragma once

#include <vector>

namespace ach {

/// One non-negative integer solution vector, indexed like the coefficient
/// vector it solves.
using DiophSolution = std::vector<unsigned>;

/// All componentwise-minimal non-zero non-negative solutions of
/// sum_i coeffs[i] * x[i] = 0. Coefficients may be negative or zero; a zero
/// column contributes its unit vector. Incremental search: grow candidate
/// vectors one unit at a time, only in directions that shrink the defect,
/// pruning anything dominated by an already-found solution.
std::vector<DiophSolution> minimal_solutions(const std::vector<long long>& coeffs);

/// Minimal basis of sum_i left[i]*x[i] = sum_j right[j]*y[j], columns laid
/// out left-then-right. All coefficients must be >= 1 and both sides
/// nonempty. Output sorted lexicographically.
std::vector<DiophSolution> dioph_minimal_basis(const std::vector<unsigned>& left,
                                               const std::vector<unsigned>& right);

} // namespace ach
