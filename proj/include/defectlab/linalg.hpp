#pragma once

#include <vector>

namespace defectlab {

// Dense symmetric positive-definite solve via Cholesky, for the ridge-damped
// normal equations of ordinary least squares. Matrices are row-major n x n.
// Throws InternalError when the matrix is not positive definite (cannot
// happen for X'X + eps*I with eps > 0 apart from overflow).
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b);

// Least squares of targets on rows with an implicit leading intercept
// column; the normal-equation diagonal is damped by `ridge` to tolerate
// collinear columns. Returns d+1 coefficients, intercept first.
std::vector<double> ridge_least_squares(const std::vector<std::vector<double>>& rows,
                                        const std::vector<double>& targets,
                                        double ridge);

} // namespace defectlab
