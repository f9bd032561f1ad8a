#include "defectlab/linalg.hpp"

#include <cmath>
#include <cstddef>

#include "defectlab/error.hpp"

namespace defectlab {

std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    // in-place Cholesky: a = L L^T, lower triangle
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
        if (!(diag > 0.0) || !std::isfinite(diag))
            throw Error(ErrorCode::internal_error, "matrix is not positive definite");
        const double ljj = std::sqrt(diag);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = v / ljj;
        }
    }
    // forward substitution L y = b
    for (std::size_t i = 0; i < n; ++i) {
        double v = b[i];
        for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
        b[i] = v / a[i * n + i];
    }
    // back substitution L^T x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double v = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= a[k * n + ii] * b[k];
        b[ii] = v / a[ii * n + ii];
    }
    return b;
}

std::vector<double> ridge_least_squares(const std::vector<std::vector<double>>& rows,
                                        const std::vector<double>& targets,
                                        double ridge) {
    const std::size_t n = rows.size();
    const std::size_t d = rows.empty() ? 0 : rows[0].size();
    const std::size_t m = d + 1; // intercept first

    std::vector<double> xtx(m * m, 0.0);
    std::vector<double> xty(m, 0.0);
    std::vector<double> aug(m);
    for (std::size_t i = 0; i < n; ++i) {
        aug[0] = 1.0;
        for (std::size_t f = 0; f < d; ++f) aug[f + 1] = rows[i][f];
        for (std::size_t r = 0; r < m; ++r) {
            xty[r] += aug[r] * targets[i];
            for (std::size_t c = r; c < m; ++c) xtx[r * m + c] += aug[r] * aug[c];
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        xtx[r * m + r] += ridge;
        for (std::size_t c = 0; c < r; ++c) xtx[r * m + c] = xtx[c * m + r];
    }
    return solve_spd(std::move(xtx), std::move(xty));
}

} // namespace defectlab
