#pragma once

#include <vector>

namespace defectlab::stats {

struct OlsFit {
    std::vector<double> coefficients;  // weights then intercept (appended column)
    double r_squared = 0.0;
};

/// Least squares of y on X plus an intercept, via a rank-revealing orthogonal
/// decomposition (minimum-norm solution on rank-deficient designs). Throws
/// DegenerateResponse when y has zero variance.
OlsFit ols_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y);

}  // namespace defectlab::stats
