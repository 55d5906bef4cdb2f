#include "defectlab/stats/ols.hpp"

#include <Eigen/Dense>

#include "defectlab/common/errors.hpp"

namespace defectlab::stats {

OlsFit ols_fit(const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
    const std::size_t n = X.size();
    if (n == 0 || n != y.size()) throw DataError("ols_fit: empty or mismatched design");
    const std::size_t p = X[0].size();
    if (n <= p) throw DataError("ols_fit: needs more rows than predictors");

    Eigen::MatrixXd A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p + 1));
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (X[i].size() != p) throw DataError("ols_fit: ragged design matrix");
        for (std::size_t j = 0; j < p; ++j)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = X[i][j];
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) = 1.0;  // intercept
        b(static_cast<Eigen::Index>(i)) = y[i];
    }

    const double mean = b.mean();
    const double ss_tot = (b.array() - mean).square().sum();
    if (ss_tot <= 1e-12 * static_cast<double>(n))
        throw DegenerateResponse("ols_fit: response has zero variance");

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    const Eigen::VectorXd beta = cod.solve(b);
    const double ss_res = (b - A * beta).squaredNorm();

    OlsFit fit;
    fit.coefficients.assign(beta.data(), beta.data() + beta.size());
    fit.r_squared = 1.0 - ss_res / ss_tot;
    return fit;
}

}  // namespace defectlab::stats
