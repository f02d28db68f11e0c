#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qcdet::stats {

// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution: P(X >= chi2) with
// `dof` degrees of freedom.
double chi_square_p_value(double chi2, std::size_t dof);

// Pearson chi-square statistic for observed counts vs expected counts.
// Bins with expected < min_expected are merged into their right neighbor
// before the statistic is formed; returns {chi2, dof}.
struct ChiSquareResult {
    double chi2 = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};
ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> expected,
                               double min_expected = 5.0);

// Least-squares fit y = slope * x through the origin.
// r_squared uses the centered total sum of squares.
struct OriginFit {
    double slope = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
};
OriginFit fit_through_origin(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);
double variance(std::span<const double> v);  // population variance

}  // namespace qcdet::stats
