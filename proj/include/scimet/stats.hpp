#pragma once

#include <span>
#include <vector>

namespace scimet::stats {

/// Linear-interpolation percentile between closest ranks:
/// h = (n-1) * p / 100; result = v[floor(h)] + frac(h) * (v[floor(h)+1] - v[floor(h)]).
/// p in [0, 100]; throws ComputeError on empty or non-finite input.
double percentile(std::vector<double> values, double p);

/// Product-moment correlation in [-1, 1]. Requires equal lengths >= 3 and
/// both samples nonconstant; throws ComputeError otherwise.
double pearson(std::span<const double> x, std::span<const double> y);

/// Two-sample Kolmogorov-Smirnov statistic: sup |F_a - F_b| over the pooled
/// sample points. Both samples must be non-empty.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sided KS p-value (Kolmogorov distribution); approximate.
double ks_p_value_approx(double d, std::size_t n_a, std::size_t n_b);

/// Welch's unequal-variance t statistic, sign convention mean(a) - mean(b).
/// Both samples need size >= 2 and nonzero variance.
double welch_t(std::span<const double> a, std::span<const double> b);

/// Welch-Satterthwaite degrees of freedom for the same inputs.
double welch_df(std::span<const double> a, std::span<const double> b);

/// Two-sided p-value for a t statistic under the large-df normal
/// approximation; approximate by construction.
double t_p_value_normal_approx(double t);

} // namespace scimet::stats
