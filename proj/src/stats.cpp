#include "scimet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "scimet/errors.hpp"

namespace scimet::stats {

namespace {

void require_finite(std::span<const double> v, const char* who) {
    for (const double x : v) {
        if (!std::isfinite(x)) throw ComputeError(std::string(who) + ": non-finite value in sample");
    }
}

struct Moments {
    double mean;
    double var; // sample variance, n-1 denominator
    std::size_t n;
};

Moments moments(std::span<const double> v) {
    double sum = 0.0;
    for (const double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
    return {mean, var, v.size()};
}

} // namespace

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw ComputeError("percentile: empty sample");
    if (!(p >= 0.0 && p <= 100.0)) throw ComputeError("percentile: p outside [0, 100]");
    require_finite(values, "percentile");
    std::sort(values.begin(), values.end());
    const double h = static_cast<double>(values.size() - 1) * p / 100.0;
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ComputeError("pearson: length mismatch");
    if (x.size() < 3) throw ComputeError("pearson: need at least 3 points");
    require_finite(x, "pearson");
    require_finite(y, "pearson");
    const auto mx = moments(x);
    const auto my = moments(y);
    if (mx.var == 0.0 || my.var == 0.0) throw ComputeError("pearson: constant input");
    double cov = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) cov += (x[i] - mx.mean) * (y[i] - my.mean);
    cov /= static_cast<double>(x.size() - 1);
    const double r = cov / std::sqrt(mx.var * my.var);
    return std::clamp(r, -1.0, 1.0);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ComputeError("ks: empty sample");
    require_finite(a, "ks");
    require_finite(b, "ks");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < sa.size() && ib < sb.size()) {
        const double v = std::min(sa[ia], sb[ib]);
        while (ia < sa.size() && sa[ia] == v) ++ia; // consume ties on both sides
        while (ib < sb.size() && sb[ib] == v) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return d;
}

double ks_p_value_approx(double d, std::size_t n_a, std::size_t n_b) {
    const double na = static_cast<double>(n_a);
    const double nb = static_cast<double>(n_b);
    const double en = std::sqrt(na * nb / (na + nb));
    const double lambda = (en + 0.12 + 0.11 / en) * d;
    double sum = 0.0;
    bool converged = false;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged) return 1.0; // series only diverges as lambda -> 0
    return std::clamp(sum, 0.0, 1.0);
}

double welch_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw ComputeError("welch_t: samples need size >= 2");
    require_finite(a, "welch_t");
    require_finite(b, "welch_t");
    const auto ma = moments(a);
    const auto mb = moments(b);
    if (ma.var == 0.0 || mb.var == 0.0) throw ComputeError("welch_t: zero-variance sample");
    const double se = std::sqrt(ma.var / static_cast<double>(ma.n) + mb.var / static_cast<double>(mb.n));
    return (ma.mean - mb.mean) / se;
}

double welch_df(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw ComputeError("welch_df: samples need size >= 2");
    const auto ma = moments(a);
    const auto mb = moments(b);
    const double va = ma.var / static_cast<double>(ma.n);
    const double vb = mb.var / static_cast<double>(mb.n);
    if (va == 0.0 || vb == 0.0) throw ComputeError("welch_df: zero-variance sample");
    const double num = (va + vb) * (va + vb);
    const double den = va * va / static_cast<double>(ma.n - 1) + vb * vb / static_cast<double>(mb.n - 1);
    return num / den;
}

double t_p_value_normal_approx(double t) {
    return std::erfc(std::abs(t) / std::sqrt(2.0));
}

} // namespace scimet::stats
