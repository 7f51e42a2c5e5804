#include "quaydeck/stats.hpp"

#include <cmath>

namespace quaydeck {

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs)
        ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

namespace {

constexpr double kTol = 1e-12;

/// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 500;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kTol)
            break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("regularized_incomplete_beta: x outside [0,1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    // Use the expansion that converges fastest.
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, int df) {
    const double nu = static_cast<double>(df);
    return regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
}

double student_t_critical(int df, double alpha) {
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_two_tailed_p(hi, df) > alpha)
        hi *= 2.0;
    while (hi - lo > kTol) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_two_tailed_p(mid, df) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

TTestResult paired_t_test(const PairedSample& sample, double alpha) {
    const std::size_t n = sample.a.size();
    if (n < 2 || sample.b.size() != n)
        throw std::invalid_argument("paired_t_test: need two equal-length samples, n >= 2");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = sample.b[i] - sample.a[i];
    const double sd_d = sample_sd(d);
    if (sd_d == 0.0)
        throw ZeroVariance("paired_t_test: all differences identical");

    TTestResult result;
    result.degrees_of_freedom = static_cast<int>(n) - 1;
    result.t_statistic = mean(d) / (sd_d / std::sqrt(static_cast<double>(n)));
    result.p_value = student_t_two_tailed_p(result.t_statistic, result.degrees_of_freedom);
    result.significant = result.p_value < alpha;
    result.mean_a = mean(sample.a);
    result.mean_b = mean(sample.b);
    result.sd_a = sample_sd(sample.a);
    result.sd_b = sample_sd(sample.b);
    result.pearson_r = pearson_r(sample);
    return result;
}

double pearson_r(const PairedSample& sample) {
    const std::size_t n = sample.a.size();
    if (n < 2 || sample.b.size() != n)
        throw std::invalid_argument("pearson_r: need two equal-length samples, n >= 2");
    const double ma = mean(sample.a);
    const double mb = mean(sample.b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = sample.a[i] - ma;
        const double db = sample.b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        throw ZeroVariance("pearson_r: constant sample");
    return sab / std::sqrt(saa * sbb);
}

double improvement_pct(double baseline_mean, double candidate_mean) {
    if (!(baseline_mean > 0.0))
        throw std::invalid_argument("improvement_pct: baseline mean must be positive");
    return 100.0 * (baseline_mean - candidate_mean) / baseline_mean;
}

} // namespace quaydeck
