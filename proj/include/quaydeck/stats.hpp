#pragma once

#include <stdexcept>
#include <vector>

namespace quaydeck {

/// Raised when a test statistic is undefined (all paired differences equal,
/// or a constant sample fed to the correlation).
class ZeroVariance : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Index-matched operation times (minutes) of two strategies; entry i of
/// both sides comes from the same instance/seed.
struct PairedSample {
    std::vector<double> a;
    std::vector<double> b;
};

struct TTestResult {
    double t_statistic;
    int degrees_of_freedom;
    double p_value; // two-tailed
    bool significant;
    double pearson_r;
    double mean_a, mean_b;
    double sd_a, sd_b;
};

double mean(const std::vector<double>& xs);
double sample_sd(const std::vector<double>& xs);

/// Regularized incomplete beta I_x(a, b), Lentz continued fraction,
/// absolute tolerance 1e-12.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-tailed Student-t tail probability: P(|T_df| >= t).
double student_t_two_tailed_p(double t, int df);

/// Critical value t with P(|T_df| >= t) == alpha, found by bisection.
double student_t_critical(int df, double alpha);

/// Two-tailed paired t-test on d = b - a (positive t means sample a is
/// smaller/faster). Throws ZeroVariance when every difference is identical.
TTestResult paired_t_test(const PairedSample& sample, double alpha = 0.05);

/// Product-moment correlation; throws ZeroVariance on constant input.
double pearson_r(const PairedSample& sample);

/// 100 * (baseline - candidate) / baseline.
double improvement_pct(double baseline_mean, double candidate_mean);

} // namespace quaydeck
