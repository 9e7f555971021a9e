#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "teamlab/model.hpp"

namespace teamlab::stats {

struct BootstrapResult {
  double point_estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int resamples = 0;
  double confidence = 0.95;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double degrees_of_freedom = 0.0;
};

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
};

double mean(std::span<const double> xs);
/// Unbiased (n - 1) sample variance.
double sample_variance(std::span<const double> xs);
double sample_sd(std::span<const double> xs);
double median(std::span<const double> xs);

/// Regularised incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
/// Two-sided p-value for a t statistic.
double student_t_two_sided_p(double t, double df);

/// Percentile bootstrap CI of the mean.
BootstrapResult bootstrap_mean_ci(std::span<const double> samples, int resamples, double confidence,
                                  std::uint64_t seed);

/// Paired t-test on d = x - y. Identical inputs give t = 0, p = 1.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// Standardised mean difference with the pooled (n_x - 1, n_y - 1) standard deviation.
double cohens_d(std::span<const double> x, std::span<const double> y);

/// Sample correlation coefficient only; needs at least two points.
double correlation(std::span<const double> x, std::span<const double> y);

CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average ranks.
CorrelationResult spearman_rho(std::span<const double> x, std::span<const double> y);

/// Average ranks (1-based), ties share the mean rank.
std::vector<double> ranks(std::span<const double> xs);

}  // namespace teamlab::stats
