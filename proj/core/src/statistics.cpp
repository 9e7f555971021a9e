#include "teamlab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "teamlab/model.hpp"
#include "teamlab/random.hpp"

namespace teamlab::stats {

namespace {

void require_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + " contains a non-finite value");
  }
}

void require_size(std::span<const double> xs, std::size_t min, const char* what) {
  if (xs.size() < min) {
    throw ValidationError(std::string(what) + " needs at least " + std::to_string(min) + " values");
  }
  require_finite(xs, what);
}

// Continued fraction for the incomplete beta, modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double mean(std::span<const double> xs) {
  require_size(xs, 1, "sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  require_size(xs, 2, "sample");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double sample_sd(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

double median(std::span<const double> xs) {
  require_size(xs, 1, "sample");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("incomplete beta needs x in [0, 1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw ValidationError("degrees of freedom must be > 0");
  if (std::isnan(t)) throw ValidationError("t statistic is NaN");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw ValidationError("degrees of freedom must be > 0");
  if (std::isinf(t)) return 0.0;
  return std::min(1.0, incomplete_beta(0.5 * df, 0.5, df / (df + t * t)));
}

BootstrapResult bootstrap_mean_ci(std::span<const double> samples, int resamples, double confidence,
                                  std::uint64_t seed) {
  require_size(samples, 1, "bootstrap sample");
  if (resamples < 100) throw ValidationError("bootstrap needs at least 100 resamples");
  if (!(confidence > 0.0 && confidence < 1.0)) throw ValidationError("confidence must lie in (0, 1)");

  auto rng = make_stream(seed, 0);
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::vector<double> means(static_cast<std::size_t>(resamples));
  for (auto& m : means) {
    double sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) sum += samples[pick(rng)];
    m = sum / static_cast<double>(samples.size());
  }
  std::sort(means.begin(), means.end());

  // Linear interpolation between order statistics.
  const auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(means.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, means.size() - 1);
    return means[lo] + (pos - static_cast<double>(lo)) * (means[hi] - means[lo]);
  };
  const double alpha = 1.0 - confidence;
  return BootstrapResult{mean(samples), quantile(alpha / 2.0), quantile(1.0 - alpha / 2.0), resamples,
                         confidence};
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("paired t-test needs equal-length samples");
  require_size(x, 2, "paired sample x");
  require_size(y, 2, "paired sample y");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  const double df = static_cast<double>(d.size() - 1);
  const double md = mean(d);
  const double var = sample_variance(d);
  if (var == 0.0) {
    if (md == 0.0) return TestResult{0.0, 1.0, df};
    throw ValidationError("paired differences have zero variance");
  }
  const double t = md / std::sqrt(var / static_cast<double>(d.size()));
  return TestResult{t, student_t_two_sided_p(t, df), df};
}

double cohens_d(std::span<const double> x, std::span<const double> y) {
  require_size(x, 2, "group x");
  require_size(y, 2, "group y");
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  const double pooled = ((nx - 1.0) * sample_variance(x) + (ny - 1.0) * sample_variance(y)) / (nx + ny - 2.0);
  if (pooled <= 0.0) throw ValidationError("pooled variance is zero");
  return (mean(x) - mean(y)) / std::sqrt(pooled);
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation needs equal-length samples");
  require_size(x, 2, "correlation sample x");
  require_size(y, 2, "correlation sample y");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw ValidationError("correlation undefined for zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation needs equal-length samples");
  require_size(x, 3, "correlation sample x");
  const double r = correlation(x, y);
  const double df = static_cast<double>(x.size() - 2);
  if (std::abs(r) == 1.0) return CorrelationResult{r, 0.0};
  const double t = r * std::sqrt(df / (1.0 - r * r));
  return CorrelationResult{r, student_t_two_sided_p(t, df)};
}

std::vector<double> ranks(std::span<const double> xs) {
  require_finite(xs, "rank input");
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> out(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = avg;
    i = j + 1;
  }
  return out;
}

CorrelationResult spearman_rho(std::span<const double> x, std::span<const double> y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  if (rx.size() < 3) return CorrelationResult{correlation(rx, ry), 1.0};
  return pearson_r(rx, ry);
}

}  // namespace teamlab::stats
