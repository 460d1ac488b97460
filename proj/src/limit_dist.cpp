#include "gpctest/limit_dist.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "gpctest/errors.hpp"
#include "gpctest/quadrature.hpp"

namespace gpctest {

std::vector<double> eigenvalues(std::size_t k) {
  if (k < 2) throw DomainError(fmt::format("eigenvalues: k = {} must be >= 2", k));
  std::vector<double> out(k - 1);
  for (std::size_t i = 1; i < k; ++i) {
    const double s = std::sin(static_cast<double>(i) * std::numbers::pi / (2.0 * static_cast<double>(k)));
    out[i - 1] = 1.0 / (4.0 * s * s);
  }
  return out;
}

std::vector<double> noncentrality(double K, double s, double delta, double m_d, std::size_t k) {
  if (k < 2) throw DomainError(fmt::format("noncentrality: k = {} must be >= 2", k));
  if (!(s >= 0.0)) throw DomainError("noncentrality: s must be nonnegative");
  const double kd = static_cast<double>(k);
  const double scale = K * std::sqrt(2.0 * s / kd) * std::pow(m_d, 0.5 + delta);
  std::vector<double> mu(k - 1);
  for (std::size_t i = 1; i < k; ++i) {
    double sum = 0.0;
    for (std::size_t j = 1; j < k; ++j) {
      sum += std::pow(static_cast<double>(j + 1), -delta) *
             std::sin(static_cast<double>(j * i) * std::numbers::pi / kd);
    }
    mu[i - 1] = scale * sum;
  }
  return mu;
}

WeightedChiSquareLaw::WeightedChiSquareLaw(std::vector<double> weights, std::vector<double> noncentralities)
    : weights_(std::move(weights)), noncentralities_(std::move(noncentralities)) {
  if (weights_.empty()) throw DomainError("weighted chi-square law needs at least one weight");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError(fmt::format("weight {} is not positive", w));
  }
  if (noncentralities_.empty()) noncentralities_.assign(weights_.size(), 0.0);
  if (noncentralities_.size() != weights_.size()) {
    throw DomainError("noncentralities and weights differ in length");
  }
}

WeightedChiSquareLaw WeightedChiSquareLaw::null_law(std::size_t k) {
  WeightedChiSquareLaw law(eigenvalues(k));
  law.k_ = k;
  return law;
}

WeightedChiSquareLaw WeightedChiSquareLaw::local_alternative(std::size_t k, std::vector<double> noncentralities) {
  WeightedChiSquareLaw law(eigenvalues(k), std::move(noncentralities));
  law.k_ = k;
  return law;
}

bool WeightedChiSquareLaw::is_central() const {
  return std::all_of(noncentralities_.begin(), noncentralities_.end(), [](double m) { return m == 0.0; });
}

namespace {

class ImhofIntegrand {
 public:
  ImhofIntegrand(const WeightedChiSquareLaw& law, double x)
      : w_(law.weights()), mu2_(law.noncentralities()), x_(x) {
    for (auto& m : mu2_) m *= m;
    for (std::size_t i = 0; i < w_.size(); ++i) slope0_ += 0.5 * w_[i] * (1.0 + mu2_[i]);
    slope0_ -= 0.5 * x_;
  }

  double operator()(double u) const {
    if (u == 0.0) return slope0_;
    double theta = -0.5 * x_ * u;
    double log_rho = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const double wu = w_[i] * u;
      const double q = 1.0 + wu * wu;
      theta += 0.5 * std::atan(wu) + 0.5 * mu2_[i] * wu / q;
      log_rho += 0.25 * std::log(q) + 0.5 * mu2_[i] * wu * wu / q;
    }
    return std::sin(theta) / (u * std::exp(log_rho));
  }

  // 1 / (u rho(u)): bound on |integrand| beyond u.
  double envelope(double u) const {
    double log_rho = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const double wu = w_[i] * u;
      const double q = 1.0 + wu * wu;
      log_rho += 0.25 * std::log(q) + 0.5 * mu2_[i] * wu * wu / q;
    }
    return 1.0 / (u * std::exp(log_rho));
  }

  // Limit of theta(u) + x u / 2 as u -> infinity.
  double phase_limit() const { return 0.25 * std::numbers::pi * static_cast<double>(w_.size()); }

 private:
  const std::vector<double>& w_;
  std::vector<double> mu2_;
  double x_;
  double slope0_ = 0.0;
};

constexpr double kEnvelopeCutoff = 1e-10;
constexpr double kPanelTolerance = 1e-12;
constexpr double kHeadTolerance = 1e-11;
constexpr std::size_t kMaxTailPanels = 20000;

}  // namespace

CdfDiagnostics cdf_with_diagnostics(const WeightedChiSquareLaw& law, double x) {
  CdfDiagnostics diag;
  if (std::isnan(x)) throw DomainError("cdf evaluated at NaN");
  if (x <= 0.0) return diag;  // weights are positive: support is [0, inf)
  if (std::isinf(x)) {
    diag.value = diag.raw = 1.0;
    return diag;
  }

  const ImhofIntegrand f(law, x);
  const auto& w = law.weights();
  const double w_min = *std::min_element(w.begin(), w.end());

  // Truncation point for the envelope test; the oscillatory tail integral
  // beyond u is bounded by roughly envelope(u) * 4 / x, hence the x-scaling.
  const double cutoff = kEnvelopeCutoff * std::min(1.0, x / 4.0);

  // Head: [0, u0] where the arctan terms are still bending the phase.
  const double half_period = 2.0 * std::numbers::pi / x;
  const double u_settle = 10.0 / w_min;
  // Align the tail panels with the asymptotic zeros of sin(theta):
  // u = 2 (phase_limit + m pi) / x.
  double u0 = 2.0 * f.phase_limit() / x;
  if (u0 < u_settle) {
    u0 += std::ceil((u_settle - u0) / half_period) * half_period;
  }

  // The head is split geometrically from 1 / w_max upwards so the adaptive
  // rule sees the peak near the origin even when u0 is huge (small x). It
  // stops early once the remaining absolute integral, bounded by
  // u envelope(u) / (#weights / 2), is negligible.
  const double w_max = *std::max_element(w.begin(), w.end());
  const double decay = 0.5 * static_cast<double>(w.size());
  QuadratureResult head;
  bool truncated = false;
  for (double a = 0.0, b = std::min(u0, 1.0 / w_max); a < u0; a = b, b = std::min(u0, 2.0 * b)) {
    if (a >= u_settle && a * f.envelope(a) / decay < 0.1 * kHeadTolerance) {
      truncated = true;
      diag.upper_limit = a;
      break;
    }
    const QuadratureResult piece = integrate_gauss_kronrod(f, a, b, kHeadTolerance, 0.0, 4000);
    head.value += piece.value;
    head.abs_error += piece.abs_error;
    head.evaluations += piece.evaluations;
    head.intervals += piece.intervals;
    if (!piece.converged) {
      throw NumericError(fmt::format("cdf: head quadrature on [{}, {}] did not converge (error {}, {} intervals)",
                                     a, b, piece.abs_error, piece.intervals));
    }
  }
  diag.evaluations += head.evaluations;
  double error = head.abs_error;
  double integral = head.value;
  if (truncated) {
    diag.abs_error = error;
    diag.raw = 0.5 - integral / std::numbers::pi;
    diag.value = std::clamp(diag.raw, 0.0, 1.0);
    return diag;
  }

  // Tail: half-period panels form an (eventually) alternating series.
  WynnEpsilon accelerator;
  double partial = head.value;
  accelerator.push(partial);
  double lo = u0;
  std::size_t stable_steps = 0;
  bool done = f.envelope(lo) < cutoff;
  while (!done) {
    if (diag.tail_panels >= kMaxTailPanels) {
      throw NumericError(fmt::format(
          "cdf: oscillatory tail did not converge after {} panels (x = {}, u = {}, envelope {}, "
          "extrapolation error {})",
          diag.tail_panels, x, lo, f.envelope(lo), accelerator.error_estimate()));
    }
    const double hi = lo + half_period;
    const QuadratureResult panel = integrate_gauss_kronrod(f, lo, hi, kPanelTolerance, 0.0, 200);
    diag.evaluations += panel.evaluations;
    if (!panel.converged) {
      throw NumericError(fmt::format("cdf: panel [{}, {}] did not converge (error {})", lo, hi, panel.abs_error));
    }
    error += panel.abs_error;
    partial += panel.value;
    ++diag.tail_panels;
    lo = hi;

    const double extrapolated = accelerator.push(partial);
    if (f.envelope(lo) < cutoff) {
      integral = partial;
      done = true;
    } else if (accelerator.size() >= 6 && accelerator.error_estimate() < 1e-11) {
      if (++stable_steps >= 3) {
        integral = extrapolated;
        error += accelerator.error_estimate();
        done = true;
      }
    } else {
      stable_steps = 0;
    }
    // The epsilon table loses accuracy once it grows long; restart it from
    // the current partial sum.
    if (!done && accelerator.size() >= 40) {
      accelerator = WynnEpsilon();
      accelerator.push(partial);
      stable_steps = 0;
    }
  }
  if (diag.tail_panels == 0) integral = head.value;

  diag.upper_limit = lo;
  diag.abs_error = error;
  diag.raw = 0.5 - integral / std::numbers::pi;
  diag.value = std::clamp(diag.raw, 0.0, 1.0);
  return diag;
}

double cdf(const WeightedChiSquareLaw& law, double x) { return cdf_with_diagnostics(law, x).value; }

double p_value(const WeightedChiSquareLaw& law, double t) {
  if (t <= 0.0) return 1.0;
  return std::clamp(1.0 - cdf(law, t), 0.0, 1.0);
}

std::vector<double> sample_law(const WeightedChiSquareLaw& law, std::size_t sample_count, Rng& rng) {
  const auto& w = law.weights();
  const auto& mu = law.noncentralities();
  std::vector<double> out(sample_count);
  for (auto& q : out) {
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double z = rng.normal() + mu[i];
      sum += w[i] * z * z;
    }
    q = sum;
  }
  return out;
}

double mc_cdf(const WeightedChiSquareLaw& law, double x, std::size_t sample_count, Rng& rng) {
  if (sample_count == 0) throw DomainError("mc_cdf: sample_count must be >= 1");
  const auto draws = sample_law(law, sample_count, rng);
  const auto below = std::count_if(draws.begin(), draws.end(), [x](double q) { return q <= x; });
  return static_cast<double>(below) / static_cast<double>(sample_count);
}

}  // namespace gpctest
