#include "gpctest/copula_models.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

#include "gpctest/errors.hpp"
#include "gpctest/normal.hpp"

namespace gpctest {
namespace {

void check_lambda(double lambda) {
  if (!(std::abs(lambda) <= kLambdaBound + 1e-15)) {
    throw DomainError(fmt::format("lambda = {} outside [-sqrt(2)/2, sqrt(2)/2]", lambda));
  }
}

// 2 sin(log a) - cos(log a): the oscillating factor of int_0^a u sin(log u) du.
double oscillation(double log_a) { return 2.0 * std::sin(log_a) - std::cos(log_a); }

}  // namespace

LambdaFamilyParams::LambdaFamilyParams(double lambda) : lambda_(lambda) { check_lambda(lambda); }

double h_lambda_cdf(double u, double lambda) {
  check_lambda(lambda);
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError(fmt::format("h_lambda_cdf: u = {} outside [0,1]", u));
  if (u == 0.0) return 0.0;
  return u * (1.0 + lambda * std::sin(std::log(u)));
}

double h_lambda_quantile(double p, double lambda) {
  check_lambda(lambda);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(fmt::format("h_lambda_quantile: p = {} outside [0,1]", p));
  if (p == 0.0 || p == 1.0) return p;
  if (lambda == 0.0) return p;

  // H' <= 1 + |lambda| sqrt(2) < 2, so a bracket narrower than 5e-13 pins
  // H(u) to within 1e-12 of p.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 2.5e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid * (1.0 + lambda * std::sin(std::log(mid))) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double f_lambda_cdf(double x, double lambda) {
  check_lambda(lambda);
  if (!(x <= 0.0)) throw DomainError(fmt::format("f_lambda_cdf: x = {} must be <= 0", x));
  if (x == 0.0) return 1.0;
  const double a = -x;
  if (a >= 1.0) return (0.5 + lambda / 5.0) / a;
  return 1.0 - a * (0.5 + lambda / 5.0 * oscillation(std::log(a)));
}

UniformSample sample_lemma1(std::size_t n, double lambda, Rng& rng) {
  check_lambda(lambda);
  UniformSample out(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = h_lambda_quantile(rng.uniform(), lambda);
    const double u = rng.uniform();
    out(i, 0) = f_lambda_cdf(-v / u, lambda);
    out(i, 1) = f_lambda_cdf(-v / (1.0 - u), lambda);
  }
  return out;
}

double dnorm_lemma1(std::array<double, 2> x) {
  const double a = std::abs(x[0]);
  const double b = std::abs(x[1]);
  const double l1 = a + b;
  if (l1 == 0.0) return 0.0;
  return l1 - a * b / l1;
}

double dnorm_remark(std::array<double, 2> x) {
  const double a = std::abs(x[0]);
  const double b = std::abs(x[1]);
  const double sup = std::max(a, b);
  if (sup == 0.0) return 0.0;
  const double excess = a + b - sup;
  return sup + excess * excess / (3.0 * sup);
}

double spectral_ratio_oracle(double t, double lambda) {
  check_lambda(lambda);
  if (!(t > -1.0 && t < 0.0)) {
    throw DomainError(fmt::format("spectral_ratio_oracle: t = {} outside (-1, 0)", t));
  }
  const double log_t = std::log(-t);
  const double numerator = 0.5 + lambda / 5.0 * oscillation(log_t - std::numbers::ln2);
  const double denominator = 0.5 + lambda / 5.0 * oscillation(log_t);
  return 0.25 * numerator / denominator;
}

UniformSample sample_clayton(std::size_t n, std::size_t d, double theta, Rng& rng) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError(fmt::format(
        "sample_clayton: theta = {} unsupported; the frailty sampler needs theta in (0, inf)", theta));
  }
  if (d < 1) throw DomainError("sample_clayton: dimension must be positive");
  UniformSample out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double frailty = rng.gamma(1.0 / theta);
    for (std::size_t r = 0; r < d; ++r) {
      out(i, r) = std::pow(1.0 + rng.exponential() / frailty, -1.0 / theta);
    }
  }
  return out;
}

UniformSample sample_gumbel(std::size_t n, std::size_t d, double theta, Rng& rng) {
  if (!(theta >= 1.0) || !std::isfinite(theta)) {
    throw DomainError(fmt::format("sample_gumbel: theta = {} must be >= 1", theta));
  }
  if (d < 1) throw DomainError("sample_gumbel: dimension must be positive");
  const double alpha = 1.0 / theta;
  UniformSample out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    double stable = 1.0;
    if (alpha < 1.0) {
      const double angle = std::numbers::pi * rng.uniform();
      const double e = rng.exponential();
      stable = std::sin(alpha * angle) / std::pow(std::sin(angle), 1.0 / alpha) *
               std::pow(std::sin((1.0 - alpha) * angle) / e, (1.0 - alpha) / alpha);
    }
    for (std::size_t r = 0; r < d; ++r) {
      out(i, r) = std::exp(-std::pow(rng.exponential() / stable, alpha));
    }
  }
  return out;
}

Matrix cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("cholesky: matrix must be square");
  const std::size_t d = a.rows();
  Matrix l(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double pivot = a(j, j);
    for (std::size_t p = 0; p < j; ++p) pivot -= l(j, p) * l(j, p);
    if (!(pivot >= 1e-12)) {
      throw NumericError(fmt::format("cholesky: pivot {} at column {} below 1e-12", pivot, j));
    }
    l(j, j) = std::sqrt(pivot);
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

UniformSample sample_normal_copula(std::size_t n, const Matrix& corr, Rng& rng) {
  const std::size_t d = corr.rows();
  if (d == 0 || corr.cols() != d) throw DomainError("sample_normal_copula: corr must be square");
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(corr(i, i) - 1.0) > 1e-12) throw DomainError("sample_normal_copula: diagonal must be 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(corr(i, j) - corr(j, i)) > 1e-12) {
        throw DomainError("sample_normal_copula: corr must be symmetric");
      }
    }
  }
  const Matrix l = cholesky(corr);
  UniformSample out(n, d);
  std::vector<double> z(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& zi : z) zi = rng.normal();
    for (std::size_t r = 0; r < d; ++r) {
      double x = 0.0;
      for (std::size_t p = 0; p <= r; ++p) x += l(r, p) * z[p];
      out(i, r) = normal_cdf(x);
    }
  }
  return out;
}

Matrix equicorrelation(std::size_t d, double rho) {
  Matrix corr(d, d, rho);
  for (std::size_t i = 0; i < d; ++i) corr(i, i) = 1.0;
  return corr;
}

// ---------------------------------------------------------------------------

double DNormTag::extremal_coefficient(std::size_t d) const {
  const std::vector<double> ones(d, 1.0);
  return evaluator(ones);
}

DNormTag DNormTag::l1() {
  return {DNormKind::L1, 1.0, [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += std::abs(v);
            return s;
          }};
}

DNormTag DNormTag::l_infinity() {
  return {DNormKind::LInfinity, 1.0, [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s = std::max(s, std::abs(v));
            return s;
          }};
}

DNormTag DNormTag::logistic(double theta) {
  if (!(theta >= 1.0)) throw DomainError("logistic D-norm needs theta >= 1");
  return {DNormKind::Logistic, theta, [theta](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += std::pow(std::abs(v), theta);
            return std::pow(s, 1.0 / theta);
          }};
}

namespace {
std::array<double, 2> as_pair(std::span<const double> x) {
  if (x.size() != 2) throw DomainError("bivariate D-norm evaluated on a vector of size != 2");
  return {x[0], x[1]};
}
}  // namespace

DNormTag DNormTag::lemma_one() {
  return {DNormKind::LemmaOneNorm, 1.0,
          [](std::span<const double> x) { return dnorm_lemma1(as_pair(x)); }};
}

DNormTag DNormTag::remark() {
  return {DNormKind::RemarkNorm, 1.0,
          [](std::span<const double> x) { return dnorm_remark(as_pair(x)); }};
}

CopulaModel CopulaModel::lemma_one(double lambda) {
  LambdaFamilyParams params(lambda);
  if (lambda == 0.0) {
    return CopulaModel(LemmaOneFamily{params}, 2, {Truth::GPC, 0.0}, DNormTag::lemma_one());
  }
  return CopulaModel(LemmaOneFamily{params}, 2, {Truth::NotInDomainOfAttraction, 0.0}, std::nullopt);
}

CopulaModel CopulaModel::clayton(double theta, std::size_t d) {
  if (d < 2) throw DomainError("Clayton model needs dimension >= 2");
  if (!(theta >= -1.0) || theta == 0.0 || !std::isfinite(theta)) {
    throw DomainError(fmt::format("Clayton theta = {} outside [-1, inf) \\ {{0}}", theta));
  }
  if (theta < 0.0 && theta < -1.0 / static_cast<double>(d - 1)) {
    throw DomainError(fmt::format("Clayton theta = {} is not a copula in dimension {}", theta, d));
  }
  const TruthTag truth = theta == -1.0 ? TruthTag{Truth::GPC, 0.0} : TruthTag{Truth::DeltaNeighborhood, 1.0};
  return CopulaModel(ClaytonFamily{theta}, d, truth, DNormTag::l1());
}

CopulaModel CopulaModel::gumbel(double theta, std::size_t d) {
  if (d < 2) throw DomainError("Gumbel model needs dimension >= 2");
  if (!(theta >= 1.0 && theta < 2.0)) {
    throw DomainError(fmt::format("Gumbel theta = {} outside [1, 2) (no finite delta tag)", theta));
  }
  if (theta == 1.0) return CopulaModel(GumbelFamily{theta}, d, {Truth::GPC, 0.0}, DNormTag::l1());
  return CopulaModel(GumbelFamily{theta}, d, {Truth::DeltaNeighborhood, 2.0 - theta},
                     DNormTag::logistic(theta));
}

CopulaModel CopulaModel::normal(Matrix corr) {
  const std::size_t d = corr.rows();
  if (d < 2 || corr.cols() != d) throw DomainError("normal copula needs a square corr of size >= 2");
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(corr(i, i) - 1.0) > 1e-12) throw DomainError("normal copula: diagonal must be 1");
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      const double rho = corr(i, j);
      if (std::abs(rho - corr(j, i)) > 1e-12) throw DomainError("normal copula: corr must be symmetric");
      if (!(rho > -1.0 && rho < 0.0)) {
        throw DomainError(fmt::format("normal copula: off-diagonal {} outside (-1, 0)", rho));
      }
      delta = std::min(delta, rho * rho / (1.0 - rho * rho));
    }
  }
  cholesky(corr);  // positive definiteness
  return CopulaModel(NormalCopulaFamily{std::move(corr)}, d, {Truth::DeltaNeighborhood, delta},
                     DNormTag::l1());
}

std::string CopulaModel::describe() const {
  struct Visitor {
    std::size_t d;
    std::string operator()(const LemmaOneFamily& f) const {
      return fmt::format("lemma1(lambda={})", f.params.lambda());
    }
    std::string operator()(const ClaytonFamily& f) const {
      return fmt::format("clayton(theta={};d={})", f.theta, d);
    }
    std::string operator()(const GumbelFamily& f) const {
      return fmt::format("gumbel(theta={};d={})", f.theta, d);
    }
    std::string operator()(const NormalCopulaFamily& f) const {
      double lo = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) lo = std::min(lo, f.corr(i, j));
      return fmt::format("normal(d={};rho_min={})", d, lo);
    }
  };
  return std::visit(Visitor{dimension_}, family_);
}

UniformSample CopulaModel::sample(std::size_t n, Rng& rng) const {
  struct Visitor {
    std::size_t n;
    std::size_t d;
    Rng& rng;
    UniformSample operator()(const LemmaOneFamily& f) const {
      return sample_lemma1(n, f.params.lambda(), rng);
    }
    UniformSample operator()(const ClaytonFamily& f) const { return sample_clayton(n, d, f.theta, rng); }
    UniformSample operator()(const GumbelFamily& f) const { return sample_gumbel(n, d, f.theta, rng); }
    UniformSample operator()(const NormalCopulaFamily& f) const {
      return sample_normal_copula(n, f.corr, rng);
    }
  };
  return std::visit(Visitor{n, dimension_, rng}, family_);
}

}  // namespace gpctest
