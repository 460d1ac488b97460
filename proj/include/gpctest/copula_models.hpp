#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "gpctest/matrix.hpp"
#include "gpctest/random.hpp"

namespace gpctest {

// |lambda| <= sqrt(2)/2 keeps H_lambda a distribution function.
inline constexpr double kLambdaBound = std::numbers::sqrt2 / 2.0;

class LambdaFamilyParams {
 public:
  // Throws DomainError when |lambda| > sqrt(2)/2.
  explicit LambdaFamilyParams(double lambda);
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

// ---------------------------------------------------------------------------
// The oscillating family: V ~ H_lambda, U ~ Uniform(0,1),
// X = -(V/2) (1/U, 1/(1-U)). Its copula is a GPC for lambda = 0 and is not
// in any max-domain of attraction otherwise.

// H_lambda(u) = u (1 + lambda sin(log u)), H(0) = 0.
double h_lambda_cdf(double u, double lambda);

// Generalized inverse of H_lambda by bisection to 1e-12.
double h_lambda_quantile(double p, double lambda);

// Distribution function of -V/S, S uniform on (0,1), x <= 0.
double f_lambda_cdf(double x, double lambda);

// n x 2 copula observations (F(-V/U), F(-V/(1-U))).
UniformSample sample_lemma1(std::size_t n, double lambda, Rng& rng);

// D-norm of the lambda = 0 member: |x|_1 - |x1||x2| / |x|_1.
double dnorm_lemma1(std::array<double, 2> x);

// D-norm when (S1, S2) are independent uniforms:
// |x|_inf + (|x|_1 - |x|_inf)^2 / (3 |x|_inf).
double dnorm_remark(std::array<double, 2> x);

// Closed form of int_0^{|t|/2} H / int_0^{|t|} H for -1 < t < 0. Its limit as
// t -> 0 exists only for lambda = 0 (where it is identically 1/4).
double spectral_ratio_oracle(double t, double lambda);

// ---------------------------------------------------------------------------
// Archimedean and elliptical families.

// Marshall-Olkin frailty construction with a Gamma(1/theta) frailty; theta > 0.
UniformSample sample_clayton(std::size_t n, std::size_t d, double theta, Rng& rng);

// Positive-stable frailty with Laplace transform exp(-t^(1/theta)), drawn by
// the Chambers-Mallows-Stuck representation; theta >= 1.
UniformSample sample_gumbel(std::size_t n, std::size_t d, double theta, Rng& rng);

// Lower-triangular L with L L^T = a. Throws NumericError if a pivot < 1e-12.
Matrix cholesky(const Matrix& a);

// (Phi(X_1), ..., Phi(X_d)) with X ~ N(0, corr).
UniformSample sample_normal_copula(std::size_t n, const Matrix& corr, Rng& rng);

// Equicorrelation matrix with unit diagonal and off-diagonal rho.
Matrix equicorrelation(std::size_t d, double rho);

// ---------------------------------------------------------------------------
// Model metadata.

enum class DNormKind { L1, LInfinity, Logistic, LemmaOneNorm, RemarkNorm };

struct DNormTag {
  DNormKind kind = DNormKind::L1;
  double theta = 1.0;  // only meaningful for Logistic
  std::function<double(std::span<const double>)> evaluator;

  double operator()(std::span<const double> x) const { return evaluator(x); }
  // m_D = |(1, ..., 1)|_D for dimension d.
  double extremal_coefficient(std::size_t d) const;

  static DNormTag l1();
  static DNormTag l_infinity();
  static DNormTag logistic(double theta);
  static DNormTag lemma_one();
  static DNormTag remark();
};

enum class Truth { GPC, DeltaNeighborhood, NotInDomainOfAttraction };

struct TruthTag {
  Truth kind = Truth::GPC;
  double delta = 0.0;  // set for DeltaNeighborhood
};

struct LemmaOneFamily {
  LambdaFamilyParams params;
};
struct ClaytonFamily {
  double theta;
};
struct GumbelFamily {
  double theta;
};
struct NormalCopulaFamily {
  Matrix corr;
};

using CopulaFamily = std::variant<LemmaOneFamily, ClaytonFamily, GumbelFamily, NormalCopulaFamily>;

// A copula family together with what is known about its upper tail.
class CopulaModel {
 public:
  static CopulaModel lemma_one(double lambda);
  // theta in [-1, inf) \ {0}; only theta > 0 can be sampled.
  static CopulaModel clayton(double theta, std::size_t d = 2);
  // theta in [1, 2); theta = 1 is the independence GPC.
  static CopulaModel gumbel(double theta, std::size_t d = 2);
  // Unit diagonal, off-diagonal entries in (-1, 0), positive definite.
  static CopulaModel normal(Matrix corr);

  const CopulaFamily& family() const { return family_; }
  std::size_t dimension() const { return dimension_; }
  const TruthTag& truth() const { return truth_; }
  // D-norm of the limiting GPC; empty when the copula is not in a domain of attraction.
  const std::optional<DNormTag>& dnorm() const { return dnorm_; }

  // Short descriptor such as "lemma1(lambda=0.7)".
  std::string describe() const;

  UniformSample sample(std::size_t n, Rng& rng) const;

 private:
  CopulaModel(CopulaFamily family, std::size_t d, TruthTag truth, std::optional<DNormTag> dnorm)
      : family_(std::move(family)), dimension_(d), truth_(truth), dnorm_(std::move(dnorm)) {}

  CopulaFamily family_;
  std::size_t dimension_;
  TruthTag truth_;
  std::optional<DNormTag> dnorm_;
};

}  // namespace gpctest
