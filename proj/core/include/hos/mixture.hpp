#pragma once

#include <cstdint>
#include <vector>

namespace hos {

// Full-covariance Gaussian mixture fitted by expectation-maximization.
// Matrices stay in plain vectors so the linear-algebra backend remains an
// implementation detail of the core library.
struct MixtureModel {
  int components = 0;                            // K
  std::size_t dims = 0;                          // C
  std::vector<double> weights;                   // K, on the simplex
  std::vector<std::vector<double>> means;        // K x C
  std::vector<std::vector<double>> covariances;  // K x (C*C), row-major, symmetric PD
  std::vector<double> log_likelihood_trace;      // one entry per EM iteration
};

struct MixtureOptions {
  int max_iter = 500;
  double tol = 1e-7;    // stop when the log-likelihood gain drops below this
  double ridge = 1e-6;  // added to covariance diagonals every M-step
};

// Fits K components on the rows (means seeded k-means++ style from the given
// seed). Throws std::invalid_argument on empty input, ragged rows, K < 1 or
// K > number of rows.
MixtureModel fit_mixture(const std::vector<std::vector<double>>& rows, int components,
                         std::uint64_t seed, const MixtureOptions& options = {});

// Posterior component memberships, one simplex row per input row.
std::vector<std::vector<double>> responsibilities(const MixtureModel& model,
                                                  const std::vector<std::vector<double>>& rows);

double log_likelihood(const MixtureModel& model, const std::vector<std::vector<double>>& rows);

// -2*LL + p*ln(n) with p = (K-1) + K*C + K*C*(C+1)/2 free parameters.
double bic(const MixtureModel& model, const std::vector<std::vector<double>>& rows);

}  // namespace hos
