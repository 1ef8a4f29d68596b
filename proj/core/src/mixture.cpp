#include "hos/mixture.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "hos/rng.hpp"

namespace hos {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("mixture input holds no rows");
  const std::size_t dims = rows[0].size();
  if (dims == 0) throw std::invalid_argument("mixture input rows are empty");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dims));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dims) throw std::invalid_argument("mixture input rows are ragged");
    for (std::size_t j = 0; j < dims; ++j) x(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return x;
}

// k-means++ seeding: the first mean uniform, each next proportional to the
// squared distance to the closest mean chosen so far.
std::vector<Eigen::Index> seed_means(const Eigen::MatrixXd& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  std::vector<Eigen::Index> picks;
  picks.push_back(static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd best = (x.rowwise() - x.row(picks[0])).rowwise().squaredNorm();
  while (static_cast<int>(picks.size()) < k) {
    double total = best.sum();
    Eigen::Index chosen = 0;
    if (total <= 0.0) {
      // All remaining points coincide with a chosen mean; fall back to a
      // uniform pick so duplicated inputs still fit.
      chosen = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
    } else {
      double ticket = rng.next_double() * total;
      double acc = 0.0;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += best(i);
        if (ticket < acc) {
          chosen = i;
          break;
        }
      }
    }
    picks.push_back(chosen);
    best = best.cwiseMin((x.rowwise() - x.row(chosen)).rowwise().squaredNorm());
  }
  return picks;
}

struct Workspace {
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covs;
  Eigen::VectorXd weights;
};

// Row-wise log density of every component; returns the data log-likelihood
// and fills log_resp with normalized log responsibilities.
double e_step(const Eigen::MatrixXd& x, const Workspace& w, Eigen::MatrixXd& log_resp) {
  const Eigen::Index n = x.rows();
  const Eigen::Index c = x.cols();
  const int k = static_cast<int>(w.means.size());
  for (int j = 0; j < k; ++j) {
    Eigen::LLT<Eigen::MatrixXd> llt(w.covs[j]);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("covariance lost positive definiteness");
    }
    double log_det = 0.0;
    const auto& l = llt.matrixL();
    for (Eigen::Index d = 0; d < c; ++d) log_det += std::log(l(d, d));
    log_det *= 2.0;
    Eigen::MatrixXd centered = x.rowwise() - w.means[j].transpose();
    Eigen::MatrixXd solved = llt.solve(centered.transpose());  // c x n
    Eigen::VectorXd maha = (centered.transpose().cwiseProduct(solved)).colwise().sum().transpose();
    log_resp.col(j) = (-0.5 * (maha.array() + static_cast<double>(c) * kLog2Pi + log_det) +
                       std::log(w.weights(j)))
                          .matrix();
  }
  double ll = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double mx = log_resp.row(i).maxCoeff();
    double sum = (log_resp.row(i).array() - mx).exp().sum();
    double lse = mx + std::log(sum);
    ll += lse;
    log_resp.row(i).array() -= lse;
  }
  return ll;
}

}  // namespace

MixtureModel fit_mixture(const std::vector<std::vector<double>>& rows, int components,
                         std::uint64_t seed, const MixtureOptions& options) {
  Eigen::MatrixXd x = to_matrix(rows);
  const Eigen::Index n = x.rows();
  const Eigen::Index c = x.cols();
  if (components < 1) throw std::invalid_argument("mixture needs at least one component");
  if (components > n) {
    throw std::invalid_argument("mixture components exceed the number of rows");
  }

  Rng rng(seed);
  std::vector<Eigen::Index> picks = seed_means(x, components, rng);

  Workspace w;
  w.weights = Eigen::VectorXd::Constant(components, 1.0 / components);
  Eigen::RowVectorXd col_mean = x.colwise().mean();
  Eigen::MatrixXd centered0 = x.rowwise() - col_mean;
  Eigen::MatrixXd global_cov =
      centered0.transpose() * centered0 / static_cast<double>(n > 1 ? n - 1 : 1);
  global_cov.diagonal().array() += options.ridge;
  for (int j = 0; j < components; ++j) {
    w.means.push_back(x.row(picks[static_cast<std::size_t>(j)]).transpose());
    w.covs.push_back(global_cov);
  }

  Eigen::MatrixXd log_resp(n, components);
  MixtureModel model;
  model.components = components;
  model.dims = static_cast<std::size_t>(c);

  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iter; ++iter) {
    double ll = e_step(x, w, log_resp);
    model.log_likelihood_trace.push_back(ll);

    Eigen::MatrixXd resp = log_resp.array().exp().matrix();  // n x k
    Eigen::VectorXd nk = resp.colwise().sum();
    for (int j = 0; j < components; ++j) {
      if (nk(j) < 1e-8) {
        // Dying component: freeze its parameters, keep its residual weight.
        w.weights(j) = nk(j) / static_cast<double>(n);
        continue;
      }
      w.weights(j) = nk(j) / static_cast<double>(n);
      Eigen::VectorXd mean = (resp.col(j).transpose() * x).transpose() / nk(j);
      Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
      Eigen::MatrixXd cov = centered.transpose() *
                            (centered.array().colwise() * resp.col(j).array()).matrix() / nk(j);
      cov.diagonal().array() += options.ridge;
      w.means[static_cast<std::size_t>(j)] = mean;
      w.covs[static_cast<std::size_t>(j)] = cov;
    }
    w.weights /= w.weights.sum();

    if (ll - prev_ll < options.tol && iter > 0) break;
    prev_ll = ll;
  }

  model.weights.assign(w.weights.data(), w.weights.data() + components);
  for (int j = 0; j < components; ++j) {
    const auto& m = w.means[static_cast<std::size_t>(j)];
    model.means.emplace_back(m.data(), m.data() + c);
    std::vector<double> cov(static_cast<std::size_t>(c) * static_cast<std::size_t>(c));
    for (Eigen::Index r = 0; r < c; ++r) {
      for (Eigen::Index q = 0; q < c; ++q) {
        cov[static_cast<std::size_t>(r * c + q)] = w.covs[static_cast<std::size_t>(j)](r, q);
      }
    }
    model.covariances.push_back(std::move(cov));
  }
  return model;
}

namespace {

Workspace from_model(const MixtureModel& model) {
  Workspace w;
  const auto c = static_cast<Eigen::Index>(model.dims);
  w.weights = Eigen::VectorXd(model.components);
  for (int j = 0; j < model.components; ++j) {
    w.weights(j) = model.weights[static_cast<std::size_t>(j)];
    Eigen::VectorXd mean(c);
    for (Eigen::Index d = 0; d < c; ++d) mean(d) = model.means[static_cast<std::size_t>(j)]
                                                              [static_cast<std::size_t>(d)];
    w.means.push_back(mean);
    Eigen::MatrixXd cov(c, c);
    for (Eigen::Index r = 0; r < c; ++r) {
      for (Eigen::Index q = 0; q < c; ++q) {
        cov(r, q) = model.covariances[static_cast<std::size_t>(j)][static_cast<std::size_t>(r * c + q)];
      }
    }
    w.covs.push_back(cov);
  }
  return w;
}

}  // namespace

std::vector<std::vector<double>> responsibilities(const MixtureModel& model,
                                                  const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd x = to_matrix(rows);
  if (static_cast<std::size_t>(x.cols()) != model.dims) {
    throw std::invalid_argument("row width does not match the fitted model");
  }
  Workspace w = from_model(model);
  Eigen::MatrixXd log_resp(x.rows(), model.components);
  e_step(x, w, log_resp);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(model.components));
    for (int j = 0; j < model.components; ++j) row[static_cast<std::size_t>(j)] =
        std::exp(log_resp(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

double log_likelihood(const MixtureModel& model, const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd x = to_matrix(rows);
  if (static_cast<std::size_t>(x.cols()) != model.dims) {
    throw std::invalid_argument("row width does not match the fitted model");
  }
  Workspace w = from_model(model);
  Eigen::MatrixXd log_resp(x.rows(), model.components);
  return e_step(x, w, log_resp);
}

double bic(const MixtureModel& model, const std::vector<std::vector<double>>& rows) {
  const double ll = log_likelihood(model, rows);
  const double k = model.components;
  const double c = static_cast<double>(model.dims);
  const double p = (k - 1.0) + k * c + k * c * (c + 1.0) / 2.0;
  return -2.0 * ll + p * std::log(static_cast<double>(rows.size()));
}

}  // namespace hos
