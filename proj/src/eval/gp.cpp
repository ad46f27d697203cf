#include "hdfp/eval/gp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "hdfp/error.hpp"
#include "hdfp/eval/stats.hpp"

namespace hdfp::eval {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> view(const FeatureMatrix& m) {
  return {m.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

Eigen::MatrixXd kernel(const FeatureMatrix& a, const FeatureMatrix& b, double lengthscale) {
  const auto A = view(a);
  const auto B = view(b);
  const Eigen::VectorXd a2 = A.rowwise().squaredNorm();
  const Eigen::VectorXd b2 = B.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = -2.0 * (A * B.transpose());
  d2.colwise() += a2;
  d2.rowwise() += b2.transpose();
  const double scale = -0.5 / (lengthscale * lengthscale);
  return (d2.array().max(0.0) * scale).exp().matrix();
}

}  // namespace

GpPrediction gp_fit_predict(const FeatureMatrix& x, std::span<const double> y,
                            const FeatureMatrix& query, double lengthscale, double noise) {
  if (x.rows() == 0 || x.rows() != y.size()) {
    throw Error(ErrorKind::kShape, "gp: need at least one training point with a label each");
  }
  if (query.rows() > 0 && query.cols() != x.cols()) {
    throw Error(ErrorKind::kShape, "gp: query dimension differs from training dimension");
  }
  if (!(lengthscale > 0.0) || !(noise > 0.0)) {
    throw Error(ErrorKind::kConfig, "gp: lengthscale and noise must be positive");
  }

  const auto n = static_cast<Eigen::Index>(x.rows());
  Eigen::MatrixXd k = kernel(x, x, lengthscale);
  k.diagonal().array() += noise;

  Eigen::LLT<Eigen::MatrixXd> llt(k);
  for (double jitter : kJitterLadder) {
    if (llt.info() == Eigen::Success) break;
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    llt.compute(kj);
  }
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::kNumeric, "gp: kernel matrix not positive definite after max jitter");
  }

  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const Eigen::VectorXd alpha = llt.solve(yv);
  const Eigen::MatrixXd ks = kernel(query, x, lengthscale);  // q x n
  const Eigen::MatrixXd v = llt.matrixL().solve(ks.transpose());  // n x q

  GpPrediction out;
  out.mean.resize(query.rows());
  out.variance.resize(query.rows());
  const Eigen::VectorXd mean = ks * alpha;
  const Eigen::VectorXd reduction = v.colwise().squaredNorm().transpose();
  for (std::size_t q = 0; q < query.rows(); ++q) {
    out.mean[q] = mean(static_cast<Eigen::Index>(q));
    out.variance[q] = std::max(0.0, 1.0 - reduction(static_cast<Eigen::Index>(q)));
  }
  return out;
}

double median_heuristic_lengthscale(const FeatureMatrix& x) {
  std::vector<double> d;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = i + 1; j < x.rows(); ++j) {
      double s = 0.0;
      const auto a = x.row(i), b = x.row(j);
      for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
      d.push_back(std::sqrt(s));
    }
  }
  if (d.empty()) return 1.0;
  const double m = median(d);
  return m > 0.0 ? m : 1.0;
}

double expected_improvement(double mean, double variance, double best) {
  const double improvement = best - mean;
  const double sd = std::sqrt(std::max(variance, 0.0));
  if (sd < 1e-12) return std::max(improvement, 0.0);
  const double z = improvement / sd;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return std::max(0.0, improvement * cdf + sd * pdf);
}

}  // namespace hdfp::eval
