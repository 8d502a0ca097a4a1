#include "sarcint/stats.hpp"

#include <cmath>

namespace sarcint::stats {

void MomentAccumulator::update(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / (na + nb);
  m2_ += other.m2_ + delta * delta * na * nb / (na + nb);
  n_ += other.n_;
}

FieldMoments::FieldMoments(Eigen::Index rows, Eigen::Index cols)
    : mean_(MatrixXd::Zero(rows, cols)), m2_(MatrixXd::Zero(rows, cols)) {}

void FieldMoments::update(const MatrixXd& field) {
  if (mean_.size() == 0) {
    mean_ = MatrixXd::Zero(field.rows(), field.cols());
    m2_ = MatrixXd::Zero(field.rows(), field.cols());
  }
  if (field.rows() != mean_.rows() || field.cols() != mean_.cols()) {
    throw InvalidInput("field moments: shape mismatch");
  }
  ++n_;
  const MatrixXd delta = field - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta.cwiseProduct(field - mean_);
}

void FieldMoments::merge(const FieldMoments& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  if (other.mean_.rows() != mean_.rows() || other.mean_.cols() != mean_.cols()) {
    throw InvalidInput("field moments: shape mismatch in merge");
  }
  const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  const MatrixXd delta = other.mean_ - mean_;
  mean_ += delta * (nb / (na + nb));
  m2_ += other.m2_ + delta.cwiseProduct(delta) * (na * nb / (na + nb));
  n_ += other.n_;
}

MatrixXd FieldMoments::variance() const {
  if (n_ < 2) return MatrixXd::Zero(mean_.rows(), mean_.cols());
  return m2_ / static_cast<double>(n_ - 1);
}

CrossMoments::CrossMoments(Eigen::Index size)
    : mean_(VectorXd::Zero(size)), m2_(VectorXd::Zero(size)), cross_(VectorXd::Zero(size)) {}

void CrossMoments::update(double ref, const VectorXd& probes) {
  if (probes.size() != mean_.size()) throw InvalidInput("cross moments: size mismatch");
  ++n_;
  const double inv = 1.0 / static_cast<double>(n_);
  const double dref = ref - ref_mean_;
  ref_mean_ += dref * inv;
  ref_m2_ += dref * (ref - ref_mean_);
  const VectorXd dp = probes - mean_;
  mean_ += dp * inv;
  m2_ += dp.cwiseProduct(probes - mean_);
  // dref is pre-update, (probes - mean_) is post-update: standard online covariance.
  cross_ += dref * (probes - mean_);
}

double CrossMoments::ref_variance() const {
  return n_ > 1 ? ref_m2_ / static_cast<double>(n_ - 1) : 0.0;
}

VectorXd CrossMoments::probe_variance() const {
  if (n_ < 2) return VectorXd::Zero(mean_.size());
  return m2_ / static_cast<double>(n_ - 1);
}

VectorXd CrossMoments::covariance() const {
  if (n_ < 2) return VectorXd::Zero(mean_.size());
  return cross_ / static_cast<double>(n_ - 1);
}

VectorXd CrossMoments::correlation() const {
  VectorXd corr = VectorXd::Zero(mean_.size());
  if (n_ < 2) return corr;
  const double sref = std::sqrt(ref_variance());
  const VectorXd sp = probe_variance().cwiseSqrt();
  const VectorXd cov = covariance();
  for (Eigen::Index i = 0; i < corr.size(); ++i) {
    const double denom = sref * sp[i];
    corr[i] = denom > 0.0 ? cov[i] / denom : 0.0;
  }
  return corr;
}

}  // namespace sarcint::stats
