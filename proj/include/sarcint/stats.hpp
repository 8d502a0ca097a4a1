#pragma once

#include "sarcint/common.hpp"

namespace sarcint::stats {

/// Streaming mean/variance of a scalar (Welford update, Chan merge).
/// Merging is exact in the sense that any fixed merge tree gives the same
/// result regardless of how samples were partitioned.
class MomentAccumulator {
 public:
  void update(double x);
  void merge(const MomentAccumulator& other);

  long long count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

 private:
  long long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Per-pixel streaming moments over an ensemble of equally shaped fields.
class FieldMoments {
 public:
  FieldMoments() = default;
  FieldMoments(Eigen::Index rows, Eigen::Index cols);

  void update(const MatrixXd& field);
  void merge(const FieldMoments& other);

  long long count() const { return n_; }
  const MatrixXd& mean() const { return mean_; }
  MatrixXd variance() const;

 private:
  long long n_ = 0;
  MatrixXd mean_, m2_;
};

/// Streaming covariance between one reference scalar and a vector of probes,
/// for speckle correlation profiles.
class CrossMoments {
 public:
  explicit CrossMoments(Eigen::Index size);

  void update(double ref, const VectorXd& probes);

  long long count() const { return n_; }
  double ref_variance() const;
  VectorXd probe_variance() const;
  /// Cov(ref, probe_i), unbiased.
  VectorXd covariance() const;
  /// Pearson correlation profile.
  VectorXd correlation() const;

 private:
  long long n_ = 0;
  double ref_mean_ = 0.0, ref_m2_ = 0.0;
  VectorXd mean_, m2_, cross_;
};

}  // namespace sarcint::stats
