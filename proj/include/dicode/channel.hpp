#pragma once
// Linear Gaussian channel Y = A x + Z, Z ~ N(0, Sigma), with a per-block
// power budget ||x||^2 <= n P. Only the square, invertible-A case is modelled.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dicode/rng.hpp"

namespace dicode {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ChannelTolerances {
  static constexpr double symmetry = 1e-10;  // relative Frobenius asymmetry
  static constexpr double positive_definite = 1e-12;  // times the largest eigenvalue
  static constexpr double rank = 1e-10;  // times the largest singular value
};

/// Immutable once validated; share freely across threads.
class ChannelModel {
 public:
  int n() const noexcept { return static_cast<int>(A_.rows()); }
  const Matrix& A() const noexcept { return A_; }
  const Matrix& Sigma() const noexcept { return Sigma_; }
  double P() const noexcept { return P_; }

 private:
  friend ChannelModel validate_channel(int n, Matrix A, Matrix Sigma, double P);
  ChannelModel(Matrix A, Matrix Sigma, double P)
      : A_(std::move(A)), Sigma_(std::move(Sigma)), P_(P) {}

  Matrix A_;
  Matrix Sigma_;  // stored symmetrized
  double P_;
};

/// Throws NonSymmetricCovariance, NotPositiveDefinite, SingularTransform,
/// NonPositivePower or DimensionMismatch.
ChannelModel validate_channel(int n, Matrix A, Matrix Sigma, double P);

/// Derived spectral data. M = A^T Sigma^-1 A drives every pairwise divergence;
/// the eigen-data of Sigma drives the decoder threshold and the Chernoff
/// arguments behind it.
struct SpectralCache {
  Matrix M;
  double nu_max = 0.0;  // largest eigenvalue of M
  double nu_min = 0.0;  // smallest eigenvalue of M
  Vector sigma_eigs;  // eigenvalues of Sigma, ascending
  double nu_M = 0.0;  // largest eigenvalue of Sigma
  double trace_sigma = 0.0;
  double trace_sigma_sq = 0.0;
  Matrix chol;  // lower-triangular, chol * chol^T = Sigma
  Matrix sigma_eigvecs;  // columns match sigma_eigs

  // Row-major copies for the vector kernels.
  RowMatrix A_rows;
  RowMatrix chol_rows;
};

/// Pure: identical inputs give bit-identical output. Throws NumericalFailure.
SpectralCache spectral_cache(const ChannelModel& ch);

enum class PresetKind { Awgn, ScalarFading, DiagFading, ToeplitzIsi, Explicit };

struct PresetParams {
  int n = 0;
  double P = 1.0;
  double sigma2 = 1.0;
  double gain = 1.0;  // scalar_fading
  std::vector<double> gains;  // diag_fading; n is taken from its length when n == 0
  std::vector<double> taps;  // toeplitz_isi, first column of A
  Matrix A;  // explicit
  Matrix Sigma;  // explicit
};

ChannelModel preset(PresetKind kind, const PresetParams& params);

/// y = A x + chol * g with g standard normal draws from `rng`. Prints a
/// warning (once per process) when x violates the power budget.
Vector sample_output(const ChannelModel& ch, const SpectralCache& cache, const Vector& x,
                     rng::Xoshiro256pp& rng);

}  // namespace dicode
