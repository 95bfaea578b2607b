#include "dicode/channel.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <random>
#include <string>

#include "dicode/errors.hpp"
#include "dicode/simd.hpp"

namespace dicode {

ChannelModel validate_channel(int n, Matrix A, Matrix Sigma, double P) {
  if (n < 1) raise(ErrorCode::DimensionMismatch, "block length n must be >= 1");
  if (A.rows() != n || A.cols() != n || Sigma.rows() != n || Sigma.cols() != n) {
    raise(ErrorCode::DimensionMismatch, "A and Sigma must both be " + std::to_string(n) + "x" +
                                            std::to_string(n));
  }
  if (!A.allFinite() || !Sigma.allFinite()) {
    raise(ErrorCode::InvalidParameter, "A and Sigma must be finite");
  }
  if (!(P > 0.0) || !std::isfinite(P)) {
    raise(ErrorCode::NonPositivePower, "power budget P must be > 0");
  }

  const double sigma_norm = Sigma.norm();
  if (sigma_norm == 0.0) raise(ErrorCode::NotPositiveDefinite, "Sigma is the zero matrix");
  const double asym = (Sigma - Sigma.transpose()).norm() / sigma_norm;
  if (asym > ChannelTolerances::symmetry) {
    raise(ErrorCode::NonSymmetricCovariance,
          "Sigma relative asymmetry " + std::to_string(asym) + " exceeds 1e-10");
  }
  Matrix sym = 0.5 * (Sigma + Sigma.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) raise(ErrorCode::NumericalFailure, "Sigma eigensolver failed");
  const double lmax = eig.eigenvalues().maxCoeff();
  const double lmin = eig.eigenvalues().minCoeff();
  if (!(lmax > 0.0) || lmin <= ChannelTolerances::positive_definite * lmax) {
    raise(ErrorCode::NotPositiveDefinite,
          "Sigma smallest eigenvalue " + std::to_string(lmin) + " is not strictly positive");
  }

  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv.maxCoeff();
  const double smin = sv.minCoeff();
  if (!(smax > 0.0) || smin <= ChannelTolerances::rank * smax) {
    raise(ErrorCode::SingularTransform,
          "A smallest singular value " + std::to_string(smin) + " is numerically zero");
  }

  return ChannelModel(std::move(A), std::move(sym), P);
}

SpectralCache spectral_cache(const ChannelModel& ch) {
  SpectralCache c;
  const Matrix& A = ch.A();
  const Matrix& Sigma = ch.Sigma();

  Eigen::LLT<Matrix> llt(Sigma);
  if (llt.info() != Eigen::Success) raise(ErrorCode::NumericalFailure, "Cholesky of Sigma failed");
  c.chol = llt.matrixL();

  // M = A^T Sigma^-1 A = (L^-1 A)^T (L^-1 A), symmetric by construction.
  const Matrix W = llt.matrixL().solve(A);
  c.M = W.transpose() * W;
  c.M = 0.5 * (c.M + c.M.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> meig(c.M, Eigen::EigenvaluesOnly);
  if (meig.info() != Eigen::Success) raise(ErrorCode::NumericalFailure, "M eigensolver failed");
  c.nu_max = meig.eigenvalues().maxCoeff();
  c.nu_min = meig.eigenvalues().minCoeff();

  Eigen::SelfAdjointEigenSolver<Matrix> seig(Sigma);
  if (seig.info() != Eigen::Success) raise(ErrorCode::NumericalFailure, "Sigma eigensolver failed");
  c.sigma_eigs = seig.eigenvalues();  // Eigen returns them ascending
  c.sigma_eigvecs = seig.eigenvectors();
  c.nu_M = c.sigma_eigs.maxCoeff();
  c.trace_sigma = c.sigma_eigs.sum();
  c.trace_sigma_sq = c.sigma_eigs.squaredNorm();

  c.A_rows = A;
  c.chol_rows = c.chol;
  return c;
}

ChannelModel preset(PresetKind kind, const PresetParams& p) {
  switch (kind) {
    case PresetKind::Awgn: {
      const Matrix I = Matrix::Identity(p.n, p.n);
      return validate_channel(p.n, I, p.sigma2 * I, p.P);
    }
    case PresetKind::ScalarFading: {
      const Matrix I = Matrix::Identity(p.n, p.n);
      return validate_channel(p.n, p.gain * I, p.sigma2 * I, p.P);
    }
    case PresetKind::DiagFading: {
      const int n = p.n == 0 ? static_cast<int>(p.gains.size()) : p.n;
      if (static_cast<int>(p.gains.size()) != n) {
        raise(ErrorCode::DimensionMismatch, "diag_fading needs exactly n gains");
      }
      const Vector g = Eigen::Map<const Vector>(p.gains.data(), n);
      return validate_channel(n, Matrix(g.asDiagonal()), p.sigma2 * Matrix::Identity(n, n), p.P);
    }
    case PresetKind::ToeplitzIsi: {
      if (p.taps.empty()) raise(ErrorCode::InvalidParameter, "toeplitz_isi needs at least one tap");
      Matrix A = Matrix::Zero(p.n, p.n);
      for (int i = 0; i < p.n; ++i) {
        for (int j = 0; j <= i; ++j) {
          const auto lag = static_cast<std::size_t>(i - j);
          if (lag < p.taps.size()) A(i, j) = p.taps[lag];
        }
      }
      return validate_channel(p.n, std::move(A), p.sigma2 * Matrix::Identity(p.n, p.n), p.P);
    }
    case PresetKind::Explicit: {
      const int n = p.n == 0 ? static_cast<int>(p.A.rows()) : p.n;
      return validate_channel(n, p.A, p.Sigma, p.P);
    }
  }
  raise(ErrorCode::InvalidParameter, "unknown channel preset");
}

Vector sample_output(const ChannelModel& ch, const SpectralCache& cache, const Vector& x,
                     rng::Xoshiro256pp& rng) {
  const auto n = static_cast<std::size_t>(ch.n());
  if (static_cast<std::size_t>(x.size()) != n) {
    raise(ErrorCode::DimensionMismatch, "input length differs from block length");
  }
  if (x.squaredNorm() > static_cast<double>(n) * ch.P() * (1.0 + 1e-12)) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
      std::clog << "dicode: warning: input exceeds the power budget n*P\n";
    }
  }
  std::normal_distribution<double> normal;
  Vector g(static_cast<Eigen::Index>(n));
  for (auto& v : g) v = normal(rng);
  const Vector mean = ch.A() * x;
  Vector y(static_cast<Eigen::Index>(n));
  simd::lower_tri_matvec_add({cache.chol_rows.data(), n * n}, n, {g.data(), n},
                             {mean.data(), n}, {y.data(), n});
  return y;
}

}  // namespace dicode
