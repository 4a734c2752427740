#include "gapcheck/eigensolve.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "gapcheck/error.hpp"

namespace gapcheck {

namespace {

constexpr int kDenseLimit = 3000;
constexpr int kMaxIters = 500;

void finalize(SpectralResult& r, const OperatorMatrix& op) {
  const int n = op.grid.dim;
  const double w = std::pow(op.grid.h, n);
  const int k = static_cast<int>(r.vectors.size());
  r.residuals.resize(k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd& v = r.vectors[j];
    v /= std::sqrt(w) * v.norm();
    int imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    r.residuals[j] = (op.M * v - r.values[j] * v).norm() / v.norm();
    if (!(r.residuals[j] <= 1e-6 * std::max(1.0, op.normInf)))
      throw NoConvergence("eigenpair residual exceeds the certification bound");
  }
  r.h = op.grid.h;
  r.dim = n;

  if (op.bc == BoundaryCondition::Dirichlet && k >= 1) {
    const Eigen::VectorXd& phi0 = r.vectors[0];
    if (phi0.minCoeff() <= -1e-10 * phi0.maxCoeff())
      throw PerronFailure("ground state changes sign");
    if (k >= 2 && !(r.values[0] < r.values[1]))
      throw PerronFailure("ground state is not simple");
  }
}

SpectralResult dense_symmetric(const OperatorMatrix& op, int k) {
  Eigen::MatrixXd A(op.M);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw NoConvergence("dense symmetric solve failed");
  SpectralResult r;
  r.values = es.eigenvalues().head(k);
  for (int j = 0; j < k; ++j) r.vectors.push_back(es.eigenvectors().col(j));
  return r;
}

// Osborne balancing in exact powers of two: a diagonal similarity that
// equalizes row and column norms. It leaves the spectrum untouched but is
// essential for the Schur iteration on strongly nonnormal drift matrices.
Eigen::VectorXd balance(Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i < n; ++i) {
      double r = A.row(i).template lpNorm<1>() - std::abs(A(i, i));
      double c = A.col(i).template lpNorm<1>() - std::abs(A(i, i));
      if (r <= 0.0 || c <= 0.0) continue;
      double f = 1.0;
      while (c < 0.5 * r) { c *= 2.0; r *= 0.5; f *= 2.0; }
      while (c >= 2.0 * r) { c *= 0.5; r *= 2.0; f *= 0.5; }
      if (f != 1.0) {
        A.col(i) *= f;
        A.row(i) *= 1.0 / f;
        d[i] *= f;
        again = true;
      }
    }
  }
  return d;
}

SpectralResult dense_nonsymmetric(const OperatorMatrix& op, int k) {
  Eigen::MatrixXd A(op.M);
  const Eigen::VectorXd d = balance(A);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw NoConvergence("dense nonsymmetric solve failed");
  std::vector<int> order(A.rows());
  for (int i = 0; i < A.rows(); ++i) order[i] = i;
  auto ev = es.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ev[a].real() < ev[b].real(); });
  SpectralResult r;
  r.values.resize(k);
  for (int j = 0; j < k; ++j) {
    const auto lam = ev[order[j]];
    if (std::abs(lam.imag()) > 1e-8 * std::max(1.0, std::abs(lam.real())))
      throw NoConvergence("drift eigenvalue has a significant imaginary part");
    r.values[j] = lam.real();
    Eigen::VectorXd v = es.eigenvectors().col(order[j]).real();
    if (v.norm() < 1e-14)
      v = es.eigenvectors().col(order[j]).imag();
    // A was balanced as D^{-1} A D; map the vector back accordingly.
    r.vectors.push_back(d.asDiagonal() * v);
  }
  return r;
}

// Shifted inverse subspace iteration with Rayleigh-Ritz extraction. The
// shift sits below the Gershgorin lower bound so the factored matrix is
// positive definite; degenerate levels converge as a block.
SpectralResult sparse_symmetric(const OperatorMatrix& op, int k) {
  const int N = static_cast<int>(op.M.rows());
  const int m = std::min(N, k + 3);
  const double tol = 1e-9 * op.normInf;

  double gersh = std::numeric_limits<double>::max();
  for (int c = 0; c < op.M.outerSize(); ++c) {
    // symmetric matrix: column sums equal row sums
    double diag = 0.0, off = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.M, c); it; ++it) {
      if (it.row() == c) diag = it.value();
      else off += std::abs(it.value());
    }
    gersh = std::min(gersh, diag - off);
  }
  const double sigma = gersh - 1.0;

  Eigen::SparseMatrix<double> B = op.M;
  for (int i = 0; i < N; ++i) B.coeffRef(i, i) -= sigma;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(B);
  if (ldlt.info() != Eigen::Success)
    throw LinearSolveFailure("shifted operator factorization failed");

  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd V(N, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < N; ++i) V(i, j) = nd(rng);

  Eigen::VectorXd ritz;
  for (int it = 0; it < kMaxIters; ++it) {
    Eigen::MatrixXd Z = ldlt.solve(V);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(N, m);
    Eigen::MatrixXd AQ = op.M * Q;
    Eigen::MatrixXd S = Q.transpose() * AQ;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
    V = Q * es.eigenvectors();
    ritz = es.eigenvalues();

    bool done = true;
    for (int j = 0; j < k && done; ++j) {
      double res = (op.M * V.col(j) - ritz[j] * V.col(j)).norm() / V.col(j).norm();
      if (res > tol) done = false;
    }
    if (done) {
      SpectralResult r;
      r.values = ritz.head(k);
      for (int j = 0; j < k; ++j) r.vectors.push_back(V.col(j));
      return r;
    }
  }
  throw NoConvergence("inverse iteration did not reach the residual target");
}

// Exact diagonal similarity transform for 1-D tridiagonal drift matrices.
// Valid only while the paired off-diagonal products stay positive, which
// fails once |X| h >= 1; callers fall back to the dense solve then.
bool try_symmetrize_1d(const OperatorMatrix& op, int k, SpectralResult& out) {
  const int N = static_cast<int>(op.M.rows());
  if (op.grid.dim != 1 || N > kDenseLimit) return false;
  Eigen::MatrixXd A(op.M);
  Eigen::VectorXd d(N);
  d[0] = 1.0;
  for (int i = 0; i + 1 < N; ++i) {
    double p = A(i + 1, i) * A(i, i + 1);
    if (p <= 0.0) return false;
    d[i + 1] = d[i] * std::sqrt(A(i, i + 1) / A(i + 1, i));
  }
  Eigen::MatrixXd S = d.asDiagonal() * A * d.cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  if (es.info() != Eigen::Success) return false;
  out.values = es.eigenvalues().head(k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd v = es.eigenvectors().col(j).cwiseQuotient(d);
    out.vectors.push_back(v);
  }
  return true;
}

SpectralResult solve(const OperatorMatrix& op, int k) {
  const int N = static_cast<int>(op.M.rows());
  if (k < 1 || k > N) throw NoConvergence("invalid eigenpair count");
  SpectralResult r;
  if (op.symmetric) {
    r = N <= kDenseLimit ? dense_symmetric(op, k) : sparse_symmetric(op, k);
  } else if (try_symmetrize_1d(op, k, r)) {
    // handled
  } else {
    if (N > kDenseLimit)
      throw NoConvergence("nonsymmetric drift solves require N <= 3000");
    r = dense_nonsymmetric(op, k);
  }
  finalize(r, op);
  return r;
}

}  // namespace

SpectralResult smallest_eigenpairs(const OperatorMatrix& op, int k) {
  if (k > 6) throw NoConvergence("k is capped at 6");
  return solve(op, k);
}

SpectralResult partial_eigenpairs(const OperatorMatrix& op, int k) {
  return solve(op, k);
}

}  // namespace gapcheck
