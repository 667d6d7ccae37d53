#include "hamiltonian.hpp"

#include <cmath>

#include "errors.hpp"

namespace qsos {

SpinfulHamiltonian hermitize(const SpinfulHamiltonian& h) {
  SpinfulHamiltonian out = h;
  out.h0 = 0.5 * (h.h0 + h.h0.transpose());
  Tensor4 rev = h.g.reversed();
  out.g = h.g;
  out.g *= 0.5;
  out.g.add_scaled(0.5, rev);
  return out;
}

double hermiticity_defect(const SpinfulHamiltonian& h) {
  double d = (h.h0 - h.h0.transpose()).cwiseAbs().maxCoeff();
  Tensor4 diff = h.g - h.g.reversed();
  return std::max(d, diff.max_abs());
}

SpinfulHamiltonian rotate(const SpinfulHamiltonian& h, const Eigen::MatrixXd& u, double tol) {
  if (u.rows() != h.n_o || u.cols() != h.n_o)
    fail(ErrorCode::ShapeMismatch, "rotate: U must be n_o x n_o");
  Eigen::MatrixXd defect =
      u.transpose() * u - Eigen::MatrixXd::Identity(h.n_o, h.n_o);
  if (defect.cwiseAbs().maxCoeff() > tol)
    fail(ErrorCode::NonOrthogonalBasis, "rotate: U^T U deviates from identity");
  SpinfulHamiltonian out = h;
  out.h0 = u.transpose() * h.h0 * u;
  out.g = h.g.rotated(u);
  return out;
}

SpinfulHamiltonian direct_sum(const SpinfulHamiltonian& a, const SpinfulHamiltonian& b) {
  SpinfulHamiltonian out = SpinfulHamiltonian::zero(a.n_o + b.n_o);
  out.scalar = a.scalar + b.scalar;
  out.h0.topLeftCorner(a.n_o, a.n_o) = a.h0;
  out.h0.bottomRightCorner(b.n_o, b.n_o) = b.h0;
  for (int i = 0; i < a.n_o; ++i)
    for (int j = 0; j < a.n_o; ++j)
      for (int k = 0; k < a.n_o; ++k)
        for (int l = 0; l < a.n_o; ++l) out.g(i, j, k, l) = a.g(i, j, k, l);
  const int off = a.n_o;
  for (int i = 0; i < b.n_o; ++i)
    for (int j = 0; j < b.n_o; ++j)
      for (int k = 0; k < b.n_o; ++k)
        for (int l = 0; l < b.n_o; ++l)
          out.g(off + i, off + j, off + k, off + l) = b.g(i, j, k, l);
  return out;
}

double determinant_expectation(const SpinfulHamiltonian& h, const Eigen::MatrixXd& occupied,
                               const Eigen::MatrixXd& empty) {
  const int n = h.n_o;
  double e = h.scalar + 2.0 * (h.h0.cwiseProduct(occupied)).sum();
  double e4 = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          e4 += 4.0 * h.g(a, b, c, d) * occupied(a, b) * occupied(c, d);
          e4 += 2.0 * h.g(a, b, d, c) * occupied(a, c) * empty(b, d);
        }
  return e + e4;
}

EigResult eigh(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) fail(ErrorCode::InvalidArgument, "eigh failed to converge");
  EigResult r{solver.eigenvalues(), solver.eigenvectors()};
  // Fix each eigenvector's sign: largest-magnitude component positive.
  for (int c = 0; c < r.vectors.cols(); ++c) {
    int imax = 0;
    r.vectors.col(c).cwiseAbs().maxCoeff(&imax);
    if (r.vectors(imax, c) < 0) r.vectors.col(c) = -r.vectors.col(c);
  }
  return r;
}

}  // namespace qsos
