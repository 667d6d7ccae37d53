#include "toy.hpp"

#include <cmath>

#include "errors.hpp"

namespace qsos {

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

Vec3 fragment_residual(const Vec3& x, double eps) {
  const double a = x(0), b = x(1), e = x(2);
  return {2 * e * b + e * a * a + 2 * e * b * b, 4 * e * a + 12 * e * a * b - eps,
          3 * e * b * b - 3 * e * a * a + e - 1};
}

Mat3 fragment_jacobian(const Vec3& x) {
  const double a = x(0), b = x(1), e = x(2);
  Mat3 j;
  j << 2 * e * a, 2 * e + 4 * e * b, 2 * b + a * a + 2 * b * b,  //
      4 * e + 12 * e * b, 12 * e * a, 4 * a + 12 * a * b,        //
      -6 * e * a, 6 * e * b, 3 * b * b - 3 * a * a + 1;
  return j;
}

/// Damped Newton on the three fragment equations; returns true when the
/// residual infinity-norm drops below tol.
bool fragment_newton(Vec3& x, double eps, double tol) {
  for (int it = 0; it < 200; ++it) {
    Vec3 r = fragment_residual(x, eps);
    double rn = r.cwiseAbs().maxCoeff();
    if (rn < tol) return true;
    Mat3 j = fragment_jacobian(x);
    Eigen::FullPivLU<Mat3> lu(j);
    if (!lu.isInvertible()) return false;
    Vec3 dx = lu.solve(-r);
    double step = 1.0;
    for (int h = 0; h < 30; ++h) {
      Vec3 xn = x + step * dx;
      if (fragment_residual(xn, eps).cwiseAbs().maxCoeff() < rn) {
        x = xn;
        break;
      }
      step *= 0.5;
      if (h == 29) return false;
    }
  }
  return fragment_residual(x, eps).cwiseAbs().maxCoeff() < tol;
}

constexpr double kFragmentTol = 1e-11;

/// Q1_i = psi_i + a prod_{j!=i} psi^+_j + b psi_i sum_{j!=i} n_j, with the
/// creation product signed so psi^+_i Q1_i's cubic part is +psi^+_1..psi^+_4.
SpinlessOperator toy_q1(int i, double a, double b) {
  SpinlessOperator op;
  op.n_modes = 4;
  op.terms.push_back({{}, {i}, 1.0});
  SpinlessTerm cube;
  for (int j = 0; j < 4; ++j)
    if (j != i) cube.creations.push_back(j);
  cube.coeff = (i % 2 == 0) ? a : -a;
  op.terms.push_back(cube);
  // psi_i n_j = -psi^+_j psi_i psi_j for j != i.
  for (int j = 0; j < 4; ++j)
    if (j != i) op.terms.push_back({{j}, {i, j}, -b});
  return op;
}

/// Second square factor: tau_i^+ - a^2/(1+3b) psi^+_i, with tau^+ the exact
/// Hermitian conjugate of Q1's cubic part (descending product ordering). Pairing
/// the same tau in both square types keeps the degree-6 pieces confined to the
/// anticommutator {tau, tau^+}, and the psi^+ coefficient makes this factor
/// vanish on the same |0>/|4> combination Q1 annihilates.
SpinlessOperator toy_q2(int i, double a, double b) {
  SpinlessOperator op;
  op.n_modes = 4;
  for (int j = 0; j < 4; ++j)
    if (j != i) op.terms.push_back({{i, j}, {j}, b});
  SpinlessTerm cube;
  for (int j = 3; j >= 0; --j)
    if (j != i) cube.annihilations.push_back(j);
  cube.coeff = (i % 2 == 0) ? a : -a;
  op.terms.push_back(cube);
  op.terms.push_back({{i}, {}, -a * a / (1.0 + 3.0 * b)});
  return op;
}

/// Sum-of-squares matrix of the generalized decomposition on the 16-dim space.
Eigen::MatrixXd sos_matrix(double a, double b, double s) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(16, 16);
  for (int i = 0; i < 4; ++i) {
    Eigen::MatrixXd q1 = build_spinless(toy_q1(i, a, b)).matrix;
    Eigen::MatrixXd q2 = build_spinless(toy_q2(i, a, b)).matrix;
    m += q1.transpose() * q1 + s * q2.transpose() * q2;
  }
  return m;
}

/// Residual of (sos - mu_hat * T(ratio) - scalar*I) flattened, where the scale
/// mu_hat is read off the decomposition itself (the psi coefficient is pinned
/// at 1, so only the ratio J/mu can be prescribed) and the scalar is projected
/// out. T(ratio) = sum n_i + ratio * (quartet + h.c.).
Eigen::VectorXd general_residual(const Vec3& x, const Eigen::MatrixXd& target_norm,
                                 double* mu_hat_out = nullptr) {
  if (std::abs(1.0 + 3.0 * x(1)) < 1e-9) {
    return Eigen::VectorXd::Constant(256, 1e6);  // pole in the psi^+ coefficient
  }
  Eigen::MatrixXd m = sos_matrix(x(0), x(1), x(2));
  const double mu_hat = m(1, 1) - m(0, 0);  // level spacing produced by the ansatz
  if (mu_hat_out) *mu_hat_out = mu_hat;
  Eigen::MatrixXd diff = m - mu_hat * target_norm;
  diff -= (diff.trace() / 16.0) * Eigen::MatrixXd::Identity(16, 16);
  return Eigen::Map<Eigen::VectorXd>(diff.data(), 256);
}

/// Small Levenberg-Marquardt with numerical Jacobian; true when the residual
/// infinity-norm reaches tol.
bool general_lm(Vec3& x, const Eigen::MatrixXd& target, double tol) {
  double lambda = 1e-3;
  Eigen::VectorXd r = general_residual(x, target);
  double cost = r.squaredNorm();
  for (int it = 0; it < 200; ++it) {
    if (r.cwiseAbs().maxCoeff() < tol) return true;
    Eigen::Matrix<double, 256, 3> jac;
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
      Vec3 xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      jac.col(k) = (general_residual(xp, target) - general_residual(xm, target)) / (2 * h);
    }
    Mat3 jtj = jac.transpose() * jac;
    Vec3 jtr = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 25; ++tries) {
      Mat3 m = jtj + lambda * Mat3::Identity();
      Vec3 dx = m.ldlt().solve(-jtr);
      Eigen::VectorXd rn = general_residual(x + dx, target);
      double cn = rn.squaredNorm();
      if (cn < cost) {
        x += dx;
        r = rn;
        cost = cn;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10;
    }
    if (!stepped) break;
  }
  return r.cwiseAbs().maxCoeff() < tol;
}

}  // namespace

SpinlessOperator toy_hamiltonian(double mu, double j_coupling) {
  SpinlessOperator op;
  op.n_modes = 4;
  for (int i = 0; i < 4; ++i) op.terms.push_back({{i}, {i}, mu});
  op.terms.push_back({{0, 1, 2, 3}, {}, j_coupling});
  op.terms.push_back({{}, {3, 2, 1, 0}, j_coupling});
  return op;
}

ToySolveResult solve_fragment(double epsilon) {
  // Continuation from eps = 0, where (a, b, e) = (0, 0, 1) solves exactly; the
  // small-eps branch a ~ eps/4, b ~ -a^2/2 seeds each stage.
  Vec3 x(0, 0, 1);
  const int stages = std::max(1, static_cast<int>(std::ceil(std::abs(epsilon) / 0.25)));
  bool ok = true;
  for (int k = 1; k <= stages && ok; ++k) ok = fragment_newton(x, epsilon * k / stages, kFragmentTol);
  if (!ok) {
    // Fallback: direct starts at a few scales.
    for (double a0 : {epsilon / 4, epsilon / 8, epsilon, 1.0, -1.0}) {
      x = Vec3(a0, -a0 * a0 / 2, 1.0);
      if ((ok = fragment_newton(x, epsilon, kFragmentTol))) break;
    }
  }
  if (!ok) fail(ErrorCode::RootFindFailure, "solve_fragment: Newton did not reach tolerance");

  ToySolveResult res;
  res.a = x(0);
  res.b = x(1);
  res.e = x(2);
  res.lambda = -4.0 * x(2) * x(0) * x(0);
  res.exact_energy = ground_energy(build_spinless(toy_hamiltonian(1.0, epsilon)));
  return res;
}

ToySolveResult solve_general(double mu, double j_coupling) {
  if (mu == 0) fail(ErrorCode::InvalidArgument, "solve_general: mu must be nonzero");
  const double ratio = j_coupling / mu;
  // Solve the scale-free problem: match sum n_i + ratio (....+h.c.) up to the
  // overall factor the ansatz produces, continuing in the ratio from 0.
  Vec3 x(0, 0, 1.0);
  const int stages = std::max(1, static_cast<int>(std::ceil(std::abs(ratio) / 0.25)));
  bool ok = true;
  for (int k = 1; k <= stages && ok; ++k) {
    Eigen::MatrixXd tn = build_spinless(toy_hamiltonian(1.0, ratio * k / stages)).matrix;
    ok = general_lm(x, tn, 1e-10);
  }
  if (!ok) {
    Eigen::MatrixXd tn = build_spinless(toy_hamiltonian(1.0, ratio)).matrix;
    // A few cold starts before declaring the coupling infeasible.
    for (Vec3 start : {Vec3(0.3, -0.5, 1.0), Vec3(-0.3, -0.5, 1.0), Vec3(0.4, -0.8, 1.0),
                       Vec3(0.1, -0.25, 0.5)}) {
      x = start;
      if ((ok = general_lm(x, tn, 1e-10))) break;
    }
  }
  double mu_hat = 0;
  Eigen::MatrixXd tn = build_spinless(toy_hamiltonian(1.0, ratio)).matrix;
  Eigen::VectorXd r = general_residual(x, tn, &mu_hat);
  // A valid certificate needs nonnegative square weights and a positive scale.
  if (!ok || mu_hat <= 1e-10 || x(2) < -1e-12)
    fail(ErrorCode::Infeasible, "solve_general: no real (a, b, s) reaches residual tolerance");

  const double scale = mu / mu_hat;
  Eigen::MatrixXd diff = sos_matrix(x(0), x(1), x(2)) - mu_hat * tn;
  const double offset = scale * diff.trace() / 16.0;

  ToySolveResult res;
  res.a = x(0);
  res.b = x(1);
  res.s = x(2);
  res.e = scale;  // overall factor applied to both squares
  res.lambda = -offset;
  res.exact_energy = ground_energy(build_spinless(toy_hamiltonian(mu, j_coupling)));
  return res;
}

double feasibility_boundary(double lo, double hi, double tol) {
  auto feasible = [](double j) {
    try {
      solve_general(1.0, j);
      return true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Infeasible) return false;
      throw;
    }
  };
  if (!feasible(lo)) fail(ErrorCode::Infeasible, "feasibility_boundary: lower edge infeasible");
  if (feasible(hi))
    fail(ErrorCode::InvalidArgument, "feasibility_boundary: upper edge still feasible");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qsos
