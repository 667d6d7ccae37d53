#include "sos_step.hpp"

#include <cmath>

#include "errors.hpp"

namespace qsos {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Rotate the two leading label indices of a flat [l1,l2,rest] tensor:
/// out[g,h,rest] = sum_{ab} in[a,b,rest] S[a,g] S[b,h].
void rotate_labels(std::vector<double>& v, int n, int rest, const Eigen::MatrixXd& s) {
  std::vector<double> tmp(v.size());
  {
    Eigen::Map<const RowMat> in(v.data(), n, n * rest);
    Eigen::Map<RowMat> out(tmp.data(), n, n * rest);
    out.noalias() = s.transpose() * in;
  }
  for (int g = 0; g < n; ++g) {
    Eigen::Map<const RowMat> in(tmp.data() + static_cast<std::size_t>(g) * n * rest, n, rest);
    Eigen::Map<RowMat> out(v.data() + static_cast<std::size_t>(g) * n * rest, n, rest);
    out.noalias() = s.transpose() * in;
  }
}

}  // namespace

TauBuild build_tau(const Eigen::VectorXd& guide_vals, const Tensor4& g_new, double min_gap) {
  const int n = g_new.dim();
  if (guide_vals.size() != n) fail(ErrorCode::ShapeMismatch, "build_tau: eigenvalue count");
  for (int i = 0; i < n; ++i)
    if (std::abs(guide_vals(i)) <= min_gap)
      fail(ErrorCode::GapTooSmall, "build_tau: guide eigenvalue magnitude at or below min_gap");

  TauBuild out{TauTensor::zero(n), Eigen::MatrixXd::Zero(n, n)};
  Tensor4& t = out.tau.T;
  Eigen::MatrixXd& corr = out.hpsitau_corrections;

  // Each quartic entry G[i,j,k,l] multiplies psi^+_i psi_j psi^+_k psi_l; an
  // operator creates an excitation when it creates in a positive mode or
  // destroys in a negative one. The entry is divided by the total energy of the
  // excitation-creating (or -destroying) operators, with weight 1/2 when the
  // term is split evenly, and accumulated into the tau labelled by the first
  // operator of each psi^+ psi pair.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const bool ex0 = guide_vals(i) > 0;
          const bool ex1 = guide_vals(j) < 0;
          const bool ex2 = guide_vals(k) > 0;
          const bool ex3 = guide_vals(l) < 0;
          const double t0 = std::abs(guide_vals(i));
          const double t1 = std::abs(guide_vals(j));
          const double t2 = std::abs(guide_vals(k));
          const double t3 = std::abs(guide_vals(l));
          int nexcite = 0;
          double plus_energy = 0, minus_energy = 0;
          const bool ex[4] = {ex0, ex1, ex2, ex3};
          const double tv[4] = {t0, t1, t2, t3};
          for (int c = 0; c < 4; ++c) {
            if (ex[c]) {
              ++nexcite;
              plus_energy += tv[c];
            } else {
              minus_energy += tv[c];
            }
          }
          const double factor = (nexcite == 2) ? 0.5 : 1.0;
          const double g = g_new(i, j, k, l);
          double val = 0;
          if (ex0 && nexcite >= 2) t(i, j, k, l) += factor * g / plus_energy;
          if (!ex0 && nexcite <= 2) t(i, j, k, l) -= factor * g / minus_energy;
          if (ex2 && nexcite >= 2) {
            t(k, l, i, j) += factor * g / plus_energy;
            val = factor * g / plus_energy;
          }
          if (!ex2 && nexcite <= 2) {
            t(k, l, i, j) -= factor * g / minus_energy;
            val = -factor * g / minus_energy;
          }
          if (j == k) {
            corr(i, l) += guide_vals(k) * val;
            corr(l, i) += guide_vals(k) * val;
          }
          if (i == l) {
            corr(k, j) -= guide_vals(k) * val;
            corr(j, k) -= guide_vals(k) * val;
          }
        }

  // Linear part: contract the cubic coefficients over coincident index pairs,
  // occupied (negative) modes from the number-operator pair and empty (positive)
  // modes from the crossed pair.
  Eigen::MatrixXd& t1 = out.tau.T1;
  t1 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (k == l && guide_vals(l) < 0) t1(i, j) -= 2.0 * t(i, j, k, l);
          if (j == k && guide_vals(k) > 0) t1(i, l) -= t(i, j, k, l);
        }

  // T1 feeds back into the psi-psi block.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      corr(i, j) -= guide_vals(i) * t1(i, j);
      corr(j, i) -= guide_vals(i) * t1(i, j);
    }
  return out;
}

Eigen::MatrixXd overlap_matrix(const TauTensor& tau, const Eigen::VectorXd& occupied_diag,
                               const Eigen::VectorXd& empty_diag) {
  AnticommutatorParts parts = tau_tau_anticommutator(tau, tau);
  const int n = tau.n();
  Eigen::MatrixXd s = parts.scalar;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0;
      for (int b = 0; b < n; ++b) acc += 2.0 * parts.quadratic(j, k, b, b) * occupied_diag(b);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          acc += 4.0 * parts.quartic.at(j, k, a, a, c, c) * occupied_diag(a) * occupied_diag(c);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          acc += 2.0 * parts.quartic.at(j, k, a, b, b, a) * occupied_diag(a) * empty_diag(b);
      s(j, k) += acc;
    }
  return s;
}

EffectiveShift effective_step(const SpinfulHamiltonian& trial, const Eigen::MatrixXd& guide,
                              const StepConfig& cfg, StepInternals* internals) {
  const int n = trial.n_o;
  if (guide.rows() != n || guide.cols() != n)
    fail(ErrorCode::ShapeMismatch, "effective_step: guide shape");
  {
    double scale = std::max(1.0, guide.cwiseAbs().maxCoeff());
    if ((guide - guide.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      fail(ErrorCode::InvalidArgument, "effective_step: guide must be symmetric");
  }

  EigResult geig = eigh(guide);
  const Eigen::VectorXd& vals = geig.values;
  const Eigen::MatrixXd& u = geig.vectors;

  Tensor4 g_new = trial.g.rotated(u);

  // H_psitau: rows create a particle, columns destroy one; the first n entries
  // are psi, the next n are tau. The tau-tau block stays zero.
  Eigen::MatrixXd hpsitau = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    hpsitau(i, i + n) = vals(i);
    hpsitau(i + n, i) = vals(i);
  }
  hpsitau.topLeftCorner(n, n) = u.transpose() * trial.h0 * u;

  TauBuild tb = build_tau(vals, g_new, cfg.min_gap);
  hpsitau.topLeftCorner(n, n) += tb.hpsitau_corrections;

  Eigen::VectorXd occ_diag(n), emp_diag(n);
  for (int i = 0; i < n; ++i) {
    occ_diag(i) = vals(i) < 0 ? 1.0 : 0.0;
    emp_diag(i) = vals(i) > 0 ? 1.0 : 0.0;
  }

  AnticommutatorParts tt = tau_tau_anticommutator(tb.tau, tb.tau);
  Eigen::MatrixXd stemp = tt.scalar;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0;
      for (int b = 0; b < n; ++b) acc += 2.0 * tt.quadratic(j, k, b, b) * occ_diag(b);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          acc += 4.0 * tt.quartic.at(j, k, a, a, c, c) * occ_diag(a) * occ_diag(c);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          acc += 2.0 * tt.quartic.at(j, k, a, b, b, a) * occ_diag(a) * emp_diag(b);
      stemp(j, k) += acc;
    }

  // Orthonormalize the tau sector: rotate the tau labels into the overlap
  // eigenbasis, then scale by sqrt of the overlap eigenvalues. Eigenvalues below
  // the floor mark null tau directions and are dropped; negative ones beyond the
  // floor mean the overlap is not a Gram matrix and the step cannot proceed.
  EigResult seig = eigh(stemp);
  for (int i = 0; i < n; ++i)
    if (seig.values(i) < -cfg.overlap_floor)
      fail(ErrorCode::OverlapNotPositive, "effective_step: tau overlap has a negative eigenvalue");

  const Eigen::MatrixXd& svecs = seig.vectors;
  rotate_labels(tt.quartic.v, n, n * n * n * n, svecs);
  {
    // Tensor4 [l1,l2,p,q] has rest = n^2 per label pair.
    std::vector<double> quad(tt.quadratic.data(), tt.quadratic.data() + tt.quadratic.size());
    rotate_labels(quad, n, n * n, svecs);
    std::copy(quad.begin(), quad.end(), tt.quadratic.data());
  }
  tt.scalar = svecs.transpose() * tt.scalar * svecs;

  // Label rotation of T: T'[e,b,c,d] = sum_a T[a,b,c,d] S[a,e].
  TauTensor tau_rot = tb.tau;
  {
    Eigen::Map<const RowMat> tin(tb.tau.T.data(), n, n * n * n);
    Eigen::Map<RowMat> tout(tau_rot.T.data(), n, n * n * n);
    tout.noalias() = svecs.transpose() * tin;
  }
  tau_rot.T1 = svecs.transpose() * tb.tau.T1;

  hpsitau.bottomLeftCorner(n, n) = svecs.transpose() * hpsitau.bottomLeftCorner(n, n);
  hpsitau.topRightCorner(n, n) = hpsitau.topRightCorner(n, n) * svecs;

  auto [pd, td] = psi_tau_anticommutators(tau_rot);

  Eigen::VectorXd scale(n);
  for (int i = 0; i < n; ++i)
    scale(i) = seig.values(i) > cfg.overlap_floor ? std::sqrt(seig.values(i)) : 0.0;
  for (int i = 0; i < n; ++i) {
    hpsitau.col(i + n).head(n) *= scale(i);
    hpsitau.row(i + n).head(n) *= scale(i);
  }

  EigResult peig = eigh(hpsitau);

  double psitau_energy = 0;
  for (int i = 0; i < 2 * n; ++i)
    if (peig.values(i) < 0) psitau_energy += 2.0 * peig.values(i);

  // Undo the scaling so eigenvector components are coefficients of the original
  // psi and tau operators. Components on null tau directions are dropped.
  Eigen::MatrixXd vecs = peig.vectors;
  for (int j = 0; j < n; ++j) {
    if (scale(j) > 0)
      vecs.row(n + j) /= scale(j);
    else
      vecs.row(n + j).setZero();
  }

  // Accumulate the negative-eigenvalue weights as outer products, then contract
  // once against the anticommutator parts.
  Eigen::MatrixXd w_pp = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd w_tt = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd w_pt = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < 2 * n; ++i) {
    if (peig.values(i) >= 0) continue;
    const double w = -2.0 * peig.values(i);
    Eigen::VectorXd vp = vecs.col(i).head(n);
    Eigen::VectorXd vt = vecs.col(i).tail(n);
    w_pp.noalias() += w * vp * vp.transpose();
    w_tt.noalias() += w * vt * vt.transpose();
    w_pt.noalias() += w * vp * vt.transpose();
  }
  const Eigen::MatrixXd w_tp = w_pt.transpose();

  double scalar_shift = w_pp.trace();
  scalar_shift += (w_tt.cwiseProduct(tt.scalar)).sum();
  scalar_shift += (w_pt.cwiseProduct(pd.scalar)).sum() + (w_tp.cwiseProduct(td.scalar)).sum();

  Eigen::MatrixXd h0_shift = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      double acc = 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          acc += w_tt(x, y) * tt.quadratic(x, y, c, d);
          acc += w_pt(x, y) * pd.quadratic(x, y, c, d);
          acc += w_tp(x, y) * td.quadratic(x, y, c, d);
        }
      h0_shift(c, d) = acc;
    }

  Tensor4 g_shift(n);
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f) {
          double acc = 0;
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) acc += w_tt(x, y) * tt.quartic.at(x, y, c, d, e, f);
          g_shift(c, d, e, f) = acc;
        }

  // Back to the input basis, then make the shifts explicitly Hermitian: the
  // quadratic and quartic pieces are each written in a non-Hermitian way with
  // the non-Hermiticity canceling between them.
  EffectiveShift out;
  out.psitau_energy = psitau_energy;
  Eigen::MatrixXd h0_old = u * h0_shift * u.transpose();
  out.h0_shift = 0.5 * (h0_old + h0_old.transpose());
  Tensor4 g_old = g_shift.rotated(u.transpose());
  Tensor4 g_rev = g_old.reversed();
  g_old *= 0.5;
  g_old.add_scaled(0.5, g_rev);
  out.g_shift = g_old;
  out.scalar_shift = scalar_shift;
  Eigen::MatrixXd occ = Eigen::MatrixXd::Zero(n, n), emp = Eigen::MatrixXd::Zero(n, n);
  occ.diagonal() = occ_diag;
  emp.diagonal() = emp_diag;
  out.occupied = u * occ * u.transpose();
  out.empty = u * emp * u.transpose();
  out.guide_new = u * hpsitau.topLeftCorner(n, n) * u.transpose();

  if (internals) {
    internals->guide_vecs = u;
    internals->guide_vals = vals;
    internals->tau = tau_rot;
    internals->overlap_vals = seig.values;
    internals->psitau_vals = peig.values;
    internals->psitau_vecs = vecs;
  }
  return out;
}

}  // namespace qsos
