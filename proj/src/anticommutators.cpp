#include "anticommutators.hpp"

#include <array>

#include "errors.hpp"

namespace qsos {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Flatten T with the index at position `shared` pulled out as the column:
/// M[(rest in original order), shared] = T(i,j,k,l).
RowMat gather_shared(const Tensor4& t, int shared) {
  const int n = t.dim();
  RowMat m(n * n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const int idx[4] = {i, j, k, l};
          int rest = 0;
          for (int p = 0; p < 4; ++p)
            if (p != shared) rest = rest * n + idx[p];
          m(rest, idx[shared]) = t(i, j, k, l);
        }
  return m;
}

/// Q[out] += w * P[(a0,a1,a2),(b0,b1,b2)] where the six output positions take
/// the slots named by perm (0..2 = A rest indices, 3..5 = B rest indices).
void scatter6(Tensor6& q, const RowMat& p, double w, const std::array<int, 6>& perm) {
  const int n = q.n;
  int digits[6];
  for (int a0 = 0; a0 < n; ++a0)
    for (int a1 = 0; a1 < n; ++a1)
      for (int a2 = 0; a2 < n; ++a2) {
        const int ra = (a0 * n + a1) * n + a2;
        digits[0] = a0;
        digits[1] = a1;
        digits[2] = a2;
        for (int b0 = 0; b0 < n; ++b0)
          for (int b1 = 0; b1 < n; ++b1)
            for (int b2 = 0; b2 < n; ++b2) {
              const int rb = (b0 * n + b1) * n + b2;
              digits[3] = b0;
              digits[4] = b1;
              digits[5] = b2;
              std::size_t out = 0;
              for (int pos = 0; pos < 6; ++pos) out = out * n + digits[perm[pos]];
              q.v[out] += w * p(ra, rb);
            }
      }
}

}  // namespace

Eigen::MatrixXd trace12(const Tensor4& t) {
  const int n = t.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int b = 0; b < n; ++b)
      for (int y = 0; y < n; ++y) m(x, y) += t(x, b, b, y);
  return m;
}

Eigen::MatrixXd AnticommutatorParts::quad_slice(int l1, int l2) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) m(p, q) = quadratic(l1, l2, p, q);
  return m;
}

Tensor4 AnticommutatorParts::quart_slice(int l1, int l2) const {
  Tensor4 t(n);
  if (quartic.empty()) return t;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) t(p, q, r, s) = quartic.at(l1, l2, p, q, r, s);
  return t;
}

AnticommutatorParts tau_tau_anticommutator(const TauTensor& a, const TauTensor& b) {
  const int n = a.n();
  if (b.n() != n || a.T1.rows() != n || b.T1.rows() != n)
    fail(ErrorCode::ShapeMismatch, "tau_tau_anticommutator: dimension mismatch");

  AnticommutatorParts out;
  out.n = n;
  out.scalar = Eigen::MatrixXd::Zero(n, n);
  out.quadratic = Tensor4(n);
  out.quartic = Tensor6(n);

  const Tensor4& ta = a.T;
  const Tensor4& tb = b.T;
  const Eigen::MatrixXd& t1a = a.T1;
  const Eigen::MatrixXd& t1b = b.T1;

  // ---- Quartic part: five single-shared-index contractions.
  //   + T_A[a,b,c,d] T_B[j,b,l,m] -> [j,a,d,c,l,m]
  //   - 1/2 T_A[a,b,c,d] T_B[j,k,l,b] -> [j,a,d,c,l,k]
  //   + 1/2 T_A[a,b,c,d] T_B[j,k,c,m] -> [j,a,d,m,b,k]
  //   - 1/2 T_A[a,b,c,k] T_B[j,k,l,m] -> [j,a,l,m,b,c]
  //   - 1/2 T_A[a,b,c,m] T_B[j,k,l,m] -> [j,a,b,k,l,c]
  {
    struct Spec {
      int shared_a, shared_b;
      double w;
      std::array<int, 6> perm;  // slots: 0..2 A-rest, 3..5 B-rest
    };
    // A-rest/B-rest are the remaining indices in original order.
    const Spec specs[5] = {
        {1, 1, +1.0, {3, 0, 2, 1, 4, 5}},  // rest A=(a,c,d) B=(j,l,m); out (j,a,d,c,l,m)
        {1, 3, -0.5, {3, 0, 2, 1, 5, 4}},  // rest A=(a,c,d) B=(j,k,l); out (j,a,d,c,l,k)
        {2, 2, +0.5, {3, 0, 2, 5, 1, 4}},  // rest A=(a,b,d) B=(j,k,m); out (j,a,d,m,b,k)
        {3, 1, -0.5, {3, 0, 4, 5, 1, 2}},  // rest A=(a,b,c) B=(j,l,m); out (j,a,l,m,b,c)
        {3, 3, -0.5, {3, 0, 1, 4, 5, 2}},  // rest A=(a,b,c) B=(j,k,l); out (j,a,b,k,l,c)
    };
    for (const Spec& sp : specs) {
      RowMat ga = gather_shared(ta, sp.shared_a);
      RowMat gb = gather_shared(tb, sp.shared_b);
      RowMat p = ga * gb.transpose();
      scatter6(out.quartic, p, sp.w, sp.perm);
    }
  }

  // ---- Quadratic part: nine contractions.
  const Eigen::MatrixXd tra = trace12(ta);  // sum_b T_A[x,b,b,y]
  const Eigen::MatrixXd trb = trace12(tb);
  Tensor4& q = out.quadratic;
  // + T_A[a,b,c,d] trB[j,b] -> [j,a,d,c]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c) {
          double s = 0;
          for (int bb = 0; bb < n; ++bb) s += ta(av, bb, c, d) * trb(j, bb);
          q(j, av, d, c) += s;
        }
  // - T_A[a,b,c,d] T_B[j,b,c,m] -> [j,a,d,m]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int d = 0; d < n; ++d)
        for (int m = 0; m < n; ++m) {
          double s = 0;
          for (int bb = 0; bb < n; ++bb)
            for (int c = 0; c < n; ++c) s += ta(av, bb, c, d) * tb(j, bb, c, m);
          q(j, av, d, m) -= s;
        }
  // + trA[a,k] T_B[j,k,l,m] -> [j,a,l,m]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double s = 0;
          for (int k = 0; k < n; ++k) s += tra(av, k) * tb(j, k, l, m);
          q(j, av, l, m) += s;
        }
  // - 1/2 trA[a,m] T_B[j,k,l,m] -> [j,a,l,k]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += tra(av, m) * tb(j, k, l, m);
          q(j, av, l, k) -= 0.5 * s;
        }
  // + T_A[a,b,c,m] T_B[j,b,l,m] -> [j,a,l,c]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int l = 0; l < n; ++l)
        for (int c = 0; c < n; ++c) {
          double s = 0;
          for (int bb = 0; bb < n; ++bb)
            for (int m = 0; m < n; ++m) s += ta(av, bb, c, m) * tb(j, bb, l, m);
          q(j, av, l, c) += s;
        }
  // + T1_A[a,b] T_B[j,b,l,m] -> [j,a,l,m]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double s = 0;
          for (int bb = 0; bb < n; ++bb) s += t1a(av, bb) * tb(j, bb, l, m);
          q(j, av, l, m) += s;
        }
  // - 1/2 T1_A[a,b] T_B[j,k,l,b] -> [j,a,l,k]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          double s = 0;
          for (int bb = 0; bb < n; ++bb) s += t1a(av, bb) * tb(j, k, l, bb);
          q(j, av, l, k) -= 0.5 * s;
        }
  // + T_A[a,b,c,d] T1_B[j,b] -> [j,a,d,c]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c) {
          double s = 0;
          for (int bb = 0; bb < n; ++bb) s += ta(av, bb, c, d) * t1b(j, bb);
          q(j, av, d, c) += s;
        }
  // - 1/2 T_A[a,b,c,d] T1_B[j,d] -> [j,a,b,c]
  for (int j = 0; j < n; ++j)
    for (int av = 0; av < n; ++av)
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c) {
          double s = 0;
          for (int d = 0; d < n; ++d) s += ta(av, bb, c, d) * t1b(j, d);
          q(j, av, bb, c) -= 0.5 * s;
        }

  // ---- Scalar part: four contractions.
  //   trA[a,m] trB[j,m] + T1_A[a,b] T1_B[j,b] + T1_A[a,b] trB[j,b] + trA[a,d] T1_B[j,d]
  out.scalar = trb * tra.transpose() + t1b * t1a.transpose() + trb * t1a.transpose() +
               t1b * tra.transpose();
  return out;
}

std::pair<AnticommutatorParts, AnticommutatorParts> psi_tau_anticommutators(const TauTensor& a) {
  const int n = a.n();
  const Tensor4& t = a.T;
  const Eigen::MatrixXd tr = trace12(t);

  AnticommutatorParts pd;  // {psi^+_p, tau_t}, labels [p, t]
  pd.n = n;
  pd.scalar = tr.transpose() + a.T1.transpose();
  pd.quadratic = Tensor4(n);
  for (int p = 0; p < n; ++p)
    for (int tt = 0; tt < n; ++tt)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          pd.quadratic(p, tt, c, d) = t(tt, p, c, d) - 0.5 * t(tt, d, c, p);

  AnticommutatorParts td;  // {tau_t^+, psi_p}, labels [t, p]
  td.n = n;
  td.scalar = tr + a.T1;
  td.quadratic = Tensor4(n);
  for (int tt = 0; tt < n; ++tt)
    for (int p = 0; p < n; ++p)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          td.quadratic(tt, p, c, d) = t(tt, p, d, c) - 0.5 * t(tt, c, d, p);

  return {pd, td};
}

}  // namespace qsos
