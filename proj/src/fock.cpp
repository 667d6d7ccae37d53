#include "fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "errors.hpp"

namespace qsos {

namespace {

constexpr int kMaxModes = 14;  // dimension cap 2^14

inline int parity_below(std::uint32_t mask, int m) {
  return std::popcount(mask & ((1u << m) - 1u)) & 1;
}

inline bool apply_create(std::uint32_t& mask, double& amp, int m) {
  if ((mask >> m) & 1u) return false;
  if (parity_below(mask, m)) amp = -amp;
  mask |= 1u << m;
  return true;
}

inline bool apply_destroy(std::uint32_t& mask, double& amp, int m) {
  if (!((mask >> m) & 1u)) return false;
  if (parity_below(mask, m)) amp = -amp;
  mask &= ~(1u << m);
  return true;
}

/// Calls f(target_mask, amplitude) for every image of basis state s under h.
template <class F>
void spinful_images(const SpinfulHamiltonian& h, std::uint32_t s, F&& f) {
  const int n = h.n_o;
  if (h.scalar != 0.0) f(s, h.scalar);
  // Quadratic: h0[i,j] psi^+_{i,sig} psi_{j,sig}
  for (int sig = 0; sig < 2; ++sig) {
    for (int j = 0; j < n; ++j) {
      std::uint32_t m1 = s;
      double a1 = 1.0;
      if (!apply_destroy(m1, a1, spinful_mode(j, sig))) continue;
      for (int i = 0; i < n; ++i) {
        double hij = h.h0(i, j);
        if (hij == 0.0) continue;
        std::uint32_t m2 = m1;
        double a2 = a1;
        if (!apply_create(m2, a2, spinful_mode(i, sig))) continue;
        f(m2, hij * a2);
      }
    }
  }
  // Quartic: G[i,j,k,l] psi^+_{i,sig} psi_{j,sig} psi^+_{k,tau} psi_{l,tau},
  // applied right to left.
  if (h.g.dim() == 0 || h.g.max_abs() == 0.0) return;
  for (int sig = 0; sig < 2; ++sig) {
    for (int tau = 0; tau < 2; ++tau) {
      for (int l = 0; l < n; ++l) {
        std::uint32_t m1 = s;
        double a1 = 1.0;
        if (!apply_destroy(m1, a1, spinful_mode(l, tau))) continue;
        for (int k = 0; k < n; ++k) {
          std::uint32_t m2 = m1;
          double a2 = a1;
          if (!apply_create(m2, a2, spinful_mode(k, tau))) continue;
          for (int j = 0; j < n; ++j) {
            std::uint32_t m3 = m2;
            double a3 = a2;
            if (!apply_destroy(m3, a3, spinful_mode(j, sig))) continue;
            for (int i = 0; i < n; ++i) {
              double gv = h.g(i, j, k, l);
              if (gv == 0.0) continue;
              std::uint32_t m4 = m3;
              double a4 = a3;
              if (!apply_create(m4, a4, spinful_mode(i, sig))) continue;
              f(m4, gv * a4);
            }
          }
        }
      }
    }
  }
}

template <class F>
void spinless_images(const SpinlessOperator& op, std::uint32_t s, F&& f) {
  for (const SpinlessTerm& t : op.terms) {
    std::uint32_t m = s;
    double a = t.coeff;
    bool alive = true;
    for (auto it = t.annihilations.rbegin(); it != t.annihilations.rend() && alive; ++it)
      alive = apply_destroy(m, a, *it);
    for (auto it = t.creations.rbegin(); it != t.creations.rend() && alive; ++it)
      alive = apply_create(m, a, *it);
    if (alive) f(m, a);
  }
}

void check_hermitian(const Eigen::MatrixXd& m) {
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    fail(ErrorCode::NonHermitian, "ground_energy: matrix is not symmetric");
}

/// Minimum eigenvalue over the blocks induced by key(s), provided the matrix is
/// exactly block diagonal under that keying; returns nothing otherwise.
template <class Key>
bool sector_minimum(const Eigen::MatrixXd& m, int dim, Key&& key, double tol, double* out) {
  std::map<decltype(key(0)), std::vector<int>> sectors;
  for (int s = 0; s < dim; ++s) sectors[key(s)].push_back(s);
  if (static_cast<int>(sectors.size()) <= 1) return false;
  std::vector<int> sector_of(dim);
  for (auto& [k, states] : sectors) {
    (void)k;
    for (size_t a = 0; a < states.size(); ++a) sector_of[states[a]] = states[0];
  }
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      if (sector_of[r] != sector_of[c] && std::abs(m(r, c)) > tol) return false;
  double best = std::numeric_limits<double>::infinity();
  for (auto& [k, states] : sectors) {
    (void)k;
    const int d = static_cast<int>(states.size());
    Eigen::MatrixXd block(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) block(a, b) = m(states[a], states[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
    best = std::min(best, solver.eigenvalues().minCoeff());
  }
  *out = best;
  return true;
}

int up_count(std::uint32_t s) { return std::popcount(s & 0x55555555u); }
int down_count(std::uint32_t s) { return std::popcount(s & 0xAAAAAAAAu); }

}  // namespace

FockOperator build_spinful(const SpinfulHamiltonian& h) {
  const int modes = 2 * h.n_o;
  if (modes > kMaxModes)
    fail(ErrorCode::DimensionTooLarge, "build_spinful: n_o exceeds the 2^14 dimension cap");
  FockOperator op;
  op.modes = modes;
  op.spinful = true;
  const int dim = op.dim();
  op.matrix = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s)
    spinful_images(h, static_cast<std::uint32_t>(s),
                   [&](std::uint32_t t, double a) { op.matrix(t, s) += a; });
  return op;
}

FockOperator build_spinless(const SpinlessOperator& in) {
  if (in.n_modes > kMaxModes)
    fail(ErrorCode::DimensionTooLarge, "build_spinless: n exceeds the 2^14 dimension cap");
  for (const SpinlessTerm& t : in.terms) {
    for (int c : t.creations)
      if (c < 0 || c >= in.n_modes) fail(ErrorCode::IndexOutOfRange, "build_spinless: creation index");
    for (int a : t.annihilations)
      if (a < 0 || a >= in.n_modes)
        fail(ErrorCode::IndexOutOfRange, "build_spinless: annihilation index");
  }
  FockOperator op;
  op.modes = in.n_modes;
  const int dim = op.dim();
  op.matrix = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s)
    spinless_images(in, static_cast<std::uint32_t>(s),
                    [&](std::uint32_t t, double a) { op.matrix(t, s) += a; });
  return op;
}

FockOperator mode_operator(int modes, int m, bool create) {
  SpinlessOperator op;
  op.n_modes = modes;
  SpinlessTerm t;
  t.coeff = 1.0;
  if (create)
    t.creations = {m};
  else
    t.annihilations = {m};
  op.terms = {t};
  return build_spinless(op);
}

double ground_energy(const FockOperator& op) {
  check_hermitian(op.matrix);
  const int dim = op.dim();
  const double tol = 1e-12 * std::max(1.0, op.matrix.cwiseAbs().maxCoeff());
  double out = 0;
  if (op.spinful) {
    auto key = [](int s) {
      return std::pair<int, int>(up_count(static_cast<std::uint32_t>(s)),
                                 down_count(static_cast<std::uint32_t>(s)));
    };
    if (sector_minimum(op.matrix, dim, key, tol, &out)) return out;
  }
  auto nkey = [](int s) { return std::popcount(static_cast<std::uint32_t>(s)); };
  if (sector_minimum(op.matrix, dim, nkey, tol, &out)) return out;
  auto pkey = [](int s) { return std::popcount(static_cast<std::uint32_t>(s)) & 1; };
  if (sector_minimum(op.matrix, dim, pkey, tol, &out)) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::pair<double, Eigen::VectorXd> ground_state(const FockOperator& op) {
  check_hermitian(op.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix);
  Eigen::VectorXd v = solver.eigenvectors().col(0);
  v.normalize();
  return {solver.eigenvalues()(0), v};
}

double spinful_ground_energy(const SpinfulHamiltonian& h) {
  const int n = h.n_o;
  if (2 * n > kMaxModes)
    fail(ErrorCode::DimensionTooLarge, "spinful_ground_energy: n_o exceeds the cap");
  const int dim = 1 << (2 * n);
  // Group the basis by (N_up, N_down); both are conserved by construction.
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> sectors;
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s)
    sectors[{up_count(s), down_count(s)}].push_back(s);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pos(dim, -1);
  for (auto& [k, states] : sectors) {
    (void)k;
    const int d = static_cast<int>(states.size());
    for (int a = 0; a < d; ++a) pos[states[a]] = a;
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < d; ++a)
      spinful_images(h, states[a], [&](std::uint32_t t, double amp) {
        block(pos[t], a) += amp;  // t stays in the sector
      });
    for (int a = 0; a < d; ++a) pos[states[a]] = -1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
    best = std::min(best, solver.eigenvalues().minCoeff());
  }
  return best;
}

FockOperator brute_anticommutator(const FockOperator& a, const FockOperator& b) {
  if (a.modes != b.modes) fail(ErrorCode::ShapeMismatch, "brute_anticommutator: mode mismatch");
  FockOperator out;
  out.modes = a.modes;
  out.matrix = a.matrix * b.matrix + b.matrix * a.matrix;
  return out;
}

Eigen::VectorXd apply_spinful(const SpinfulHamiltonian& h, const Eigen::VectorXd& x) {
  const int dim = 1 << (2 * h.n_o);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
  for (int s = 0; s < dim; ++s) {
    const double xs = x(s);
    if (xs == 0.0) continue;
    spinful_images(h, static_cast<std::uint32_t>(s),
                   [&](std::uint32_t t, double a) { y(t) += a * xs; });
  }
  return y;
}

Eigen::VectorXd apply_spinless(const SpinlessOperator& op, const Eigen::VectorXd& x) {
  const int dim = 1 << op.n_modes;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
  for (int s = 0; s < dim; ++s) {
    const double xs = x(s);
    if (xs == 0.0) continue;
    spinless_images(op, static_cast<std::uint32_t>(s),
                    [&](std::uint32_t t, double a) { y(t) += a * xs; });
  }
  return y;
}

namespace {

/// Shared spectral-sum RS series: H0 diagonal in the computational basis with
/// energies E[s], perturbation applied through apply_v.
template <class ApplyV>
PtEnergies rs_pt_diagonal(const Eigen::VectorXd& diag, ApplyV&& apply_v, int order) {
  const int dim = static_cast<int>(diag.size());
  int g0 = 0;
  diag.minCoeff(&g0);
  double second = std::numeric_limits<double>::infinity();
  for (int s = 0; s < dim; ++s)
    if (s != g0) second = std::min(second, diag(s));
  if (second - diag(g0) <= 1e-8)
    fail(ErrorCode::DegenerateGroundState, "rs_pt: unperturbed ground state is not unique");

  PtEnergies pt;
  pt.e0 = diag(g0);
  if (order < 1) return pt;
  Eigen::VectorXd psi0 = Eigen::VectorXd::Zero(dim);
  psi0(g0) = 1.0;
  Eigen::VectorXd v0 = apply_v(psi0);
  pt.e1 = v0(g0);
  if (order < 2) return pt;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  for (int s = 0; s < dim; ++s)
    if (s != g0) w(s) = v0(s) / (pt.e0 - diag(s));
  pt.e2 = 0;
  for (int s = 0; s < dim; ++s)
    if (s != g0) pt.e2 += v0(s) * w(s);
  if (order < 3) return pt;
  Eigen::VectorXd u = apply_v(w);
  pt.e3 = w.dot(u) - pt.e1 * w.squaredNorm();
  return pt;
}

}  // namespace

PtEnergies rs_pt(const SpinfulHamiltonian& h0, const SpinfulHamiltonian& v, int order) {
  if (h0.n_o != v.n_o) fail(ErrorCode::ShapeMismatch, "rs_pt: orbital count mismatch");
  if (2 * h0.n_o > kMaxModes) fail(ErrorCode::DimensionTooLarge, "rs_pt: n_o exceeds the cap");
  if (h0.g.dim() > 0 && h0.g.max_abs() != 0.0)
    fail(ErrorCode::InvalidArgument, "rs_pt: H0 must be quadratic (G = 0)");
  if (v.h0.size() > 0 && v.h0.cwiseAbs().maxCoeff() != 0.0)
    fail(ErrorCode::InvalidArgument, "rs_pt: V must be quartic (h0 = 0)");

  EigResult eig = eigh(h0.h0);
  SpinfulHamiltonian vrot = rotate(v, eig.vectors);
  const int dim = 1 << (2 * h0.n_o);
  Eigen::VectorXd diag(dim);
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
    double e = h0.scalar;
    for (int m = 0; m < 2 * h0.n_o; ++m)
      if ((s >> m) & 1u) e += eig.values(m / 2);
    diag(s) = e;
  }
  return rs_pt_diagonal(
      diag, [&](const Eigen::VectorXd& x) { return apply_spinful(vrot, x); }, order);
}

PtEnergies rs_pt_spinless(const std::vector<double>& energies, const SpinlessOperator& v,
                          int order) {
  const int n = static_cast<int>(energies.size());
  if (n != v.n_modes) fail(ErrorCode::ShapeMismatch, "rs_pt_spinless: mode count mismatch");
  if (n > kMaxModes) fail(ErrorCode::DimensionTooLarge, "rs_pt_spinless: n exceeds the cap");
  const int dim = 1 << n;
  Eigen::VectorXd diag(dim);
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
    double e = 0;
    for (int m = 0; m < n; ++m)
      if ((s >> m) & 1u) e += energies[m];
    diag(s) = e;
  }
  return rs_pt_diagonal(
      diag, [&](const Eigen::VectorXd& x) { return apply_spinless(v, x); }, order);
}

}  // namespace qsos
