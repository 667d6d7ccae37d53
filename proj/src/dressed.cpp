#include "dressed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "errors.hpp"
#include "models.hpp"

namespace qsos {

namespace {

int permutation_sign(const std::array<int, 4>& p) {
  int inv = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] > p[b]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

int permutation_sign3(const std::array<int, 3>& p) {
  int inv = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (p[a] > p[b]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

}  // namespace

SpinlessPerturbation::SpinlessPerturbation(int n_modes)
    : n(n_modes),
      e(n_modes, 1.0),
      a4(static_cast<std::size_t>(n_modes) * n_modes * n_modes * n_modes, 0.0),
      c1a3(a4.size(), 0.0),
      c2a2(a4.size(), 0.0) {}

void SpinlessPerturbation::set_v4(int i, int j, int k, int l, double v) {
  std::array<int, 4> base{i, j, k, l};
  std::array<int, 4> pos{0, 1, 2, 3};
  std::sort(pos.begin(), pos.end());
  do {
    std::array<int, 4> p{base[pos[0]], base[pos[1]], base[pos[2]], base[pos[3]]};
    a4[idx(p[0], p[1], p[2], p[3])] = permutation_sign(pos) * v;
  } while (std::next_permutation(pos.begin(), pos.end()));
}

void SpinlessPerturbation::set_v31(int i, int j, int k, int l, double v) {
  std::array<int, 3> base{j, k, l};
  std::array<int, 3> pos{0, 1, 2};
  do {
    std::array<int, 3> p{base[pos[0]], base[pos[1]], base[pos[2]]};
    c1a3[idx(i, p[0], p[1], p[2])] = permutation_sign3(pos) * v;
  } while (std::next_permutation(pos.begin(), pos.end()));
}

void SpinlessPerturbation::set_v22(int i, int j, int k, int l, double v) {
  // 4 sign images of the pattern plus the same for its reversal partner, which
  // keeps the operator sum Hermitian without an explicit conjugate family.
  auto images = [&](int a, int b, int c, int d) {
    c2a2[idx(a, b, c, d)] = v;
    c2a2[idx(b, a, c, d)] = -v;
    c2a2[idx(a, b, d, c)] = -v;
    c2a2[idx(b, a, d, c)] = v;
  };
  images(i, j, k, l);
  images(l, k, j, i);
}

SpinlessOperator SpinlessPerturbation::to_operator() const {
  SpinlessOperator op;
  op.n_modes = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double v = v4(i, j, k, l);
          if (v == 0) continue;
          op.terms.push_back({{}, {i, j, k, l}, v});
          op.terms.push_back({{l, k, j, i}, {}, v});
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double v = v31(i, j, k, l);
          if (v == 0) continue;
          op.terms.push_back({{i}, {j, k, l}, v});
          op.terms.push_back({{l, k, j}, {i}, v});
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double v = v22(i, j, k, l);
          if (v == 0) continue;
          op.terms.push_back({{i, j}, {k, l}, v});
        }
  return op;
}

void SpinlessPerturbation::validate() const {
  for (double ej : e)
    if (!(ej > 0)) fail(ErrorCode::InvalidArgument, "SpinlessPerturbation: energies must be > 0");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (std::abs(a4[idx(i, j, k, l)] + a4[idx(j, i, k, l)]) > 0 ||
              std::abs(c1a3[idx(i, j, k, l)] + c1a3[idx(i, k, j, l)]) > 0 ||
              std::abs(c2a2[idx(i, j, k, l)] + c2a2[idx(j, i, k, l)]) > 0 ||
              std::abs(c2a2[idx(i, j, k, l)] - c2a2[idx(l, k, j, i)]) > 0)
            fail(ErrorCode::InvalidArgument, "SpinlessPerturbation: symmetry violated");
        }
}

SpinlessPerturbation random_perturbation(int n, std::uint64_t seed, unsigned families) {
  SpinlessPerturbation p(n);
  NormalSampler rng(seed);
  for (int m = 0; m < n; ++m) p.e[m] = 1.0 + rng.uniform();
  if (families & kFamilyV4) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l) p.set_v4(i, j, k, l, rng.next());
  }
  if (families & kFamilyV31) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            if (j == i || k == i || l == i) continue;  // coincident creation/annihilation
            p.set_v31(i, j, k, l, rng.next());
          }
  }
  if (families & kFamilyV22) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            // One draw per reversal class {(i,j,k,l), (l,k,j,i)}.
            std::array<int, 4> cur{i, j, k, l}, rev{l, k, j, i};
            if (rev < cur) continue;
            p.set_v22(i, j, k, l, rng.next());
          }
  }
  return p;
}

DressedOperator build_dressed(const SpinlessPerturbation& pert, int mode) {
  const int n = pert.n;
  const std::vector<double>& e = pert.e;
  const int i = mode;
  if (i < 0 || i >= n) fail(ErrorCode::IndexOutOfRange, "build_dressed: mode index");

  DressedOperator d;
  d.mode = i;
  d.n = n;
  d.o1.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        d.o1[(static_cast<std::size_t>(j) * n + k) * n + l] =
            -pert.v4(i, j, k, l) / (e[i] + e[j] + e[k] + e[l]);

  // Second-order groups, term by term with the literal index ranges; the group
  // signs are folded in so O2 is the plain sum of all six groups.
  auto& g = d.o2_groups;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn)
          for (int o = nn + 1; o < n; ++o)
            for (int p = o + 1; p < n; ++p) {
              double c = pert.v3c1a(i, j, k, m) / (e[i] + e[j] + e[k] + e[nn] + e[o] + e[p]) *
                         pert.v4(m, nn, o, p) / (e[m] + e[nn] + e[o] + e[p]);
              if (c != 0) g[0].push_back({{j, k, nn, o, p}, -c});
            }
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      for (int nn = m + 1; nn < n; ++nn)
        for (int o = 0; o < n; ++o)
          for (int p = o + 1; p < n; ++p) {
            double c = pert.v22(i, j, m, nn) / (e[i] + e[j] + e[o] + e[p]) *
                       pert.v4(m, nn, o, p) / (e[m] + e[nn] + e[o] + e[p]);
            if (c != 0) g[1].push_back({{j, o, p}, -c});
          }
  for (int m = 0; m < n; ++m)
    for (int nn = m + 1; nn < n; ++nn)
      for (int o = nn + 1; o < n; ++o)
        for (int p = 0; p < n; ++p) {
          double c = pert.v31(i, m, nn, o) / (e[i] + e[p]) * pert.v4(m, nn, o, p) /
                     (e[m] + e[nn] + e[o] + e[p]);
          if (c != 0) g[2].push_back({{p}, -c});
        }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        for (int m = 0; m < n; ++m)
          for (int o = 0; o < n; ++o)
            for (int p = o + 1; p < n; ++p) {
              double c = pert.v3c1a(j, k, l, m) /
                         (e[i] + e[j] + e[k] + e[l] + e[o] + e[p]) * pert.v4(i, m, o, p) /
                         (e[i] + e[m] + e[o] + e[p]);
              if (c != 0) g[3].push_back({{j, k, l, o, p}, c});
            }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int m = 0; m < n; ++m)
        for (int nn = m + 1; nn < n; ++nn)
          for (int p = 0; p < n; ++p) {
            double c = pert.v22(j, k, m, nn) / (e[i] + e[j] + e[k] + e[p]) *
                       pert.v4(m, nn, i, p) / (e[m] + e[nn] + e[i] + e[p]);
            if (c != 0) g[4].push_back({{j, k, p}, -c});
          }
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      for (int nn = m + 1; nn < n; ++nn)
        for (int o = nn + 1; o < n; ++o) {
          double c = pert.v31(j, m, nn, o) / (e[i] + e[j]) * pert.v4(m, nn, o, i) /
                     (e[m] + e[nn] + e[o] + e[i]);
          if (c != 0) g[5].push_back({{j}, c});
        }
  return d;
}

SpinlessOperator DressedOperator::to_operator(double epsilon, int order) const {
  SpinlessOperator op;
  op.n_modes = n;
  op.terms.push_back({{}, {mode}, 1.0});
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        const double v = o1_at(j, k, l);
        if (v != 0) op.terms.push_back({{j, k, l}, {}, epsilon * v});
      }
  if (order >= 2) {
    for (const auto& group : o2_groups)
      for (const CreationTerm& t : group)
        op.terms.push_back({t.creators, {}, epsilon * epsilon * t.coeff});
  }
  return op;
}

namespace {

/// Exact normalized ground state of H0 + eps V; throws on a degenerate ground
/// state.
Eigen::VectorXd perturbed_ground_state(const SpinlessPerturbation& pert, double epsilon) {
  const int n = pert.n;
  if (n > 10) fail(ErrorCode::DimensionTooLarge, "residual_norm: n exceeds the cap of 10");
  SpinlessOperator h = pert.to_operator();
  for (SpinlessTerm& t : h.terms) t.coeff *= epsilon;
  for (int m = 0; m < n; ++m) h.terms.push_back({{m}, {m}, pert.e[m]});
  FockOperator op = build_spinless(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix);
  if (solver.eigenvalues()(1) - solver.eigenvalues()(0) <= 1e-8)
    fail(ErrorCode::DegenerateGroundState, "residual_norm: perturbed ground state is degenerate");
  Eigen::VectorXd psi = solver.eigenvectors().col(0);
  psi.normalize();
  return psi;
}

}  // namespace

double residual_norm(const SpinlessPerturbation& pert, int mode, double epsilon, int order) {
  Eigen::VectorXd psi = perturbed_ground_state(pert, epsilon);
  SpinlessOperator d = build_dressed(pert, mode).to_operator(epsilon, order);
  return apply_spinless(d, psi).norm();
}

double residual_norm_sector(const SpinlessPerturbation& pert, int mode, double epsilon, int order,
                            int excitations) {
  Eigen::VectorXd psi = perturbed_ground_state(pert, epsilon);
  SpinlessOperator d = build_dressed(pert, mode).to_operator(epsilon, order);
  Eigen::VectorXd r = apply_spinless(d, psi);
  double s = 0;
  for (int m = 0; m < r.size(); ++m)
    if (std::popcount(static_cast<unsigned>(m)) == excitations) s += r(m) * r(m);
  return std::sqrt(s);
}

}  // namespace qsos
