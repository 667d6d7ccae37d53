#include "models.hpp"

#include <cmath>

#include "errors.hpp"

namespace qsos {

double NormalSampler::uniform() {
  // 53 uniform bits in (0, 1]; never 0, so log() below is safe.
  return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

SpinfulHamiltonian gaussian_model(int n_o, double epsilon, std::uint64_t seed) {
  if (n_o % 2 != 0) fail(ErrorCode::OddOrbitalCount, "gaussian_model: n_o must be even");
  if (epsilon < 0) fail(ErrorCode::InvalidArgument, "gaussian_model: epsilon must be >= 0");
  SpinfulHamiltonian h = SpinfulHamiltonian::zero(n_o);
  for (int i = 0; i < n_o; ++i) h.h0(i, i) = (i < n_o / 2) ? 1.0 : -1.0;

  NormalSampler rng(seed);
  Tensor4 a(n_o);
  for (int i = 0; i < n_o; ++i)
    for (int j = 0; j < n_o; ++j)
      for (int k = 0; k < n_o; ++k)
        for (int l = 0; l < n_o; ++l) a(i, j, k, l) = rng.next();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n_o; ++i)
    for (int j = 0; j < n_o; ++j)
      for (int k = 0; k < n_o; ++k)
        for (int l = 0; l < n_o; ++l)
          h.g(i, j, k, l) = epsilon * inv_sqrt2 * (a(i, j, k, l) + a(l, k, j, i));
  return h;
}

SpinfulHamiltonian two_orbital_singlet(double epsilon, double u) {
  SpinfulHamiltonian h = SpinfulHamiltonian::zero(2);
  h.h0(0, 0) = 1.0;
  h.h0(1, 1) = -1.0;
  h.g(0, 1, 0, 1) = epsilon;  // pair hop 1 -> 0
  h.g(1, 0, 1, 0) = epsilon;  // h.c.
  h.g(0, 0, 1, 1) = 0.5 * u;  // u n_0 n_1, split symmetrically
  h.g(1, 1, 0, 0) = 0.5 * u;
  return h;
}

SpinfulHamiltonian singlet_hopping_model(int n_o, double scale, std::uint64_t seed) {
  if (n_o % 2 != 0) fail(ErrorCode::OddOrbitalCount, "singlet_hopping_model: n_o must be even");
  SpinfulHamiltonian h = SpinfulHamiltonian::zero(n_o);
  for (int i = 0; i < n_o; ++i) h.h0(i, i) = (i < n_o / 2) ? 1.0 : -1.0;
  NormalSampler rng(seed);
  for (int i = 0; i < n_o; ++i)
    for (int j = 0; j < n_o; ++j) {
      if (i == j) continue;
      h.g(i, j, i, j) = scale * rng.next();
    }
  return hermitize(h);
}

SpinlessOperator toy_spinless_quartic(double epsilon) {
  SpinlessOperator op;
  op.n_modes = 4;
  for (int i = 0; i < 4; ++i) {
    SpinlessTerm t;
    t.creations = {i};
    t.annihilations = {i};
    t.coeff = 1.0;
    op.terms.push_back(t);
  }
  SpinlessTerm quart;
  quart.creations = {0, 1, 2, 3};
  quart.coeff = epsilon;
  op.terms.push_back(quart);
  SpinlessTerm hc;
  hc.annihilations = {3, 2, 1, 0};
  hc.coeff = epsilon;
  op.terms.push_back(hc);
  return op;
}

SpinfulHamiltonian generate(const ModelSpec& spec) {
  if (spec.family == "gaussian-quartic") return gaussian_model(spec.n_o, spec.epsilon, spec.seed);
  if (spec.family == "singlet-hopping")
    return singlet_hopping_model(spec.n_o, spec.epsilon, spec.seed);
  if (spec.family == "two-orbital-singlet") return two_orbital_singlet(spec.epsilon, spec.u);
  fail(ErrorCode::InvalidArgument, "generate: unknown spinful model family '" + spec.family + "'");
}

}  // namespace qsos
