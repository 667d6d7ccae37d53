#include "json_io.hpp"

#include "errors.hpp"

namespace qsos {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Parse, "invalid JSON");
  return j;
}

json to_json(const SpinfulHamiltonian& h) {
  std::vector<double> h0(h.h0.data(), h.h0.data() + h.h0.size());
  // Eigen stores column-major; emit row-major per the format.
  for (int i = 0; i < h.n_o; ++i)
    for (int j = 0; j < h.n_o; ++j) h0[static_cast<std::size_t>(i) * h.n_o + j] = h.h0(i, j);
  std::vector<double> g(h.g.data(), h.g.data() + h.g.size());
  return json{{"n_o", h.n_o},
              {"scalar", h.scalar},
              {"h0", h0},
              {"G", g},
              {"convention", "spinful-v1"}};
}

SpinfulHamiltonian spinful_from_json(const json& j) {
  if (require(j, "convention").get<std::string>() != "spinful-v1")
    fail(ErrorCode::Parse, "expected convention spinful-v1");
  const int n = require(j, "n_o").get<int>();
  if (n <= 0) fail(ErrorCode::Parse, "n_o must be positive");
  SpinfulHamiltonian h = SpinfulHamiltonian::zero(n);
  h.scalar = require(j, "scalar").get<double>();
  auto h0 = require(j, "h0").get<std::vector<double>>();
  auto g = require(j, "G").get<std::vector<double>>();
  if (h0.size() != static_cast<std::size_t>(n) * n || g.size() != h.g.size())
    fail(ErrorCode::Parse, "h0/G length does not match n_o");
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) h.h0(i, k) = h0[static_cast<std::size_t>(i) * n + k];
  std::copy(g.begin(), g.end(), h.g.data());
  return h;
}

json to_json(const SpinlessOperator& op) {
  json terms = json::array();
  for (const SpinlessTerm& t : op.terms)
    terms.push_back(
        {{"creations", t.creations}, {"annihilations", t.annihilations}, {"coeff", t.coeff}});
  return json{{"n", op.n_modes}, {"terms", terms}, {"convention", "spinless-v1"}};
}

SpinlessOperator spinless_from_json(const json& j) {
  if (require(j, "convention").get<std::string>() != "spinless-v1")
    fail(ErrorCode::Parse, "expected convention spinless-v1");
  SpinlessOperator op;
  op.n_modes = require(j, "n").get<int>();
  for (const json& t : require(j, "terms")) {
    SpinlessTerm term;
    term.creations = require(t, "creations").get<std::vector<int>>();
    term.annihilations = require(t, "annihilations").get<std::vector<int>>();
    term.coeff = require(t, "coeff").get<double>();
    op.terms.push_back(std::move(term));
  }
  return op;
}

std::variant<SpinfulHamiltonian, SpinlessOperator> hamiltonian_from_json(const json& j) {
  const std::string conv = require(j, "convention").get<std::string>();
  if (conv == "spinful-v1") return spinful_from_json(j);
  if (conv == "spinless-v1") return spinless_from_json(j);
  fail(ErrorCode::Parse, "unknown convention '" + conv + "'");
}

json to_json(const SolveResult& r) {
  json history = json::array();
  for (const IterationRecord& it : r.history) history.push_back({it.bound, it.err});
  return json{{"bound", r.bound},
              {"err", r.err},
              {"certified_bound", r.certified_bound},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"history", history},
              {"wall_time_s", r.wall_time_s}};
}

SolveResult solve_result_from_json(const json& j) {
  SolveResult r;
  r.bound = require(j, "bound").get<double>();
  r.err = require(j, "err").get<double>();
  r.certified_bound = require(j, "certified_bound").get<double>();
  r.iterations = require(j, "iterations").get<int>();
  r.converged = require(j, "converged").get<bool>();
  for (const json& it : require(j, "history"))
    r.history.push_back({it.at(0).get<double>(), it.at(1).get<double>()});
  r.wall_time_s = require(j, "wall_time_s").get<double>();
  return r;
}

json to_json(const ModelSpec& spec) {
  return json{{"family", spec.family},
              {"n_o", spec.n_o},
              {"epsilon", spec.epsilon},
              {"u", spec.u},
              {"seed", spec.seed}};
}

ModelSpec model_spec_from_json(const json& j) {
  ModelSpec spec;
  spec.family = require(j, "family").get<std::string>();
  spec.n_o = j.value("n_o", 0);
  spec.epsilon = j.value("epsilon", 0.0);
  spec.u = j.value("u", 0.0);
  spec.seed = j.value("seed", std::uint64_t{0});
  return spec;
}

}  // namespace qsos
