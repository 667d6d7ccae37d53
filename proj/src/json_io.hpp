#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "fock.hpp"
#include "hamiltonian.hpp"
#include "models.hpp"
#include "solver.hpp"

namespace qsos {

// Wire formats:
//   spinful-v1:  {"n_o", "scalar", "h0": [n_o^2 row-major], "G": [n_o^4 flat],
//                 "convention": "spinful-v1"}
//   spinless-v1: {"n", "terms": [{"creations", "annihilations", "coeff"}],
//                 "convention": "spinless-v1"}

nlohmann::json to_json(const SpinfulHamiltonian& h);
SpinfulHamiltonian spinful_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpinlessOperator& op);
SpinlessOperator spinless_from_json(const nlohmann::json& j);

/// Dispatch on the "convention" field.
std::variant<SpinfulHamiltonian, SpinlessOperator> hamiltonian_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolveResult& r);
SolveResult solve_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);

nlohmann::json parse_json(const std::string& text);  // wraps parse errors

}  // namespace qsos
