#pragma once

#include <string>

#include <json.hpp>

#include "hrlab/hodge_riemann.hpp"
#include "hrlab/restriction.hpp"

namespace hrlab {

using json = nlohmann::json;

// Form: {"n":, "p":, "q":, "terms": [{"I": [..], "J": [..], "re":, "im":}]}
json form_to_json(const Form& f);
Form form_from_json(const json& j);

// Hermitian matrix: {"n":, "rows": [[[re, im], ...], ...]}; Hermitian
// symmetry is validated on load.
json hermitian_to_json(const HermitianForm& h);
HermitianForm hermitian_from_json(const json& j, bool validate = true);

// Hyperplane: {"v": [[re, im], ...]}
json hyperplane_to_json(const Hyperplane& h);
Hyperplane hyperplane_from_json(const json& j);

// Instance: {"n":, "m":, "p":, "q":, "omega": <matrix>, "alphas": [<matrix>...]}
json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j, bool validate = true, double tol = default_tolerance());

json load_json_file(const std::string& path);          // throws ValidationError
void save_json_file(const std::string& path, const json& j);

}  // namespace hrlab
