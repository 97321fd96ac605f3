#ifndef CONJULAB_SERIALIZE_HPP
#define CONJULAB_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "conjulab/blaschke.hpp"
#include "conjulab/config.hpp"
#include "conjulab/types.hpp"

namespace conjulab {

using Json = nlohmann::ordered_json;

/// {"lambda": [re, im], "zeros": [[re, im, multiplicity], ...]}
Json blaschke_to_json(const BlaschkeProduct& b);

/// Throws ParameterError with a field-level message on malformed input.
BlaschkeProduct blaschke_from_json(const Json& j);

Json config_to_json(const RunConfig& c);
/// Unknown keys are rejected; missing keys keep their defaults.
RunConfig config_from_json(const Json& j);

/// Complex scalars serialize as [re, im].
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);

/// Parses "0.5", "0.5i", "0.3+0.2i", "-1e-2-3i" style literals.
Complex parse_complex(const std::string& text);

}  // namespace conjulab

#endif  // CONJULAB_SERIALIZE_HPP
