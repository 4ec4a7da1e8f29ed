#ifndef CHAINFORGE_JSON_IO_HPP
#define CHAINFORGE_JSON_IO_HPP

#include <json.hpp>

#include "chainforge/chain.hpp"
#include "chainforge/poly.hpp"
#include "chainforge/pte.hpp"

namespace chainforge {

using Json = nlohmann::json;

// Rationals travel as strings "num/den" (den omitted when 1) so nothing is
// ever rounded through a float.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {"coeffs": [...]}, lowest degree first.
Json poly_to_json(const ExactPolynomial& p);
ExactPolynomial poly_from_json(const Json& j);

// {"d": int, "a": [...], "lambda_sq": [...], "spectrum": optional [...]}.
Json chain_to_json(const Chain& c, bool with_spectrum = false);
Chain chain_from_json(const Json& j);

// {"n": int, "E": [...], "F": [...], "class": "pte0|pte1|general"}.
Json pte_to_json(const PTESolution& sol);
PTESolution pte_from_json(const Json& j);

Json load_json_file(const std::string& path);

}  // namespace chainforge

#endif
