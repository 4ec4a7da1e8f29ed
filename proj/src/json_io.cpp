#include "chainforge/json_io.hpp"

#include <fstream>

namespace chainforge {

Json rational_to_json(const Rational& q) { return rational_to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw Error("expected a rational as integer or \"num/den\" string, got " + j.dump());
}

Json poly_to_json(const ExactPolynomial& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(rational_to_json(c));
    return Json{{"coeffs", coeffs}};
}

ExactPolynomial poly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw Error("polynomial JSON must be {\"coeffs\": [...]}");
    std::vector<Rational> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(rational_from_json(c));
    return ExactPolynomial(std::move(coeffs));
}

Json chain_to_json(const Chain& c, bool with_spectrum) {
    Json a = Json::array(), l = Json::array();
    for (const auto& x : c.a()) a.push_back(rational_to_json(x));
    for (const auto& x : c.lambda_sq()) l.push_back(rational_to_json(x));
    Json out{{"d", c.d()}, {"a", a}, {"lambda_sq", l}};
    if (with_spectrum) {
        Json sp = Json::array();
        for (const auto& e : eigen(c).eigenvalues)
            sp.push_back(e.exact ? rational_to_json(e.value) : Json(e.witness));
        out["spectrum"] = sp;
    }
    return out;
}

Chain chain_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("lambda_sq"))
        throw Error("chain JSON must contain \"a\" and \"lambda_sq\" arrays");
    std::vector<Rational> a, l;
    for (const auto& x : j["a"]) a.push_back(rational_from_json(x));
    for (const auto& x : j["lambda_sq"]) l.push_back(rational_from_json(x));
    Chain c(std::move(a), std::move(l));
    if (j.contains("d") && j["d"].get<int>() != c.d())
        throw Error("chain JSON: \"d\" does not match the array lengths");
    return c;
}

Json pte_to_json(const PTESolution& sol) {
    Json e = Json::array(), f = Json::array();
    for (const auto& v : sol.E) e.push_back(v.get_str());
    for (const auto& v : sol.F) f.push_back(v.get_str());
    return Json{{"n", sol.n}, {"E", e}, {"F", f}, {"class", pte_class_name(sol.cls)}};
}

PTESolution pte_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("E") || !j.contains("F"))
        throw Error("solution JSON must contain \"E\" and \"F\" arrays");
    auto read_side = [](const Json& arr) {
        std::vector<Integer> out;
        for (const auto& v : arr) {
            if (v.is_number_integer())
                out.emplace_back(static_cast<long>(v.get<long long>()));
            else
                out.emplace_back(v.get<std::string>());
        }
        return out;
    };
    std::string reason;
    std::optional<PTESolution> sol = verify_pte(read_side(j["E"]), read_side(j["F"]), &reason);
    if (!sol) throw Error("not a valid solution: " + reason);
    return *sol;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace chainforge
