#include "fg/series_json.hpp"

#include <set>

#include "fg/error.hpp"

namespace fg {

nlohmann::json series_to_json(const Series& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : f.terms())
        terms.push_back({{"exp", m.exponents()}, {"coef", c.to_string()}});
    return {{"ring", f.ring().to_string()},
            {"vars", f.vars()},
            {"precision", f.precision()},
            {"terms", std::move(terms)}};
}

Series series_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) fail(Errc::parse_error, "series must be a JSON object");
        Ring ring = Ring::parse(j.at("ring").get<std::string>());
        auto vars = j.at("vars").get<std::int64_t>();
        auto precision = j.at("precision").get<std::int64_t>();
        if (vars < 0) fail(Errc::parse_error, "vars must be non-negative");
        if (precision < 1 || precision > 0xFFFF) fail(Errc::parse_error, "precision must lie in [1, 65535]");
        Series f(ring, static_cast<std::size_t>(vars), static_cast<unsigned>(precision));
        std::set<std::vector<Exponent>> seen;
        for (const auto& t : j.at("terms")) {
            std::vector<Exponent> exps;
            for (const auto& e : t.at("exp")) {
                auto v = e.get<std::int64_t>();
                if (v < 0 || v > 0xFFFF) fail(Errc::parse_error, "exponent out of range");
                exps.push_back(static_cast<Exponent>(v));
            }
            if (exps.size() != f.vars()) fail(Errc::parse_error, "exponent vector length differs from vars");
            MultiIndex m(exps);
            if (m.degree() == 0) fail(Errc::parse_error, "constant terms are not allowed");
            if (m.degree() > f.precision())
                fail(Errc::parse_error, "term " + format_monomial(m) + " exceeds the precision");
            if (!seen.insert(exps).second) fail(Errc::parse_error, "duplicate term " + format_monomial(m));
            const auto& coef = t.at("coef");
            Scalar c = coef.is_number_integer() ? ring.parse_value(std::to_string(coef.get<std::int64_t>()))
                                                : ring.parse_value(coef.get<std::string>());
            f.add_term(m, c);
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::parse_error, std::string("malformed series JSON: ") + e.what());
    }
}

} // namespace fg
