#include "ecslab/serialization.hpp"

namespace ecslab {

nlohmann::json to_json(const CoherentSuperposition& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : s.terms()) {
        nlohmann::json amps = nlohmann::json::array();
        for (Complex a : t.amps) amps.push_back({a.real(), a.imag()});
        terms.push_back({{"coeff_re", t.coeff.real()},
                         {"coeff_im", t.coeff.imag()},
                         {"amps", std::move(amps)}});
    }
    return {{"n_modes", s.n_modes()}, {"terms", std::move(terms)}};
}

CoherentSuperposition superposition_from_json(const nlohmann::json& j) {
    int n_modes = j.at("n_modes").get<int>();
    std::vector<CoherentTerm> terms;
    for (const auto& jt : j.at("terms")) {
        CoherentTerm t;
        t.coeff = Complex(jt.at("coeff_re").get<double>(), jt.at("coeff_im").get<double>());
        for (const auto& ja : jt.at("amps")) {
            if (!ja.is_array() || ja.size() != 2)
                throw std::invalid_argument("amplitude entries must be [re, im] pairs");
            t.amps.emplace_back(ja[0].get<double>(), ja[1].get<double>());
        }
        terms.push_back(std::move(t));
    }
    return CoherentSuperposition(n_modes, std::move(terms));
}

}  // namespace ecslab
