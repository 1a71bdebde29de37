#include "symlab/json_io.hpp"

namespace symlab {

ordered_json to_json(const DiscreteDist& d) {
    ordered_json atoms = ordered_json::array();
    for (const Atom& a : d.atoms())
        atoms.push_back({{"num", a.value.num()}, {"den", a.value.den()}, {"prob", a.prob}});
    return ordered_json{{"atoms", std::move(atoms)}};
}

DiscreteDist dist_from_json(const ordered_json& j) {
    std::vector<Atom> atoms;
    for (const auto& item : j.at("atoms"))
        atoms.push_back({Rational(item.at("num").get<std::int64_t>(),
                                  item.at("den").get<std::int64_t>()),
                         item.at("prob").get<double>()});
    return DiscreteDist::from_atoms(std::move(atoms));
}

ordered_json to_json(const SymmetrizerSolution& sol) {
    ordered_json j;
    j["status"] = to_string(sol.status);
    if (sol.y_dist) {
        j["variance"] = sol.variance;
        j["second_moment"] = sol.second_moment;
        j["y_atoms"] = to_json(*sol.y_dist)["atoms"];
    } else {
        j["variance"] = nullptr;
        j["second_moment"] = nullptr;
        j["y_atoms"] = nullptr;
    }
    if (sol.certificate_gap)
        j["certificate_gap"] = *sol.certificate_gap;
    else
        j["certificate_gap"] = nullptr;
    return j;
}

ordered_json to_json(const CertificateReport& report) {
    return ordered_json{
        {"samples_checked", report.samples_checked},
        {"max_oddness_violation", report.max_oddness_violation},
        {"max_antiperiod_violation", report.max_antiperiod_violation},
        {"max_second_derivative_abs", report.max_second_derivative_abs},
        {"max_reflection_violation", report.max_reflection_violation},
    };
}

ordered_json to_json(const EmbeddingReport& report) {
    ordered_json hist = ordered_json::array();
    for (const Atom& a : report.empirical_dist)
        hist.push_back({{"num", a.value.num()}, {"den", a.value.den()}, {"mass", a.prob}});
    return ordered_json{
        {"empirical_dist", std::move(hist)},
        {"mean_tau", report.mean_tau},
        {"mean_tau_stderr", report.mean_tau_stderr},
        {"target_variance", report.target_variance},
        {"n_paths_used", report.n_paths_used},
    };
}

ordered_json to_json(const ItoReport& report) {
    return ordered_json{
        {"lhs_estimate", report.lhs_estimate},
        {"lhs_stderr", report.lhs_stderr},
        {"rhs_estimate", report.rhs_estimate},
        {"rhs_stderr", report.rhs_stderr},
        {"n_paths_used", report.n_paths_used},
        {"truncated_paths", report.truncated_paths},
    };
}

ordered_json to_json(const ConditioningReport& report) {
    return ordered_json{
        {"combined", report.combined},
        {"combined_stderr", report.combined_stderr},
        {"from_q", report.from_q},
        {"from_q_stderr", report.from_q_stderr},
        {"from_neg_p", report.from_neg_p},
        {"from_neg_p_stderr", report.from_neg_p_stderr},
        {"decomposed", report.decomposed},
        {"decomposed_stderr", report.decomposed_stderr},
        {"collapsed", report.collapsed},
        {"collapsed_stderr", report.collapsed_stderr},
        {"n_paths_used", report.n_paths_used},
        {"truncated_paths", report.truncated_paths},
        {"decomposition_consistent", report.decomposition_consistent},
        {"reflection_consistent", report.reflection_consistent},
    };
}

} // namespace symlab
