#include "pooltest/json_io.hpp"

namespace pooltest {

namespace {

nlohmann::json one_based(const std::vector<std::uint32_t>& ids) {
    nlohmann::json out = nlohmann::json::array();
    for (std::uint32_t v : ids) out.push_back(v + 1);
    return out;
}

}  // namespace

nlohmann::json code_to_json(const BinaryCode& code) {
    nlohmann::json columns = nlohmann::json::array();
    for (std::size_t j = 0; j < code.cols(); ++j) columns.push_back(code.column(j).to_string());
    return {{"n_rows", code.rows()}, {"n_cols", code.cols()}, {"columns", columns}};
}

BinaryCode code_from_json(const nlohmann::json& j) {
    const std::size_t n_rows = j.at("n_rows").get<std::size_t>();
    std::vector<BitVec> columns;
    for (const auto& s : j.at("columns")) columns.push_back(BitVec::from_string(s.get<std::string>()));
    if (columns.size() != j.at("n_cols").get<std::size_t>())
        throw std::invalid_argument("n_cols disagrees with the column list");
    return BinaryCode(n_rows, std::move(columns));
}

nlohmann::json transcript_to_json(const Transcript& t) {
    nlohmann::json stages = nlohmann::json::array();
    for (const Stage& st : t.stages) {
        nlohmann::json pools = nlohmann::json::array();
        for (const Pool& p : st.pools) pools.push_back(one_based(p.members));
        nlohmann::json outcomes = nlohmann::json::array();
        for (bool o : st.outcomes) outcomes.push_back(o);
        stages.push_back({{"pools", pools}, {"outcomes", outcomes}});
    }
    return {{"stages", stages}, {"answer", one_based(t.answer)}};
}

nlohmann::json report_to_json(const RunReport& r) {
    nlohmann::json j{{"answer", one_based(r.answer)},
                     {"tests_per_stage", r.tests_per_stage},
                     {"total_tests", r.total_tests},
                     {"stages", r.stages}};
    if (!r.layer_weights.empty()) j["layer_weights"] = r.layer_weights;
    return j;
}

nlohmann::json params_to_json(const S2Params& p) {
    return {{"q", p.q},
            {"n_hat", p.n_hat},
            {"n_prime", p.n_prime},
            {"inner_weight", p.inner_weight},
            {"t", p.t}};
}

nlohmann::json bounds_to_json(const BoundReport& b) {
    nlohmann::json j{{"t", b.t},
                     {"s", b.s},
                     {"info_bound", b.info_bound},
                     {"dr82_nonadaptive", b.dr82_nonadaptive},
                     {"two_stage", b.two_stage},
                     {"note", "main terms only; lower-order corrections omitted; "
                              "two_stage is asymptotic in s"}};
    if (b.damaschke25) j["damaschke25"] = *b.damaschke25;
    return j;
}

nlohmann::json summary_to_json(const VerifySummary& s) {
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto& [total, count] : s.histogram) histogram[std::to_string(total)] = count;
    nlohmann::json j{{"runs", s.runs},
                     {"all_correct", s.all_correct},
                     {"worst_total", s.worst_total},
                     {"worst_case_set", one_based(s.worst_case_set)},
                     {"max_stages", s.max_stages},
                     {"histogram", histogram}};
    if (s.first_failure) j["first_failure"] = one_based(*s.first_failure);
    return j;
}

}  // namespace pooltest
