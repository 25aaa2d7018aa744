#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "pooltest/analysis.hpp"
#include "pooltest/json_io.hpp"
#include "pooltest/strategy_generic.hpp"
#include "pooltest/strategy_s2.hpp"

namespace {

using namespace pooltest;
using nlohmann::json;

constexpr int kExitWrong = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

// Comma-separated 1-based sample ids; empty string means no defects.
std::vector<std::uint32_t> parse_defects(const std::string& csv, std::uint64_t t) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::uint64_t v = 0;
        try {
            v = std::stoull(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("defect id is not a number: " + item);
        }
        if (v < 1 || v > t)
            throw std::invalid_argument("defect id " + item + " outside 1.." + std::to_string(t));
        out.push_back(static_cast<std::uint32_t>(v - 1));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::invalid_argument("duplicate defect id");
    return out;
}

std::vector<std::uint32_t> random_defects(std::uint64_t t, std::uint32_t s, std::mt19937& rng) {
    const std::uint32_t size = rng() % (s + 1);
    std::vector<std::uint32_t> out;
    while (out.size() < size) {
        const auto id = static_cast<std::uint32_t>(rng() % t);
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct CommonConfig {
    std::uint64_t t = 0;
    std::uint32_t s = 0;
    std::string strategy = "s2";
    std::string output = "-";
    std::uint32_t seed = 1;
    // s2 restrictions
    std::uint32_t pin_n_prime = 0;
    std::uint32_t pin_inner_weight = 0;
    std::uint32_t pin_q = 0;
    // generic code shape
    std::uint32_t code_rows = 0;
    std::uint32_t code_weight = 0;
    bool identify_all_at_stage3 = false;
};

void add_common(CLI::App* cmd, CommonConfig& c, bool with_strategy) {
    cmd->add_option("--t", c.t, "population size")->required();
    cmd->add_option("--s", c.s, "maximum number of defects")->required();
    if (with_strategy)
        cmd->add_option("--strategy", c.strategy, "strategy: s2 or generic")
            ->check(CLI::IsMember({"s2", "generic"}));
    cmd->add_option("--output", c.output, "output path, - for stdout");
    cmd->add_option("--seed", c.seed, "seed for random code and defects");
    cmd->add_option("--n-prime", c.pin_n_prime, "pin the inner code length (s2)");
    cmd->add_option("--inner-weight", c.pin_inner_weight, "pin the inner code weight (s2)");
    cmd->add_option("--q", c.pin_q, "pin the outer alphabet size (s2)");
    cmd->add_option("--code-rows", c.code_rows, "rows of the random code (generic)");
    cmd->add_option("--code-weight", c.code_weight, "column weight of the random code (generic)");
    cmd->add_flag("--identify-all-at-stage3", c.identify_all_at_stage3,
                  "generic: resolve every positive class at stage 3");
}

SelectOptions pins_of(const CommonConfig& c) {
    SelectOptions o;
    if (c.pin_n_prime) o.n_prime = c.pin_n_prime;
    if (c.pin_inner_weight) o.inner_weight = c.pin_inner_weight;
    if (c.pin_q) o.q = c.pin_q;
    return o;
}

GenericStrategy make_generic(const CommonConfig& c) {
    std::uint32_t rows = c.code_rows;
    if (rows == 0)
        rows = std::max<std::uint32_t>(
            4, static_cast<std::uint32_t>(
                   std::ceil(2.0 * c.s * std::log2(static_cast<double>(std::max<std::uint64_t>(c.t, 2))))));
    std::uint32_t weight = c.code_weight ? c.code_weight : std::max<std::uint32_t>(1, rows / 4);
    std::mt19937 rng(c.seed);
    return GenericStrategy(random_constant_weight_code(rows, c.t, weight, rng), c.s,
                           GenericOptions{c.identify_all_at_stage3});
}

json config_json(const CommonConfig& c, const char* command) {
    json j{{"schema", 1}, {"command", command}, {"t", c.t}, {"s", c.s}, {"strategy", c.strategy}};
    if (c.strategy == "generic") {
        j["seed"] = c.seed;
        j["identify_all_at_stage3"] = c.identify_all_at_stage3;
    }
    return j;
}

void check_population(std::uint64_t t) {
    if (t > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("population size exceeds the supported maximum (2^32 - 1)");
}

int cmd_run(const CommonConfig& c, const std::string& defects_csv, bool defects_given,
            bool dump_transcript, const std::string& format) {
    check_population(c.t);
    std::mt19937 rng(c.seed);
    std::vector<std::uint32_t> hidden =
        defects_given ? parse_defects(defects_csv, c.t) : random_defects(c.t, c.s, rng);
    if (hidden.size() > c.s) throw std::invalid_argument("more defects than --s allows");

    Oracle oracle(static_cast<std::uint32_t>(c.t), hidden, c.s);
    RunReport rep;
    json j = config_json(c, "run");
    if (c.strategy == "s2") {
        if (c.s != 2) throw std::invalid_argument("the s2 strategy requires --s 2");
        const S2Strategy strategy(select_params(c.t, pins_of(c)));
        j["params"] = params_to_json(strategy.params());
        j["bound"] = worst_case_bound(strategy.params());
        rep = strategy.run(oracle);
    } else {
        const GenericStrategy strategy = make_generic(c);
        j["code"] = {{"n_rows", strategy.code().rows()}, {"n_cols", strategy.code().cols()}};
        rep = strategy.run(oracle);
    }

    const bool correct = rep.answer == hidden;
    json defects = json::array();
    for (std::uint32_t d : hidden) defects.push_back(d + 1);
    j["defects"] = defects;
    j["report"] = report_to_json(rep);
    j["correct"] = correct;
    if (dump_transcript) j["transcript"] = transcript_to_json(oracle.transcript());

    if (format == "csv") {
        std::string answer;
        for (std::size_t i = 0; i < rep.answer.size(); ++i)
            answer += (i ? ";" : "") + std::to_string(rep.answer[i] + 1);
        char line[256];
        std::snprintf(line, sizeof line, "%llu,%u,%s,%d,%zu,%zu,\"%s\"\n",
                      static_cast<unsigned long long>(c.t), c.s, c.strategy.c_str(), correct ? 1 : 0,
                      rep.total_tests, rep.stages, answer.c_str());
        write_output(c.output, std::string("t,s,strategy,correct,total_tests,stages,answer\n") + line);
    } else {
        write_output(c.output, j.dump(2) + "\n");
    }
    return correct ? 0 : kExitWrong;
}

template <class Strategy>
std::pair<VerifySummary, std::string> verify_with_dump(const Strategy& strategy, std::uint32_t t,
                                                       std::uint32_t s) {
    const DefectSets sets(t, s);
    std::vector<detail::VerifyPartial> partials(1);
    std::string dump = "defects,total_tests,stages,correct\n";
    for (std::uint64_t i = 0; i < sets.count(); ++i) {
        std::vector<std::uint32_t> hidden = sets.get(i);
        Oracle oracle(t, hidden, s);
        const RunReport rep = strategy.run(oracle);
        std::string ids;
        for (std::size_t d = 0; d < hidden.size(); ++d)
            ids += (d ? ";" : "") + std::to_string(hidden[d] + 1);
        dump += "\"" + ids + "\"," + std::to_string(rep.total_tests) + "," +
                std::to_string(rep.stages) + "," + (rep.answer == hidden ? "1" : "0") + "\n";
        auto& p = partials[0];
        if (rep.answer != hidden) {
            p.all_correct = false;
            if (!p.first_failure || hidden < *p.first_failure) p.first_failure = hidden;
        }
        if (!p.has_worst || rep.total_tests > p.worst_total ||
            (rep.total_tests == p.worst_total && hidden < p.worst_set)) {
            p.worst_total = rep.total_tests;
            p.worst_set = hidden;
            p.has_worst = true;
        }
        p.max_stages = std::max(p.max_stages, rep.stages);
        ++p.histogram[rep.total_tests];
    }
    return {detail::finish(partials, sets.count()), std::move(dump)};
}

int cmd_verify(const CommonConfig& c, bool serial, const std::string& full_dump) {
    check_population(c.t);
    json j = config_json(c, "verify");
    j["parallel"] = !serial;

    VerifySummary summary;
    std::string dump;
    bool bound_ok = true;
    if (c.strategy == "s2") {
        if (c.s != 2) throw std::invalid_argument("the s2 strategy requires --s 2");
        const S2Strategy strategy(select_params(c.t, pins_of(c)));
        j["params"] = params_to_json(strategy.params());
        const std::uint64_t bound = worst_case_bound(strategy.params());
        j["bound"] = bound;
        if (!full_dump.empty()) {
            std::tie(summary, dump) = verify_with_dump(strategy, static_cast<std::uint32_t>(c.t), c.s);
        } else {
            summary = verify_exhaustive(strategy, static_cast<std::uint32_t>(c.t), c.s, !serial);
        }
        bound_ok = summary.worst_total <= bound;
        j["bound_satisfied"] = bound_ok;
    } else {
        const GenericStrategy strategy = make_generic(c);
        j["code"] = {{"n_rows", strategy.code().rows()}, {"n_cols", strategy.code().cols()}};
        if (!full_dump.empty()) {
            std::tie(summary, dump) = verify_with_dump(strategy, static_cast<std::uint32_t>(c.t), c.s);
        } else {
            summary = verify_exhaustive(strategy, static_cast<std::uint32_t>(c.t), c.s, !serial);
        }
    }
    j["summary"] = summary_to_json(summary);
    if (!full_dump.empty()) write_output(full_dump, dump);
    write_output(c.output, j.dump(2) + "\n");
    return summary.all_correct && bound_ok ? 0 : kExitWrong;
}

int cmd_sweep(const CommonConfig& c, const std::string& t_list) {
    std::vector<std::uint64_t> ts;
    std::stringstream ss(t_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            ts.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("population size is not a number: " + item);
        }
    }
    if (ts.empty()) throw std::invalid_argument("--t-list needs at least one population size");

    std::string csv = "t,log2t,bound,bound/log2t,info_bound,dr82,two_stage,damaschke25\n";
    for (std::uint64_t t : ts) {
        const S2Params p = select_params(t, pins_of(c));
        const std::uint64_t bound = worst_case_bound(p);
        const BoundReport b = reference_bounds(t, 2);
        const double log2t = std::log2(static_cast<double>(t));
        char line[320];
        std::snprintf(line, sizeof line, "%llu,%.6f,%llu,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      static_cast<unsigned long long>(t), log2t,
                      static_cast<unsigned long long>(bound), bound / log2t, b.info_bound,
                      b.dr82_nonadaptive, b.two_stage, *b.damaschke25);
        csv += line;
    }
    write_output(c.output, csv);
    return 0;
}

int cmd_bounds(const CommonConfig& c) {
    json j = config_json(c, "bounds");
    j.erase("strategy");
    j.update(bounds_to_json(reference_bounds(c.t, c.s)));
    write_output(c.output, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multistage group testing: strategies, exhaustive verification, bounds"};
    app.require_subcommand(1);

    CommonConfig run_cfg, verify_cfg, sweep_cfg, bounds_cfg;
    std::string defects_csv, full_dump, format = "json", t_list;
    bool dump_transcript = false, serial = false;

    CLI::App* run = app.add_subcommand("run", "run one strategy against one defect set");
    add_common(run, run_cfg, true);
    CLI::Option* defects_opt =
        run->add_option("--defects", defects_csv, "comma-separated 1-based defect ids");
    run->add_flag("--dump-transcript", dump_transcript, "include the full pool transcript");
    run->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

    CLI::App* verify = app.add_subcommand("verify", "run a strategy on every defect set of size <= s");
    add_common(verify, verify_cfg, true);
    verify->add_flag("--serial", serial, "disable the parallel verification path");
    verify->add_option("--full-dump", full_dump, "write per-set CSV rows to this path");

    CLI::App* sweep = app.add_subcommand("sweep", "optimized bound against references, CSV per t");
    sweep->add_option("--t-list", t_list, "comma-separated population sizes")->required();
    sweep->add_option("--output", sweep_cfg.output, "output path, - for stdout");
    sweep->add_option("--n-prime", sweep_cfg.pin_n_prime, "pin the inner code length");
    sweep->add_option("--inner-weight", sweep_cfg.pin_inner_weight, "pin the inner code weight");
    sweep->add_option("--q", sweep_cfg.pin_q, "pin the outer alphabet size");

    CLI::App* bounds = app.add_subcommand("bounds", "reference test-count formulas for one (t, s)");
    bounds->add_option("--t", bounds_cfg.t, "population size")->required();
    bounds->add_option("--s", bounds_cfg.s, "maximum number of defects")->required();
    bounds->add_option("--output", bounds_cfg.output, "output path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (run->parsed())
            return cmd_run(run_cfg, defects_csv, defects_opt->count() > 0, dump_transcript, format);
        if (verify->parsed()) return cmd_verify(verify_cfg, serial, full_dump);
        if (sweep->parsed()) return cmd_sweep(sweep_cfg, t_list);
        return cmd_bounds(bounds_cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
