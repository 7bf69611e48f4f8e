// wordeq: solve and classify one-variable word equations, run the lemma
// campaigns and the three-variable independence search.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wordeq/campaign.hpp"
#include "wordeq/equation_file.hpp"
#include "wordeq/normal_form.hpp"
#include "wordeq/oracle.hpp"
#include "wordeq/reduction.hpp"
#include "wordeq/solver.hpp"
#include "wordeq/threevar.hpp"

using namespace wordeq;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;

struct Options {
    std::string file;
    bool json_output = false;
    std::optional<std::size_t> max_len;
    bool oracle = false;
    std::size_t brute_force_bound = 8;
    CampaignConfig campaign;
    SearchConfig search;
    std::string output;
};

void write_output(const std::string& path, const json& j) {
    if (path.empty()) {
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

// Prints one value, or an array when the file held several equations.
void emit(const std::vector<json>& items) {
    if (items.size() == 1) {
        std::cout << items.front().dump() << '\n';
    } else {
        std::cout << json(items).dump() << '\n';
    }
}

std::string oracle_letters(const OneVarEquation& eq) {
    auto letters = eq.constants();
    return letters.empty() ? std::string("ab") : letters;
}

std::string describe_members(const SolutionSet& set) {
    if (set.kind() != SolutionSet::Kind::infinite) {
        return set.describe();
    }
    std::string out = set.describe() + ": ";
    const auto members = set.members_up_to(set.p().size() + 3 * (set.p().size() + set.q().size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
        out += (i ? ", " : "") + (members[i].empty() ? std::string("ε") : members[i]);
    }
    return out + ", ...";
}

int run_solve(const Options& opt, bool full_list) {
    const auto file = load_equation_file(opt.file);
    int status = kOk;
    std::vector<json> items;
    for (const auto& [line, eq] : file.equations) {
        const auto set = classify(eq, opt.max_len);
        if (exceeds_three_bound(set)) {
            std::cerr << "CONJECTURE-VIOLATION: line " << line << ": " << eq.to_string() << " has finite solution set "
                      << set.describe() << '\n';
            status = kViolation;
        }
        if (opt.oracle) {
            const auto brute = brute_force_solutions(eq, oracle_letters(eq), opt.brute_force_bound);
            bool agree = true;
            for (const auto& x : brute) {
                agree = agree && set.contains(x);
            }
            if (set.kind() != SolutionSet::Kind::all) {
                std::size_t expected = 0;
                for (const auto& x : set.kind() == SolutionSet::Kind::finite ? set.solutions()
                                                                             : set.members_up_to(opt.brute_force_bound)) {
                    expected += x.size() <= opt.brute_force_bound ? 1 : 0;
                }
                agree = agree && expected == brute.size();
            }
            if (!agree) {
                std::cerr << "ORACLE-DISAGREEMENT: line " << line << ": " << eq.to_string() << '\n';
                status = kViolation;
            }
        }
        if (opt.json_output) {
            items.push_back(set.to_json());
        } else {
            std::cout << eq.to_string() << "  :  " << (full_list ? describe_members(set) : set.describe()) << '\n';
        }
    }
    if (opt.json_output) {
        emit(items);
    }
    return status;
}

struct Prepared {
    AlignedEquation shifted;
    Word shift;
    NormalFormResult normal;
};

// Shift so that the empty word solves, then normalize with the shortest
// nonempty solution as witness.
std::optional<Prepared> prepare(const OneVarEquation& eq, const std::optional<Alphabet>& valuation,
                                std::string& reason) {
    if (eq.is_trivial()) {
        reason = "trivial equation";
        return std::nullopt;
    }
    AlignedEquation aligned = [&] { return align(eq); }();
    const auto set = classify(aligned);
    const auto sample = solution_sample(set, 2);
    if (sample.size() < 2) {
        reason = "fewer than two solutions";
        return std::nullopt;
    }
    const auto shifted = shift_to_empty(aligned, sample.front());
    const auto witness = nonempty_sample(classify(shifted), 1).at(0);
    const Alphabet start = valuation ? *valuation : Alphabet::with_default_values(aligned.constants());
    return Prepared{shifted, sample.front(), to_normal_form(shifted, witness, start)};
}

int run_normalize(const Options& opt) {
    const auto file = load_equation_file(opt.file);
    std::vector<json> items;
    for (const auto& [line, eq] : file.equations) {
        std::string reason;
        std::optional<Prepared> prepared;
        try {
            prepared = prepare(eq, file.valuation, reason);
        } catch (const AlignError& e) {
            reason = e.what();
        }
        if (!prepared) {
            if (opt.json_output) {
                items.push_back({{"input", eq.to_string()}, {"error", reason}});
            } else {
                std::cout << eq.to_string() << "  :  not normalizable (" << reason << ")\n";
            }
            continue;
        }
        const auto& nf = prepared->normal.equation;
        const auto report = check_normal_form(nf.base, nf.witness, nf.valuation);
        if (opt.json_output) {
            auto j = prepared->normal.to_json();
            j["input"] = eq.to_string();
            j["shift"] = prepared->shift;
            j["conditions"] = {{"N1", report.n1}, {"N2", report.n2}, {"N3", report.n3}};
            items.push_back(j);
        } else {
            std::cout << eq.to_string() << '\n';
            if (!prepared->shift.empty()) {
                std::cout << "  shifted by " << prepared->shift << ": " << prepared->shifted.to_string() << '\n';
            }
            for (const auto& step : prepared->normal.log) {
                std::cout << "  " << to_string(step.rule) << " @" << step.index << ": " << step.result.to_string()
                          << '\n';
            }
            std::cout << "  normal form: " << nf.base.to_string() << "   witness " << nf.witness << "   values "
                      << nf.valuation.to_string() << "   N1 " << report.n1 << " N2 " << report.n2 << " N3 "
                      << report.n3 << '\n';
        }
    }
    if (opt.json_output) {
        emit(items);
    }
    return kOk;
}

int run_reduce(const Options& opt) {
    const auto file = load_equation_file(opt.file);
    int status = kOk;
    std::vector<json> items;
    for (const auto& [line, eq] : file.equations) {
        std::string reason;
        std::optional<Prepared> prepared;
        try {
            prepared = prepare(eq, file.valuation, reason);
        } catch (const AlignError& e) {
            reason = e.what();
        }
        if (!prepared) {
            items.push_back({{"input", eq.to_string()}, {"verdict", "chain not applicable: " + reason}});
            continue;
        }
        const auto chain = build_reduction_chain(prepared->normal.equation);
        auto j = chain.to_json();
        j["input"] = eq.to_string();
        j["normal_form"] = prepared->normal.equation.base.to_string();
        j["valuation"] = prepared->normal.equation.valuation.to_string();
        items.push_back(j);
        if (chain.violation) {
            std::cerr << "CONJECTURE-VIOLATION: line " << line << ": reduction chain completed\n";
            status = kViolation;
        }
    }
    emit(items);
    return status;
}

int run_campaign_command(const Options& opt, bool oracle) {
    CampaignConfig config = opt.campaign;
    config.run_oracle = oracle;
    const auto start = std::chrono::steady_clock::now();
    const auto report = run_campaign(config);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const auto j = report.to_json();
    write_output(opt.output, j);
    if (opt.json_output) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "instances: " << report.instances << " (all " << report.all_words << ", finite " << report.finite
                  << ", infinite " << report.infinite << ")\n";
        if (oracle) {
            std::cout << "oracle: " << report.oracle_checked << " checked, " << report.oracle_disagreements
                      << " disagreements\n";
        }
        for (const auto& [name, tally] : report.checks) {
            std::cout << "  " << name << ": " << tally.holds << " tested, " << tally.not_applicable
                      << " not applicable, " << tally.violated << " violated\n";
        }
        for (const auto& [verdict, count] : report.chain_verdicts) {
            std::cout << "  chain verdict '" << verdict << "': " << count << '\n';
        }
        for (const auto& w : report.warnings()) {
            std::cout << "warning: " << w << '\n';
        }
        for (const auto& v : report.violations) {
            std::cout << "VIOLATION #" << v.instance << " [" << v.check << "] " << v.equation << ": " << v.detail
                      << '\n';
        }
        std::cout << report.summary() << '\n';
    }
    std::cerr << "workers: " << config.workers << ", wall-clock: " << elapsed.count() << " s\n";
    return report.ok() ? kOk : kViolation;
}

int run_search(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    const auto report = search_independent_systems(opt.search);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const auto j = report.to_json();
    write_output(opt.output, j);
    if (opt.json_output) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "equations: " << report.equations << ", morphisms: " << report.morphisms
                  << ", solution classes: " << report.classes << " (" << report.nonperiodic_classes
                  << " with a nonperiodic solution)\n";
        for (std::size_t s = 1; s < report.counts.size(); ++s) {
            std::cout << "  independent systems of size " << s << " with a common nonperiodic solution: "
                      << report.counts[s] << '\n';
        }
        std::cout << "  independent pairs with periodic common solutions only: " << report.periodic_only_pairs << '\n';
        std::cout << "  (XYZ, ZYX), (XYYZ, ZYYX) found: " << (report.reference_pair_found ? "yes" : "no") << '\n';
        for (const auto& found : report.largest_examples) {
            std::cout << "  example:";
            for (const auto& e : found.equations) {
                std::cout << "  " << e.to_string() << ";";
            }
            std::cout << "  " << found.certificate.status() << '\n';
        }
        std::cout << "max independent size found: " << report.max_size << '\n';
    }
    if (report.beyond_seventeen()) {
        std::cerr << "VIOLATION: independent system with a nonperiodic solution of size " << report.max_size << '\n';
    } else if (report.beyond_two()) {
        std::cerr << "CONJECTURE-VIOLATION: independent system with a nonperiodic solution of size "
                  << report.max_size << '\n';
    }
    std::cerr << "workers: " << opt.search.workers << ", wall-clock: " << elapsed.count() << " s\n";
    return report.beyond_two() ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-variable word equations: solving, normal forms, lemma campaigns"};
    app.require_subcommand(1);
    Options opt;

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "equation file")->required()->check(CLI::ExistingFile);
        sub->add_flag("--json", opt.json_output, "JSON output");
    };
    auto* solve = app.add_subcommand("solve", "list the solutions of each equation");
    auto* classify_cmd = app.add_subcommand("classify", "classify the solution set of each equation");
    for (auto* sub : {solve, classify_cmd}) {
        add_file(sub);
        sub->add_option("--max-len", opt.max_len, "enumeration bound (default: token count)");
        sub->add_flag("--oracle", opt.oracle, "cross-check against brute force");
        sub->add_option("--brute-force-bound", opt.brute_force_bound, "brute force word length")->check(CLI::PositiveNumber);
    }
    auto* normalize = app.add_subcommand("normalize", "shift and rewrite into normal form");
    add_file(normalize);
    auto* reduce = app.add_subcommand("reduce", "run the reduction chain (JSON)");
    add_file(reduce);

    auto* exhaustive = app.add_subcommand("exhaustive", "classify every small equation and cross-check");
    auto* check_lemmas = app.add_subcommand("check-lemmas", "run the lemma suites over every small equation");
    for (auto* sub : {exhaustive, check_lemmas}) {
        sub->add_option("--alphabet", opt.campaign.alphabet_size, "number of constant letters")->check(CLI::Range(1, 23));
        sub->add_option("--max-const-len", opt.campaign.max_const_len, "constants per side")->check(CLI::PositiveNumber);
        sub->add_option("--occurrences", opt.campaign.occurrences, "max X per side")->check(CLI::PositiveNumber);
        sub->add_option("--brute-force-bound", opt.campaign.brute_force_bound, "oracle word length")
            ->check(CLI::PositiveNumber);
        sub->add_option("--workers", opt.campaign.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.campaign.seed, "seed for the random spot checks");
        sub->add_option("--limit", opt.campaign.limit, "stop after this many instances");
        sub->add_option("--output", opt.output, "write the JSON report here");
        sub->add_flag("--json", opt.json_output, "print the JSON report");
    }
    exhaustive->add_flag("--no-lemmas", [&](std::int64_t) { opt.campaign.run_lemmas = false; }, "classification only");

    auto* search = app.add_subcommand("search-3var", "search independent three-variable systems");
    search->add_option("--max-eq-len", opt.search.max_equation_length, "|U| + |V| bound")->check(CLI::PositiveNumber);
    search->add_option("--max-size", opt.search.max_system_size, "largest system size")->check(CLI::PositiveNumber);
    search->add_option("--image-len", opt.search.image_bound, "total image length bound");
    search->add_option("--workers", opt.search.workers, "worker threads")->check(CLI::PositiveNumber);
    search->add_option("--output", opt.output, "write the JSON report here");
    search->add_flag("--json", opt.json_output, "print the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (solve->parsed()) {
            return run_solve(opt, true);
        }
        if (classify_cmd->parsed()) {
            return run_solve(opt, false);
        }
        if (normalize->parsed()) {
            return run_normalize(opt);
        }
        if (reduce->parsed()) {
            return run_reduce(opt);
        }
        if (exhaustive->parsed()) {
            return run_campaign_command(opt, true);
        }
        if (check_lemmas->parsed()) {
            return run_campaign_command(opt, false);
        }
        if (search->parsed()) {
            return run_search(opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
