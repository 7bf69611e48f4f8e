// Acceptance run: one PASS/FAIL line per criterion. Values are compared
// exactly; the only tolerances are the time budgets below.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "wordeq/campaign.hpp"
#include "wordeq/normal_form.hpp"
#include "wordeq/reduction.hpp"
#include "wordeq/solver.hpp"
#include "wordeq/threevar.hpp"

using namespace wordeq;

namespace {

constexpr double kGoldenBudgetSeconds = 1.0;
constexpr double kSearchBudgetSeconds = 1800.0;

const char* kThree = "X aXb X aabb ab aXb abaabbab = abaabbab aXb ab aabb X aXb X";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int number, const std::string& title, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " (" << detail << ")"
              << std::endl;
    failures += pass ? 0 : 1;
}

Alphabet unit() { return Alphabet::parse("a=1,b=-1"); }

void golden_solution_sets() {
    const auto start = Clock::now();
    bool ok = classify(parse_equation("Xab = abX")) == SolutionSet::family("", "ab");
    ok = ok && classify(parse_equation("XaXbab = abaXbX")) == SolutionSet::finite({"", "ab"});
    ok = ok && classify(parse_equation("XXbaaba = aabaXbX")) == SolutionSet::finite({"a", "aaba"});
    ok = ok && classify(parse_equation(kThree)) == SolutionSet::finite({"", "ab", "abaabbab"});
    const auto elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "4 equations, " << elapsed << " s, budget " << kGoldenBudgetSeconds << " s";
    report(1, "golden solution sets", ok && elapsed < kGoldenBudgetSeconds, detail.str());
}

void prefix_sum_numerics() {
    const auto abc = Alphabet::parse("a=1,b=2,c=-3");
    const auto fig = Alphabet::parse("a=1,b=-2");
    const auto sums = psw("bbcaac", abc);
    PrefixSumWord expected;
    for (int v : {2, 4, 1, 2, 3, 0}) {
        expected.emplace_back(v);
    }
    bool ok = sums == expected;
    ok = ok && *std::max_element(sums.begin(), sums.end()) == Rational(4);
    ok = ok && *std::min_element(sums.begin(), sums.end()) == Rational(0);
    const Word w = "aaabbaa";
    ok = ok && w.size() == 7 && word_sum(w, fig) == Rational(1);
    ok = ok && height(w, fig) == Height(Rational(3)) && area(w, fig) == Rational(7);
    report(2, "prefix sums, height and area", ok, "psw(bbcaac), aaabbaa");
}

void height_example() {
    const auto e = align(parse_equation(kThree));
    const auto a = height_analysis(e, unit());
    bool ok = a.h == Rational(1) && a.i == 3 && a.j == 0 && a.k == 2 && a.l == 1;
    ok = ok && a.phi_u == "aa" && a.phi_v == "abaa";
    ok = ok && highest_prefix("ab", unit()) == "a" && highest_prefix("abaabbab", unit()) == "abaa";
    ok = ok && height("", unit()).is_bottom() && height("ab", unit()) == Height(Rational(1)) &&
         height("abaabbab", unit()) == Height(Rational(2));
    report(3, "height analysis of the three-solution equation", ok, a.to_json().dump());
}

std::uint64_t violated(const CampaignReport& r, const std::string& check) {
    auto it = r.checks.find(check);
    return it == r.checks.end() ? 0 : it->second.violated;
}

std::uint64_t tested(const CampaignReport& r, const std::string& check) {
    auto it = r.checks.find(check);
    return it == r.checks.end() ? 0 : it->second.holds + it->second.violated;
}

CampaignReport campaign_criteria(std::size_t workers) {
    CampaignConfig config;
    config.workers = workers;
    const auto start = Clock::now();
    const auto r = run_campaign(config);
    const auto elapsed = seconds_since(start);

    {
        std::ostringstream detail;
        detail << r.instances << " instances, max finite size " << r.max_finite_size << ", oracle "
               << r.oracle_checked << " checked / " << r.oracle_disagreements << " disagreements, " << elapsed
               << " s with " << workers << " workers";
        const bool ok = r.instances == r.all_words + r.finite + r.infinite && r.instances > 0 &&
                        r.max_finite_size <= 3 && r.oracle_checked == r.instances && r.oracle_disagreements == 0 &&
                        violated(r, "nested solutions") == 0;
        report(4, "exhaustive classification with brute-force oracle", ok, detail.str());
    }
    {
        const char* suites[] = {"zero-sum solutions",  "area identity (random words)", "prefix sum permutation",
                                "height",              "cut",
                                "compression (minimal zero-sum)", "compression (blocks of 2)",
                                "compression (blocks of 3)",      "empty solution (abelian)",
                                "cut index",           "periodic cut index"};
        bool ok = true;
        std::ostringstream detail;
        for (const char* name : suites) {
            ok = ok && violated(r, name) == 0;
            detail << name << " " << tested(r, name) << "; ";
        }
        for (const auto& w : r.warnings()) {
            std::cout << "      warning: " << w << std::endl;
        }
        detail << "violations " << r.violation_count;
        report(5, "lemma suites", ok && r.ok(), detail.str());
    }
    {
        std::ostringstream detail;
        detail << tested(r, "normal form") << " instances, " << violated(r, "normal form") << " violations; shift "
               << violated(r, "shift to empty solution") << " violations";
        const bool ok = tested(r, "normal form") > 0 && violated(r, "normal form") == 0 &&
                        violated(r, "shift to empty solution") == 0;
        report(6, "normal form conditions and length bound", ok, detail.str());
    }
    return r;
}

void chain_criterion(const CampaignReport& r) {
    {
        // A synthetic instance that runs through every step.
        const auto e = align(parse_equation("XabXaba = abaXbaX"));
        const auto chain = build_reduction_chain({e, "aba", Alphabet::parse("a=1,b=-2")});
        bool steps = true;
        for (const char* label : {"E2", "E3", "E4", "E5"}) {
            steps = steps && chain.reached(label);
        }
        const auto zero = build_reduction_chain({align(parse_equation("Xabab = ababX")), "ab", unit()});
        steps = steps && zero.reached("E2") && zero.steps.at(1).certificate["lemma"] == "code compression";

        std::ostringstream detail;
        detail << tested(r, "reduction chain") << " chains, " << r.chain_completed
               << " completed on ineligible inputs, " << violated(r, "reduction chain")
               << " completed on eligible inputs; steps";
        for (const auto& [label, count] : r.chain_steps) {
            detail << " " << label << "=" << count;
        }
        detail << "; synthetic E2-E5 " << (steps ? "reached" : "missed");
        report(8, "reduction chain never completes on an eligible input", steps && violated(r, "reduction chain") == 0,
               detail.str());
    }
}

void three_variable(std::size_t workers) {
    const EquationSystem example = {parse_constant_free("XYZ = ZYX"), parse_constant_free("XYYZ = ZYYX")};
    const auto cert = independence_check(example, 6);
    const Morphism w0{{"a", "b", "abba"}};
    const Morphism w1{{"a", "b", "aba"}};
    const bool exact = cert.independent() && cert.witnesses.size() == 2 && cert.witnesses[0] == w0 &&
                       cert.witnesses[1] == w1 && cert.nonperiodic_solution.has_value();

    SearchConfig config;
    config.max_equation_length = 8;
    config.image_bound = 6;
    config.max_system_size = 3;
    config.workers = workers;
    const auto start = Clock::now();
    const auto search = search_independent_systems(config);
    const auto elapsed = seconds_since(start);
    if (search.beyond_two()) {
        std::cout << search.to_json().dump(2) << std::endl;
    }
    std::ostringstream detail;
    detail << "witnesses " << (exact ? "(a,b,abba) (a,b,aba)" : "differ") << ", size-2 systems "
           << search.counts.at(2) << ", max size " << search.max_size << ", reference pair "
           << (search.reference_pair_found ? "found" : "missing") << ", " << elapsed << " s, budget "
           << kSearchBudgetSeconds << " s";
    const bool ok = exact && search.max_size == 2 && search.counts.at(2) > 0 && search.reference_pair_found &&
                    elapsed < kSearchBudgetSeconds;
    report(7, "three-variable independent systems", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--workers") {
            workers = std::strtoul(argv[i + 1], nullptr, 10);
        }
    }
    golden_solution_sets();
    prefix_sum_numerics();
    height_example();
    const auto campaign = campaign_criteria(workers);
    three_variable(workers);
    chain_criterion(campaign);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
