#include "wordeq/campaign.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>

#include "wordeq/normal_form.hpp"
#include "wordeq/oracle.hpp"
#include "wordeq/reduction.hpp"
#include "wordeq/solver.hpp"

namespace wordeq {

namespace {

constexpr std::size_t kKeptViolations = 50;

// Members of `set` of length <= bound, shortlex ordered.
std::vector<Word> members_within(const SolutionSet& set, std::size_t bound) {
    if (set.is_finite()) {
        std::vector<Word> out;
        for (const auto& w : set.solutions()) {
            if (w.size() <= bound) {
                out.push_back(w);
            }
        }
        return out;
    }
    return set.members_up_to(bound);
}

std::uint64_t word_count(std::size_t letters, std::size_t max_len) {
    std::uint64_t total = 0;
    std::uint64_t layer = 1;
    for (std::size_t len = 0; len <= max_len; ++len) {
        total += layer;
        layer *= letters;
    }
    return total;
}

class Examiner {
public:
    Examiner(const CampaignConfig& config, CampaignReport& out)
        : config_(config), out_(out), letters_(std::string("abcdefghijklmnopqrstuvw").substr(0, config.alphabet_size)) {}

    void examine(std::uint64_t index, const OneVarEquation& eq) {
        index_ = index;
        eq_ = &eq;
        ++out_.instances;
        try {
            run(eq);
        } catch (const std::exception& e) {
            violation("exception", e.what());
        }
    }

private:
    void violation(const std::string& check, const std::string& detail) {
        ++out_.violation_count;
        if (out_.violations.size() < kKeptViolations) {
            out_.violations.push_back({index_, eq_->to_string(), check, detail});
        }
    }

    void record(const std::string& name, const LemmaCheck& result) {
        auto& tally = out_.checks[name];
        switch (result.outcome) {
            case Outcome::holds:
                ++tally.holds;
                break;
            case Outcome::not_applicable:
                ++tally.not_applicable;
                break;
            case Outcome::violated:
                ++tally.violated;
                violation(name, result.detail);
                break;
        }
    }

    void run(const OneVarEquation& eq) {
        const SolutionSet set = classify(eq);
        switch (set.kind()) {
            case SolutionSet::Kind::all:
                ++out_.all_words;
                break;
            case SolutionSet::Kind::finite:
                ++out_.finite;
                ++out_.finite_sizes[set.solutions().size()];
                out_.max_finite_size = std::max(out_.max_finite_size, set.solutions().size());
                if (exceeds_three_bound(set)) {
                    violation("at most three solutions", "finite set " + set.describe());
                }
                break;
            case SolutionSet::Kind::infinite:
                ++out_.infinite;
                break;
        }
        if (config_.run_oracle) {
            check_oracle(eq, set);
        }
        if (set.kind() != SolutionSet::Kind::all) {
            record("nested solutions", nested(set));
        }
        if (config_.run_lemmas && !eq.is_trivial() && eq.lhs_occurrences() == eq.rhs_occurrences() &&
            eq.lhs_occurrences() > 0 && eq.lhs.size() == eq.rhs.size()) {
            lemma_suites(align(eq), set);
        }
    }

    void check_oracle(const OneVarEquation& eq, const SolutionSet& set) {
        ++out_.oracle_checked;
        const auto brute = brute_force_solutions(eq, letters_, config_.brute_force_bound);
        bool agree = false;
        if (set.kind() == SolutionSet::Kind::all) {
            agree = brute.size() == word_count(letters_.size(), config_.brute_force_bound);
        } else {
            agree = brute == members_within(set, config_.brute_force_bound);
        }
        if (!agree) {
            ++out_.oracle_disagreements;
            violation("oracle", "classified " + set.describe() + ", brute force found " + std::to_string(brute.size()) +
                                    " solutions");
        }
    }

    static LemmaCheck nested(const SolutionSet& set) {
        const auto sample = solution_sample(set, 4);
        if (sample.size() < 2) {
            return LemmaCheck::skip("fewer than two solutions");
        }
        for (std::size_t i = 0; i + 1 < sample.size(); ++i) {
            if (!is_prefix(sample[i], sample[i + 1]) || !is_suffix(sample[i], sample[i + 1])) {
                return LemmaCheck::violated("'" + sample[i] + "' is not a prefix and suffix of '" + sample[i + 1] + "'");
            }
        }
        return LemmaCheck::holds();
    }

    void lemma_suites(const AlignedEquation& aligned, const SolutionSet& set) {
        record("empty solution (abelian)", check_empty_solution_lemma(aligned, set));
        record("cut", check_cut_lemma(aligned, set));

        const auto sample = solution_sample(set, 4);
        if (sample.size() < 2) {
            return;
        }
        const Word& x0 = sample.front();
        const auto shifted = shift_to_empty(aligned, x0);
        const auto shifted_set = classify(shifted);
        record("shift to empty solution", check_shift(set, shifted_set, x0));

        const Word witness = nonempty_sample(shifted_set, 1).at(0);
        const auto normal = to_normal_form(shifted, witness);
        record("normal form", check_normal(shifted, shifted_set, normal));

        const auto& e = normal.equation;
        record("zero-sum solutions", check_zero_sum_solutions(e, shifted_set));
        record("area identity (random words)", random_area_identity(e));
        record("prefix sum permutation", check_prefix_permutation(e.base, shifted_set, e.valuation));
        record("height", check_height_lemma(e, shifted_set));
        record("compression (minimal zero-sum)",
               check_compression(e.base, shifted_set, CodeSpec::minimal_zero_sum(), e.valuation));
        record("compression (blocks of 2)", check_compression(e.base, shifted_set, CodeSpec::blocks(2)));
        record("compression (blocks of 3)", check_compression(e.base, shifted_set, CodeSpec::blocks(3)));
        record("cut", check_cut_lemma(e.base, shifted_set));
        record("cut index", check_cut_index_lemma(e, shifted_set));
        record("periodic cut index", check_periodic_cut_lemma(e.base, shifted_set));
        record("empty solution (abelian)", check_empty_solution_lemma(e.base, shifted_set));

        const auto chain = build_reduction_chain(e, shifted_set);
        for (const auto& step : chain.steps) {
            ++out_.chain_steps[step.label];
        }
        if (chain.completed) {
            ++out_.chain_completed;
        }
        ++out_.chain_verdicts[chain.verdict ? *chain.verdict : "no verdict"];
        record("reduction chain", chain.violation ? LemmaCheck::violated("chain completed on a finite set with " +
                                                                         std::string("three or more nonempty solutions"))
                                                  : LemmaCheck::holds());
    }

    static LemmaCheck check_shift(const SolutionSet& set, const SolutionSet& shifted, const Word& x0) {
        for (const auto& x : members_within(set, 16)) {
            if (!shifted.contains(x.substr(x0.size()))) {
                return LemmaCheck::violated("shifted set misses '" + x.substr(x0.size()) + "'");
            }
        }
        for (const auto& y : members_within(shifted, 16)) {
            if (!set.contains(x0 + y)) {
                return LemmaCheck::violated("shifted set has extra '" + y + "'");
            }
        }
        if (set.is_finite() != shifted.is_finite() ||
            (set.is_finite() && set.solutions().size() != shifted.solutions().size())) {
            return LemmaCheck::violated("solution count changed");
        }
        return LemmaCheck::holds();
    }

    static LemmaCheck check_normal(const AlignedEquation& input, const SolutionSet& input_set,
                                   const NormalFormResult& normal) {
        const auto& e = normal.equation;
        const auto report = check_normal_form(e.base, e.witness, e.valuation);
        if (!report.all()) {
            return LemmaCheck::violated("conditions N1/N2/N3 = " + std::to_string(report.n1) +
                                        std::to_string(report.n2) + std::to_string(report.n3));
        }
        if (e.base.length() > input.length()) {
            return LemmaCheck::violated("normal form is longer than its input");
        }
        std::size_t length = input.length();
        std::size_t dominated = first_non_dominated(input);
        for (const auto& step : normal.log) {
            const auto next_length = step.result.length();
            const auto next_dominated = first_non_dominated(step.result);
            const bool shortens = next_length < length;
            switch (step.rule) {
                case RewriteStep::Rule::merge:
                case RewriteStep::Rule::overlap:
                    if (!shortens) {
                        return LemmaCheck::violated(to_string(step.rule) + " did not shorten");
                    }
                    break;
                case RewriteStep::Rule::rotate:
                    if (next_length != length || next_dominated <= dominated) {
                        return LemmaCheck::violated("rotate did not advance the first violating index");
                    }
                    break;
                case RewriteStep::Rule::swap:
                    if (next_length != length) {
                        return LemmaCheck::violated("swap changed the length");
                    }
                    break;
            }
            length = next_length;
            dominated = next_dominated;
        }
        if (!(classify(e.base) == input_set)) {
            return LemmaCheck::violated("normal form changed the solution set");
        }
        return LemmaCheck::holds();
    }

    LemmaCheck random_area_identity(const NormalFormEquation& e) {
        std::mt19937_64 rng(config_.seed ^ (index_ * 0x9E3779B97F4A7C15ULL));
        std::uniform_int_distribution<std::size_t> len_dist(0, 6);
        std::uniform_int_distribution<std::size_t> letter_dist(0, letters_.size() - 1);
        const auto valuation = e.valuation.extended_by(letters_);
        for (int trial = 0; trial < 3; ++trial) {
            Word x(len_dist(rng), 'a');
            for (auto& c : x) {
                c = letters_[letter_dist(rng)];
            }
            if (area_difference(e.base, x, valuation) != area_identity_residual(e.base, x, valuation)) {
                return LemmaCheck::violated("area identity fails for '" + x + "'");
            }
        }
        return LemmaCheck::holds();
    }

    const CampaignConfig& config_;
    CampaignReport& out_;
    std::string letters_;
    std::uint64_t index_ = 0;
    const OneVarEquation* eq_ = nullptr;
};

void merge_into(CampaignReport& total, const CampaignReport& part) {
    total.instances += part.instances;
    total.all_words += part.all_words;
    total.finite += part.finite;
    total.infinite += part.infinite;
    for (const auto& [size, count] : part.finite_sizes) {
        total.finite_sizes[size] += count;
    }
    total.max_finite_size = std::max(total.max_finite_size, part.max_finite_size);
    total.oracle_checked += part.oracle_checked;
    total.oracle_disagreements += part.oracle_disagreements;
    for (const auto& [name, tally] : part.checks) {
        auto& t = total.checks[name];
        t.holds += tally.holds;
        t.not_applicable += tally.not_applicable;
        t.violated += tally.violated;
    }
    for (const auto& [verdict, count] : part.chain_verdicts) {
        total.chain_verdicts[verdict] += count;
    }
    for (const auto& [label, count] : part.chain_steps) {
        total.chain_steps[label] += count;
    }
    total.chain_completed += part.chain_completed;
    total.violation_count += part.violation_count;
    total.violations.insert(total.violations.end(), part.violations.begin(), part.violations.end());
}

}  // namespace

void CampaignConfig::validate() const {
    if (alphabet_size == 0 || alphabet_size > 23) {
        throw std::invalid_argument("alphabet size must be between 1 and 23");
    }
    if (max_const_len == 0 || occurrences == 0 || brute_force_bound == 0 || workers == 0) {
        throw std::invalid_argument("campaign bounds and worker count must be positive");
    }
}

nlohmann::json CampaignConfig::to_json() const {
    return {{"alphabet", alphabet_size},
            {"max_const_len", max_const_len},
            {"occurrences", occurrences},
            {"brute_force_bound", brute_force_bound},
            {"workers", workers},
            {"seed", seed},
            {"oracle", run_oracle},
            {"lemmas", run_lemmas},
            {"limit", limit}};
}

std::vector<std::string> CampaignReport::warnings() const {
    std::vector<std::string> out;
    for (const auto& [name, tally] : checks) {
        if (tally.holds + tally.violated == 0) {
            out.push_back("no instance satisfied the hypothesis of '" + name + "' at this scale");
        }
    }
    return out;
}

nlohmann::json CampaignReport::to_json() const {
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& [size, count] : finite_sizes) {
        sizes[std::to_string(size)] = count;
    }
    nlohmann::json checks_json = nlohmann::json::object();
    for (const auto& [name, tally] : checks) {
        checks_json[name] = {
            {"holds", tally.holds}, {"not_applicable", tally.not_applicable}, {"violated", tally.violated}};
    }
    nlohmann::json violations_json = nlohmann::json::array();
    for (const auto& v : violations) {
        violations_json.push_back(
            {{"instance", v.instance}, {"equation", v.equation}, {"check", v.check}, {"detail", v.detail}});
    }
    return {{"config", config.to_json()},
            {"instances", instances},
            {"classified", {{"all", all_words}, {"finite", finite}, {"infinite", infinite}}},
            {"finite_size_histogram", sizes},
            {"max_finite_size", max_finite_size},
            {"oracle", {{"checked", oracle_checked}, {"disagreements", oracle_disagreements}}},
            {"checks", checks_json},
            {"chain", {{"verdicts", chain_verdicts}, {"steps_reached", chain_steps}, {"completed", chain_completed}}},
            {"warnings", warnings()},
            {"violation_count", violation_count},
            {"violations", violations_json}};
}

std::string CampaignReport::summary() const {
    return "max finite solution-set size observed: " + std::to_string(max_finite_size) +
           "; violations: " + std::to_string(violation_count);
}

std::vector<std::string> enumerate_sides(const CampaignConfig& config) {
    const std::string letters = std::string("abcdefghijklmnopqrstuvw").substr(0, config.alphabet_size);
    std::vector<std::string> sides;
    // Constant word c with x variables spread over its x + 1 gaps.
    for (std::size_t x = 0; x <= config.occurrences; ++x) {
        for (std::size_t c = 0; c <= config.max_const_len; ++c) {
            if (x + c == 0) {
                continue;
            }
            std::vector<bool> is_var(x + c, false);
            std::fill(is_var.begin(), is_var.begin() + static_cast<std::ptrdiff_t>(x), true);
            // Every placement of the x variables among x + c positions.
            std::sort(is_var.begin(), is_var.end());
            do {
                for_each_word(letters, c, [&](const Word& constants) {
                    std::string side;
                    std::size_t next = 0;
                    for (bool v : is_var) {
                        side += v ? kVariable : constants[next++];
                    }
                    sides.push_back(side);
                });
            } while (std::next_permutation(is_var.begin(), is_var.end()));
        }
    }
    return sides;
}

CampaignReport run_campaign(const CampaignConfig& config) {
    config.validate();
    const auto sides = enumerate_sides(config);
    const std::uint64_t s = sides.size();

    const auto workers = config.workers;
    std::vector<CampaignReport> parts(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            Examiner examiner(config, parts[w]);
            // Row i holds the instances (i, j), j >= i.
            for (std::uint64_t i = w; i < s; i += workers) {
                const std::uint64_t row_start = i * s - i * (i - 1) / 2;
                for (std::uint64_t j = i; j < s; ++j) {
                    const auto index = row_start + (j - i);
                    if (config.limit != 0 && index >= config.limit) {
                        break;
                    }
                    examiner.examine(index, OneVarEquation{sides[i], sides[j]});
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }

    CampaignReport report;
    report.config = config;
    for (const auto& part : parts) {
        merge_into(report, part);
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) { return a.instance < b.instance; });
    if (report.violations.size() > kKeptViolations) {
        report.violations.resize(kKeptViolations);
    }
    return report;
}

}  // namespace wordeq
