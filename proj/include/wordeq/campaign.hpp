#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordeq/equation.hpp"

namespace wordeq {

struct CampaignConfig {
    std::size_t alphabet_size = 2;
    std::size_t max_const_len = 6;  // per side
    std::size_t occurrences = 2;    // max X per side
    std::size_t brute_force_bound = 8;
    std::size_t workers = 1;
    std::uint64_t seed = 1;
    bool run_oracle = true;
    bool run_lemmas = true;
    /// Stop after this many instances (0: all). For quick runs and tests.
    std::size_t limit = 0;

    /// Throws std::invalid_argument on zero bounds or an alphabet beyond 'w'.
    void validate() const;
    nlohmann::json to_json() const;
};

struct Tally {
    std::uint64_t holds = 0;
    std::uint64_t not_applicable = 0;
    std::uint64_t violated = 0;
};

struct Violation {
    std::uint64_t instance = 0;
    std::string equation;
    std::string check;
    std::string detail;
};

struct CampaignReport {
    CampaignConfig config;
    std::uint64_t instances = 0;
    std::uint64_t all_words = 0;
    std::uint64_t finite = 0;
    std::uint64_t infinite = 0;
    std::map<std::size_t, std::uint64_t> finite_sizes;
    std::size_t max_finite_size = 0;
    std::uint64_t oracle_checked = 0;
    std::uint64_t oracle_disagreements = 0;
    /// Per check: instances where the hypothesis held and the statement was
    /// tested, where it did not apply, and where it failed.
    std::map<std::string, Tally> checks;
    std::map<std::string, std::uint64_t> chain_verdicts;
    std::map<std::string, std::uint64_t> chain_steps;
    std::uint64_t chain_completed = 0;
    std::uint64_t violation_count = 0;
    /// First violations in instance order.
    std::vector<Violation> violations;

    std::vector<std::string> warnings() const;
    bool ok() const { return violation_count == 0; }
    nlohmann::json to_json() const;
    /// One-line summary, e.g. "max finite solution-set size observed: 3; violations: 0".
    std::string summary() const;
};

/// Every nonempty side over the first `alphabet_size` letters and X.
std::vector<std::string> enumerate_sides(const CampaignConfig& config);

/// Classifies every equation (U, V) with U <= V, cross-checks against brute
/// force and runs the lemma suites. Equal configs give identical reports
/// regardless of the worker count.
CampaignReport run_campaign(const CampaignConfig& config);

}  // namespace wordeq
