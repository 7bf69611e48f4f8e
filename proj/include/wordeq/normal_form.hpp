#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordeq/equation.hpp"
#include "wordeq/words.hpp"

namespace wordeq {

/// Aligned equation together with a nonempty zero-sum solution and the
/// valuation that makes it zero-sum.
struct NormalFormEquation {
    AlignedEquation base;
    Word witness;
    Alphabet valuation;
};

/// One application of a rewrite rule. `index` is the block index the rule
/// acted on (unused for "swap").
struct RewriteStep {
    enum class Rule { swap, merge, overlap, rotate };
    Rule rule;
    std::size_t index = 0;
    AlignedEquation result;
};

std::string to_string(RewriteStep::Rule rule);

struct NormalFormResult {
    NormalFormEquation equation;
    std::vector<RewriteStep> log;

    nlohmann::json to_json() const;
};

struct NormalFormReport {
    bool n1 = false;
    bool n2 = false;
    bool n3 = false;
    /// First i < n with |u_0..u_i| >= |v_0..v_i|.
    std::optional<std::size_t> n2_failure;
    /// First i with |u_0..u_i| > |v_0..v_{i-1}|.
    std::optional<std::size_t> n3_failure;

    bool all() const { return n1 && n2 && n3; }
};

/// Replaces X by x0 X. Throws std::invalid_argument unless x0 solves E.
AlignedEquation shift_to_empty(const AlignedEquation& equation, const Word& x0);

/// Smallest j < n with |u_0..u_j| >= |v_0..v_j|, or n if there is none.
std::size_t first_non_dominated(const AlignedEquation& equation);

/// Rewrites E until the normal form conditions hold. The witness is made
/// zero-sum first: `valuation` is kept if it already does that, otherwise the
/// letters are re-valued. Throws std::invalid_argument if E is trivial, if the
/// empty word does not solve E, or if the witness is empty or not a solution.
NormalFormResult to_normal_form(const AlignedEquation& equation, const Word& witness, const Alphabet& valuation = {});

NormalFormReport check_normal_form(const AlignedEquation& equation, const Word& witness, const Alphabet& valuation);

}  // namespace wordeq
