#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wordeq/equation.hpp"

namespace wordeq {

/// Result of propagating position equalities for a fixed solution length.
struct CandidateFill {
    enum class Status { consistent, contradictory, underdetermined };

    std::size_t length = 0;
    /// One entry per letter slot of x; '\0' marks a slot no constant reaches.
    std::string slots;
    Status status = Status::contradictory;
};

/// Unifies the aligned positions of both sides for |x| = d. Slots of x and
/// constant letters are the union-find nodes.
CandidateFill fill_for_length(const OneVarEquation& equation, std::size_t d);

/// The unique solution word of length d, if there is one. Throws
/// std::invalid_argument for trivial equations (every word solves them).
std::optional<Word> candidate_for_length(const OneVarEquation& equation, std::size_t d);
std::optional<Word> candidate_for_length(const AlignedEquation& equation, std::size_t d);

/// All solution words of length <= bound, shortlex ordered.
std::vector<Word> enumerate_solutions(const AlignedEquation& equation, std::size_t bound);
std::vector<Word> enumerate_solutions(const OneVarEquation& equation, std::size_t bound);

/// Default enumeration bound: the token count of both sides.
std::size_t default_bound(const OneVarEquation& equation);

/// Full solution set. `bound` overrides the enumeration bound.
SolutionSet classify(const OneVarEquation& equation, std::optional<std::size_t> bound = std::nullopt);
SolutionSet classify(const AlignedEquation& equation, std::optional<std::size_t> bound = std::nullopt);

/// A finite solution set with more than three members.
bool exceeds_three_bound(const SolutionSet& set);

/// Tries to certify [(pq)^* p] from two nested solutions x (shorter) and y.
/// pq is reduced to its primitive root; p, (pq)p and (pq)^2 p must all solve.
std::optional<SolutionSet> family_from_pair(const OneVarEquation& equation, const Word& x, const Word& y);

}  // namespace wordeq
