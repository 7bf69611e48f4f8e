#include "wordeq/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "wordeq/union_find.hpp"

namespace wordeq {

namespace {

constexpr std::uint32_t kLetterCount = 26;

// Node ids of every position of `side` after substituting a word of length d:
// slots of x are 0..d-1, letter c is d + (c - 'a').
void expand_side(std::string_view side, std::size_t d, std::vector<std::uint32_t>& out) {
    out.clear();
    for (char c : side) {
        if (c == kVariable) {
            for (std::uint32_t s = 0; s < d; ++s) {
                out.push_back(s);
            }
        } else {
            out.push_back(static_cast<std::uint32_t>(d) + static_cast<std::uint32_t>(c - 'a'));
        }
    }
}

}  // namespace

CandidateFill fill_for_length(const OneVarEquation& equation, std::size_t d) {
    CandidateFill fill;
    fill.length = d;
    thread_local std::vector<std::uint32_t> left;
    thread_local std::vector<std::uint32_t> right;
    expand_side(equation.lhs, d, left);
    expand_side(equation.rhs, d, right);
    if (left.size() != right.size()) {
        fill.status = CandidateFill::Status::contradictory;
        return fill;
    }

    UnionFind classes(d + kLetterCount);
    for (std::size_t i = 0; i < left.size(); ++i) {
        classes.unite(left[i], right[i]);
    }

    std::vector<char> class_letter(d + kLetterCount, '\0');
    for (std::uint32_t letter = 0; letter < kLetterCount; ++letter) {
        auto root = classes.find(static_cast<std::uint32_t>(d) + letter);
        char c = static_cast<char>('a' + letter);
        if (class_letter[root] != '\0' && class_letter[root] != c) {
            fill.status = CandidateFill::Status::contradictory;
            return fill;
        }
        class_letter[root] = c;
    }

    fill.slots.resize(d);
    fill.status = CandidateFill::Status::consistent;
    for (std::uint32_t s = 0; s < d; ++s) {
        fill.slots[s] = class_letter[classes.find(s)];
        if (fill.slots[s] == '\0') {
            fill.status = CandidateFill::Status::underdetermined;
        }
    }
    return fill;
}

std::optional<Word> candidate_for_length(const OneVarEquation& equation, std::size_t d) {
    if (equation.is_trivial()) {
        throw std::invalid_argument("candidate_for_length: trivial equation " + equation.to_string());
    }
    auto fill = fill_for_length(equation, d);
    switch (fill.status) {
        case CandidateFill::Status::contradictory:
            return std::nullopt;
        case CandidateFill::Status::underdetermined:
            // Two distinct solutions of one length cannot exist for a nontrivial equation.
            throw std::logic_error("underdetermined fill of length " + std::to_string(d) + " for nontrivial equation " +
                                   equation.to_string());
        case CandidateFill::Status::consistent:
            break;
    }
    if (!substitute_check(equation, fill.slots)) {
        return std::nullopt;
    }
    return fill.slots;
}

std::optional<Word> candidate_for_length(const AlignedEquation& equation, std::size_t d) {
    return candidate_for_length(equation.to_equation(), d);
}

std::vector<Word> enumerate_solutions(const OneVarEquation& equation, std::size_t bound) {
    std::vector<Word> out;
    for (std::size_t d = 0; d <= bound; ++d) {
        if (auto x = candidate_for_length(equation, d)) {
            out.push_back(std::move(*x));
        }
    }
    return out;
}

std::vector<Word> enumerate_solutions(const AlignedEquation& equation, std::size_t bound) {
    return enumerate_solutions(equation.to_equation(), bound);
}

std::size_t default_bound(const OneVarEquation& equation) { return equation.token_count(); }

std::optional<SolutionSet> family_from_pair(const OneVarEquation& equation, const Word& x, const Word& y) {
    if (x.size() >= y.size() || 2 * x.size() > y.size() || !is_prefix(x, y) || !is_suffix(x, y)) {
        return std::nullopt;
    }
    const Word pq = y.substr(0, y.size() - x.size());
    const Word root = primitive_root(pq).root;
    // x = root^m p' with p' a proper prefix of root.
    const Word p = x.substr(x.size() - x.size() % root.size());
    const Word q = root.substr(p.size());
    if (!substitute_check(equation, root + p) || !substitute_check(equation, root + root + p)) {
        return std::nullopt;
    }
    // Now every member of (pq)^+ p solves; decide where the family starts.
    if (substitute_check(equation, p)) {
        return SolutionSet::family(p, q);
    }
    if (p.empty()) {
        return SolutionSet::family(root, Word{});
    }
    return std::nullopt;
}

SolutionSet classify(const OneVarEquation& equation, std::optional<std::size_t> bound) {
    if (equation.is_trivial()) {
        return SolutionSet::all_words();
    }
    const auto left_x = equation.lhs_occurrences();
    const auto right_x = equation.rhs_occurrences();
    const auto left_c = static_cast<std::int64_t>(equation.lhs.size() - left_x);
    const auto right_c = static_cast<std::int64_t>(equation.rhs.size() - right_x);

    if (left_x != right_x) {
        // Side lengths agree for exactly one |x|, if any.
        const auto diff_x = static_cast<std::int64_t>(left_x) - static_cast<std::int64_t>(right_x);
        const auto diff_c = right_c - left_c;
        if (diff_c % diff_x != 0 || diff_c / diff_x < 0) {
            return SolutionSet::finite({});
        }
        std::vector<Word> found;
        if (auto x = candidate_for_length(equation, static_cast<std::size_t>(diff_c / diff_x))) {
            found.push_back(*x);
        }
        return SolutionSet::finite(std::move(found));
    }
    if (left_x == 0 || left_c != right_c) {
        return SolutionSet::finite({});
    }

    auto solutions = enumerate_solutions(equation, bound.value_or(default_bound(equation)));
    std::vector<std::pair<Word, Word>> pairs;
    if (solutions.size() >= 2) {
        pairs.emplace_back(solutions[0], solutions[1]);
        if (solutions[0].empty() && solutions.size() >= 3) {
            pairs.emplace_back(solutions[1], solutions[2]);
        }
    }
    for (const auto& [x, y] : pairs) {
        if (auto family = family_from_pair(equation, x, y)) {
            for (const auto& s : solutions) {
                if (!family->contains(s)) {
                    throw std::logic_error("solution '" + s + "' of " + equation.to_string() + " lies outside " +
                                           family->describe());
                }
            }
            return *family;
        }
    }
    return SolutionSet::finite(std::move(solutions));
}

SolutionSet classify(const AlignedEquation& equation, std::optional<std::size_t> bound) {
    return classify(equation.to_equation(), bound);
}

bool exceeds_three_bound(const SolutionSet& set) { return set.is_finite() && set.solutions().size() > 3; }

}  // namespace wordeq
