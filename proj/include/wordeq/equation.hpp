#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wordeq/words.hpp"

namespace wordeq {

inline constexpr char kVariable = 'X';

/// One-variable equation with constants. Each side is a token string: a
/// lowercase letter is a constant, 'X' is the variable.
struct OneVarEquation {
    std::string lhs;
    std::string rhs;

    bool is_trivial() const { return lhs == rhs; }
    std::size_t token_count() const { return lhs.size() + rhs.size(); }
    std::size_t lhs_occurrences() const;
    std::size_t rhs_occurrences() const;
    /// Constant letters appearing on either side, sorted and deduplicated.
    std::string constants() const;
    std::string to_string() const { return lhs + " = " + rhs; }

    friend bool operator==(const OneVarEquation&, const OneVarEquation&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Grammar: side '=' side, sides over [a-z] and 'X', whitespace ignored.
/// A surrounding pair of parentheses and a ',' separator are also accepted
/// ("(Xab, abX)").
OneVarEquation parse_equation(std::string_view text);

/// The shared side grammar; `accept` decides which token characters are legal.
std::pair<std::string, std::string> parse_sides(std::string_view text, bool (*accept)(char));

/// The side with every X replaced by `x`.
Word substitute(std::string_view side, std::string_view x);
bool substitute_check(const OneVarEquation& equation, std::string_view x);

/// Equation in the form (u_0 X u_1 ... X u_n, v_0 X v_1 ... X v_n) with
/// |u_0 ... u_n| = |v_0 ... v_n|. n = 0 is allowed for the constant-only
/// components produced by splitting.
class AlignedEquation {
public:
    AlignedEquation(std::vector<Word> u, std::vector<Word> v);

    std::size_t n() const { return u_.size() - 1; }
    const std::vector<Word>& u() const { return u_; }
    const std::vector<Word>& v() const { return v_; }
    const Word& u(std::size_t i) const { return u_.at(i); }
    const Word& v(std::size_t i) const { return v_.at(i); }

    /// |u_0 ... u_i|; prefix_u(-1) is 0.
    std::size_t prefix_u(std::ptrdiff_t i) const;
    std::size_t prefix_v(std::ptrdiff_t i) const;
    Word u_concat(std::size_t first, std::size_t last) const;  // u_first ... u_last-1
    Word v_concat(std::size_t first, std::size_t last) const;

    /// Total number of tokens on both sides.
    std::size_t length() const;
    std::size_t constant_length() const { return prefix_u(static_cast<std::ptrdiff_t>(n())); }
    bool is_trivial() const { return u_ == v_; }
    std::string constants() const { return to_equation().constants(); }

    OneVarEquation to_equation() const;
    std::string to_string() const { return to_equation().to_string(); }
    AlignedEquation swapped() const { return AlignedEquation(v_, u_); }

    friend bool operator==(const AlignedEquation&, const AlignedEquation&) = default;

private:
    std::vector<Word> u_;
    std::vector<Word> v_;
};

bool substitute_check(const AlignedEquation& equation, std::string_view x);

class AlignError : public std::invalid_argument {
public:
    enum class Kind { unequal_occurrences, unequal_constant_length, no_variable };
    AlignError(Kind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

AlignedEquation align(const OneVarEquation& equation);

/// Splits at every point where a prefix of each side with the same number of
/// X's has the same length. Trivial components are dropped, and each
/// remaining component is oriented so that its left side has the shorter
/// constant before the first X.
std::vector<AlignedEquation> split_by_alignment(const AlignedEquation& equation);

/// Concatenates left sides and right sides of the components.
AlignedEquation combine_system(std::span<const AlignedEquation> system);

/// Solution set of a one-variable equation.
class SolutionSet {
public:
    enum class Kind { all, finite, infinite };

    static SolutionSet all_words();
    /// Sorted shortlex and deduplicated.
    static SolutionSet finite(std::vector<Word> solutions);
    /// [(pq)^i p : i >= 0]; pq must be primitive.
    static SolutionSet family(Word p, Word q);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    const std::vector<Word>& solutions() const { return solutions_; }
    const Word& p() const { return p_; }
    const Word& q() const { return q_; }

    bool contains(std::string_view x) const;
    /// Every member of length <= max_len, shortlex ordered.
    std::vector<Word> members_up_to(std::size_t max_len) const;
    /// Number of nonempty members; nullopt when infinite.
    std::optional<std::size_t> nonempty_count() const;

    std::string describe() const;
    nlohmann::json to_json() const;
    static SolutionSet from_json(const nlohmann::json& j);

    friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

private:
    Kind kind_ = Kind::finite;
    std::vector<Word> solutions_;
    Word p_;
    Word q_;
};

}  // namespace wordeq
