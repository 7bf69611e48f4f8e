#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace wordeq {

using Rational = boost::rational<std::int64_t>;
// boost::rational == int recurses forever under C++20 reversed-operator
// rewriting; force comparisons against an explicit Rational.
bool operator==(const Rational&, int) = delete;
bool operator==(const Rational&, std::int64_t) = delete;

// Words are ASCII strings; constant letters are lowercase.
using Word = std::string;
using PrefixSumWord = std::vector<Rational>;

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

/// A set of letters together with an injective valuation into the rationals.
class Alphabet {
public:
    Alphabet() = default;

    /// The i-th symbol of `symbols` (1-based, duplicates skipped) gets value i.
    static Alphabet with_default_values(std::string_view symbols);
    /// Parses "a=1,b=-2" (values may be written as fractions, e.g. "c=1/2").
    static Alphabet parse(std::string_view text);

    /// Throws std::invalid_argument if another symbol already carries `value`.
    void set(char symbol, Rational value);
    Rational value(char symbol) const;
    bool contains(char symbol) const { return values_.count(symbol) != 0; }
    bool covers(std::string_view w) const;
    bool empty() const { return values_.empty(); }

    std::string symbols() const;
    const std::map<char, Rational>& values() const { return values_; }

    /// Same symbols, every value multiplied by -1.
    Alphabet negated() const;
    /// Adds every symbol of `w` that is missing, with fresh distinct values.
    Alphabet extended_by(std::string_view w) const;

    std::string to_string() const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::map<char, Rational> values_;
};

/// Height of a word: a rational, or the bottom element for the empty word.
class Height {
public:
    static Height bottom() { return Height{}; }
    explicit Height(Rational v) : value_(v) {}

    bool is_bottom() const { return !value_.has_value(); }
    Rational value() const;
    std::string to_string() const;

    friend bool operator==(const Height&, const Height&) = default;
    friend std::strong_ordering operator<=>(const Height& a, const Height& b);

private:
    Height() = default;
    std::optional<Rational> value_;
};

Rational word_sum(std::string_view w, const Alphabet& alphabet);
PrefixSumWord psw(std::string_view w, const Alphabet& alphabet, Rational offset = 0);
Height height(std::string_view w, const Alphabet& alphabet);
Rational area(std::string_view w, const Alphabet& alphabet);

/// Shortest prefix of `w` whose height equals the height of `w`.
Word highest_prefix(std::string_view w, const Alphabet& alphabet);

/// Re-valuation of the letters under which `w` is zero-sum.
///
/// If `current` already covers `w`, makes it zero-sum, and is injective, it is
/// returned unchanged. Otherwise the letters of `w` are sorted; the least
/// frequent one (ties: the lexicographically last) is the pivot, the others get
/// 1, 2, 3, ... in order, and the pivot gets the negative value that balances
/// the sum. Everything is then scaled to integers. Symbols of `current` that do
/// not occur in `w` keep distinct positive values above all others.
Alphabet normalize_alphabet(std::string_view w, const Alphabet& current = {});

/// Unique factorization of a zero-sum word into minimal zero-sum factors.
std::vector<Word> zero_sum_factorize(std::string_view w, const Alphabet& alphabet);

struct PrimitiveRoot {
    Word root;
    std::size_t exponent = 0;
};

PrimitiveRoot primitive_root(std::string_view w);
bool is_primitive(std::string_view w);

Word power(std::string_view w, std::size_t k);
bool is_prefix(std::string_view prefix, std::string_view w);
bool is_suffix(std::string_view suffix, std::string_view w);

/// Length first, then lexicographic.
bool shortlex_less(std::string_view a, std::string_view b);

}  // namespace wordeq
