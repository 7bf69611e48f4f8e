#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "wordeq/equation.hpp"

namespace wordeq {

/// Every word over `letters` of length <= max_len that solves the equation,
/// found by plain substitution. Lengths at which the two sides cannot have
/// equal length are skipped without enumerating.
std::vector<Word> brute_force_solutions(const OneVarEquation& equation, std::string_view letters, std::size_t max_len);

/// Calls `visit` on every word over `letters` of length exactly `len`, in
/// lexicographic order.
template <typename Visit>
void for_each_word(std::string_view letters, std::size_t len, Visit&& visit) {
    if (letters.empty()) {
        if (len == 0) {
            visit(Word{});
        }
        return;
    }
    std::vector<std::size_t> digits(len, 0);
    Word w(len, letters[0]);
    while (true) {
        visit(static_cast<const Word&>(w));
        std::size_t pos = len;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < letters.size()) {
                w[pos] = letters[digits[pos]];
                break;
            }
            digits[pos] = 0;
            w[pos] = letters[0];
            if (pos == 0) {
                return;
            }
        }
        if (len == 0) {
            return;
        }
    }
}

}  // namespace wordeq
