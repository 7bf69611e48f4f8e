#include "wordeq/oracle.hpp"

namespace wordeq {

std::vector<Word> brute_force_solutions(const OneVarEquation& equation, std::string_view letters, std::size_t max_len) {
    const auto left_x = equation.lhs_occurrences();
    const auto right_x = equation.rhs_occurrences();
    const auto left_c = equation.lhs.size() - left_x;
    const auto right_c = equation.rhs.size() - right_x;

    std::vector<Word> out;
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (left_c + left_x * len != right_c + right_x * len) {
            continue;
        }
        for_each_word(letters, len, [&](const Word& x) {
            if (substitute(equation.lhs, x) == substitute(equation.rhs, x)) {
                out.push_back(x);
            }
        });
    }
    return out;
}

}  // namespace wordeq
