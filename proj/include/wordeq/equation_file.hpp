#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wordeq/equation.hpp"
#include "wordeq/words.hpp"

namespace wordeq {

/// Equation file: one equation per line, '#' starts a comment, blank lines
/// are ignored, and an optional "@values a=1,b=-1" line sets the valuation.
struct EquationFile {
    struct Entry {
        std::size_t line = 0;
        OneVarEquation equation;
    };
    std::vector<Entry> equations;
    std::optional<Alphabet> valuation;
};

/// Errors carry the 1-based line number in the message.
EquationFile parse_equation_file(std::string_view text);
/// Throws std::runtime_error if the file cannot be read.
EquationFile load_equation_file(const std::string& path);

}  // namespace wordeq
