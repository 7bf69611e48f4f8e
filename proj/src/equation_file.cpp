#include "wordeq/equation_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wordeq {

EquationFile parse_equation_file(std::string_view text) {
    EquationFile file;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        std::string_view content(line);
        content.remove_prefix(first);
        try {
            if (content.substr(0, 7) == "@values") {
                if (file.valuation) {
                    throw std::invalid_argument("second @values line");
                }
                file.valuation = Alphabet::parse(content.substr(7));
                continue;
            }
            file.equations.push_back({number, parse_equation(content)});
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(number) + ": " + e.what());
        }
    }
    return file;
}

EquationFile load_equation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_equation_file(buffer.str());
}

}  // namespace wordeq
