#include "wordeq/threevar.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

#include "wordeq/equation.hpp"
#include "wordeq/oracle.hpp"

namespace wordeq {

namespace {

std::size_t variable_index(char v) {
    switch (v) {
        case 'X':
            return 0;
        case 'Y':
            return 1;
        case 'Z':
            return 2;
        default:
            throw std::invalid_argument(std::string("not a variable: '") + v + "'");
    }
}

bool commute(const Word& a, const Word& b) { return a + b == b + a; }

using Bits = std::vector<std::uint64_t>;

Bits bit_and(const Bits& a, const Bits& b) {
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] & b[i];
    }
    return out;
}

// a contains a member that b lacks.
bool escapes(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] & ~b[i]) != 0) {
            return true;
        }
    }
    return false;
}

bool meets(const Bits& a, const Bits& b, const Bits& c) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] & b[i] & c[i]) != 0) {
            return true;
        }
    }
    return false;
}

struct MorphismTable {
    std::vector<Morphism> morphisms;
    std::vector<std::array<std::size_t, 3>> lengths;
};

Bits solution_bits(const ConstantFreeEquation& eq, const MorphismTable& table) {
    std::array<std::size_t, 3> cu{};
    std::array<std::size_t, 3> cv{};
    for (char c : eq.lhs) {
        ++cu[variable_index(c)];
    }
    for (char c : eq.rhs) {
        ++cv[variable_index(c)];
    }
    Bits bits((table.morphisms.size() + 63) / 64, 0);
    for (std::size_t m = 0; m < table.morphisms.size(); ++m) {
        const auto& len = table.lengths[m];
        const auto left = cu[0] * len[0] + cu[1] * len[1] + cu[2] * len[2];
        const auto right = cv[0] * len[0] + cv[1] * len[1] + cv[2] * len[2];
        if (left == right && is_solution(table.morphisms[m], eq)) {
            bits[m / 64] |= std::uint64_t{1} << (m % 64);
        }
    }
    return bits;
}

// Nontrivial equations with |U| + |V| <= max_len, one orientation each,
// ordered by total length, then shortlex.
std::vector<ConstantFreeEquation> enumerate_equations(std::size_t max_len) {
    std::vector<std::vector<Word>> words_by_len(max_len + 1);
    for (std::size_t len = 1; len < max_len; ++len) {
        for_each_word(kThreeVariables, len, [&](const Word& w) { words_by_len[len].push_back(w); });
    }
    std::vector<ConstantFreeEquation> out;
    for (std::size_t total = 2; total <= max_len; ++total) {
        for (std::size_t left = 1; left < total; ++left) {
            const auto right = total - left;
            if (left > right) {
                break;
            }
            for (const auto& u : words_by_len[left]) {
                for (const auto& v : words_by_len[right]) {
                    if (shortlex_less(u, v)) {
                        out.push_back({u, v});
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

ConstantFreeEquation parse_constant_free(std::string_view text) {
    auto [lhs, rhs] = parse_sides(text, [](char c) { return c == 'X' || c == 'Y' || c == 'Z'; });
    return {std::move(lhs), std::move(rhs)};
}

const Word& Morphism::operator[](char variable) const { return image[variable_index(variable)]; }

std::string Morphism::to_string() const { return "(" + image[0] + "," + image[1] + "," + image[2] + ")"; }

Word apply_morphism(const Morphism& h, std::string_view w) {
    Word out;
    for (char c : w) {
        out += h[c];
    }
    return out;
}

bool is_solution(const Morphism& h, const ConstantFreeEquation& equation) {
    return apply_morphism(h, equation.lhs) == apply_morphism(h, equation.rhs);
}

bool is_periodic(const Morphism& h) {
    return commute(h.image[0], h.image[1]) && commute(h.image[0], h.image[2]) && commute(h.image[1], h.image[2]);
}

Morphism xyz_zyx_family(const Word& p, const Word& q, std::size_t i, std::size_t j, std::size_t k) {
    return {{power(p + q, i) + p, power(q + p, j) + q, power(p + q, k) + p}};
}

std::vector<Morphism> enumerate_morphisms(std::size_t max_total, std::string_view letters) {
    std::vector<Morphism> out;
    for (std::size_t total = 0; total <= max_total; ++total) {
        for (std::size_t lx = 0; lx <= total; ++lx) {
            for_each_word(letters, lx, [&](const Word& x) {
                for (std::size_t ly = 0; ly + lx <= total; ++ly) {
                    for_each_word(letters, ly, [&](const Word& y) {
                        for_each_word(letters, total - lx - ly, [&](const Word& z) { out.push_back({{x, y, z}}); });
                    });
                }
            });
        }
    }
    return out;
}

void validate_system(const EquationSystem& system) {
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (system[i].is_trivial()) {
            throw std::invalid_argument("trivial equation " + system[i].to_string() + " in system");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (system[i] == system[j]) {
                throw std::invalid_argument("repeated equation " + system[i].to_string() + " in system");
            }
        }
    }
}

bool IndependenceReport::independent() const {
    return std::all_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); });
}

std::string IndependenceReport::status() const {
    return independent() ? "independent (witnessed)"
                         : "not shown independent at scale " + std::to_string(image_bound);
}

nlohmann::json IndependenceReport::to_json(const EquationSystem& system) const {
    nlohmann::json ws = nlohmann::json::array();
    for (std::size_t i = 0; i < system.size(); ++i) {
        ws.push_back({{"dropped", system[i].to_string()},
                      {"witness", witnesses[i] ? nlohmann::json(witnesses[i]->to_string()) : nlohmann::json(nullptr)}});
    }
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& e : system) {
        eqs.push_back(e.to_string());
    }
    return {{"equations", eqs},
            {"image_bound", image_bound},
            {"status", status()},
            {"witnesses", ws},
            {"nonperiodic_solution",
             nonperiodic_solution ? nlohmann::json(nonperiodic_solution->to_string()) : nlohmann::json(nullptr)}};
}

IndependenceReport independence_check(const EquationSystem& system, std::size_t image_bound) {
    validate_system(system);
    IndependenceReport report;
    report.image_bound = image_bound;
    report.witnesses.resize(system.size());
    for (const auto& h : enumerate_morphisms(image_bound)) {
        std::vector<bool> solved(system.size());
        std::size_t solved_count = 0;
        for (std::size_t i = 0; i < system.size(); ++i) {
            solved[i] = is_solution(h, system[i]);
            solved_count += solved[i] ? 1 : 0;
        }
        if (solved_count + 1 == system.size()) {
            const auto missing = static_cast<std::size_t>(std::find(solved.begin(), solved.end(), false) - solved.begin());
            if (!report.witnesses[missing]) {
                report.witnesses[missing] = h;
            }
        }
        if (solved_count == system.size() && !report.nonperiodic_solution && !is_periodic(h)) {
            report.nonperiodic_solution = h;
        }
    }
    return report;
}

nlohmann::json SearchReport::to_json() const {
    nlohmann::json counts_json = nlohmann::json::object();
    for (std::size_t s = 1; s < counts.size(); ++s) {
        counts_json[std::to_string(s)] = counts[s];
    }
    nlohmann::json examples = nlohmann::json::array();
    for (const auto& found : largest_examples) {
        examples.push_back(found.certificate.to_json(found.equations));
    }
    return {{"config",
             {{"max_eq_len", config.max_equation_length},
              {"max_size", config.max_system_size},
              {"image_len", config.image_bound},
              {"workers", config.workers}}},
            {"equations", equations},
            {"morphisms", morphisms},
            {"classes", classes},
            {"nonperiodic_classes", nonperiodic_classes},
            {"independent_systems_by_size", counts_json},
            {"periodic_only_independent_pairs", periodic_only_pairs},
            {"max_size", max_size},
            {"reference_pair_found", reference_pair_found},
            {"largest_examples", examples}};
}

SearchReport search_independent_systems(const SearchConfig& config) {
    SearchReport report;
    report.config = config;
    report.counts.assign(config.max_system_size + 1, 0);

    MorphismTable table;
    table.morphisms = enumerate_morphisms(config.image_bound);
    for (const auto& h : table.morphisms) {
        table.lengths.push_back({h.image[0].size(), h.image[1].size(), h.image[2].size()});
    }
    report.morphisms = table.morphisms.size();
    Bits nonperiodic((table.morphisms.size() + 63) / 64, 0);
    for (std::size_t m = 0; m < table.morphisms.size(); ++m) {
        if (!is_periodic(table.morphisms[m])) {
            nonperiodic[m / 64] |= std::uint64_t{1} << (m % 64);
        }
    }

    const auto equations = enumerate_equations(config.max_equation_length);
    report.equations = equations.size();
    std::vector<Bits> bits(equations.size());
    const auto workers = std::max<std::size_t>(1, config.workers);
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < equations.size(); i += workers) {
                    bits[i] = solution_bits(equations[i], table);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    // One representative per solution class, first in enumeration order.
    std::map<Bits, std::size_t> class_of;
    std::vector<std::size_t> representative;
    for (std::size_t i = 0; i < equations.size(); ++i) {
        if (class_of.emplace(bits[i], representative.size()).second) {
            representative.push_back(i);
        }
    }
    report.classes = representative.size();

    std::vector<std::size_t> np_classes;
    for (std::size_t c = 0; c < representative.size(); ++c) {
        const auto& b = bits[representative[c]];
        if (meets(b, b, nonperiodic)) {
            np_classes.push_back(c);
        }
    }
    report.nonperiodic_classes = np_classes.size();

    // Independent pairs without a common nonperiodic solution.
    for (std::size_t a = 0; a < representative.size(); ++a) {
        const auto& ba = bits[representative[a]];
        for (std::size_t b = a + 1; b < representative.size(); ++b) {
            const auto& bb = bits[representative[b]];
            if (!meets(ba, bb, nonperiodic) && escapes(ba, bb) && escapes(bb, ba)) {
                ++report.periodic_only_pairs;
            }
        }
    }

    // Graph on classes with a nonperiodic solution: edges join pairs that are
    // independent and share a nonperiodic solution. Independent systems with
    // a common nonperiodic solution are cliques of this graph.
    const auto& cls = np_classes;
    std::vector<std::vector<std::uint32_t>> adjacent(cls.size());
    for (std::size_t a = 0; a < cls.size(); ++a) {
        const auto& ba = bits[representative[cls[a]]];
        for (std::size_t b = a + 1; b < cls.size(); ++b) {
            const auto& bb = bits[representative[cls[b]]];
            if (meets(ba, bb, nonperiodic) && escapes(ba, bb) && escapes(bb, ba)) {
                adjacent[a].push_back(static_cast<std::uint32_t>(b));
            }
        }
    }

    std::vector<std::vector<std::vector<std::size_t>>> examples(config.max_system_size + 1);
    auto note = [&](const std::vector<std::size_t>& members) {
        const auto s = members.size();
        ++report.counts[s];
        report.max_size = std::max(report.max_size, s);
        if (examples[s].size() < config.max_examples) {
            examples[s].push_back(members);
        }
    };

    auto bits_of = [&](std::size_t node) -> const Bits& { return bits[representative[cls[node]]]; };
    // Depth-first extension; independence is inherited by subsystems.
    std::vector<std::size_t> current;
    auto extend = [&](auto&& self, const Bits& common) -> void {
        note(current);
        if (current.size() == config.max_system_size) {
            return;
        }
        const auto last = current.back();
        for (auto c : adjacent[last]) {
            bool ok = std::all_of(current.begin(), current.end() - 1, [&](std::size_t m) {
                return std::binary_search(adjacent[m].begin(), adjacent[m].end(), static_cast<std::uint32_t>(c));
            });
            if (!ok) {
                continue;
            }
            const auto& bc = bits_of(c);
            Bits joined = bit_and(common, bc);
            if (!meets(joined, joined, nonperiodic) || !escapes(common, bc)) {
                continue;
            }
            for (std::size_t drop = 0; drop < current.size() && ok; ++drop) {
                Bits others = bc;
                for (std::size_t m = 0; m < current.size(); ++m) {
                    if (m != drop) {
                        others = bit_and(others, bits_of(current[m]));
                    }
                }
                ok = escapes(others, bits_of(current[drop]));
            }
            if (!ok) {
                continue;
            }
            current.push_back(c);
            self(self, joined);
            current.pop_back();
        }
    };
    if (config.max_system_size >= 1) {
        for (std::size_t a = 0; a < cls.size(); ++a) {
            current = {a};
            extend(extend, bits_of(a));
        }
    }

    const ConstantFreeEquation first{"XYZ", "ZYX"};
    const ConstantFreeEquation second{"XYYZ", "ZYYX"};
    if (first.length() <= config.max_equation_length && second.length() <= config.max_equation_length) {
        const auto b1 = solution_bits(first, table);
        const auto b2 = solution_bits(second, table);
        report.reference_pair_found = meets(b1, b2, nonperiodic) && escapes(b1, b2) && escapes(b2, b1);
    }

    for (const auto& members : examples[report.max_size]) {
        EquationSystem system;
        for (auto node : members) {
            system.push_back(equations[representative[cls[node]]]);
        }
        auto certificate = independence_check(system, config.image_bound);
        report.largest_examples.push_back({std::move(system), std::move(certificate)});
    }
    return report;
}

}  // namespace wordeq
