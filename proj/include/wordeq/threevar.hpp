#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wordeq/words.hpp"

namespace wordeq {

inline constexpr std::string_view kThreeVariables = "XYZ";

/// Equation over the variables X, Y, Z only.
struct ConstantFreeEquation {
    std::string lhs;
    std::string rhs;

    bool is_trivial() const { return lhs == rhs; }
    std::size_t length() const { return lhs.size() + rhs.size(); }
    std::string to_string() const { return lhs + " = " + rhs; }

    friend bool operator==(const ConstantFreeEquation&, const ConstantFreeEquation&) = default;
    friend auto operator<=>(const ConstantFreeEquation&, const ConstantFreeEquation&) = default;
};

/// "XYZ = ZYX" or "(XYZ, ZYX)". Throws ParseError.
ConstantFreeEquation parse_constant_free(std::string_view text);

/// Images of X, Y, Z.
struct Morphism {
    std::array<Word, 3> image;

    const Word& operator[](char variable) const;
    std::size_t total_length() const { return image[0].size() + image[1].size() + image[2].size(); }
    std::string to_string() const;  // "(a,b,aba)", empty images as ""

    friend bool operator==(const Morphism&, const Morphism&) = default;
};

Word apply_morphism(const Morphism& h, std::string_view w);
bool is_solution(const Morphism& h, const ConstantFreeEquation& equation);
/// All images pairwise commute.
bool is_periodic(const Morphism& h);

/// X -> (pq)^i p, Y -> (qp)^j q, Z -> (pq)^k p.
Morphism xyz_zyx_family(const Word& p, const Word& q, std::size_t i, std::size_t j, std::size_t k);

/// Every morphism into `letters`* with total image length <= max_total,
/// ordered by total length, then shortlex on X, Y, Z in turn.
std::vector<Morphism> enumerate_morphisms(std::size_t max_total, std::string_view letters = "ab");

using EquationSystem = std::vector<ConstantFreeEquation>;

/// Throws std::invalid_argument on a trivial or repeated equation.
void validate_system(const EquationSystem& system);

struct IndependenceReport {
    std::size_t image_bound = 0;
    /// witnesses[i] solves every equation except system[i] but not system[i].
    std::vector<std::optional<Morphism>> witnesses;
    /// First nonperiodic morphism solving the whole system, if any.
    std::optional<Morphism> nonperiodic_solution;

    bool independent() const;
    /// "independent (witnessed)" or "not shown independent at scale L".
    std::string status() const;
    nlohmann::json to_json(const EquationSystem& system) const;
};

/// Searches morphisms with total image length <= image_bound for witnesses
/// against every maximal proper subsystem. Absence of a witness is never
/// reported as dependence.
IndependenceReport independence_check(const EquationSystem& system, std::size_t image_bound);

struct SearchConfig {
    std::size_t max_equation_length = 8;
    std::size_t max_system_size = 3;
    std::size_t image_bound = 6;
    std::size_t workers = 1;
    /// Cap on the listed examples per size.
    std::size_t max_examples = 10;
};

struct FoundSystem {
    EquationSystem equations;
    IndependenceReport certificate;
};

struct SearchReport {
    SearchConfig config;
    std::size_t equations = 0;         // nontrivial equations, up to swapping sides
    std::size_t morphisms = 0;         // morphisms within the image bound
    std::size_t classes = 0;           // equations grouped by their solutions within the bound
    std::size_t nonperiodic_classes = 0;
    /// counts[s] = number of independent systems of size s (over classes)
    /// with a common nonperiodic solution, s = 1..max_system_size.
    std::vector<std::uint64_t> counts;
    /// Independent pairs whose only common solutions are periodic.
    std::uint64_t periodic_only_pairs = 0;
    std::size_t max_size = 0;
    std::vector<FoundSystem> largest_examples;
    /// The pair (XYZ, ZYX), (XYYZ, ZYYX) was among the independent pairs.
    bool reference_pair_found = false;

    /// A system with a nonperiodic solution larger than two (conjectured
    /// impossible) or larger than 17 (impossible).
    bool beyond_two() const { return max_size > 2; }
    bool beyond_seventeen() const { return max_size > 17; }
    nlohmann::json to_json() const;
};

SearchReport search_independent_systems(const SearchConfig& config);

}  // namespace wordeq
