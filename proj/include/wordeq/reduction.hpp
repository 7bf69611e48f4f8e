#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordeq/equation.hpp"
#include "wordeq/normal_form.hpp"
#include "wordeq/words.hpp"

namespace wordeq {

/// Result of testing one lemma statement on one instance.
enum class Outcome { holds, violated, not_applicable };
std::string to_string(Outcome outcome);

struct LemmaCheck {
    Outcome outcome = Outcome::not_applicable;
    std::string detail;

    static LemmaCheck holds(std::string detail = {}) { return {Outcome::holds, std::move(detail)}; }
    static LemmaCheck violated(std::string detail) { return {Outcome::violated, std::move(detail)}; }
    static LemmaCheck skip(std::string detail) { return {Outcome::not_applicable, std::move(detail)}; }
};

/// All nonempty members of a finite set, or the first `count` nonempty
/// members of an infinite family. Empty for AllWords.
std::vector<Word> nonempty_sample(const SolutionSet& set, std::size_t count = 3);
/// Like nonempty_sample but includes the empty word when it is a member.
std::vector<Word> solution_sample(const SolutionSet& set, std::size_t count = 3);

// ---- zero-sum solutions and the area identity ----

/// sigma(x) * sum i(|u_i| - |v_i|) + |x| * sum_{i>=1} (sigma(u_0..u_{i-1}) - sigma(v_0..v_{i-1}))
Rational area_identity_residual(const AlignedEquation& equation, const Word& x, const Alphabet& valuation);
/// area(lhs[x]) - area(rhs[x]) - (area(u_0..u_n) - area(v_0..v_n)), computed directly.
Rational area_difference(const AlignedEquation& equation, const Word& x, const Alphabet& valuation);

/// Every solution of a normal form equation is zero-sum and has vanishing
/// area residual. Not applicable unless N1-N3 hold.
LemmaCheck check_zero_sum_solutions(const NormalFormEquation& equation, const SolutionSet& solutions);

// ---- prefix sums of the constant blocks ----

struct PrefixSumProfile {
    std::vector<Rational> s;  // s_i = sigma(u_0 .. u_{i-1}), i = 1..n
    std::vector<Rational> t;  // t_i = sigma(v_0 .. v_{i-1})
};

PrefixSumProfile prefix_profile(const AlignedEquation& equation, const Alphabet& valuation);
bool lemma_st_holds(const AlignedEquation& equation, const Alphabet& valuation);
/// Needs a nontrivial equation with at least two zero-sum solutions.
LemmaCheck check_prefix_permutation(const AlignedEquation& equation, const SolutionSet& solutions,
                                    const Alphabet& valuation);

// ---- heights ----

struct HeightAnalysis {
    Rational h;
    /// Blocks holding the first highest point of u_0..u_n and v_0..v_n.
    std::size_t i = 0;
    std::size_t j = 0;
    /// Smallest indices (1-based) with s_k = max s and t_l = max t.
    std::size_t k = 0;
    std::size_t l = 0;
    Word phi_u;  // prefix of u_i up to that point
    Word phi_v;

    nlohmann::json to_json() const;
};

/// Requires n >= 1 and nonempty constants.
HeightAnalysis height_analysis(const AlignedEquation& equation, const Alphabet& valuation);
/// The height clauses for three or more, or exactly two, nonempty solutions.
LemmaCheck check_height_lemma(const NormalFormEquation& equation, const SolutionSet& solutions);

// ---- compression by a code ----

struct CodeSpec {
    enum class Kind { minimal_zero_sum, blocks };
    Kind kind = Kind::minimal_zero_sum;
    std::size_t block_length = 0;

    static CodeSpec minimal_zero_sum() { return {Kind::minimal_zero_sum, 0}; }
    static CodeSpec blocks(std::size_t len) { return {Kind::blocks, len}; }
    std::string to_string() const;
};

/// Bijection between the code words in use and fresh letters c, d, e, ...
/// New code words get the next fresh letter on first use.
class CodeCompressor {
public:
    CodeCompressor(CodeSpec spec, Alphabet valuation) : spec_(spec), valuation_(std::move(valuation)) {}

    /// Factors of w over the code, or nullopt if w is not in Z*.
    std::optional<std::vector<Word>> factorize(const Word& w) const;
    /// Image of w, or nullopt if w is not in Z*. Throws std::length_error
    /// when the fresh alphabet runs out.
    std::optional<Word> encode(const Word& w);
    /// Throws std::out_of_range on a letter that is not in the map.
    Word decode(std::string_view w) const;

    const CodeSpec& spec() const { return spec_; }
    const std::map<Word, char>& letters() const { return forward_; }
    nlohmann::json letters_json() const;

private:
    CodeSpec spec_;
    Alphabet valuation_;
    std::map<Word, char> forward_;
    std::map<char, Word> backward_;
    char next_ = 'c';
};

struct Compression {
    AlignedEquation equation;
    CodeCompressor compressor;
};

/// Throws std::invalid_argument if some u_i or v_i is not in Z*.
Compression compress_by_code(const AlignedEquation& equation, CodeSpec code, const Alphabet& valuation = {});
/// Solutions of E in Z* map onto solutions of the compressed equation, and
/// every compressed solution decodes to a solution of E.
LemmaCheck check_compression(const AlignedEquation& equation, const SolutionSet& solutions, CodeSpec code,
                             const Alphabet& valuation = {});

// ---- cutting ----

/// |v_0..v_{k-1}| - |u_0..u_k|.
std::ptrdiff_t cut_length(const AlignedEquation& equation, std::size_t k);
/// (u_0 X .. X u_k y, v_0 X .. v_{k-1} X). Throws std::invalid_argument
/// unless |y| equals cut_length(E, k) >= 0.
AlignedEquation cut_equation(const AlignedEquation& equation, std::size_t k, const Word& y);
/// Common prefix of length d of all nonempty solutions, if they are all that long.
std::optional<Word> common_prefix_of_nonempty(const SolutionSet& solutions, std::size_t d);
/// Every admissible k: the cut equation keeps every nonempty solution.
LemmaCheck check_cut_lemma(const AlignedEquation& equation, const SolutionSet& solutions);

struct CutIndex {
    std::size_t k = 0;
    std::ptrdiff_t d = 0;
};

/// Smallest k in 1..n-1 with u_0, ..., u_{k-1} zero-sum and u_k not.
std::optional<CutIndex> find_cut_index(const AlignedEquation& equation, const Alphabet& valuation);
/// With three or more nonempty solutions, all of them are longer than d.
LemmaCheck check_cut_index_lemma(const NormalFormEquation& equation, const SolutionSet& solutions);

struct PeriodicCut {
    std::size_t j = 0;
    std::ptrdiff_t bound = 0;  // |v_0..v_{j-1}| - |u_0..u_j|
};

/// Largest j such that |u_0|, ..., |u_{j-1}|, |v_0|, ..., |v_{j-1}| are all
/// divisible by |p|. Throws std::invalid_argument if p is empty or not
/// primitive, or if u_0 or v_n is nonempty.
PeriodicCut periodic_cut_index(const AlignedEquation& equation, const Word& p);
/// For solution sets [p^*]: j > 0 and bound <= |p|.
LemmaCheck check_periodic_cut_lemma(const AlignedEquation& equation, const SolutionSet& solutions);

// ---- empty solution from abelian equivalence ----

struct AbelianSplit {
    Word u;
    char letter = '\0';  // '\0' when m = 0
    std::size_t m = 0;
};

/// A split u_n = u a^m with u_0..u_{n-1} u a prefix of v_0..v_n; the largest m
/// is preferred.
std::optional<AbelianSplit> abelian_split(const AlignedEquation& equation);
/// Throws std::invalid_argument if E has no nonempty solution or no split.
bool has_empty_by_abelian(const AlignedEquation& equation);
LemmaCheck check_empty_solution_lemma(const AlignedEquation& equation, const SolutionSet& solutions);

// ---- the reduction chain ----

/// g(psw_offset(w)) where g sends `low` to 'b' and every other value to 'a'.
Word f_map(std::string_view w, const Rational& low, const Alphabet& valuation, const Rational& offset = 0);

struct ChainStep {
    std::string label;
    AlignedEquation equation;
    nlohmann::json certificate;
};

struct ChainResult {
    std::vector<ChainStep> steps;
    /// Why the chain does not apply to this input.
    std::optional<std::string> verdict;
    /// Where the steps stopped, when they did not reach a terminal equation.
    std::optional<std::string> stopped;
    bool completed = false;
    /// A completed chain on a finite set with three or more nonempty solutions.
    bool violation = false;

    bool reached(std::string_view label) const;
    nlohmann::json to_json() const;
};

/// Runs the case analysis of the reduction chain on E1. When the input is not
/// a finite-set instance with three or more nonempty solutions the steps are
/// still carried out on a sample of its nonempty solutions, as far as their
/// hypotheses allow, and the verdict says why the chain is not applicable.
ChainResult build_reduction_chain(const NormalFormEquation& equation,
                                  const std::optional<SolutionSet>& known = std::nullopt);

}  // namespace wordeq
