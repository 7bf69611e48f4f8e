#include "wordeq/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "wordeq/solver.hpp"

namespace wordeq {

namespace {

Word concat(const std::vector<Word>& blocks) {
    Word out;
    for (const auto& b : blocks) {
        out += b;
    }
    return out;
}

std::ptrdiff_t signed_len(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

// Nonempty solution count: nullopt for infinitely many.
std::optional<std::size_t> nonempty_count_of(const SolutionSet& set) {
    if (set.kind() != SolutionSet::Kind::finite) {
        return std::nullopt;
    }
    return set.nonempty_count();
}

bool at_least_three_nonempty(const SolutionSet& set) {
    auto count = nonempty_count_of(set);
    return !count || *count >= 3;
}

nlohmann::json words_json(const std::vector<Word>& words) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& w : words) {
        out.push_back(w);
    }
    return out;
}

// Members of `set` up to a length that covers its interesting part.
std::vector<Word> members_for_comparison(const SolutionSet& set) {
    if (set.kind() == SolutionSet::Kind::finite) {
        return set.solutions();
    }
    const auto period = std::max<std::size_t>(1, set.p().size() + set.q().size());
    return set.members_up_to(std::max<std::size_t>(16, set.p().size() + 4 * period));
}

}  // namespace

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::holds:
            return "holds";
        case Outcome::violated:
            return "violated";
        case Outcome::not_applicable:
            return "not_applicable";
    }
    return "?";
}

std::vector<Word> nonempty_sample(const SolutionSet& set, std::size_t count) {
    std::vector<Word> out;
    switch (set.kind()) {
        case SolutionSet::Kind::all:
            return out;
        case SolutionSet::Kind::finite:
            for (const auto& w : set.solutions()) {
                if (!w.empty()) {
                    out.push_back(w);
                }
            }
            return out;
        case SolutionSet::Kind::infinite: {
            const auto period = set.p().size() + set.q().size();
            for (const auto& w : set.members_up_to(set.p().size() + (count + 1) * period)) {
                if (!w.empty() && out.size() < count) {
                    out.push_back(w);
                }
            }
            return out;
        }
    }
    return out;
}

std::vector<Word> solution_sample(const SolutionSet& set, std::size_t count) {
    auto out = nonempty_sample(set, count);
    if (set.kind() != SolutionSet::Kind::all && set.contains("")) {
        out.insert(out.begin(), Word{});
    }
    return out;
}

// ---- zero-sum solutions ----

Rational area_identity_residual(const AlignedEquation& equation, const Word& x, const Alphabet& valuation) {
    const auto n = equation.n();
    std::int64_t weighted = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        weighted += static_cast<std::int64_t>(i) *
                    (static_cast<std::int64_t>(equation.u(i).size()) - static_cast<std::int64_t>(equation.v(i).size()));
    }
    Rational prefix_gap = 0;
    Rational su = 0;
    Rational sv = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        su += word_sum(equation.u(i - 1), valuation);
        sv += word_sum(equation.v(i - 1), valuation);
        prefix_gap += su - sv;
    }
    return word_sum(x, valuation) * weighted + prefix_gap * static_cast<std::int64_t>(x.size());
}

Rational area_difference(const AlignedEquation& equation, const Word& x, const Alphabet& valuation) {
    const auto eq = equation.to_equation();
    const Rational with_x = area(substitute(eq.lhs, x), valuation) - area(substitute(eq.rhs, x), valuation);
    const Rational without = area(concat(equation.u()), valuation) - area(concat(equation.v()), valuation);
    return with_x - without;
}

LemmaCheck check_zero_sum_solutions(const NormalFormEquation& equation, const SolutionSet& solutions) {
    if (!check_normal_form(equation.base, equation.witness, equation.valuation).all()) {
        return LemmaCheck::skip("not in normal form");
    }
    for (const auto& x : solution_sample(solutions, 4)) {
        const auto residual = area_identity_residual(equation.base, x, equation.valuation);
        if (word_sum(x, equation.valuation) != Rational(0)) {
            return LemmaCheck::violated("solution '" + x + "' is not zero-sum");
        }
        if (residual != Rational(0)) {
            return LemmaCheck::violated("area residual " + to_string(residual) + " for '" + x + "'");
        }
        if (area_difference(equation.base, x, equation.valuation) != residual) {
            return LemmaCheck::violated("area identity mismatch for '" + x + "'");
        }
    }
    return LemmaCheck::holds();
}

// ---- prefix profile ----

PrefixSumProfile prefix_profile(const AlignedEquation& equation, const Alphabet& valuation) {
    PrefixSumProfile profile;
    Rational su = 0;
    Rational sv = 0;
    for (std::size_t i = 1; i <= equation.n(); ++i) {
        su += word_sum(equation.u(i - 1), valuation);
        sv += word_sum(equation.v(i - 1), valuation);
        profile.s.push_back(su);
        profile.t.push_back(sv);
    }
    return profile;
}

bool lemma_st_holds(const AlignedEquation& equation, const Alphabet& valuation) {
    auto profile = prefix_profile(equation, valuation);
    std::sort(profile.s.begin(), profile.s.end());
    std::sort(profile.t.begin(), profile.t.end());
    return profile.s == profile.t;
}

LemmaCheck check_prefix_permutation(const AlignedEquation& equation, const SolutionSet& solutions,
                                    const Alphabet& valuation) {
    if (equation.is_trivial() || solutions.kind() == SolutionSet::Kind::all) {
        return LemmaCheck::skip("trivial equation");
    }
    std::size_t zero_sum = 0;
    for (const auto& x : solution_sample(solutions, 4)) {
        if (valuation.covers(x) && word_sum(x, valuation) == Rational(0)) {
            ++zero_sum;
        }
    }
    if (zero_sum < 2) {
        return LemmaCheck::skip("fewer than two zero-sum solutions");
    }
    if (!lemma_st_holds(equation, valuation)) {
        return LemmaCheck::violated("prefix sums of u and v are not permutations of each other");
    }
    return LemmaCheck::holds();
}

// ---- heights ----

nlohmann::json HeightAnalysis::to_json() const {
    return {{"h", wordeq::to_string(h)}, {"i", i},         {"j", j},
            {"k", k},                    {"l", l},         {"phi_u", phi_u},
            {"phi_v", phi_v}};
}

HeightAnalysis height_analysis(const AlignedEquation& equation, const Alphabet& valuation) {
    if (equation.n() == 0) {
        throw std::invalid_argument("height_analysis: the equation has no variable");
    }
    const Word left = concat(equation.u());
    const Word right = concat(equation.v());
    if (left.empty()) {
        throw std::invalid_argument("height_analysis: empty constants");
    }
    HeightAnalysis out;
    const auto profile = prefix_profile(equation, valuation);
    const auto max_s = *std::max_element(profile.s.begin(), profile.s.end());
    const auto max_t = *std::max_element(profile.t.begin(), profile.t.end());
    out.h = height(left, valuation).value() - max_s;
    out.k = static_cast<std::size_t>(std::find(profile.s.begin(), profile.s.end(), max_s) - profile.s.begin()) + 1;
    out.l = static_cast<std::size_t>(std::find(profile.t.begin(), profile.t.end(), max_t) - profile.t.begin()) + 1;

    // Block containing the last letter of the highest prefix.
    auto locate = [](const std::vector<Word>& blocks, const Word& whole, const Alphabet& val, std::size_t& index,
                     Word& phi) {
        const auto reach = highest_prefix(whole, val).size();
        std::size_t before = 0;
        for (index = 0; index < blocks.size(); ++index) {
            if (before + blocks[index].size() >= reach) {
                phi = blocks[index].substr(0, reach - before);
                return;
            }
            before += blocks[index].size();
        }
    };
    locate(equation.u(), left, valuation, out.i, out.phi_u);
    if (!right.empty()) {
        locate(equation.v(), right, valuation, out.j, out.phi_v);
    }
    return out;
}

LemmaCheck check_height_lemma(const NormalFormEquation& equation, const SolutionSet& solutions) {
    if (!check_normal_form(equation.base, equation.witness, equation.valuation).all()) {
        return LemmaCheck::skip("not in normal form");
    }
    const auto analysis = height_analysis(equation.base, equation.valuation);
    if (analysis.i <= analysis.j) {
        return LemmaCheck::violated("highest points do not satisfy i > j");
    }
    const Height h(analysis.h);
    const auto nonempty = nonempty_sample(solutions, 4);
    if (at_least_three_nonempty(solutions)) {
        for (const auto& x : nonempty) {
            if (height(x, equation.valuation) != h) {
                return LemmaCheck::violated("solution '" + x + "' has height " +
                                            height(x, equation.valuation).to_string() + ", expected " + h.to_string());
            }
        }
        return LemmaCheck::holds("three or more nonempty solutions");
    }
    if (nonempty.size() == 2) {
        if (height(nonempty[0], equation.valuation) != h) {
            return LemmaCheck::violated("shorter solution '" + nonempty[0] + "' is not of height " + h.to_string());
        }
        if (height(nonempty[1], equation.valuation) < h) {
            return LemmaCheck::violated("longer solution '" + nonempty[1] + "' is below height " + h.to_string());
        }
        return LemmaCheck::holds("two nonempty solutions");
    }
    return LemmaCheck::skip("fewer than two nonempty solutions");
}

// ---- compression ----

std::string CodeSpec::to_string() const {
    return kind == Kind::minimal_zero_sum ? "minimal-zero-sum" : "blocks(" + std::to_string(block_length) + ")";
}

std::optional<std::vector<Word>> CodeCompressor::factorize(const Word& w) const {
    if (spec_.kind == CodeSpec::Kind::minimal_zero_sum) {
        if (!valuation_.covers(w) || word_sum(w, valuation_) != Rational(0)) {
            return std::nullopt;
        }
        return zero_sum_factorize(w, valuation_);
    }
    if (spec_.block_length == 0) {
        throw std::invalid_argument("block code of length 0");
    }
    if (w.size() % spec_.block_length != 0) {
        return std::nullopt;
    }
    std::vector<Word> out;
    for (std::size_t i = 0; i < w.size(); i += spec_.block_length) {
        out.push_back(w.substr(i, spec_.block_length));
    }
    return out;
}

std::optional<Word> CodeCompressor::encode(const Word& w) {
    auto factors = factorize(w);
    if (!factors) {
        return std::nullopt;
    }
    Word out;
    for (const auto& f : *factors) {
        auto it = forward_.find(f);
        if (it == forward_.end()) {
            if (next_ > 'z') {
                throw std::length_error("compression needs more fresh letters than c..z");
            }
            it = forward_.emplace(f, next_).first;
            backward_.emplace(next_, f);
            ++next_;
        }
        out += it->second;
    }
    return out;
}

Word CodeCompressor::decode(std::string_view w) const {
    Word out;
    for (char c : w) {
        out += backward_.at(c);
    }
    return out;
}

nlohmann::json CodeCompressor::letters_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [letter, factor] : backward_) {
        out[std::string(1, letter)] = factor;
    }
    return out;
}

Compression compress_by_code(const AlignedEquation& equation, CodeSpec code, const Alphabet& valuation) {
    CodeCompressor compressor(code, valuation);
    std::vector<Word> u;
    std::vector<Word> v;
    for (const auto* side : {&equation.u(), &equation.v()}) {
        auto& out = side == &equation.u() ? u : v;
        for (const auto& block : *side) {
            auto image = compressor.encode(block);
            if (!image) {
                throw std::invalid_argument("compress_by_code: constant '" + block + "' is not in Z* for code " +
                                            code.to_string());
            }
            out.push_back(*image);
        }
    }
    return {AlignedEquation(std::move(u), std::move(v)), std::move(compressor)};
}

LemmaCheck check_compression(const AlignedEquation& equation, const SolutionSet& solutions, CodeSpec code,
                             const Alphabet& valuation) {
    if (solutions.kind() == SolutionSet::Kind::all) {
        return LemmaCheck::skip("trivial equation");
    }
    std::optional<Compression> compressed;
    try {
        compressed.emplace(compress_by_code(equation, code, valuation));
    } catch (const std::invalid_argument&) {
        return LemmaCheck::skip("constants not in Z*");
    } catch (const std::length_error&) {
        return LemmaCheck::skip("too many code words");
    }
    auto& [small, compressor] = *compressed;

    const auto original = members_for_comparison(solutions);
    std::size_t limit = 0;
    for (const auto& x : original) {
        limit = std::max(limit, x.size());
    }
    std::vector<Word> images;
    try {
        for (const auto& x : original) {
            if (auto y = compressor.encode(x)) {
                if (!substitute_check(small, *y)) {
                    return LemmaCheck::violated("image of '" + x + "' does not solve " + small.to_string());
                }
                images.push_back(*y);
            }
        }
    } catch (const std::length_error&) {
        return LemmaCheck::skip("too many code words");
    }

    const auto small_set = classify(small);
    std::vector<Word> preimages_in_range;
    for (const auto& y : members_for_comparison(small_set)) {
        Word x;
        try {
            x = compressor.decode(y);
        } catch (const std::out_of_range&) {
            return LemmaCheck::violated("compressed solution '" + y + "' uses an unmapped letter");
        }
        if (!substitute_check(equation, x)) {
            return LemmaCheck::violated("compressed solution '" + y + "' decodes to non-solution '" + x + "'");
        }
        if (x.size() <= limit) {
            preimages_in_range.push_back(y);
        }
    }
    std::sort(images.begin(), images.end());
    std::sort(preimages_in_range.begin(), preimages_in_range.end());
    if (solutions.is_finite() && images != preimages_in_range) {
        return LemmaCheck::violated("solutions in Z* and compressed solutions differ");
    }
    if (solutions.is_finite() && !small_set.is_finite()) {
        return LemmaCheck::violated("compressed equation has infinitely many solutions");
    }
    return LemmaCheck::holds(code.to_string());
}

// ---- cutting ----

std::ptrdiff_t cut_length(const AlignedEquation& equation, std::size_t k) {
    const auto sk = static_cast<std::ptrdiff_t>(k);
    return signed_len(equation.prefix_v(sk - 1)) - signed_len(equation.prefix_u(sk));
}

AlignedEquation cut_equation(const AlignedEquation& equation, std::size_t k, const Word& y) {
    if (k > equation.n()) {
        throw std::invalid_argument("cut_equation: index out of range");
    }
    const auto d = cut_length(equation, k);
    if (d < 0) {
        throw std::invalid_argument("cut_equation: negative cut length at k = " + std::to_string(k));
    }
    if (signed_len(y.size()) != d) {
        throw std::invalid_argument("cut_equation: |y| must be " + std::to_string(d));
    }
    std::vector<Word> u(equation.u().begin(), equation.u().begin() + static_cast<std::ptrdiff_t>(k) + 1);
    u.back() += y;
    std::vector<Word> v(equation.v().begin(), equation.v().begin() + static_cast<std::ptrdiff_t>(k));
    v.emplace_back();
    return AlignedEquation(std::move(u), std::move(v));
}

std::optional<Word> common_prefix_of_nonempty(const SolutionSet& solutions, std::size_t d) {
    const auto sample = nonempty_sample(solutions, 1);
    if (sample.empty() || sample.front().size() < d) {
        return std::nullopt;
    }
    return sample.front().substr(0, d);
}

LemmaCheck check_cut_lemma(const AlignedEquation& equation, const SolutionSet& solutions) {
    const auto nonempty = nonempty_sample(solutions, 4);
    if (nonempty.empty()) {
        return LemmaCheck::skip("no nonempty solution");
    }
    std::size_t cuts = 0;
    for (std::size_t k = 0; k <= equation.n(); ++k) {
        const auto d = cut_length(equation, k);
        if (d < 0) {
            continue;
        }
        auto y = common_prefix_of_nonempty(solutions, static_cast<std::size_t>(d));
        if (!y) {
            continue;
        }
        const auto cut = cut_equation(equation, k, *y);
        for (const auto& x : nonempty) {
            if (!substitute_check(cut, x)) {
                return LemmaCheck::violated("'" + x + "' does not solve the cut " + cut.to_string());
            }
        }
        ++cuts;
    }
    if (cuts == 0) {
        return LemmaCheck::skip("no admissible cut index");
    }
    return LemmaCheck::holds(std::to_string(cuts) + " cuts");
}

std::optional<CutIndex> find_cut_index(const AlignedEquation& equation, const Alphabet& valuation) {
    for (std::size_t i = 0; i < equation.n(); ++i) {
        if (word_sum(equation.u(i), valuation) != Rational(0)) {
            if (i == 0) {
                return std::nullopt;
            }
            return CutIndex{i, cut_length(equation, i)};
        }
    }
    return std::nullopt;
}

LemmaCheck check_cut_index_lemma(const NormalFormEquation& equation, const SolutionSet& solutions) {
    if (!at_least_three_nonempty(solutions) || solutions.kind() == SolutionSet::Kind::all) {
        return LemmaCheck::skip("fewer than three nonempty solutions");
    }
    if (!check_normal_form(equation.base, equation.witness, equation.valuation).all()) {
        return LemmaCheck::skip("not in normal form");
    }
    const auto index = find_cut_index(equation.base, equation.valuation);
    if (!index) {
        return LemmaCheck::skip("no cut index");
    }
    for (const auto& x : nonempty_sample(solutions, 4)) {
        if (signed_len(x.size()) <= index->d) {
            return LemmaCheck::violated("solution '" + x + "' is not longer than " + std::to_string(index->d));
        }
    }
    return LemmaCheck::holds("k = " + std::to_string(index->k));
}

PeriodicCut periodic_cut_index(const AlignedEquation& equation, const Word& p) {
    if (p.empty() || !is_primitive(p)) {
        throw std::invalid_argument("periodic_cut_index: '" + p + "' is not a primitive word");
    }
    if (!equation.u(0).empty() || !equation.v(equation.n()).empty()) {
        throw std::invalid_argument("periodic_cut_index: u_0 and v_n must be empty");
    }
    PeriodicCut out;
    out.j = equation.n();
    for (std::size_t i = 0; i < equation.n(); ++i) {
        if (equation.u(i).size() % p.size() != 0 || equation.v(i).size() % p.size() != 0) {
            out.j = i;
            break;
        }
    }
    out.bound = cut_length(equation, out.j);
    return out;
}

LemmaCheck check_periodic_cut_lemma(const AlignedEquation& equation, const SolutionSet& solutions) {
    if (solutions.kind() != SolutionSet::Kind::infinite || !solutions.p().empty()) {
        return LemmaCheck::skip("solution set is not of the form [p*]");
    }
    if (!equation.u(0).empty() || !equation.v(equation.n()).empty()) {
        return LemmaCheck::skip("u_0 or v_n nonempty");
    }
    const auto& p = solutions.q();
    const auto cut = periodic_cut_index(equation, p);
    if (cut.j == 0) {
        return LemmaCheck::violated("periodic cut index is 0");
    }
    if (cut.bound > signed_len(p.size())) {
        return LemmaCheck::violated("cut length " + std::to_string(cut.bound) + " exceeds |p| = " +
                                    std::to_string(p.size()));
    }
    return LemmaCheck::holds("j = " + std::to_string(cut.j));
}

// ---- abelian argument ----

std::optional<AbelianSplit> abelian_split(const AlignedEquation& equation) {
    const auto n = equation.n();
    if (n == 0) {
        return std::nullopt;
    }
    const Word& last = equation.u(n);
    const Word head = equation.u_concat(0, n);
    const Word right = concat(equation.v());
    std::size_t run = 0;
    while (run < last.size() && last[last.size() - 1 - run] == last.back()) {
        ++run;
    }
    for (std::size_t m = run + 1; m-- > 0;) {
        const Word u = last.substr(0, last.size() - m);
        if (is_prefix(head + u, right)) {
            return AbelianSplit{u, m > 0 ? last.back() : '\0', m};
        }
    }
    return std::nullopt;
}

bool has_empty_by_abelian(const AlignedEquation& equation) {
    if (nonempty_sample(classify(equation), 1).empty() && !equation.is_trivial()) {
        throw std::invalid_argument("has_empty_by_abelian: no nonempty solution");
    }
    if (!abelian_split(equation)) {
        throw std::invalid_argument("has_empty_by_abelian: u_n has no admissible split");
    }
    return substitute_check(equation, "");
}

LemmaCheck check_empty_solution_lemma(const AlignedEquation& equation, const SolutionSet& solutions) {
    if (solutions.kind() != SolutionSet::Kind::all && nonempty_sample(solutions, 1).empty()) {
        return LemmaCheck::skip("no nonempty solution");
    }
    const auto split = abelian_split(equation);
    if (!split) {
        return LemmaCheck::skip("no admissible split of u_n");
    }
    if (!substitute_check(equation, "")) {
        return LemmaCheck::violated("split with m = " + std::to_string(split->m) + " but the empty word is no solution");
    }
    return LemmaCheck::holds("m = " + std::to_string(split->m));
}

// ---- chain ----

Word f_map(std::string_view w, const Rational& low, const Alphabet& valuation, const Rational& offset) {
    Word out;
    for (const auto& value : psw(w, valuation, offset)) {
        out += value == low ? 'b' : 'a';
    }
    return out;
}

bool ChainResult::reached(std::string_view label) const {
    return std::any_of(steps.begin(), steps.end(), [&](const ChainStep& s) { return s.label == label; });
}

nlohmann::json ChainResult::to_json() const {
    nlohmann::json out;
    out["steps"] = nlohmann::json::array();
    for (const auto& step : steps) {
        out["steps"].push_back(
            {{"label", step.label}, {"equation", step.equation.to_string()}, {"certificate", step.certificate}});
    }
    out["verdict"] = verdict ? nlohmann::json(*verdict) : nlohmann::json(nullptr);
    out["stopped"] = stopped ? nlohmann::json(*stopped) : nlohmann::json(nullptr);
    out["completed"] = completed;
    out["violation"] = violation;
    return out;
}

namespace {

bool all_solve(const AlignedEquation& equation, const std::vector<Word>& words) {
    return std::all_of(words.begin(), words.end(), [&](const Word& x) { return substitute_check(equation, x); });
}

// Block-code compression of a cut equation followed by the empty-solution check.
void finish_with_blocks(ChainResult& result, const AlignedEquation& e4, std::size_t period,
                        const std::vector<Word>& sample) {
    for (const auto& block : e4.u()) {
        if (block.size() % period != 0) {
            result.stopped = "E4 constants are not in Γ^" + std::to_string(period);
            return;
        }
    }
    for (const auto& block : e4.v()) {
        if (block.size() % period != 0) {
            result.stopped = "E4 constants are not in Γ^" + std::to_string(period);
            return;
        }
    }
    auto compressed = compress_by_code(e4, CodeSpec::blocks(period));
    std::vector<Word> images;
    for (const auto& x : sample) {
        if (auto y = compressed.compressor.encode(x)) {
            images.push_back(*y);
        }
    }
    const auto split = abelian_split(compressed.equation);
    nlohmann::json cert = {{"lemma", "code compression"},
                           {"code", CodeSpec::blocks(period).to_string()},
                           {"letters", compressed.compressor.letters_json()},
                           {"images", words_json(images)},
                           {"empty_solution", substitute_check(compressed.equation, "")},
                           {"abelian_split_m", split ? nlohmann::json(split->m) : nlohmann::json(nullptr)}};
    result.steps.push_back({"E5", compressed.equation, cert});
    if (!all_solve(compressed.equation, images)) {
        result.stopped = "E5 lost a solution";
        return;
    }
    if (!substitute_check(compressed.equation, "")) {
        result.stopped = "E5 lacks the empty solution";
        return;
    }
    result.completed = true;
}

}  // namespace

ChainResult build_reduction_chain(const NormalFormEquation& input, const std::optional<SolutionSet>& known) {
    ChainResult result;
    const AlignedEquation& e1 = input.base;
    const SolutionSet solutions = known ? *known : classify(e1);
    const auto sample = nonempty_sample(solutions, 3);

    const auto count = nonempty_count_of(solutions);
    if (solutions.kind() != SolutionSet::Kind::finite) {
        result.verdict = "not a finite-set instance";
    } else if (*count < 3) {
        result.verdict = "fewer than 3 nonempty solutions; chain not applicable";
    }
    result.steps.push_back({"E1", e1, {{"solutions", solutions.to_json()}, {"sample", words_json(sample)}}});
    if (!substitute_check(e1, "") || sample.empty()) {
        result.stopped = "E1 needs the empty solution and a nonempty one";
        return result;
    }

    Alphabet valuation = input.valuation;
    const auto n = e1.n();
    std::optional<std::size_t> k;
    for (std::size_t i = 0; i < n; ++i) {
        if (word_sum(e1.u(i), valuation) != Rational(0)) {
            k = i;
            break;
        }
    }

    if (!k) {
        // Every block is zero-sum: compress by the minimal zero-sum words.
        std::optional<Compression> compressed;
        try {
            compressed.emplace(compress_by_code(e1, CodeSpec::minimal_zero_sum(), valuation));
        } catch (const std::invalid_argument&) {
            result.stopped = "constants are not all zero-sum";
            return result;
        }
        std::vector<Word> images;
        for (const auto& x : sample) {
            if (auto y = compressed->compressor.encode(x)) {
                images.push_back(*y);
            }
        }
        result.steps.push_back({"E2", compressed->equation,
                                {{"lemma", "code compression"},
                                 {"code", CodeSpec::minimal_zero_sum().to_string()},
                                 {"letters", compressed->compressor.letters_json()},
                                 {"images", words_json(images)},
                                 {"shorter", compressed->equation.length() < e1.length()}}});
        if (images.size() != sample.size() || !all_solve(compressed->equation, images)) {
            result.stopped = "compression lost a solution";
            return result;
        }
        result.completed = true;
        result.violation = !result.verdict;
        return result;
    }

    const bool negate = word_sum(e1.u(*k), valuation) < 0;
    if (negate) {
        valuation = valuation.negated();
    }
    const auto d = cut_length(e1, *k);
    const Word& x1 = sample.front();
    if (d < 0 || std::any_of(sample.begin(), sample.end(), [&](const Word& x) { return signed_len(x.size()) <= d; })) {
        result.stopped = "a nonempty solution is not longer than the cut length " + std::to_string(d);
        return result;
    }
    const Word y = x1.substr(0, static_cast<std::size_t>(d));
    const auto e2 = cut_equation(e1, *k, y);
    result.steps.push_back({"E2", e2,
                            {{"lemma", "cut"},
                             {"k", *k},
                             {"y", y},
                             {"negated_valuation", negate},
                             {"shorter", e2.length() < e1.length()}}});
    if (!all_solve(e2, sample)) {
        result.stopped = "E2 lost a solution";
        return result;
    }

    // E3: the length-preserving map f = g . psw applied block by block.
    const auto x1_sums = psw(x1, valuation);
    const Rational low = *std::min_element(x1_sums.begin(), x1_sums.end());
    std::vector<Word> u3;
    std::vector<Word> v3;
    for (std::size_t i = 0; i < e2.u().size(); ++i) {
        u3.push_back(f_map(e2.u(i), low, valuation));
        v3.push_back(f_map(e2.v(i), low, valuation));
    }
    const AlignedEquation e3(std::move(u3), std::move(v3));
    std::vector<Word> mapped;
    for (const auto& x : sample) {
        mapped.push_back(f_map(x, low, valuation));
    }
    const auto e3_split = abelian_split(e3);
    const bool e3_empty = substitute_check(e3, "");
    result.steps.push_back({"E3", e3,
                            {{"lemma", "f-map"},
                             {"low", to_string(low)},
                             {"images", words_json(mapped)},
                             {"empty_solution", e3_empty},
                             {"abelian_split_m", e3_split ? nlohmann::json(e3_split->m) : nlohmann::json(nullptr)}}});
    if (!all_solve(e3, mapped)) {
        result.stopped = "E3 lost a solution";
        return result;
    }
    if (!e3_empty) {
        result.stopped = "E3 lacks the empty solution";
        return result;
    }
    const auto e3_set = classify(e3);
    if (e3_set.is_finite()) {
        result.completed = true;
        result.violation = !result.verdict;
        return result;
    }
    if (e3_set.kind() != SolutionSet::Kind::infinite || !e3_set.p().empty()) {
        result.stopped = "E3 solution set is not of the form [p*]";
        return result;
    }
    const Word& period_word = e3_set.q();
    const auto cut = periodic_cut_index(e3, period_word);
    const auto period = period_word.size();
    if (std::any_of(sample.begin(), sample.end(), [&](const Word& x) { return x.size() % period != 0; })) {
        result.stopped = "solution lengths are not multiples of the E3 period";
        return result;
    }

    AlignedEquation e4 = e2;
    Word z = y;
    if (cut.j < *k) {
        const auto dj = cut_length(e1, cut.j);
        if (dj < 0 || signed_len(x1.size()) < dj) {
            result.stopped = "no cut at the periodic index";
            return result;
        }
        z = x1.substr(0, static_cast<std::size_t>(dj));
        e4 = cut_equation(e1, cut.j, z);
    }
    result.steps.push_back({"E4", e4,
                            {{"lemma", "periodic cut"},
                             {"p", period_word},
                             {"j", cut.j},
                             {"z", z},
                             {"z_within_period", z.size() <= period}}});
    if (!all_solve(e4, sample)) {
        result.stopped = "E4 lost a solution";
        return result;
    }
    finish_with_blocks(result, e4, period, sample);
    if (result.completed) {
        result.violation = !result.verdict;
    }
    return result;
}

}  // namespace wordeq
