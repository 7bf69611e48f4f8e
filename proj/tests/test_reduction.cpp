#include <gtest/gtest.h>

#include <random>

#include "wordeq/reduction.hpp"
#include "wordeq/solver.hpp"

using namespace wordeq;

namespace {

const char* kThree = "X aXb X aabb ab aXb abaabbab = abaabbab aXb ab aabb X aXb X";

AlignedEquation aligned(const std::string& text) { return align(parse_equation(text)); }
Alphabet unit() { return Alphabet::parse("a=1,b=-1"); }

NormalFormEquation nf(const std::string& text, const Word& witness, const Alphabet& valuation) {
    return {aligned(text), witness, valuation};
}

std::vector<Rational> ints(std::initializer_list<std::int64_t> values) {
    std::vector<Rational> out;
    for (auto v : values) {
        out.emplace_back(v);
    }
    return out;
}

}  // namespace

TEST(ZeroSumSolutions, Examples) {
    const auto two = nf("XaXbab = abaXbX", "ab", unit());
    EXPECT_EQ(check_zero_sum_solutions(two, classify(two.base)).outcome, Outcome::holds);

    const auto three = nf(kThree, "ab", unit());
    const auto set = classify(three.base);
    EXPECT_EQ(check_zero_sum_solutions(three, set).outcome, Outcome::holds);
    for (const auto& x : set.solutions()) {
        EXPECT_EQ(word_sum(x, unit()), Rational(0));
        EXPECT_EQ(area_identity_residual(three.base, x, unit()), Rational(0));
    }

    // Not in normal form: the guard reports it, it is no lemma failure.
    const auto guarded = nf("XXbaaba = aabaXbX", "a", unit());
    EXPECT_EQ(check_zero_sum_solutions(guarded, classify(guarded.base)).outcome, Outcome::not_applicable);
}

// The closed form of the area difference equals the direct computation for
// arbitrary words, solutions or not.
TEST(AreaIdentity, MatchesDirectComputation) {
    std::mt19937_64 rng(17);
    const auto alpha = Alphabet::parse("a=2,b=-1,c=1/3");
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> pick(0, 2);
    for (const char* text : {kThree, "XaXbab = abaXbX", "XcXa = acXX", "XXbaaba = aabaXbX"}) {
        const auto e = aligned(text);
        for (int trial = 0; trial < 100; ++trial) {
            Word x;
            for (int i = len(rng); i > 0; --i) {
                x.push_back("abc"[pick(rng)]);
            }
            EXPECT_EQ(area_identity_residual(e, x, alpha), area_difference(e, x, alpha)) << text << " " << x;
        }
    }
}

TEST(PrefixProfile, Examples) {
    const auto two = prefix_profile(aligned("XaXbab = abaXbX"), unit());
    EXPECT_EQ(two.s, ints({0, 1}));
    EXPECT_EQ(two.t, ints({1, 0}));
    EXPECT_TRUE(lemma_st_holds(aligned("XaXbab = abaXbX"), unit()));

    const auto one = prefix_profile(aligned("Xab = abX"), unit());
    EXPECT_EQ(one.s, ints({0}));
    EXPECT_EQ(one.t, ints({0}));

    const auto three = aligned(kThree);
    EXPECT_TRUE(lemma_st_holds(three, unit()));
    EXPECT_EQ(check_prefix_permutation(three, classify(three), unit()).outcome, Outcome::holds);

    const auto single = aligned("XXbaaba = aabaXbX");
    EXPECT_EQ(check_prefix_permutation(single, SolutionSet::finite({"a"}), unit()).outcome, Outcome::not_applicable);
}

TEST(HeightAnalysis, WorkedExample) {
    const auto e = aligned(kThree);
    const auto a = height_analysis(e, unit());
    EXPECT_EQ(a.h, Rational(1));
    EXPECT_EQ(a.i, 3u);
    EXPECT_EQ(a.j, 0u);
    EXPECT_EQ(a.k, 2u);
    EXPECT_EQ(a.l, 1u);
    EXPECT_EQ(a.phi_u, "aa");
    EXPECT_EQ(a.phi_v, "abaa");

    EXPECT_EQ(highest_prefix("ab", unit()), "a");
    EXPECT_EQ(highest_prefix("abaabbab", unit()), "abaa");
    EXPECT_TRUE(height("", unit()).is_bottom());
    EXPECT_EQ(height("ab", unit()), Height(Rational(1)));
    EXPECT_EQ(height("abaabbab", unit()), Height(Rational(2)));

    const auto check = check_height_lemma({e, "ab", unit()}, classify(e));
    EXPECT_EQ(check.outcome, Outcome::holds);
    EXPECT_EQ(check.detail, "two nonempty solutions");
}

TEST(Compression, Examples) {
    const auto e = aligned("Xabab = ababX");
    auto minimal = compress_by_code(e, CodeSpec::minimal_zero_sum(), unit());
    EXPECT_EQ(minimal.equation, aligned("Xcc = ccX"));
    EXPECT_EQ(minimal.compressor.decode("c"), "ab");

    auto blocks = compress_by_code(e, CodeSpec::blocks(2));
    EXPECT_EQ(blocks.equation, aligned("Xcc = ccX"));
    EXPECT_EQ(blocks.compressor.letters().size(), 1u);
    EXPECT_EQ(blocks.compressor.letters_json().dump(), R"({"c":"ab"})");

    EXPECT_THROW(compress_by_code(aligned("Xaab = aabX"), CodeSpec::minimal_zero_sum(), unit()), std::invalid_argument);
    EXPECT_THROW(compress_by_code(aligned("Xaab = aabX"), CodeSpec::blocks(2)), std::invalid_argument);
}

TEST(Compression, FreshLettersInOrderOfUse) {
    CodeCompressor c(CodeSpec::blocks(1), {});
    EXPECT_EQ(c.encode("bab"), "cdc");
    EXPECT_EQ(c.decode("dc"), "ab");
    EXPECT_THROW(c.decode("e"), std::out_of_range);
}

TEST(Compression, SolutionCorrespondence) {
    for (const char* text : {"Xabab = ababX", "XaXbab = abaXbX", kThree, "XabbaXab = abXabbaX"}) {
        const auto e = aligned(text);
        const auto set = classify(e);
        EXPECT_NE(check_compression(e, set, CodeSpec::minimal_zero_sum(), unit()).outcome, Outcome::violated) << text;
        EXPECT_NE(check_compression(e, set, CodeSpec::blocks(2)).outcome, Outcome::violated) << text;
    }
    const auto e = aligned("Xabab = ababX");
    EXPECT_EQ(check_compression(e, classify(e), CodeSpec::blocks(2)).outcome, Outcome::holds);
}

TEST(Cut, Examples) {
    const auto e = aligned("XaXbab = abaXbX");
    EXPECT_EQ(cut_length(e, 1), 2);
    const auto cut = cut_equation(e, 1, "ab");
    EXPECT_EQ(cut, aligned("Xaab = abaX"));
    EXPECT_TRUE(substitute_check(cut, "ab"));
    EXPECT_EQ(substitute(cut.to_equation().lhs, "ab"), "abaab");

    const auto end = cut_equation(e, 2, "");
    EXPECT_EQ(cut_length(e, 2), 0);
    EXPECT_EQ(end, aligned("XaXbab = abaXbX"));

    EXPECT_EQ(common_prefix_of_nonempty(classify(e), 3), std::nullopt);
    EXPECT_THROW(cut_equation(e, 1, "a"), std::invalid_argument);
    EXPECT_THROW(cut_equation(e, 3, ""), std::invalid_argument);
    EXPECT_EQ(check_cut_lemma(e, classify(e)).outcome, Outcome::holds);
}

TEST(CutIndex, Hypotheses) {
    const auto three = aligned(kThree);
    EXPECT_EQ(check_cut_index_lemma({three, "ab", unit()}, classify(three)).outcome, Outcome::not_applicable);

    const auto all_zero = aligned("Xabab = ababX");
    EXPECT_EQ(find_cut_index(all_zero, unit()), std::nullopt);

    // u_0 is empty and u_1 = aab is not zero-sum.
    const auto mixed = aligned("XaabXab = abaXabX");
    const auto index = find_cut_index(mixed, unit());
    ASSERT_TRUE(index.has_value());
    EXPECT_EQ(index->k, 1u);
    EXPECT_EQ(index->d, cut_length(mixed, 1));
    // u_1 = ab is zero-sum and the only candidate left is k = n.
    EXPECT_EQ(find_cut_index(aligned("XabXaab = abaXabX"), unit()), std::nullopt);
}

TEST(PeriodicCut, Examples) {
    const auto a = periodic_cut_index(aligned("Xab = abX"), "ab");
    EXPECT_EQ(a.j, 1u);
    EXPECT_EQ(a.bound, 0);
    const auto b = periodic_cut_index(aligned("Xabab = ababX"), "ab");
    EXPECT_EQ(b.j, 1u);
    EXPECT_EQ(b.bound, 0);
    EXPECT_THROW(periodic_cut_index(aligned("Xab = abX"), "abab"), std::invalid_argument);
    EXPECT_THROW(periodic_cut_index(aligned("Xab = abX"), ""), std::invalid_argument);
    EXPECT_EQ(check_periodic_cut_lemma(aligned("Xab = abX"), SolutionSet::family("", "ab")).outcome, Outcome::holds);
}

TEST(Abelian, Examples) {
    const auto e = aligned("Xab = abX");
    const auto split = abelian_split(e);
    ASSERT_TRUE(split.has_value());
    EXPECT_EQ(split->u, "a");
    EXPECT_EQ(split->letter, 'b');
    EXPECT_EQ(split->m, 1u);
    EXPECT_TRUE(has_empty_by_abelian(e));

    // m = 0 happens when u_n is empty.
    const auto zero = aligned("aXbX = XabX");
    const auto degenerate = abelian_split(zero);
    ASSERT_TRUE(degenerate.has_value());
    EXPECT_EQ(degenerate->m, 0u);
    EXPECT_EQ(degenerate->letter, '\0');
    EXPECT_EQ(check_empty_solution_lemma(zero, classify(zero)).outcome, Outcome::holds);

    EXPECT_THROW(has_empty_by_abelian(aligned("XaXbab = baaXbX")), std::invalid_argument);
    EXPECT_EQ(check_empty_solution_lemma(aligned("Xa = aX"), SolutionSet::family("", "a")).outcome, Outcome::holds);
}

// For zero-sum w, f(ww') = f(w)f(w') with a common threshold.
TEST(FMap, MultiplicativeOnZeroSumPrefix) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> len(0, 8);
    std::uniform_int_distribution<int> pick(0, 1);
    const Rational low(-1);
    std::size_t tested = 0;
    while (tested < 300) {
        Word w;
        Word rest;
        for (int i = len(rng); i > 0; --i) {
            w.push_back("ab"[pick(rng)]);
        }
        for (int i = len(rng); i > 0; --i) {
            rest.push_back("ab"[pick(rng)]);
        }
        if (word_sum(w, unit()) != Rational(0)) {
            continue;
        }
        ++tested;
        EXPECT_EQ(f_map(w + rest, low, unit()), f_map(w, low, unit()) + f_map(rest, low, unit()));
    }
    EXPECT_EQ(f_map("aba", Rational(-1), Alphabet::parse("a=-1,b=2")), "baa");
}

TEST(ReductionChain, ThreeSolutionExample) {
    const auto e = aligned(kThree);
    const auto r = build_reduction_chain({e, "ab", unit()});
    ASSERT_TRUE(r.verdict.has_value());
    EXPECT_EQ(*r.verdict, "fewer than 3 nonempty solutions; chain not applicable");
    EXPECT_FALSE(r.violation);
}

TEST(ReductionChain, AllZeroSumBranch) {
    const auto e = aligned("Xabab = ababX");
    const auto r = build_reduction_chain({e, "ab", unit()});
    EXPECT_EQ(r.verdict, "not a finite-set instance");
    ASSERT_TRUE(r.reached("E2"));
    EXPECT_EQ(r.steps[1].equation, aligned("Xcc = ccX"));
    EXPECT_EQ(r.steps[1].certificate["lemma"], "code compression");
    EXPECT_TRUE(r.completed);
    EXPECT_FALSE(r.violation);
}

// An infinite-family instance that runs through every step of the chain.
TEST(ReductionChain, EveryStepOnSyntheticInstance) {
    const auto e = aligned("XabXaba = abaXbaX");
    const auto valuation = Alphabet::parse("a=1,b=-2");
    ASSERT_TRUE(check_normal_form(e, "aba", valuation).all());
    const auto r = build_reduction_chain({e, "aba", valuation});
    EXPECT_EQ(r.verdict, "not a finite-set instance");
    ASSERT_EQ(r.steps.size(), 5u);

    EXPECT_EQ(r.steps[1].label, "E2");
    EXPECT_EQ(r.steps[1].equation, aligned("Xaba = abaX"));
    EXPECT_EQ(r.steps[1].certificate["k"], 1);
    EXPECT_EQ(r.steps[1].certificate["y"], "a");

    EXPECT_EQ(r.steps[2].label, "E3");
    EXPECT_EQ(r.steps[2].equation, aligned("Xbaa = baaX"));
    EXPECT_EQ(r.steps[2].certificate["empty_solution"], true);

    EXPECT_EQ(r.steps[3].label, "E4");
    EXPECT_EQ(r.steps[3].certificate["p"], "baa");
    EXPECT_EQ(r.steps[3].certificate["j"], 1);

    EXPECT_EQ(r.steps[4].label, "E5");
    EXPECT_EQ(r.steps[4].equation, aligned("Xc = cX"));
    EXPECT_EQ(r.steps[4].certificate["code"], "blocks(3)");
    EXPECT_TRUE(r.completed);
    EXPECT_FALSE(r.violation);
    EXPECT_FALSE(r.stopped.has_value());
}

TEST(ReductionChain, Json) {
    const auto r = build_reduction_chain({aligned(kThree), "ab", unit()});
    const auto j = r.to_json();
    EXPECT_EQ(j["steps"][0]["label"], "E1");
    EXPECT_EQ(j["completed"], false);
    EXPECT_TRUE(j.contains("verdict"));
}
