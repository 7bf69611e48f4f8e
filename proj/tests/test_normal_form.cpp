#include <gtest/gtest.h>

#include "wordeq/normal_form.hpp"
#include "wordeq/solver.hpp"

using namespace wordeq;

namespace {

const char* kThree = "X aXb X aabb ab aXb abaabbab = abaabbab aXb ab aabb X aXb X";

AlignedEquation aligned(const std::string& text) { return align(parse_equation(text)); }

Alphabet unit() { return Alphabet::parse("a=1,b=-1"); }

bool has_rule(const NormalFormResult& r, RewriteStep::Rule rule) {
    for (const auto& step : r.log) {
        if (step.rule == rule) {
            return true;
        }
    }
    return false;
}

// Normalizes, then checks N1-N3, the length bound and that the solution set
// is unchanged.
NormalFormResult normalize_and_check(const std::string& text, const Word& witness) {
    const auto e = aligned(text);
    const auto result = to_normal_form(e, witness, unit());
    const auto& nf = result.equation;
    const auto report = check_normal_form(nf.base, nf.witness, nf.valuation);
    EXPECT_TRUE(report.all()) << text << " -> " << nf.base.to_string();
    EXPECT_LE(nf.base.length(), e.length()) << text;
    EXPECT_EQ(classify(nf.base), classify(e)) << text << " -> " << nf.base.to_string();
    EXPECT_TRUE(nf.base.u(0).empty());
    EXPECT_TRUE(nf.base.v(nf.base.n()).empty());
    return result;
}

}  // namespace

TEST(ShiftToEmpty, Examples) {
    const auto e = aligned("XXbaaba = aabaXbX");
    const auto shifted = shift_to_empty(e, "a");
    EXPECT_EQ(classify(shifted), SolutionSet::finite({"", "aba"}));

    const auto single = aligned("XaXbab = abaXbX");
    EXPECT_EQ(shift_to_empty(single, ""), single);
    const auto family = aligned("Xab = abX");
    EXPECT_EQ(shift_to_empty(family, ""), family);
    EXPECT_THROW(shift_to_empty(family, "a"), std::invalid_argument);
}

// sol(E') = x0^-1 sol(E) for every solution x0 that is the shortest one.
TEST(ShiftToEmpty, ShiftsEverySolution) {
    for (const char* text : {"XXbaaba = aabaXbX", "Xba = abX", "XaXbab = abaXbX"}) {
        const auto e = aligned(text);
        const auto members = classify(e).members_up_to(14);
        ASSERT_FALSE(members.empty());
        const auto shifted = classify(shift_to_empty(e, members.front()));
        const auto shifted_members = shifted.members_up_to(14 - members.front().size());
        ASSERT_EQ(shifted_members.size(), members.size()) << text;
        for (std::size_t i = 0; i < members.size(); ++i) {
            EXPECT_EQ(members.front() + shifted_members[i], members[i]);
        }
    }
}

TEST(CheckNormalForm, Examples) {
    const auto two = check_normal_form(aligned("XaXbab = abaXbX"), "ab", unit());
    EXPECT_TRUE(two.all());

    const auto xab = check_normal_form(aligned("Xab = abX"), "ab", unit());
    EXPECT_TRUE(xab.all());

    const auto swapped = check_normal_form(aligned("abX = Xab"), "ab", unit());
    EXPECT_FALSE(swapped.n2);
    EXPECT_EQ(swapped.n2_failure, 0u);

    const auto not_zero_sum = check_normal_form(aligned("Xab = abX"), "ab", Alphabet::parse("a=1,b=2"));
    EXPECT_FALSE(not_zero_sum.n1);
    EXPECT_TRUE(not_zero_sum.n2);
}

TEST(ToNormalForm, AlreadyNormal) {
    const auto worked = normalize_and_check("X ab X abab X a X bab = ab X abab X aba X b X", "ab");
    EXPECT_TRUE(worked.log.empty());
    EXPECT_EQ(worked.equation.valuation, unit());

    const auto two = normalize_and_check("XaXbab = abaXbX", "ab");
    EXPECT_TRUE(two.log.empty());
    EXPECT_EQ(two.equation.base, aligned("XaXbab = abaXbX"));

    normalize_and_check(kThree, "ab");
}

// Inverting the overlap rule on XaXbab = abaXbX (at block 0 and at block 2)
// and normalizing again recovers it with a shorter equation.
TEST(ToNormalForm, OverlapRepair) {
    for (const char* text : {"bXaXbab = babaXbX", "XaXbaba = abaXbXa"}) {
        const auto r = normalize_and_check(text, "ab");
        EXPECT_TRUE(has_rule(r, RewriteStep::Rule::overlap)) << text;
        EXPECT_EQ(r.equation.base, aligned("XaXbab = abaXbX")) << text;
        EXPECT_LT(r.equation.base.length(), aligned(text).length());
    }
}

TEST(ToNormalForm, SwapsSides) {
    const auto r = normalize_and_check("abaXbX = XaXbab", "ab");
    ASSERT_FALSE(r.log.empty());
    EXPECT_EQ(r.log.front().rule, RewriteStep::Rule::swap);
    EXPECT_EQ(r.equation.base, aligned("XaXbab = abaXbX"));
}

TEST(ToNormalForm, RotateAndMerge) {
    const auto r = normalize_and_check("XabababX = abXXabab", "ab");
    EXPECT_TRUE(has_rule(r, RewriteStep::Rule::rotate));
    const auto merged = normalize_and_check("XabXab = abXXab", "ab");
    EXPECT_TRUE(has_rule(merged, RewriteStep::Rule::merge));
    EXPECT_EQ(merged.equation.base.n(), 1u);
}

// Merge and overlap shorten; rotate keeps the length and moves the first
// non-dominated index to the right.
TEST(ToNormalForm, StepsAreMonotone) {
    for (const char* text : {"XabababX = abXXabab", "bXaXbab = babaXbX", "XaXbaba = abaXbXa",
                             "X ab X abab X a aba X b X = ab X X X abab a X a X bab"}) {
        const auto e = aligned(text);
        auto previous = e;
        const auto r = to_normal_form(e, "ab", unit());
        for (const auto& step : r.log) {
            switch (step.rule) {
                case RewriteStep::Rule::swap:
                    EXPECT_EQ(step.result.length(), previous.length());
                    break;
                case RewriteStep::Rule::merge:
                case RewriteStep::Rule::overlap:
                    EXPECT_LT(step.result.length(), previous.length()) << text;
                    break;
                case RewriteStep::Rule::rotate:
                    EXPECT_EQ(step.result.length(), previous.length()) << text;
                    EXPECT_GT(first_non_dominated(step.result), first_non_dominated(previous)) << text;
                    break;
            }
            previous = step.result;
        }
    }
}

TEST(ToNormalForm, WitnessIsRevalued) {
    const auto e = shift_to_empty(aligned("XXbaaba = aabaXbX"), "a");
    const auto r = to_normal_form(e, "aba", Alphabet::with_default_values("ab"));
    EXPECT_EQ(word_sum("aba", r.equation.valuation), Rational(0));
    EXPECT_TRUE(check_normal_form(r.equation.base, r.equation.witness, r.equation.valuation).all());
}

TEST(ToNormalForm, Preconditions) {
    EXPECT_THROW(to_normal_form(aligned("X = X"), "a"), std::invalid_argument);
    EXPECT_THROW(to_normal_form(aligned("XXbaaba = aabaXbX"), "a"), std::invalid_argument);
    EXPECT_THROW(to_normal_form(aligned("Xab = abX"), ""), std::invalid_argument);
    EXPECT_THROW(to_normal_form(aligned("Xab = abX"), "aba"), std::invalid_argument);
}
