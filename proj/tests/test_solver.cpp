#include <gtest/gtest.h>

#include <random>

#include "wordeq/oracle.hpp"
#include "wordeq/solver.hpp"

using namespace wordeq;

namespace {

const char* kThree = "X aXb X aabb ab aXb abaabbab = abaabbab aXb ab aabb X aXb X";

AlignedEquation aligned(const std::string& text) { return align(parse_equation(text)); }

std::vector<Word> brute(const std::string& text, std::size_t max_len) {
    return brute_force_solutions(parse_equation(text), "ab", max_len);
}

}  // namespace

TEST(CandidateForLength, Examples) {
    const auto e = aligned("XaXbab = abaXbX");
    EXPECT_EQ(candidate_for_length(e, 2), "ab");
    EXPECT_EQ(candidate_for_length(e, 1), std::nullopt);
    EXPECT_EQ(candidate_for_length(aligned("XXbaaba = aabaXbX"), 4), "aaba");
    EXPECT_THROW(candidate_for_length(aligned("XaX = XaX"), 1), std::invalid_argument);
}

TEST(FillForLength, Statuses) {
    const auto e = parse_equation("XaXbab = abaXbX");
    const auto one = fill_for_length(e, 1);
    // x = c puts a against b at position 1.
    EXPECT_EQ(one.status, CandidateFill::Status::contradictory);
    EXPECT_EQ(fill_for_length(e, 2).slots, "ab");
    EXPECT_EQ(fill_for_length(parse_equation("Xa = bX"), 1).status, CandidateFill::Status::contradictory);
}

TEST(EnumerateSolutions, Examples) {
    EXPECT_EQ(enumerate_solutions(aligned("Xab = abX"), 7), (std::vector<Word>{"", "ab", "abab", "ababab"}));
    EXPECT_EQ(enumerate_solutions(aligned("XaXbab = abaXbX"), 20), (std::vector<Word>{"", "ab"}));
    EXPECT_THROW(enumerate_solutions(aligned("X = X"), 2), std::invalid_argument);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(parse_equation("Xab = abX")), SolutionSet::family("", "ab"));
    EXPECT_EQ(classify(parse_equation(kThree)), SolutionSet::finite({"", "ab", "abaabbab"}));
    EXPECT_EQ(classify(parse_equation("X = X")), SolutionSet::all_words());
    EXPECT_EQ(classify(parse_equation("XaXbab = abaXbX")), SolutionSet::finite({"", "ab"}));
    EXPECT_EQ(classify(parse_equation("XXbaaba = aabaXbX")), SolutionSet::finite({"a", "aaba"}));
}

// xa = ab has no solution: the only candidate length is 1 and "aa" != "ab".
TEST(Classify, LengthForcing) {
    EXPECT_EQ(classify(parse_equation("Xa = ab")), SolutionSet::finite({}));
    EXPECT_EQ(classify(parse_equation("Xb = ab")), SolutionSet::finite({"a"}));
    EXPECT_EQ(classify(parse_equation("XX = abab")), SolutionSet::finite({"ab"}));
    EXPECT_EQ(classify(parse_equation("XX = aba")), SolutionSet::finite({}));
    EXPECT_EQ(classify(parse_equation("XXa = Xba")), SolutionSet::finite({"b"}));
    EXPECT_EQ(classify(parse_equation("Xa = Xb")), SolutionSet::finite({}));
    EXPECT_EQ(classify(parse_equation("ab = ab")), SolutionSet::all_words());
    EXPECT_EQ(classify(parse_equation("ab = ba")), SolutionSet::finite({}));
}

TEST(Classify, FamiliesWithNonemptyP) {
    EXPECT_EQ(classify(parse_equation("Xba = abX")), SolutionSet::family("a", "b"));
    EXPECT_EQ(classify(parse_equation("aX = Xa")), SolutionSet::family("", "a"));
    EXPECT_EQ(classify(parse_equation("Xabab = ababX")), SolutionSet::family("", "ab"));
}

TEST(Classify, MaxLenOverride) {
    EXPECT_EQ(classify(parse_equation("Xab = abX"), 1), SolutionSet::finite({""}));
}

// The classifier agrees with brute force on random small equations.
TEST(Classify, AgreesWithBruteForce) {
    std::mt19937_64 rng(2024);
    const std::string tokens = "abX";
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> len(1, 7);
    for (int trial = 0; trial < 3000; ++trial) {
        OneVarEquation e;
        for (int i = len(rng); i > 0; --i) {
            e.lhs.push_back(tokens[pick(rng)]);
        }
        for (int i = len(rng); i > 0; --i) {
            e.rhs.push_back(tokens[pick(rng)]);
        }
        const auto set = classify(e);
        const auto found = brute(e.lhs + "=" + e.rhs, 8);
        if (set.kind() == SolutionSet::Kind::all) {
            EXPECT_EQ(found.size(), 511u) << e.to_string();
            continue;
        }
        EXPECT_EQ(set.members_up_to(8), found) << e.to_string();
        EXPECT_FALSE(exceeds_three_bound(set)) << e.to_string();
    }
}

// Members of a solution set are nested: each is a prefix and a suffix of the next.
TEST(Classify, SolutionsAreNested) {
    for (const char* text : {kThree, "XaXbab = abaXbX", "XXbaaba = aabaXbX", "Xab = abX", "Xba = abX"}) {
        const auto members = classify(parse_equation(text)).members_up_to(12);
        for (std::size_t i = 1; i < members.size(); ++i) {
            EXPECT_TRUE(is_prefix(members[i - 1], members[i])) << text;
            EXPECT_TRUE(is_suffix(members[i - 1], members[i])) << text;
        }
    }
}

TEST(FamilyFromPair, ReducesToPrimitiveRoot) {
    const auto e = parse_equation("Xab = abX");
    EXPECT_EQ(family_from_pair(e, "ab", "ababab"), SolutionSet::family("", "ab"));
    EXPECT_EQ(family_from_pair(e, "", "ab"), SolutionSet::family("", "ab"));
    EXPECT_EQ(family_from_pair(parse_equation("XaXbab = abaXbX"), "", "ab"), std::nullopt);
}

TEST(ExceedsThreeBound, OnlyFiniteSets) {
    EXPECT_TRUE(exceeds_three_bound(SolutionSet::finite({"", "a", "aa", "aaa"})));
    EXPECT_FALSE(exceeds_three_bound(SolutionSet::finite({"", "a", "aa"})));
    EXPECT_FALSE(exceeds_three_bound(SolutionSet::family("", "a")));
}

TEST(BruteForce, Examples) {
    EXPECT_EQ(brute("XaXbab = abaXbX", 8), (std::vector<Word>{"", "ab"}));
    EXPECT_EQ(brute("Xab = abX", 6), (std::vector<Word>{"", "ab", "abab", "ababab"}));
}
