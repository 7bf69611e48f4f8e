#include <gtest/gtest.h>

#include <set>

#include "wordeq/campaign.hpp"

using namespace wordeq;

namespace {

CampaignConfig small() {
    CampaignConfig config;
    config.max_const_len = 3;
    config.brute_force_bound = 6;
    return config;
}

// Binomial coefficient, for counting sides independently.
std::size_t choose(std::size_t n, std::size_t k) {
    std::size_t out = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

}  // namespace

TEST(EnumerateSides, CountAndDistinct) {
    const auto config = small();
    const auto sides = enumerate_sides(config);
    // c constants from 2 letters and x variables: choose(c + x, x) * 2^c.
    std::size_t expected = 0;
    for (std::size_t x = 0; x <= config.occurrences; ++x) {
        for (std::size_t c = 0; c <= config.max_const_len; ++c) {
            if (x + c > 0) {
                expected += choose(c + x, x) << c;
            }
        }
    }
    EXPECT_EQ(sides.size(), expected);
    EXPECT_EQ(std::set<std::string>(sides.begin(), sides.end()).size(), sides.size());
    EXPECT_EQ(enumerate_sides(CampaignConfig{}).size(), 3710u);
}

TEST(Campaign, SmallRunIsClean) {
    const auto report = run_campaign(small());
    const auto sides = enumerate_sides(small()).size();
    EXPECT_EQ(report.instances, sides * (sides + 1) / 2);
    EXPECT_EQ(report.instances, report.all_words + report.finite + report.infinite);
    EXPECT_EQ(report.oracle_checked, report.instances);
    EXPECT_EQ(report.oracle_disagreements, 0u);
    EXPECT_TRUE(report.ok());
    EXPECT_LE(report.max_finite_size, 3u);
    EXPECT_EQ(report.summary(), "max finite solution-set size observed: " + std::to_string(report.max_finite_size) +
                                    "; violations: 0");
}

TEST(Campaign, DeterministicAcrossWorkers) {
    auto config = small();
    const auto one = run_campaign(config).to_json();
    EXPECT_EQ(run_campaign(config).to_json().dump(), one.dump());
    config.workers = 3;
    auto three = run_campaign(config).to_json();
    three["config"]["workers"] = one["config"]["workers"];
    EXPECT_EQ(three.dump(), one.dump());
}

TEST(Campaign, LimitStopsEarly) {
    auto config = small();
    config.limit = 1000;
    EXPECT_EQ(run_campaign(config).instances, 1000u);
}

TEST(Campaign, Validation) {
    auto config = small();
    config.max_const_len = 0;
    EXPECT_THROW(config.validate(), std::invalid_argument);
    config = small();
    config.alphabet_size = 24;
    EXPECT_THROW(config.validate(), std::invalid_argument);
    config = small();
    config.workers = 0;
    EXPECT_THROW(run_campaign(config), std::invalid_argument);
}
