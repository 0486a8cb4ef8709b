// The identity and lemma suite over random exact tables; the acceptance
// runner re-runs these checks at 500 instances each.

#include "support/properties.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace obliv;

namespace {
constexpr int kTrials = 60;
constexpr std::uint64_t kSeed = 20240811;
}  // namespace

TEST_CASE("chain rule") { REQUIRE(props::chain_rule(kTrials, kSeed) == 0); }

TEST_CASE("Shannon monotonicity") { REQUIRE(props::monotonicity_shannon(kTrials, kSeed) == 0); }

TEST_CASE("mutual information monotonicity") {
    REQUIRE(props::monotonicity_mutual_info(kTrials, kSeed) == 0);
}

TEST_CASE("averaging over the condition") { REQUIRE(props::averaging(kTrials, kSeed) == 0); }

TEST_CASE("Markov chain entropy relations") { REQUIRE(props::markov_shannon(kTrials, kSeed) == 0); }

TEST_CASE("Markov chain mutual-information relations") {
    REQUIRE(props::markov_mutual_info(kTrials, kSeed) == 0);
}

TEST_CASE("entropy continuity under statistical distance") {
    REQUIRE(props::lemma1_continuity(kTrials, kSeed) == 0);
}

TEST_CASE("Fano") { REQUIRE(props::fano(kTrials, kSeed) == 0); }

TEST_CASE("binary entropy concavity") { REQUIRE(props::h_concavity(0, 0) == 0); }

TEST_CASE("smooth max-entropy subadditivity") {
    REQUIRE(props::subadditivity_max(kTrials, kSeed) == 0);
}

TEST_CASE("smooth entropy monotonicity") { REQUIRE(props::smooth_monotonicity(kTrials, kSeed) == 0); }

TEST_CASE("smooth min/max chain inequality") { REQUIRE(props::smooth_chain(kTrials, kSeed) == 0); }

TEST_CASE("smooth entropy data processing") {
    REQUIRE(props::smooth_data_processing(kTrials, kSeed) == 0);
}

TEST_CASE("optimizers match the oracles exactly") {
    REQUIRE(props::optimizer_vs_oracle(40, kSeed) == 0);
}
