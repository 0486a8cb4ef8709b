#include "obliv/entropy.hpp"
#include "obliv/primitives.hpp"
#include "support/gen.hpp"
#include "support/lp_oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace obliv;
using Catch::Matchers::WithinAbs;

TEST_CASE("binary entropy") {
    REQUIRE_THAT(binary_entropy(0.5), WithinAbs(1.0, 1e-12));
    REQUIRE(binary_entropy(0.0) == 0.0);
    REQUIRE(binary_entropy(1.0) == 0.0);
    REQUIRE_THAT(binary_entropy(0.25), WithinAbs(0.811278, 1e-6));
    REQUIRE_THROWS_AS(binary_entropy(-0.1), Error);
    REQUIRE_THROWS_AS(binary_entropy(1.1), Error);
}

TEST_CASE("conditional Shannon entropy") {
    // uniform k-bit X independent of Y
    std::vector<std::tuple<std::string, std::string, Rational>> e;
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 2; ++y) e.emplace_back(bits_label(x, 3), std::to_string(y), Rational(1, 16));
    REQUIRE_THAT(shannon_cond(joint_from_labeled(e)), WithinAbs(3.0, 1e-12));

    const JointDist eq = joint_from_labeled({{"0", "0", Rational(1, 2)}, {"1", "1", Rational(1, 2)}});
    REQUIRE(shannon_cond(eq) == 0.0);

    const auto ot = make_ot_randomness(1, 2, 1, 1);
    REQUIRE_THAT(shannon_cond(ot.randomness()), WithinAbs(1.0, 1e-12));
}

TEST_CASE("conditional mutual information") {
    Rng rng(3);
    // X independent of Y given Z: build via two independent channels from Z
    {
        const JointDist zx = testgen::random_joint(rng, 2, 3);  // (x, z)
        const auto y_rows = testgen::random_rows(rng, 3, 2);
        std::vector<TupleDist::Atom> atoms;
        for (const auto& a : zx.atoms())
            for (std::uint32_t y = 0; y < 2; ++y) {
                const Rational p = a.p * y_rows[a.y][y];
                if (p > 0) atoms.push_back(TupleDist::Atom{{a.x, y, a.y}, p});
            }
        const TupleDist d({testgen::index_alphabet("x", 2), testgen::index_alphabet("y", 2),
                           testgen::index_alphabet("z", 3)},
                          std::move(atoms));
        REQUIRE_THAT(mutual_info_cond(d), WithinAbs(0.0, 1e-9));
    }
    // X=Y uniform bit, Z constant
    {
        const TupleDist d({testgen::index_alphabet("x", 2), testgen::index_alphabet("y", 2),
                           testgen::index_alphabet("z", 1)},
                          {{{0, 0, 0}, Rational(1, 2)}, {{1, 1, 0}, Rational(1, 2)}});
        REQUIRE_THAT(mutual_info_cond(d), WithinAbs(1.0, 1e-12));
    }
    // OT(1,2,1): I(U;V) = 1
    const auto ot = make_ot_randomness(1, 2, 1, 1);
    REQUIRE_THAT(mutual_info(ot.randomness()), WithinAbs(1.0, 1e-12));
}

TEST_CASE("conditional min-entropy") {
    std::vector<std::tuple<std::string, std::string, Rational>> e;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 2; ++y) e.emplace_back(bits_label(x, 2), std::to_string(y), Rational(1, 8));
    REQUIRE_THAT(min_entropy_cond(joint_from_labeled(e)), WithinAbs(2.0, 1e-12));

    const JointDist eq = joint_from_labeled({{"0", "0", Rational(1, 2)}, {"1", "1", Rational(1, 2)}});
    REQUIRE(min_entropy_cond(eq) == 0.0);

    const auto ot = make_ot_randomness(1, 2, 1, 1);
    REQUIRE(guess_mass(ot.randomness()) == Rational(1, 2));
    REQUIRE_THAT(min_entropy_cond(ot.randomness()), WithinAbs(1.0, 1e-12));
}

TEST_CASE("smooth min-entropy") {
    const auto ot = make_ot_randomness(1, 2, 1, 1);
    const JointDist& j = ot.randomness();

    REQUIRE_THAT(smooth_min_entropy(j, Rational(0)).value, WithinAbs(min_entropy_cond(j), 1e-12));

    // the closed form 1 - log2(1 - eps)
    const auto rep = smooth_min_entropy(j, Rational(1, 10));
    REQUIRE_THAT(rep.value, WithinAbs(1.0 - std::log2(0.9), 1e-12));

    // witness reproduces the value and respects the event budget
    const SubDist smoothed = apply_event(j, rep.witness);
    REQUIRE(smoothed.total() >= Rational(9, 10));
    REQUIRE_THAT(-log2_rational(guess_mass(smoothed)), WithinAbs(rep.value, 1e-12));

    REQUIRE_THROWS_AS(smooth_min_entropy(j, Rational(1)), Error);

    // random 3x3 tables against the LP oracle, exactly
    for (int t = 0; t < 25; ++t) {
        Rng rng(derive_seed(11, 1, t));
        const JointDist r = testgen::random_joint(rng, 3, 3, 16);
        for (const Rational eps : {Rational(1, 8), Rational(1, 4)}) {
            const auto rr = smooth_min_entropy(r, eps);
            REQUIRE(guess_mass(apply_event(r, rr.witness)) == oracle::smooth_min_mass(r, eps));
        }
    }
}

TEST_CASE("zero-mass symbols do not disturb the optimizers") {
    // y_alphabet carries a symbol with no support; the convention is that
    // such columns contribute nothing
    Alphabet xa({"a", "b"}), ya({"u", "v", "dead"});
    std::vector<JointAtom> atoms{{0, 0, Rational(1, 2)}, {1, 1, Rational(1, 4)}, {0, 1, Rational(1, 4)}};
    const JointDist j(xa, ya, atoms);
    REQUIRE_THAT(smooth_min_entropy(j, Rational(0)).value, WithinAbs(min_entropy_cond(j), 1e-12));
    REQUIRE_THAT(smooth_max_entropy(j, Rational(0)).value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("optimizers are deterministic") {
    Rng rng(555);
    const JointDist j = testgen::random_joint(rng, 4, 4, 12);
    const auto a = smooth_min_entropy(j, Rational(1, 5));
    const auto b = smooth_min_entropy(j, Rational(1, 5));
    REQUIRE(a.witness.entries == b.witness.entries);
    const auto c = smooth_max_entropy(j, Rational(1, 5));
    const auto d = smooth_max_entropy(j, Rational(1, 5));
    REQUIRE(c.witness.entries == d.witness.entries);
    // max-entropy witnesses zero whole atoms, nothing fractional
    for (const auto& [key, w] : c.witness.entries) REQUIRE(w == Rational(0));
    // min-entropy witnesses stay within [0, 1]
    for (const auto& [key, w] : a.witness.entries) {
        REQUIRE(w >= 0);
        REQUIRE(w <= 1);
    }
}

TEST_CASE("smooth max-entropy") {
    // eps = 0: log of the largest column support
    Rng rng(13);
    const JointDist r = testgen::random_joint(rng, 4, 3, 8);
    REQUIRE_THAT(smooth_max_entropy(r, Rational(0)).value,
                 WithinAbs(std::log2(double(max_column_support(r.atoms()))), 1e-12));

    // X uniform on 4 symbols, Y constant, eps = 1/4 -> log2 3
    std::vector<std::tuple<std::string, std::string, Rational>> e;
    for (int x = 0; x < 4; ++x) e.emplace_back(bits_label(x, 2), "y", Rational(1, 4));
    const JointDist u4 = joint_from_labeled(e);
    REQUIRE_THAT(smooth_max_entropy(u4, Rational(1, 4)).value, WithinAbs(std::log2(3.0), 1e-12));

    // single column with masses (1/2, 1/8, 1/8, 1/8, 1/8), eps just above 1/8
    const JointDist five = joint_from_labeled({{"a", "y", Rational(1, 2)},
                                               {"b", "y", Rational(1, 8)},
                                               {"c", "y", Rational(1, 8)},
                                               {"d", "y", Rational(1, 8)},
                                               {"e", "y", Rational(1, 8)}});
    REQUIRE_THAT(smooth_max_entropy(five, Rational(9, 64)).value, WithinAbs(2.0, 1e-12));
    REQUIRE_THAT(smooth_max_entropy(five, Rational(1, 16)).value, WithinAbs(std::log2(5.0), 1e-12));

    // brute-force oracle agreement on random tables
    for (int t = 0; t < 25; ++t) {
        Rng g(derive_seed(11, 2, t));
        const JointDist q = testgen::random_joint(g, 3, 3, 16);
        for (const Rational eps : {Rational(1, 8), Rational(1, 4)}) {
            const auto rep = smooth_max_entropy(q, eps);
            const SubDist left = apply_event(q, rep.witness);
            REQUIRE(max_column_support(left.atoms) == oracle::smooth_max_support(q, eps));
            REQUIRE(left.total() >= 1 - eps);
        }
    }

    REQUIRE_THROWS_AS(smooth_max_entropy(u4, Rational(3, 2)), Error);
}
