#include "obliv/dist.hpp"
#include "obliv/dist_io.hpp"
#include "obliv/primitives.hpp"
#include "support/gen.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace obliv;

namespace {

JointDist uniform_bits_pair() {
    // independent uniform bits
    std::vector<std::tuple<std::string, std::string, Rational>> e;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            e.emplace_back(std::to_string(x), std::to_string(y), Rational(1, 4));
    return joint_from_labeled(e);
}

JointDist equal_bits() {
    return joint_from_labeled({{"0", "0", Rational(1, 2)}, {"1", "1", Rational(1, 2)}});
}

}  // namespace

TEST_CASE("marginals") {
    const JointDist u = uniform_bits_pair();
    const Dist left = marginal(u, Side::left);
    REQUIRE(left.mass[0] == Rational(1, 2));
    REQUIRE(left.mass[1] == Rational(1, 2));

    const JointDist point = joint_from_labeled({{"a", "b", Rational(1)}});
    const Dist right = marginal(point, Side::right);
    REQUIRE(right.alphabet.label(0) == "b");
    REQUIRE(right.mass[0] == Rational(1));

    // OT(1,2,1): right marginal uniform over the 4 (c, x_c) symbols
    const auto ot = make_ot_randomness(1, 2, 1, 1);
    const Dist v = marginal(ot.randomness(), Side::right);
    REQUIRE(v.alphabet.size() == 4);
    for (const auto& p : v.mass) REQUIRE(p == Rational(1, 4));
}

TEST_CASE("conditioning") {
    REQUIRE(condition(equal_bits(), "0").mass[0] == Rational(1));
    const Dist c = condition(uniform_bits_pair(), "1");
    REQUIRE(c.mass[0] == Rational(1, 2));

    // OT(1,2,1) given v = (c=0, w=1): two compatible u atoms of mass 1/8 each
    const auto ot = make_ot_randomness(1, 2, 1, 1);
    const Dist d = condition(ot.randomness(), "c=0;w=1");
    REQUIRE(d.mass[*d.alphabet.find("10")] == Rational(1, 2));
    REQUIRE(d.mass[*d.alphabet.find("11")] == Rational(1, 2));
    REQUIRE(d.mass[*d.alphabet.find("00")] == Rational(0));

    REQUIRE_THROWS_AS(condition(equal_bits(), "nope"), Error);
}

TEST_CASE("products") {
    const JointDist point = joint_from_labeled({{"a", "b", Rational(1)}});
    const JointDist eq = equal_bits();
    const JointDist relabeled = product(point, eq);
    REQUIRE(relabeled.atoms().size() == eq.atoms().size());
    REQUIRE(relabeled.p(*relabeled.x_alphabet().find("(a,0)"), *relabeled.y_alphabet().find("(b,0)")) ==
            Rational(1, 2));

    const auto ot = make_ot_randomness(1, 2, 1, 1);
    const JointDist two = product(ot.randomness(), ot.randomness());
    REQUIRE(two.atoms().size() == 64);
    for (const auto& a : two.atoms()) REQUIRE(a.p == Rational(1, 64));

    // marginals of a product factor exactly
    Rng rng(7);
    const JointDist a = testgen::random_joint(rng, 3, 2);
    const JointDist b = testgen::random_joint(rng, 2, 3);
    const JointDist ab = product(a, b);
    const Dist ma = marginal(a, Side::left), mb = marginal(b, Side::left);
    const Dist mab = marginal(ab, Side::left);
    for (std::uint32_t i = 0; i < ma.alphabet.size(); ++i)
        for (std::uint32_t j = 0; j < mb.alphabet.size(); ++j) {
            const auto idx = mab.alphabet.find(pair_label(ma.alphabet.label(i), mb.alphabet.label(j)));
            REQUIRE(idx);
            REQUIRE(mab.mass[*idx] == ma.mass[i] * mb.mass[j]);
        }

    REQUIRE_THROWS_AS(product(two, two, /*atom_budget=*/100), Error);
}

TEST_CASE("statistical distance") {
    const JointDist eq = equal_bits();
    REQUIRE(stat_distance(marginal(eq, Side::left), marginal(eq, Side::left)) == Rational(0));

    const Dist pa(Alphabet({"a"}), {Rational(1)});
    const Dist pb(Alphabet({"b"}), {Rational(1)});
    REQUIRE(stat_distance(pa, pb) == Rational(1));

    const Dist half(Alphabet({"0", "1"}), {Rational(1, 2), Rational(1, 2)});
    const Dist quarter(Alphabet({"0", "1"}), {Rational(1, 4), Rational(3, 4)});
    REQUIRE(stat_distance(half, quarter) == Rational(1, 4));
}

TEST_CASE("statistical distance is a metric on random triples") {
    for (int t = 0; t < 50; ++t) {
        Rng rng(derive_seed(42, 5, t));
        const Dist a = marginal(testgen::random_joint(rng, 4, 2), Side::left);
        const Dist b = marginal(testgen::random_joint(rng, 4, 2), Side::left);
        const Dist c = marginal(testgen::random_joint(rng, 4, 2), Side::left);
        REQUIRE(stat_distance(a, b) == stat_distance(b, a));
        REQUIRE(stat_distance(a, c) <= stat_distance(a, b) + stat_distance(b, c));
        REQUIRE(stat_distance(a, b) >= 0);
        REQUIRE(stat_distance(a, b) <= 1);
    }
}

TEST_CASE("apply_event") {
    const JointDist u = uniform_bits_pair();
    EventWeights ones;
    const SubDist same = apply_event(u, ones);
    REQUIRE(same.total() == Rational(1));
    REQUIRE(same.atoms.size() == u.atoms().size());

    EventWeights zeros;
    zeros.default_weight = 0;
    REQUIRE(apply_event(u, zeros).total() == Rational(0));

    EventWeights halve_one;
    halve_one.entries[{0, 0}] = Rational(1, 2);
    const SubDist s = apply_event(u, halve_one);
    REQUIRE(s.total() == Rational(7, 8));

    EventWeights bad;
    bad.entries[{0, 0}] = Rational(3, 2);
    REQUIRE_THROWS_AS(apply_event(u, bad), Error);
}

TEST_CASE("condition then remix recovers the table") {
    Rng rng(99);
    const JointDist j = testgen::random_joint(rng, 4, 3);
    const Dist py = marginal(j, Side::right);
    for (std::uint32_t y = 0; y < py.alphabet.size(); ++y) {
        if (py.mass[y] == 0) continue;
        const Dist c = condition(j, y);
        for (std::uint32_t x = 0; x < c.alphabet.size(); ++x)
            REQUIRE(c.mass[x] * py.mass[y] == j.p(x, y));
    }
}

TEST_CASE("channels validate their rows") {
    const Channel ch(Alphabet({"0", "1"}), Alphabet({"a", "b"}),
                     {{Rational(1, 2), Rational(1, 2)}, {Rational(1), Rational(0)}});
    REQUIRE(ch.rows[0][1] == Rational(1, 2));
    REQUIRE_THROWS_AS(Channel(Alphabet({"0"}), Alphabet({"a", "b"}), {{Rational(1, 2), Rational(1, 4)}}),
                      Error);
}

TEST_CASE("table file round trip") {
    const auto ot = make_ot_randomness(1, 2, 1, 1);
    const auto js = joint_to_json(ot.randomness());
    const JointDist back = joint_from_json(js).to_joint();
    REQUIRE(stat_distance(ot.randomness(), back) == Rational(0));
    REQUIRE(back.x_alphabet() == ot.randomness().x_alphabet());

    auto broken = js;
    broken["mass"][0][0] = "1/2";  // breaks normalization upward
    REQUIRE_THROWS_AS(joint_from_json(broken), Error);

    auto sub = js;
    sub["mass"][0][0] = "0";
    REQUIRE_THROWS_AS(joint_from_json(sub), Error);
    const LoadedTable lt = joint_from_json(sub, /*allow_subnormalized=*/true);
    REQUIRE_FALSE(lt.normalized);
    REQUIRE(lt.table.total() == Rational(7, 8));
}
