#include "obliv/mcom.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace obliv;

TEST_CASE("honest commit and open") {
    Rng rng(1);
    McomSession session(McomResource::sample(6, 8, rng));
    const Bits b = random_bits(6, rng);
    session.commit(b);

    // any subset opens correctly
    for (const std::vector<std::size_t> T :
         {std::vector<std::size_t>{0, 2, 5}, std::vector<std::size_t>{1}, std::vector<std::size_t>{0, 1, 2, 3, 4, 5}}) {
        const auto out = session.verify(session.honest_open(T));
        REQUIRE(out.accepted);
        for (std::size_t j = 0; j < T.size(); ++j) REQUIRE(out.b_T[j] == b[T[j]]);
    }

    // empty subset: vacuously accepted, empty output
    const auto empty = session.verify(session.honest_open(std::vector<std::size_t>{}));
    REQUIRE(empty.accepted);
    REQUIRE(empty.b_T.empty());
}

TEST_CASE("majority extraction recovers the committed value") {
    for (int t = 0; t < 10; ++t) {
        Rng rng(derive_seed(3, 0, t));
        McomSession session(McomResource::sample(8, 5, rng));
        const Bits b = random_bits(8, rng);
        session.commit(b);
        REQUIRE(session.extract_majority() == b);
    }
}

TEST_CASE("flip attack acceptance is exactly 2^-kappa") {
    const Rational acc = mcom_flip_attack_acceptance(4, 8, 0, 99);
    REQUIRE(acc == Rational(1, 256));
    REQUIRE(acc <= Rational(1, 16));  // the 2^{-kappa/2} soundness claim
}

TEST_CASE("malformed openings are rejected loudly") {
    Rng rng(2);
    McomSession session(McomResource::sample(4, 3, rng));
    session.commit(random_bits(4, rng));
    auto good = session.honest_open(std::vector<std::size_t>{0, 2});

    auto shuffled = good;
    std::swap(shuffled.T[0], shuffled.T[1]);  // not increasing
    REQUIRE_THROWS_AS(session.verify(shuffled), Error);

    auto short_b = good;
    short_b.b_T.pop_back();
    REQUIRE_THROWS_AS(session.verify(short_b), Error);

    auto missing_instance = good;
    missing_instance.x0_T.pop_back();
    REQUIRE_THROWS_AS(session.verify(missing_instance), Error);

    REQUIRE_THROWS_AS(session.honest_open(std::vector<std::size_t>{9}), Error);
}

TEST_CASE("tampered openings are rejected when the receiver holds the string") {
    Rng rng(5);
    std::vector<int> choices{0, 0, 0};  // receiver always holds x0
    McomSession session(McomResource::with_choices(4, choices, rng));
    const Bits b = random_bits(4, rng);
    session.commit(b);
    auto o = session.honest_open(std::vector<std::size_t>{0, 1, 2, 3});
    o.b_T[1] ^= 1;
    for (int i = 0; i < 3; ++i) o.x0_T[i][1] ^= 1;  // adjust the held string: caught
    REQUIRE_FALSE(session.verify(o).accepted);

    auto o2 = session.honest_open(std::vector<std::size_t>{0, 1, 2, 3});
    o2.b_T[1] ^= 1;
    for (int i = 0; i < 3; ++i) o2.x1_T[i][1] ^= 1;  // adjust the unheld string: slips through
    REQUIRE(session.verify(o2).accepted);
}
