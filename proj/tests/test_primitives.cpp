#include "obliv/primitives.hpp"
#include "obliv/entropy.hpp"
#include "obliv/structure.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace obliv;
using Catch::Matchers::WithinAbs;

TEST_CASE("OT randomness entropy triples") {
    const auto t1 = make_ot_randomness(1, 2, 1, 1);
    REQUIRE_THAT(shannon_cond(t1.randomness()), WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(shannon_cond(transpose(t1.randomness())), WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(mutual_info(t1.randomness()), WithinAbs(1.0, 1e-9));

    const auto t2 = make_ot_randomness(1, 4, 2, 1);
    REQUIRE_THAT(shannon_cond(t2.randomness()), WithinAbs(6.0, 1e-9));
    REQUIRE_THAT(shannon_cond(transpose(t2.randomness())), WithinAbs(2.0, 1e-9));
    REQUIRE_THAT(mutual_info(t2.randomness()), WithinAbs(2.0, 1e-9));

    const auto t3 = make_ot_randomness(1, 2, 1, 2);
    REQUIRE(t3.randomness().atoms().size() == 64);
    REQUIRE_THAT(shannon_cond(t3.randomness()), WithinAbs(2.0, 1e-9));
}

TEST_CASE("OT randomness marginals are uniform") {
    const auto ot = make_ot_randomness(1, 3, 1, 1);
    const Dist u = marginal(ot.randomness(), Side::left);
    for (const auto& p : u.mass) REQUIRE(p == Rational(1, 8));
    const Dist v = marginal(ot.randomness(), Side::right);
    for (const auto& p : v.mass) REQUIRE(p == Rational(1, 6));  // 3 choices x 2 values
}

TEST_CASE("t-out-of-n choice sets") {
    const auto ot = make_ot_randomness(2, 3, 1, 1);
    // C(3,2) = 3 sorted subsets, each with a 2-bit received string
    REQUIRE(ot.randomness().y_alphabet().size() == 12);
    REQUIRE(ot.randomness().y_alphabet().find("c=0,2;w=00").has_value());
    REQUIRE_THAT(shannon_cond(ot.randomness()), WithinAbs(1.0, 1e-9));  // (n-t)k = 1
}

TEST_CASE("Rabin randomness") {
    REQUIRE_THAT(shannon_cond(make_rabin_randomness(Rational(1), 2).randomness()),
                 WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(shannon_cond(make_rabin_randomness(Rational(0), 3).randomness()),
                 WithinAbs(3.0, 1e-12));
    REQUIRE_THAT(shannon_cond(make_rabin_randomness(Rational(1, 2), 1).randomness()),
                 WithinAbs(0.5, 1e-12));
}

TEST_CASE("OLFE randomness") {
    const auto q2 = make_olfe_randomness(2, 1);
    REQUIRE_THAT(shannon_cond(q2.randomness()), WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(shannon_cond(transpose(q2.randomness())), WithinAbs(1.0, 1e-9));

    const auto q3 = make_olfe_randomness(3, 1);
    REQUIRE_THAT(mutual_info(q3.randomness()), WithinAbs(std::log2(3.0), 1e-9));

    REQUIRE_THAT(shannon_cond(make_olfe_randomness(2, 2).randomness()), WithinAbs(2.0, 1e-9));
    REQUIRE_THROWS_AS(make_olfe_randomness(4, 1), Error);
}

TEST_CASE("leaky OT randomness") {
    for (const Rational alpha : {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3)}) {
        const auto leaky = make_leaky_ot_randomness(alpha);
        REQUIRE_THAT(shannon_cond(leaky.randomness()), WithinAbs(to_double(alpha), 1e-9));
    }
}

TEST_CASE("function tables") {
    const auto eq = make_eq_function(2);
    const auto& f = eq.function();
    REQUIRE(f.z_alphabet.label(f.z(*f.x_alphabet.find("01"), *f.y_alphabet.find("01"))) == "1");
    REQUIRE(f.z_alphabet.label(f.z(*f.x_alphabet.find("01"), *f.y_alphabet.find("10"))) == "0");

    const auto ip = make_ip_function(3);
    const auto& g = ip.function();
    REQUIRE(g.z_alphabet.label(g.z(*g.x_alphabet.find("101"), *g.y_alphabet.find("111"))) == "0");

    const auto ot = make_ot_function(1, 2, 1);
    const auto& h = ot.function();
    REQUIRE(h.z_alphabet.label(h.z(*h.x_alphabet.find("01"), *h.y_alphabet.find("c=1"))) == "1");

    const auto olfe = make_olfe_function(3);
    const auto& o = olfe.function();
    REQUIRE(o.z_alphabet.label(o.z(*o.x_alphabet.find("a=1,b=2"), *o.y_alphabet.find("2"))) == "2");
}

TEST_CASE("condition (12)") {
    REQUIRE(check_condition_1(make_eq_function(2)));
    REQUIRE(check_condition_1(make_ot_function(1, 2, 1)));

    FunctionTable constant;
    constant.name = "const";
    constant.x_alphabet = Alphabet({"a", "b"});
    constant.y_alphabet = Alphabet({"y"});
    constant.z_alphabet = Alphabet({"z"});
    constant.table = {0, 0};
    REQUIRE_FALSE(check_condition_1(PrimitiveSpec{"const", constant}));

    // IP restricted to unit-vector inputs for Bob
    const auto ip = make_ip_function(3);
    const FunctionTable restricted =
        restrict_function(ip.function(), ip.function().x_alphabet.labels(), {"100", "010", "001"});
    REQUIRE(check_condition_1(PrimitiveSpec{"ip-restricted", restricted}));

    REQUIRE_THROWS_AS(check_condition_1(make_ot_randomness(1, 2, 1, 1)), Error);
}

TEST_CASE("witness pair (y1, y2)") {
    // OT(1,2,k) with Alice's first string fixed: c=1 reveals, c=0 is constant
    const auto ot = make_ot_function(1, 2, 2);
    const FunctionTable fixed =
        restrict_function(ot.function(), {"0000", "0001", "0010", "0011"}, {"c=0", "c=1"});
    const auto w = find_y1_y2(PrimitiveSpec{"ot-fixed", fixed});
    REQUIRE(w.has_value());
    REQUIRE(fixed.y_alphabet.label(w->first) == "c=1");
    REQUIRE(fixed.y_alphabet.label(w->second) == "c=0");

    REQUIRE_FALSE(find_y1_y2(make_eq_function(2)).has_value());

    FunctionTable constant;
    constant.x_alphabet = Alphabet({"a", "b"});
    constant.y_alphabet = Alphabet({"y"});
    constant.z_alphabet = Alphabet({"z"});
    constant.table = {0, 0};
    REQUIRE_FALSE(find_y1_y2(PrimitiveSpec{"const", constant}).has_value());
}

TEST_CASE("common part of OT randomness is trivial") {
    const auto ot = make_ot_randomness(1, 2, 1, 1);
    const CommonPart cp = common_part(ot.randomness());
    REQUIRE(cp.x_part.num_classes == 1);
    REQUIRE_THAT(mutual_info_given_common(ot.randomness(), cp),
                 WithinAbs(mutual_info(ot.randomness()), 1e-9));
}

TEST_CASE("primitive references parse") {
    REQUIRE(parse_primitive("ot:1,2,1,1").name == "ot:1,2,1,1");
    REQUIRE(parse_primitive("rabin:1/2,3").randomness().atoms().size() == 16);
    REQUIRE(parse_primitive("leaky-ot:1/4").is_randomness());
    REQUIRE_FALSE(parse_primitive("eq:2").is_randomness());
    REQUIRE_FALSE(parse_primitive("ip:3").is_randomness());
    REQUIRE_THROWS_AS(parse_primitive("nope:1"), Error);
    REQUIRE_THROWS_AS(parse_primitive("ot:1,2"), Error);
    REQUIRE_THROWS_AS(parse_primitive("ot:1,2,1,1,9"), Error);
}
