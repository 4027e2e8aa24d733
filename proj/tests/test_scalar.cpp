#include <catch2/catch_amalgamated.hpp>

#include "ncweil/scalar.hpp"

using namespace ncweil;

TEST_CASE("rational canonical form and arithmetic") {
    REQUIRE(Scalar(2, 6) == Scalar(1, 3));
    REQUIRE(Scalar(1, -2) == Scalar(-1, 2));
    REQUIRE((Scalar(1, 3) + Scalar(1, 6)) == Scalar(1, 2));
    REQUIRE((Scalar(2, 3) * Scalar(3, 4)) == Scalar(1, 2));
    REQUIRE((Scalar(1) / Scalar(3)) == Scalar(1, 3));
    REQUIRE(Scalar(0).is_zero());
    REQUIRE_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
}

TEST_CASE("gaussian arithmetic") {
    Scalar i = Scalar::i();
    REQUIRE(i * i == Scalar(-1));
    Scalar z(mpq_class(1), mpq_class(2));  // 1 + 2i
    REQUIRE(z * z.conj() == Scalar(5));
    REQUIRE((z / z) == Scalar(1));
    REQUIRE((Scalar(1) / i) == -i);
}

TEST_CASE("parsing and printing round-trip") {
    for (const char* s : {"0", "1", "-1", "3/4", "-22/7", "i", "-i", "2i",
                          "1+i", "1-i", "1/2+3/4i", "-1/2-3/4i"}) {
        Scalar v = Scalar::parse(s);
        REQUIRE(Scalar::parse(v.str()) == v);
    }
    REQUIRE(Scalar::parse(" 1 / 2 ") == Scalar(1, 2));
    REQUIRE(Scalar::parse("1+i").str() == "1+1i");
    REQUIRE_THROWS_AS(Scalar::parse(""), parse_error);
    REQUIRE_THROWS_AS(Scalar::parse("x"), parse_error);
    REQUIRE_THROWS_AS(Scalar::parse("1/"), parse_error);
}

TEST_CASE("square roots in the session field") {
    REQUIRE(*sqrt_in_field(Scalar(4), Field::Q) == Scalar(2));
    REQUIRE(*sqrt_in_field(Scalar(9, 4), Field::Q) == Scalar(3, 2));
    REQUIRE_FALSE(sqrt_in_field(Scalar(2), Field::Q).has_value());
    REQUIRE_FALSE(sqrt_in_field(Scalar(-1), Field::Q).has_value());
    REQUIRE(*sqrt_in_field(Scalar(-1), Field::Qi) == Scalar::i());
    REQUIRE(*sqrt_in_field(Scalar(-9, 4), Field::Qi) == Scalar(3, 2) * Scalar::i());
    REQUIRE_FALSE(sqrt_in_field(Scalar(2), Field::Qi).has_value());
    // (1+i)^2 = 2i
    auto r = sqrt_in_field(Scalar(mpq_class(0), mpq_class(2)), Field::Qi);
    REQUIRE(r.has_value());
    REQUIRE(*r * *r == Scalar(mpq_class(0), mpq_class(2)));
}
