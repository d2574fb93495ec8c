#include <doctest.h>

#include "divgrp/exact_arith.hpp"
#include "test_util.hpp"

using namespace divgrp;

TEST_CASE("ext_gcd on the worked examples") {
    ExtGcdResult r = ext_gcd(3, 4);
    CHECK(r.g == 1);
    CHECK(r.x == -1);
    CHECK(r.y == 1);
    CHECK(Int(3) * r.x + Int(4) * r.y == r.g);

    r = ext_gcd(0, 0);
    CHECK(r.g == 0);
    CHECK(r.x == 0);
    CHECK(r.y == 0);

    r = ext_gcd(12, 18);
    CHECK(r.g == 6);
    CHECK(Int(12) * r.x + Int(18) * r.y == 6);
}

TEST_CASE("ext_gcd identity holds on random pairs") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        Int a = rand_range(rng, -1000000000, 1000000000);
        Int b = rand_range(rng, -1000000000, 1000000000);
        ExtGcdResult r = ext_gcd(a, b);
        CHECK(r.g == gcd(a, b));
        CHECK(a * r.x + b * r.y == r.g);
        CHECK(r.g >= 0);
    }
}

TEST_CASE("ext_gcd_multi folds the two-argument kernel") {
    ExtGcdMultiResult r = ext_gcd_multi({Int(3), Int(4)});
    CHECK(r.g == 1);
    REQUIRE(r.coeffs.size() == 2);
    CHECK(r.coeffs[0] == -1);
    CHECK(r.coeffs[1] == 1);

    r = ext_gcd_multi({Int(4), Int(6), Int(9)});
    CHECK(r.g == 1);
    Int sum = 0;
    std::vector<Int> values{4, 6, 9};
    for (std::size_t i = 0; i < values.size(); ++i) sum += r.coeffs[i] * values[i];
    CHECK(sum == 1);

    r = ext_gcd_multi({Int(5)});
    CHECK(r.g == 5);
    REQUIRE(r.coeffs.size() == 1);
    CHECK(r.coeffs[0] == 1);

    r = ext_gcd_multi({Int(-6), Int(10)});
    CHECK(r.g == 2);
    CHECK(Int(-6) * r.coeffs[0] + Int(10) * r.coeffs[1] == 2);
}

TEST_CASE("factorize on the worked examples") {
    auto f = factorize(12);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == PrimePower{2, 2});
    CHECK(f[1] == PrimePower{3, 1});

    CHECK(factorize(1).empty());

    f = factorize(97);
    REQUIRE(f.size() == 1);
    CHECK(f[0] == PrimePower{97, 1});
    // trial-division oracle: no divisor up to sqrt(97)
    for (Int d = 2; d * d <= 97; ++d) CHECK(Int(97) % d != 0);
}

TEST_CASE("factorize reconstructs every n up to 1e5") {
    for (long long n = 1; n <= 100000; ++n) {
        auto f = factorize(n);
        CHECK(factorization_value(f) == n);
        for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i - 1].p < f[i].p);
    }
}

TEST_CASE("factorize respects the bound") {
    CHECK_KIND(factorize(Int("1000000000001")), BoundExceeded);
    CHECK_KIND(factorize(Int(100), Int(10)), BoundExceeded);
    CHECK(factorization_value(factorize(Int("1000000000000"))) == Int("1000000000000"));
}

TEST_CASE("is_squarefree matches a direct p^2 scan") {
    CHECK(is_squarefree(6));
    CHECK(!is_squarefree(4));
    CHECK(is_squarefree(30));
    CHECK(is_squarefree(1));
    for (long long n = 1; n <= 10000; ++n) {
        bool direct = true;
        for (long long d = 2; d * d <= n; ++d) {
            if (n % (d * d) == 0) {
                direct = false;
                break;
            }
        }
        CHECK(is_squarefree(n) == direct);
    }
}

TEST_CASE("cardinal arithmetic") {
    Cardinal f2 = Cardinal::finite(2), f3 = Cardinal::finite(3);
    CHECK(f2 + f3 == Cardinal::finite(5));
    CHECK(Cardinal::aleph0() + Cardinal::continuum() == Cardinal::continuum());
    CHECK(Cardinal::finite(0) * Cardinal::continuum() == Cardinal::finite(0));
    CHECK(f2 * f3 == Cardinal::finite(6));
    CHECK(Cardinal::aleph0() * Cardinal::finite(7) == Cardinal::aleph0());

    CHECK(Cardinal::finite(2) < Cardinal::finite(5));
    CHECK(Cardinal::finite(5) < Cardinal::aleph0());
    CHECK(Cardinal::aleph0() < Cardinal::continuum());

    std::vector<Cardinal> samples{Cardinal::finite(0), Cardinal::finite(1), Cardinal::finite(3),
                                  Cardinal::aleph0(), Cardinal::continuum()};
    for (const Cardinal& a : samples) {
        for (const Cardinal& b : samples) {
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            for (const Cardinal& c : samples) {
                CHECK((a + b) + c == a + (b + c));
                CHECK((a * b) * c == a * (b * c));
            }
        }
    }
}

TEST_CASE("finite-support counting") {
    CHECK(finite_support_count(1, Cardinal::continuum()) == Cardinal::finite(1));
    CHECK(finite_support_count(4, Cardinal::finite(3)) == Cardinal::finite(64));
    CHECK(finite_support_count(2, Cardinal::aleph0()) == Cardinal::aleph0());
    CHECK(finite_support_count(2, Cardinal::continuum()) == Cardinal::continuum());
    CHECK(finite_support_count(7, Cardinal::finite(0)) == Cardinal::finite(1));
}

TEST_CASE("floor division and fractional part") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(mod_floor(-7, 2) == 1);
    CHECK(mod_floor(7, 2) == 1);
    CHECK(frac_part(make_rat(9, 8)) == make_rat(1, 8));
    CHECK(frac_part(make_rat(-1, 8)) == make_rat(7, 8));
    CHECK(frac_part(Rat(3)) == 0);
    CHECK(make_rat(2, -4) == make_rat(-1, 2));
}

TEST_CASE("orders and primality") {
    CHECK(OrderValue::fin(6) == OrderValue::fin(6));
    CHECK(OrderValue::fin(6) != OrderValue::infinite());
    CHECK(to_string(OrderValue::infinite()) == "infinite");
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
    CHECK(valuation(24, 2) == 3);
    CHECK(valuation(24, 3) == 1);
}
