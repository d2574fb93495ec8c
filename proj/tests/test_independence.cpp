#include <doctest.h>

#include <array>

#include "divgrp/independence.hpp"
#include "test_util.hpp"

using namespace divgrp;

namespace {

RatVector rv(std::vector<long long> vals) {
    RatVector v;
    for (long long x : vals) v.push_back(Rat(x));
    return v;
}

// Rank over the field with p elements.
int fp_rank(std::vector<std::array<long long, 2>> vecs, long long p) {
    int rank = 0;
    std::size_t col = 0;
    for (; col < 2 && rank < static_cast<int>(vecs.size()); ++col) {
        std::size_t pivot = vecs.size();
        for (std::size_t i = rank; i < vecs.size(); ++i) {
            if (vecs[i][col] % p != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == vecs.size()) continue;
        std::swap(vecs[rank], vecs[pivot]);
        // clear the column below using field inverses (p is prime)
        long long inv = 1;
        for (long long t = 1; t < p; ++t) {
            if ((vecs[rank][col] % p + p) % p * t % p == 1) inv = t;
        }
        for (std::size_t i = rank + 1; i < vecs.size(); ++i) {
            long long f = ((vecs[i][col] % p + p) % p) * inv % p;
            for (std::size_t j = 0; j < 2; ++j) {
                vecs[i][j] = ((vecs[i][j] - f * vecs[rank][j]) % p + p) % p;
            }
        }
        ++rank;
    }
    return rank;
}

GroupElement pair_element(const std::shared_ptr<const SumParent>& parent, long long p,
                          long long a, long long b) {
    std::map<Coord, ScalarElem> entries;
    if (a % p != 0) entries.emplace(Coord{0, 0}, CyclicElem{p, mod_floor(a, p)});
    if (b % p != 0) entries.emplace(Coord{0, 1}, CyclicElem{p, mod_floor(b, p)});
    return sum_element(parent, std::move(entries));
}

void check_certificate(const IndependenceVerdict& v, const std::vector<GroupElement>& xs) {
    REQUIRE(!v.independent);
    REQUIRE(v.certificate.has_value());
    const auto& cert = *v.certificate;
    REQUIRE(cert.size() == xs.size());
    bool any_nonzero_coeff = false;
    GroupElement sum = identity_like(xs.front());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (cert[i] != 0) any_nonzero_coeff = true;
        sum = add(sum, scalar_mul(cert[i], xs[i]));
    }
    CHECK(any_nonzero_coeff);
    CHECK(is_identity(sum));
}

} // namespace

TEST_CASE("torsion independence on the worked examples") {
    GroupElement half = qmodz_element(make_rat(1, 2));
    GroupElement third = qmodz_element(make_rat(1, 3));
    GroupElement quarter = qmodz_element(make_rat(1, 4));

    CHECK(independent_torsion({half, third}).independent);
    CHECK(independent_torsion({}).independent);

    IndependenceVerdict v = independent_torsion({half, quarter});
    REQUIRE(!v.independent);
    REQUIRE(v.certificate.has_value());
    CHECK(*v.certificate == std::vector<Int>{1, 2});
    check_certificate(v, {half, quarter});
}

TEST_CASE("systems containing the identity are dependent") {
    GroupElement zero = qmodz_element(Rat(0));
    GroupElement half = qmodz_element(make_rat(1, 2));
    IndependenceVerdict v = independent_torsion({zero});
    CHECK(!v.independent);
    REQUIRE(v.certificate.has_value());
    CHECK(*v.certificate == std::vector<Int>{1});
    CHECK(!independent_torsion({half, zero}).independent);
    CHECK(!independent_rational({rv({0, 0})}).independent);
}

TEST_CASE("torsion independence errors") {
    CHECK_KIND(independent_torsion({q_element(make_rat(1, 2))}), InfiniteOrder);
    CHECK_KIND(independent_torsion({qmodz_element(make_rat(1, 2)), cyclic_element(4, 1)}),
               ParentMismatch);
    CHECK_KIND(independent_torsion({qmodz_element(make_rat(1, 100)),
                                    qmodz_element(make_rat(1, 99))},
                                   Int(1000)),
               BoundExceeded);
}

TEST_CASE("rational independence on the worked examples") {
    CHECK(independent_rational({rv({1, 0}), rv({0, 1})}).independent);

    IndependenceVerdict v = independent_rational({rv({1, 0}), rv({0, 1}), rv({1, 1})});
    REQUIRE(!v.independent);
    CHECK(*v.certificate == std::vector<Int>{1, 1, -1});

    v = independent_rational({rv({2, 4}), rv({1, 2})});
    REQUIRE(!v.independent);
    CHECK(*v.certificate == std::vector<Int>{1, -2});

    CHECK_KIND(independent_rational({rv({1, 0}), rv({1})}), DimensionMismatch);

    // certificates clear denominators exactly
    v = independent_rational({{make_rat(1, 2), make_rat(1, 3)}, {make_rat(3, 2), Rat(1)}});
    REQUIRE(!v.independent);
    Rat s0 = make_rat(1, 2) * (*v.certificate)[0] + make_rat(3, 2) * (*v.certificate)[1];
    Rat s1 = make_rat(1, 3) * (*v.certificate)[0] + Rat(1) * (*v.certificate)[1];
    CHECK(s0 == 0);
    CHECK(s1 == 0);
}

TEST_CASE("maximal independent subsets") {
    CHECK(max_independent_subset({rv({1, 0}), rv({2, 0}), rv({0, 1})}) ==
          std::vector<std::size_t>{0, 2});
    CHECK(max_independent_subset({rv({0, 0}), rv({0, 0})}).empty());
    CHECK(max_independent_subset({rv({3, 7})}) == std::vector<std::size_t>{0});

    std::mt19937_64 rng(999001);
    for (int round = 0; round < 60; ++round) {
        std::size_t count = rand_range(rng, 0, 5);
        std::vector<RatVector> vs;
        for (std::size_t i = 0; i < count; ++i) {
            RatVector v;
            for (int j = 0; j < 4; ++j) {
                v.push_back(make_rat(rand_range(rng, -3, 3), rand_range(rng, 1, 3)));
            }
            // occasionally repeat or scale an earlier vector
            if (!vs.empty() && rand_range(rng, 0, 2) == 0) {
                v = vs[rand_range(rng, 0, vs.size() - 1)];
                if (rand_range(rng, 0, 1) == 0) {
                    for (Rat& x : v) x *= 3;
                }
            }
            vs.push_back(std::move(v));
        }
        std::vector<std::size_t> kept = max_independent_subset(vs);
        std::vector<RatVector> chosen;
        for (std::size_t i : kept) chosen.push_back(vs[i]);
        CHECK(independent_rational(chosen).independent);
        // maximality: every rejected vector depends on the kept ones
        std::set<std::size_t> kept_set(kept.begin(), kept.end());
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (kept_set.count(i)) continue;
            std::vector<RatVector> extended = chosen;
            extended.push_back(vs[i]);
            CHECK(!independent_rational(extended).independent);
        }
        // the selected size is the rank, so it is permutation invariant
        std::vector<RatVector> shuffled = vs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(max_independent_subset(shuffled).size() == kept.size());
    }
}

TEST_CASE("torsion verdicts match field rank on (Z/p)^2") {
    for (long long p : {2, 3}) {
        GroupExpr expr = GroupExpr::power(GroupExpr::cyclic(p), Cardinal::finite(2));
        auto parent = std::make_shared<const SumParent>(flatten_parent(expr));
        std::vector<std::array<long long, 2>> all;
        for (long long a = 0; a < p; ++a) {
            for (long long b = 0; b < p; ++b) all.push_back({a, b});
        }
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                std::vector<GroupElement> xs{pair_element(parent, p, all[i][0], all[i][1]),
                                             pair_element(parent, p, all[j][0], all[j][1])};
                bool expected = fp_rank({all[i], all[j]}, p) == 2;
                CHECK(independent_torsion(xs).independent == expected);
            }
        }
    }
}

TEST_CASE("element dispatch covers torsion-free and mixed systems") {
    // torsion-free sums go through rational coordinates
    auto parent = std::make_shared<const SumParent>(flatten_parent(parse_expr("Q (+) Q")));
    auto vec = [&](long long a, long long b) {
        std::map<Coord, ScalarElem> entries;
        if (a != 0) entries.emplace(Coord{0, 0}, QElem{Rat(a)});
        if (b != 0) entries.emplace(Coord{1, 0}, QElem{Rat(b)});
        return sum_element(parent, std::move(entries));
    };
    CHECK(independent_elements({vec(1, 0), vec(0, 1)}).independent);
    IndependenceVerdict v = independent_elements({vec(1, 0), vec(0, 1), vec(1, 1)});
    REQUIRE(!v.independent);
    CHECK(*v.certificate == std::vector<Int>{1, 1, -1});

    // scalar rationals are one-dimensional
    CHECK(!independent_elements({q_element(Rat(2)), q_element(Rat(3))}).independent);
    CHECK(independent_elements({q_element(make_rat(1, 2))}).independent);
    CHECK(independent_elements({z_element(5)}).independent);

    // finite-order systems use brute force even in mixed parents
    auto mixed = std::make_shared<const SumParent>(flatten_parent(parse_expr("Q (+) Z/2")));
    GroupElement torsion_only = sum_element(mixed, {{{1, 0}, CyclicElem{2, 1}}});
    CHECK(independent_elements({torsion_only}).independent);

    // infinite order in a torsion parent is a rejected mix
    GroupElement infinite = sum_element(mixed, {{{0, 0}, QElem{Rat(1)}}});
    CHECK_KIND(independent_elements({infinite, torsion_only}), UnsupportedMix);
}
