#pragma once

// Random expression ASTs for round-trip and normalization fuzzing.

#include <random>
#include <vector>

#include "divgrp/group_lang.hpp"

inline divgrp::Cardinal random_cardinal(std::mt19937_64& rng, bool allow_zero = false) {
    using divgrp::Cardinal;
    switch (std::uniform_int_distribution<int>(allow_zero ? 0 : 1, 6)(rng)) {
    case 0: return Cardinal::finite(0);
    case 1: return Cardinal::finite(1);
    case 2: return Cardinal::finite(2);
    case 3: return Cardinal::finite(3);
    case 4: return Cardinal::finite(7);
    case 5: return Cardinal::aleph0();
    default: return Cardinal::continuum();
    }
}

inline divgrp::GroupExpr random_atom(std::mt19937_64& rng) {
    using divgrp::GroupExpr;
    static const long long cyclic_moduli[] = {1, 2, 4, 6, 12, 30, 97, 360};
    static const long long prufer_primes[] = {2, 3, 5, 7, 11};
    switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
    case 0: return GroupExpr::zero();
    case 1: return GroupExpr::z();
    case 2: return GroupExpr::q();
    case 3: return GroupExpr::q_mod_z();
    case 4:
        return GroupExpr::cyclic(cyclic_moduli[std::uniform_int_distribution<int>(0, 7)(rng)]);
    case 5:
        return GroupExpr::prufer(prufer_primes[std::uniform_int_distribution<int>(0, 4)(rng)]);
    case 6: return GroupExpr::atom({divgrp::AtomKind::Real, 0});
    case 7:
        return GroupExpr::atom(
            {divgrp::AtomKind::RealPow, std::uniform_int_distribution<int>(1, 5)(rng)});
    case 8: return GroupExpr::atom({divgrp::AtomKind::CStar, 0});
    default: return GroupExpr::atom({divgrp::AtomKind::Circle, 0});
    }
}

inline divgrp::GroupExpr random_expr(std::mt19937_64& rng, int depth = 0) {
    using divgrp::GroupExpr;
    int roll = std::uniform_int_distribution<int>(0, 99)(rng);
    if (depth >= 3 || roll < 50) return random_atom(rng);
    if (roll < 75) {
        return GroupExpr::power(random_expr(rng, depth + 1), random_cardinal(rng, true));
    }
    int arity = std::uniform_int_distribution<int>(2, 4)(rng);
    std::vector<GroupExpr> terms;
    for (int i = 0; i < arity; ++i) terms.push_back(random_expr(rng, depth + 1));
    return GroupExpr::sum(std::move(terms));
}
