#pragma once

#include <doctest.h>

#include <random>

#include "divgrp/errors.hpp"

// Checks that an expression throws a GroupError of the given kind.
#define CHECK_KIND(expr, kind_)                                          \
    do {                                                                 \
        bool threw_ = false;                                             \
        try {                                                            \
            (void)(expr);                                                \
        } catch (const divgrp::GroupError& e_) {                         \
            threw_ = true;                                               \
            CHECK(e_.kind() == divgrp::ErrorKind::kind_);                \
        }                                                                \
        CHECK_MESSAGE(threw_, "expected GroupError " #kind_);            \
    } while (0)

inline long long rand_range(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}
