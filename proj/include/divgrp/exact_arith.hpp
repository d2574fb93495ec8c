#pragma once

// Exact integer, rational and cardinal arithmetic. Everything downstream
// (group elements, expression normalization, Smith normal form) sits on these
// types; nothing here ever rounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "divgrp/errors.hpp"

namespace divgrp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Trial-division factorization refuses inputs above this unless overridden.
inline const Int kDefaultFactorBound = Int("1000000000000"); // 10^12
// Brute-force enumerations (independence tuples, solution lists) stop here.
inline const Int kDefaultEnumBound = Int(1000000); // 10^6

inline Int num(const Rat& q) { return numerator(q); }
inline Int den(const Rat& q) { return denominator(q); }

// num/den with any signs, den != 0; result canonical (reduced, den > 0).
Rat make_rat(Int num, Int den);

// Division rounding toward negative infinity; b > 0.
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

// q - floor(q), always in [0, 1).
Rat frac_part(const Rat& q);

Int pow_int(const Int& base, unsigned long exp);

// Largest e with p^e | n; n != 0, p >= 2.
unsigned long valuation(Int n, const Int& p);

struct ExtGcdResult {
    Int g; // gcd(a, b) >= 0
    Int x;
    Int y; // a*x + b*y == g
};

// Extended Euclid. gcd(0, 0) = 0 with coefficients (0, 0).
ExtGcdResult ext_gcd(const Int& a, const Int& b);

struct ExtGcdMultiResult {
    Int g;
    std::vector<Int> coeffs; // sum coeffs[i] * values[i] == g
};

// Folds ext_gcd across a non-empty list.
ExtGcdMultiResult ext_gcd_multi(const std::vector<Int>& values);

struct PrimePower {
    Int p;
    unsigned r = 0;
    bool operator==(const PrimePower&) const = default;
};

// Prime factorization of n >= 1 by trial division, primes ascending; empty
// for n == 1. Throws BoundExceeded for n > bound.
std::vector<PrimePower> factorize(const Int& n, const Int& bound = kDefaultFactorBound);

Int factorization_value(const std::vector<PrimePower>& factors);

bool is_prime(const Int& n, const Int& bound = kDefaultFactorBound);

bool is_squarefree(const Int& n, const Int& bound = kDefaultFactorBound);

// A cardinal number: a non-negative integer, aleph_0, or 2^aleph_0. The only
// three shapes the structure theory needs; arithmetic on the infinite ones is
// absorption (max).
class Cardinal {
public:
    enum class Kind { Finite, Aleph0, Continuum };

    Cardinal() : kind_(Kind::Finite), value_(0) {}

    static Cardinal finite(Int k);
    static Cardinal aleph0() { return Cardinal(Kind::Aleph0); }
    static Cardinal continuum() { return Cardinal(Kind::Continuum); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_zero() const { return kind_ == Kind::Finite && value_ == 0; }

    // Only valid when is_finite().
    const Int& finite_value() const;

    friend Cardinal operator+(const Cardinal& a, const Cardinal& b);
    friend Cardinal operator*(const Cardinal& a, const Cardinal& b);

    friend bool operator==(const Cardinal& a, const Cardinal& b);
    friend bool operator!=(const Cardinal& a, const Cardinal& b) { return !(a == b); }
    friend bool operator<(const Cardinal& a, const Cardinal& b);
    friend bool operator<=(const Cardinal& a, const Cardinal& b) { return a < b || a == b; }

private:
    explicit Cardinal(Kind kind) : kind_(kind), value_(0) {}

    Kind kind_;
    Int value_;
};

// "5", "aleph0", "continuum".
std::string to_string(const Cardinal& c);

// Number of finite-support assignments of a pool of `pool_size` values
// (one of them the identity) across `copies` coordinates.
Cardinal finite_support_count(const Int& pool_size, const Cardinal& copies);

// Order of a group element: a positive integer or infinite.
class OrderValue {
public:
    static OrderValue fin(Int k);
    static OrderValue infinite() { return OrderValue(); }

    bool is_finite() const { return finite_; }
    const Int& value() const; // only when finite

    friend bool operator==(const OrderValue& a, const OrderValue& b);
    friend bool operator!=(const OrderValue& a, const OrderValue& b) { return !(a == b); }

private:
    OrderValue() : finite_(false), value_(0) {}

    bool finite_;
    Int value_;
};

std::string to_string(const OrderValue& o);

} // namespace divgrp
