#include "divgrp/exact_arith.hpp"

#include <sstream>
#include <utility>

namespace divgrp {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::ParentMismatch: return "ParentMismatch";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotTorsionFree: return "NotTorsionFree";
    case ErrorKind::NotTorsion: return "NotTorsion";
    case ErrorKind::InfiniteOrder: return "InfiniteOrder";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NotFinitelyGenerated: return "NotFinitelyGenerated";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedMix: return "UnsupportedMix";
    case ErrorKind::UnsupportedAtom: return "UnsupportedAtom";
    }
    return "UnknownError";
}

namespace {

std::string parse_error_message(std::size_t offset, const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << "offset " << offset << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
        os << expected[i];
    }
    return os.str();
}

} // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected)
    : GroupError(ErrorKind::ParseError, parse_error_message(offset, expected)),
      offset_(offset),
      expected_(std::move(expected)) {}

Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(num, den);
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b; // truncates toward zero
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

Int mod_floor(const Int& a, const Int& b) {
    return a - floor_div(a, b) * b;
}

Rat frac_part(const Rat& q) {
    Int f = floor_div(num(q), den(q));
    return q - Rat(f);
}

Int pow_int(const Int& base, unsigned long exp) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

unsigned long valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    unsigned long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

ExtGcdResult ext_gcd(const Int& a, const Int& b) {
    if (a == 0 && b == 0) return {0, 0, 0};
    Int old_r = a, r = b;
    Int old_x = 1, x = 0;
    Int old_y = 0, y = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * x; old_x = x; x = t;
        t = old_y - q * y; old_y = y; y = t;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    return {old_r, old_x, old_y};
}

ExtGcdMultiResult ext_gcd_multi(const std::vector<Int>& values) {
    if (values.empty()) throw std::invalid_argument("ext_gcd_multi: empty list");
    Int g = values[0];
    std::vector<Int> coeffs{1};
    if (g < 0) {
        g = -g;
        coeffs[0] = -1;
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        ExtGcdResult step = ext_gcd(g, values[i]);
        for (Int& c : coeffs) c *= step.x;
        coeffs.push_back(step.y);
        g = step.g;
    }
    return {g, std::move(coeffs)};
}

std::vector<PrimePower> factorize(const Int& n, const Int& bound) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    if (n > bound) {
        throw GroupError(ErrorKind::BoundExceeded,
                         "factorization bound exceeded: " + n.str() + " > " + bound.str());
    }
    std::vector<PrimePower> result;
    Int rest = n;
    auto strip = [&](const Int& p) {
        unsigned r = 0;
        while (rest % p == 0) {
            rest /= p;
            ++r;
        }
        if (r > 0) result.push_back({p, r});
    };
    strip(2);
    for (Int d = 3; d * d <= rest; d += 2) strip(d);
    if (rest > 1) result.push_back({rest, 1});
    return result;
}

Int factorization_value(const std::vector<PrimePower>& factors) {
    Int v = 1;
    for (const auto& pp : factors) v *= pow_int(pp.p, pp.r);
    return v;
}

bool is_prime(const Int& n, const Int& bound) {
    if (n < 2) return false;
    if (n > bound) {
        throw GroupError(ErrorKind::BoundExceeded,
                         "primality bound exceeded: " + n.str() + " > " + bound.str());
    }
    if (n % 2 == 0) return n == 2;
    for (Int d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_squarefree(const Int& n, const Int& bound) {
    for (const auto& pp : factorize(n, bound)) {
        if (pp.r > 1) return false;
    }
    return true;
}

Cardinal Cardinal::finite(Int k) {
    if (k < 0) throw std::invalid_argument("Cardinal::finite: negative");
    Cardinal c;
    c.value_ = std::move(k);
    return c;
}

const Int& Cardinal::finite_value() const {
    if (!is_finite()) throw std::logic_error("finite_value of infinite cardinal");
    return value_;
}

Cardinal operator+(const Cardinal& a, const Cardinal& b) {
    if (a.is_finite() && b.is_finite()) return Cardinal::finite(a.value_ + b.value_);
    return a < b ? b : a;
}

Cardinal operator*(const Cardinal& a, const Cardinal& b) {
    if (a.is_zero() || b.is_zero()) return Cardinal::finite(0);
    if (a.is_finite() && b.is_finite()) return Cardinal::finite(a.value_ * b.value_);
    return a < b ? b : a;
}

bool operator==(const Cardinal& a, const Cardinal& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || a.value_ == b.value_;
}

bool operator<(const Cardinal& a, const Cardinal& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    return a.is_finite() && a.value_ < b.value_;
}

std::string to_string(const Cardinal& c) {
    switch (c.kind()) {
    case Cardinal::Kind::Finite: return c.finite_value().str();
    case Cardinal::Kind::Aleph0: return "aleph0";
    case Cardinal::Kind::Continuum: return "continuum";
    }
    return {};
}

Cardinal finite_support_count(const Int& pool_size, const Cardinal& copies) {
    if (pool_size < 1) throw std::invalid_argument("finite_support_count: empty pool");
    if (pool_size == 1 || copies.is_zero()) return Cardinal::finite(1);
    if (copies.is_finite()) {
        const Int& k = copies.finite_value();
        if (k > 4000000) {
            throw GroupError(ErrorKind::BoundExceeded,
                             "solution count exponent too large: " + k.str());
        }
        return Cardinal::finite(pow_int(pool_size, k.convert_to<unsigned long>()));
    }
    return copies.kind() == Cardinal::Kind::Aleph0 ? Cardinal::aleph0() : Cardinal::continuum();
}

OrderValue OrderValue::fin(Int k) {
    if (k < 1) throw std::invalid_argument("OrderValue::fin: order must be >= 1");
    OrderValue o;
    o.finite_ = true;
    o.value_ = std::move(k);
    return o;
}

const Int& OrderValue::value() const {
    if (!finite_) throw std::logic_error("value of infinite order");
    return value_;
}

bool operator==(const OrderValue& a, const OrderValue& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
}

std::string to_string(const OrderValue& o) {
    return o.is_finite() ? o.value().str() : "infinite";
}

} // namespace divgrp
