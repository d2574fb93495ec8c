#pragma once

// The group-expression language: direct sums of the model atoms
// Z, Q, Z/m, Z(p^inf), Q/Z plus the aliases R, R^n, C*, S^1, with cardinal
// multiplicities. Grammar:
//
//   expr     := term { "(+)" term }
//   term     := atom [ "^" cardinal ]
//   atom     := "0" | "Z" | "Q" | "Q/Z" | "Z/" nat | "Z(" nat "^inf)"
//             | "R" [ "^" nat ] | "C*" | "S^1" | "(" expr ")"
//   cardinal := nat | "aleph0" | "c"
//
// Whitespace between tokens is ignored; "(+)" is a literal.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "divgrp/exact_arith.hpp"

namespace divgrp {

enum class AtomKind {
    Zero,
    Z,
    Q,
    Cyclic,   // param = modulus m >= 1
    Prufer,   // param = prime p
    QmodZ,
    Real,     // alias: R
    RealPow,  // alias: R^n, param = n >= 1
    CStar,    // alias: C*
    Circle,   // alias: S^1
};

struct Atom {
    AtomKind kind = AtomKind::Zero;
    Int param = 0;

    bool operator==(const Atom&) const = default;
};

// True for the five atoms whose elements the library can represent exactly.
bool atom_is_model(const Atom& a);
std::string print_atom(const Atom& a);

class GroupExpr {
public:
    enum class Tag { Atom, Power, Sum };

    static GroupExpr atom(Atom a);
    static GroupExpr zero() { return atom({AtomKind::Zero, 0}); }
    static GroupExpr z() { return atom({AtomKind::Z, 0}); }
    static GroupExpr q() { return atom({AtomKind::Q, 0}); }
    static GroupExpr q_mod_z() { return atom({AtomKind::QmodZ, 0}); }
    static GroupExpr cyclic(Int m);
    static GroupExpr prufer(Int p);
    static GroupExpr power(GroupExpr base, Cardinal card);
    static GroupExpr sum(std::vector<GroupExpr> terms);

    Tag tag() const { return tag_; }
    const Atom& as_atom() const;
    const GroupExpr& power_base() const;
    const Cardinal& power_card() const;
    const std::vector<GroupExpr>& sum_terms() const;

    friend bool operator==(const GroupExpr& a, const GroupExpr& b);
    friend bool operator!=(const GroupExpr& a, const GroupExpr& b) { return !(a == b); }

private:
    GroupExpr() = default;

    Tag tag_ = Tag::Atom;
    Atom atom_{};
    Cardinal card_{};
    std::shared_ptr<const GroupExpr> base_;
    std::vector<GroupExpr> terms_;
};

// Throws ParseError with byte offset and expected-token set.
GroupExpr parse_expr(std::string_view text);

// parse_expr(print_expr(e)) is structurally equal to e.
std::string print_expr(const GroupExpr& e);

struct DivisorEntry {
    Int p;
    unsigned r = 0;    // prime-power Z/p^r
    Cardinal mult;
    bool operator==(const DivisorEntry&) const = default;
};

struct PruferEntry {
    Int p;
    Cardinal mult;
    bool operator==(const PruferEntry&) const = default;
};

// Canonical classification of an expression:
//   Z^free_rank (+) sum of Z/p^r with multiplicities (+) Prufer part (+) Q^q_mult.
// The Prufer part assigns every prime `default_prufer` copies of Z(p^inf)
// except the listed exceptions; Q/Z and C*/S^1 raise the default, so the
// map stays finite even though it speaks about all primes.
struct NormalForm {
    Cardinal free_rank;
    std::vector<DivisorEntry> elementary_divisors; // sorted by (p, r)
    std::vector<PruferEntry> prufer_exceptions;    // sorted by p; mult != default_prufer
    Cardinal default_prufer;
    Cardinal q_mult;

    Cardinal prufer_mult(const Int& p) const;
    bool operator==(const NormalForm&) const = default;
};

NormalForm normalize(const GroupExpr& e, const Int& factor_bound = kDefaultFactorBound);

// Canonical expression for a normal form (Z first, then cyclics, Prufer
// exceptions, Q/Z for the default, Q last).
GroupExpr to_expr(const NormalForm& nf);

} // namespace divgrp
