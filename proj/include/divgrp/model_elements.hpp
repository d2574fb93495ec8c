#pragma once

// Exact elements of the model groups Z, Q, Q/Z, Z(p^inf), Z/m and of
// finite-support direct sums of them. Representatives are canonical, so
// equality is structural:
//   - Q/Z and Prufer values live in [0, 1)
//   - Prufer a/p^k keeps p coprime to a (k = 0, a = 0 is the identity)
//   - cyclic residues live in [0, m)
//   - sum elements never store identity components.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "divgrp/group_lang.hpp"

namespace divgrp {

struct ZElem {
    Int value;
    bool operator==(const ZElem&) const = default;
};

struct QElem {
    Rat value;
    bool operator==(const QElem&) const = default;
};

struct QmodZElem {
    Rat value; // in [0, 1)
    bool operator==(const QmodZElem&) const = default;
};

struct PruferElem {
    Int p;
    unsigned k = 0; // value is a / p^k
    Int a;
    bool operator==(const PruferElem&) const = default;
};

struct CyclicElem {
    Int m;
    Int r; // in [0, m)
    bool operator==(const CyclicElem&) const = default;
};

using ScalarElem = std::variant<ZElem, QElem, QmodZElem, PruferElem, CyclicElem>;

// A direct sum of model atoms with cardinal multiplicities; the flattened
// list of a parent expression. Positions index `terms`.
struct SumParent {
    struct Term {
        Atom atom;
        Cardinal mult;
        bool operator==(const Term&) const = default;
    };
    std::vector<Term> terms;
    bool operator==(const SumParent&) const = default;
};

// Coordinates of a sum element: (position in the parent, copy tag). Any
// non-negative tag addresses one copy of the atom; for finite multiplicities
// tags must stay below the multiplicity.
struct Coord {
    std::size_t pos = 0;
    Int tag;
    friend bool operator<(const Coord& a, const Coord& b) {
        return a.pos != b.pos ? a.pos < b.pos : a.tag < b.tag;
    }
    bool operator==(const Coord&) const = default;
};

struct SumElem {
    std::shared_ptr<const SumParent> parent;
    std::map<Coord, ScalarElem> entries; // no identity entries
    friend bool operator==(const SumElem& a, const SumElem& b) {
        return *a.parent == *b.parent && a.entries == b.entries;
    }
};

using GroupElement = std::variant<ZElem, QElem, QmodZElem, PruferElem, CyclicElem, SumElem>;

// --- construction (canonicalizing) -----------------------------------------

GroupElement z_element(Int v);
GroupElement q_element(Rat v);
GroupElement qmodz_element(const Rat& v);               // reduced mod 1
GroupElement prufer_element(const Int& p, const Rat& v); // v's denominator must be a power of p
GroupElement prufer_generator(const Int& p, unsigned n); // c_n = 1/p^n
GroupElement cyclic_element(Int m, const Int& r);        // r reduced mod m

// Flattens an expression into a sum parent: nested sums are spliced, powers
// distribute over their base, multiplicities multiply. Atoms must be model
// atoms (no aliases); throws UnsupportedAtom otherwise.
SumParent flatten_parent(const GroupExpr& e);

// Validates coordinates against the parent and prunes identity components.
GroupElement sum_element(std::shared_ptr<const SumParent> parent,
                         std::map<Coord, ScalarElem> entries);

GroupElement identity_like(const GroupElement& x);
bool is_identity(const GroupElement& x);
bool same_parent(const GroupElement& x, const GroupElement& y);

// Total order among elements of one parent (used to sort solution lists).
bool element_less(const GroupElement& a, const GroupElement& b);

// --- arithmetic -------------------------------------------------------------

GroupElement add(const GroupElement& x, const GroupElement& y); // ParentMismatch
GroupElement negate(const GroupElement& x);
GroupElement scalar_mul(const Int& n, const GroupElement& x);
OrderValue order_of(const GroupElement& x);

struct DivisionResult {
    std::vector<GroupElement> solutions; // sorted by element_less
    Cardinal count;                      // exact number of solutions
    bool truncated = false;              // true when the list is not complete
};

// All y with n*y == x (n >= 1). Complete whenever the exact count fits the
// enumeration bound; otherwise one canonical witness with truncated = true.
// Throws NoSolution when no y exists (e.g. 2*y = 1 in Z).
DivisionResult divide_element(const Int& n, const GroupElement& x,
                              const Int& enum_bound = kDefaultEnumBound);

// Canonical k-step division chain in a Prufer group: keeps the numerator and
// raises the exponent, so p^k * chain_lift(x, k) == x and lifts compose.
// chain_lift(identity, k) is the generator c_k.
GroupElement chain_lift(const GroupElement& x, const Int& k);

// Exact scaling by a rational in a torsion-free parent. NotTorsionFree when
// the parent has torsion atoms; NoSolution when a Z coordinate is not
// divisible by the denominator.
GroupElement rational_scale(const Rat& r, const GroupElement& x);

// True when the order is finite and square-free.
bool in_socle(const GroupElement& x, const Int& factor_bound = kDefaultFactorBound);

// --- literals ---------------------------------------------------------------
// Scalar forms: q:3/5  z:4  qz:1/6  pr:2^inf:3/8  cyc:12:7
// Sum form:     {pos0.tag0=qz:1/2, pos2.tag5=q:1/3}   (parent required)

std::string print_element(const GroupElement& x);

// `parent` is required for sum literals and checked against scalar literals
// when present.
GroupElement parse_element(std::string_view text,
                           const std::optional<GroupExpr>& parent = std::nullopt);

} // namespace divgrp
