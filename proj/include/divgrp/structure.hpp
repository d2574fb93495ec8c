#pragma once

// Structure theory over the expression language: divisibility, torsion and
// divisible splittings, primary decomposition, socle, classification and
// isomorphism by the invariants (m_p, n), divisible hulls, and Smith normal
// form for finitely presented abelian groups.

#include <optional>
#include <utility>
#include <vector>

#include "divgrp/group_lang.hpp"
#include "divgrp/model_elements.hpp"

namespace divgrp {

struct StructureReport {
    NormalForm normal;
    bool is_divisible = false;
    bool is_torsion = false;
    bool is_torsion_free = false;
    bool is_reduced = false;
    bool operator==(const StructureReport&) const = default;
};

struct DivisibilityResult {
    bool divisible = false;
    // When not divisible: an atom A of the normal form and an n with nA != A.
    std::optional<std::pair<Atom, Int>> witness;
};

DivisibilityResult is_divisible_expr(const GroupExpr& e, const Int& factor_bound = kDefaultFactorBound);

// (torsion part, torsion-free part); their sum classifies equal to e.
std::pair<GroupExpr, GroupExpr> torsion_split(const GroupExpr& e,
                                              const Int& factor_bound = kDefaultFactorBound);

// (maximal divisible part, reduced part).
std::pair<GroupExpr, GroupExpr> split_divisible(const GroupExpr& e,
                                                const Int& factor_bound = kDefaultFactorBound);

// G = (+)_p T_p for torsion G. Components list the primes that appear
// explicitly; `default_prufer` copies of Z(p^inf) remain for every other
// prime (nonzero exactly when Q/Z-type atoms are present).
struct PrimaryDecomposition {
    std::vector<std::pair<Int, GroupExpr>> components; // sorted by prime
    Cardinal default_prufer;
};

PrimaryDecomposition primary_decompose(const GroupExpr& e,
                                       const Int& factor_bound = kDefaultFactorBound);

// Splits a finite-order element into parts of prime-power order via the
// Bezout identity on the cofactors of its order.
std::vector<std::pair<Int, GroupElement>> primary_decompose(const GroupElement& x,
                                                            const Int& factor_bound = kDefaultFactorBound);

// The socle as an expression plus, when Q/Z-type atoms contribute to every
// prime, a default multiplicity of Z/p for the primes not listed.
struct SocleResult {
    GroupExpr expr;
    Cardinal prime_default;
};

SocleResult socle(const GroupExpr& e, const Int& factor_bound = kDefaultFactorBound);

StructureReport classify(const GroupExpr& e, const Int& factor_bound = kDefaultFactorBound);

bool is_isomorphic(const GroupExpr& a, const GroupExpr& b,
                   const Int& factor_bound = kDefaultFactorBound);

// Minimal divisible overgroup of a finitely generated expression:
// Z -> Q and Z/p^r -> Z(p^inf), multiplicities preserved.
GroupExpr divisible_hull(const GroupExpr& e, const Int& factor_bound = kDefaultFactorBound);

// Size of the kernel of multiplication by n on a divisible group: the number
// of solutions of n*x = y for any attainable y.
Cardinal count_division_solutions(const GroupExpr& e, const Int& n,
                                  const Int& factor_bound = kDefaultFactorBound);

// --- integer matrices and Smith normal form ---------------------------------

struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> entries; // row-major

    static IntMatrix zero(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);

    Int& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

    bool operator==(const IntMatrix&) const = default;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

struct SnfResult {
    IntMatrix u, d, v; // u * input * v == d
};

// Deterministic Smith normal form: pivot is the smallest nonzero absolute
// value, ties broken by lowest (row, col); diagonal nonnegative with
// d_i | d_{i+1}.
SnfResult smith_normal_form(IntMatrix a);

// Classifies Z^cols / (row span of `relations`): columns are generators,
// rows are relations.
GroupExpr fp_classify(const IntMatrix& relations);

} // namespace divgrp
