#pragma once

// Linear-independence testing: brute force over coefficient tuples for
// finite-order systems, exact Gaussian elimination over Q for torsion-free
// ones, and greedy maximal-independent-subset extraction.
//
// A system is independent when no integer combination vanishes unless every
// term does. Systems containing an identity element are dependent (an
// independent system consists of nonzero elements). Only finite systems can
// be checked.

#include <optional>
#include <vector>

#include "divgrp/model_elements.hpp"

namespace divgrp {

struct IndependenceVerdict {
    bool independent = false;
    // A violating combination when dependent: sum coeffs[i] * x_i = 0 with
    // not all coefficients zero.
    std::optional<std::vector<Int>> certificate;
};

// Brute force over all tuples (c_1, ..., c_k) with 0 <= c_i < order(x_i).
// Throws InfiniteOrder for non-torsion input, ParentMismatch for mixed
// parents, BoundExceeded when the tuple count exceeds the bound.
IndependenceVerdict independent_torsion(const std::vector<GroupElement>& xs,
                                        const Int& enum_bound = kDefaultEnumBound);

using RatVector = std::vector<Rat>;

// Exact rank computation; the certificate is an integer dependency with its
// first nonzero coefficient positive. Throws DimensionMismatch for ragged
// input.
IndependenceVerdict independent_rational(const std::vector<RatVector>& vs);

// Greedy left-to-right selection: keep a vector iff it is independent of the
// kept ones. The result is maximal: adding any rejected index breaks
// independence.
std::vector<std::size_t> max_independent_subset(const std::vector<RatVector>& vs);

// Coordinates of elements of a torsion-free parent (atoms Z and Q only)
// over the union of their supports; scalar elements become 1-vectors.
// Throws NotTorsionFree when the parent has torsion atoms.
std::vector<RatVector> rational_coordinates(const std::vector<GroupElement>& xs);

// Dispatch on the system: brute force when every order is finite, rational
// rank when the parent is torsion-free, UnsupportedMix otherwise.
IndependenceVerdict independent_elements(const std::vector<GroupElement>& xs,
                                         const Int& enum_bound = kDefaultEnumBound);

} // namespace divgrp
