#include "divgrp/independence.hpp"

#include <algorithm>
#include <set>

namespace divgrp {

namespace {

// Scale to integers, divide by the gcd, make the first nonzero entry positive.
std::vector<Int> normalize_certificate(const std::vector<Rat>& combo) {
    Int common = 1;
    for (const Rat& c : combo) common = boost::multiprecision::lcm(common, den(c));
    std::vector<Int> out;
    Int g = 0;
    for (const Rat& c : combo) {
        out.push_back(num(c) * (common / den(c)));
        g = gcd(g, out.back());
    }
    if (g > 1) {
        for (Int& c : out) c /= g;
    }
    for (const Int& c : out) {
        if (c == 0) continue;
        if (c < 0) {
            for (Int& v : out) v = -v;
        }
        break;
    }
    return out;
}

std::vector<Int> unit_certificate(std::size_t size, std::size_t index) {
    std::vector<Int> cert(size, Int(0));
    cert[index] = 1;
    return cert;
}

} // namespace

IndependenceVerdict independent_torsion(const std::vector<GroupElement>& xs, const Int& enum_bound) {
    if (xs.empty()) return {true, std::nullopt};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!same_parent(xs[0], xs[i])) {
            throw GroupError(ErrorKind::ParentMismatch,
                             "independence requires elements of one parent group");
        }
    }
    std::vector<Int> orders;
    Int tuples = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        OrderValue o = order_of(xs[i]);
        if (!o.is_finite()) {
            throw GroupError(ErrorKind::InfiniteOrder,
                             "element " + print_element(xs[i]) + " has infinite order");
        }
        if (o.value() == 1) {
            // The identity belongs to no independent system.
            return {false, unit_certificate(xs.size(), i)};
        }
        orders.push_back(o.value());
        tuples *= o.value();
        if (tuples > enum_bound) {
            throw GroupError(ErrorKind::BoundExceeded,
                             "coefficient tuple count exceeds " + enum_bound.str());
        }
    }

    std::vector<Int> coeffs(xs.size(), Int(0));
    while (true) {
        // advance the odometer
        std::size_t i = 0;
        for (; i < coeffs.size(); ++i) {
            if (++coeffs[i] < orders[i]) break;
            coeffs[i] = 0;
        }
        if (i == coeffs.size()) break; // wrapped: all tuples seen
        GroupElement sum = identity_like(xs[0]);
        bool nonzero_term = false;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (coeffs[j] == 0) continue;
            GroupElement term = scalar_mul(coeffs[j], xs[j]);
            if (!is_identity(term)) nonzero_term = true;
            sum = add(sum, term);
        }
        if (nonzero_term && is_identity(sum)) {
            return {false, coeffs};
        }
    }
    return {true, std::nullopt};
}

namespace {

struct Eliminator {
    // Reduced rows with the coefficients expressing them in the inputs.
    struct Row {
        RatVector values;
        std::vector<Rat> combo;
        std::size_t pivot;
    };
    std::vector<Row> rows;

    // Reduces v in place; returns the expression of the residue in the
    // inputs, given that v is input `index` of `count`.
    std::vector<Rat> reduce(RatVector& v, std::size_t index, std::size_t count) {
        std::vector<Rat> combo(count, Rat(0));
        combo[index] = 1;
        for (const Row& row : rows) {
            const Rat& lead = v[row.pivot];
            if (lead == 0) continue;
            Rat f = lead / row.values[row.pivot];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row.values[j];
            for (std::size_t j = 0; j < count; ++j) combo[j] -= f * row.combo[j];
        }
        return combo;
    }

    static std::optional<std::size_t> leading_index(const RatVector& v) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 0) return j;
        }
        return std::nullopt;
    }

    void insert(RatVector v, std::vector<Rat> combo, std::size_t pivot) {
        rows.push_back({std::move(v), std::move(combo), pivot});
    }
};

void check_common_dimension(const std::vector<RatVector>& vs) {
    for (std::size_t i = 1; i < vs.size(); ++i) {
        if (vs[i].size() != vs[0].size()) {
            throw GroupError(ErrorKind::DimensionMismatch,
                             "vectors must share one dimension");
        }
    }
}

} // namespace

IndependenceVerdict independent_rational(const std::vector<RatVector>& vs) {
    check_common_dimension(vs);
    Eliminator elim;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        RatVector v = vs[i];
        std::vector<Rat> combo = elim.reduce(v, i, vs.size());
        auto pivot = Eliminator::leading_index(v);
        if (!pivot) {
            // v reduced to zero: combo is a dependency with combo[i] = 1.
            return {false, normalize_certificate(combo)};
        }
        elim.insert(std::move(v), std::move(combo), *pivot);
    }
    return {true, std::nullopt};
}

std::vector<std::size_t> max_independent_subset(const std::vector<RatVector>& vs) {
    check_common_dimension(vs);
    Eliminator elim;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        RatVector v = vs[i];
        std::vector<Rat> combo = elim.reduce(v, i, vs.size());
        auto pivot = Eliminator::leading_index(v);
        if (!pivot) continue;
        elim.insert(std::move(v), std::move(combo), *pivot);
        kept.push_back(i);
    }
    return kept;
}

std::vector<RatVector> rational_coordinates(const std::vector<GroupElement>& xs) {
    if (xs.empty()) return {};
    if (!std::holds_alternative<SumElem>(xs[0])) {
        std::vector<RatVector> out;
        for (const GroupElement& x : xs) {
            if (const auto* z = std::get_if<ZElem>(&x)) {
                out.push_back({Rat(z->value)});
            } else if (const auto* q = std::get_if<QElem>(&x)) {
                out.push_back({q->value});
            } else {
                throw GroupError(ErrorKind::NotTorsionFree,
                                 "coordinates need a torsion-free parent");
            }
        }
        return out;
    }
    const auto& first = std::get<SumElem>(xs[0]);
    for (const auto& term : first.parent->terms) {
        if (term.atom.kind != AtomKind::Z && term.atom.kind != AtomKind::Q &&
            term.atom.kind != AtomKind::Zero) {
            throw GroupError(ErrorKind::NotTorsionFree,
                             "parent has torsion atom " + print_atom(term.atom));
        }
    }
    std::set<Coord> support;
    for (const GroupElement& x : xs) {
        for (const auto& [coord, comp] : std::get<SumElem>(x).entries) support.insert(coord);
    }
    std::vector<Coord> axes(support.begin(), support.end());
    std::vector<RatVector> out;
    for (const GroupElement& x : xs) {
        const auto& entries = std::get<SumElem>(x).entries;
        RatVector v;
        for (const Coord& c : axes) {
            auto it = entries.find(c);
            if (it == entries.end()) {
                v.push_back(Rat(0));
            } else if (const auto* z = std::get_if<ZElem>(&it->second)) {
                v.push_back(Rat(z->value));
            } else {
                v.push_back(std::get<QElem>(it->second).value);
            }
        }
        if (v.empty()) v.push_back(Rat(0)); // all elements are the identity
        out.push_back(std::move(v));
    }
    return out;
}

IndependenceVerdict independent_elements(const std::vector<GroupElement>& xs, const Int& enum_bound) {
    if (xs.empty()) return {true, std::nullopt};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!same_parent(xs[0], xs[i])) {
            throw GroupError(ErrorKind::ParentMismatch,
                             "independence requires elements of one parent group");
        }
    }
    bool all_finite = true;
    for (const GroupElement& x : xs) {
        if (!order_of(x).is_finite()) {
            all_finite = false;
            break;
        }
    }
    if (all_finite) return independent_torsion(xs, enum_bound);
    try {
        return independent_rational(rational_coordinates(xs));
    } catch (const GroupError& err) {
        if (err.kind() == ErrorKind::NotTorsionFree) {
            throw GroupError(ErrorKind::UnsupportedMix,
                             "system mixes torsion and infinite-order elements");
        }
        throw;
    }
}

} // namespace divgrp
