#include "divgrp/structure.hpp"

#include <algorithm>
#include <map>

namespace divgrp {

DivisibilityResult is_divisible_expr(const GroupExpr& e, const Int& factor_bound) {
    NormalForm nf = normalize(e, factor_bound);
    if (!nf.elementary_divisors.empty()) {
        const DivisorEntry& d = nf.elementary_divisors.front();
        return {false, std::make_pair(Atom{AtomKind::Cyclic, pow_int(d.p, d.r)}, d.p)};
    }
    if (!nf.free_rank.is_zero()) {
        return {false, std::make_pair(Atom{AtomKind::Z, 0}, Int(2))};
    }
    return {true, std::nullopt};
}

std::pair<GroupExpr, GroupExpr> torsion_split(const GroupExpr& e, const Int& factor_bound) {
    NormalForm nf = normalize(e, factor_bound);
    NormalForm torsion = nf;
    torsion.free_rank = Cardinal::finite(0);
    torsion.q_mult = Cardinal::finite(0);
    NormalForm free;
    free.free_rank = nf.free_rank;
    free.q_mult = nf.q_mult;
    return {to_expr(torsion), to_expr(free)};
}

std::pair<GroupExpr, GroupExpr> split_divisible(const GroupExpr& e, const Int& factor_bound) {
    NormalForm nf = normalize(e, factor_bound);
    NormalForm divisible = nf;
    divisible.free_rank = Cardinal::finite(0);
    divisible.elementary_divisors.clear();
    NormalForm reduced;
    reduced.free_rank = nf.free_rank;
    reduced.elementary_divisors = nf.elementary_divisors;
    return {to_expr(divisible), to_expr(reduced)};
}

PrimaryDecomposition primary_decompose(const GroupExpr& e, const Int& factor_bound) {
    NormalForm nf = normalize(e, factor_bound);
    if (!nf.free_rank.is_zero()) {
        throw GroupError(ErrorKind::NotTorsion, "expression has a free summand Z");
    }
    if (!nf.q_mult.is_zero()) {
        throw GroupError(ErrorKind::NotTorsion, "expression has a torsion-free summand Q");
    }
    std::map<Int, NormalForm> per_prime;
    for (const auto& d : nf.elementary_divisors) {
        per_prime[d.p].elementary_divisors.push_back(d);
    }
    for (const auto& pe : nf.prufer_exceptions) {
        per_prime[pe.p]; // ensure the prime is listed
    }
    PrimaryDecomposition out;
    out.default_prufer = nf.default_prufer;
    for (auto& [p, component] : per_prime) {
        Cardinal mp = nf.prufer_mult(p);
        if (!mp.is_zero()) component.prufer_exceptions.push_back({p, mp});
        out.components.emplace_back(p, to_expr(component));
    }
    return out;
}

std::vector<std::pair<Int, GroupElement>> primary_decompose(const GroupElement& x,
                                                            const Int& factor_bound) {
    OrderValue order = order_of(x);
    if (!order.is_finite()) {
        throw GroupError(ErrorKind::InfiniteOrder, "element has infinite order");
    }
    const Int& m = order.value();
    std::vector<PrimePower> factors = factorize(m, factor_bound);
    if (factors.empty()) return {}; // identity

    // m_i = m / p_i^{r_i}; sum s_i m_i = 1; component_i = s_i m_i x.
    std::vector<Int> cofactors;
    for (const auto& pp : factors) cofactors.push_back(m / pow_int(pp.p, pp.r));
    ExtGcdMultiResult bezout = ext_gcd_multi(cofactors);
    std::vector<std::pair<Int, GroupElement>> out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        out.emplace_back(factors[i].p, scalar_mul(bezout.coeffs[i] * cofactors[i], x));
    }
    return out;
}

SocleResult socle(const GroupExpr& e, const Int& factor_bound) {
    NormalForm nf = normalize(e, factor_bound);
    std::map<Int, Cardinal> mult;
    for (const auto& d : nf.elementary_divisors) mult[d.p] = mult[d.p] + d.mult;
    for (const auto& pe : nf.prufer_exceptions) {
        // exception value already includes the default contribution
        Cardinal extra = pe.mult;
        mult[pe.p] = mult[pe.p] + extra;
    }
    // Primes with divisors but no Prufer exception still receive the default.
    for (auto& [p, c] : mult) {
        bool has_exception = false;
        for (const auto& pe : nf.prufer_exceptions) {
            if (pe.p == p) { has_exception = true; break; }
        }
        if (!has_exception) c = c + nf.default_prufer;
    }
    std::vector<GroupExpr> terms;
    for (const auto& [p, c] : mult) {
        if (c.is_zero()) continue;
        GroupExpr base = GroupExpr::cyclic(p);
        terms.push_back(c == Cardinal::finite(1) ? base : GroupExpr::power(base, c));
    }
    GroupExpr expr = terms.empty() ? GroupExpr::zero()
                   : terms.size() == 1 ? std::move(terms.front())
                                       : GroupExpr::sum(std::move(terms));
    return {std::move(expr), nf.default_prufer};
}

StructureReport classify(const GroupExpr& e, const Int& factor_bound) {
    StructureReport report;
    report.normal = normalize(e, factor_bound);
    const NormalForm& nf = report.normal;
    bool no_prufer = nf.default_prufer.is_zero() && nf.prufer_exceptions.empty();
    report.is_divisible = nf.free_rank.is_zero() && nf.elementary_divisors.empty();
    report.is_torsion = nf.free_rank.is_zero() && nf.q_mult.is_zero();
    report.is_torsion_free = nf.elementary_divisors.empty() && no_prufer;
    report.is_reduced = nf.q_mult.is_zero() && no_prufer;
    return report;
}

bool is_isomorphic(const GroupExpr& a, const GroupExpr& b, const Int& factor_bound) {
    return normalize(a, factor_bound) == normalize(b, factor_bound);
}

GroupExpr divisible_hull(const GroupExpr& e, const Int& factor_bound) {
    NormalForm nf = normalize(e, factor_bound);
    if (!nf.q_mult.is_zero() || !nf.default_prufer.is_zero() || !nf.prufer_exceptions.empty()) {
        throw GroupError(ErrorKind::NotFinitelyGenerated,
                         "expression already contains a divisible summand");
    }
    if (!nf.free_rank.is_finite()) {
        throw GroupError(ErrorKind::NotFinitelyGenerated, "infinite free rank");
    }
    std::map<Int, Cardinal> prufer_mult;
    for (const auto& d : nf.elementary_divisors) {
        if (!d.mult.is_finite()) {
            throw GroupError(ErrorKind::NotFinitelyGenerated,
                             "infinite multiplicity on Z/" + pow_int(d.p, d.r).str());
        }
        prufer_mult[d.p] = prufer_mult[d.p] + d.mult;
    }
    std::vector<GroupExpr> terms;
    for (const auto& [p, c] : prufer_mult) {
        GroupExpr base = GroupExpr::prufer(p);
        terms.push_back(c == Cardinal::finite(1) ? base : GroupExpr::power(base, c));
    }
    if (!nf.free_rank.is_zero()) {
        GroupExpr base = GroupExpr::q();
        terms.push_back(nf.free_rank == Cardinal::finite(1)
                            ? base
                            : GroupExpr::power(base, nf.free_rank));
    }
    if (terms.empty()) return GroupExpr::zero();
    if (terms.size() == 1) return std::move(terms.front());
    return GroupExpr::sum(std::move(terms));
}

Cardinal count_division_solutions(const GroupExpr& e, const Int& n, const Int& factor_bound) {
    if (n < 1) throw std::invalid_argument("count_division_solutions: n must be >= 1");
    DivisibilityResult div = is_divisible_expr(e, factor_bound);
    if (!div.divisible) {
        throw GroupError(ErrorKind::NotDivisible,
                         "expression is not divisible: " + div.witness->second.str() +
                         "*A != A for A = " + print_atom(div.witness->first));
    }
    NormalForm nf = normalize(e, factor_bound);
    Cardinal count = Cardinal::finite(1);
    for (const auto& pp : factorize(n, factor_bound)) {
        Cardinal mp = nf.prufer_mult(pp.p);
        if (mp.is_zero()) continue;
        if (mp.is_finite()) {
            Int exponent = Int(pp.r) * mp.finite_value();
            if (exponent > 4000000) {
                throw GroupError(ErrorKind::BoundExceeded,
                                 "solution count exponent too large: " + exponent.str());
            }
            count = count * Cardinal::finite(pow_int(pp.p, exponent.convert_to<unsigned long>()));
        } else {
            count = count * mp;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Smith normal form

IntMatrix IntMatrix::zero(std::size_t rows, std::size_t cols) {
    IntMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(rows * cols, Int(0));
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m = zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) {
        throw GroupError(ErrorKind::DimensionMismatch, "matrix product dimension mismatch");
    }
    IntMatrix out = IntMatrix::zero(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                out.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return out;
}

namespace {

struct SnfWorker {
    IntMatrix d, u, v;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < d.rows; ++i) std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < v.rows; ++i) std::swap(v.at(i, a), v.at(i, b));
    }

    // row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < d.cols; ++j) d.at(dst, j) += f * d.at(src, j);
        for (std::size_t j = 0; j < u.cols; ++j) u.at(dst, j) += f * u.at(src, j);
    }

    void add_col(std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < d.rows; ++i) d.at(i, dst) += f * d.at(i, src);
        for (std::size_t i = 0; i < v.rows; ++i) v.at(i, dst) += f * v.at(i, src);
    }

    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < d.cols; ++j) d.at(r, j) = -d.at(r, j);
        for (std::size_t j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
    }

    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < d.rows; ++i) {
            for (std::size_t j = t; j < d.cols; ++j) {
                const Int& x = d.at(i, j);
                if (x == 0) continue;
                Int a = abs(x);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        }
        return found;
    }
};

} // namespace

SnfResult smith_normal_form(IntMatrix a) {
    if (a.entries.size() != a.rows * a.cols) {
        throw GroupError(ErrorKind::DimensionMismatch, "entry count does not match dimensions");
    }
    SnfWorker w{std::move(a), IntMatrix::identity(0), IntMatrix::identity(0)};
    w.u = IntMatrix::identity(w.d.rows);
    w.v = IntMatrix::identity(w.d.cols);

    std::size_t steps = std::min(w.d.rows, w.d.cols);
    for (std::size_t t = 0; t < steps; ++t) {
        std::size_t pi = t, pj = t;
        if (!w.find_pivot(t, pi, pj)) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < w.d.rows; ++i) {
                if (w.d.at(i, t) == 0) continue;
                Int q = w.d.at(i, t) / w.d.at(t, t);
                if (q != 0) w.add_row(i, t, -q);
                if (w.d.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < w.d.cols; ++j) {
                if (w.d.at(t, j) == 0) continue;
                Int q = w.d.at(t, j) / w.d.at(t, t);
                if (q != 0) w.add_col(j, t, -q);
                if (w.d.at(t, j) != 0) clean = false;
            }
            if (!clean) {
                // Remainders smaller than the pivot exist; re-pick.
                std::size_t qi = t, qj = t;
                w.find_pivot(t, qi, qj);
                w.swap_rows(t, qi);
                w.swap_cols(t, qj);
                continue;
            }
            // Row and column t cleared; enforce the divisor chain.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < w.d.rows && divides_all; ++i) {
                for (std::size_t j = t + 1; j < w.d.cols; ++j) {
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.add_row(t, i, 1);
                        divides_all = false;
                        break;
                    }
                }
            }
            if (divides_all) break;
        }
        if (w.d.at(t, t) < 0) w.negate_row(t);
    }
    return {std::move(w.u), std::move(w.d), std::move(w.v)};
}

GroupExpr fp_classify(const IntMatrix& relations) {
    SnfResult snf = smith_normal_form(relations);
    std::size_t generators = relations.cols;
    std::size_t diag = std::min(relations.rows, relations.cols);
    std::vector<Int> torsion;
    std::size_t rank = 0;
    for (std::size_t i = 0; i < diag; ++i) {
        const Int& d = snf.d.at(i, i);
        if (d == 0) continue;
        ++rank;
        if (d > 1) torsion.push_back(d);
    }
    std::size_t free_rank = generators - rank;
    std::vector<GroupExpr> terms;
    if (free_rank == 1) {
        terms.push_back(GroupExpr::z());
    } else if (free_rank > 1) {
        terms.push_back(GroupExpr::power(GroupExpr::z(), Cardinal::finite(free_rank)));
    }
    for (const Int& d : torsion) terms.push_back(GroupExpr::cyclic(d));
    if (terms.empty()) return GroupExpr::zero();
    if (terms.size() == 1) return std::move(terms.front());
    return GroupExpr::sum(std::move(terms));
}

} // namespace divgrp
