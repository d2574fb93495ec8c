#include "divgrp/model_elements.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace divgrp {

namespace {

constexpr unsigned long kMaxPruferExponent = 1ul << 22;

void check_prufer_exponent(unsigned long k) {
    if (k > kMaxPruferExponent) {
        throw GroupError(ErrorKind::BoundExceeded,
                         "Prufer exponent too large: " + std::to_string(k));
    }
}

Int lcm_int(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

PruferElem canonical_prufer(const Int& p, const Rat& value_mod_one) {
    Rat v = frac_part(value_mod_one);
    if (v == 0) return {p, 0, 0};
    Int d = den(v);
    unsigned long k = 0;
    while (d > 1) {
        if (d % p != 0) throw std::invalid_argument("denominator is not a power of " + p.str());
        d /= p;
        ++k;
    }
    check_prufer_exponent(k);
    return {p, static_cast<unsigned>(k), num(v)};
}

Rat prufer_value(const PruferElem& x) {
    return make_rat(x.a, pow_int(x.p, x.k));
}

// --- scalar dispatch --------------------------------------------------------

bool scalar_is_identity(const ScalarElem& s) {
    return std::visit([](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ZElem>) return e.value == 0;
        else if constexpr (std::is_same_v<T, QElem>) return e.value == 0;
        else if constexpr (std::is_same_v<T, QmodZElem>) return e.value == 0;
        else if constexpr (std::is_same_v<T, PruferElem>) return e.a == 0;
        else return e.r == 0;
    }, s);
}

bool scalar_same_parent(const ScalarElem& a, const ScalarElem& b) {
    if (a.index() != b.index()) return false;
    if (const auto* pa = std::get_if<PruferElem>(&a)) {
        return pa->p == std::get<PruferElem>(b).p;
    }
    if (const auto* ca = std::get_if<CyclicElem>(&a)) {
        return ca->m == std::get<CyclicElem>(b).m;
    }
    return true;
}

ScalarElem scalar_add(const ScalarElem& a, const ScalarElem& b) {
    return std::visit([&b](const auto& x) -> ScalarElem {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, ZElem>) return ZElem{x.value + y.value};
        else if constexpr (std::is_same_v<T, QElem>) return QElem{x.value + y.value};
        else if constexpr (std::is_same_v<T, QmodZElem>) return QmodZElem{frac_part(x.value + y.value)};
        else if constexpr (std::is_same_v<T, PruferElem>) {
            return canonical_prufer(x.p, prufer_value(x) + prufer_value(y));
        } else {
            return CyclicElem{x.m, mod_floor(x.r + y.r, x.m)};
        }
    }, a);
}

ScalarElem scalar_smul(const Int& n, const ScalarElem& s) {
    return std::visit([&n](const auto& x) -> ScalarElem {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ZElem>) return ZElem{n * x.value};
        else if constexpr (std::is_same_v<T, QElem>) return QElem{Rat(n) * x.value};
        else if constexpr (std::is_same_v<T, QmodZElem>) return QmodZElem{frac_part(Rat(n) * x.value)};
        else if constexpr (std::is_same_v<T, PruferElem>) {
            return canonical_prufer(x.p, Rat(n) * prufer_value(x));
        } else {
            return CyclicElem{x.m, mod_floor(n * x.r, x.m)};
        }
    }, s);
}

OrderValue scalar_order(const ScalarElem& s) {
    return std::visit([](const auto& x) -> OrderValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ZElem>) {
            return x.value == 0 ? OrderValue::fin(1) : OrderValue::infinite();
        } else if constexpr (std::is_same_v<T, QElem>) {
            return x.value == 0 ? OrderValue::fin(1) : OrderValue::infinite();
        } else if constexpr (std::is_same_v<T, QmodZElem>) {
            return OrderValue::fin(den(x.value));
        } else if constexpr (std::is_same_v<T, PruferElem>) {
            return OrderValue::fin(pow_int(x.p, x.k));
        } else {
            return OrderValue::fin(x.m / gcd(x.r, x.m));
        }
    }, s);
}

bool scalar_less(const ScalarElem& a, const ScalarElem& b) {
    return std::visit([&b](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, ZElem>) return x.value < y.value;
        else if constexpr (std::is_same_v<T, QElem>) return x.value < y.value;
        else if constexpr (std::is_same_v<T, QmodZElem>) return x.value < y.value;
        else if constexpr (std::is_same_v<T, PruferElem>) {
            // a1/p^k1 < a2/p^k2
            return x.a * pow_int(x.p, y.k) < y.a * pow_int(x.p, x.k);
        } else {
            return x.r < y.r;
        }
    }, a);
}

bool scalar_matches_atom(const ScalarElem& s, const Atom& atom) {
    switch (atom.kind) {
    case AtomKind::Z: return std::holds_alternative<ZElem>(s);
    case AtomKind::Q: return std::holds_alternative<QElem>(s);
    case AtomKind::QmodZ: return std::holds_alternative<QmodZElem>(s);
    case AtomKind::Prufer: {
        const auto* p = std::get_if<PruferElem>(&s);
        return p && p->p == atom.param;
    }
    case AtomKind::Cyclic: {
        const auto* c = std::get_if<CyclicElem>(&s);
        return c && c->m == atom.param;
    }
    default: return false;
    }
}

std::optional<ScalarElem> identity_scalar(const Atom& atom) {
    switch (atom.kind) {
    case AtomKind::Z: return ScalarElem{ZElem{0}};
    case AtomKind::Q: return ScalarElem{QElem{Rat(0)}};
    case AtomKind::QmodZ: return ScalarElem{QmodZElem{Rat(0)}};
    case AtomKind::Prufer: return ScalarElem{PruferElem{atom.param, 0, 0}};
    case AtomKind::Cyclic: return ScalarElem{CyclicElem{atom.param, 0}};
    default: return std::nullopt; // Zero atom: no nonzero elements
    }
}

struct ScalarDivision {
    bool solvable = false;
    Int count = 0;
    std::vector<ScalarElem> sols; // complete unless truncated
    bool truncated = false;
};

ScalarDivision scalar_divide(const Int& n, const ScalarElem& x, const Int& enum_bound) {
    ScalarDivision out;
    if (const auto* q = std::get_if<QElem>(&x)) {
        out.solvable = true;
        out.count = 1;
        out.sols.push_back(QElem{q->value / Rat(n)});
        return out;
    }
    if (const auto* z = std::get_if<ZElem>(&x)) {
        if (z->value % n != 0) return out;
        out.solvable = true;
        out.count = 1;
        out.sols.push_back(ZElem{z->value / n});
        return out;
    }
    if (const auto* qz = std::get_if<QmodZElem>(&x)) {
        // (a + t*b) / (n*b) for t in [0, n)
        const Int a = num(qz->value), b = den(qz->value);
        out.solvable = true;
        out.count = n;
        if (n > enum_bound) {
            out.truncated = true;
            out.sols.push_back(QmodZElem{make_rat(a, n * b)});
        } else {
            for (Int t = 0; t < n; ++t) out.sols.push_back(QmodZElem{make_rat(a + t * b, n * b)});
        }
        return out;
    }
    if (const auto* pe = std::get_if<PruferElem>(&x)) {
        unsigned long e = valuation(n, pe->p);
        check_prufer_exponent(pe->k + e);
        Int u = n / pow_int(pe->p, e);
        Int modulus = pow_int(pe->p, pe->k + e);
        Int w = mod_floor(ext_gcd(u, modulus).x, modulus);
        Int base = mod_floor(pe->a * w, modulus);
        Int kernel_size = pow_int(pe->p, e);
        Int step = pow_int(pe->p, pe->k);
        out.solvable = true;
        out.count = kernel_size;
        Int limit = kernel_size > enum_bound ? Int(1) : kernel_size;
        out.truncated = kernel_size > enum_bound;
        for (Int b = 0; b < limit; ++b) {
            Int t = mod_floor(base + b * step, modulus);
            out.sols.push_back(canonical_prufer(pe->p, make_rat(t, modulus)));
        }
        return out;
    }
    const auto& c = std::get<CyclicElem>(x);
    Int g = gcd(n, c.m);
    if (c.r % g != 0) return out;
    Int m1 = c.m / g;
    Int w = m1 == 1 ? Int(0) : mod_floor(ext_gcd(n / g, m1).x, m1);
    Int y0 = mod_floor((c.r / g) * w, m1);
    out.solvable = true;
    out.count = g;
    Int limit = g > enum_bound ? Int(1) : g;
    out.truncated = g > enum_bound;
    for (Int t = 0; t < limit; ++t) out.sols.push_back(CyclicElem{c.m, y0 + t * m1});
    return out;
}

bool scalar_in_socle(const ScalarElem& s, const Int& factor_bound) {
    return std::visit([&factor_bound](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ZElem>) return x.value == 0;
        else if constexpr (std::is_same_v<T, QElem>) return x.value == 0;
        else if constexpr (std::is_same_v<T, QmodZElem>) return is_squarefree(den(x.value), factor_bound);
        else if constexpr (std::is_same_v<T, PruferElem>) return x.k <= 1;
        else return is_squarefree(x.m / gcd(x.r, x.m), factor_bound);
    }, s);
}

const char* scalar_kind_name(const ScalarElem& s) {
    switch (s.index()) {
    case 0: return "Z";
    case 1: return "Q";
    case 2: return "Q/Z";
    case 3: return "Prufer";
    default: return "cyclic";
    }
}

[[noreturn]] void parent_mismatch(const std::string& detail) {
    throw GroupError(ErrorKind::ParentMismatch, detail);
}

// Only valid for non-sum elements.
ScalarElem to_scalar(const GroupElement& x) {
    return std::visit([](const auto& e) -> ScalarElem {
        if constexpr (std::is_same_v<std::decay_t<decltype(e)>, SumElem>) {
            throw std::logic_error("scalar operation on a sum element");
        } else {
            return ScalarElem{e};
        }
    }, x);
}

Cardinal remaining_copies(const Cardinal& mult, const Int& used) {
    if (!mult.is_finite()) return mult;
    return Cardinal::finite(mult.finite_value() - used);
}

} // namespace

// --- construction -----------------------------------------------------------

GroupElement z_element(Int v) { return ZElem{std::move(v)}; }

GroupElement q_element(Rat v) { return QElem{std::move(v)}; }

GroupElement qmodz_element(const Rat& v) { return QmodZElem{frac_part(v)}; }

GroupElement prufer_element(const Int& p, const Rat& v) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("Prufer base must be prime");
    return canonical_prufer(p, v);
}

GroupElement prufer_generator(const Int& p, unsigned n) {
    if (n == 0) return PruferElem{p, 0, 0};
    return PruferElem{p, n, 1};
}

GroupElement cyclic_element(Int m, const Int& r) {
    if (m < 1) throw std::invalid_argument("cyclic modulus must be >= 1");
    Int rr = mod_floor(r, m);
    return CyclicElem{std::move(m), std::move(rr)};
}

namespace {

void flatten_rec(const GroupExpr& e, const Cardinal& mult, SumParent& out) {
    switch (e.tag()) {
    case GroupExpr::Tag::Atom: {
        const Atom& a = e.as_atom();
        if (!atom_is_model(a) && a.kind != AtomKind::Zero) {
            throw GroupError(ErrorKind::UnsupportedAtom,
                             "no exact element representation for " + print_atom(a) +
                             "; use a model group (Z, Q, Z/m, Z(p^inf), Q/Z)");
        }
        out.terms.push_back({a, mult});
        break;
    }
    case GroupExpr::Tag::Power:
        flatten_rec(e.power_base(), mult * e.power_card(), out);
        break;
    case GroupExpr::Tag::Sum:
        for (const GroupExpr& t : e.sum_terms()) flatten_rec(t, mult, out);
        break;
    }
}

} // namespace

SumParent flatten_parent(const GroupExpr& e) {
    SumParent sp;
    flatten_rec(e, Cardinal::finite(1), sp);
    return sp;
}

GroupElement sum_element(std::shared_ptr<const SumParent> parent,
                         std::map<Coord, ScalarElem> entries) {
    if (!parent) throw std::invalid_argument("sum_element: null parent");
    for (auto it = entries.begin(); it != entries.end();) {
        const Coord& c = it->first;
        if (c.pos >= parent->terms.size()) {
            parent_mismatch("coordinate position " + std::to_string(c.pos) + " out of range");
        }
        const SumParent::Term& term = parent->terms[c.pos];
        if (c.tag < 0) parent_mismatch("negative coordinate tag");
        if (term.mult.is_finite() && c.tag >= term.mult.finite_value()) {
            parent_mismatch("tag " + c.tag.str() + " exceeds multiplicity at position " +
                            std::to_string(c.pos));
        }
        if (!scalar_matches_atom(it->second, term.atom)) {
            parent_mismatch(std::string("component of kind ") + scalar_kind_name(it->second) +
                            " does not match atom " + print_atom(term.atom) + " at position " +
                            std::to_string(c.pos));
        }
        if (scalar_is_identity(it->second)) {
            it = entries.erase(it);
        } else {
            ++it;
        }
    }
    return SumElem{std::move(parent), std::move(entries)};
}

GroupElement identity_like(const GroupElement& x) {
    return std::visit([](const auto& e) -> GroupElement {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ZElem>) return ZElem{0};
        else if constexpr (std::is_same_v<T, QElem>) return QElem{Rat(0)};
        else if constexpr (std::is_same_v<T, QmodZElem>) return QmodZElem{Rat(0)};
        else if constexpr (std::is_same_v<T, PruferElem>) return PruferElem{e.p, 0, 0};
        else if constexpr (std::is_same_v<T, CyclicElem>) return CyclicElem{e.m, 0};
        else return SumElem{e.parent, {}};
    }, x);
}

bool is_identity(const GroupElement& x) {
    if (const auto* s = std::get_if<SumElem>(&x)) return s->entries.empty();
    return scalar_is_identity(to_scalar(x));
}

bool same_parent(const GroupElement& x, const GroupElement& y) {
    if (x.index() != y.index()) return false;
    if (const auto* sx = std::get_if<SumElem>(&x)) {
        return *sx->parent == *std::get<SumElem>(y).parent;
    }
    return scalar_same_parent(to_scalar(x), to_scalar(y));
}

bool element_less(const GroupElement& a, const GroupElement& b) {
    if (const auto* sa = std::get_if<SumElem>(&a)) {
        const auto& sb = std::get<SumElem>(b);
        auto ia = sa->entries.begin(), ib = sb.entries.begin();
        for (; ia != sa->entries.end() && ib != sb.entries.end(); ++ia, ++ib) {
            if (ia->first < ib->first) return true;
            if (ib->first < ia->first) return false;
            if (scalar_less(ia->second, ib->second)) return true;
            if (scalar_less(ib->second, ia->second)) return false;
        }
        return ia == sa->entries.end() && ib != sb.entries.end();
    }
    return scalar_less(to_scalar(a), to_scalar(b));
}

// --- arithmetic -------------------------------------------------------------

GroupElement add(const GroupElement& x, const GroupElement& y) {
    if (!same_parent(x, y)) {
        parent_mismatch("cannot add " + print_element(x) + " and " + print_element(y) +
                        ": different parent groups");
    }
    if (const auto* sx = std::get_if<SumElem>(&x)) {
        const auto& sy = std::get<SumElem>(y);
        std::map<Coord, ScalarElem> merged = sx->entries;
        for (const auto& [coord, comp] : sy.entries) {
            auto it = merged.find(coord);
            if (it == merged.end()) {
                merged.emplace(coord, comp);
            } else {
                ScalarElem s = scalar_add(it->second, comp);
                if (scalar_is_identity(s)) {
                    merged.erase(it);
                } else {
                    it->second = std::move(s);
                }
            }
        }
        return SumElem{sx->parent, std::move(merged)};
    }
    ScalarElem s = scalar_add(to_scalar(x), to_scalar(y));
    return std::visit([](auto&& v) -> GroupElement { return v; }, std::move(s));
}

GroupElement scalar_mul(const Int& n, const GroupElement& x) {
    if (const auto* sx = std::get_if<SumElem>(&x)) {
        std::map<Coord, ScalarElem> out;
        for (const auto& [coord, comp] : sx->entries) {
            ScalarElem s = scalar_smul(n, comp);
            if (!scalar_is_identity(s)) out.emplace(coord, std::move(s));
        }
        return SumElem{sx->parent, std::move(out)};
    }
    ScalarElem s = scalar_smul(n, to_scalar(x));
    return std::visit([](auto&& v) -> GroupElement { return v; }, std::move(s));
}

GroupElement negate(const GroupElement& x) { return scalar_mul(-1, x); }

OrderValue order_of(const GroupElement& x) {
    if (const auto* sx = std::get_if<SumElem>(&x)) {
        Int l = 1;
        for (const auto& [coord, comp] : sx->entries) {
            OrderValue o = scalar_order(comp);
            if (!o.is_finite()) return OrderValue::infinite();
            l = lcm_int(l, o.value());
        }
        return OrderValue::fin(l);
    }
    return scalar_order(to_scalar(x));
}

namespace {

GroupElement from_scalar(const ScalarElem& s) {
    return std::visit([](const auto& v) -> GroupElement { return v; }, s);
}

DivisionResult scalar_division_result(const ScalarDivision& d) {
    DivisionResult out;
    out.count = Cardinal::finite(d.count);
    out.truncated = d.truncated;
    std::vector<ScalarElem> sols = d.sols;
    std::sort(sols.begin(), sols.end(), scalar_less);
    for (const auto& s : sols) out.solutions.push_back(from_scalar(s));
    return out;
}

} // namespace

DivisionResult divide_element(const Int& n, const GroupElement& x, const Int& enum_bound) {
    if (n < 1) throw std::invalid_argument("divide_element: n must be >= 1");
    const auto* sx = std::get_if<SumElem>(&x);
    if (!sx) {
        ScalarDivision d = scalar_divide(n, to_scalar(x), enum_bound);
        if (!d.solvable) {
            throw GroupError(ErrorKind::NoSolution,
                             n.str() + " does not divide " + print_element(x));
        }
        return scalar_division_result(d);
    }

    // Sum parent: solve per support coordinate; every other coordinate of the
    // parent may carry any kernel element of multiplication by n.
    const SumParent& parent = *sx->parent;
    std::vector<std::pair<Coord, ScalarDivision>> support;
    for (const auto& [coord, comp] : sx->entries) {
        ScalarDivision d = scalar_divide(n, comp, enum_bound);
        if (!d.solvable) {
            throw GroupError(ErrorKind::NoSolution,
                             n.str() + " does not divide the component at position " +
                             std::to_string(coord.pos) + ", tag " + coord.tag.str());
        }
        support.emplace_back(coord, std::move(d));
    }

    Cardinal count = Cardinal::finite(1);
    for (const auto& [coord, d] : support) count = count * Cardinal::finite(d.count);

    std::vector<ScalarDivision> kernels(parent.terms.size());
    for (std::size_t pos = 0; pos < parent.terms.size(); ++pos) {
        auto ident = identity_scalar(parent.terms[pos].atom);
        if (!ident) continue; // zero atom, trivial kernel
        kernels[pos] = scalar_divide(n, *ident, enum_bound);
        Int used = 0;
        for (const auto& [coord, d] : support) {
            if (coord.pos == pos) ++used;
        }
        count = count * finite_support_count(kernels[pos].count,
                                             remaining_copies(parent.terms[pos].mult, used));
    }

    DivisionResult out;
    out.count = count;

    bool enumerable = count.is_finite() && count.finite_value() <= enum_bound;
    if (!enumerable) {
        // One canonical witness: first solution on the support, zero elsewhere.
        std::map<Coord, ScalarElem> entries;
        for (const auto& [coord, d] : support) {
            if (!scalar_is_identity(d.sols.front())) entries.emplace(coord, d.sols.front());
        }
        out.solutions.push_back(SumElem{sx->parent, std::move(entries)});
        out.truncated = true;
        return out;
    }

    // Every coordinate with more than one choice, in deterministic order.
    struct Axis {
        Coord coord;
        const std::vector<ScalarElem>* choices;
    };
    std::vector<Axis> axes;
    for (const auto& [coord, d] : support) axes.push_back({coord, &d.sols});
    for (std::size_t pos = 0; pos < parent.terms.size(); ++pos) {
        if (kernels[pos].sols.size() <= 1) continue;
        const Cardinal& mult = parent.terms[pos].mult;
        // count is finite, so mult is finite here
        for (Int tag = 0; tag < mult.finite_value(); ++tag) {
            Coord c{pos, tag};
            if (sx->entries.count(c)) continue;
            axes.push_back({c, &kernels[pos].sols});
        }
    }
    std::sort(axes.begin(), axes.end(), [](const Axis& a, const Axis& b) { return a.coord < b.coord; });

    std::vector<std::size_t> odometer(axes.size(), 0);
    while (true) {
        std::map<Coord, ScalarElem> entries;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const ScalarElem& s = (*axes[i].choices)[odometer[i]];
            if (!scalar_is_identity(s)) entries.emplace(axes[i].coord, s);
        }
        out.solutions.push_back(SumElem{sx->parent, std::move(entries)});
        std::size_t i = 0;
        for (; i < axes.size(); ++i) {
            if (++odometer[i] < axes[i].choices->size()) break;
            odometer[i] = 0;
        }
        if (i == axes.size()) break;
    }
    std::sort(out.solutions.begin(), out.solutions.end(), element_less);
    return out;
}

GroupElement chain_lift(const GroupElement& x, const Int& k) {
    const auto* pe = std::get_if<PruferElem>(&x);
    if (!pe) parent_mismatch("chain_lift requires an element of a Prufer group");
    if (k < 1) throw std::invalid_argument("chain_lift: k must be >= 1");
    if (k > kMaxPruferExponent) check_prufer_exponent(kMaxPruferExponent + 1);
    unsigned long steps = k.convert_to<unsigned long>();
    if (pe->a == 0) return PruferElem{pe->p, static_cast<unsigned>(steps), 1};
    check_prufer_exponent(pe->k + steps);
    return PruferElem{pe->p, static_cast<unsigned>(pe->k + steps), pe->a};
}

GroupElement rational_scale(const Rat& r, const GroupElement& x) {
    auto scale_scalar = [&r](const ScalarElem& s) -> ScalarElem {
        if (const auto* q = std::get_if<QElem>(&s)) return QElem{r * q->value};
        const auto& z = std::get<ZElem>(s);
        Int product = z.value * num(r);
        if (product % den(r) != 0) {
            throw GroupError(ErrorKind::NoSolution,
                             den(r).str() + " does not divide " + z.value.str() + " in Z");
        }
        return ZElem{product / den(r)};
    };
    if (const auto* sx = std::get_if<SumElem>(&x)) {
        for (const auto& term : sx->parent->terms) {
            if (term.atom.kind != AtomKind::Z && term.atom.kind != AtomKind::Q &&
                term.atom.kind != AtomKind::Zero) {
                throw GroupError(ErrorKind::NotTorsionFree,
                                 "parent has torsion atom " + print_atom(term.atom));
            }
        }
        std::map<Coord, ScalarElem> out;
        for (const auto& [coord, comp] : sx->entries) {
            ScalarElem s = scale_scalar(comp);
            if (!scalar_is_identity(s)) out.emplace(coord, std::move(s));
        }
        return SumElem{sx->parent, std::move(out)};
    }
    if (std::holds_alternative<QmodZElem>(x) || std::holds_alternative<PruferElem>(x) ||
        std::holds_alternative<CyclicElem>(x)) {
        throw GroupError(ErrorKind::NotTorsionFree, "rational scaling needs a torsion-free parent");
    }
    return from_scalar(scale_scalar(to_scalar(x)));
}

bool in_socle(const GroupElement& x, const Int& factor_bound) {
    if (const auto* sx = std::get_if<SumElem>(&x)) {
        for (const auto& [coord, comp] : sx->entries) {
            if (!scalar_in_socle(comp, factor_bound)) return false;
        }
        return true;
    }
    return scalar_in_socle(to_scalar(x), factor_bound);
}

// --- literals ---------------------------------------------------------------

namespace {

std::string rat_str(const Rat& v) {
    std::string s = num(v).str();
    if (den(v) != 1) s += "/" + den(v).str();
    return s;
}

std::string print_scalar(const ScalarElem& s) {
    return std::visit([](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ZElem>) return "z:" + x.value.str();
        else if constexpr (std::is_same_v<T, QElem>) return "q:" + rat_str(x.value);
        else if constexpr (std::is_same_v<T, QmodZElem>) return "qz:" + rat_str(x.value);
        else if constexpr (std::is_same_v<T, PruferElem>) {
            std::string out = "pr:" + x.p.str() + "^inf:";
            if (x.k == 0) return out + "0";
            return out + x.a.str() + "/" + pow_int(x.p, x.k).str();
        } else {
            return "cyc:" + x.m.str() + ":" + x.r.str();
        }
    }, s);
}

class ElemScanner {
public:
    explicit ElemScanner(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::size_t pos() {
        skip_ws();
        return pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool try_lit(std::string_view lit) {
        skip_ws();
        if (text_.substr(pos_, lit.size()) == lit) {
            pos_ += lit.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view lit) {
        if (!try_lit(lit)) throw ParseError(pos(), {"'" + std::string(lit) + "'"});
    }

    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

    Int parse_nat() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(start, {"number"});
        return Int(std::string(text_.substr(start, pos_ - start)));
    }

    Int parse_int() {
        skip_ws();
        bool neg = pos_ < text_.size() && text_[pos_] == '-';
        if (neg) ++pos_;
        Int v = parse_nat();
        return neg ? -v : v;
    }

    Rat parse_rat() {
        Int n = parse_int();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t at = pos_;
            Int d = parse_nat();
            if (d == 0) throw ParseError(at, {"nonzero denominator"});
            return make_rat(n, d);
        }
        return Rat(n);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

ScalarElem parse_scalar(ElemScanner& s) {
    if (s.try_lit("qz:")) {
        return QmodZElem{frac_part(s.parse_rat())};
    }
    if (s.try_lit("q:")) {
        return QElem{s.parse_rat()};
    }
    if (s.try_lit("z:")) {
        return ZElem{s.parse_int()};
    }
    if (s.try_lit("pr:")) {
        std::size_t p_at = s.pos();
        Int p = s.parse_nat();
        if (!is_prime(p)) throw ParseError(p_at, {"prime"});
        s.expect("^inf");
        s.expect(":");
        std::size_t v_at = s.pos();
        Rat v = frac_part(s.parse_rat());
        Int d = den(v);
        while (d > 1 && d % p == 0) d /= p;
        if (d != 1) throw ParseError(v_at, {"denominator a power of " + p.str()});
        return canonical_prufer(p, v);
    }
    if (s.try_lit("cyc:")) {
        std::size_t m_at = s.pos();
        Int m = s.parse_nat();
        if (m < 1) throw ParseError(m_at, {"modulus >= 1"});
        s.expect(":");
        Int r = s.parse_int();
        return CyclicElem{m, mod_floor(r, m)};
    }
    throw ParseError(s.pos(), {"'q:'", "'z:'", "'qz:'", "'pr:'", "'cyc:'", "'{'"});
}

Atom atom_for_scalar(const ScalarElem& s) {
    return std::visit([](const auto& x) -> Atom {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ZElem>) return {AtomKind::Z, 0};
        else if constexpr (std::is_same_v<T, QElem>) return {AtomKind::Q, 0};
        else if constexpr (std::is_same_v<T, QmodZElem>) return {AtomKind::QmodZ, 0};
        else if constexpr (std::is_same_v<T, PruferElem>) return {AtomKind::Prufer, x.p};
        else return {AtomKind::Cyclic, x.m};
    }, s);
}

} // namespace

std::string print_element(const GroupElement& x) {
    if (const auto* sx = std::get_if<SumElem>(&x)) {
        std::string out = "{";
        bool first = true;
        for (const auto& [coord, comp] : sx->entries) {
            if (!first) out += ", ";
            first = false;
            out += "pos" + std::to_string(coord.pos) + ".tag" + coord.tag.str() + "=" +
                   print_scalar(comp);
        }
        return out + "}";
    }
    return print_scalar(to_scalar(x));
}

GroupElement parse_element(std::string_view text, const std::optional<GroupExpr>& parent) {
    ElemScanner s(text);
    if (s.peek() == '{') {
        if (!parent) {
            throw GroupError(ErrorKind::ParentMismatch,
                             "a sum element literal needs a parent expression");
        }
        s.expect("{");
        std::map<Coord, ScalarElem> entries;
        if (s.peek() != '}') {
            while (true) {
                std::size_t entry_at = s.pos();
                s.expect("pos");
                Int pos = s.parse_nat();
                s.expect(".");
                s.expect("tag");
                Int tag = s.parse_nat();
                s.expect("=");
                ScalarElem comp = parse_scalar(s);
                Coord coord{pos.convert_to<std::size_t>(), tag};
                if (entries.count(coord)) throw ParseError(entry_at, {"distinct coordinate"});
                entries.emplace(coord, std::move(comp));
                if (!s.try_lit(",")) break;
            }
        }
        s.expect("}");
        if (!s.at_end()) throw ParseError(s.pos(), {"end of input"});
        auto flat = std::make_shared<const SumParent>(flatten_parent(*parent));
        return sum_element(std::move(flat), std::move(entries));
    }
    ScalarElem sc = parse_scalar(s);
    if (!s.at_end()) throw ParseError(s.pos(), {"end of input"});
    if (parent) {
        if (parent->tag() != GroupExpr::Tag::Atom || !(parent->as_atom() == atom_for_scalar(sc))) {
            parent_mismatch("literal '" + print_scalar(sc) + "' does not live in " +
                            print_expr(*parent));
        }
    }
    return from_scalar(sc);
}

} // namespace divgrp
