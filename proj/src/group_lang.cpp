#include "divgrp/group_lang.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

namespace divgrp {

bool atom_is_model(const Atom& a) {
    switch (a.kind) {
    case AtomKind::Z:
    case AtomKind::Q:
    case AtomKind::Cyclic:
    case AtomKind::Prufer:
    case AtomKind::QmodZ:
        return true;
    default:
        return false;
    }
}

std::string print_atom(const Atom& a) {
    switch (a.kind) {
    case AtomKind::Zero: return "0";
    case AtomKind::Z: return "Z";
    case AtomKind::Q: return "Q";
    case AtomKind::Cyclic: return "Z/" + a.param.str();
    case AtomKind::Prufer: return "Z(" + a.param.str() + "^inf)";
    case AtomKind::QmodZ: return "Q/Z";
    case AtomKind::Real: return "R";
    case AtomKind::RealPow: return "R^" + a.param.str();
    case AtomKind::CStar: return "C*";
    case AtomKind::Circle: return "S^1";
    }
    return {};
}

GroupExpr GroupExpr::atom(Atom a) {
    GroupExpr e;
    e.tag_ = Tag::Atom;
    e.atom_ = std::move(a);
    return e;
}

GroupExpr GroupExpr::cyclic(Int m) {
    if (m < 1) throw std::invalid_argument("cyclic modulus must be >= 1");
    return atom({AtomKind::Cyclic, std::move(m)});
}

GroupExpr GroupExpr::prufer(Int p) {
    if (p < 2) throw std::invalid_argument("Prufer base must be prime");
    return atom({AtomKind::Prufer, std::move(p)});
}

GroupExpr GroupExpr::power(GroupExpr base, Cardinal card) {
    GroupExpr e;
    e.tag_ = Tag::Power;
    e.base_ = std::make_shared<const GroupExpr>(std::move(base));
    e.card_ = std::move(card);
    return e;
}

GroupExpr GroupExpr::sum(std::vector<GroupExpr> terms) {
    if (terms.empty()) throw std::invalid_argument("sum of no terms");
    GroupExpr e;
    e.tag_ = Tag::Sum;
    e.terms_ = std::move(terms);
    return e;
}

const Atom& GroupExpr::as_atom() const {
    if (tag_ != Tag::Atom) throw std::logic_error("not an atom");
    return atom_;
}

const GroupExpr& GroupExpr::power_base() const {
    if (tag_ != Tag::Power) throw std::logic_error("not a power");
    return *base_;
}

const Cardinal& GroupExpr::power_card() const {
    if (tag_ != Tag::Power) throw std::logic_error("not a power");
    return card_;
}

const std::vector<GroupExpr>& GroupExpr::sum_terms() const {
    if (tag_ != Tag::Sum) throw std::logic_error("not a sum");
    return terms_;
}

bool operator==(const GroupExpr& a, const GroupExpr& b) {
    if (a.tag_ != b.tag_) return false;
    switch (a.tag_) {
    case GroupExpr::Tag::Atom:
        return a.atom_ == b.atom_;
    case GroupExpr::Tag::Power:
        return a.card_ == b.card_ && *a.base_ == *b.base_;
    case GroupExpr::Tag::Sum:
        return a.terms_ == b.terms_;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

    // Peek at the next non-whitespace character without consuming it.
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

    std::size_t pos_ws() {
        skip_ws();
        return pos_;
    }

    Int parse_nat() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(start, {"number"});
        return Int(std::string(text_.substr(start, pos_ - start)));
    }

    bool next_is_digit_after(std::size_t lookahead_from) {
        std::size_t p = lookahead_from;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

GroupExpr parse_expr_rec(Scanner& s);

GroupExpr parse_atom(Scanner& s) {
    char c = s.peek();
    std::size_t at = s.pos();
    switch (c) {
    case '0':
        s.set_pos(at + 1);
        return GroupExpr::zero();
    case 'Q': {
        s.set_pos(at + 1);
        std::size_t mark = s.pos();
        if (s.peek() == '/') {
            s.set_pos(s.pos() + 1);
            if (!s.try_lit("Z")) throw ParseError(s.pos_ws(), {"'Z'"});
            return GroupExpr::q_mod_z();
        }
        s.set_pos(mark);
        return GroupExpr::q();
    }
    case 'Z': {
        s.set_pos(at + 1);
        std::size_t mark = s.pos();
        char next = s.peek();
        if (next == '/') {
            s.set_pos(s.pos() + 1);
            std::size_t nat_at = s.pos_ws();
            Int m = s.parse_nat();
            if (m < 1) throw ParseError(nat_at, {"modulus >= 1"});
            return GroupExpr::cyclic(m);
        }
        if (next == '(' && s.next_is_digit_after(s.pos() + 1)) {
            s.set_pos(s.pos() + 1);
            std::size_t p_at = s.pos_ws();
            Int p = s.parse_nat();
            if (!is_prime(p)) throw ParseError(p_at, {"prime"});
            if (!s.try_lit("^")) throw ParseError(s.pos_ws(), {"'^'"});
            if (!s.try_lit("inf")) throw ParseError(s.pos_ws(), {"'inf'"});
            if (!s.try_lit(")")) throw ParseError(s.pos_ws(), {"')'"});
            return GroupExpr::prufer(p);
        }
        s.set_pos(mark);
        return GroupExpr::z();
    }
    case 'R': {
        s.set_pos(at + 1);
        std::size_t mark = s.pos();
        if (s.peek() == '^' && s.next_is_digit_after(s.pos() + 1)) {
            s.set_pos(s.pos() + 1);
            std::size_t n_at = s.pos_ws();
            Int n = s.parse_nat();
            if (n < 1) throw ParseError(n_at, {"exponent >= 1"});
            return GroupExpr::atom({AtomKind::RealPow, n});
        }
        s.set_pos(mark);
        return GroupExpr::atom({AtomKind::Real, 0});
    }
    case 'C':
        s.set_pos(at + 1);
        if (!s.try_lit("*")) throw ParseError(s.pos_ws(), {"'*'"});
        return GroupExpr::atom({AtomKind::CStar, 0});
    case 'S':
        s.set_pos(at + 1);
        if (!s.try_lit("^")) throw ParseError(s.pos_ws(), {"'^'"});
        if (!s.try_lit("1")) throw ParseError(s.pos_ws(), {"'1'"});
        return GroupExpr::atom({AtomKind::Circle, 0});
    case '(': {
        s.set_pos(at + 1);
        GroupExpr inner = parse_expr_rec(s);
        if (!s.try_lit(")")) throw ParseError(s.pos_ws(), {"'(+)'", "')'"});
        return inner;
    }
    default:
        throw ParseError(at, {"'0'", "'Z'", "'Q'", "'R'", "'C*'", "'S^1'", "'('"});
    }
}

Cardinal parse_cardinal(Scanner& s) {
    char c = s.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return Cardinal::finite(s.parse_nat());
    if (c == 'a') {
        if (!s.try_lit("aleph0")) throw ParseError(s.pos_ws(), {"'aleph0'"});
        return Cardinal::aleph0();
    }
    if (c == 'c') {
        s.set_pos(s.pos() + 1);
        return Cardinal::continuum();
    }
    throw ParseError(s.pos_ws(), {"number", "'aleph0'", "'c'"});
}

GroupExpr parse_term(Scanner& s) {
    GroupExpr base = parse_atom(s);
    std::size_t mark = s.pos();
    if (s.peek() == '^') {
        s.set_pos(s.pos() + 1);
        return GroupExpr::power(std::move(base), parse_cardinal(s));
    }
    s.set_pos(mark);
    return base;
}

GroupExpr parse_expr_rec(Scanner& s) {
    std::vector<GroupExpr> terms;
    terms.push_back(parse_term(s));
    while (true) {
        std::size_t mark = s.pos();
        if (!s.try_lit("(+)")) {
            s.set_pos(mark);
            break;
        }
        terms.push_back(parse_term(s));
    }
    if (terms.size() == 1) return std::move(terms.front());
    return GroupExpr::sum(std::move(terms));
}

std::string cardinal_token(const Cardinal& c) {
    switch (c.kind()) {
    case Cardinal::Kind::Finite: return c.finite_value().str();
    case Cardinal::Kind::Aleph0: return "aleph0";
    case Cardinal::Kind::Continuum: return "c";
    }
    return {};
}

// A power base needs parentheses when it is not an atom, and also when it is
// the bare R atom ("R^3" would reparse as the R^3 alias).
bool base_needs_parens(const GroupExpr& e) {
    return e.tag() != GroupExpr::Tag::Atom || e.as_atom().kind == AtomKind::Real;
}

} // namespace

GroupExpr parse_expr(std::string_view text) {
    Scanner s(text);
    GroupExpr e = parse_expr_rec(s);
    if (!s.at_end()) throw ParseError(s.pos_ws(), {"'(+)'", "end of input"});
    return e;
}

std::string print_expr(const GroupExpr& e) {
    switch (e.tag()) {
    case GroupExpr::Tag::Atom:
        return print_atom(e.as_atom());
    case GroupExpr::Tag::Power: {
        const GroupExpr& base = e.power_base();
        std::string b = print_expr(base);
        if (base_needs_parens(base)) b = "(" + b + ")";
        return b + "^" + cardinal_token(e.power_card());
    }
    case GroupExpr::Tag::Sum: {
        std::string out;
        const auto& terms = e.sum_terms();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i > 0) out += " (+) ";
            std::string t = print_expr(terms[i]);
            if (terms[i].tag() == GroupExpr::Tag::Sum) t = "(" + t + ")";
            out += t;
        }
        return out;
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

struct NormalAccum {
    Cardinal free_rank;
    Cardinal q_mult;
    Cardinal default_prufer;
    std::map<std::pair<Int, unsigned>, Cardinal> divisors;
    std::map<Int, Cardinal> prufer_extra;
};

void accumulate(const GroupExpr& e, const Cardinal& mult, const Int& bound, NormalAccum& acc) {
    if (mult.is_zero()) return;
    switch (e.tag()) {
    case GroupExpr::Tag::Atom: {
        const Atom& a = e.as_atom();
        switch (a.kind) {
        case AtomKind::Zero:
            break;
        case AtomKind::Z:
            acc.free_rank = acc.free_rank + mult;
            break;
        case AtomKind::Q:
            acc.q_mult = acc.q_mult + mult;
            break;
        case AtomKind::Cyclic:
            for (const auto& pp : factorize(a.param, bound)) {
                auto key = std::make_pair(pp.p, pp.r);
                acc.divisors[key] = acc.divisors[key] + mult;
            }
            break;
        case AtomKind::Prufer:
            acc.prufer_extra[a.param] = acc.prufer_extra[a.param] + mult;
            break;
        case AtomKind::QmodZ:
            acc.default_prufer = acc.default_prufer + mult;
            break;
        case AtomKind::Real:
        case AtomKind::RealPow:
            acc.q_mult = acc.q_mult + mult * Cardinal::continuum();
            break;
        case AtomKind::CStar:
        case AtomKind::Circle:
            acc.default_prufer = acc.default_prufer + mult;
            acc.q_mult = acc.q_mult + mult * Cardinal::continuum();
            break;
        }
        break;
    }
    case GroupExpr::Tag::Power:
        accumulate(e.power_base(), mult * e.power_card(), bound, acc);
        break;
    case GroupExpr::Tag::Sum:
        for (const GroupExpr& t : e.sum_terms()) accumulate(t, mult, bound, acc);
        break;
    }
}

} // namespace

NormalForm normalize(const GroupExpr& e, const Int& factor_bound) {
    NormalAccum acc;
    accumulate(e, Cardinal::finite(1), factor_bound, acc);
    NormalForm nf;
    nf.free_rank = acc.free_rank;
    nf.q_mult = acc.q_mult;
    nf.default_prufer = acc.default_prufer;
    for (const auto& [key, mult] : acc.divisors) {
        nf.elementary_divisors.push_back({key.first, key.second, mult});
    }
    for (const auto& [p, extra] : acc.prufer_extra) {
        Cardinal total = acc.default_prufer + extra;
        if (total != acc.default_prufer) nf.prufer_exceptions.push_back({p, total});
    }
    return nf;
}

Cardinal NormalForm::prufer_mult(const Int& p) const {
    for (const auto& entry : prufer_exceptions) {
        if (entry.p == p) return entry.mult;
    }
    return default_prufer;
}

GroupExpr to_expr(const NormalForm& nf) {
    std::vector<GroupExpr> terms;
    auto push = [&terms](GroupExpr base, const Cardinal& mult) {
        if (mult.is_zero()) return;
        if (mult == Cardinal::finite(1)) {
            terms.push_back(std::move(base));
        } else {
            terms.push_back(GroupExpr::power(std::move(base), mult));
        }
    };
    push(GroupExpr::z(), nf.free_rank);
    for (const auto& d : nf.elementary_divisors) {
        push(GroupExpr::cyclic(pow_int(d.p, d.r)), d.mult);
    }
    for (const auto& pe : nf.prufer_exceptions) {
        Cardinal diff = pe.mult;
        if (pe.mult.is_finite()) {
            if (!nf.default_prufer.is_finite() || pe.mult < nf.default_prufer) {
                throw std::logic_error("prufer exception below default");
            }
            diff = Cardinal::finite(pe.mult.finite_value() - nf.default_prufer.finite_value());
        }
        push(GroupExpr::prufer(pe.p), diff);
    }
    push(GroupExpr::q_mod_z(), nf.default_prufer);
    push(GroupExpr::q(), nf.q_mult);
    if (terms.empty()) return GroupExpr::zero();
    if (terms.size() == 1) return std::move(terms.front());
    return GroupExpr::sum(std::move(terms));
}

} // namespace divgrp
