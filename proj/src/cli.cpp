#include "divgrp/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "divgrp/independence.hpp"
#include "divgrp/structure.hpp"

namespace divgrp::cli {

namespace {

using Json = nlohmann::ordered_json;

const char* kUsage = R"USAGE(usage: divgrp [flags] <command> [args]

Expression commands (see grammar below):
  normalize EXPR              canonical direct-sum form
  invariants EXPR             the invariants m_p and n plus the reduced part
  iso A B                     isomorphism via invariant equality
  torsion EXPR                torsion / torsion-free splitting
  split-divisible EXPR        maximal divisible part and reduced complement
  primary EXPR                p-primary decomposition (torsion input)
  socle EXPR                  elements of square-free order
  hull EXPR                   divisible hull of a finitely generated input
  count-solutions EXPR N      solutions of N*x = y in a divisible group

Element commands (literals: q:3/5  z:4  qz:1/6  pr:2^inf:3/8  cyc:12:7,
sums: {pos0.tag0=qz:1/2, pos2.tag5=q:1/3} with --parent EXPR):
  order X                     order of an element
  add X Y                     sum of two elements of one parent
  smul N X                    integer multiple
  divide N X                  all y with N*y = X, with the exact count
  decompose-element X         parts of prime-power order
  independent X...            linear independence (or --vectors "1,0" "0,1")

Matrix commands (--matrix-file JSON {"rows":R,"cols":C,"entries":[[...]]}):
  snf                         Smith normal form D = U*A*V
  classify-fp                 the abelian group presented by the matrix
                              (columns are generators, rows are relations)

Flags:
  --json                      machine-readable output
  --parent EXPR               parent group for element literals
  --matrix-file PATH          input matrix
  --vectors                   treat `independent` arguments as rational vectors
  --max-factor-bound N        trial-division limit (default 10^12)
  --max-enum N                enumeration limit (default 10^6)

Grammar: expr := term { "(+)" term } ; term := atom [ "^" cardinal ] ;
atom := "0" | "Z" | "Q" | "Q/Z" | "Z/" nat | "Z(" nat "^inf)" | "R" [ "^" nat ]
      | "C*" | "S^1" | "(" expr ")" ; cardinal := nat | "aleph0" | "c".
)USAGE";

struct Options {
    bool json = false;
    bool vectors = false;
    Int factor_bound = kDefaultFactorBound;
    Int enum_bound = kDefaultEnumBound;
    std::optional<std::string> parent;
    std::optional<std::string> matrix_file;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int parse_cli_int(const std::string& text, const std::string& what) {
    std::size_t i = 0;
    bool neg = !text.empty() && text[0] == '-';
    if (neg) i = 1;
    if (i == text.size()) throw UsageError(what + " must be an integer");
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw UsageError(what + " must be an integer");
        }
    }
    return Int(text);
}

Json int_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
        return v.convert_to<long long>();
    }
    return v.str();
}

Json card_json(const Cardinal& c) {
    switch (c.kind()) {
    case Cardinal::Kind::Finite: return Json{{"finite", int_json(c.finite_value())}};
    case Cardinal::Kind::Aleph0: return "aleph0";
    case Cardinal::Kind::Continuum: return "continuum";
    }
    return nullptr;
}

Json nf_json(const NormalForm& nf) {
    Json divisors = Json::array();
    for (const auto& d : nf.elementary_divisors) {
        divisors.push_back({{"p", int_json(d.p)}, {"r", d.r}, {"mult", card_json(d.mult)}});
    }
    Json exceptions = Json::array();
    for (const auto& pe : nf.prufer_exceptions) {
        exceptions.push_back({{"p", int_json(pe.p)}, {"mult", card_json(pe.mult)}});
    }
    return Json{{"free_rank", card_json(nf.free_rank)},
                {"elementary_divisors", divisors},
                {"prufer_default", card_json(nf.default_prufer)},
                {"prufer_exceptions", exceptions},
                {"q_mult", card_json(nf.q_mult)}};
}

Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(int_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(rows)}};
}

std::string matrix_text(const IntMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows; ++i) {
        out += "  ";
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j > 0) out += " ";
            out += m.at(i, j).str();
        }
        out += "\n";
    }
    if (m.rows == 0) out += "  (no rows)\n";
    return out;
}

Int json_entry_to_int(const Json& v) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_string()) return parse_cli_int(v.get<std::string>(), "matrix entry");
    throw GroupError(ErrorKind::ParseError, "matrix entries must be exact integers");
}

IntMatrix load_matrix(const Options& opts) {
    if (!opts.matrix_file) throw UsageError("--matrix-file is required");
    std::ifstream in(*opts.matrix_file);
    if (!in) throw UsageError("cannot open matrix file: " + *opts.matrix_file);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw GroupError(ErrorKind::ParseError, std::string("matrix file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
        !doc.contains("entries")) {
        throw GroupError(ErrorKind::ParseError,
                         "matrix file needs fields rows, cols, entries");
    }
    IntMatrix m;
    m.rows = doc["rows"].get<std::size_t>();
    m.cols = doc["cols"].get<std::size_t>();
    const Json& entries = doc["entries"];
    if (!entries.is_array() || entries.size() != m.rows) {
        throw GroupError(ErrorKind::DimensionMismatch,
                         "entries must hold exactly `rows` rows");
    }
    for (const Json& row : entries) {
        if (!row.is_array() || row.size() != m.cols) {
            throw GroupError(ErrorKind::DimensionMismatch,
                             "every row must hold exactly `cols` entries");
        }
        for (const Json& v : row) m.entries.push_back(json_entry_to_int(v));
    }
    return m;
}

Rat parse_cli_rat(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_cli_int(text, "rational"));
    Int n = parse_cli_int(text.substr(0, slash), "numerator");
    Int d = parse_cli_int(text.substr(slash + 1), "denominator");
    if (d <= 0) throw UsageError("denominator must be positive");
    return make_rat(n, d);
}

RatVector parse_cli_vector(const std::string& text) {
    RatVector v;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        // trim
        std::size_t a = token.find_first_not_of(" \t");
        std::size_t b = token.find_last_not_of(" \t");
        if (a == std::string::npos) throw UsageError("empty vector entry");
        v.push_back(parse_cli_rat(token.substr(a, b - a + 1)));
    }
    if (v.empty()) throw UsageError("empty vector");
    return v;
}

struct Invocation {
    std::string command;
    Options opts;
    std::optional<GroupExpr> parent_expr; // parsed lazily by element commands
    Json input = Json::object();
    Json result;
    std::vector<std::string> text;

    void line(const std::string& s) { text.push_back(s); }

    std::optional<GroupExpr> parent() {
        if (opts.parent && !parent_expr) parent_expr = parse_expr(*opts.parent);
        return parent_expr;
    }
};

void require_args(const std::vector<std::string>& args, std::size_t n, const char* shape) {
    if (args.size() != n) {
        throw UsageError(std::string("expected arguments: ") + shape);
    }
}

// --- handlers ----------------------------------------------------------------

void cmd_normalize(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "normalize EXPR");
    inv.input = {{"expression", args[0]}};
    NormalForm nf = normalize(parse_expr(args[0]), inv.opts.factor_bound);
    std::string canonical = print_expr(to_expr(nf));
    inv.line("canonical: " + canonical);
    inv.result = {{"canonical", canonical}, {"normal_form", nf_json(nf)}};
}

void cmd_invariants(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "invariants EXPR");
    inv.input = {{"expression", args[0]}};
    StructureReport report = classify(parse_expr(args[0]), inv.opts.factor_bound);
    const NormalForm& nf = report.normal;
    inv.line("m_p: default " + to_string(nf.default_prufer));
    for (const auto& pe : nf.prufer_exceptions) {
        inv.line("m_" + pe.p.str() + ": " + to_string(pe.mult));
    }
    inv.line("n: " + to_string(nf.q_mult));
    inv.line("free rank: " + to_string(nf.free_rank));
    if (nf.elementary_divisors.empty()) {
        inv.line("elementary divisors: none");
    } else {
        std::string line = "elementary divisors:";
        for (const auto& d : nf.elementary_divisors) {
            line += " Z/" + pow_int(d.p, d.r).str() + "^" + to_string(d.mult);
        }
        inv.line(line);
    }
    std::string flags;
    if (report.is_divisible) flags += " divisible";
    if (report.is_torsion) flags += " torsion";
    if (report.is_torsion_free) flags += " torsion-free";
    if (report.is_reduced) flags += " reduced";
    inv.line("flags:" + (flags.empty() ? " none" : flags));
    Json exceptions = Json::array();
    for (const auto& pe : nf.prufer_exceptions) {
        exceptions.push_back({{"p", int_json(pe.p)}, {"mult", card_json(pe.mult)}});
    }
    inv.result = {{"m_p", {{"default", card_json(nf.default_prufer)}, {"exceptions", exceptions}}},
                  {"n", card_json(nf.q_mult)},
                  {"normal_form", nf_json(nf)},
                  {"divisible", report.is_divisible},
                  {"torsion", report.is_torsion},
                  {"torsion_free", report.is_torsion_free},
                  {"reduced", report.is_reduced}};
}

void cmd_iso(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 2, "iso A B");
    inv.input = {{"a", args[0]}, {"b", args[1]}};
    bool iso = is_isomorphic(parse_expr(args[0]), parse_expr(args[1]), inv.opts.factor_bound);
    inv.line(std::string("isomorphic: ") + (iso ? "true" : "false"));
    inv.result = {{"isomorphic", iso}};
}

void cmd_torsion(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "torsion EXPR");
    inv.input = {{"expression", args[0]}};
    auto [t, f] = torsion_split(parse_expr(args[0]), inv.opts.factor_bound);
    inv.line("torsion part: " + print_expr(t));
    inv.line("torsion-free part: " + print_expr(f));
    inv.result = {{"torsion", print_expr(t)}, {"torsion_free", print_expr(f)}};
}

void cmd_split_divisible(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "split-divisible EXPR");
    inv.input = {{"expression", args[0]}};
    auto [d, r] = split_divisible(parse_expr(args[0]), inv.opts.factor_bound);
    inv.line("divisible part: " + print_expr(d));
    inv.line("reduced part: " + print_expr(r));
    inv.result = {{"divisible", print_expr(d)}, {"reduced", print_expr(r)}};
}

void cmd_primary(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "primary EXPR");
    inv.input = {{"expression", args[0]}};
    PrimaryDecomposition dec = primary_decompose(parse_expr(args[0]), inv.opts.factor_bound);
    if (dec.components.empty() && dec.default_prufer.is_zero()) {
        inv.line("components: none");
    }
    for (const auto& [p, component] : dec.components) {
        inv.line("p = " + p.str() + ": " + print_expr(component));
    }
    if (!dec.default_prufer.is_zero()) {
        inv.line("every other prime: Z(p^inf) with multiplicity " +
                 to_string(dec.default_prufer));
    }
    Json components = Json::array();
    for (const auto& [p, component] : dec.components) {
        components.push_back({{"p", int_json(p)}, {"expression", print_expr(component)}});
    }
    inv.result = {{"components", components}, {"default_prufer", card_json(dec.default_prufer)}};
}

void cmd_socle(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "socle EXPR");
    inv.input = {{"expression", args[0]}};
    SocleResult s = socle(parse_expr(args[0]), inv.opts.factor_bound);
    inv.line("socle: " + print_expr(s.expr));
    if (!s.prime_default.is_zero()) {
        inv.line("plus Z/p for every remaining prime, multiplicity " +
                 to_string(s.prime_default));
    }
    inv.result = {{"socle", print_expr(s.expr)}, {"prime_default", card_json(s.prime_default)}};
}

void cmd_hull(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "hull EXPR");
    inv.input = {{"expression", args[0]}};
    GroupExpr hull = divisible_hull(parse_expr(args[0]), inv.opts.factor_bound);
    inv.line("hull: " + print_expr(hull));
    inv.result = {{"hull", print_expr(hull)}};
}

void cmd_count_solutions(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 2, "count-solutions EXPR N");
    inv.input = {{"expression", args[0]}, {"n", args[1]}};
    Int n = parse_cli_int(args[1], "N");
    if (n < 1) throw UsageError("N must be >= 1");
    Cardinal count = count_division_solutions(parse_expr(args[0]), n, inv.opts.factor_bound);
    inv.line("solutions: " + to_string(count));
    inv.result = {{"count", card_json(count)}};
}

void cmd_order(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "order X");
    inv.input = {{"element", args[0]}};
    if (inv.opts.parent) inv.input["parent"] = *inv.opts.parent;
    OrderValue o = order_of(parse_element(args[0], inv.parent()));
    inv.line("order: " + to_string(o));
    inv.result = {{"order", o.is_finite() ? Json{{"finite", int_json(o.value())}} : Json("infinite")}};
}

void cmd_add(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 2, "add X Y");
    inv.input = {{"x", args[0]}, {"y", args[1]}};
    if (inv.opts.parent) inv.input["parent"] = *inv.opts.parent;
    GroupElement sum = add(parse_element(args[0], inv.parent()),
                           parse_element(args[1], inv.parent()));
    inv.line("sum: " + print_element(sum));
    inv.result = {{"sum", print_element(sum)}};
}

void cmd_smul(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 2, "smul N X");
    inv.input = {{"n", args[0]}, {"element", args[1]}};
    if (inv.opts.parent) inv.input["parent"] = *inv.opts.parent;
    Int n = parse_cli_int(args[0], "N");
    GroupElement r = scalar_mul(n, parse_element(args[1], inv.parent()));
    inv.line("result: " + print_element(r));
    inv.result = {{"result", print_element(r)}};
}

void cmd_divide(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 2, "divide N X");
    inv.input = {{"n", args[0]}, {"element", args[1]}};
    if (inv.opts.parent) inv.input["parent"] = *inv.opts.parent;
    Int n = parse_cli_int(args[0], "N");
    if (n < 1) throw UsageError("N must be >= 1");
    DivisionResult res = divide_element(n, parse_element(args[1], inv.parent()),
                                        inv.opts.enum_bound);
    inv.line("count: " + to_string(res.count));
    inv.line(std::string("truncated: ") + (res.truncated ? "true" : "false"));
    Json sols = Json::array();
    for (const GroupElement& y : res.solutions) {
        inv.line("solution: " + print_element(y));
        sols.push_back(print_element(y));
    }
    inv.result = {{"count", card_json(res.count)},
                  {"truncated", res.truncated},
                  {"solutions", std::move(sols)}};
}

void cmd_decompose_element(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 1, "decompose-element X");
    inv.input = {{"element", args[0]}};
    if (inv.opts.parent) inv.input["parent"] = *inv.opts.parent;
    auto parts = primary_decompose(parse_element(args[0], inv.parent()), inv.opts.factor_bound);
    if (parts.empty()) inv.line("components: none");
    Json components = Json::array();
    for (const auto& [p, part] : parts) {
        inv.line("p = " + p.str() + ": " + print_element(part));
        components.push_back({{"p", int_json(p)}, {"element", print_element(part)}});
    }
    inv.result = {{"components", std::move(components)}};
}

void cmd_independent(Invocation& inv, const std::vector<std::string>& args) {
    IndependenceVerdict verdict; // the empty system is independent

    if (inv.opts.vectors) {
        inv.input = {{"vectors", args}};
        std::vector<RatVector> vs;
        for (const std::string& a : args) vs.push_back(parse_cli_vector(a));
        verdict = independent_rational(vs);
    } else {
        inv.input = {{"elements", args}};
        if (inv.opts.parent) inv.input["parent"] = *inv.opts.parent;
        std::vector<GroupElement> xs;
        for (const std::string& a : args) xs.push_back(parse_element(a, inv.parent()));
        verdict = independent_elements(xs, inv.opts.enum_bound);
    }
    inv.line(std::string("independent: ") + (verdict.independent ? "true" : "false"));
    Json cert = nullptr;
    if (verdict.certificate) {
        std::string line = "certificate:";
        cert = Json::array();
        for (const Int& c : *verdict.certificate) {
            line += " " + c.str();
            cert.push_back(int_json(c));
        }
        inv.line(line);
    }
    inv.result = {{"independent", verdict.independent}, {"certificate", std::move(cert)}};
}

void cmd_snf(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 0, "snf --matrix-file PATH");
    inv.input = {{"matrix_file", inv.opts.matrix_file ? Json(*inv.opts.matrix_file) : Json(nullptr)}};
    IntMatrix a = load_matrix(inv.opts);
    SnfResult snf = smith_normal_form(a);
    inv.line("D:");
    inv.line(matrix_text(snf.d));
    inv.line("U:");
    inv.line(matrix_text(snf.u));
    inv.line("V:");
    inv.line(matrix_text(snf.v));
    inv.result = {{"d", matrix_json(snf.d)}, {"u", matrix_json(snf.u)}, {"v", matrix_json(snf.v)}};
}

void cmd_classify_fp(Invocation& inv, const std::vector<std::string>& args) {
    require_args(args, 0, "classify-fp --matrix-file PATH");
    inv.input = {{"matrix_file", inv.opts.matrix_file ? Json(*inv.opts.matrix_file) : Json(nullptr)}};
    IntMatrix a = load_matrix(inv.opts);
    GroupExpr g = fp_classify(a);
    inv.line("group: " + print_expr(g));
    inv.result = {{"group", print_expr(g)}};
}

using Handler = std::function<void(Invocation&, const std::vector<std::string>&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> table = {
        {"normalize", cmd_normalize},
        {"invariants", cmd_invariants},
        {"iso", cmd_iso},
        {"torsion", cmd_torsion},
        {"split-divisible", cmd_split_divisible},
        {"primary", cmd_primary},
        {"socle", cmd_socle},
        {"hull", cmd_hull},
        {"count-solutions", cmd_count_solutions},
        {"order", cmd_order},
        {"add", cmd_add},
        {"smul", cmd_smul},
        {"divide", cmd_divide},
        {"decompose-element", cmd_decompose_element},
        {"independent", cmd_independent},
        {"snf", cmd_snf},
        {"classify-fp", cmd_classify_fp},
    };
    return table;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opts;
    std::vector<std::string> positionals;
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            const std::string& a = args[i];
            auto value_of = [&](const char* flag) -> std::string {
                if (++i >= args.size()) throw UsageError(std::string(flag) + " needs a value");
                return args[i];
            };
            if (a == "--json") {
                opts.json = true;
            } else if (a == "--vectors") {
                opts.vectors = true;
            } else if (a == "--parent") {
                opts.parent = value_of("--parent");
            } else if (a == "--matrix-file") {
                opts.matrix_file = value_of("--matrix-file");
            } else if (a == "--max-factor-bound") {
                opts.factor_bound = parse_cli_int(value_of("--max-factor-bound"), "--max-factor-bound");
                if (opts.factor_bound < 1) throw UsageError("--max-factor-bound must be >= 1");
            } else if (a == "--max-enum") {
                opts.enum_bound = parse_cli_int(value_of("--max-enum"), "--max-enum");
                if (opts.enum_bound < 1) throw UsageError("--max-enum must be >= 1");
            } else if (a == "--help" || a == "-h") {
                out << kUsage;
                return 0;
            } else if (a.rfind("--", 0) == 0) {
                throw UsageError("unknown flag: " + a);
            } else {
                positionals.push_back(a);
            }
        }
        if (positionals.empty()) throw UsageError("no command given");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << kUsage;
        return 2;
    }

    std::string command = positionals.front();
    std::vector<std::string> rest(positionals.begin() + 1, positionals.end());
    if (command == "help") {
        out << kUsage;
        return 0;
    }

    const Handler* handler = nullptr;
    for (const auto& [name, h] : handlers()) {
        if (name == command) {
            handler = &h;
            break;
        }
    }
    if (!handler) {
        err << "usage error: unknown command '" << command << "'\n" << kUsage;
        return 2;
    }

    Invocation inv;
    inv.command = command;
    inv.opts = opts;
    int exit_code = 0;
    std::optional<GroupError> failure;
    try {
        (*handler)(inv, rest);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const GroupError& e) {
        failure = e;
        exit_code = e.kind() == ErrorKind::ParseError ? 2 : 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (opts.json) {
        Json envelope = {{"command", command},
                         {"input", inv.input},
                         {"result", failure ? Json(nullptr) : inv.result},
                         {"error", failure ? Json{{"kind", to_string(failure->kind())},
                                                  {"message", failure->what()}}
                                           : Json(nullptr)}};
        out << envelope.dump(2) << "\n";
    } else if (failure) {
        err << "error[" << to_string(failure->kind()) << "]: " << failure->what() << "\n";
    } else {
        for (const std::string& line : inv.text) out << line << "\n";
    }
    return exit_code;
}

} // namespace divgrp::cli
