#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "divgrp/cli.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = divgrp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_matrix_file(const std::string& name, const std::string& content) {
    std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("iso reports the paper's showcase isomorphisms") {
    CliResult r = run_cli({"iso", "C*", "S^1"});
    CHECK(r.code == 0);
    CHECK(r.out == "isomorphic: true\n");

    r = run_cli({"iso", "R", "R^2"});
    CHECK(r.code == 0);
    CHECK(r.out == "isomorphic: true\n");

    r = run_cli({"iso", "Q", "Q/Z"});
    CHECK(r.code == 0);
    CHECK(r.out == "isomorphic: false\n");
}

TEST_CASE("invariants of Q/Z") {
    CliResult r = run_cli({"invariants", "Q/Z"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "m_p: default 1\n"
          "n: 0\n"
          "free rank: 0\n"
          "elementary divisors: none\n"
          "flags: divisible torsion\n");
}

TEST_CASE("parse errors exit with code 2 and a byte offset") {
    CliResult r = run_cli({"iso", "Z(2^inf", "Q"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err == "error[ParseError]: offset 7: expected ')'\n");

    r = run_cli({"--json", "iso", "Z(2^inf", "Q"});
    CHECK(r.code == 2);
    CHECK(r.out == R"JSON({
  "command": "iso",
  "input": {
    "a": "Z(2^inf",
    "b": "Q"
  },
  "result": null,
  "error": {
    "kind": "ParseError",
    "message": "offset 7: expected ')'"
  }
}
)JSON");
}

TEST_CASE("JSON envelopes carry results and are byte-stable") {
    std::vector<std::string> args{"--json", "count-solutions", "Z(2^inf)", "8"};
    CliResult a = run_cli(args);
    CliResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == R"JSON({
  "command": "count-solutions",
  "input": {
    "expression": "Z(2^inf)",
    "n": "8"
  },
  "result": {
    "count": {
      "finite": 8
    }
  },
  "error": null
}
)JSON");

    // text mode is deterministic too
    CliResult t1 = run_cli({"normalize", "C* (+) Z/12"});
    CliResult t2 = run_cli({"normalize", "C* (+) Z/12"});
    CHECK(t1.out == t2.out);
    CHECK(t1.out == "canonical: Z/4 (+) Z/3 (+) Q/Z (+) Q^c\n");
}

TEST_CASE("every domain error kind surfaces intact in JSON mode") {
    auto error_kind = [](std::vector<std::string> args) {
        args.insert(args.begin(), "--json");
        CliResult r = run_cli(args);
        REQUIRE(r.code != 0);
        auto pos = r.out.find("\"kind\": \"");
        REQUIRE(pos != std::string::npos);
        pos += 9;
        return r.out.substr(pos, r.out.find('"', pos) - pos);
    };

    CHECK(error_kind({"normalize", "Z/"}) == "ParseError");
    CHECK(error_kind({"normalize", "Z/1000003", "--max-factor-bound", "1000"}) == "BoundExceeded");
    CHECK(error_kind({"add", "q:1/2", "z:1"}) == "ParentMismatch");
    CHECK(error_kind({"divide", "2", "z:1"}) == "NoSolution");
    CHECK(error_kind({"primary", "Q"}) == "NotTorsion");
    CHECK(error_kind({"decompose-element", "q:1/2"}) == "InfiniteOrder");
    CHECK(error_kind({"count-solutions", "Z", "2"}) == "NotDivisible");
    CHECK(error_kind({"hull", "Q/Z"}) == "NotFinitelyGenerated");
    CHECK(error_kind({"independent", "--vectors", "1,0", "1"}) == "DimensionMismatch");
    CHECK(error_kind({"independent", "--parent", "Q (+) Z/2", "{pos0.tag0=q:1}",
                      "{pos1.tag0=cyc:2:1}"}) == "UnsupportedMix");
    CHECK(error_kind({"order", "--parent", "R", "{pos0.tag0=q:1}"}) == "UnsupportedAtom");
    CHECK(error_kind({"independent", "qz:1/2", "qz:1/3", "--max-enum", "2"}) == "BoundExceeded");
}

TEST_CASE("element commands") {
    CliResult r = run_cli({"order", "qz:1/6"});
    CHECK(r.code == 0);
    CHECK(r.out == "order: 6\n");

    r = run_cli({"order", "q:3/5"});
    CHECK(r.out == "order: infinite\n");

    r = run_cli({"add", "qz:1/2", "qz:3/4"});
    CHECK(r.out == "sum: qz:1/4\n");

    r = run_cli({"smul", "-1", "cyc:12:5"});
    CHECK(r.out == "result: cyc:12:7\n");

    r = run_cli({"divide", "2", "pr:2^inf:1/2"});
    CHECK(r.out ==
          "count: 2\n"
          "truncated: false\n"
          "solution: pr:2^inf:1/4\n"
          "solution: pr:2^inf:3/4\n");

    r = run_cli({"decompose-element", "cyc:12:1"});
    CHECK(r.out ==
          "p = 2: cyc:12:9\n"
          "p = 3: cyc:12:4\n");

    r = run_cli({"decompose-element", "qz:0"});
    CHECK(r.out == "components: none\n");

    r = run_cli({"add", "--parent", "Q^2", "{pos0.tag0=q:1/2}", "{pos0.tag1=q:1/3}"});
    CHECK(r.out == "sum: {pos0.tag0=q:1/2, pos0.tag1=q:1/3}\n");

    r = run_cli({"divide", "2", "--parent", "Z(2^inf)^aleph0", "{}"});
    CHECK(r.out ==
          "count: aleph0\n"
          "truncated: true\n"
          "solution: {}\n");
}

TEST_CASE("independence command") {
    CliResult r = run_cli({"independent", "qz:1/2", "qz:1/3"});
    CHECK(r.out == "independent: true\n");

    r = run_cli({"independent", "qz:1/2", "qz:1/4"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "independent: false\n"
          "certificate: 1 2\n");

    r = run_cli({"independent", "--vectors", "1,0", "0,1", "1,1"});
    CHECK(r.out ==
          "independent: false\n"
          "certificate: 1 1 -1\n");

    r = run_cli({"independent"});
    CHECK(r.out == "independent: true\n");

    r = run_cli({"--json", "independent", "--vectors", "2,4", "1,2"});
    CHECK(r.out.find("\"certificate\": [\n      1,\n      -2\n    ]") != std::string::npos);
}

TEST_CASE("matrix commands read the JSON file format") {
    auto path = write_matrix_file("divgrp_diag23.json",
                                  R"({"rows": 2, "cols": 2, "entries": [[2, 0], [0, 3]]})");
    CliResult r = run_cli({"snf", "--matrix-file", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("D:\n  1 0\n  0 6\n") != std::string::npos);

    r = run_cli({"classify-fp", "--matrix-file", path.string()});
    CHECK(r.out == "group: Z/6\n");

    auto free2 = write_matrix_file("divgrp_free2.json",
                                   R"({"rows": 0, "cols": 2, "entries": []})");
    r = run_cli({"classify-fp", "--matrix-file", free2.string()});
    CHECK(r.out == "group: Z^2\n");

    auto rel = write_matrix_file("divgrp_rel.json",
                                 R"({"rows": 1, "cols": 2, "entries": [[2, 0]]})");
    r = run_cli({"classify-fp", "--matrix-file", rel.string()});
    CHECK(r.out == "group: Z (+) Z/2\n");

    // string entries keep huge integers exact
    auto big = write_matrix_file(
        "divgrp_big.json",
        R"({"rows": 1, "cols": 1, "entries": [["123456789012345678901234567890"]]})");
    r = run_cli({"--json", "snf", "--matrix-file", big.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"123456789012345678901234567890\"") != std::string::npos);

    auto bad = write_matrix_file("divgrp_bad.json", R"({"rows": 2, "cols": 2, "entries": [[1]]})");
    r = run_cli({"snf", "--matrix-file", bad.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("DimensionMismatch") != std::string::npos);

    auto garbage = write_matrix_file("divgrp_garbage.json", "not json");
    r = run_cli({"snf", "--matrix-file", garbage.string()});
    CHECK(r.code == 2); // ParseError

    r = run_cli({"snf", "--matrix-file", "/nonexistent/file.json"});
    CHECK(r.code == 2);
}

TEST_CASE("usage errors") {
    CliResult r = run_cli({});
    CHECK(r.code == 2);
    CHECK(r.err.find("usage") != std::string::npos);

    r = run_cli({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown command") != std::string::npos);

    r = run_cli({"--frobnicate", "iso", "Q", "Q"});
    CHECK(r.code == 2);

    r = run_cli({"iso", "Q"});
    CHECK(r.code == 2);

    r = run_cli({"count-solutions", "Q", "0"});
    CHECK(r.code == 2);

    r = run_cli({"snf"});
    CHECK(r.code == 2);

    r = run_cli({"help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("columns are generators, rows are relations") != std::string::npos);

    r = run_cli({"--help"});
    CHECK(r.code == 0);
}

TEST_CASE("flags adjust the working bounds") {
    CliResult r = run_cli({"normalize", "Z/1000003", "--max-factor-bound", "2000000"});
    CHECK(r.code == 0);
    CHECK(r.out == "canonical: Z/1000003\n");

    r = run_cli({"divide", "1000", "qz:0", "--max-enum", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.find("truncated: true\n") != std::string::npos);

    r = run_cli({"divide", "12", "qz:0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("truncated: false\n") != std::string::npos);
}
