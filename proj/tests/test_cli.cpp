#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdepth/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = mdepth::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "mdepth_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string file_with(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream f(p, std::ios::binary);
    f << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

const char* kLineDoc = "2 2 3\n1 0 1\n0 1 1\n";

} // namespace

TEST_CASE("rank command") {
    std::string doc = file_with("line.txt", kLineDoc);
    RunResult r = run({"rank", doc});
    CHECK(r.code == 0);
    CHECK(r.out == "rank = 2\n");
    CHECK(r.err.empty());

    RunResult j = run({"rank", doc, "--format", "json"});
    CHECK(j.code == 0);
    nlohmann::json parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("rank") == 2);
    CHECK(parsed.at("elements") == 3);
}

TEST_CASE("circuits and components commands") {
    std::string doc = file_with("line.txt", kLineDoc);
    CHECK(run({"circuits", doc}).out == "{c1,c2,c3}\n");
    nlohmann::json circ = nlohmann::json::parse(run({"circuits", doc, "--format", "json"}).out);
    CHECK(circ == nlohmann::json::parse("[[0,1,2]]"));

    std::string free_doc = file_with("free.txt", "2 2 2\n1 0\n0 1\n");
    CHECK(run({"circuits", free_doc}).out == "no circuits\n");

    std::string mixed = file_with("mixed.txt", "2 1 2\n1 0\n");
    CHECK(run({"components", mixed}).out == "{c1}\n{c2}\n");
    CHECK(run({"components", doc}).out == "{c1,c2,c3}\n");
}

TEST_CASE("dual command emits a matrix document") {
    std::string doc = file_with("line.txt", kLineDoc);
    RunResult r = run({"dual", doc});
    CHECK(r.code == 0);
    CHECK(r.out == "2 1 3\n1 1 1\n");
    // Duality is an involution at the document level for reduced inputs.
    std::string dual_doc = file_with("line_dual.txt", r.out);
    CHECK(run({"dual", dual_doc}).out == std::string(kLineDoc));
}

TEST_CASE("depth command computes all seven parameters") {
    std::string doc = file_with("line.txt", kLineDoc);
    CHECK(run({"depth", doc, "--param", "cd"}).out == "cd = 3\n");
    CHECK(run({"depth", doc, "--param", "dd"}).out == "dd = 2\n");
    CHECK(run({"depth", doc, "--param", "csd"}).out == "csd = 2\n");
    CHECK(run({"depth", doc, "--param", "dsd"}).out == "dsd = 1\n");
    CHECK(run({"depth", doc, "--param", "cbd"}).out == "cbd = 2\n");
    CHECK(run({"depth", doc, "--param", "dbd"}).out == "dbd = 1\n");
    CHECK(run({"depth", doc, "--param", "tdd"}).out == "tdd = 2\n");

    // tdd sees the rows as given; the same matroid presented with a redundant
    // row interaction scores higher.
    std::string dependent_rows = file_with("dep_rows.txt", "2 2 2\n1 1\n1 1\n");
    CHECK(run({"depth", dependent_rows, "--param", "tdd"}).out == "tdd = 2\n");
    CHECK(run({"depth", dependent_rows, "--param", "csd"}).out == "csd = 1\n");

    nlohmann::json j =
        nlohmann::json::parse(run({"depth", doc, "--param", "csd", "--format", "json"}).out);
    CHECK(j.at("parameter") == "csd");
    CHECK(j.at("value") == 2);
}

TEST_CASE("depth certificates print, store, and re-verify") {
    std::string doc = file_with("line.txt", kLineDoc);
    RunResult shown = run({"depth", doc, "--param", "csd", "--certificate"});
    CHECK(shown.code == 0);
    CHECK(shown.out.find("csd = 2\n") == 0);
    CHECK(shown.out.find("\"parameter\": \"csd\"") != std::string::npos);

    std::string cert_path = (scratch_dir() / "line_csd.json").string();
    RunResult stored = run({"depth", doc, "--param", "csd", "--certificate-out", cert_path});
    CHECK(stored.code == 0);
    CHECK(stored.out == "csd = 2\n");

    RunResult ok = run({"certify", doc, cert_path});
    CHECK(ok.code == 0);
    CHECK(ok.out == "certificate ok: csd <= 2\n");

    // The same certificate does not fit a different matroid.
    std::string other = file_with("parallel.txt", "2 1 3\n1 1 1\n");
    RunResult bad = run({"certify", other, cert_path});
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("certificate rejected: ") == 0);

    // Tampering with the stored value is caught at parse time.
    std::string tampered = slurp(cert_path);
    tampered.replace(tampered.find("\"value\": 2"), 10, "\"value\": 1");
    RunResult mangled = run({"certify", doc, file_with("tampered.json", tampered)});
    CHECK(mangled.code == 1);

    // No certificate form exists for the subspace recursions.
    RunResult none = run({"depth", doc, "--param", "cbd", "--certificate"});
    CHECK(none.code == 1);
    CHECK(none.err.find("no certificate form") != std::string::npos);
}

TEST_CASE("tree encode and decode commands") {
    const std::string tree_doc =
        "2\n"
        "0 -\n"
        "1 0 R\n"
        "2 1 R\n"
        "3 1 C,0:0,1:1\n"
        "4 2 C,0:0,1:0,2:1\n"
        "5 2 C,0:0,1:1,2:1\n";
    RunResult dec = run({"decode-tree", file_with("line.tree", tree_doc)});
    CHECK(dec.code == 0);
    CHECK(dec.out == std::string(kLineDoc));

    RunResult enc = run({"encode-tree", file_with("line.txt", kLineDoc)});
    CHECK(enc.code == 0);
    RunResult roundtrip = run({"decode-tree", file_with("line_enc.tree", enc.out)});
    CHECK(roundtrip.code == 0);
    CHECK(roundtrip.out == std::string(kLineDoc));
}

TEST_CASE("progressive command") {
    std::string doc = file_with("line.txt", kLineDoc);
    RunResult r = run({"progressive", doc});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "progressive p=2 2x3 [101;011] csd=2\n"
          "vectors (3): (0,1) (1,0) (1,1)\n"
          "restriction {c1,c2,c3} spans-all=yes\n");

    nlohmann::json j = nlohmann::json::parse(run({"progressive", doc, "--format", "json"}).out);
    CHECK(j.at("value") == 2);
    CHECK(j.at("vectors") == nlohmann::json::parse("[[0,1],[1,0],[1,1]]"));
    CHECK(j.at("restrictions").size() == 1);
    CHECK(j.at("restrictions")[0].at("spans_all") == true);
}

TEST_CASE("obstructions command") {
    RunResult r = run({"obstructions", "--param", "csd", "--depth", "1", "--max-rows", "1",
                       "--max-cols", "2"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "obstructions param=csd d=1 p=2 rows<=1 cols<=2 move=delete\n"
          "witness p=2 1x1 [1] value=1 moves: c1->0 set-form=implied\n"
          "witnesses=1 max-size=1\n");
}

TEST_CASE("check command runs suites") {
    RunResult r = run({"check", "--suite", "duality", "--max-rows", "2", "--max-cols", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("suite duality: instances=13\n") == 0);
    CHECK(r.out.find("result: pass\n") != std::string::npos);

    RunResult workers = run({"check", "--suite", "duality", "--max-rows", "2", "--max-cols", "3",
                             "--workers", "4"});
    CHECK(workers.code == 0);
    CHECK(workers.out == r.out);

    RunResult unknown = run({"check", "--suite", "bogus"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("unknown suite") != std::string::npos);
}

TEST_CASE("input errors exit with code 1") {
    CHECK(run({"rank", (scratch_dir() / "missing.txt").string()}).code == 1);
    CHECK(run({"rank", file_with("nonprime.txt", "4 1 1\n1\n")}).code == 1);
    CHECK(run({"rank", file_with("badentry.txt", "3 1 2\n1 5\n")}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"depth", file_with("line.txt", kLineDoc)}).code == 1); // missing --param
    CHECK(run({"depth", file_with("line.txt", kLineDoc), "--param", "zz"}).code == 1);

    RunResult r = run({"rank", file_with("badentry.txt", "3 1 2\n1 5\n")});
    CHECK(r.err.find("error: line 2") == 0);
    CHECK(r.err.find("[entry-out-of-range]") != std::string::npos);
}

TEST_CASE("guard refusals exit with code 3 and can be raised") {
    std::string wide;
    for (int i = 0; i < 13; ++i) wide += i == 0 ? "1" : " 1";
    std::string doc = file_with("wide.txt", "2 1 13\n" + wide + "\n");
    RunResult refused = run({"depth", doc, "--param", "cd"});
    CHECK(refused.code == 3);
    CHECK(refused.err.find("guard refused: ") == 0);

    RunResult allowed = run({"depth", doc, "--param", "cd", "--max-elements", "13"});
    CHECK(allowed.code == 0);
    CHECK(allowed.out == "cd = 2\n");
}

TEST_CASE("help is not an error") {
    RunResult r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rank") != std::string::npos);
    CHECK(r.out.find("check") != std::string::npos);
}
