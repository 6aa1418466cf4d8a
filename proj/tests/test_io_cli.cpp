#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tcpkit/cli.hpp"
#include "tcpkit/errors.hpp"
#include "tcpkit/generate.hpp"
#include "tcpkit/io.hpp"

#include "helpers.hpp"

using namespace tcpkit;
using namespace tcpkit::testutil;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("tcpkit_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"tcpkit"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("tensor json round trip is bitwise") {
    Tensor t(3, 3);
    t[0] = 1.0 / 3.0;
    t[5] = -1e-300;
    t[13] = 3.141592653589793;
    t[26] = 1e17 + 1;
    const Tensor back = tensor_from_json(tensor_to_json(t));
    REQUIRE(back.size() == t.size());
    for (std::int64_t f = 0; f < t.size(); ++f) CHECK(back[f] == t[f]);
}

TEST_CASE("vector and instance round trips") {
    const Vec v{0.1, -2.0 / 7.0, 5e-17};
    const Vec bv = vec_from_json(vec_to_json(v));
    CHECK(bv == v);

    const TcpInstance inst = gen_instance({GenKind::SymmetricGaussian, 3, 3, 3, {}}, QKind::Mixed, 4);
    const TcpInstance bi = instance_from_json(instance_to_json(inst));
    CHECK(bi.q == inst.q);
    for (std::int64_t f = 0; f < inst.a.size(); ++f) CHECK(bi.a[f] == inst.a[f]);
}

TEST_CASE("tensor load errors name the offending record") {
    Json j;
    j["order"] = 2;
    j["dim"] = 2;
    j["entries"] = Json::array();
    j["entries"].push_back({{"idx", {1, 5}}, {"val", 1.0}});
    try {
        tensor_from_json(j);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("entry 0") != std::string::npos);
    }

    Json dup;
    dup["order"] = 2;
    dup["dim"] = 2;
    dup["entries"] = Json::array();
    dup["entries"].push_back({{"idx", {1, 1}}, {"val", 1.0}});
    dup["entries"].push_back({{"idx", {1, 1}}, {"val", 2.0}});
    CHECK_THROWS_AS(tensor_from_json(dup), Error);
}

TEST_CASE("verdict and solve report records carry the interface fields") {
    const Tensor hard = matrix_tensor({{1, -2}, {-2, 1}});
    const Verdict v = classify_semi_positive(hard);
    const Json j = verdict_to_json("semi_positive", v);
    CHECK(j.at("property") == "semi_positive");
    CHECK(j.at("status") == "fails");
    CHECK(j.contains("witness"));
    CHECK(j.contains("witness_set"));
    CHECK(j.contains("evals"));

    const SolveReport rep = solve_support_enum(TcpInstance(matrix_tensor({{1, 0}, {0, 1}}),
                                                           {-1.0, -2.0}));
    const Json js = solve_report_to_json(rep);
    CHECK(js.at("complete") == true);
    CHECK(js.at("solutions").size() == 1);
    CHECK(js.at("solutions")[0].contains("residuals"));
}

TEST_CASE("cli: gen -> classify -> solve round trip") {
    TempDir tmp;
    const std::string tensor_file = tmp.file("id32.tensor");
    const std::string inst_file = tmp.file("inst.tcp");
    const std::string report = tmp.file("verdict.json");

    CHECK(cli({"gen", "--kind", "identity", "--order", "3", "--dim", "2", "--out",
               tensor_file.c_str()}) == 0);
    CHECK(cli({"classify", "--in", tensor_file.c_str(), "--property", "strictly_copositive",
               "--out", report.c_str()}) == 0);
    const Json verdict = Json::parse(slurp(report));
    CHECK(verdict.at("status") == "holds");

    // hand-written instance: I_{3,2} with q = (-4, 9)
    Json inst;
    inst["tensor"] = tensor_to_json(load_tensor(tensor_file));
    inst["q"] = Vec{-4.0, 9.0};
    store_json(inst_file, inst);

    const std::string solve_report = tmp.file("solve.json");
    CHECK(cli({"solve", "--in", inst_file.c_str(), "--method", "support-enum", "--out",
               solve_report.c_str()}) == 0);
    const Json rep = Json::parse(slurp(solve_report));
    bool found = false;
    for (const auto& s : rep.at("solutions"))
        if (std::abs(s.at("x")[0].get<double>() - 2.0) < 1e-8) found = true;
    CHECK(found);
}

TEST_CASE("cli: exit codes") {
    TempDir tmp;
    CHECK(cli({"classify", "--in", "/nonexistent.tensor", "--property", "semi_positive"}) == 1);
    CHECK(cli({"classify", "--in", "/nonexistent.tensor"}) == 1); // missing required flag
    CHECK(cli({"bogus"}) == 1);

    // a failing verdict still exits 0
    const std::string f = tmp.file("hard.tensor");
    store_tensor(f, matrix_tensor({{1, -2}, {-2, 1}}));
    CHECK(cli({"classify", "--in", f.c_str(), "--property", "semi_positive"}) == 0);
}

TEST_CASE("cli: reports are byte-identical for identical config and seed") {
    TempDir tmp;
    const std::string r1 = tmp.file("probe1.json");
    const std::string r2 = tmp.file("probe2.json");
    const std::string tensor_file = tmp.file("t.tensor");
    CHECK(cli({"gen", "--kind", "diag_boosted", "--order", "3", "--dim", "3", "--seed", "5",
               "--out", tensor_file.c_str()}) == 0);
    CHECK(cli({"probe", "--in", tensor_file.c_str(), "--samples", "12", "--seed", "9", "--out",
               r1.c_str()}) == 0);
    CHECK(cli({"probe", "--in", tensor_file.c_str(), "--samples", "12", "--seed", "9", "--out",
               r2.c_str()}) == 0);
    CHECK(slurp(r1) == slurp(r2));
}

TEST_CASE("cli: small suite run emits records plus trailing summary") {
    TempDir tmp;
    const std::string out = tmp.file("suite.jsonl");
    CHECK(cli({"suite", "--name", "kernels", "--trials", "5", "--seed", "1", "--out",
               out.c_str()}) == 0);
    std::istringstream lines(slurp(out));
    std::string line, last;
    int count = 0;
    while (std::getline(lines, line))
        if (!line.empty()) {
            last = line;
            ++count;
        }
    CHECK(count > 1);
    const Json summary = Json::parse(last);
    CHECK(summary.at("all_passed") == true);
}

TEST_CASE("cli: gen with spec file and instance output") {
    TempDir tmp;
    const std::string spec = tmp.file("spec.json");
    Json j;
    j["kind"] = "matrix_embed";
    j["order"] = 2;
    j["dim"] = 2;
    j["params"] = {0.0, -1.0, -1.0, 0.0};
    store_json(spec, j);
    const std::string out = tmp.file("m.tensor");
    CHECK(cli({"gen", "--spec", spec.c_str(), "--out", out.c_str()}) == 0);
    const Tensor t = load_tensor(out);
    CHECK(t.at(std::vector<int>{0, 1}) == -1.0);
}
