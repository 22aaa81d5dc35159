#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hml/cli.hpp"

using nlohmann::ordered_json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
    ordered_json doc;  // parsed stdout when it is JSON, else null
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = hml::cli_run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    if (!r.out.empty() && r.out.front() == '{')
        r.doc = ordered_json::parse(r.out, nullptr, false);
    return r;
}

// Rebuilds the argument vector from a report's command echo.
std::vector<std::string> args_from_echo(const ordered_json& command) {
    std::vector<std::string> args;
    args.push_back(command.at("subcommand").get<std::string>());
    if (command.contains("name")) args.push_back(command["name"].get<std::string>());
    for (const auto& [key, value] : command.items()) {
        if (key == "subcommand" || key == "name") continue;
        args.push_back("--" + key + "=" + value.get<std::string>());
    }
    return args;
}

struct ConfigGuard {
    explicit ConfigGuard(const std::string& path) { setenv("HML_CONFIG", path.c_str(), 1); }
    ~ConfigGuard() { unsetenv("HML_CONFIG"); }
};

}  // namespace

TEST_CASE("moments on the flat measure") {
    RunResult r = run({"moments", "--measure", "lebesgue", "-N", "4"});
    REQUIRE(r.code == 0);
    REQUIRE_FALSE(r.doc.is_discarded());
    CHECK(r.doc["schema"] == "hml-report/1");
    CHECK(r.doc["command"]["measure"] == "lebesgue");
    CHECK(r.doc["payload"]["measure"] == "lebesgue");
    const ordered_json& table = r.doc["payload"]["table"];
    CHECK(table["columns"] == ordered_json::array({"n", "moment", "scaled"}));
    REQUIRE(table["rows"].size() == 5);
    CHECK(table["rows"][4][1].get<double>() == doctest::Approx(0.2).epsilon(1e-15));
    for (const auto& row : table["rows"])
        CHECK(row[2].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("moments csv output is fully pinned") {
    RunResult r = run({"moments", "-m", "lebesgue", "-N", "1", "--format", "csv"});
    REQUIRE(r.code == 0);
    const std::string expect =
        "# subcommand = moments\n"
        "# measure = lebesgue\n"
        "# N = 1\n"
        "# format = csv\n"
        "# measure = lebesgue\n"
        "# N = 1\n"
        "n,moment,scaled\n"
        "0,1,1\n"
        "1,0.5,1\n";
    CHECK(r.out == expect);
}

TEST_CASE("moments of an atom and of a power weight") {
    RunResult atom = run({"moments", "-m", "atoms:[(0.0,1.0)]", "-N", "2"});
    REQUIRE(atom.code == 0);
    CHECK(atom.doc["payload"]["measure"] == "atoms:[(0,1)]");
    const ordered_json& rows = atom.doc["payload"]["table"]["rows"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][1] == 1.0);
    CHECK(rows[1][1] == 0.0);
    CHECK(rows[2][2] == 0.0);

    RunResult pw = run({"moments", "-m", "powerweight:s=1", "-N", "1"});
    REQUIRE(pw.code == 0);
    const ordered_json& prows = pw.doc["payload"]["table"]["rows"];
    CHECK(prows[0][1].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(prows[0][2].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(prows[1][1].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(prows[1][2].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("moments of a density tabulates both parts") {
    RunResult r = run({"moments", "-m", "counterexample:K=2", "-N", "4"});
    REQUIRE(r.code == 0);
    const ordered_json& table = r.doc["payload"]["table"];
    CHECK(table["columns"].size() == 5);
    CHECK(table["rows"][0][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table["rows"][1][1].get<double>() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(table["rows"][2][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(table["rows"][4][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("criterion condition2 on a unit atom at the origin") {
    RunResult r = run({"criterion", "condition2", "-m", "atoms:[(0.0,1.0)]"});
    REQUIRE(r.code == 0);
    CHECK(r.doc["command"]["grid-J"] == "28");
    CHECK(r.doc["payload"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.doc["payload"]["argmax_re"].get<double>() == 0.0);
    CHECK(r.doc["payload"]["table"]["columns"] ==
          ordered_json::array({"radius", "max_value"}));
}

TEST_CASE("criterion condition2 accepts a density spec") {
    RunResult r = run({"criterion", "condition2", "-m", "counterexample:K=2", "-J", "10",
                       "--grid-angles", "64"});
    REQUIRE(r.code == 0);
    CHECK(r.doc["payload"]["value"].get<double>() > 0.0);
    CHECK(r.doc["payload"]["value"].get<double>() < 10.0);
}

TEST_CASE("criterion carleson-box pins the dyadic ratio") {
    RunResult r = run({"criterion", "carleson-box", "-m", "powerweight:s=-0.5", "--depth", "10"});
    REQUIRE(r.code == 0);
    CHECK(r.doc["payload"]["argmax_depth"] == 10);
    // tail(h)/h = 2 sqrt(h)/h at s = -0.5, so level 10 gives 2 * 2^5 exactly.
    CHECK(r.doc["payload"]["value"].get<double>() == doctest::Approx(64.0).epsilon(1e-13));
    CHECK(r.doc["payload"]["table"]["rows"].size() == 11);
}

TEST_CASE("criterion box4 on an atom") {
    RunResult r = run({"criterion", "box4", "-m", "atoms:[(0.5,1.0)]", "--depth", "6", "-R", "32",
                       "--quad-angles", "64"});
    REQUIRE(r.code == 0);
    CHECK(r.doc["payload"]["table"]["columns"] ==
          ordered_json::array({"generation", "box_value"}));
    CHECK(r.doc["payload"]["table"]["rows"].size() == 7);
    CHECK(r.doc["payload"]["value"].get<double>() > 0.0);
}

TEST_CASE("criterion moment-decay separates bounded from unbounded") {
    RunResult grow = run({"criterion", "moment-decay", "-m", "powerweight:s=-0.5", "-N", "4096"});
    REQUIRE(grow.code == 0);
    CHECK(grow.doc["command"]["threshold"] == "100");
    CHECK(grow.doc["payload"]["exceeded"] == true);
    CHECK(grow.doc["payload"]["sup"].get<double>() > 100.0);

    RunResult flat = run({"criterion", "moment-decay", "-m", "lebesgue", "-N", "4096"});
    REQUIRE(flat.code == 0);
    CHECK(flat.doc["payload"]["exceeded"] == false);
    CHECK(flat.doc["payload"]["sup"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("usage errors exit 2") {
    RunResult bad_name = run({"criterion", "bogus", "-m", "lebesgue"});
    CHECK(bad_name.code == 2);
    CHECK(bad_name.err.find("condition2") != std::string::npos);

    RunResult bad_spec = run({"moments", "-m", "gaussian"});
    CHECK(bad_spec.code == 2);
    CHECK(bad_spec.err.find("position") != std::string::npos);

    RunResult density = run({"opnorm", "-m", "counterexample:K=3"});
    CHECK(density.code == 2);
    CHECK(density.err.find("radial") != std::string::npos);

    RunResult bad_space = run({"opnorm", "-m", "lebesgue", "--space", "l2"});
    CHECK(bad_space.code == 2);

    RunResult no_args = run({});
    CHECK(no_args.code == 2);

    RunResult kernel_density = run({"criterion", "carleson-kernel", "-m", "counterexample:K=2"});
    CHECK(kernel_density.code == 2);
    CHECK(kernel_density.err.find("radial") != std::string::npos);
}

TEST_CASE("opnorm pins the two-by-two section") {
    RunResult r = run({"opnorm", "-m", "lebesgue", "-N", "2"});
    REQUIRE(r.code == 0);
    const double closed = (4.0 + std::sqrt(13.0)) / 6.0;
    CHECK(r.doc["payload"]["value"].get<double>() == doctest::Approx(closed).epsilon(1e-9));
    CHECK(r.doc["payload"]["N"] == 2);
}

TEST_CASE("opnorm dalpha:1 equals h2") {
    RunResult h2 = run({"opnorm", "-m", "lebesgue", "-N", "64"});
    RunResult d1 = run({"opnorm", "-m", "lebesgue", "-N", "64", "--space", "dalpha:1"});
    REQUIRE(h2.code == 0);
    REQUIRE(d1.code == 0);
    CHECK(d1.doc["command"]["space"] == "dalpha:1");
    CHECK(d1.doc["payload"]["value"].get<double>() ==
          doctest::Approx(h2.doc["payload"]["value"].get<double>()).epsilon(1e-10));
}

TEST_CASE("opnorm N-list emits a profile without a scalar value") {
    RunResult r = run({"opnorm", "-m", "lebesgue", "--N-list", "1,2,4"});
    REQUIRE(r.code == 0);
    CHECK(r.doc["command"]["N-list"] == "1,2,4");
    CHECK(r.doc["payload"]["table"]["rows"].size() == 3);
    CHECK_FALSE(r.doc["payload"].contains("value"));
}

TEST_CASE("opnorm starved of iterations reports the numerical failure") {
    RunResult r = run({"opnorm", "-m", "lebesgue", "-N", "8", "--max-iter", "1"});
    CHECK(r.code == 3);
    REQUIRE_FALSE(r.doc.is_discarded());
    CHECK(r.doc["payload"]["error"]["type"] == "non-convergence");
    CHECK(r.doc["payload"]["error"]["iterations"].get<long>() >= 1);
    CHECK(r.doc["provenance"][0] == "run aborted, see payload.error");
}

TEST_CASE("experiments run end to end") {
    RunResult identity = run({"experiment", "identity", "--samples", "10", "--seed", "7"});
    CHECK(identity.code == 0);
    CHECK(identity.doc["payload"]["name"] == "identity");
    CHECK(identity.doc["payload"]["pass"] == true);

    RunResult hilbert = run({"experiment", "hilbert", "--N-list", "1,2,16"});
    CHECK(hilbert.code == 0);
    CHECK(hilbert.doc["payload"]["pass"] == true);

    RunResult ce = run({"experiment", "counterexample", "-K", "3", "-J", "10", "--grid-angles",
                        "64", "-R", "64", "--quad-angles", "128"});
    CHECK(ce.code == 0);
    CHECK(ce.doc["payload"]["pass"] == true);

    RunResult pairing =
        run({"experiment", "pairing", "-m", "lebesgue", "--degree", "8", "--trials", "20"});
    CHECK(pairing.code == 0);
    CHECK(pairing.doc["payload"]["pass"] == true);
}

TEST_CASE("a failing experiment exits 1") {
    // s = -0.05 sits too close to the boundary family for any ladder this
    // coarse to call: growth stays under 1.5x while the plateau window 5%
    // is missed, so verdicts land mixed and the scan must fail.
    RunResult r = run({"experiment", "family-scan", "--s-list", "-0.05", "-N", "4", "-J", "8",
                       "--grid-angles", "32", "-R", "32", "--quad-angles", "64", "--depth", "8"});
    CHECK(r.code == 1);
    REQUIRE_FALSE(r.doc.is_discarded());
    CHECK(r.doc["payload"]["pass"] == false);
}

TEST_CASE("reruns are deterministic outside duration") {
    const std::vector<std::string> args = {"criterion", "condition2", "-m", "powerweight:s=0.5",
                                           "-J", "8", "--grid-angles", "32"};
    RunResult a = run(args);
    RunResult b = run(args);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.doc["payload"] == b.doc["payload"]);
    CHECK(a.doc["command"] == b.doc["command"]);
    const std::string marker = ",\"duration_ms\":";
    const std::string pa = a.out.substr(0, a.out.find(marker));
    const std::string pb = b.out.substr(0, b.out.find(marker));
    CHECK(pa == pb);
}

TEST_CASE("the command echo reproduces the payload") {
    const std::vector<std::vector<std::string>> cases = {
        {"moments", "-m", "powerweight:s=0.5", "-N", "3"},
        {"criterion", "moment-decay", "-m", "powerweight:s=-0.5", "-N", "256", "--threshold",
         "10"},
        {"criterion", "condition2", "-m", "atoms:[(0.5,0.25)]", "-J", "8", "--grid-angles", "32"},
        {"opnorm", "-m", "lebesgue", "-N", "16", "--tol", "1e-8"},
        {"experiment", "pairing", "-m", "lebesgue", "--degree", "6", "--trials", "10", "--seed",
         "11"},
    };
    for (const auto& args : cases) {
        CAPTURE(args[0]);
        RunResult first = run(args);
        REQUIRE(first.code == 0);
        RunResult second = run(args_from_echo(first.doc["command"]));
        REQUIRE(second.code == 0);
        CHECK(second.doc["command"] == first.doc["command"]);
        CHECK(second.doc["payload"] == first.doc["payload"]);
    }
}

TEST_CASE("config file fills in unset flags") {
    const std::string path = "hml_test_config.txt";
    {
        std::ofstream f(path);
        f << "# comment line\n";
        f << "N = 2\n";
        f << "format = csv\n";
    }
    ConfigGuard guard(path);

    RunResult cfg = run({"moments", "-m", "lebesgue"});
    REQUIRE(cfg.code == 0);
    CHECK(cfg.out.find("n,moment,scaled\n") != std::string::npos);
    CHECK(cfg.out.find("2,0.33333333333333331,1\n") != std::string::npos);
    CHECK(cfg.out.find("3,") == std::string::npos);

    RunResult flag = run({"moments", "-m", "lebesgue", "-N", "4"});
    REQUIRE(flag.code == 0);
    CHECK(flag.out.find("4,0.20000000000000001,1\n") != std::string::npos);
    CHECK(flag.out.find("n,moment,scaled\n") != std::string::npos);

    std::remove(path.c_str());
}

TEST_CASE("a broken config file is a usage error") {
    const std::string path = "hml_bad_config.txt";
    {
        std::ofstream f(path);
        f << "no equals sign here\n";
    }
    ConfigGuard guard(path);
    RunResult r = run({"moments", "-m", "lebesgue", "-N", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("config") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("help requests exit 0") {
    RunResult top = run({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("moments") != std::string::npos);

    RunResult sub = run({"moments", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--measure") != std::string::npos);
}

TEST_CASE("reports can be written to a file") {
    const std::string path = "hml_test_report.json";
    RunResult r = run({"moments", "-m", "lebesgue", "-N", "2", "-o", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    ordered_json doc = ordered_json::parse(buf.str(), nullptr, false);
    REQUIRE_FALSE(doc.is_discarded());
    CHECK(doc["command"]["output"] == path);
    CHECK(doc["payload"]["table"]["rows"].size() == 3);
    std::remove(path.c_str());
}
