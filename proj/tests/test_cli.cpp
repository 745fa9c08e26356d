// End-to-end runs of the installed command line binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "core/fileio.hpp"
#include "support/tempdir.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string command = std::string(DUALWEB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    while (std::size_t got = std::fread(buffer, 1, sizeof(buffer), pipe)) {
        result.output.append(buffer, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace

TEST_CASE("subcommand chain: synth, builders, metrics, communities, qap, layout, render") {
    testsupport::TempDir dir("cli_chain");
    const std::string data = dir.str("data");

    auto synth = run("synth --out-dir " + data + " --seed 5");
    CHECK(synth.exit_code == 0);

    auto audience = run("build-audience --meta " + data + "/nodes.csv --log " + data +
                        "/visits.csv --panel " + data + "/panel.json --out " +
                        dir.str("audience.json"));
    REQUIRE(audience.exit_code == 0);

    auto hyperlink = run("build-hyperlink --meta " + data + "/nodes.csv --edges " + data +
                         "/edges.csv --out " + dir.str("hyperlink.json"));
    REQUIRE(hyperlink.exit_code == 0);

    auto metrics = run("metrics --graph " + dir.str("audience.json") + " --out " +
                       dir.str("stats.json") + " --ccdf " + dir.str("ccdf.csv") + " --plot " +
                       dir.str("deg.svg"));
    CHECK(metrics.exit_code == 0);
    CHECK(metrics.output.find("clustering_coefficient") != std::string::npos);
    CHECK(std::filesystem::exists(dir.str("ccdf.csv")));
    CHECK(std::filesystem::exists(dir.str("deg.svg")));

    auto communities = run("communities --graph " + dir.str("audience.json") + " --seed 7 --out " +
                           dir.str("partition.json"));
    CHECK(communities.exit_code == 0);
    CHECK(std::filesystem::exists(dir.str("partition.json")));

    auto qap = run("qap --a " + dir.str("audience.json") + " --b " + dir.str("hyperlink.json") +
                   " --perms 200 --seed 42 --out " + dir.str("qap.json"));
    CHECK(qap.exit_code == 0);
    CHECK(qap.output.find("r_observed") != std::string::npos);

    auto layout = run("layout --graph " + dir.str("audience.json") + " --seed 3 --iterations 80" +
                      " --out " + dir.str("pos.json"));
    CHECK(layout.exit_code == 0);

    auto render = run("render --graph " + dir.str("audience.json") + " --pos " +
                      dir.str("pos.json") + " --partition " + dir.str("partition.json") +
                      " --meta " + data + "/nodes.csv --out " + dir.str("map.svg"));
    CHECK(render.exit_code == 0);
    CHECK(dualweb::read_text_file(dir.str("map.svg")).find("<svg") != std::string::npos);
}

TEST_CASE("reproduce prints the side-by-side table and exits zero") {
    testsupport::TempDir dir("cli_reproduce");
    dualweb::write_text_file(dir.str("config.json"),
                             R"({"synth": {"n_sites": 40, "n_blocks": 2, "n_global_sites": 2,
                                 "n_users": 800},
                                 "qap": {"permutations": 100},
                                 "layout": {"iterations": 50}})");
    auto result =
        run("reproduce --config " + dir.str("config.json") + " --out-dir " + dir.str("out") +
            " --seed 5");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("clustering_coefficient") != std::string::npos);
    CHECK(result.output.find("audience") != std::string::npos);
    CHECK(std::filesystem::exists(dir.str("out/report.json")));
}

TEST_CASE("failures exit nonzero with a diagnostic") {
    auto missing = run("metrics --graph /no/such/graph.json");
    CHECK(missing.exit_code != 0);
    CHECK(missing.output.find("error") != std::string::npos);

    auto usage = run("not-a-subcommand");
    CHECK(usage.exit_code != 0);
}

TEST_CASE("the seed environment fallback is honored") {
    testsupport::TempDir dir("cli_env");
    // run synth twice with the same env seed and once with another
    const std::string base = "synth --out-dir ";
    setenv("DUALWEB_SEED", "1234", 1);
    auto a = run(base + dir.str("a"));
    auto b = run(base + dir.str("b"));
    setenv("DUALWEB_SEED", "99", 1);
    auto c = run(base + dir.str("c"));
    unsetenv("DUALWEB_SEED");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    REQUIRE(c.exit_code == 0);
    CHECK(dualweb::read_text_file(dir.str("a/visits.csv")) ==
          dualweb::read_text_file(dir.str("b/visits.csv")));
    CHECK(dualweb::read_text_file(dir.str("a/visits.csv")) !=
          dualweb::read_text_file(dir.str("c/visits.csv")));
}
