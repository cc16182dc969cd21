#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rankfuse/io/artifacts.hpp"
#include "rankfuse/io/csv.hpp"
#include "rankfuse/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rankfuse;

namespace {

const std::string kCli = RANKFUSE_CLI_PATH;
const std::string kFixtures = RANKFUSE_FIXTURE_DIR;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null >/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rankfuse-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("csv round trip on the shipped fixture") {
    const RawRankings raw = read_rankings_csv(kFixtures + "/nfl-2014-wk12/rankings.csv");
    const CovariatesFile cov = read_covariates_csv(kFixtures + "/nfl-2014-wk12/covariates.csv");
    CHECK(cov.entities.n() == 24);
    CHECK(cov.covariates.p() == 11);
    const auto lists = assemble_rankings(raw, cov.entities);
    CHECK(lists.size() == 13);
    for (const auto& tau : lists) CHECK(tau.is_full(24));
    CHECK(cov.entities.index_of("Andrew Luck") == 0);
}

TEST_CASE("csv error paths") {
    const fs::path dir = temp_dir("csv");
    // missing position column
    write_file(dir / "bad_header.csv", "ranker_id,block_id,entity_id\nr,1,a\n");
    CHECK_THROWS_AS(read_rankings_csv((dir / "bad_header.csv").string()), ParseError);
    CHECK_THROWS_WITH_AS(read_rankings_csv((dir / "bad_header.csv").string()),
                         doctest::Contains("position"), ParseError);
    // non-integer position
    write_file(dir / "bad_pos.csv",
               "ranker_id,block_id,position,entity_id\nr,1,x,a\n");
    CHECK_THROWS_AS(read_rankings_csv((dir / "bad_pos.csv").string()), ParseError);
    // tie: duplicate position in a block
    write_file(dir / "tie.csv",
               "ranker_id,block_id,position,entity_id\nr,1,1,a\nr,1,1,b\n");
    const RawRankings tie = read_rankings_csv((dir / "tie.csv").string());
    CHECK_THROWS_AS(assemble_rankings(tie, EntitySet({"a", "b"})), ValidationError);
    // duplicate entity within a ranker
    write_file(dir / "dup.csv",
               "ranker_id,block_id,position,entity_id\nr,1,1,a\nr,1,2,a\n");
    const RawRankings dup = read_rankings_csv((dir / "dup.csv").string());
    CHECK_THROWS_AS(assemble_rankings(dup, EntitySet({"a", "b"})), ValidationError);
    // gap in positions
    write_file(dir / "gap.csv",
               "ranker_id,block_id,position,entity_id\nr,1,1,a\nr,1,3,b\n");
    const RawRankings gap = read_rankings_csv((dir / "gap.csv").string());
    CHECK_THROWS_AS(assemble_rankings(gap, EntitySet({"a", "b"})), ValidationError);
    // unknown entity id
    write_file(dir / "unknown.csv",
               "ranker_id,block_id,position,entity_id\nr,1,1,zz\n");
    const RawRankings unknown = read_rankings_csv((dir / "unknown.csv").string());
    CHECK_THROWS_AS(assemble_rankings(unknown, EntitySet({"a", "b"})), ValidationError);
}

TEST_CASE("draws store round trip") {
    const fs::path dir = temp_dir("draws");
    DrawsStore store;
    store.scalar_names = {"mu[a]", "mu[b]", "beta[x]"};
    store.values.resize(5, 3);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 3; ++c) store.values(r, c) = 10.0 * r + c + 0.25;
    store.chain_sizes = {3, 2};
    write_draws((dir / "draws").string(), store);
    const DrawsStore loaded = read_draws((dir / "draws").string());
    CHECK(loaded.scalar_names == store.scalar_names);
    CHECK(loaded.chain_sizes == store.chain_sizes);
    CHECK((loaded.values - store.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cli: bc on a single list reproduces the list") {
    const fs::path dir = temp_dir("bc");
    write_file(dir / "r.csv",
               "ranker_id,block_id,position,entity_id\n"
               "r,1,1,beta\nr,1,2,alpha\nr,1,3,delta\n");
    const int code = run("aggregate --model bc --rankings " + (dir / "r.csv").string() +
                         " --out " + (dir / "out").string());
    CHECK(code == 0);
    const json result = json::parse(slurp(dir / "out" / "result.json"));
    CHECK(result["aggregated_order"] ==
          json::array({"beta", "alpha", "delta"}));
    const std::string csv = slurp(dir / "out" / "aggregate.csv");
    CHECK(csv.rfind("entity,score,rank\n", 0) == 0);
}

TEST_CASE("cli: malformed csv exits 2 naming the column") {
    const fs::path dir = temp_dir("malformed");
    write_file(dir / "r.csv", "ranker_id,block_id,entity_id\nr,1,a\n");
    const int code = run("aggregate --model bc --rankings " + (dir / "r.csv").string() +
                         " --out " + (dir / "out").string());
    CHECK(code == 2);
}

TEST_CASE("cli: tie in input exits 3") {
    const fs::path dir = temp_dir("tie3");
    write_file(dir / "r.csv",
               "ranker_id,block_id,position,entity_id\nr,1,1,a\nr,1,1,b\n");
    const int code = run("aggregate --model bc --rankings " + (dir / "r.csv").string() +
                         " --out " + (dir / "out").string());
    CHECK(code == 3);
}

TEST_CASE("cli: pl on disconnected data exits 4") {
    const fs::path dir = temp_dir("pl4");
    write_file(dir / "r.csv",
               "ranker_id,block_id,position,entity_id\n"
               "r,1,1,a\nr,1,2,b\n"
               "s,1,1,c\ns,1,2,d\n");
    const int code = run("aggregate --model pl --rankings " + (dir / "r.csv").string() +
                         " --out " + (dir / "out").string());
    CHECK(code == 4);
}

TEST_CASE("cli: gamma rejected outside barcm") {
    const fs::path dir = temp_dir("gamma3");
    write_file(dir / "r.csv",
               "ranker_id,block_id,position,entity_id\nr,1,1,a\nr,1,2,b\n");
    const int code = run("aggregate --model barc --gamma 2 --iterations 50 --burn-in 10 "
                         "--chains 1 --rankings " + (dir / "r.csv").string() +
                         " --out " + (dir / "out").string());
    CHECK(code == 3);
}

TEST_CASE("cli: invalid scenario id exits 2") {
    const fs::path dir = temp_dir("scen2");
    write_file(dir / "spec.json", "{\"experiment\":\"comparison\",\"scenario\":9}\n");
    const int code = run("simulate --spec " + (dir / "spec.json").string() + " --out " +
                         (dir / "out").string());
    CHECK(code == 2);
}

TEST_CASE("cli: simulate smoke run is deterministic") {
    const fs::path dir = temp_dir("sim");
    write_file(dir / "spec.json",
               "{\"experiment\":\"comparison\",\"scenario\":1,\"n\":12,\"m\":4,"
               "\"replications\":2,\"seed\":5,\"iterations\":200,\"burn_in\":50,"
               "\"methods\":[\"BC\",\"MC2\",\"BARC\"]}\n");
    REQUIRE(run("simulate --spec " + (dir / "spec.json").string() + " --out " +
                (dir / "a").string()) == 0);
    REQUIRE(run("simulate --spec " + (dir / "spec.json").string() + " --out " +
                (dir / "b").string()) == 0);
    const std::string a = slurp(dir / "a" / "results.csv");
    CHECK(a == slurp(dir / "b" / "results.csv"));
    // 2 replications x 3 methods data rows
    CHECK(std::count(a.begin(), a.end(), '\n') == 1 + 2 * 3);
}

TEST_CASE("cli: aggregate + keep-draws + diagnose round trip") {
    const fs::path dir = temp_dir("diag");
    write_file(dir / "r.csv",
               "ranker_id,block_id,position,entity_id\n"
               "r,1,1,a\nr,1,2,b\nr,1,3,c\n"
               "s,1,1,a\ns,1,2,c\ns,1,3,b\n");
    const int code = run("aggregate --model barc --rankings " + (dir / "r.csv").string() +
                         " --iterations 400 --burn-in 100 --chains 2 --seed 3 --keep-draws" +
                         " --out " + (dir / "out").string());
    REQUIRE(code == 0);
    CHECK(fs::exists(dir / "out" / "result.json"));
    CHECK(fs::exists(dir / "out" / "diagnostics.json"));
    CHECK(fs::exists(dir / "out" / "draws.bin"));
    const int diag = run("diagnose --draws " + (dir / "out" / "draws").string() + " --out " +
                         (dir / "out" / "d2.json").string());
    CHECK(diag == 0);
    const json d = json::parse(slurp(dir / "out" / "d2.json"));
    CHECK(d["chains"] == 2);
    CHECK(d["scalars"].size() == 3);  // three mu coordinates, p = 0
    // constant synthetic chain: diagnose flags constancy, ESS = N
    DrawsStore store;
    store.scalar_names = {"mu[const]"};
    store.values = Eigen::MatrixXd::Constant(200, 1, 1.5);
    store.chain_sizes = {200};
    write_draws((dir / "const").string(), store);
    REQUIRE(run("diagnose --draws " + (dir / "const").string() + " --out " +
                (dir / "const.json").string()) == 0);
    const json cd = json::parse(slurp(dir / "const.json"));
    CHECK(cd["scalars"][0]["constant"] == true);
    CHECK(cd["scalars"][0]["ess"] == 200.0);
}

TEST_CASE("cli: stdout is silent without --json and carries JSON with it") {
    const fs::path dir = temp_dir("stdout");
    write_file(dir / "r.csv",
               "ranker_id,block_id,position,entity_id\nr,1,1,a\nr,1,2,b\n");
    const std::string base = kCli + " aggregate --model bc --rankings " +
                             (dir / "r.csv").string() + " --out " + (dir / "out").string();
    {
        const int status = std::system((base + " 2>/dev/null >" + (dir / "o1").string()).c_str());
        REQUIRE(WEXITSTATUS(status) == 0);
        CHECK(slurp(dir / "o1").empty());
    }
    {
        const int status =
            std::system((base + " --json 2>/dev/null >" + (dir / "o2").string()).c_str());
        REQUIRE(WEXITSTATUS(status) == 0);
        const json j = json::parse(slurp(dir / "o2"));
        CHECK(j["model"] == "bc");
        CHECK(j["top"] == "a");
    }
}

TEST_CASE("cli: diagnose reproduces the AR(1) effective-sample-size ratio") {
    const fs::path dir = temp_dir("ar1");
    DrawsStore store;
    store.scalar_names = {"mu[x]"};
    const int N = 10000;
    store.values.resize(N, 1);
    std::mt19937_64 gen(99);
    std::normal_distribution<double> normal;
    store.values(0, 0) = normal(gen);
    for (int t = 1; t < N; ++t)
        store.values(t, 0) = 0.9 * store.values(t - 1, 0) + normal(gen);
    store.chain_sizes = {N};
    write_draws((dir / "draws").string(), store);
    REQUIRE(run("diagnose --draws " + (dir / "draws").string() + " --out " +
                (dir / "d.json").string()) == 0);
    const json d = json::parse(slurp(dir / "d.json"));
    const double ess = d["scalars"][0]["ess"].get<double>();
    const double expected = N * (1.0 - 0.9) / (1.0 + 0.9);
    CHECK(std::abs(ess - expected) / expected < 0.3);
}

TEST_CASE("cli: barcw on the NFL fixture puts Andrew Luck first") {
    const fs::path dir = temp_dir("nfl");
    const int code = run("aggregate --model barcw --rankings " + kFixtures +
                         "/nfl-2014-wk12/rankings.csv --covariates " + kFixtures +
                         "/nfl-2014-wk12/covariates.csv --iterations 600 --burn-in 100 "
                         "--chains 2 --seed 12 --out " + (dir / "out").string());
    REQUIRE(code == 0);
    const json result = json::parse(slurp(dir / "out" / "result.json"));
    CHECK(result["aggregated_order"][0] == "Andrew Luck");
    CHECK(result["weights_summary"].size() == 13);
}

TEST_CASE("cli: identical seeds give byte-identical artifacts") {
    const fs::path dir = temp_dir("repro");
    const std::string rankings = kFixtures + "/nfl-2014-wk12/rankings.csv";
    const std::string covariates = kFixtures + "/nfl-2014-wk12/covariates.csv";
    for (const char* sub : {"a", "b"}) {
        REQUIRE(run("aggregate --model barcw --rankings " + rankings + " --covariates " +
                    covariates + " --iterations 300 --burn-in 100 --chains 2 --seed 77 " +
                    "--threads 2 --out " + (dir / sub).string()) == 0);
    }
    CHECK(slurp(dir / "a" / "aggregate.csv") == slurp(dir / "b" / "aggregate.csv"));
    CHECK(slurp(dir / "a" / "result.json") == slurp(dir / "b" / "result.json"));
}
