#include "vortex/cli.hpp"
#include "vortex/config.hpp"
#include "vortex/errors.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vortex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("vortex_cli_" + tag + "_" + std::to_string(::getpid())))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("config round trip is stable")
{
    const std::string text = R"(
rng_seed = 42
threads = 2
gamma = [1.0, -2.0, 0.1]

[domain]
kind = "annulus"
inner_radius = 0.35
periods = [-0.25, -0.75]

[flow]
grad_tol = 1e-9
collision_delta = 1e-5

[seeds]
kind = "annular"
angles = 6
levels = [0.5, 0.7, 0.9]

[scan]
delta = 0.02
samples = 300

[dynamics]
horizon = 2.5
tol = 1e-9
points = [[0.5, 0.0], [0.0, 0.6], [-0.7, 0.1]]

[audit]
samples = 2000
eps = 0.05
)";
    const RunConfig c = parse_config(text);
    CHECK(c.rng_seed == 42);
    CHECK(c.domain.kind == DomainKind::annulus);
    CHECK(c.domain.inner_radius == 0.35);
    CHECK(c.gamma == std::vector<double>{1.0, -2.0, 0.1});
    CHECK(c.seeds.kind == SeedKind::annular);
    CHECK(c.dynamics.start.size() == 3);
    const std::string canon = to_toml(c);
    CHECK(to_toml(parse_config(canon)) == canon);
    CHECK(to_toml(parse_config(to_toml(RunConfig{}))) == to_toml(RunConfig{}));
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(parse_config("bogus = 1"), SpecError);
    CHECK_THROWS_AS(parse_config("[domain]\nkind = \"square\""), SpecError);
    CHECK_THROWS_AS(parse_config("gamma = \"1,2\""), SpecError);
    CHECK_THROWS_AS(parse_config("[flow]\nunknown = 2"), SpecError);
    CHECK_THROWS_AS(parse_config("gamma = [1.0,"), SpecError);
}

TEST_CASE("domain and gamma flags")
{
    CHECK(parse_domain_flag("disk").kind == DomainKind::disk);
    const DomainSpec a = parse_domain_flag("annulus:0.3");
    CHECK(a.kind == DomainKind::annulus);
    CHECK(a.inner_radius == 0.3);
    CHECK_THROWS_AS(parse_domain_flag("annulus:x"), SpecError);
    CHECK_THROWS_AS(parse_domain_flag("square"), SpecError);
    CHECK(parse_gamma_list("1,-2,3.5") == std::vector<double>{1, -2, 3.5});
    CHECK_THROWS_AS(parse_gamma_list("1,,2"), SpecError);

    TempDir t("coeffs");
    std::ofstream(t.path / "f.txt") << "# f(w) = w + 0.2 w^2\n0 0\n1 0\n0.2 0\n";
    const DomainSpec c = parse_domain_flag("conformal:" + (t.path / "f.txt").string());
    CHECK(c.kind == DomainKind::conformal);
    REQUIRE(c.coeffs.size() == 3);
    CHECK(c.coeffs[2] == Point(0.2, 0));
}

TEST_CASE("exit codes")
{
    TempDir t("exit");
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"no-such-command"}).code == cli::kExitUsage);
    CHECK(run({"check-gamma", "--bogus"}).code == cli::kExitUsage);
    CHECK(run({"check-gamma", "--gamma", "1,0", "--out", t.path.string()}).code == cli::kExitUsage);
    CHECK(run({"check-gamma", "--domain", "annulus:2", "--gamma", "1"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);

    const Result r = run({"check-gamma", "--gamma", "1,-2", "--domain", "disk", "--out", t.path.string()});
    CHECK(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(slurp(t.path / "admissibility.json"));
    CHECK(j["theorem"] == "general");
    CHECK(j["delta_ok"] == true);
    CHECK(j["l_ok"] == "strict");
    CHECK(j["header"]["rng"] == "mt19937_64");
    CHECK(fs::exists(t.path / "run_config.toml"));

    // Checks whose hypotheses fail are skipped, not failed.
    const fs::path skip = t.path / "skip";
    CHECK(run({"verify-lemmas", "--gamma", "1,1,-0.5", "--samples", "200", "--out", skip.string()}).code ==
          cli::kExitOk);
    const auto l = nlohmann::json::parse(slurp(skip / "lemmas.json"));
    CHECK(l["interior_collision"]["applicable"] == false);

    // A flow that collides instead of converging is a finding.
    std::ofstream(t.path / "collide.toml") << "gamma = [1.0, 1.0]\n[start]\npoints = [[0.01, 0.0], [-0.01, 0.005]]\n";
    CHECK(run({"find-critical", "--config", (t.path / "collide.toml").string(), "--out", (t.path / "c").string()})
              .code == cli::kExitFinding);
    CHECK(run({"audit-greens", "--samples", "10", "--out", (t.path / "a").string()}).code == cli::kExitUsage);
}

TEST_CASE("dry run validates without writing")
{
    TempDir t("dry");
    const fs::path dir = t.path / "never";
    const Result r = run({"sweep", "--gamma", "1,-2", "--dry-run", "--out", dir.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("configuration ok") != std::string::npos);
    CHECK_FALSE(fs::exists(dir));
    CHECK(run({"simulate", "--domain", "annulus:1.5", "--dry-run"}).code == cli::kExitUsage);
}

TEST_CASE("config file drives a run")
{
    TempDir t("config");
    std::ofstream(t.path / "run.toml") << "gamma = [1.0, -2.0]\n[start]\npoints = [[0.0, 0.0], [0.3, 0.0]]\n";
    const fs::path out = t.path / "out";
    const Result r = run({"find-critical", "--config", (t.path / "run.toml").string(), "--out", out.string()});
    CHECK(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(slurp(out / "critical_point.json"));
    CHECK(j["result"]["grad_norm"].get<double>() < 1e-8);
    const std::string trace = slurp(out / "trace.csv");
    CHECK(trace.rfind("t,x_1,y_1,x_2,y_2,H,grad_norm\n", 0) == 0);
}

TEST_CASE("fixed seed gives identical bytes")
{
    TempDir t("det");
    const fs::path a = t.path / "a", b = t.path / "b";
    for (const auto& dir : {a, b}) {
        const std::string threads = dir == a ? "1" : "3";
        CHECK(run({"scan-mdelta", "--gamma", "1,-2", "--samples", "500", "--seed", "7", "--threads", threads,
                   "--out", dir.string()})
                  .code == cli::kExitOk);
    }
    CHECK(slurp(a / "mdelta.json") == slurp(b / "mdelta.json"));
    CHECK(slurp(a / "run_config.toml").size() > 0);
}
