#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "errors.hpp"
#include "report.hpp"

using namespace rmt;

namespace {

std::string write_temp(const std::string& contents) {
    static int counter = 0;
    std::string path = "test_config_" + std::to_string(counter++) + ".tmp";
    std::ofstream out(path);
    out << contents;
    return path;
}

}  // namespace

TEST_CASE("config file parsing") {
    SUBCASE("valid file resolves") {
        const auto path = write_temp(
            "# comment\n"
            "ensemble=u\n"
            "n = 64\n"
            "a=0.05\n"
            "k=2.5\n"
            "samples=500\n"
            "seed=9\n");
        const auto opts = config::load_file(path);
        const auto cfg = config::resolve(opts, "moments");
        CHECK(cfg.ensemble.n == 64);
        CHECK(cfg.k == 2.5);
        CHECK(cfg.samples == 500);
        CHECK(cfg.seed == 9);
        std::remove(path.c_str());
    }
    SUBCASE("unknown key is named") {
        const auto path = write_temp("alpha=3\n");
        CHECK_THROWS_WITH_AS(config::load_file(path), doctest::Contains("alpha"),
                             Error);
        std::remove(path.c_str());
    }
    SUBCASE("parse error carries the line number") {
        const auto path = write_temp("ensemble=u\nnot a key value line\n");
        CHECK_THROWS_WITH_AS(config::load_file(path), doctest::Contains(":2"),
                             Error);
        std::remove(path.c_str());
    }
    SUBCASE("k below the family floor is a validity error") {
        const auto path = write_temp("ensemble=u\nn=8\na=0.1\nk=0.5\n");
        const auto opts = config::load_file(path);
        CHECK_THROWS_WITH_AS(config::resolve(opts, "moments"),
                             doctest::Contains("K>1"), Error);
        std::remove(path.c_str());
    }
}

TEST_CASE("flag-style overrides win by ordering") {
    config::Options opts;
    config::set_key(opts, "ensemble", "u");
    config::set_key(opts, "n", "16");
    config::set_key(opts, "a", "0.2,0.1");
    config::set_key(opts, "k", "2");
    config::set_key(opts, "n", "32");  // override
    const auto cfg = config::resolve(opts, "moments");
    CHECK(cfg.ensemble.n == 32);
    REQUIRE(cfg.a_list.size() == 2);
    CHECK(cfg.a_list[0] == 0.2);
}

TEST_CASE("usage validations") {
    config::Options opts;
    config::set_key(opts, "ensemble", "usp");
    config::set_key(opts, "n", "16");
    config::set_key(opts, "a", "0.1");
    config::set_key(opts, "k", "4");
    SUBCASE("no dense usp backend") {
        config::set_key(opts, "backend", "dense");
        CHECK_THROWS_WITH_AS(config::resolve(opts, "moments"),
                             doctest::Contains("dense"), Error);
    }
    SUBCASE("usp k floor named in the error") {
        config::set_key(opts, "k", "2");
        CHECK_THROWS_WITH_AS(config::resolve(opts, "moments"),
                             doctest::Contains("K>3"), Error);
    }
    SUBCASE("scan needs two a values") {
        CHECK_THROWS_AS(config::resolve(opts, "scan"), Error);
    }
    SUBCASE("sample works without k") {
        config::Options s;
        config::set_key(s, "ensemble", "u");
        config::set_key(s, "n", "4");
        config::set_key(s, "count", "2");
        const auto cfg = config::resolve(s, "sample");
        CHECK(cfg.samples == 2);
    }
}

TEST_CASE("csv schema is pinned") {
    CHECK(std::string(report::kMomentsCsvHeader) ==
          "ensemble,N,a,K,samples,estimate,stderr,prediction,ratio,max_share,"
          "seed,backend");
    experiments::ExperimentConfig cfg;
    cfg.ensemble = {ensembles::Family::unitary, 8};
    cfg.a_list = {0.1};
    cfg.k = 2.0;
    cfg.samples = 100;
    cfg.seed = 3;
    cfg.backend = ensembles::Backend::dense;
    experiments::MomentEstimate est;
    est.a = 0.1;
    est.mean = 1.5;
    est.stderr_ = 0.25;
    est.count = 100;
    est.prediction = 2.0;
    est.ratio = 0.75;
    est.max_share = 0.125;
    const std::string csv = report::moments_csv(cfg, {est});
    CHECK(csv ==
          "ensemble,N,a,K,samples,estimate,stderr,prediction,ratio,max_share,"
          "seed,backend\n"
          "u,8,0.10000000000000001,2,100,1.5,0.25,2,0.75,0.125,3,dense\n");
}

TEST_CASE("format17 round-trips binary64") {
    for (const double v : {1.0 / 3.0, 2.5e-301, 6400.0, 3.141592653589793,
                           1.2345678912345678e17}) {
        const std::string s = report::format17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("sample csv layout and determinism") {
    experiments::ExperimentConfig cfg;
    cfg.ensemble = {ensembles::Family::unitary, 4};
    cfg.a_list = {};
    cfg.samples = 2;
    cfg.seed = 7;
    cfg.backend = ensembles::Backend::dense;
    const std::string csv1 = report::sample_csv(cfg);
    const std::string csv2 = report::sample_csv(cfg);
    CHECK(csv1 == csv2);
    // one metadata line plus two rows of 1 + 4 fields
    std::istringstream in(csv1);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# ensemble=u", 0) == 0);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 2);
}

TEST_CASE("json reports embed seed and config") {
    experiments::ExperimentConfig cfg;
    cfg.ensemble = {ensembles::Family::so_even, 12};
    cfg.a_list = {0.1};
    cfg.k = 2.0;
    cfg.samples = 128;
    cfg.seed = 99;
    cfg.backend = ensembles::Backend::tridiag;
    experiments::MomentEstimate est;
    est.a = 0.1;
    est.count = 128;
    est.prediction = 1.0;
    report::RunRecord record{"rmt moments --test", "2026-01-01T00:00:00Z", 99};
    const std::string json = report::moments_json(cfg, {est}, record);
    CHECK(json.find("\"seed\": 99") != std::string::npos);
    CHECK(json.find("so-even") != std::string::npos);
    CHECK(json.find("rmt moments --test") != std::string::npos);
}
