// Exercises the shared-library surface the CLI uses.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "rmt/rmt.h"

namespace {

struct Config {
    rmt_config* cfg = rmt_config_new();
    ~Config() { rmt_config_free(cfg); }
    rmt_status set(const char* k, const char* v) {
        return rmt_config_set(cfg, k, v);
    }
};

struct Report {
    rmt_report* rep = nullptr;
    ~Report() { rmt_report_free(rep); }
};

}  // namespace

TEST_CASE("version string") {
    CHECK(std::strlen(rmt_version()) > 0);
}

TEST_CASE("scalar prediction calls") {
    double value = 0.0;
    REQUIRE(rmt_predict("u", 100, 0.01, 2.0, &value) == RMT_OK);
    CHECK(value == doctest::Approx(5e5).epsilon(1e-12));
    REQUIRE(rmt_integer_moment("usp", 4, 10, 0.1, &value) == RMT_OK);
    CHECK(value == doctest::Approx(1e5 / 3.0).epsilon(1e-12));
    REQUIRE(rmt_limit_integral("so-even", 50, 0.1, 2.0, &value) == RMT_OK);
    CHECK(value == doctest::Approx(2.0 * 2500.0 / 0.1).epsilon(1e-9));
}

TEST_CASE("validity errors carry the threshold and map to status codes") {
    double value = 0.0;
    CHECK(rmt_predict("usp", 64, 0.1, 2.0, &value) == RMT_ERR_VALIDITY);
    CHECK(std::string(rmt_last_error()).find("K>3") != std::string::npos);
    CHECK(rmt_predict("nope", 64, 0.1, 2.0, &value) == RMT_ERR_USAGE);
    CHECK(rmt_predict("u", 64, -0.5, 2.0, &value) == RMT_ERR_DOMAIN);
}

TEST_CASE("config keys validate") {
    Config c;
    CHECK(c.set("ensemble", "u") == RMT_OK);
    CHECK(c.set("n", "8") == RMT_OK);
    CHECK(c.set("a", "0.1") == RMT_OK);
    CHECK(c.set("k", "2") == RMT_OK);
    CHECK(c.set("bogus", "1") == RMT_ERR_USAGE);
    CHECK(std::string(rmt_last_error()).find("bogus") != std::string::npos);
    CHECK(rmt_config_validate(c.cfg, "moments") == RMT_OK);
}

TEST_CASE("sample csv through the api") {
    Config c;
    c.set("ensemble", "u");
    c.set("n", "4");
    c.set("count", "2");
    c.set("seed", "7");
    char* csv = nullptr;
    REQUIRE(rmt_sample_csv(c.cfg, &csv) == RMT_OK);
    const std::string text(csv);
    rmt_string_free(csv);
    CHECK(text.find("# ensemble=u") == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    // determinism across calls
    char* csv2 = nullptr;
    REQUIRE(rmt_sample_csv(c.cfg, &csv2) == RMT_OK);
    CHECK(text == std::string(csv2));
    rmt_string_free(csv2);
}

TEST_CASE("moments run end to end with reproducible csv") {
    Config c;
    c.set("ensemble", "so-even");
    c.set("n", "12");
    c.set("a", "0.1");
    c.set("k", "2");
    c.set("samples", "400");
    c.set("seed", "21");
    c.set("workers", "1");
    Report r1, r4;
    REQUIRE(rmt_run_moments(c.cfg, &r1.rep) == RMT_OK);
    c.set("workers", "4");
    REQUIRE(rmt_run_moments(c.cfg, &r4.rep) == RMT_OK);
    CHECK(std::string(rmt_report_csv(r1.rep)) ==
          std::string(rmt_report_csv(r4.rep)));
    const std::string json(rmt_report_json(r1.rep));
    CHECK(json.find("\"ratio\"") != std::string::npos);
}

TEST_CASE("scan and decompose runs") {
    Config c;
    c.set("ensemble", "so-even");
    c.set("n", "12");
    c.set("a", "0.2");
    c.set("a", "0.1");
    c.set("k", "2.5");
    c.set("samples", "300");
    c.set("seed", "3");
    Report scan;
    REQUIRE(rmt_run_scan(c.cfg, &scan.rep) == RMT_OK);
    CHECK(std::string(rmt_report_csv(scan.rep)).find("# trend") !=
          std::string::npos);

    Config d;
    d.set("ensemble", "so-even");
    d.set("n", "12");
    d.set("a", "0.1");
    d.set("k", "2.5");
    d.set("samples", "300");
    d.set("seed", "3");
    Report dec;
    REQUIRE(rmt_run_decompose(d.cfg, &dec.rep) == RMT_OK);
    CHECK(std::string(rmt_report_csv(dec.rep)).find("ratio_M_over_full") !=
          std::string::npos);
}

TEST_CASE("usage errors at the run level") {
    Config c;
    c.set("ensemble", "usp");
    c.set("n", "8");
    c.set("a", "0.1");
    c.set("k", "4");
    c.set("backend", "dense");
    Report r;
    CHECK(rmt_run_moments(c.cfg, &r.rep) == RMT_ERR_USAGE);
}
