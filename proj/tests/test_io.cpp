#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "decoy/bounds.hpp"
#include "decoy/io.hpp"
#include "decoy/report.hpp"

using namespace decoy;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) {
        path = std::string("io_test_") + name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_real / parse_real round trip at high precision") {
    PrecisionScope scope(PrecisionConfig{});
    real v = sqrt(real(2)) * real("1e-7");
    real back = parse_real(format_real(v));
    CHECK(abs(v - back) <= abs(v) * real("1e-29"));
    CHECK_THROWS_AS(parse_real("not-a-number"), SchemaError);
}

TEST_CASE("csv: sidecar keys, header row, data rows") {
    TempFile f("basic.csv",
               "# y0=1e-5\n"
               "# A=1\n"
               "# B=1e-5\n"
               "# eta=1e-2\n"
               "mu,Q,E\n"
               "0.07,0.001695,0.03\n"
               "0.2,0.002010,0.025\n"
               "0.5,0.005020,0.02\n");
    Dataset d = parse_input(f.path);
    CHECK(d.set.M() == 3);
    CHECK(d.set.y0 == real("1e-5"));
    REQUIRE(d.model.has_value());
    CHECK(d.model->A == 1);
    CHECK(d.model->eta == real("1e-2"));
    REQUIRE(d.rec.E.has_value());
    CHECK((*d.rec.E)[2] == real("0.02"));
    CHECK(d.rec.Q[0] == real("0.001695"));
}

TEST_CASE("csv: line-numbered diagnostics on malformed rows") {
    TempFile f("bad.csv", "mu,Q\n0.07,0.001\n0.2\n");
    try {
        parse_input(f.path);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("csv: partial model sidecar is rejected") {
    TempFile f("partial.csv", "A=1\nmu,Q\n0.07,0.001\n0.2,0.002\n");
    CHECK_THROWS_AS(parse_input(f.path), SchemaError);
}

TEST_CASE("validation failures surface as typed errors") {
    SUBCASE("duplicate mu") {
        TempFile f("dup.csv", "mu,Q\n0.2,0.001\n0.2,0.002\n");
        CHECK_THROWS_AS(parse_input(f.path), DegenerateIntensities);
    }
    SUBCASE("decreasing mu") {
        TempFile f("dec.csv", "mu,Q\n0.5,0.001\n0.2,0.002\n");
        CHECK_THROWS_AS(parse_input(f.path), ValidationError);
    }
    SUBCASE("Q out of range") {
        TempFile f("qrange.csv", "mu,Q\n0.2,1.5\n");
        CHECK_THROWS_AS(parse_input(f.path), ValidationError);
    }
    SUBCASE("E out of range") {
        TempFile f("erange.csv", "mu,Q,E\n0.2,0.1,0.7\n");
        CHECK_THROWS_AS(parse_input(f.path), ValidationError);
    }
    SUBCASE("Q below the vacuum floor -> negative non-vacuum rate downstream") {
        TempFile f("vac.csv", "y0=0.5\nmu,Q\n0.2,1e-6\n");
        Dataset d = parse_input(f.path);  // parse itself succeeds
        CHECK_THROWS_AS(qplus_from_record(d.rec, d.set), NegativeQPlus);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(parse_input("does_not_exist.csv"), ValidationError);
    }
}

TEST_CASE("json: canonical schema parse and round trip") {
    nlohmann::json j;
    j["intensities"] = {"0.07", "0.2", "0.5"};
    j["Q"] = {"0.001695", "0.002010", "0.005020"};
    j["E"] = {"0.03", "0.025", "0.02"};
    j["y0"] = "1e-5";
    j["model"] = {{"A", "1"}, {"B", "1e-5"}, {"eta", "1e-2"}};
    j["e_det"] = "0.01";
    j["p_dark"] = "1e-5";

    TempFile f("basic.json", j.dump());
    Dataset d = parse_input(f.path);
    CHECK(d.set.M() == 3);
    CHECK(d.set.mu[1] == real("0.2"));
    REQUIRE(d.model.has_value());
    REQUIRE(d.e_det.has_value());
    CHECK(*d.e_det == real("0.01"));

    nlohmann::json back = dataset_to_json(d);
    Dataset d2 = dataset_from_json(back);
    CHECK(d2.set.mu == d.set.mu);
    CHECK(d2.rec.Q == d.rec.Q);
    CHECK(*d2.rec.E == *d.rec.E);
    CHECK(d2.model->B == d.model->B);

    // CSV emission re-parses to the same dataset.
    TempFile f2("roundtrip.csv", dataset_to_csv(d));
    Dataset d3 = parse_input(f2.path);
    CHECK(d3.set.mu == d.set.mu);
    CHECK(d3.rec.Q == d.rec.Q);
    CHECK(d3.set.y0 == d.set.y0);
    CHECK(d3.model->eta == d.model->eta);
}

TEST_CASE("json: numeric literals are accepted alongside strings") {
    TempFile f("nums.json", R"({"intensities": [0.07, 0.2, 0.5], "Q": [0.001, 0.002, 0.005]})");
    Dataset d = parse_input(f.path);
    CHECK(d.set.M() == 3);
    CHECK(d.set.y0 == 0);
    CHECK_FALSE(d.rec.E.has_value());
}

TEST_CASE("json: missing required fields and bad syntax") {
    TempFile f1("miss.json", R"({"intensities": ["0.2"]})");
    CHECK_THROWS_AS(parse_input(f1.path), SchemaError);
    TempFile f2("syntax.json", "{nope");
    CHECK_THROWS_AS(parse_input(f2.path), SchemaError);
}

TEST_CASE("bounds report JSON round trip preserves values exactly") {
    PrecisionScope scope(PrecisionConfig{});
    IntensitySet set;
    set.mu = {real("0.07"), real("0.2"), real("0.5")};
    set.y0 = real("1e-5");
    std::vector<real> qp;
    for (const real& m : set.mu) {
        qp.push_back(real("0.01") * (1 - exp(-m)));
    }
    BoundsReport rep = compute_bounds(qp, set.mu);
    nlohmann::json j = report_to_json(rep, set);
    BoundsReport back = report_from_json(j);

    REQUIRE(back.x.values.size() == rep.x.values.size());
    for (std::size_t i = 0; i < rep.x.values.size(); ++i) {
        CHECK(abs(back.x.values[i] - rep.x.values[i]) <=
              abs(rep.x.values[i]) * real("1e-29") + real("1e-60"));
        CHECK(abs(back.z.values[i] - rep.z.values[i]) <=
              abs(rep.z.values[i]) * real("1e-29") + real("1e-60"));
    }
    CHECK(back.z.L0 == rep.z.L0);
    CHECK(back.z.branch == rep.z.branch);
    CHECK(back.exact == rep.exact);
    CHECK(back.feasible == rep.feasible);
    REQUIRE(back.intervals.size() == rep.intervals.size());
    for (std::size_t i = 0; i < rep.intervals.size(); ++i) {
        CHECK(abs(back.intervals[i].lo - rep.intervals[i].lo) <=
              abs(rep.intervals[i].lo) * real("1e-29") + real("1e-60"));
        CHECK(back.intervals[i].exact == rep.intervals[i].exact);
    }

    // Stable schema keys.
    for (const char* key :
         {"intensities", "y0", "x_config", "z_config", "intervals", "exact", "feasible",
          "warnings", "errors"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["z_config"].contains("L0"));
    CHECK(j["z_config"].contains("a0"));
    CHECK(j["z_config"].contains("branch"));
}
