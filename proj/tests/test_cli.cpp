#include "pretsums/cli.hpp"
#include "pretsums/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace pretsums;
using Json = nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

Json call_json(std::vector<std::string> args) {
    const auto r = call(std::move(args));
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
}

}  // namespace

TEST_CASE("oscint and triple examples") {
    const auto o = call_json({"oscint", "x=10", "beta=0", "t=0"});
    CHECK(o["re"].get<double>() == doctest::Approx(1.0));
    CHECK(o["im"].get<double>() == doctest::Approx(0.0));
    const auto t = call_json({"triples", "f=one", "g=one", "h=one", "x=4"});
    CHECK(t["oracle"]["re"].get<double>() == 6.0);
    for (const char* key : {"oracle_density", "predicted_density", "factors"}) CHECK(t.contains(key));
    CHECK(t["factors"].contains("Einf"));
    CHECK(t["factors"].contains("Ep"));
    CHECK(t["factors"].contains("delta_principal"));
    const auto p = call_json({"partition", "f=one", "g=one", "h=one", "N=6"});
    CHECK(p["oracle"]["re"].get<double>() == 10.0);
}

TEST_CASE("constants subcommand") {
    const auto c = call_json({"constants", "P=10000"});
    CHECK(c["delta0"].get<double>() == doctest::Approx(0.656999).epsilon(2e-6));
    CHECK(c["eight_forty_fifths"].get<double>() == doctest::Approx(8.0 / 45.0));
    for (const char* key : {"kappa", "kappa_prime", "C2_product", "mixed_max"}) CHECK(c.contains(key));
    CHECK(c["mixed_max"].size() == 4);
}

TEST_CASE("expsum reports") {
    const auto d = call_json({"expsum", "predict", "f=legendre:5", "alpha=2/5", "x=20000"});
    CHECK(d.contains("arc"));
    const auto s = call({"expsum", "scan", "f=minus-all", "x=2000", "grid=16"});
    CHECK(s.code == 0);
    CHECK(!s.out.empty());
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"nosuch"}).code == 2);
    CHECK(call({"oscint", "x=10", "bogus=1"}).code == 2);
    const auto bad = call({"oscint", "x=10", "bogus=1"});
    CHECK(bad.err.find("bogus") != std::string::npos);
    CHECK(call({"triples", "f=wat", "g=one", "h=one", "x=10"}).code == 2);
    CHECK(call({"oscint", "x=abc"}).code == 2);
    CHECK(call({"--format", "xml", "constants"}).code == 2);
    CHECK(call({"oscint", "x=-1"}).code == 1);
    CHECK(call({"triples", "f=one", "g=one", "h=one", "x=10", "a=0"}).code == 1);
    CHECK(call({"oscint", "x=10"}).code == 0);
}

TEST_CASE("deterministic output") {
    const std::vector<std::string> args{"triples", "f=rand:3", "g=legendre:3", "h=one", "x=3000"};
    CHECK(call(args).out == call(args).out);
}

TEST_CASE("csv output") {
    const auto r = call({"--format", "csv", "oscint", "x=10", "beta=1", "t=2"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "key,value");
    const auto j = call_json({"oscint", "x=10", "beta=1", "t=2"});
    char buf[64];
    std::snprintf(buf, sizeof buf, "re,%.12g", j["re"].get<double>());
    CHECK(row == buf);
    const auto s = call({"--format", "csv", "expsum", "scan", "f=minus-all", "x=2000", "grid=8"});
    REQUIRE(s.code == 0);
    std::istringstream sin(s.out);
    std::getline(sin, header);
    CHECK(header.rfind("alpha,", 0) == 0);
}

TEST_CASE("output file and timings") {
    const std::string path = "cli_test_out.json";
    const auto r = call({"--out", path, "oscint", "x=5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto j = Json::parse(in);
    CHECK(j.contains("re"));
    std::remove(path.c_str());
    CHECK_FALSE(call_json({"oscint", "x=5"}).contains("timings_ms"));
    CHECK(call_json({"--timings", "oscint", "x=5"}).contains("timings_ms"));
}

TEST_CASE("periodic spec parser") {
    const auto h = parse_periodic("expmod:poly=0,1", 7);
    const auto k = parse_periodic("kloosterman:1,1*one", 7);
    CHECK(h.period == 7);
    CHECK(k.period == 7);
    CHECK_THROWS_AS(parse_periodic("expmod:1,2", 7), ParseError);
    CHECK_THROWS_AS(parse_periodic("kloosterman:1", 7), ParseError);
    CHECK_THROWS_AS(parse_periodic("table:/nonexistent", 7), ParseError);
    CHECK(parse_alpha("2/5") == doctest::Approx(0.4));
    CHECK(parse_alpha("0.25") == 0.25);
    CHECK_THROWS_AS(parse_alpha("1/0"), ParseError);
}
