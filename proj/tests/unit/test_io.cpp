#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ahmd/io.hpp"
#include "ahmd/report.hpp"
#include "support.hpp"

using namespace testing;

namespace {

std::string data_path(const std::string& name)
{
    return std::string(AHMD_DATA_DIR) + "/" + name;
}

/// The message of the ValidationError thrown by parsing `text`.
std::string parse_error(const std::string& text)
{
    try {
        parse_description(Json::parse(text));
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

const char* small_system = R"({
  "complexes": {"I": {"vertex_count": 3, "facets": [[0, 1], [1, 2]]}},
  "stages": [[{"space": "I", "size": 1}], [{"space": "I", "size": 2}]],
  "maps": [{"legs": [[{"source": 0, "vertex_image": [0, 1, 2]}, {"source": 0, "vertex_image": [2, 1, 0]}]]}],
  "covers": {"halves": {"stage": 0, "blocks": [[{"star": [0, 1]}, {"star": [1, 2]}]]}},
  "traces": {"bump": {"stage": 0, "blocks": [{"block": 0, "values": [0, 1, 0]}]}},
  "closed_sets": {"end": {"stage": 0, "block": 0, "vertices": [0]}},
  "open_sets": {"mid": {"stage": 0, "block": 0, "star": [1], "center": [1]}},
  "families": {"slope": {"stage": 0, "blocks": [{"members": [[[0, 0.25, 0.5]]]}]}},
  "config": {"level": 0, "epsilon": 0.3, "radius": 0}
})";

std::string with(const std::string& from, const std::string& to)
{
    std::string s = small_system;
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

/// A description of a random system with one named cover.
SystemDescription random_description(Rng& rng)
{
    SystemDescription d;
    d.system = random_system(rng);
    for (int i = 0; i < d.system.stage_count(); ++i) {
        d.block_spaces.emplace_back();
        for (std::size_t l = 0; l < d.system.stage(i).size(); ++l) {
            const std::string name = "b" + std::to_string(i) + "_" + std::to_string(l);
            d.complexes[name] = d.system.stage(i)[l].space;
            d.block_spaces.back().push_back(name);
        }
    }
    d.covers["random"] = NamedCover{0, random_stage_cover(d.system, 0, rng, 3)};
    d.config.level = uniform(rng, 0, 2);
    d.config.epsilon = 0.25;
    return d;
}

}  // namespace

TEST_CASE("bundled descriptions load and round-trip")
{
    for (const char* name : {"goodearl.json", "ah_model.json"}) {
        const SystemDescription d = load_description(data_path(name));
        CHECK(d.system.stage_count() == 4);
        const SystemDescription again = parse_description(to_json(d));
        CHECK(again == d);
        CHECK(to_json(again) == to_json(d));
    }
    const SystemDescription g = load_description(data_path("goodearl.json"));
    CHECK(g.covers.count("halves") == 1);
    CHECK(g.traces.count("hat") == 1);
    CHECK(g.families.count("tent") == 1);
    CHECK(g.config.epsilon == 0.6);
}

TEST_CASE("generated goodearl description")
{
    const Json j = goodearl_description({3, 3}, {0, 4}, 4);
    const SystemDescription d = parse_description(j);
    CHECK(d.system == build_goodearl({3, 3}, {0, 4}, 4));
    CHECK(parse_description(to_json(d)) == d);
    CHECK_THROWS_AS(goodearl_description({2, 2, 2, 2, 2}, {0, 1, 2, 3, 4}, 4), ValidationError);
}

TEST_CASE("property: explicit descriptions round-trip")
{
    Rng rng(81);
    for (int t = 0; t < 60; ++t) {
        const SystemDescription d = random_description(rng);
        const Json j = to_json(d);
        const SystemDescription back = parse_description(Json::parse(j.dump()));
        CHECK(back == d);
        CHECK(to_json(back) == j);
    }
}

TEST_CASE("small explicit description")
{
    const SystemDescription d = parse_description(Json::parse(small_system));
    CHECK(d.system.block(1, 0).size == 2);
    CHECK(d.covers.at("halves").blocks[0].size() == 2);
    CHECK(d.open_sets.at("mid").center == d.complexes.at("I").id_of({1}));
    CHECK(d.config.level == 0);
    CHECK(d.config.radius == 0);
    CHECK(d.config.budget == RunConfig{}.budget);
}

TEST_CASE("validation errors name the offending path")
{
    CHECK(parse_error("[1, 2]").find("$") != std::string::npos);
    CHECK(parse_error(with(R"("stages": [)", R"("stagez": [)")).find("missing key 'stages'") != std::string::npos);
    CHECK(parse_error(with(R"({"space": "I", "size": 2})", R"({"space": "J", "size": 2})"))
              .find("stages[1][0].space") != std::string::npos);
    CHECK(parse_error(with(R"("source": 0, "vertex_image": [2, 1, 0])", R"("source": 1, "vertex_image": [2, 1, 0])"))
              .find("maps[0].legs[0][1].source") != std::string::npos);
    CHECK(parse_error(with("[2, 1, 0]", "[0, 2, 1]")).find("maps[0].legs[0][1]") != std::string::npos);
    CHECK(parse_error(with(R"("size": 2)", R"("size": 3)")).find("unitality") != std::string::npos);
    CHECK(parse_error(with("[0, 1, 0]", "[0, -1, 0]")).find("traces.bump") != std::string::npos);
    CHECK(parse_error(with("[0, 1, 0]", "[0, 1]")).find("traces.bump.blocks[0].values") != std::string::npos);
    CHECK(parse_error(with(R"("vertices": [0])", R"("vertices": [7])")).find("closed_sets.end.vertices") !=
          std::string::npos);
    CHECK(parse_error(with(R"("center": [1])", R"("center": [0])")).find("open_sets.mid.center") != std::string::npos);
    CHECK(parse_error(with(R"([{"star": [0, 1]}, {"star": [1, 2]}])", R"([{"star": [0]}])")).find("covers.halves") !=
          std::string::npos);
    CHECK(parse_error(with(R"("epsilon": 0.3)", R"("epsilon": 0)")).find("config.epsilon") != std::string::npos);
    CHECK(parse_error(with(R"("level": 0)", R"("level": -1)")).find("config.level") != std::string::npos);
    CHECK(parse_error(with(R"("complexes": {)", R"("generator": {"goodearl": {"m": [2]}}, "complexes": {)"))
              .find("not allowed together with a generator") != std::string::npos);
    CHECK(parse_error(R"({"generator": {"cantor": {}}})").find("unknown generator 'cantor'") != std::string::npos);
    CHECK(parse_error(R"({"generator": {"goodearl": {"m": [2], "points": [9]}}})").find("generator.goodearl") !=
          std::string::npos);
}

TEST_CASE("loading failures")
{
    CHECK_THROWS_AS(load_description(data_path("missing.json")), ValidationError);
    const std::string broken = "/tmp/ahmd_test_io_broken.json";
    std::ofstream(broken) << "{\"stages\": [";
    try {
        load_description(broken);
        FAIL("expected a parse error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("parse error") != std::string::npos);
    }
    std::remove(broken.c_str());
}

TEST_CASE("reports")
{
    const SystemDescription g = load_description(data_path("goodearl.json"));

    const Report ocap = run("ocap", g, g.config);
    CHECK(ocap.json["command"] == "ocap");
    CHECK(ocap.json["system"]["stage_count"] == 4);
    CHECK(ocap.json["results"][0]["limit"] == "27/64");
    CHECK_FALSE(ocap.json.contains("wall_time_seconds"));
    RunConfig timed = g.config;
    timed.timing = true;
    CHECK(run("ocap", g, timed).json.contains("wall_time_seconds"));

    const Report all = run("report-all", g, g.config);
    for (const auto& name : commands())
        if (name != "report-all")
            CHECK(all.json["results"].contains(name));

    const std::string csv = to_csv(ocap.rows);
    CHECK(csv.rfind("stage,block,value,exact,command,name\n", 0) == 0);
    CHECK(csv.find("27/64") != std::string::npos);

    CHECK(run("dim-cover", g, g.config).json.dump() == run("dim-cover", g, g.config).json.dump());
    CHECK_THROWS_AS(run("frobnicate", g, g.config), ValidationError);
    RunConfig unknown = g.config;
    unknown.cover = "nope";
    CHECK_THROWS_AS(run("dim-cover", g, unknown), ValidationError);
}

TEST_CASE("config serialisation")
{
    RunConfig c;
    c.level = 2;
    c.epsilon = 0.2;
    c.stage = 1;
    c.cover = "halves";
    const Json j = config_json(c);
    CHECK(j["level"] == 2);
    CHECK(j["stage"] == 1);
    CHECK(j["cover"] == "halves");
    CHECK_FALSE(j.contains("closed_set"));
    CHECK(rational_json(Rational(6, 8)) == "3/4");
    CHECK(rational_json(Rational(2)) == "2");
}
