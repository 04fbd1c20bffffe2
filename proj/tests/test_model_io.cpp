#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "esw/fixtures.hpp"
#include "esw/model_io.hpp"

using namespace esw;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(std::filesystem::temp_directory_path() / name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

} // namespace

TEST_CASE("model json round trip") {
    for (const FixtureDef& f : fixtures()) {
        const nlohmann::json j = model_to_json(f.model);
        const ModelSpec back = model_from_json(j);
        CHECK(model_to_json(back).dump() == j.dump());
        CHECK(back.label() == f.model.label());
        CHECK(back.a() == f.model.a());
        CHECK(back.sw_sets().size() == f.model.sw_sets().size());
    }
}

TEST_CASE("model schema violations carry the offending field") {
    auto parse = [](const std::string& body) { return model_from_json(nlohmann::json::parse(body)); };

    CHECK_THROWS_AS(parse(R"({"p":3})"), schema_error);
    CHECK_THROWS_AS(parse(R"({"p":4,"a":[0,0,0,0],"b":[0,0,0,0],"h0":2,"h":[0,0,0,0],"r0":0,"r":[0,0,0,0]})"),
                    schema_error); // composite modulus
    CHECK_THROWS_AS(parse(R"({"p":3,"a":[1,1],"b":[1,1,1],"h0":2,"h":[0,0,0],"r0":0,"r":[0,0,0]})"),
                    schema_error); // wrong length
    CHECK_THROWS_AS(parse(R"({"p":3,"a":[1,-1,1],"b":[1,1,1],"h0":2,"h":[0,0,0],"r0":0,"r":[0,0,0]})"),
                    schema_error); // negative multiplicity
    CHECK_THROWS_AS(parse(R"({"p":3,"a":[1,1,1],"b":[1,1,1],"h0":2,"h":[1,0,0],"r0":0,"r":[0,0,0]})"),
                    schema_error); // h[0] != 0
    CHECK_THROWS_AS(parse(R"({"p":3,"a":[1,1,1],"b":[1,1,1],"h0":2,"h":[0,0,0],"r0":0,"r":[0,0,0],"sw":{"lifts":[1,2]}})"),
                    schema_error); // sw.lifts length
    CHECK_THROWS_AS(parse(R"({"p":3,"a":[1,1,0.5],"b":[1,1,1],"h0":2,"h":[0,0,0],"r0":0,"r":[0,0,0]})"),
                    schema_error); // non-integer entry
}

TEST_CASE("model files load with path diagnostics") {
    TempFile good("esw_good_model.json", model_to_json(zhang_z3()).dump(2));
    const ModelSpec m = load_model_file(good.path.string());
    CHECK(m.label() == "zhang-z3");
    CHECK(m.sw_sets().size() == 2);

    TempFile bad("esw_bad_model.json", "{ not json at all");
    CHECK_THROWS_AS(load_model_file(bad.path.string()), schema_error);
    try {
        load_model_file(bad.path.string());
    } catch (const schema_error& e) {
        CHECK(std::string(e.what()).find("esw_bad_model.json") != std::string::npos);
    }

    CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), schema_error);
}

TEST_CASE("system json round trip and validation") {
    const std::string body = R"({
        "p": 3,
        "in_weights": [1],
        "out_weights": [2],
        "equations": [[ {"coeff": [1, 0], "powers": [[2, 0]]},
                        {"coeff": [-1, 0], "powers": [[0, 1]]} ]],
        "target": [[0, 0]]
    })";
    const EquivariantSystem sys = system_from_json(nlohmann::json::parse(body));
    CHECK(sys.dim() == 1);
    CHECK(sys.equations[0].size() == 2);
    const nlohmann::json j = system_to_json(sys);
    CHECK(system_to_json(system_from_json(j)).dump() == j.dump());

    // z (weight 1) cannot land in the weight-2 output
    const std::string broken = R"({
        "p": 3, "in_weights": [1], "out_weights": [2],
        "equations": [[ {"coeff": [1, 0], "powers": [[1, 0]]} ]]
    })";
    CHECK_THROWS_AS(system_from_json(nlohmann::json::parse(broken)), schema_error);
}
