#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gfc/cli.hpp"
#include "gfc/errors.hpp"
#include "gfc/serialize.hpp"

using namespace gfc;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
TEST_CASE("complex parsing") {
    CHECK(cli::parse_complex("2") == Complex(2.0, 0.0));
    CHECK(cli::parse_complex("2+1i") == Complex(2.0, 1.0));
    CHECK(cli::parse_complex("2-0.5i") == Complex(2.0, -0.5));
    CHECK(cli::parse_complex("-1.5") == Complex(-1.5, 0.0));
    CHECK(cli::parse_complex("3i") == Complex(0.0, 3.0));
    CHECK(cli::parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(cli::parse_complex("2+i") == Complex(2.0, 1.0));
    CHECK(cli::parse_complex("1e-3+2e+1j") == Complex(1e-3, 20.0));
    CHECK(cli::parse_complex("2,1") == Complex(2.0, 1.0));
    CHECK(cli::parse_complex(" -1.5 , 0.25 ") == Complex(-1.5, 0.25));
    CHECK_THROWS_AS(cli::parse_complex(""), DegenerateInput);
    CHECK_THROWS_AS(cli::parse_complex("abc"), DegenerateInput);
    CHECK_THROWS_AS(cli::parse_complex("2+xi"), DegenerateInput);
    CHECK_THROWS_AS(cli::parse_complex("1,2,3"), DegenerateInput);
}

TEST_CASE("info") {
    const auto a = call({"info", "-k", "4", "-n", "2"});
    REQUIRE(a.code == 0);
    CHECK(a.err.empty());
    const auto ja = nlohmann::json::parse(a.out);
    CHECK(ja["genus"] == 3);
    CHECK(ja["form_count"] == 3);
    CHECK(ja["conj_comm_count"] == 16);
    CHECK(ja["generator_count"] == 16);

    const auto b = call({"info", "-k", "2", "-n", "3", "-l", "2"});
    REQUIRE(b.code == 0);
    const auto jb = nlohmann::json::parse(b.out);
    CHECK(jb["genus"] == 1);
    CHECK(jb["form_count"] == 1);
    CHECK(jb["generator_count"] == 24);

    const auto c = call({"info", "-k", "1", "-n", "2"});
    CHECK(c.code == 2);
    CHECK(c.out.empty());
    CHECK_FALSE(c.err.empty());
}

TEST_CASE("invalid input exits with code 2") {
    CHECK(call({"info", "-k", "2", "-n", "3"}).code == 2);
    CHECK(call({"info", "-k", "2", "-n", "3", "-l", "1"}).code == 2);
    CHECK(call({"info", "-k", "2", "-n", "3", "-l", "zz"}).code == 2);
    CHECK(call({"periods", "-k", "3", "-n", "2", "--format", "xml"}).code == 2);
    CHECK(call({"periods", "-k", "3", "-n", "2", "--tol", "-1"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({}).code == 2);
}

TEST_CASE("negative lambdas parse as values") {
    const auto a = call({"info", "-k", "2", "-n", "4", "-l", "2", "-l", "-1.5"});
    REQUIRE(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["lambdas"][1][0] == -1.5);
    const auto b = call({"info", "-k", "2", "-n", "3", "--lambda=-1.5,0.5"});
    REQUIRE(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["lambdas"][0][1] == 0.5);
}

TEST_CASE("period matrix JSON contract") {
    const auto a = call({"periods", "-k", "2", "-n", "3", "-l", "2+1i"});
    REQUIRE(a.code == 0);
    const auto j = nlohmann::ordered_json::parse(a.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"k", "n", "lambdas", "genus", "forms", "generators", "periods", "base_point"});
    CHECK(j["forms"] == nlohmann::json::parse("[[0,1,1]]"));
    CHECK(j["generators"].size() == 24);
    CHECK(nlohmann::json::parse(j["generators"][0].dump()) == nlohmann::json::parse(R"({"type":"conj_comm","g":[0,0,0],"j":1,"l":2})"));
    CHECK(j["periods"].size() == 24);
    CHECK(j["periods"][0].size() == 1);
    CHECK(j["periods"][0][0].size() == 2);
    CHECK(j["base_point"].size() == 2);

    const auto pm = io::period_matrix_from_json(nlohmann::json::parse(a.out));
    CHECK(io::to_json_text(io::period_matrix_json(pm)) == a.out);
}

TEST_CASE("round trips are bit exact") {
    const auto pm = assemble(validate_spec(3, 3, {Complex(2.0, 1.0 / 3.0)}), QuadConfig{}, true);
    const auto from_json = io::period_matrix_from_json(nlohmann::json::parse(io::to_json_text(io::period_matrix_json(pm))));
    CHECK(io::same_wire_content(pm, from_json));
    const auto from_csv = io::period_matrix_from_csv(io::period_matrix_csv(pm));
    CHECK(io::same_wire_content(pm, from_csv));
    CHECK(io::period_matrix_csv(from_csv) == io::period_matrix_csv(pm));
    CHECK(std::holds_alternative<PowerWord>(from_csv.rows[0]));
}

TEST_CASE("seventeen significant digits") {
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(-2.5e-300) == "-2.5e-300");
    for (double v : {1.0 / 3.0, std::numbers::pi, -1e-17, 6.02214076e23, 5e-324}) {
        CHECK(std::strtod(io::format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("CSV layout") {
    const auto a = call({"periods", "-k", "4", "-n", "2", "--format", "csv"});
    REQUIRE(a.code == 0);
    std::istringstream is(a.out);
    std::string line;
    int data_rows = 0;
    std::string header;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = line;
            continue;
        }
        ++data_rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4 + 6);
    }
    CHECK(data_rows == 16);
    CHECK(header == "type,i,g,j,l,re:0 2,im:0 2,re:0 3,im:0 3,re:1 3,im:1 3");
}

TEST_CASE("periods output is deterministic and can go to a file") {
    const auto a = call({"periods", "-k", "3", "-n", "3", "-l", "2+i"});
    const auto b = call({"periods", "-k", "3", "-n", "3", "-l", "2+i"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto path = std::filesystem::temp_directory_path() / "gfc_cli_test_periods.json";
    const auto c = call({"periods", "-k", "3", "-n", "3", "-l", "2+i", "--out", path.string()});
    REQUIRE(c.code == 0);
    CHECK(c.out.empty());
    std::ifstream in(path, std::ios::binary);
    const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(written == a.out);
    std::filesystem::remove(path);
}

TEST_CASE("basis for the classical k=4 curve") {
    const auto a = call({"basis", "-k", "4", "-n", "2"});
    REQUIRE(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["rank"] == 6);
    CHECK(j["basis"].size() == 6);
    CHECK(j["coefficients"].size() == 16);
    CHECK(j["coefficients"][0].size() == 6);
    CHECK(j["generator_combinations"].size() == 6);
    CHECK(j["residual"].get<double>() < 1e-6);
    CHECK(j["abs_det"].get<double>() > 0.0);
    CHECK(call({"basis", "-k", "4", "-n", "2"}).out == a.out);
    CHECK(call({"basis", "-k", "4", "-n", "2", "--format", "csv"}).code == 0);
}

TEST_CASE("numerical failures map to their exit codes") {
    const auto a = call({"periods", "-k", "3", "-n", "2", "--level", "2", "--max-level", "3", "--tol", "1e-15"});
    CHECK(a.code == 3);
    CHECK(a.out.empty());
    CHECK(a.err.find("r") != std::string::npos);
    CHECK(a.err.find("form") != std::string::npos);
    const auto b = call({"basis", "-k", "3", "-n", "3", "-l", "2", "--max-denominator", "1"});
    CHECK(b.code == 4);
    CHECK(b.out.empty());

}

TEST_CASE("verify") {
    const auto a = call({"verify", "-k", "3", "-n", "2", "--sample", "9", "--seed", "3"});
    CHECK(a.code == 0);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["all_passed"] == true);
    CHECK(j["checks"].size() >= 5);
    const auto b = call({"verify", "-k", "2", "-n", "3", "-l", "2", "--format", "csv"});
    CHECK(b.code == 0);
    CHECK(b.out.rfind("name,passed,max_deviation,tolerance,detail\n", 0) == 0);
}
}
