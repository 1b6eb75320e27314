#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "halfwave/config.hpp"
#include "halfwave/report.hpp"

using namespace halfwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "halfwave_unit";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("config_report") {

TEST_CASE("config sections, comments and lookups") {
    const auto c = Config::parse(
        "top = 1\n"
        "# comment\n"
        "[grid]\n"
        "  m = 33   ; trailing\n"
        "t_max=2.5\n"
        "[flux]\n"
        "name = p_laplacian\n");
    CHECK(c.get_int("", "top", 0) == 1);
    CHECK(c.get_int("grid", "m", 0) == 33);
    CHECK(c.get_double("grid", "t_max", 0.0) == 2.5);
    CHECK(c.get_string("flux", "name", "") == "p_laplacian");
    CHECK(c.get_double("grid", "missing", 7.0) == 7.0);
    CHECK(c.has("grid", "m"));
    CHECK_FALSE(c.has("flux", "m"));
    CHECK_FALSE(c.find("nope", "x").has_value());
    const auto flat = c.flattened();
    REQUIRE(flat.size() == 4);
    CHECK(flat.front().first == "top");
    CHECK(flat.back().first == "grid.t_max");
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(Config::parse("[grid\nm = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("just words\n"), ConfigError);
    const auto c = Config::parse("[grid]\nm = twelve\nt = 1.5x\n");
    CHECK_THROWS_AS(c.get_int("grid", "m", 0), ConfigError);
    CHECK_THROWS_AS(c.get_double("grid", "t", 0.0), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/halfwave.ini"), ConfigError);
}

TEST_CASE("set overrides") {
    auto c = Config::parse("[a]\nk = 1\n");
    c.set("a", "k", "2");
    c.set("b", "j", "x");
    CHECK(c.get_int("a", "k", 0) == 2);
    CHECK(c.get_string("b", "j", "") == "x");
}

TEST_CASE("numbers round-trip through text") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
}

TEST_CASE("CSV quoting and shape") {
    CsvTable t({"name", "value"});
    t.add_row({"a,b", "say \"hi\""});
    t.add_numbers({1.5, 2.0});
    CHECK(t.rows() == 2);
    CHECK(t.str() == "name,value\n\"a,b\",\"say \"\"hi\"\"\"\n1.5,2\n");
    CHECK_THROWS(t.add_row({"only one"}));
}

TEST_CASE("atomic writes replace the file") {
    const auto p = scratch("atomic.txt");
    write_atomic(p.string(), "first");
    write_atomic(p.string(), "second");
    CHECK(slurp(p) == "second");
    CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST_CASE("field CSV round trip") {
    const SpaceTimeGrid g(0.0, 1.0, 5, 2.0, 7);
    const auto u = SampledField2D::sample(g, [](double x, double t) { return x / 3.0 - t * t; });
    const auto p = scratch("field.csv");
    write_atomic(p.string(), field_table(u).str());
    const auto back = read_field_csv(p.string(), g);
    for (std::size_t k = 0; k < u.values.size(); ++k) CHECK(back.values[k] == u.values[k]);
    CHECK_THROWS_AS(read_field_csv(p.string(), SpaceTimeGrid(0.0, 1.0, 5, 2.0, 8)), Error);
    CHECK_THROWS_AS(read_field_csv(p.string(), SpaceTimeGrid(0.0, 2.0, 5, 2.0, 7)), Error);
}

}  // TEST_SUITE
