#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "tdho/io.hpp"
#include "test_util.hpp"

using namespace tdho;

TEST_CASE("the shortest printer round-trips every double", "[io]") {
    for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, -2.5, 12345.678, 1e-300, -9.87654321e12,
                     0x1.fffffffffffffp+1023, 3.141592653589793}) {
        CHECK(std::stod(fmt_double(v)) == v);
    }
    // prefers the short spelling when it already round-trips
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(2.0) == "2");
}

TEST_CASE("tables enforce their header width", "[io]") {
    CsvTable t;
    t.header = {"a", "b"};
    t.add_row({"1", "2"});
    CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
    CHECK(t.to_string() == "a,b\n1,2\n");
}

TEST_CASE("scan serialization is deterministic", "[io]") {
    ScanReport rep;
    rep.points.push_back({1.5, 0.75, 0.75, 0.123456789012345, "Omega0+"});
    rep.points.push_back({-3.0, -1.5, 1.5, 1e-7, "Omega0-"});
    auto t = scan_to_csv(rep);
    REQUIRE(t.header == std::vector<std::string>({"t", "s", "x", "value", "label"}));
    CHECK(t.to_string() == scan_to_csv(rep).to_string());
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[1][4] == "Omega0-");
    CHECK(std::stod(t.rows[0][3]) == 0.123456789012345);
}

TEST_CASE("field serialization carries one coordinate column per axis", "[io]") {
    WaveField f1 = testutil::gauss1d(8, 0.5);
    auto t1 = field_to_csv(f1);
    CHECK(t1.header == std::vector<std::string>({"x1", "re", "im"}));
    CHECK(t1.rows.size() == 8);

    WaveField f2 = testutil::gauss2d(4, 0.5);
    auto t2 = field_to_csv(f2);
    CHECK(t2.header == std::vector<std::string>({"x1", "x2", "re", "im"}));
    CHECK(t2.rows.size() == 16);
}

TEST_CASE("text files round-trip bytes exactly", "[io]") {
    const std::string path = "tdho_io_test.tmp";
    const std::string body = "line1\n,quoted\r\nlast";
    write_text_file(path, body);
    CHECK(read_text_file(path) == body);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file("does/not/exist.csv"), std::runtime_error);
    CHECK_THROWS_AS(write_text_file("no/such/dir/out.csv", "x"), std::runtime_error);
}
