#include <catch2/catch_amalgamated.hpp>

#include "mukai/io.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace mukai;

TEST_CASE("decimal strings and the 64-bit JSON boundary", "[io]") {
    CHECK(dec_string(Int(0)) == "0");
    CHECK(dec_string(Int(-5)) == "-5");
    CHECK(dec_string(Int("123456789012345678901234567890")) ==
          "123456789012345678901234567890");

    CHECK(int_json(Int(140)).is_number_integer());
    CHECK(int_json(Int("9223372036854775807")).is_number_integer());
    CHECK(int_json(Int("9223372036854775808")).is_string());
    CHECK(int_json(Int("9223372036854775808")).get<std::string>() == "9223372036854775808");
    CHECK(int_json(Int("-9223372036854775808")).is_number_integer());

    for (const char* text : {"0", "-7", "9223372036854775807", "123456789012345678901"}) {
        const Int x(text);
        CHECK(int_from_json(int_json(x), "test") == x);
    }
    CHECK(int_from_json(Json::parse("18446744073709551615"), "test") ==
          Int("18446744073709551615"));
    CHECK(int_from_json(Json("42"), "test") == 42);
    CHECK_THROWS_WITH(int_from_json(Json("4x"), "spot"),
                      Catch::Matchers::ContainsSubstring("spot: expected an integer"));
    CHECK_THROWS_WITH(int_from_json(Json(1.5), "spot"),
                      Catch::Matchers::ContainsSubstring("expected an integer"));
}

TEST_CASE("surface serialization round trip", "[io]") {
    const Surface r2 = Surface::rank_one(2);
    CHECK(surface_to_json(r2).dump() ==
          R"({"ns_rank":1,"gram":[[4]],"H":[1],"n":2,"is_product":false})");

    const Surface pr = Surface::product(3);
    CHECK(surface_to_json(pr).dump() ==
          R"({"ns_rank":2,"gram":[[0,1],[1,0]],"H":[1,3],"n":3,"is_product":true})");

    for (const Surface& s : {r2, pr, Surface::rank_one(5, true)}) {
        const Surface back = surface_from_json(surface_to_json(s));
        CHECK(back.ns_rank == s.ns_rank);
        CHECK(back.gram == s.gram);
        CHECK(back.H == s.H);
        CHECK(back.n == s.n);
        CHECK(back.is_product == s.is_product);
    }
}

TEST_CASE("surface deserialization rejects inconsistent data by name", "[io]") {
    Json good = surface_to_json(Surface::rank_one(2));

    Json j = good;
    j.erase("H");
    CHECK_THROWS_WITH(surface_from_json(j),
                      Catch::Matchers::ContainsSubstring("surface: missing field H"));

    j = good;
    j["gram"] = 7;
    CHECK_THROWS_WITH(surface_from_json(j),
                      Catch::Matchers::ContainsSubstring("gram must be an array of rows"));

    j = good;
    j["is_product"] = "no";
    CHECK_THROWS_WITH(surface_from_json(j),
                      Catch::Matchers::ContainsSubstring("is_product must be a boolean"));

    j = good;
    j["ns_rank"] = 2;
    CHECK_THROWS_WITH(surface_from_json(j),
                      Catch::Matchers::ContainsSubstring("ns_rank does not match"));

    j = good;
    j["n"] = 3;
    CHECK_THROWS_WITH(surface_from_json(j),
                      Catch::Matchers::ContainsSubstring("n does not match H.H/2"));

    CHECK_THROWS_WITH(surface_from_json(Json::array()),
                      Catch::Matchers::ContainsSubstring("expected a JSON object"));
}

TEST_CASE("vector serialization round trip", "[io]") {
    const MukaiVector v{2, NSClass{1}, -1};
    CHECK(vector_to_json(v).dump() == R"({"r":2,"c1":[1],"chi":-1})");
    CHECK(vector_from_json(vector_to_json(v)) == v);

    const MukaiVector big{Int("12345678901234567890"), NSClass{0}, -1};
    CHECK(vector_from_json(vector_to_json(big)) == big);

    Json j = vector_to_json(v);
    j.erase("chi");
    CHECK_THROWS_WITH(vector_from_json(j),
                      Catch::Matchers::ContainsSubstring("vector: missing field chi"));
    CHECK_THROWS_WITH(vector_from_json(Json{{"r", 1}, {"c1", Json::array()}, {"chi", 0}}),
                      Catch::Matchers::ContainsSubstring("nonempty coordinate array"));
}

TEST_CASE("surface specs accept shorthand, inline JSON, and files", "[io]") {
    const Surface a = parse_surface_spec("rank1:n=2");
    CHECK(a.ns_rank == 1);
    CHECK(a.n == 2);
    CHECK_FALSE(a.is_product);

    const Surface b = parse_surface_spec("rank1:n=2,product");
    CHECK(b.ns_rank == 1);
    CHECK(b.is_product);

    const Surface c = parse_surface_spec("product:n=3");
    CHECK(c.ns_rank == 2);
    CHECK(c.n == 3);
    CHECK(c.is_product);

    const Surface inl = parse_surface_spec(
        R"(  {"ns_rank":1,"gram":[[4]],"H":[1],"n":2,"is_product":false})");
    CHECK(inl.n == 2);

    const auto path = std::filesystem::temp_directory_path() / "mukai_io_surface.json";
    std::ofstream(path) << surface_to_json(Surface::product(2)).dump();
    const Surface from_file = parse_surface_spec(path.string());
    CHECK(from_file.ns_rank == 2);
    CHECK(from_file.n == 2);
    std::filesystem::remove(path);

    CHECK_THROWS_WITH(parse_surface_spec("rank1:m=2"),
                      Catch::Matchers::ContainsSubstring(
                          "shorthand must be rank1:n=<int>[,product] or product:n=<int>"));
    CHECK_THROWS_WITH(parse_surface_spec("rank1:n=x"),
                      Catch::Matchers::ContainsSubstring("surface: n: expected an integer"));
    CHECK_THROWS_WITH(parse_surface_spec("{oops"),
                      Catch::Matchers::ContainsSubstring("surface: invalid JSON"));
    CHECK_THROWS_WITH(parse_surface_spec("no_such_file.json"),
                      Catch::Matchers::ContainsSubstring("surface: cannot read file"));
}

TEST_CASE("vector and partition specs parse inline JSON", "[io]") {
    const MukaiVector v = parse_vector_spec(R"({"r":2,"c1":[1],"chi":-1})");
    CHECK(v == MukaiVector{2, NSClass{1}, -1});
    CHECK_THROWS_WITH(parse_vector_spec("{bad"),
                      Catch::Matchers::ContainsSubstring("vector: invalid JSON"));

    const HNPartition parts = parse_partition_spec(
        R"( [{"v":{"r":1,"c1":[0],"chi":-1},"ell":1},{"v":{"r":1,"c1":[0],"chi":-1},"ell":1}])");
    REQUIRE(parts.parts.size() == 2);
    CHECK(parts.parts[0].v == MukaiVector{1, NSClass{0}, -1});
    CHECK(parts.parts[0].ell == 1);

    CHECK_THROWS_WITH(partition_from_json(Json::array()),
                      Catch::Matchers::ContainsSubstring("nonempty array of parts"));
    CHECK_THROWS_WITH(parse_partition_spec(R"([{"v":{"r":1,"c1":[0],"chi":-1}}])"),
                      Catch::Matchers::ContainsSubstring("each part needs fields v and ell"));
}

TEST_CASE("wall vectors and verdicts serialize with stable shapes", "[io]") {
    const WallVector all{1, NSClass{0}, 0, 1, std::nullopt};
    CHECK(wall_vector_to_json(all).dump() ==
          R"({"p":1,"eta":[0],"q":0,"pairing_with_v":1,"slope_k":"all"})");

    const WallVector pinned{2, NSClass{1}, 3, 2, Rat(3, 2)};
    CHECK(wall_vector_to_json(pinned)["slope_k"] == "3/2");

    const Surface plain = Surface::rank_one(2);
    const MukaiVector v{2, NSClass{1}, -1};
    const Json ok = verdict_to_json(movable_membership(v, v, plain));
    CHECK(ok["movable"] == true);
    CHECK(ok["coeff_w0"] == "1/4");
    CHECK(ok["coeff_w1"] == "1/2");
    CHECK_FALSE(ok.contains("exceptional"));
    CHECK(ok["checked_cases"].size() == 4);

    const Json bad = verdict_to_json(movable_membership(v, v, Surface::rank_one(2, true)));
    CHECK(bad.dump() ==
          R"x({"movable":false,"positive":true,"coeff_w0":"1/4","coeff_w1":"1/2",)x"
          R"x("exceptional":{"case":"product-(1,-1)","p":1,"e":1,"q":0},)x"
          R"x("checked_cases":["p=0","p>0,Heta=0","p>0,Heta<0","p>0,Heta>0"]})x");
}
