#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "normgeom/cli.hpp"
#include "support.hpp"

using namespace normgeom;
using nlohmann::json;

namespace {

cli::Result run(std::initializer_list<std::string> args) { return cli::run(std::vector<std::string>(args)); }

json out_of(const cli::Result& r) {
    REQUIRE(r.code == 0);
    return json::parse(r.output);
}

}  // namespace

TEST_CASE("eval subcommand") {
    auto r = run({"eval", "--place", "padic:2", "--input",
                  R"({"norm": {"basis": [["1","0"],["0","1"]], "weights": ["1","1"]}, "x": ["3","4"]})"});
    auto j = out_of(r);
    CHECK(j["value"] == "1");

    auto r2 = run({"eval", "--place", "real", "--input",
                   R"({"norm": {"basis": [[1,0],[0,1]], "weights": [1,1]}, "x": [3,4]})"});
    CHECK(out_of(r2)["value"].get<double>() == doctest::Approx(5.0));

    // |2|_2 = 1/2
    auto r3 = run({"eval", "--place", "padic:2", "--input",
                   R"({"norm": {"basis": [["1"]], "weights": ["1"]}, "x": ["2"]})"});
    CHECK(out_of(r3)["value"] == "1/2");
}

TEST_CASE("exit codes") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"eval", "--input", "{not json"}).code == 2);
    CHECK(run({"eval", "--place", "padic:2", "--input", R"({"norm": {"basis": [["1"],["0"]], "weights": ["1"]}, "x": ["1","2"]})"}).code == 3);
    // precondition violation names the offending pre
    auto r = run({"dual", "--place", "padic:2", "--input",
                  R"({"norm": {"basis": [["1","0"],["0","1"]], "weights": ["1","0"]}})"});
    CHECK(r.code == 3);
    CHECK(r.output.find("not a norm") != std::string::npos);
}

TEST_CASE("determinism and round trips") {
    std::vector<std::string> args{"iwasawa", "--place", "padic:3", "--input",
                                  R"({"g": [["3","1/2"],["1","7"]]})"};
    auto a = cli::run(args);
    auto b = cli::run(args);
    CHECK(a.code == 0);
    CHECK(a.output == b.output);  // byte-identical

    // dual twice returns the original class
    std::string norm = R"({"basis": [["2","1"],["0","5"]], "weights": ["3","1/7"]})";
    auto d1 = out_of(run({"dual", "--place", "padic:5", "--input", std::string(R"({"norm": )") + norm + "}"}));
    auto d2 = out_of(run({"dual", "--place", "padic:5", "--input",
                          std::string(R"({"norm": )") + d1["norm"].dump() + "}"}));
    auto eq = out_of(run({"class-eq", "--place", "padic:5", "--input",
                          std::string(R"({"a": )") + d2["norm"].dump() + R"(, "b": )" + norm + "}"}));
    CHECK(eq["equal"] == true);

    // emitted json re-parses to an equal value
    auto t1 = out_of(run({"chart", "--place", "padic:2", "--input",
                          std::string(R"({"norm": )") + norm + "}"}));
    auto t2 = out_of(run({"chart", "--place", "padic:2", "--input",
                          std::string(R"({"point": )") + t1["point"].dump() + "}"}));
    CHECK(t2.contains("boundary"));
}

TEST_CASE("reduce subcommand") {
    auto r = run({"reduce", "--input", R"({"gram": [["1","-1/10"],["-1/10","1/20"]], "d": 2})"});
    auto j = out_of(r);
    CHECK(j["t"].size() == 1);
    CHECK(j["t"][0].get<double>() <= j["c1"].get<double>() + 1e-9);
    CHECK(j.contains("gamma"));
    CHECK(j.contains("g"));
}

TEST_CASE("apartment-cover subcommand") {
    auto j = out_of(run({"apartment-cover", "--input", R"({"logq": ["0", "0", "0"]})"}));
    CHECK(j["count"] == 6);
    CHECK(j["elements"].size() == 6);
    CHECK(j["elements"][0].contains("diag_exponents"));
    CHECK(j["elements"][0].contains("perm"));
}

TEST_CASE("bruhat subcommand") {
    auto j = out_of(run({"bruhat", "--input", R"({"p": 5, "g": [[0,1],[1,0]]})"}));
    CHECK(j["w"] == json::array({1, 0}));
}

TEST_CASE("example subcommands") {
    auto bssb = out_of(run({"example", "bssb", "--input", R"({"n": 40})"}));
    CHECK(bssb["family_y_to_infinity"]["weak_converges"] == true);
    CHECK(bssb["family_y_to_infinity"]["satake_converges"] == true);
    CHECK(bssb["family_x_to_infinity"]["weak_converges"] == true);
    CHECK(bssb["family_x_to_infinity"]["satake_converges"] == false);

    auto tow2 = out_of(run({"example", "tow2"}));
    CHECK(tow2["discontinuous"] == true);

    auto nh = out_of(run({"example", "nonhausdorff", "--input", R"({"b": "1/2"})"}));
    CHECK(nh["threshold"] == "1/2");

    auto hp = out_of(run({"example", "halfplane"}));
    CHECK(hp["inf_in_Uc10"] == true);
    CHECK(hp["z1_in_Uf_diag"] == true);
    CHECK(hp["z2_in_Uf_diag"] == false);

    // csv trace output
    auto csv = run({"example", "bssa", "--format", "csv", "--input", R"({"n": 20})"});
    CHECK(csv.code == 0);
    CHECK(csv.output.find("n,t,bs_bound") != std::string::npos);

    // sweep mode stays deterministic
    auto s1 = run({"example", "tow2", "--sweep", "n=10:20:3", "--jobs", "2"});
    auto s2 = run({"example", "tow2", "--sweep", "n=10:20:3", "--jobs", "1"});
    CHECK(s1.code == 0);
    CHECK(s1.output == s2.output);
}

TEST_CASE("laurent place end to end") {
    // norm over F_3(T) at the T-adic place: |T|=1/3
    auto r = run({"eval", "--place", "laurent:3", "--input",
                  R"({"norm": {"basis": [[{"num":[1],"den":[1]}, {"num":[0],"den":[1]}],[{"num":[0],"den":[1]}, {"num":[1],"den":[1]}]], "weights": ["1","1"]}, "x": [{"num":[0,1],"den":[1]}, {"num":[1],"den":[1]}]})"});
    auto j = out_of(r);
    CHECK(j["value"] == "1");  // max(|T|, |1|) = 1

    auto r2 = run({"iwasawa", "--place", "laurent:3", "--input",
                   R"({"g": [[{"num":[0,1],"den":[1]}, {"num":[1],"den":[1]}],[{"num":[0],"den":[1]}, {"num":[1],"den":[1]}]]})"});
    CHECK(out_of(r2).contains("exps"));
}
