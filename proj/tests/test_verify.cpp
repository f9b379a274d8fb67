#include "doctest.h"
#include "quandlekit/verify.hpp"

using namespace qk;

TEST_CASE("check registry and deviation lookups") {
    auto names = verify_check_names();
    CHECK(names.size() >= 15);
    CHECK(std::find(names.begin(), names.end(), "cor14-eq-def6") != names.end());
    CHECK(is_known_deviation("lemma19-shadow", "hopf+", "F_2[t]/(t^2+t+1)"));
    CHECK_FALSE(is_known_deviation("lemma19-shadow", "hopf+", "F_2[t]/(t^2+1)"));
    CHECK(is_known_deviation("thm20-shadow", "whitehead", "F_2[t]/(t^2+1)"));
    CHECK_FALSE(is_known_deviation("thm20-shadow", "hopf+", "F_2[t]/(t^2+1)"));
}

TEST_CASE("single-check runs on a restricted catalog") {
    VerifyOptions opt;
    opt.links = {"trefoil", "unknot"};
    opt.only_check = "longitude-sum";
    auto results = run_verify(opt);
    REQUIRE(results.size() == 1);
    CHECK(results[0].name == "longitude-sum");
    CHECK(results[0].ok(false));
    CHECK(results[0].ok(true));
    CHECK(results[0].instances.size() == 12);  // 2 links x 6 rings
}

TEST_CASE("virtual links report longitude-sum as not applicable") {
    VerifyOptions opt;
    opt.links = {"vtrefoil"};
    opt.only_check = "longitude-sum";
    auto results = run_verify(opt);
    REQUIRE(results.size() == 1);
    REQUIRE(results[0].instances.size() == 1);
    CHECK(results[0].instances[0].not_applicable);
    CHECK(results[0].ok(false));
}

TEST_CASE("strict mode turns recorded deviations into failures") {
    VerifyOptions opt;
    opt.links = {"hopf+"};
    opt.only_check = "lemma19-shadow";
    auto results = run_verify(opt);
    REQUIRE(results.size() == 1);
    CHECK(results[0].deviations() == 4);  // the four rings where t-1 is a unit
    CHECK(results[0].ok(false));
    CHECK_FALSE(results[0].ok(true));
    std::string text = format_check_result(results[0], true, false);
    CHECK(text.find("FAIL") != std::string::npos);
}
