#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "slitflow/analysis.hpp"

using namespace slitflow;

TEST_CASE("fit_loglog recovers exact power laws") {
    std::vector<double> xs, ys;
    for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        xs.push_back(x);
        ys.push_back(x);
    }
    CHECK(std::abs(fit_loglog(xs, ys).slope - 1.0) <= 1e-12);

    ys.clear();
    for (double x : xs) ys.push_back(1.0 / (x * x));
    CHECK(std::abs(fit_loglog(xs, ys).slope + 2.0) <= 1e-12);

    ys.clear();
    for (double x : xs) ys.push_back(3.0 * std::sqrt(x));
    const RateFit f = fit_loglog(xs, ys);
    CHECK(std::abs(f.slope - 0.5) <= 1e-12);
    CHECK(std::abs(f.intercept - std::log(3.0)) <= 1e-12);
    CHECK(f.max_residual <= 1e-12);
    CHECK(f.points.size() == xs.size());
}

TEST_CASE("fit_loglog domain errors") {
    const std::vector<double> two{1.0, 2.0};
    CHECK_THROWS_AS(fit_loglog(two, two), std::domain_error);
    const std::vector<double> xs{1.0, 2.0, 3.0};
    const std::vector<double> bad{1.0, -2.0, 3.0};
    CHECK_THROWS_AS(fit_loglog(xs, bad), std::domain_error);
    const std::vector<double> shorter{1.0, 2.0};
    CHECK_THROWS_AS(fit_loglog(xs, shorter), std::domain_error);
}

TEST_CASE("registry is populated with unique names") {
    const auto& reg = check_registry();
    CHECK(reg.size() >= 10);
    std::set<std::string> names;
    for (const auto& entry : reg) names.insert(entry.name);
    CHECK(names.size() == reg.size());
}

TEST_CASE("a check emits its artifact and subchecks") {
    const CheckContext ctx{std::filesystem::temp_directory_path() / "slitflow_test_chk", 12345};
    const CheckResult res = check_endpoint_rates(ctx);
    CHECK(res.name == "endpoint_rates");
    CHECK(res.passed);
    CHECK(res.subchecks.size() == 5);
    REQUIRE(res.artifacts.size() == 1);
    CHECK(std::filesystem::exists(res.artifacts[0]));
    // worst() picks the closest call when everything passes.
    CHECK(res.worst().passed);
}
