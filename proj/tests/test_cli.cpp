#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <random>

#include "klpoly/io.hpp"
#include "klpoly/jobs.hpp"
#include "klpoly/parse.hpp"
#include "klpoly/testfamily.hpp"

using namespace klpoly;
using FE = FunctionExpr;

namespace {
namespace fs = std::filesystem;

std::string tmp_path(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}
} // namespace

TEST_CASE("parse: grammar forms") {
    CHECK(structurally_equal(parse_function("exp(-1*x)"), FE::exp_decay(1.0)));
    CHECK(structurally_equal(parse_function("exp(-2.5*x^2)"), FE::gaussian(2.5)));
    CHECK(structurally_equal(parse_function("x^2*exp(-0.5*x)"), FE::pow_exp(2, 0.5)));
    CHECK(structurally_equal(parse_function("indicator(1,2)"), FE::indicator(1.0, 2.0)));
    CHECK(structurally_equal(parse_function(" exp( -1 * x ) + indicator( 0.5 , 2 ) "),
                             FE::sum(FE::exp_decay(1.0), FE::indicator(0.5, 2.0))));
    const FE scaled = parse_function("1.2533141373*exp(-1*x)");
    const auto* s = std::get_if<FE::Scaled>(&scaled.node());
    REQUIRE(s != nullptr);
    CHECK(s->c == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
}

TEST_CASE("parse: errors carry positions") {
    CHECK_THROWS_AS(parse_function("indicator(1,0)"), ParseError);
    CHECK_THROWS_AS(parse_function("exp(1*x)"), ParseError);
    CHECK_THROWS_AS(parse_function("exp(-1*x) + "), ParseError);
    CHECK_THROWS_AS(parse_function("x^-1*exp(-1*x)"), ParseError);
    CHECK_THROWS_AS(parse_function("spam(1)"), ParseError);
    CHECK_THROWS_AS(parse_function("exp(-1*x) junk"), ParseError);
    try {
        parse_function("indicator(1 2)");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position > 0);
    }
}

TEST_CASE("parse/render round trip over the registry") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 40; ++i) {
        FE e = random_family_expr(rng);
        if (i % 3 == 0) e = FE::sum(e, random_family_expr(rng));
        const FE back = parse_function(render_function(e));
        CAPTURE(render_function(e));
        CHECK(structurally_equal(e, back));
    }
    // table-backed variant round-trips through its source path
    const std::string path = tmp_path("klpoly_cli_tab.csv");
    save_curve_csv(Curve{{0.0, 1.0, 2.0}, {1.0, 0.5, 0.0}}, path);
    const FE tab = parse_function("table:" + path);
    CHECK(structurally_equal(tab, parse_function(render_function(tab))));
    fs::remove(path);
}

TEST_CASE("grid spec parsing") {
    const GridSpec g = parse_grid("0.05:8:160");
    CHECK(g.kind == GridSpec::Kind::uniform);
    CHECK(g.n == 160);
    const GridSpec lg = parse_grid("1e-3:40:400:log");
    CHECK(lg.kind == GridSpec::Kind::log_uniform);
    CHECK(parse_grid(render_grid(lg)).lo == lg.lo);
    CHECK_THROWS_AS(parse_grid("1:2"), ParseError);
    CHECK_THROWS_AS(parse_grid("2:1:10"), DomainError);
}

TEST_CASE("jobs: transform writes deterministic csv") {
    const std::string out = tmp_path("klpoly_job_transform.csv");
    JobSpec job{"transform",
                {{"kind", "cosine"},
                 {"f", "1.2533141373*exp(-1*x)"},
                 {"ygrid", "0.5:4:8"},
                 {"out", out}}};
    CHECK(run_job(job) == 0);
    const std::string first = read_text_file(out);
    CHECK(run_job(job) == 0);
    CHECK(read_text_file(out) == first);  // byte-identical reruns

    // spot-check a value: F_c = 1/(1+y^2) at y = 0.5
    const auto rows = parse_two_column_csv(first);
    CHECK(rows[0].first == doctest::Approx(0.5));
    CHECK(rows[0].second == doctest::Approx(0.8).epsilon(1e-8));
    fs::remove(out);
}

TEST_CASE("jobs: exit-code contract") {
    // input errors -> 2
    CHECK(run_job(JobSpec{"transform", {{"kind", "cosine"}, {"f", "exp(1*x)"}}}) == 2);
    CHECK(run_job(JobSpec{"transform", {{"f", "exp(-1*x)"}}}) == 2);  // missing kind
    CHECK(run_job(JobSpec{"nonsense", {}}) == 2);
    CHECK(run_job(JobSpec{"transform",
                          {{"kind", "cosine"}, {"f", "exp(-1*x)"}, {"tol", "bogus"}}}) == 2);

    // numeric failure -> 1: the resolvent symbol collapses for this phi
    const std::string out = tmp_path("klpoly_job_singular.json");
    JobSpec bad{"solve-th",
                {{"xi", "exp(-1*x)"},
                 {"phi", "-1.2533141373*exp(-1*x)"},
                 {"h", "indicator(1,2)"},
                 {"beta", "0.5"},
                 {"delta", "0.01"},
                 {"grid", "1e-3:40:60:log"},
                 {"out", out}}};
    CHECK(run_job(bad) == 1);
}

TEST_CASE("jobs: audit json output shape") {
    const std::string out = tmp_path("klpoly_job_audit.json");
    JobSpec job{"audit", {{"suite", "kernel"}, {"out", out}, {"format", "json"}}};
    CHECK(run_job(job) == 0);  // exit 0 means every report passed
    const std::string text = read_text_file(out);
    CHECK(text.front() == '[');  // a JSON array of reports
    CHECK(text.find("\"lhs\"") != std::string::npos);
    CHECK(text.find("\"margin\"") != std::string::npos);
    CHECK(text.find("\"pass\": false") == std::string::npos);
    fs::remove(out);
}

TEST_CASE("jobs: explicit audit config") {
    const std::string cfgfile = tmp_path("klpoly_audit_cfg.json");
    const std::string out = tmp_path("klpoly_audit_cfg_out.json");
    write_text_atomic(cfgfile,
                      "[{\"kind\": \"kernel\", \"integral\": \"i1\", "
                      "\"c1\": 1, \"c2\": 1, \"c3\": 1},\n"
                      " {\"kind\": \"linfty\", \"f\": \"exp(-1*x)\", \"g\": \"exp(-1*x)\", "
                      "\"h\": \"indicator(1,2)\", \"p\": 1.5, \"q\": 1.5, \"r\": 1.5, "
                      "\"beta\": 0.5}]\n");
    CHECK(run_job(JobSpec{"audit", {{"config", cfgfile}, {"out", out}}}) == 0);
    CHECK(read_text_file(out).find("\"pass\": false") == std::string::npos);

    write_text_atomic(cfgfile, "[{\"kind\": \"bogus\"}]");
    CHECK(run_job(JobSpec{"audit", {{"config", cfgfile}, {"out", out}}}) == 2);
    for (const auto& p : {cfgfile, out}) fs::remove(p);
}

TEST_CASE("jobs: batch file fan-out") {
    const std::string out1 = tmp_path("klpoly_batch1.csv");
    const std::string out2 = tmp_path("klpoly_batch2.csv");
    const std::string jobfile = tmp_path("klpoly_jobs.json");
    write_text_atomic(jobfile, std::string("{\"jobs\": [\n") +
                                   "{\"command\": \"transform\", \"kind\": \"sine\", "
                                   "\"f\": \"exp(-1*x)\", \"ygrid\": \"0.5:4:8\", \"out\": \"" +
                                   out1 + "\"},\n" +
                                   "{\"command\": \"transform\", \"kind\": \"cosine\", "
                                   "\"f\": \"exp(-1*x)\", \"ygrid\": \"0.5:4:8\", \"out\": \"" +
                                   out2 + "\"}\n]}\n");
    CHECK(run_job_file(jobfile) == 0);
    CHECK(fs::exists(out1));
    CHECK(fs::exists(out2));
    for (const auto& p : {out1, out2, jobfile}) fs::remove(p);
}
