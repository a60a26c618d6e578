#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "ssbh/cli/commands.hpp"
#include "ssbh/error.hpp"
#include "ssbh/limits.hpp"

using namespace ssbh;
using namespace ssbh::cli;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidParameter;
}

struct Run {
    int status;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(SSBH_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

double testutil_rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

const KeyValues kFig = {{"gamma1", "0.4"}, {"gamma2", "1.6"}, {"T1", "4"}, {"T2", "2"}};

}  // namespace

TEST_CASE("key-value config text") {
    const KeyValues kv = parse_config_text("# comment\n chi = 2 \n\nT1=4 # trailing\nT2 = 2\n");
    CHECK(kv.at("chi") == "2");
    CHECK(kv.at("T1") == "4");
    CHECK(kv.size() == 3);
    CHECK(code_of([] { parse_config_text("chi 2\n"); }) == ErrorCode::ConfigError);

    const KeyValues js = parse_config_text(R"({"chi": 2, "T1": 4.5, "initial": "vacuum"})");
    CHECK(get_double(js, "chi") == 2.0);
    CHECK(js.at("initial") == "vacuum");
    CHECK(code_of([] { parse_config_text("{\"chi\": [1, 2]}"); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { parse_config_text("{oops"); }) == ErrorCode::ConfigError);
}

TEST_CASE("overrides and lookups") {
    KeyValues kv;
    apply_override(kv, "chi=3");
    apply_override(kv, " T1 = 2.5 ");
    CHECK(get_double(kv, "chi") == 3.0);
    CHECK(get_double(kv, "T1") == 2.5);
    CHECK(get_double(kv, "missing", 7.0) == 7.0);
    CHECK(code_of([&] { apply_override(kv, "chi"); }) == ErrorCode::ConfigError);
    CHECK(code_of([&] { apply_override(kv, "=1"); }) == ErrorCode::ConfigError);
    apply_override(kv, "bad=1x");
    CHECK(code_of([&] { get_double(kv, "bad"); }) == ErrorCode::ConfigError);
    CHECK(code_of([&] { get_double(kv, "missing"); }) == ErrorCode::ConfigError);
}

TEST_CASE("grids") {
    CHECK(parse_grid("0.5,1,4") == std::vector<double>{0.5, 1.0, 4.0});
    CHECK(parse_grid("3") == std::vector<double>{3.0});
    const auto lin = parse_grid("0:1:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[2] == doctest::Approx(0.5));
    CHECK(lin.back() == 1.0);
    const auto lg = parse_grid("log:1:1000:4");
    REQUIRE(lg.size() == 4);
    CHECK(lg[1] == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(code_of([] { parse_grid("0:1:2.5"); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { parse_grid("log:0:1:5"); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { parse_grid("1,,2"); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { parse_grid(""); }) == ErrorCode::ConfigError);
}

TEST_CASE("setup resolution") {
    const Setup a = resolve_setup({{"lambda", "1"}, {"asymmetry", "0.6"}, {"Tm", "5"}, {"deltaT", "5"}, {"chi", "2"}});
    CHECK(a.bath1.gamma == doctest::Approx(0.4));
    CHECK(a.bath2.gamma == doctest::Approx(1.6));
    CHECK(a.bath1.temperature == 7.5);
    CHECK(a.bath2.temperature == 2.5);
    CHECK(a.system.chi == 2.0);
    CHECK(a.system.omega0 == 1.0);
    CHECK(a.system.eps == 0.1);
    CHECK(a.spectral.omega_c == 1000.0);

    const Setup b = resolve_setup({{"gamma1", "1"}, {"gamma2", "1"}, {"T1", "300"}, {"r", "0.5"}});
    CHECK(b.bath2.temperature == 150.0);

    CHECK(code_of([] { resolve_setup({{"gamma1", "1"}, {"lambda", "1"}, {"T1", "1"}, {"T2", "1"}}); }) ==
          ErrorCode::ConfigError);
    CHECK(code_of([] { resolve_setup({{"gamma1", "1"}, {"gamma2", "1"}, {"T1", "1"}}); }) == ErrorCode::ConfigError);
    CHECK(code_of([] { resolve_setup({{"gamma1", "1"}, {"gamma2", "1"}, {"T1", "1"}, {"T2", "1"}, {"Tm", "2"}}); }) ==
          ErrorCode::ConfigError);
    CHECK(code_of([] { resolve_setup({{"gamma1", "1"}, {"gamma2", "1"}, {"T1", "1"}, {"r", "1.5"}}); }) ==
          ErrorCode::ConfigError);
    CHECK(code_of([] { resolve_setup({{"gamma1", "1"}, {"gamma2", "1"}, {"T1", "-1"}, {"T2", "1"}}); }) ==
          ErrorCode::ConfigError);

    const TruncationOptions o = truncation_options({{"tol", "1e-12"}, {"cap", "5000"}});
    CHECK(o.tol == 1e-12);
    CHECK(o.cap == 5000);
    CHECK(code_of([] { truncation_options({{"cap", "2.5"}}); }) == ErrorCode::ConfigError);
}

TEST_CASE("csv and json tables") {
    Table t;
    t.command = "demo";
    t.columns = {"x", "y"};
    t.config = {{"chi", "1"}};
    t.add_row({0.1, std::nullopt}, "failed point");
    t.add_row({1.0 / 3.0, 2.0});
    t.warnings.push_back("careful");
    CHECK(t.column("y") == 1);
    CHECK_THROWS(t.column("z"));

    std::ostringstream csv;
    write_csv(csv, t);
    const std::string text = csv.str();
    CHECK(text.find("# schema_version = 1") != std::string::npos);
    CHECK(text.find("# config.chi = 1") != std::string::npos);
    CHECK(text.find("# warning = careful") != std::string::npos);
    CHECK(text.find("x,y,note\n0.10000000000000001,,failed point\n") != std::string::npos);
    CHECK(text.find("0.33333333333333331,2,\n") != std::string::npos);

    std::ostringstream js;
    write_json(js, t);
    const auto j = nlohmann::json::parse(js.str());
    CHECK(j["schema_version"] == 1);
    CHECK(j["meta"]["command"] == "demo");
    CHECK(j["rows"][0][1].is_null());
    CHECK(j["rows"][1][0].get<double>() == 1.0 / 3.0);
    CHECK(j["columns"].back() == "note");
}

TEST_CASE("ness command") {
    KeyValues kv = kFig;
    kv["chi"] = "0.5,4";
    kv["reference_T"] = "3";
    const Table t = cmd_ness(kv);
    CHECK(t.columns.back() == "rho_eq");
    CHECK(t.meta.size() == 2);
    double mass_a = 0.0, mass_b = 0.0;
    for (const auto& row : t.rows) (*row[0] == 0.5 ? mass_a : mass_b) += *row[2];
    CHECK(mass_a == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mass_b == doctest::Approx(1.0).epsilon(1e-13));

    // Equal temperatures: rho matches the Gibbs column.
    KeyValues eq = {{"gamma1", "0.4"}, {"gamma2", "1.6"}, {"T1", "3.5"}, {"T2", "3.5"}, {"chi", "1"},
                    {"reference_T", "3.5"}};
    for (const auto& row : cmd_ness(eq).rows) CHECK(std::abs(*row[2] - *row[3]) < 1e-13);

    // chi = 4 at low temperature is nearly a two-level system.
    for (const char* t1 : {"2", "5"}) {
        const Table low = cmd_ness({{"gamma1", "0.4"}, {"gamma2", "1.6"}, {"T1", t1}, {"T2", t1[0] == '2' ? "5" : "2"},
                                    {"chi", "4"}});
        CHECK(*low.rows[0][2] + *low.rows[1][2] > 0.97);
        CHECK(*low.rows[3][2] < 1e-3);
    }

    CHECK(code_of([&] { cmd_ness({{"gamma1", "1"}, {"gamma2", "1"}, {"T1", "1"}, {"T2", "1"}, {"gama", "1"}}); }) ==
          ErrorCode::ConfigError);
}

TEST_CASE("scan command") {
    KeyValues kv = {{"lambda", "1"}, {"asymmetry", "0.6"}, {"Tm", "5"}, {"deltaT", "5"}, {"axis", "chi"},
                    {"grid", "0,0.5,2"}};
    const Table t = cmd_scan(kv, {2});
    REQUIRE(t.rows.size() == 3);
    const std::size_t ri = t.column("R_I"), rj = t.column("R_J");
    CHECK(std::abs(*t.rows[0][ri]) < 1e-10);
    CHECK(*t.rows[1][ri] > 0.0);
    CHECK(*t.rows[1][rj] < 0.0);
    CHECK(*t.rows[2][t.column("A")] == doctest::Approx(0.01 * 0.64 / 2.0));

    KeyValues t1 = {{"gamma1", "1"}, {"gamma2", "1"}, {"r", "0.3333333333333333"}, {"chi", "10"},
                    {"axis", "T1_over_omega0"}, {"grid", "0.1,1,10"}};
    const Table ts = cmd_scan(t1);
    CHECK(*ts.rows[1][ts.column("T1")] == doctest::Approx(11.0));
    CHECK(*ts.rows[1][ts.column("T1_over_omega0")] == doctest::Approx(1.0));
    CHECK(std::abs(*ts.rows[0][ts.column("R_I")]) < 1e-12);
    CHECK(ts.rows[0][ts.column("Ttilde_over_chi")].has_value());

    KeyValues g = {{"lambda", "1"}, {"Tm", "5"}, {"deltaT", "5"}, {"axis", "gamma"}, {"grid", "0:1:11"},
                   {"chis", "0.5,2"}};
    const Table tg = cmd_scan(g);
    CHECK(tg.rows.size() == 22);

    CHECK(code_of([&] {
              KeyValues bad = kv;
              bad["axis"] = "nope";
              cmd_scan(bad);
          }) == ErrorCode::ConfigError);
    CHECK(code_of([&] {
              KeyValues bad = kv;
              bad.erase("grid");
              cmd_scan(bad);
          }) == ErrorCode::ConfigError);
}

TEST_CASE("scan reports failing points as empty rows") {
    KeyValues kv = {{"gamma1", "1"}, {"gamma2", "1"}, {"T1", "1e5"}, {"T2", "5e4"}, {"omega_c", "1e8"},
                    {"axis", "chi"}, {"grid", "0,1"}, {"cap", "1000"}};
    const Table t = cmd_scan(kv);
    REQUIRE(t.rows.size() == 2);
    CHECK(!t.rows[0][t.column("I")].has_value());
    CHECK(t.notes[0].find("TruncationOverflow") != std::string::npos);
}

TEST_CASE("dynamics command") {
    KeyValues kv = kFig;
    kv["chi"] = "0,1";
    kv["t_points"] = "20";
    const Table t = cmd_dynamics(kv);
    REQUIRE(t.rows.size() == 40);
    CHECK(t.notes[0] == "closed form (chi = 0)");
    CHECK(*t.rows[0][t.column("N")] > 0.0);
    CHECK(*t.rows[39][t.column("t")] == doctest::Approx(1e3));

    KeyValues eq = {{"gamma1", "0.4"}, {"gamma2", "1.6"}, {"T1", "2"}, {"T2", "2"}, {"chi", "1"},
                    {"initial", "gibbs:2"}, {"times", "0,1,10,100"}};
    const Table te = cmd_dynamics(eq);
    const double n0 = *te.rows[0][te.column("N")];
    for (const auto& row : te.rows) CHECK(*row[te.column("N")] == doctest::Approx(n0).epsilon(1e-10));

    eq["initial"] = "thermal";
    CHECK(code_of([&] { cmd_dynamics(eq); }) == ErrorCode::ConfigError);
    eq["initial"] = "vacuum";
    eq["times"] = "5,1";
    CHECK(code_of([&] { cmd_dynamics(eq); }) == ErrorCode::ConfigError);
}

TEST_CASE("long-time dynamics agrees with the steady state") {
    KeyValues kv = kFig;
    kv["chi"] = "1";
    kv["times"] = "1e6";
    const Table d = cmd_dynamics(kv);
    kv.erase("times");
    const Table n = cmd_ness(kv);
    const std::string& summary = n.meta.front().second;
    const auto field = [&](const std::string& key) {
        const auto at = summary.find(" " + key + "=");
        return std::stod(summary.substr(at + key.size() + 2));
    };
    CHECK(std::abs(*d.rows[0][d.column("N")] - field("mean_N")) < 1e-8);
    CHECK(std::abs(*d.rows[0][d.column("H")] - field("mean_H")) < 1e-8);
    CHECK(std::abs(*d.rows[0][d.column("I1")] - field("I")) < 1e-8);
    CHECK(std::abs(*d.rows[0][d.column("J2")] + field("J")) < 1e-8);
}

TEST_CASE("tss command") {
    KeyValues kv = kFig;
    kv["grid"] = "0,1,50";
    const Table t = cmd_tss(kv);
    REQUIRE(t.rows.size() == 3);
    const std::size_t ts = t.column("t_ss");
    CHECK(*t.rows[0][ts] == doctest::Approx(50.05).epsilon(1e-4));
    CHECK(*t.rows[2][t.column("t_ss_two_level")] == doctest::Approx(*t.rows[2][ts]).epsilon(1e-6));
    CHECK(*t.rows[1][t.column("t_ss_harmonic")] == *t.rows[0][ts]);
    CHECK(*t.rows[2][t.column("eps2_t_ss")] == doctest::Approx(0.01 * *t.rows[2][ts]));

    // Weak interaction approaches the harmonic value; eps^2 t_ss does not depend on eps.
    kv["grid"] = "0.002";
    const Table weak = cmd_tss(kv);
    CHECK(testutil_rel(*weak.rows[0][ts], *t.rows[0][ts]) < 0.05);
    kv["grid"] = "1";
    const double ref = *cmd_tss(kv).rows[0][t.column("eps2_t_ss")];
    kv["eps"] = "0.05";
    CHECK(*cmd_tss(kv).rows[0][t.column("eps2_t_ss")] == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("cli binary") {
    const std::string base = "--set gamma1=0.4 --set gamma2=1.6 --set T1=4 --set T2=2 --set chi=0.5,1,2 ";
    SUBCASE("deterministic across thread counts") {
        const Run a = run_cli("ness " + base + "-j 1");
        const Run b = run_cli("ness " + base + "-j 3");
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("chi,n,rho,note") != std::string::npos);
    }
    SUBCASE("json round trip") {
        const Run a = run_cli("tss " + base + "-f json");
        REQUIRE(a.status == 0);
        const auto j = nlohmann::json::parse(a.out);
        CHECK(j["meta"]["command"] == "tss");
        const std::string path = "ssbh_cli_roundtrip.json";
        std::ofstream(path) << a.out;
        const Run b = run_cli("tss -f json -c " + path);
        std::remove(path.c_str());
        CHECK(b.status == 0);
        CHECK(nlohmann::json::parse(b.out)["rows"] == j["rows"]);
    }
    SUBCASE("exit codes") {
        CHECK(run_cli("ness --set T1=1").status == 2);
        CHECK(run_cli("ness --bogus").status == 2);
        CHECK(run_cli("").status == 2);
        CHECK(run_cli("ness -c /nonexistent/file").status == 2);
        CHECK(run_cli("ness --set gamma1=1 --set gamma2=1 --set T1=1e5 --set T2=1e5 --set omega_c=1e9 --set cap=100")
                  .status == 3);
        CHECK(run_cli("--version").status == 0);
    }
    SUBCASE("tolerance flag reaches the config") {
        const Run a = run_cli("ness " + base + "--tol 1e-12");
        CHECK(a.out.find("# config.tol = 9.9999999999999998e-13") != std::string::npos);
    }
}
