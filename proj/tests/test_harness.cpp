#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "qcs/harness.hpp"
#include "qcs/spacetime.hpp"

using namespace qcs;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/qcs_test_" + name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    return path;
}

const char* kMinimal =
    "protocol = teleport\n"
    "omega = 2.0\n"
    "tau = 0.3\n"
    "delta = 0.1\n"
    "trials = 4\n"
    "seed = 17\n";

Scenario quick_teleport(double omega, double tau, double delta,
                        std::uint64_t trials, std::uint64_t seed) {
    Scenario s;
    s.protocol = "teleport";
    s.omega = omega;
    s.tau = tau;
    s.delta = delta;
    s.trials = trials;
    s.seed = seed;
    const double r = 1.0 / std::sqrt(2.0);
    s.alpha = r;
    s.beta = r;
    s.correction_time = 0.8;
    return s;
}

} // namespace

TEST_CASE("load_scenario") {
    SUBCASE("minimal file with defaults") {
        const Scenario s = load_scenario(write_temp("min.txt", kMinimal));
        CHECK(s.protocol == "teleport");
        CHECK(s.omega == 2.0);
        CHECK(s.tau == 0.3);
        REQUIRE(s.delta.has_value());
        CHECK(*s.delta == 0.1);
        CHECK(s.trials == 4);
        CHECK(s.seed == 17);
        CHECK(s.alpha_beta_defaulted);
        CHECK(std::abs(s.alpha - Amplitude(1.0 / std::sqrt(2.0), 0.0)) <
              1e-15);
    }
    SUBCASE("comments, blank lines and sections tolerated") {
        const std::string body = std::string("# header\n\n[scenario]\n") +
                                 kMinimal + "  # trailing comment line\n";
        CHECK_NOTHROW(load_scenario(write_temp("cmt.txt", body)));
    }
    SUBCASE("unknown key named with its line") {
        const std::string body = std::string(kMinimal) + "bogus = 1\n";
        try {
            load_scenario(write_temp("unk.txt", body));
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("line 7") != std::string::npos);
            CHECK(msg.find("bogus") != std::string::npos);
        }
    }
    SUBCASE("duplicate key rejected") {
        const std::string body = std::string(kMinimal) + "omega = 3\n";
        CHECK_THROWS_AS(load_scenario(write_temp("dup.txt", body)),
                        ScenarioError);
    }
    SUBCASE("missing required key named") {
        const std::string body =
            "protocol = teleport\nomega = 1\ntau = 0\ndelta = 0\ntrials = 1\n";
        try {
            load_scenario(write_temp("noseed.txt", body));
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(std::string(e.what()).find("seed") != std::string::npos);
        }
    }
    SUBCASE("trials = 0 names the field") {
        std::string body = kMinimal;
        body.replace(body.find("trials = 4"), 10, "trials = 0");
        try {
            load_scenario(write_temp("t0.txt", body));
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(std::string(e.what()).find("trials") != std::string::npos);
        }
    }
    SUBCASE("malformed number carries the line") {
        std::string body = kMinimal;
        body.replace(body.find("omega = 2.0"), 11, "omega = abc");
        try {
            load_scenario(write_temp("bad.txt", body));
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
            CHECK(std::string(e.what()).find("omega") != std::string::npos);
        }
    }
    SUBCASE("cabrillo delta") {
        std::string body = kMinimal;
        body.replace(body.find("delta = 0.1"), 11, "delta = cabrillo");
        const Scenario s = load_scenario(write_temp("cab.txt", body));
        CHECK(!s.delta.has_value());
    }
    SUBCASE("unrecognized protocol rejected") {
        std::string body = kMinimal;
        body.replace(body.find("teleport"), 8, "whatever");
        CHECK_THROWS_AS(load_scenario(write_temp("prot.txt", body)),
                        ScenarioError);
    }
    SUBCASE("non-comoving protocol scenario rejected") {
        const std::string body = std::string(kMinimal) + "va_x = 0.1\n";
        CHECK_THROWS_AS(load_scenario(write_temp("vel.txt", body)),
                        ScenarioError);
    }
    SUBCASE("seed override") {
        const Scenario s =
            load_scenario(write_temp("ovr.txt", kMinimal), std::uint64_t{99});
        CHECK(s.seed == 99);
    }
    SUBCASE("explicit preparation must be normalized") {
        const std::string body =
            std::string(kMinimal) + "alpha_re = 1\nbeta_re = 1\n";
        CHECK_THROWS_AS(load_scenario(write_temp("norm.txt", body)),
                        ScenarioError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_scenario("/tmp/qcs_no_such_file.txt"),
                        ScenarioError);
    }
}

TEST_CASE("run determinism and schemas") {
    SUBCASE("identical scenario gives identical bytes") {
        const Scenario s = quick_teleport(2.0, 0.3, 0.1, 50, 7);
        CHECK(format_csv(run(s)) == format_csv(run(s)));
    }
    SUBCASE("per-trial records independent of the batch size") {
        Scenario s5 = quick_teleport(2.0, 0.3, 0.1, 5, 7);
        Scenario s3 = s5;
        s3.trials = 3;
        const ResultTable t5 = run(s5);
        const ResultTable t3 = run(s3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(t5.rows[i] == t3.rows[i]);
        }
    }
    SUBCASE("teleport column schema is pinned") {
        const ResultTable t = run(quick_teleport(1.0, 0.0, 0.0, 1, 1));
        REQUIRE(t.columns.size() == 5);
        CHECK(t.columns[0] == "trial");
        CHECK(t.columns[1] == "bell_outcome");
        CHECK(t.columns[2] == "readout_bit_q1");
        CHECK(t.columns[3] == "readout_bit_q2");
        CHECK(t.columns[4] == "t_A");
        CHECK(t.rows.size() == 1);
    }
    SUBCASE("row count equals trials") {
        CHECK(run(quick_teleport(1.0, 0.0, 0.0, 12, 3)).rows.size() == 12);
    }
    SUBCASE("comment block echoes oracle values, record stream does not") {
        const Scenario s = quick_teleport(2.0, 0.34375, 0.1, 3, 7);
        const ResultTable t = run(s);
        const std::string full = format_csv(t);
        const std::string records = record_stream(t);
        CHECK(full.find("0.34375") != std::string::npos);
        CHECK(records.find("0.34375") == std::string::npos);
        CHECK(records.rfind("trial,", 0) == 0);
        CHECK(full.rfind("# ", 0) == 0);
    }
    SUBCASE("ramsey table matches the model on a coarse grid") {
        Scenario s;
        s.protocol = "ramsey";
        s.omega = 2.0;
        s.tau = 0.0;
        s.delta = 0.0;
        s.trials = 2000;
        s.seed = 5;
        s.ramsey_points = 5;
        const ResultTable t = run(s);
        REQUIRE(t.rows.size() == 5);
        for (const auto& row : t.rows) {
            const double freq = std::get<double>(row[5]);
            const double pred = std::get<double>(row[6]);
            CHECK(std::abs(freq - pred) < 0.05);
        }
        // endpoints of the omega*T grid
        CHECK(std::get<double>(t.rows[0][1]) == doctest::Approx(0.0));
        CHECK(std::get<double>(t.rows[4][1]) ==
              doctest::Approx(2.0 * kPi));
    }
    SUBCASE("phase-map rows evaluate the two-point phase") {
        Scenario s;
        s.protocol = "phase-map";
        s.omega = 3.0;
        s.tau = 0.0;
        s.delta = 0.25;
        s.trials = 1;
        s.seed = 1;
        s.map_points = 4;
        s.map_t0 = 0.0;
        s.map_dt = 0.5;
        const ResultTable t = run(s);
        REQUIRE(t.rows.size() == 4);
        for (std::size_t j = 0; j < 4; ++j) {
            const double t1 = 0.5 * static_cast<double>(j);
            const double want = -3.0 * t1 + 0.25; // rest frame, x2 at origin
            CHECK(std::get<double>(t.rows[j][9]) == doctest::Approx(want));
            CHECK(std::get<double>(t.rows[j][10]) ==
                  doctest::Approx(wrap_phase(want)));
        }
    }
}

TEST_CASE("csv emission") {
    SUBCASE("17-digit round trip") {
        const Scenario s = quick_teleport(kPi, 1.0 / 3.0, 0.1, 2, 9);
        const std::string path = "/tmp/qcs_test_roundtrip.csv";
        emit_csv(run(s), path);
        std::ifstream in(path);
        std::string line, ta_field;
        // find the first data row and re-parse the t_A column
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] != '#' && line[0] != 't') {
                const auto pos = line.rfind(',');
                ta_field = line.substr(pos + 1);
                break;
            }
        }
        REQUIRE(!ta_field.empty());
        CHECK(std::stod(ta_field) == 0.8);
    }
    SUBCASE("unwritable path fails") {
        const ResultTable t = run(quick_teleport(1.0, 0.0, 0.0, 1, 1));
        CHECK_THROWS(emit_csv(t, "/nonexistent_dir/x.csv"));
    }
}

TEST_CASE("estimate_table") {
    SUBCASE("teleport recovery of delta - omega tau") {
        const double w = 2.0, tau = 0.4, delta = 0.9;
        Scenario s = quick_teleport(w, tau, delta, 4000, 21);
        const ResultTable t = estimate_table(s);
        REQUIRE(t.rows.size() == 1);
        const double phi_hat = std::get<double>(t.rows[0][0]);
        CHECK(std::abs(wrap_phase(phi_hat - (delta - w * tau))) < 0.08);
        const double tau_hat = std::get<double>(t.rows[0][4]);
        const double period = std::get<double>(t.rows[0][5]);
        CHECK(period == doctest::Approx(kPi));
        // with assumed_delta defaulting to 0 the class contains tau - delta/w
        CHECK(std::abs(std::remainder(tau_hat - (tau - delta / w), period)) <
              0.05);
    }
    SUBCASE("basic-qcs agrees with teleport on the same scenario") {
        const double w = 1.5, tau = 0.35, delta = 0.6;
        Scenario tp = quick_teleport(w, tau, delta, 6000, 22);
        Scenario bq = tp;
        bq.protocol = "basic-qcs";
        bq.bob_measure_time = 0.0;
        bq.alice_readout_time = 1.0;
        const double ptp = std::get<double>(estimate_table(tp).rows[0][0]);
        const double pbq = std::get<double>(estimate_table(bq).rows[0][0]);
        CHECK(std::abs(wrap_phase(ptp - pbq)) < 0.1);
        CHECK(std::abs(wrap_phase(pbq - (delta - w * tau))) < 0.1);
    }
    SUBCASE("omega = 0 takes the degenerate route") {
        Scenario s = quick_teleport(0.0, 0.7, 0.45, 4000, 23);
        const ResultTable t = estimate_table(s);
        const double phi_hat = std::get<double>(t.rows[0][0]);
        CHECK(std::abs(wrap_phase(phi_hat - 0.45)) < 0.08);
        CHECK(std::get<std::string>(t.rows[0][4]).empty());
        CHECK(std::get<std::string>(t.rows[0][6]).find("unobservable") !=
              std::string::npos);
    }
    SUBCASE("ramsey scenario rejected") {
        Scenario s = quick_teleport(1.0, 0.0, 0.0, 10, 1);
        s.protocol = "ramsey";
        CHECK_THROWS_AS(estimate_table(s), ScenarioError);
    }
}

TEST_CASE("gauge audit") {
    SUBCASE("gauge shift leaves records byte-identical") {
        for (int i = 0; i < 5; ++i) {
            Scenario s = quick_teleport(2.0 + i, 0.25 * i, 0.125 * i, 200,
                                        40 + std::uint64_t(i));
            CHECK(audit_gauge(s, 0.5));
        }
    }
    SUBCASE("broken pair differs") {
        // shifting tau without the matching delta shift changes statistics
        Scenario a = quick_teleport(2.0, 0.1, 0.3, 3000, 91);
        Scenario b = a;
        b.tau = a.tau + 0.7; // omega*shift = 1.4, not a multiple of 2 pi
        CHECK(!audit_gauge_pair(a, b));
    }
    SUBCASE("pair audit with identical scenarios") {
        Scenario a = quick_teleport(2.0, 0.1, 0.3, 100, 91);
        CHECK(audit_gauge_pair(a, a));
    }
    SUBCASE("cabrillo scenarios cannot be gauge-shifted") {
        Scenario s = quick_teleport(2.0, 0.1, 0.3, 10, 1);
        s.delta = std::nullopt;
        CHECK_THROWS_AS(audit_gauge(s, 0.5), ScenarioError);
    }
    SUBCASE("hidden values with fixed observable are indistinguishable") {
        // Information barrier: two universes with different (tau, delta)
        // but equal delta - omega*tau produce identical record streams.
        Scenario a = quick_teleport(2.0, 0.25, 0.5, 500, 77);
        Scenario b = quick_teleport(2.0, 0.75, 1.5, 500, 77);
        CHECK(audit_gauge_pair(a, b));
    }
}
