#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcs/harness.hpp"

namespace {

// Exit codes: 0 success, 2 scenario parse/validation error, 3 runtime
// error (protocol failure, I/O), 1 reserved for CLI usage errors.
constexpr int kExitScenario = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--scenario", args.scenario, "scenario file path")
        ->required();
    sub->add_option("--out", args.out, "output CSV path")->required();
    sub->add_option("--seed", args.seed,
                    "override the scenario's seed");
}

int run_protocol(const CommonArgs& args, const char* expected_protocol) {
    qcs::Scenario s;
    try {
        s = qcs::load_scenario(args.scenario, args.seed);
        if (s.protocol != expected_protocol) {
            throw qcs::ScenarioError(
                std::string("field 'protocol': expected '") +
                expected_protocol + "', got '" + s.protocol + "'");
        }
    } catch (const qcs::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    }
    try {
        qcs::emit_csv(qcs::run(s), args.out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}

int run_estimate(const CommonArgs& args) {
    qcs::Scenario s;
    try {
        s = qcs::load_scenario(args.scenario, args.seed);
    } catch (const qcs::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    }
    try {
        qcs::emit_csv(qcs::estimate_table(s), args.out);
    } catch (const qcs::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}

int run_audit(const CommonArgs& args, const std::string& scenario_b,
              double shift) {
    try {
        bool identical;
        if (!scenario_b.empty()) {
            const qcs::Scenario a = qcs::load_scenario(args.scenario, args.seed);
            const qcs::Scenario b = qcs::load_scenario(scenario_b, args.seed);
            identical = qcs::audit_gauge_pair(a, b);
        } else {
            const qcs::Scenario a = qcs::load_scenario(args.scenario, args.seed);
            identical = qcs::audit_gauge(a, shift);
        }
        std::FILE* out = std::fopen(args.out.c_str(), "wb");
        if (!out) {
            std::cerr << "error: cannot open output file '" << args.out
                      << "'\n";
            return kExitRuntime;
        }
        std::fprintf(out, "gauge_identical\n%d\n", identical ? 1 : 0);
        std::fclose(out);
        std::cout << (identical ? "identical" : "distinct") << "\n";
        return 0;
    } catch (const qcs::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic clock-synchronization protocol simulator"};
    app.require_subcommand(1);

    CommonArgs ramsey_args, qcs_args, teleport_args, map_args, est_args,
        audit_args;
    std::string scenario_b;
    double shift = 0.0;

    add_common(app.add_subcommand("ramsey", "single-qubit fringe sweep"),
               ramsey_args);
    add_common(app.add_subcommand("qcs", "singlet synchronization protocol"),
               qcs_args);
    add_common(app.add_subcommand("teleport",
                                  "teleportation-based synchronization"),
               teleport_args);
    add_common(app.add_subcommand("phase-map", "two-point phase evaluation"),
               map_args);
    add_common(app.add_subcommand("estimate", "phase and offset reduction"),
               est_args);
    CLI::App* audit =
        app.add_subcommand("audit-gauge", "gauge identifiability audit");
    add_common(audit, audit_args);
    audit->add_option("--scenario-b", scenario_b,
                      "compare against a second scenario file");
    audit->add_option("--shift", shift,
                      "gauge shift: tau += shift, delta += omega*shift");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("ramsey")) return run_protocol(ramsey_args, "ramsey");
    if (app.got_subcommand("qcs")) return run_protocol(qcs_args, "basic-qcs");
    if (app.got_subcommand("teleport")) {
        return run_protocol(teleport_args, "teleport");
    }
    if (app.got_subcommand("phase-map")) {
        return run_protocol(map_args, "phase-map");
    }
    if (app.got_subcommand("estimate")) return run_estimate(est_args);
    return run_audit(audit_args, scenario_b, shift);
}
