// moss: scenario runner and chain verifier for the spectrum-sharing ledger.

#include "moss/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Permissioned-blockchain spectrum sharing: run scenarios, verify chains"};
    app.require_subcommand(1);

    std::string config_path;
    std::string chain_path;
    std::string out_dir = "out";
    std::string report_path;
    std::string log_format = "jsonl";
    std::string gas_price;
    std::optional<uint64_t> seed;

    CLI::App* run = app.add_subcommand("run", "Run a scenario config end to end");
    run->add_option("config", config_path, "Scenario config file (JSON)")->required();
    run->add_option("--seed", seed, "Override the consensus network seed");
    run->add_option("--out-dir", out_dir, "Artifact directory (chain file, event log, trace, report)");
    run->add_option("--report", report_path, "Settlement report path (default <out-dir>/report.txt)");
    run->add_option("--log-format", log_format, "Event log format (jsonl)")
        ->check(CLI::IsMember({"jsonl"}));
    run->add_option("--gas-price", gas_price, "Override gas price in Gwei, e.g. 4.3");

    CLI::App* verify = app.add_subcommand("verify", "Re-verify a persisted chain file and replay its state");
    verify->add_option("chain", chain_path, "Chain file produced by `run`")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            moss::Scenario scenario = moss::load_scenario_file(config_path);
            moss::RunOptions options;
            options.seed_override = seed;
            options.out_dir = out_dir;
            options.report_path = report_path;
            if (!gas_price.empty()) options.gas_price_override = moss::GasPrice::from_gwei_string(gas_price);

            moss::RunResult result = moss::run_scenario(scenario, options);
            std::cout << result.report_text;
            if (!result.chain_path.empty())
                std::cout << "\nartifacts: " << result.chain_path << ", " << result.events_path;
            if (!result.trace_path.empty()) std::cout << ", " << result.trace_path;
            std::cout << "\n";
            return result.exit_code;
        }

        moss::VerifyResult result = moss::verify_chain(chain_path);
        switch (result.status) {
            case moss::VerifyStatus::Ok:
                std::cout << "ok: " << result.chain_length << " blocks verified\n";
                std::cout << "state digest: " << moss::to_hex(result.state_digest) << "\n";
                return 0;
            case moss::VerifyStatus::CorruptFile:
                std::cout << "corrupt file: " << result.reason << "\n";
                return 5;
            case moss::VerifyStatus::VerificationFailed:
                std::cout << "verification failed at height " << result.failed_height << ": " << result.reason
                          << "\n";
                return 4;
        }
        return 1;
    } catch (const moss::ConfigError& err) {
        std::cerr << "config invalid:\n";
        for (const std::string& d : err.diagnostics) std::cerr << "  " << d << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
