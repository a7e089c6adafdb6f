// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest (test name "acceptance") or directly.

#include "gas_table.hpp"
#include "moss/scenario.hpp"
#include "oracle_harness.hpp"
#include "scenario_fuzz.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace moss;

namespace {

const std::string kScenarioDir = MOSS_SCENARIO_DIR;

Scenario golden_scenario() { return load_scenario_file(kScenarioDir + "/paper_table2.json"); }

struct Check {
    bool ok = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        ok = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << why;
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
    void expect(bool condition, const std::string& why) {
        if (!condition) fail(why);
    }
};

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const Bytes& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

// --- criterion 1: golden replay of the six-operator round -----------------

void criterion_golden_replay(Check& check) {
    auto started = std::chrono::steady_clock::now();
    RunResult result = run_scenario(golden_scenario(), {});
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    check.expect(result.exit_code == 0, "scenario exit code " + std::to_string(result.exit_code));
    check.expect(result.matches.size() == 3, "expected 3 matches, got " + std::to_string(result.matches.size()));
    if (result.matches.size() == 3) {
        const Address op1 = result.addresses.at("OP1"), op2 = result.addresses.at("OP2");
        const Address op5 = result.addresses.at("OP5"), op6 = result.addresses.at("OP6");
        const MatchRecord& a = result.matches[0];
        check.expect(a.seller == op2 && a.buyer == op5 && a.amount_mhz == 10 && a.unit_price_gwei == 2050000 &&
                         a.stage == TradeStage::Auction,
                     "auction match 1 differs from (OP2->OP5, 10 MHz, 2050000 Gwei)");
        const MatchRecord& b = result.matches[1];
        check.expect(b.seller == op1 && b.buyer == op5 && b.amount_mhz == 2 && b.unit_price_gwei == 2250000 &&
                         b.stage == TradeStage::Auction,
                     "auction match 2 differs from (OP1->OP5, 2 MHz, 2250000 Gwei)");
        const MatchRecord& c = result.matches[2];
        check.expect(c.seller == op1 && c.buyer == op6 && c.amount_mhz == 8 && c.unit_price_gwei == 1800000 &&
                         c.stage == TradeStage::FreeMarket,
                     "free-market match differs from (OP1->OP6, 8 MHz, 1800000 Gwei)");
    }

    bool invalid_op_seen = false;
    for (const ActionOutcome& outcome : result.action_outcomes)
        if (outcome.committed && outcome.revert_reason == Revert::InvalidOp) invalid_op_seen = true;
    check.expect(invalid_op_seen, "OP2's withdraw was not rejected with Invalid op");
    check.expect(result.final_balances.at("OP1") > 100 * kWeiPerEth, "OP1 did not end above 100 eth");
    check.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s exceeds 5 s");
    check.note("3 matches, Invalid op rejection, OP1 " + wei_to_eth_string(result.final_balances.at("OP1")) +
               " eth, " + std::to_string(elapsed).substr(0, 4) + " s");
}

// --- criterion 2: published gas table consistent with the cost formula ----

void criterion_schedule_consistency(Check& check) {
    GasPrice price = GasPrice::from_gwei_rational(43, 10);
    int rows_checked = 0;
    std::set<int> rows_seen;
    for (const auto& entry : testing::gas_table()) {
        if (entry.flagged) continue;
        Wei computed = ether_cost(entry.gas, price);
        if (!testing::within_printed_precision(computed, testing::printed_wei(entry)))
            check.fail(entry.label + ": computed " + wei_to_string(computed) + " wei vs printed " +
                       wei_to_string(testing::printed_wei(entry)));
        if (rows_seen.insert(entry.row).second) ++rows_checked;
    }
    check.expect(rows_checked == 13, "expected 13 consistent rows, checked " + std::to_string(rows_checked));
    check.note("13 of 15 rows consistent at 4.3 Gwei (2 flagged errata excluded)");
}

// --- criterion 3 + 6: oracle equivalence and auction price properties -----

void criterion_oracle_equivalence(Check& check, std::vector<oracle::OracleInstance>& instances_out) {
    auto started = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240817);
    size_t agreed = 0;
    for (int i = 0; i < 200; ++i) {
        oracle::OracleInstance instance = testing::random_instance(rng);
        auto expected = oracle::oracle_match(instance);
        auto actual = testing::contract_match(instance);
        if (actual == expected) {
            ++agreed;
        } else {
            check.fail("instance " + std::to_string(i) + " diverged (" + std::to_string(actual.size()) + " vs " +
                       std::to_string(expected.size()) + " matches)");
        }
        instances_out.push_back(std::move(instance));
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    check.expect(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s exceeds 10 s");
    check.note(std::to_string(agreed) + "/200 instances identical, " + std::to_string(elapsed).substr(0, 4) + " s");
}

void criterion_price_properties(Check& check, const std::vector<oracle::OracleInstance>& instances) {
    size_t matches_checked = 0;
    for (size_t i = 0; i < instances.size(); ++i) {
        const oracle::OracleInstance& instance = instances[i];
        std::map<int, uint64_t> ask_price, bid_price;
        for (const auto& ask : instance.asks) ask_price[ask.tag] = ask.price_gwei;
        for (const auto& bid : instance.bids) bid_price[bid.tag] = bid.price_gwei;
        for (const auto& match : testing::contract_match(instance)) {
            ++matches_checked;
            uint64_t ask = ask_price.at(match.seller_tag), bid = bid_price.at(match.buyer_tag);
            if (!(ask <= match.price_gwei && match.price_gwei <= bid))
                check.fail("instance " + std::to_string(i) + ": price outside [ask, bid]");
            if (match.price_gwei != (ask + bid) / 2)
                check.fail("instance " + std::to_string(i) + ": price is not the floor midpoint");
        }
    }
    check.note(std::to_string(matches_checked) + " matches satisfy ask <= price <= bid and floor-midpoint");
}

// --- criterion 4: conservation across bundled + fuzzed scenarios ----------

void criterion_conservation(Check& check) {
    size_t scenarios_run = 0;
    auto audit = [&](const Scenario& sc) {
        RunResult result = run_scenario(sc, {});
        ++scenarios_run;
        if (!result.conservation_ok) check.fail(sc.name + ": conservation failed");
        if (result.safety_violation) check.fail(sc.name + ": safety violation");
    };
    audit(golden_scenario());
    for (uint64_t seed = 1; seed <= 50; ++seed) audit(moss::testing::fuzz_scenario(seed));
    check.note(std::to_string(scenarios_run) + " scenarios, money supply constant at every height");
}

// --- criterion 5: PBFT safety under byzantine variants ---------------------

void criterion_pbft_safety(Check& check) {
    auto started = std::chrono::steady_clock::now();
    size_t runs = 0;
    for (consensus::Behavior behavior :
         {consensus::Behavior::Silent, consensus::Behavior::Equivocating, consensus::Behavior::Corrupting}) {
        for (uint64_t seed = 1; seed <= 20; ++seed) {
            Scenario sc = golden_scenario();
            sc.consensus.replicas = 4;
            sc.consensus.behaviors = {{3, behavior}};
            sc.consensus.seed = seed;
            RunResult result = run_scenario(sc, {});
            ++runs;
            std::string tag = std::string(consensus::behavior_name(behavior)) + "/seed " + std::to_string(seed);
            if (result.safety_violation) check.fail(tag + ": conflicting honest commits");
            if (result.honest_state_digests.size() != 3) {
                check.fail(tag + ": expected 3 honest replicas");
                continue;
            }
            for (const Hash32& digest : result.honest_state_digests)
                if (digest != result.honest_state_digests.front()) check.fail(tag + ": honest replay digests differ");
            if (result.exit_code != 0) check.fail(tag + ": exit code " + std::to_string(result.exit_code));
        }
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    check.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s exceeds 30 s");
    check.note(std::to_string(runs) + " runs (3 variants x 20 seeds), trace audits clean, " +
               std::to_string(elapsed).substr(0, 4) + " s");
}

// --- criterion 7: persistence round-trip and tamper detection -------------

void criterion_replay_persistence(Check& check) {
    std::filesystem::path dir = "tmp_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    size_t chains = 0, flips = 0;
    auto roundtrip = [&](const Scenario& sc, bool exhaustive_flips) {
        RunOptions options;
        options.out_dir = (dir / sc.name).string();
        options.write_trace = false;
        RunResult run = run_scenario(sc, options);
        ++chains;
        VerifyResult verified = verify_chain(run.chain_path);
        if (verified.status != VerifyStatus::Ok) {
            check.fail(sc.name + ": verify returned " + verified.reason);
            return;
        }
        if (verified.state_digest != run.state_digest) check.fail(sc.name + ": replay digest != live digest");

        Bytes original = read_file(run.chain_path);
        std::string mutated_path = (dir / (sc.name + ".mutated")).string();
        std::mt19937_64 rng(chains);
        size_t trials = exhaustive_flips ? original.size() : 200;
        for (size_t t = 0; t < trials; ++t) {
            size_t offset = exhaustive_flips ? t : rng() % original.size();
            Bytes mutated = original;
            mutated[offset] ^= 0x01;
            write_file(mutated_path, mutated);
            VerifyResult tampered = verify_chain(mutated_path);
            bool detected =
                tampered.status != VerifyStatus::Ok || tampered.state_digest != run.state_digest;
            if (!detected) {
                check.fail(sc.name + ": flip at offset " + std::to_string(offset) + " went undetected");
                break;
            }
            ++flips;
        }
    };

    // Exhaustive single-byte flips on a small produced chain, sampled flips
    // on the full golden chain.
    Scenario small = moss::testing::fuzz_scenario(7);
    small.name = "small_fuzz";
    roundtrip(small, /*exhaustive_flips=*/false);

    Scenario tiny;
    tiny.name = "tiny";
    tiny.timing = {1000, 600, 1700, 600, 2400, 3000};
    ScriptAction deploy;
    deploy.at = 1000;
    deploy.actor = "admin";
    deploy.kind = ActionKind::Deploy;
    tiny.script.push_back(deploy);
    roundtrip(tiny, /*exhaustive_flips=*/true);

    roundtrip(golden_scenario(), /*exhaustive_flips=*/false);

    std::filesystem::remove_all(dir);
    check.note(std::to_string(chains) + " chains re-verified, " + std::to_string(flips) +
               " byte flips all detected");
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::string name;
        std::function<void(Check&)> run;
    };

    std::vector<oracle::OracleInstance> shared_instances;
    std::vector<Criterion> criteria = {
        {1, "golden replay (paper_table2)", criterion_golden_replay},
        {2, "gas schedule consistency (13/15 rows)", criterion_schedule_consistency},
        {3, "oracle equivalence (200 instances)",
         [&](Check& c) { criterion_oracle_equivalence(c, shared_instances); }},
        {4, "conservation (bundled + 50 fuzzed scenarios)", criterion_conservation},
        {5, "PBFT safety (silent/equivocating/corrupting, 20 seeds each)", criterion_pbft_safety},
        {6, "price sandwich and floor-midpoint properties",
         [&](Check& c) { criterion_price_properties(c, shared_instances); }},
        {7, "replay and persistence tamper detection", criterion_replay_persistence},
    };

    bool all_ok = true;
    for (Criterion& criterion : criteria) {
        Check check;
        try {
            criterion.run(check);
        } catch (const std::exception& err) {
            check.fail(std::string("exception: ") + err.what());
        }
        all_ok &= check.ok;
        std::cout << (check.ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.number << ": " << criterion.name
                  << " -- " << check.detail.str() << "\n";
    }
    return all_ok ? 0 : 1;
}
