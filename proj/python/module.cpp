// pymoss: python bindings for the spectrum-sharing ledger core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moss/block.hpp"
#include "moss/scenario.hpp"

namespace py = pybind11;

namespace {

py::bytes hash_to_bytes(const moss::Hash32& h) {
    return py::bytes(reinterpret_cast<const char*>(h.data()), h.size());
}

moss::Hash32 hash_from_bytes(const py::bytes& b) {
    std::string raw = b;
    if (raw.size() != 32) throw py::value_error("expected a 32-byte digest");
    moss::Hash32 h;
    std::copy(raw.begin(), raw.end(), h.begin());
    return h;
}

py::dict match_to_dict(const moss::MatchRecord& m) {
    py::dict d;
    d["seller"] = moss::to_hex(m.seller);
    d["buyer"] = moss::to_hex(m.buyer);
    d["amount_mhz"] = m.amount_mhz;
    d["price_gwei"] = m.unit_price_gwei;
    d["stage"] = moss::trade_stage_name(m.stage);
    d["total_wei"] = py::int_(py::str(moss::wei_to_string(m.total_wei)));
    return d;
}

// Runs one auction round through the real contract path: submit, sort,
// match. Orders are (price_gwei, bandwidth_mhz) tuples; order index is the
// tag. Returns the ordered match list.
std::vector<py::dict> double_auction_match(const std::vector<std::pair<uint64_t, uint32_t>>& asks,
                                           const std::vector<std::pair<uint64_t, uint32_t>>& bids) {
    moss::Address admin{};
    admin.bytes[19] = 1;
    moss::MossContract contract(admin, 100, 100, 10);

    auto addr_for = [](bool seller, size_t index) {
        moss::Address a{};
        a.bytes[0] = seller ? 0xA5 : 0xB5;
        a.bytes[18] = static_cast<uint8_t>(index >> 8);
        a.bytes[19] = static_cast<uint8_t>(index & 0xff);
        return a;
    };

    for (size_t i = 0; i < asks.size(); ++i) {
        auto out = contract.bid_or_ask_submit(addr_for(true, i), moss::Role::Seller, asks[i].second, asks[i].first,
                                              moss::kWeiPerEth, 20);
        if (!out.ok()) throw py::value_error(moss::revert_name(*out.revert));
    }
    for (size_t i = 0; i < bids.size(); ++i) {
        auto out = contract.bid_or_ask_submit(addr_for(false, i), moss::Role::Buyer, bids[i].second, bids[i].first,
                                              moss::kWeiPerEth, 20);
        if (!out.ok()) throw py::value_error(moss::revert_name(*out.revert));
    }
    contract.registration_end(111);
    contract.sort_ask_by_increase(admin);
    contract.sort_bid_by_decrease(admin);
    auto out = contract.double_auction(admin);
    if (!out.ok()) throw py::value_error(moss::revert_name(*out.revert));

    std::vector<py::dict> matches;
    for (const moss::MatchRecord& m : contract.matches()) {
        py::dict d = match_to_dict(m);
        d["seller_index"] = int(m.seller.bytes[18]) << 8 | m.seller.bytes[19];
        d["buyer_index"] = int(m.buyer.bytes[18]) << 8 | m.buyer.bytes[19];
        matches.push_back(d);
    }
    return matches;
}

py::dict run_scenario_py(const std::string& config_path, const std::string& out_dir,
                         std::optional<uint64_t> seed, std::optional<std::string> gas_price) {
    moss::Scenario scenario = moss::load_scenario_file(config_path);
    moss::RunOptions options;
    options.out_dir = out_dir;
    options.seed_override = seed;
    if (gas_price) options.gas_price_override = moss::GasPrice::from_gwei_string(*gas_price);
    moss::RunResult result = moss::run_scenario(scenario, options);

    py::dict d;
    d["exit_code"] = result.exit_code;
    d["state_digest"] = moss::to_hex(result.state_digest);
    d["chain_length"] = result.chain_length;
    d["chain_path"] = result.chain_path;
    d["events_path"] = result.events_path;
    d["report"] = result.report_text;
    d["conservation_ok"] = result.conservation_ok;
    d["divergences"] = result.divergences;
    py::list matches;
    for (const moss::MatchRecord& m : result.matches) matches.append(match_to_dict(m));
    d["matches"] = matches;
    py::dict balances;
    for (const auto& [label, wei] : result.final_balances)
        balances[py::str(label)] = py::int_(py::str(moss::wei_to_string(wei)));
    d["balances_wei"] = balances;
    d["punished"] = result.punished;
    py::dict addresses;
    for (const auto& [label, addr] : result.addresses) addresses[py::str(label)] = moss::to_hex(addr);
    d["addresses"] = addresses;
    return d;
}

py::dict verify_chain_py(const std::string& chain_path) {
    moss::VerifyResult result = moss::verify_chain(chain_path);
    py::dict d;
    switch (result.status) {
        case moss::VerifyStatus::Ok: d["status"] = "ok"; break;
        case moss::VerifyStatus::CorruptFile: d["status"] = "corrupt_file"; break;
        case moss::VerifyStatus::VerificationFailed: d["status"] = "verification_failed"; break;
    }
    d["state_digest"] = moss::to_hex(result.state_digest);
    d["chain_length"] = result.chain_length;
    d["failed_height"] = result.failed_height;
    d["reason"] = result.reason;
    return d;
}

}  // namespace

PYBIND11_MODULE(pymoss, m) {
    m.doc() = "Permissioned-blockchain spectrum sharing: ledger, auction contract, scenario runner";

    m.def("sha256", [](const py::bytes& data) {
        std::string raw = data;
        return hash_to_bytes(moss::crypto::sha256(
            std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(raw.data()), raw.size())));
    });

    m.def("merkle_root", [](const std::vector<py::bytes>& leaves) {
        std::vector<moss::Hash32> digests;
        digests.reserve(leaves.size());
        for (const py::bytes& leaf : leaves) digests.push_back(hash_from_bytes(leaf));
        return hash_to_bytes(moss::merkle_root(digests));
    });

    m.def("ether_cost_wei", [](uint64_t gas_units, const std::string& gas_price_gwei) {
        moss::Wei wei = moss::ether_cost(gas_units, moss::GasPrice::from_gwei_string(gas_price_gwei));
        return py::int_(py::str(moss::wei_to_string(wei)));
    }, py::arg("gas_units"), py::arg("gas_price_gwei") = "4.3");

    m.def("double_auction_match", &double_auction_match, py::arg("asks"), py::arg("bids"));

    m.def("run_scenario", &run_scenario_py, py::arg("config_path"), py::arg("out_dir"),
          py::arg("seed") = std::nullopt, py::arg("gas_price") = std::nullopt);

    m.def("verify_chain", &verify_chain_py, py::arg("chain_path"));
}
