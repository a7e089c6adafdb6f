"""Smoke tests for the pymoss extension: hashing, gas arithmetic, the
auction matcher, and a full scenario run with chain verification."""

import hashlib
import json
import os
import shutil
import sys
import tempfile

import pymoss

SCENARIO_DIR = os.environ.get("MOSS_SCENARIO_DIR", os.path.join(os.path.dirname(__file__), "../../scenarios"))

ETH = 10**18
GWEI = 10**9


def test_sha256_matches_hashlib():
    for payload in (b"", b"abc", b"spectrum sharing" * 11):
        assert pymoss.sha256(payload) == hashlib.sha256(payload).digest()


def test_merkle_vectors():
    d1, d2, d3 = bytes([0x11] * 32), bytes([0x22] * 32), bytes([0x33] * 32)
    h = lambda b: hashlib.sha256(b).digest()
    assert pymoss.merkle_root([]) == bytes(32)
    assert pymoss.merkle_root([d1]) == h(d1 + d1)
    assert pymoss.merkle_root([d1, d2]) == h(d1 + d2)
    assert pymoss.merkle_root([d1, d2, d3]) == h(h(d1 + d2) + h(d3 + d3))
    assert pymoss.merkle_root([d2, d1, d3]) != pymoss.merkle_root([d1, d2, d3])


def test_ether_cost():
    assert pymoss.ether_cost_wei(368357, "4.3") == 1_583_935_100_000_000
    assert pymoss.ether_cost_wei(21799, "4.3") == 93_735_700_000_000
    assert pymoss.ether_cost_wei(0, "4.3") == 0
    assert pymoss.ether_cost_wei(10, "1") == 10 * GWEI


def test_double_auction_match():
    asks = [(2000000, 20), (1600000, 10), (2400000, 15)]
    bids = [(1500000, 10), (2500000, 12), (1800000, 8)]
    matches = pymoss.double_auction_match(asks, bids)
    assert len(matches) == 2
    assert (matches[0]["seller_index"], matches[0]["buyer_index"]) == (1, 1)
    assert matches[0]["amount_mhz"] == 10 and matches[0]["price_gwei"] == 2050000
    assert (matches[1]["seller_index"], matches[1]["buyer_index"]) == (0, 1)
    assert matches[1]["amount_mhz"] == 2 and matches[1]["price_gwei"] == 2250000


def test_scenario_run_and_verify():
    config = os.path.join(SCENARIO_DIR, "paper_table2.json")
    out_dir = tempfile.mkdtemp(prefix="pymoss_smoke_")
    try:
        result = pymoss.run_scenario(config, out_dir)
        assert result["exit_code"] == 0, result["divergences"]
        assert result["conservation_ok"]

        matches = result["matches"]
        assert [(m["amount_mhz"], m["price_gwei"], m["stage"]) for m in matches] == [
            (10, 2050000, "auction"),
            (2, 2250000, "auction"),
            (8, 1800000, "free_market"),
        ]
        assert result["punished"] == ["OP2"]
        assert result["balances_wei"]["OP1"] > 100 * ETH

        verified = pymoss.verify_chain(result["chain_path"])
        assert verified["status"] == "ok"
        assert verified["state_digest"] == result["state_digest"]

        with open(result["events_path"]) as fh:
            kinds = [json.loads(line)["kind"] for line in fh]
        assert kinds.count("LogRegisterOp") == 6
        assert kinds.count("LogDealRecord") == 3
    finally:
        shutil.rmtree(out_dir, ignore_errors=True)


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failures = 0
    for test in tests:
        try:
            test()
            print(f"ok: {test.__name__}")
        except AssertionError as err:
            failures += 1
            print(f"FAIL: {test.__name__}: {err}")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
