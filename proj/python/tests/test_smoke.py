# Copyright (c) 2026 The quorumnet Authors. All rights reserved.
# Licensed under the Apache 2.0 License.
import json

import pytest

import quorumnet as qn

TINY = "tiny-23"
STANDARD = "modp-2048"


def h(x):
    return int(x, 16)


def test_group_params():
    p = qn.group_params(TINY)
    assert (h(p["p"]), h(p["q"]), h(p["g"])) == (23, 11, 4)
    s = qn.group_params(STANDARD)
    assert h(s["p"]).bit_length() == 2048
    assert h(s["p"]) == 2 * h(s["q"]) + 1
    with pytest.raises(ValueError):
        qn.group_params("nope")


def test_keygen_is_seeded():
    a = qn.keygen(TINY, seed=3)
    assert a == qn.keygen(TINY, seed=3)
    x, pk = a
    assert 1 <= h(x) <= 10
    assert h(pk) == pow(4, h(x), 23)
    assert qn.public_key(TINY, x) == pk


def test_multi_recipient_decrypt_matches_plain_arithmetic():
    keys = [qn.keygen(TINY, seed=s) for s in (1, 2, 5)]
    privs = [x for x, _ in keys]
    pubs = [pk for _, pk in keys]
    for m in (1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18):
        ct = json.loads(qn.encrypt(TINY, pubs, format(m, "x"), seed=m))
        c0, c1 = h(ct["c0"]), h(ct["c1"])
        total = sum(h(x) for x in privs)
        assert c1 * pow(c0, -total, 23) % 23 == m
        assert h(qn.decrypt(json.dumps(ct), privs)) == m
        # Leaving out one key leaves a factor g^(r x) != 1.
        assert h(qn.decrypt(json.dumps(ct), privs[:-1])) != m


def test_blind_unblind_round_trip():
    keys = {str(i): qn.keygen(TINY, seed=10 + i) for i in range(3)}
    pubs = [pk for _, pk in keys.values()]
    ct = qn.encrypt(TINY, pubs, "d", seed=4)  # 13
    resp_json, record_json = qn.blind(ct, pubs, seed=9)
    resp, record = json.loads(resp_json), json.loads(record_json)
    s, t = h(record["s"]), h(record["t"])
    prod = 1
    for pk in pubs:
        prod = prod * h(pk) % 23
    assert h(resp["p_u"]) == t * pow(prod, s, 23) % 23
    assert h(resp["c_u"]) == h(json.loads(ct)["c1"]) * t % 23
    privs = {k: x for k, (x, _) in keys.items()}
    assert h(qn.unblind(TINY, resp_json, privs)) == 13


def test_wrap_unwrap():
    a, pk = qn.keygen(TINY, seed=1)
    w = json.loads(qn.wrap(TINY, "k", "5", "alice", pk, seed=2))
    assert h(w["w1"]) * pow(h(w["w0"]), -h(a), 23) % 23 == 5
    assert qn.unwrap(json.dumps(w), a) == "5"


def test_seal_and_open_on_the_standard_group():
    keys = {f"key{i}": qn.keygen(STANDARD, seed=20 + i) for i in range(2)}
    proxies = {k: pk for k, (_, pk) in keys.items()}
    privs = {k: x for k, (x, _) in keys.items()}
    for payload in (b"hello", b"\x00leading zero", bytes(range(256)) * 40):
        item = qn.seal(STANDARD, "owner", payload, proxies, seed=1)
        assert payload not in item.encode()
        assert qn.open(item, privs) == payload
    with pytest.raises(qn.DecryptionError):
        qn.open(qn.seal(STANDARD, "owner", b"x", proxies), {"key0": privs["key0"]})


def test_quorum_exact_and_simulated():
    exact = qn.quorum.exact(10, 6, 2)
    assert exact["mean_picks"] == pytest.approx(5.902287208838, abs=1e-9)
    assert exact["p_window"] == pytest.approx(0.635192076190, abs=1e-9)
    assert sum(exact["distribution"].values()) == pytest.approx(1.0)
    sim = qn.quorum.simulate(10, 6, 2, 20000, seed=5)
    assert abs(sim["mean_picks"] - exact["mean_picks"]) < 3 * sim["standard_error"]
    assert sim == qn.quorum.simulate(10, 6, 2, 20000, seed=5)


def test_quorum_assign_first_key_rule():
    held = qn.quorum.assign(10, 6, 2, seed=1)
    assert len(held) == 10
    for m, keys in enumerate(held):
        assert m % 6 in keys
        assert len(set(keys)) == 2
