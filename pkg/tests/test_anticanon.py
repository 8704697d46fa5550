import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singchain.anticanon import (
    AnticanonicalState,
    Witness,
    forced_depth,
    move_node,
    move_smooth,
    realize,
    replay,
    seed_by_name,
    seeds,
    start,
    target_k2,
    witness_from_json,
)
from singchain.cusp import Cycle, cycle_B4, decide_B4, dual_cycle, parse_cycle


def test_seeds_conserve():
    for s in seeds(12):
        assert 2 * len(s.entries) - sum(s.entries) == s.k2
    names = {s.name for s in seeds(2)}
    assert {"plane-line-conic", "plane-triangle", "hirzebruch-1", "hirzebruch-2"} <= names
    assert seed_by_name("hirzebruch-5").entries == (-9, 5)
    with pytest.raises(ValueError):
        seed_by_name("hirzebruch-0")
    with pytest.raises(ValueError):
        seed_by_name("cubic-surface")


def test_move_examples():
    s = start(seed_by_name("plane-line-conic"))
    t = move_node(s, 0)
    assert (t.entries, t.k2) == ((-3, 1, 0), 8)
    u = move_node(t, 1)
    # the node between the 1 and the 0: both rise by one and a new 1 appears
    assert (u.entries, u.k2) == ((-3, 2, 1, 1), 7) and u.conserved()
    v = move_smooth(s, 0)
    assert (v.entries, v.k2) == ((-3, -1), 8)
    w = move_smooth(t, 1)
    assert (w.entries, w.k2) == ((-3, 2, 0), 7)
    with pytest.raises(IndexError):
        move_node(s, 2)


def test_single_component_node():
    s = start(seed_by_name("plane-nodal-cubic"))
    t = move_node(s, 0)
    assert t.conserved() and t.r == 2


@settings(max_examples=100)
@given(st.sampled_from([s.name for s in seeds(6)]), st.lists(st.tuples(st.booleans(), st.integers(0, 40)), max_size=12))
def test_moves_conserve(name, moves):
    s = start(seed_by_name(name))
    for node, i in moves:
        s = move_node(s, i % s.r) if node else move_smooth(s, i % s.r)
        assert s.conserved()


def test_realize_b4_dual_and_replay():
    target = dual_cycle(parse_cycle("[5,2]o"))
    states = []
    res = realize(target, max_blowups=12, on_state=states.append)
    assert res.witness is not None
    assert all(s.conserved() for s in states)
    final = replay(res.witness)
    assert final.canonical() == target.entries
    assert final.k2 == target_k2(target)
    assert len(res.witness.moves) == res.witness.seed.k2 - target_k2(target)


def test_realize_explicit_chi13_construction():
    chi, gamma = 13, 1
    target = Cycle((2,) * (chi - 4) + (chi - gamma - 9, gamma + 2))
    assert target.entries == (3, 3) + (2,) * 9
    res = realize(target, max_blowups=12)
    assert res.witness is not None
    assert replay(res.witness).canonical() == target.entries


def test_forced_depth_is_exact():
    for n in range(1, 4):
        for beta in range(n + 9):
            assert decide_B4(n, beta)
            target = dual_cycle(cycle_B4(n, beta))
            depth = forced_depth(target)
            if depth > 10:
                continue
            res = realize(target, max_blowups=depth)
            assert res.witness is not None, (n, beta)
            assert len(res.witness.moves) == res.witness.seed.k2 - target_k2(target)


def test_realize_below_forced_depth():
    target = dual_cycle(parse_cycle("[5,2]o"))
    res = realize(target, max_blowups=forced_depth(target) - 1)
    assert res.witness is None
    assert "forced depth" in res.reason


def test_witness_json_roundtrip():
    res = realize(dual_cycle(parse_cycle("[5,2,2]o")), max_blowups=12)
    text = res.witness.dumps()
    w = witness_from_json(text)
    assert w == res.witness
    assert witness_from_json(json.loads(text)) == w
    bad = json.loads(text)
    bad["seed"]["k2"] += 1
    with pytest.raises(ValueError):
        witness_from_json(bad)


def test_replay_detects_broken_witness():
    w = Witness(seed_by_name("plane-triangle"), ())
    assert replay(w).entries == (-1, -1, -1)
    broken = Witness(seed_by_name("plane-triangle").__class__("x", (0, 0), 9), ())
    with pytest.raises(AssertionError):
        replay(broken)


def test_state_canonical():
    s = AnticanonicalState((1, 3, 2), 0)
    assert s.canonical() == (3, 2, 1)
