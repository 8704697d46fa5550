import pytest
from hypothesis import given
from hypothesis import strategies as st

from singchain.chains import ChainSyntaxError
from singchain.cusp import (
    Cycle,
    blocks,
    canonicalize,
    classify_and_decide,
    cycle_B3,
    cycle_B4,
    cycle_B5,
    cycle_B6,
    decide_B3,
    decide_B4,
    decide_B5,
    decide_B6,
    decide_simple_elliptic,
    dihedral_max,
    dual_cycle,
    parse_cycle,
    steenbrink_ok,
)

cycles = st.lists(st.integers(2, 9), min_size=1, max_size=12).filter(lambda e: max(e) > 2)


def rotations(e):
    e = tuple(e)
    return {s[k:] + s[:k] for s in (e, e[::-1]) for k in range(len(e))}


@given(cycles)
def test_canonical_form_is_dihedral_invariant(entries):
    c = Cycle(tuple(entries))
    assert c.entries == max(rotations(entries))
    for rot in rotations(entries):
        assert Cycle(rot) == c


def test_canonicalize_examples():
    c = canonicalize([3, 3, None])
    assert c.entries == (4,) and c.r1_flag
    assert canonicalize([2, 2, 5]).entries == (5, 2, 2)
    with pytest.raises(ValueError):
        canonicalize([2, 2, 2])


def test_parse_cycle():
    assert parse_cycle("[5,2,2]o") == Cycle((5, 2, 2))
    assert parse_cycle("[2^2,5]o") == Cycle((5, 2, 2))
    assert parse_cycle("[7]o!").r == 1
    assert str(Cycle((7,))) == "[7]o!"
    for bad in ("[5,2,2]", "[2,2]o", "[1,4]o", "[3,2^-1]o"):
        with pytest.raises(ChainSyntaxError):
            parse_cycle(bad)


def test_steenbrink_examples():
    assert steenbrink_ok(Cycle((5, 2, 2)))
    assert not steenbrink_ok(Cycle((13,)))
    assert steenbrink_ok(Cycle((3, 3)))


def test_dual_examples():
    assert dual_cycle(Cycle((6, 2, 2, 3))) == Cycle((2, 2, 2, 5, 3))
    assert dual_cycle(Cycle((3, 3))) == Cycle((3, 3))
    assert blocks(Cycle((6, 2, 2, 3))) == [3, 0, 0, 2]  # canonical form is [6,3,2,2]


@given(cycles)
def test_dual_is_involution(entries):
    c = Cycle(tuple(entries))
    d = dual_cycle(c)
    assert dual_cycle(d) == c
    # the dual swaps the number of entries >= 3 with the number of 2's and back
    big = sum(1 for x in c.entries if x >= 3)
    assert sum(1 for x in d.entries if x >= 3) == big
    assert sum(x - 3 for x in c.entries if x >= 3) == sum(1 for x in d.entries if x == 2)


@pytest.mark.parametrize("chi", range(4, 11))
def test_B5_dual_formula(chi):
    for k1 in range(9):
        for k2 in range(9 - k1):
            if k1 + k2 == 0:
                continue
            expected = canonicalize([2] * (chi - 4) + [k1 + 2] + [2] * (chi - 4) + [k2 + 2])
            assert dual_cycle(cycle_B5(chi, k1, k2)) == expected


def test_decider_examples():
    assert decide_simple_elliptic(9) and not decide_simple_elliptic(10) and decide_simple_elliptic(1)
    assert decide_B4(3, 11) and not decide_B4(3, 12) and decide_B4(1, 0)
    assert decide_B3(15, 4, 0) and not decide_B3(15, 3, 1) and decide_B3(4, 0, 0)
    assert decide_B5(10, 1, 4) and not decide_B5(12, 1, 8) and decide_B5(9, 2, 3)
    assert decide_B6(10, 5, 4) and not decide_B6(10, 5, 2) and decide_B6(4, 0, 0)


def test_decider_domains():
    with pytest.raises(ValueError):
        decide_B4(0, 1)
    with pytest.raises(ValueError):
        decide_B3(3, 1, 0)
    with pytest.raises(ValueError):
        decide_B5(5, 0, 0)
    with pytest.raises(ValueError):
        decide_B6(5, 1, 2)
    with pytest.raises(ValueError):
        decide_simple_elliptic(0)


def test_B6_is_B5_reparametrized():
    for chi in range(4, 13):
        for n in range(1, 13):
            for g in range(n + 1):
                assert decide_B6(chi, n, g) == decide_B5(chi, n - g, g)
                assert cycle_B6(chi, n, g) == cycle_B5(chi, n - g, g)


def test_B4_is_sharp_for_steenbrink():
    for n in range(1, 13):
        for beta in range(13):
            assert decide_B4(n, beta) == steenbrink_ok(cycle_B4(n, beta))


def test_positive_deciders_satisfy_steenbrink():
    # Steenbrink is necessary, so no decider may say yes where it fails
    for chi in range(4, 16):
        for n in range(1, 13):
            for g in range(n + 1):
                if decide_B3(chi, n, g):
                    assert steenbrink_ok(cycle_B3(chi, n, g))
                if decide_B6(chi, n, g):
                    assert steenbrink_ok(cycle_B6(chi, n, g))
    assert steenbrink_ok(cycle_B5(12, 1, 8)) and not decide_B5(12, 1, 8)


def test_classify_examples():
    v = classify_and_decide(Cycle((5, 2, 2)))
    assert (v.status, v.rule, v.params) == ("Smoothable", "B4", {"n": 3, "beta": 2})
    v = classify_and_decide(cycle_B5(12, 1, 8))
    assert (v.status, v.rule) == ("NotSmoothable", "B5")
    v = classify_and_decide(Cycle((7, 3, 5)))
    assert (v.status, v.steenbrink) == ("Unknown", True)


@pytest.mark.parametrize("family", ["B3", "B5"])
def test_classifier_agrees_with_family_decider(family):
    # zero-length runs splice two entries together, so some members land in B4
    build, decide = (cycle_B3, decide_B3) if family == "B3" else (cycle_B5, decide_B5)
    for chi in range(4, 16):
        for x in range(7):
            for y in range(7):
                if x + y == 0:
                    continue
                if family == "B5":
                    params = (chi, x, y)
                else:
                    params = (chi, x + y, y)
                c = build(*params)
                v = classify_and_decide(c)
                assert v.status == ("Smoothable" if decide(*params) else "NotSmoothable"), params
                if v.rule == family:
                    p = tuple(v.params.values())
                    assert build(*p) == c


def test_dihedral_max_small():
    assert dihedral_max((2, 5, 3)) == (5, 3, 2)
    assert dihedral_max((3, 2, 5)) == (5, 3, 2)
