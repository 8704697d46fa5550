import itertools
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from singchain.chains import generate_tchains
from singchain.exact import NotNegativeDefinite
from singchain.graphs import (
    DualGraph,
    classify_strictly_lc,
    cores,
    lc_status,
    log_discrepancies,
    log_discrepancies_recursive,
)

TCHAINS = generate_tchains(7, 22)


def sympy_alphas(g: DualGraph):
    """Oracle: solve K.E_i = b_i - 2 for K = sum (alpha_j - 1) E_j with sympy."""
    m = sympy.Matrix(g.gram())
    rhs = sympy.Matrix([w - 2 for w in g.weights])
    x = m.LUsolve(rhs)
    return [F(int(v.p), int(v.q)) + 1 for v in x]


def test_examples():
    p = log_discrepancies((4,))
    assert p.alphas == (F(1, 2),) and p.kp_squared_plus_kpE == 1
    p = log_discrepancies((2, 4, 3, 3))
    assert p.alphas == (F(3, 5), F(1, 5), F(1, 5), F(2, 5))
    assert p.kp_squared_plus_kpE == 1
    p = log_discrepancies(DualGraph.cycle((5, 2, 2)))
    assert p.alphas == (0, 0, 0) and p.kp_squared_plus_kpE == 0
    assert log_discrepancies_recursive((2, 5)).alphas == (F(2, 3), F(1, 3))
    assert log_discrepancies_recursive((4,)).alphas == (F(1, 2),)
    assert log_discrepancies_recursive((3, 3)).alphas == (F(1, 2), F(1, 2))


def test_cores_examples():
    assert cores((4,)) == (0,)
    assert cores((2, 4, 3, 3)) == (1, 2)
    assert cores((3, 2, 3)) == (0, 1, 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_du_val_normalization(k):
    p = log_discrepancies((2,) * k)
    assert p.alphas == (1,) * k and p.kp_squared_plus_kpE == 0


@given(st.lists(st.integers(2, 9), min_size=1, max_size=7))
def test_linear_solve_matches_sympy(entries):
    g = DualGraph.chain(entries)
    assert list(log_discrepancies(g).alphas) == sympy_alphas(g)


def test_recursive_matches_linear_on_tchains():
    for c in TCHAINS:
        rec = log_discrepancies_recursive(c)
        lin = log_discrepancies(c)
        assert rec == lin, c
        assert rec.kp_squared_plus_kpE == 1
        assert lc_status(c) == "klt"


def test_core_count_is_d():
    from singchain.chains import is_tchain

    for c in TCHAINS:
        assert len(cores(c)) == is_tchain(c).d


def test_recursive_rejects_non_tchain():
    with pytest.raises(ValueError):
        log_discrepancies_recursive((3, 2))


@settings(max_examples=60)
@given(st.lists(st.integers(2, 8), min_size=2, max_size=7).filter(lambda e: max(e) > 2))
def test_cycles_are_log_canonical_with_zero_alphas(entries):
    g = DualGraph.cycle(entries)
    p = log_discrepancies(g)
    assert p.alphas == (0,) * len(entries)
    assert p.kp_squared_plus_kpE == 0
    assert p.status == "strictly lc"


def test_nodal_cycle():
    p = log_discrepancies(DualGraph.cycle((5,)))
    assert p.alphas == (0,)


def test_indefinite_graph_raises():
    with pytest.raises(NotNegativeDefinite):
        log_discrepancies(DualGraph.cycle((2, 2, 2)))


# strictly lc rational forks


def test_strictly_lc_examples():
    t = classify_strictly_lc(DualGraph.type_2222((4,)))
    assert t.kind == "(2,2,2,2)" and t.smoothable and t.kp_invariant == 0
    t = classify_strictly_lc(DualGraph.star(5, [[3], [3], [3]]))
    assert t.kind == "(3,3,3)" and not t.smoothable
    assert classify_strictly_lc(DualGraph.chain((3, 2, 3))).label == "NotStrictlyLcRational"


@pytest.mark.parametrize(
    "arms, good, first",
    [((3, 3, 3), {2, 3, 4}, 2), ((2, 4, 4), {2, 3}, 2), ((2, 3, 6), {2}, 2)],
)
def test_star_types(arms, good, first):
    for b in range(first, 9):
        g = DualGraph.star(b, [[a] for a in arms])
        if not g.negative_definite:
            continue
        t = classify_strictly_lc(g)
        assert t.params == (b,)
        assert t.smoothable == (b in good)
        assert t.kp_invariant == 1
        assert t.alphas[0] == 0


def test_star_kp_against_oracle():
    for arms in ((3, 3, 3), (2, 4, 4), (2, 3, 6)):
        for b in range(3, 9):
            g = DualGraph.star(b, [[a] for a in arms])
            al = sympy_alphas(g)
            kp = sum((a * (w - 2) for a, w in zip(al, g.weights)), F(0))
            assert classify_strictly_lc(g).kp_invariant == kp


def test_2222_chains():
    for bs in itertools.chain.from_iterable(itertools.product(range(2, 9), repeat=k) for k in (1, 2, 3)):
        g = DualGraph.type_2222(bs)
        if not g.negative_definite:
            continue
        t = classify_strictly_lc(g)
        assert t.kind == "(2,2,2,2)" and t.params in (bs, bs[::-1])
        assert t.kp_invariant == 0
        assert t.smoothable == (sum(b - 3 for b in bs) <= 3)


def test_non_matching_forks():
    g = DualGraph.star(3, [[2], [2], [2, 2]])  # D-type, klt
    assert classify_strictly_lc(g).kind == "none"
