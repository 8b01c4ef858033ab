"""Matrix groups and their support and conjugacy classes."""

import random

import pytest

from supportring.gf import field_new
from supportring.sl2 import (
    LABELS, UnreachablePattern, UnsupportedField, class_counts_by_type, class_sizes,
    conj_type_of, enumerate_gl2, enumerate_sl2, expected_class_counts, expected_class_sizes,
    matrix_group, parse_label, require_sc_field, support_of,
)

SC_QS = [3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q,n", [(3, 24), (4, 60), (5, 120)])
def test_sl2_orders(q, n):
    assert len(enumerate_sl2(q)) == n


@pytest.mark.parametrize("q,n", [(3, 48), (4, 180), (5, 480)])
def test_gl2_orders(q, n):
    assert len(enumerate_gl2(q)) == n


def test_support_of():
    F = field_new(3)
    assert support_of((1, 0, 0, 1)) == "A"
    assert support_of((0, 1, F.neg(1), 0)) == "B"
    assert support_of((1, 1, 1, 2)) == "C"
    with pytest.raises(UnreachablePattern):
        support_of((1, 0, 0, 0))


def test_class_sizes_examples():
    assert class_sizes(4) == {"A": 3, "B": 3, "C": 18, "D+": 9, "D-": 9, "E+": 9, "E-": 9}
    assert class_sizes(3)["C"] == 4
    assert sum(class_sizes(5).values()) == 120


@pytest.mark.parametrize("q", SC_QS)
def test_support_partition(q):
    sizes = class_sizes(q)
    assert sizes == expected_class_sizes(q)
    assert sum(sizes.values()) == q**3 - q


@pytest.mark.parametrize("q", [3, 4, 5])
def test_inverse_closure(q):
    G = matrix_group(q)
    swap = {"E+": "E-", "E-": "E+"}
    for i, g in enumerate(G.elements):
        s = G.supports[i]
        assert G.supports[G.inv(i)] == swap.get(s, s)


def test_labels_and_aliases():
    assert parse_label("Dplus") == "D+"
    assert parse_label("E-") == "E-"
    with pytest.raises(ValueError):
        parse_label("Z")
    with pytest.raises(UnsupportedField):
        require_sc_field(2)


def test_conj_types():
    F5, F7 = field_new(5), field_new(7)
    c = conj_type_of((1, 1, 0, 1), F5)
    assert (c.kind, c.params) == ("b", (1,))
    c = conj_type_of((0, 1, F5.neg(1), 0), F5)
    assert (c.kind, c.params) == ("c", (2, 3))
    c = conj_type_of((0, 1, F7.neg(1), 0), F7)
    assert c.kind == "d" and F7.extension.trace(c.params[0]) == 0


@pytest.mark.parametrize("q", [3, 4, 5, 7])
@pytest.mark.parametrize("refined", [False, True])
def test_class_counts(q, refined):
    got = class_counts_by_type(q, refined)
    want = {k: v for k, v in expected_class_counts(q, refined).items() if v[0]}
    assert got == want
    assert sum(n * s for n, s in got.values()) == (q * q - 1) * (q * q - q)


def test_refined_examples():
    assert class_counts_by_type(5)["c"] == (6, 30)
    assert class_counts_by_type(5, refined=True)["c_x,-x"][0] == 2


@pytest.mark.parametrize("q", [3, 4, 5])
def test_conj_type_constant_on_orbits(q):
    rng = random.Random(1234)
    G = matrix_group(q, "GL2")
    for _ in range(100):
        g = rng.randrange(G.order)
        h = rng.randrange(G.order)
        c = G.mul(G.mul(h, g), G.inv(h))
        assert conj_type_of(G.elements[c], G.field) == conj_type_of(G.elements[g], G.field)


def test_group_closure_and_identity():
    G = matrix_group(4)
    n = G.order
    for i in range(0, n, 7):
        assert G.mul(i, G.inv(i)) == G.identity
        assert G.mul(G.identity, i) == i


def test_psl2_and_subgroup_sizes():
    assert matrix_group(5, "PSL2").order == 60
    from supportring.sl2 import det_subgroup
    assert matrix_group(5, "GL2", det_subgroup(5, 2)).order == 240
    assert set(LABELS) == set(class_sizes(5))
