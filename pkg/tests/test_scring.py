"""The seven-dimensional support-class ring: table, oracle agreement, variants."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from supportring.groupring import brute_force_products
from supportring.scring import (
    IDX, QPoly, Underdetermined, VariantMismatch, basis_vector, derived_matrices, displayed_matrices,
    evaluate_table, identity, interpolate_constants, inversion, left_mult_matrix, matmul, sc_mul,
    scaled_variant_check, sigma_tau, structure_table, transposition, vadd, vscale,
)
from supportring.sl2 import LABELS, UnsupportedField

q_ = QPoly.q()
ORACLE_QS = [3, 4, 5, 7, 8, 9]


@pytest.fixture(scope="module")
def products():
    return {q: brute_force_products(q) for q in ORACLE_QS}


def test_table_entries():
    t = structure_table()
    assert len(t) == 49
    assert t[("B", "C")] == tuple(q_ - 1 if x == "C" else QPoly.const(0) for x in LABELS)
    de = t[("D+", "E+")]
    assert de[IDX["B"]] == (q_ - 1) ** 2
    assert de[IDX["E+"]] == (q_ - 1) * (q_ - 2)
    assert t[("C", "C")][IDX["A"]] == (q_ - 1) ** 2 * (q_ - 2)


def test_entries_divisible_by_q_minus_one():
    for vec in structure_table().values():
        for p in vec:
            _, rem = p.divmod_linear(1)
            assert rem == 0


def test_sc_mul_examples():
    assert sc_mul("B", "B", 5) == (4, 0, 0, 0, 0, 0, 0)
    assert sc_mul("C", "C", 3) == (4, 4, 0, 0, 0, 0, 0)
    for x in LABELS:
        assert sc_mul("A", x, 7) == vscale(6, basis_vector(x))
    with pytest.raises(UnsupportedField):
        sc_mul("A", "A", 2)


@pytest.mark.parametrize("q", ORACLE_QS)
def test_oracle_equivalence(q, products):
    want = evaluate_table(structure_table(), q)
    for pair in itertools.product(LABELS, LABELS):
        assert products[q][pair] == tuple(want[pair]), pair


@pytest.mark.parametrize("q", [3, 5, 8])
def test_associativity_all_triples(q):
    for x, y, z in itertools.product(LABELS, repeat=3):
        assert sc_mul(sc_mul(x, y, q), z, q) == sc_mul(x, sc_mul(y, z, q), q)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_identity_and_involutions(q):
    one = identity(q)
    for x, y in itertools.product(LABELS, repeat=2):
        ex, ey = basis_vector(x), basis_vector(y)
        assert sc_mul(one, ex, q) == ex == sc_mul(ex, one, q)
        assert sigma_tau(sc_mul(ex, ey, q)) == sc_mul(sigma_tau(ex), sigma_tau(ey), q)
        assert inversion(sc_mul(ex, ey, q)) == sc_mul(inversion(ey), inversion(ex), q)
        assert transposition(sc_mul(ex, ey, q)) == sc_mul(transposition(ey), transposition(ex), q)


def test_sigma_tau_examples():
    assert sigma_tau(basis_vector("D+")) == basis_vector("D-")
    assert sigma_tau(basis_vector("A")) == basis_vector("A")


@given(st.lists(st.integers(-9, 9), min_size=7, max_size=7))
def test_sigma_tau_involution(v):
    assert sigma_tau(sigma_tau(tuple(v))) == tuple(v)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 9]),
       st.lists(st.integers(-4, 4), min_size=7, max_size=7),
       st.lists(st.integers(-4, 4), min_size=7, max_size=7))
def test_bilinear_and_augmentation(q, u, v):
    sizes = [q - 1, q - 1, (q - 1) ** 2 * (q - 2)] + [(q - 1) ** 2] * 4
    aug = lambda w: sum(a * b for a, b in zip(w, sizes))  # noqa: E731
    assert aug(sc_mul(u, v, q)) == aug(u) * aug(v)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_displayed_matrices(q):
    d = displayed_matrices(q)
    for x in ("B", "C", "D+", "E+"):
        assert left_mult_matrix(x, q) == d[x], x
    der = derived_matrices(q)
    for x in ("A", "D-", "E-"):
        assert left_mult_matrix(x, q) == der[x], x


def test_matrix_examples():
    mb = left_mult_matrix("B", 3)
    assert all(v in (0, 2) for row in mb for v in row)
    mc = left_mult_matrix("C", 4)
    assert mc[IDX["C"]][IDX["C"]] == 0  # (q-1)(q-3)(q-4) vanishes at q = 4
    q = 7
    assert left_mult_matrix("A", q) == [[(q - 1) * (i == j) for j in range(7)] for i in range(7)]
    # column D+ of M_B carries q-1 in row E-
    assert mb[IDX["E-"]][IDX["D+"]] == 2


@pytest.mark.parametrize("q", [3, 5])
def test_left_mult_is_multiplicative(q):
    for x, y in itertools.product(LABELS, repeat=2):
        lhs = matmul(left_mult_matrix(x, q), left_mult_matrix(y, q))
        assert lhs == left_mult_matrix(sc_mul(x, y, q), q)


def test_interpolation(products):
    assert interpolate_constants([3, 4, 5], products.get) == structure_table()
    assert interpolate_constants([3, 4, 5, 7], products.get) == structure_table()
    with pytest.raises(Underdetermined):
        interpolate_constants([3, 4])


def test_variants():
    assert scaled_variant_check(3, "PSL2")["pairs_checked"] == 49
    assert scaled_variant_check(5, "PSL2")["factor"] == 0.5
    assert scaled_variant_check(3, "GL2")["factor"] == 2
    assert scaled_variant_check(4, "GL2")["factor"] == 3
    assert scaled_variant_check(5, "subgroup", 2)["factor"] == 2


def test_psl2_b_squared():
    from supportring.groupring import class_sum, decompose_support
    b = class_sum(3, "B", "PSL2")
    assert decompose_support(b * b) == (1, 0, 0, 0, 0, 0, 0)
    bg = class_sum(3, "B", "GL2")
    assert decompose_support(bg * bg) == (4, 0, 0, 0, 0, 0, 0)


def test_variant_mismatch_is_reported(monkeypatch):
    import supportring.scring as sc
    bad = structure_table()
    bad[("B", "B")] = tuple(p + 1 if k == 0 else p for k, p in enumerate(bad[("B", "B")]))
    monkeypatch.setattr(sc, "structure_table", lambda: bad)
    with pytest.raises(VariantMismatch) as err:
        sc.scaled_variant_check(3, "GL2")
    assert err.value.pair == ("B", "B")


def test_vector_helpers():
    assert vadd((1, 2), (3, 4)) == (4, 6)
