"""Association schemes on SL2(F_q)."""

import numpy as np
import pytest

from supportring.groupring import class_sum, convolve, decompose_support
from supportring.schemes import (
    VARIANTS, beta, beta_system, build_scheme, closed_form_report, corrupt_drop_pair,
    d5_closed_form, displayed_tilde_matrices, eigenvalue_table, tilde_closed_form,
    tilde_mult_matrices, verify_axioms,
)
from supportring.sl2 import UnsupportedField


@pytest.fixture(scope="module")
def built():
    return {(q, v): build_scheme(q, v) for q in (4, 5) for v in VARIANTS}


def test_d5_partition_at_four(built):
    s = built[(4, "d5")]
    assert len(s.matrices) == 6 and s.n == 60
    assert np.array_equal(sum(s.matrices), np.ones((60, 60), dtype=np.int64))


def test_unsupported():
    with pytest.raises(UnsupportedField):
        build_scheme(3, "d5")
    with pytest.raises(ValueError):
        build_scheme(5, "d7")


def test_examples(built):
    s = built[(5, "d5")]
    assert s.constants[(2, 2)] == (4, 4, 0, 0, 0, 0)
    assert s.constants[(1, 1)] == (3, 2, 0, 0, 0, 0)
    t = built[(5, "tilde")]
    assert t.constants[(3, 3)] == (64, 64, 32, 32)


@pytest.mark.parametrize("q", [4, 5])
@pytest.mark.parametrize("variant", VARIANTS)
def test_axioms_and_products(built, q, variant):
    s = built[(q, variant)]
    rep = verify_axioms(s)
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]
    rep = closed_form_report(s)
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]


def test_merged_variants_coincide(built):
    for q in (4, 5):
        a, b = built[(q, "merged12_45")], built[(q, "tilde")]
        assert all(np.array_equal(x, y) for x, y in zip(a.matrices, b.matrices))


def test_c1_is_not_a_scaled_identity(built):
    for q in (4, 5):
        c11 = built[(q, "d5")].constants[(1, 1)]
        assert c11 != ((q - 2) ** 2, 0, 0, 0, 0, 0)


def test_adjacency_orientation_matches_group_ring(built):
    # C2^2 read off matrices equals B*B in the group ring, restricted to the d5 classes
    q = 5
    bb = decompose_support(convolve(class_sum(q, "B"), class_sum(q, "B")))
    c22 = built[(q, "d5")].constants[(2, 2)]
    assert bb[0] == c22[0] == c22[1] == q - 1


def test_tilde_matrices():
    q = 5
    m = tilde_mult_matrices(q)
    assert m == displayed_tilde_matrices(q)
    assert m[1][1][1] == 6
    assert m[2][2][2] == 8
    assert m[0] == [[int(i == j) for j in range(4)] for i in range(4)]


@pytest.mark.parametrize("q", [4, 5, 7])
def test_closed_forms_are_symmetric(q):
    for table in (d5_closed_form(q), tilde_closed_form(q)):
        for (i, j), v in table.items():
            assert table[(j, i)] == v


@pytest.mark.parametrize("q", [4, 5])
def test_beta_system(built, q):
    rep = beta_system(q, built[(q, "tilde")])
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]
    dims = [row[0] for row in rep.results["eigenvalue_table"]]
    assert sum(dims) == q**3 - q


def test_beta_examples():
    q = 5
    table = eigenvalue_table(q)
    assert table[2][2] == -1
    assert table[2][0] == 105
    assert [row[0] for row in table] == [1, 9, 105, 5]
    assert table[1][4] == 4 * (1 - q)
    assert sum(beta(q)[0]) * (q**3 - q) == 4


def test_negative_control(built):
    bad = corrupt_drop_pair(built[(4, "d5")])
    rep = verify_axioms(bad)
    names = {c.name for c in rep.failures}
    assert "classes partition the all-ones matrix" in names
    witness = next(c.witness for c in rep.failures if c.name.startswith("classes partition"))
    assert witness["cover"] == 0
