"""GL2 characters and the decomposition of the idempotents."""

import cmath
from fractions import Fraction as Fr

import pytest

from supportring.chars import (
    InvalidSpec, IrrepSpec, MultiplicativeCharacter, NotNearInteger, NotPointwiseConstant,
    NotTypeConstant, char_value, character_matrix, character_orthogonality, class_infos,
    class_profile_pointwise, class_profile_sum, decomposition_report, displayed_fx_table,
    enumerate_irreps, fx_elements, mean_values_check, pi_tilde_element, pi_tilde_profile,
    profile_report, rank_in_irrep, relevant_irreps, sigma, snap,
)
from supportring.groupring import GroupAlgebraElement
from supportring.sl2 import ConjClass, matrix_group


def test_spec_validation():
    with pytest.raises(InvalidSpec):
        IrrepSpec("W", 5, (1, 1))
    with pytest.raises(InvalidSpec):
        IrrepSpec("X", 5, (6,))   # phi^(q-1) trivial
    assert IrrepSpec("W", 5, (3, 1)).canonical() == IrrepSpec("W", 5, (1, 3))


def test_multiplicative_character():
    chi = MultiplicativeCharacter(4, 1)
    assert abs(chi(1) - 1j) < 1e-12
    assert abs(chi(2) * chi(3) - chi(5)) < 1e-12


def test_char_value_examples():
    q = 5
    a = ConjClass("a", (2,))
    b = ConjClass("b", (2,))
    w = IrrepSpec("W", q, (1, 2))
    alpha = lambda e, x: cmath.exp(2j * cmath.pi * e * {1: 0, 2: 1, 4: 2, 3: 3}[x] / 4)  # noqa: E731
    assert abs(char_value(w, a) - 6 * alpha(1, 2) * alpha(2, 2)) < 1e-12
    assert abs(char_value(IrrepSpec("V", q, (1,)), b)) < 1e-12
    x = IrrepSpec("X", q, (1,))
    assert abs(char_value(x, b) + char_value(x, a) / (q - 1)) < 1e-12


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_orthogonality(q):
    rep = character_orthogonality(q)
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]


def test_sum_dim_squared_q3():
    assert sum(s.dim**2 for s in enumerate_irreps(3)) == 48


def test_swapped_w_and_frobenius_x_agree():
    q = 5
    infos = class_infos(q)
    sizes = [c.size for c in infos]
    order = sum(sizes)

    def inner(s, t):
        return sum(n * char_value(s, c.cls) * char_value(t, c.cls).conjugate()
                   for n, c in zip(sizes, infos)) / order

    assert abs(inner(IrrepSpec("W", q, (1, 3)), IrrepSpec("W", q, (3, 1))) - 1) < 1e-9
    assert abs(inner(IrrepSpec("X", q, (1,)), IrrepSpec("X", q, (5,))) - 1) < 1e-9
    assert abs(inner(IrrepSpec("U", q, (0,)), IrrepSpec("V", q, (0,)))) < 1e-9


def test_profile_examples():
    assert class_profile_sum(fx_elements(5)["B"], 5) == {
        "a_x": 0, "b_x": 0, "c_x,-x": 4, "c_x,y": 0, "d_tr=0": 4, "d_tr!=0": 0}
    assert class_profile_sum(fx_elements(4)["A"], 4) == {"a_x": 1, "b_x": 0, "c_x,y": 2, "d_xi": 0}
    assert class_profile_sum(fx_elements(4)["C"], 4) == {"a_x": 0, "b_x": 6, "c_x,y": 0, "d_xi": 6}


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8])
def test_profile_tables(q):
    rep = profile_report(q)
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]


def test_displayed_fx_footer():
    q = 7
    t = displayed_fx_table(q)
    sizes = {k: sum(t[x][k] for x in t) for k in t["A"]}
    assert sizes == {"a_x": 1, "b_x": 48, "c_x,-x": 56, "c_x,y": 56, "d_tr=0": 42, "d_tr!=0": 42}


def test_pi_tilde_examples():
    q = 5
    p1 = pi_tilde_profile(1, q)
    assert p1["a_x"] == Fr(1, 480)
    assert pi_tilde_profile(3, q)["b_x"] == 0
    assert pi_tilde_profile(4, q)["d_tr!=0"] == Fr(-2, q * q - 1)


def test_not_type_constant():
    q = 5
    G = matrix_group(q, "GL2")
    with pytest.raises(NotTypeConstant):
        class_profile_sum(GroupAlgebraElement(G, {G.identity: 1}), q)


def test_pointwise_requires_constant_coefficients():
    q = 5
    with pytest.raises(NotPointwiseConstant):
        class_profile_pointwise(fx_elements(q)["A"], q)
    # the central element pi~1 restricted to scalars is pointwise constant on a_x
    G = matrix_group(q, "GL2")
    scalars = {G.find((x, 0, 0, x)): Fr(1, 480) for x in range(1, q)}
    assert class_profile_pointwise(scalars, q)["a_x"] == Fr(1, 480)


def test_rank_in_irrep():
    q = 4
    pi_fa = {g: Fr(v, (q - 1) ** 2) for g, v in fx_elements(q)["A"].coeffs.items()}
    assert rank_in_irrep(pi_fa, IrrepSpec("U", q, (0,))) == 1
    assert rank_in_irrep(pi_fa, IrrepSpec("V", q, (0,))) == 2
    assert rank_in_irrep(pi_tilde_element(4, q), IrrepSpec("V", q, (0,))) == 2
    assert rank_in_irrep(pi_tilde_element(1, q), IrrepSpec("V", q, (0,))) == 0


def test_snap():
    assert snap(2 + 1e-9j) == 2
    with pytest.raises(NotNearInteger):
        snap(0.5 + 0j)
    with pytest.raises(NotNearInteger):
        snap(-1 + 0j)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_decomposition(q):
    rep = decomposition_report(q)
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]


def test_decomposition_examples():
    fam = decomposition_report(4).results["family_totals"]
    assert fam == {"U": 1, "V": 8, "W": 5, "X": 6}
    r5 = decomposition_report(5).results
    assert r5["V_L"] == "pi~2"
    assert r5["multiplicities"]["pi~2"]["V(2,)"] == 5
    r7 = decomposition_report(7).results
    assert r7["X_by_sigma"][-1] == 2


def test_relevant_counts():
    for q in (5, 7, 9):
        rel = relevant_irreps(q)
        assert len(rel["W"]) == (q - 3) // 2 and len(rel["X"]) == (q - 1) // 2
        assert all(sigma(s) in (1, -1) for s in rel["X"])
    rel = relevant_irreps(8)
    assert len(rel["W"]) == 3 and len(rel["X"]) == 4


@pytest.mark.parametrize("q", [5, 7, 9])
def test_mean_values(q):
    rep = mean_values_check(q)
    assert rep.ok, [(c.name, c.witness) for c in rep.failures]


def test_mean_values_need_odd_q():
    with pytest.raises(ValueError):
        mean_values_check(4)


def test_character_matrix_shape():
    specs, mat = character_matrix(4)
    assert mat.shape == (len(specs), len(class_infos(4))) == (15, 15)  # q^2 - 1 classes
