"""Association schemes on SL2(F_q) built from support classes.

Class matrices are 0/1 integer arrays indexed by the SL2 enumeration, with
entry (u, v) = 1 iff u v^-1 lies in the class.  With this orientation the
matrix of a group-ring element is its left-regular representation, so
matrix products follow group-ring products in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Fr
from math import lcm

import numpy as np

from .report import Report
from .sl2 import UnsupportedField, matrix_group

VARIANTS = ("d5", "merged45", "merged12_45", "tilde")

# each scheme class as a union of the d5 classes C0..C5, where C0 = I, C1 = A - I,
# C2 = B, C3 = C, C4 = D+ + D-, C5 = E+ + E-
_MERGES = {
    "d5": [("C0",), ("C1",), ("C2",), ("C3",), ("C4",), ("C5",)],
    "merged45": [("C0",), ("C1",), ("C2",), ("C3",), ("C4", "C5")],
    "merged12_45": [("C0",), ("C1", "C2"), ("C3",), ("C4", "C5")],
    "tilde": [("C0",), ("C1", "C2"), ("C3",), ("C4", "C5")],
}


@dataclass
class SchemeStructure:
    variant: str
    q: int
    labels: list
    matrices: list
    constants: dict = field(default_factory=dict)   # (i, j) -> tuple over k
    failures: list = field(default_factory=list)    # closure failures from extraction

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]


def _element_classes(q: int) -> np.ndarray:
    """d5 class index (0..5) of every SL2 element."""
    G = matrix_group(q, "SL2")
    which = {"A": 1, "B": 2, "C": 3, "D+": 4, "D-": 4, "E+": 5, "E-": 5}
    out = np.array([which[s] for s in G.supports], dtype=np.int64)
    out[G.identity] = 0
    return out


def quotient_matrix(q: int) -> np.ndarray:
    """W[u, v] = index of u v^-1."""
    G = matrix_group(q, "SL2")
    n = G.order
    u = np.repeat(np.arange(n), n)
    v = np.tile(G.inverse_indices, n)
    return G.mul_many(u, v).reshape(n, n)


def build_scheme(q: int, variant: str = "d5", extract: bool = True) -> SchemeStructure:
    if variant not in VARIANTS:
        raise ValueError(f"unknown scheme variant {variant!r}")
    if q < 4:
        raise UnsupportedField(f"the schemes need q >= 4, got q={q}")
    cls_of = _element_classes(q)[quotient_matrix(q)]
    mats, labels = [], []
    for group in _MERGES[variant]:
        ids = [int(name[1]) for name in group]
        mats.append(np.isin(cls_of, ids).astype(np.int64))
        labels.append("+".join(group))
    s = SchemeStructure(variant, q, labels, mats)
    if extract:
        extract_constants(s)
    return s


def extract_constants(s: SchemeStructure) -> dict:
    """Read p_{ij}^k off one nonzero entry per class, then verify the identity."""
    d = len(s.matrices)
    probes = []
    for m in s.matrices:
        nz = np.argwhere(m)
        probes.append(tuple(nz[0]) if len(nz) else None)
    s.constants, s.failures = {}, []
    for i in range(d):
        for j in range(d):
            prod = s.matrices[i] @ s.matrices[j]
            coeffs = tuple(int(prod[p]) if p is not None else 0 for p in probes)
            rebuilt = sum(c * m for c, m in zip(coeffs, s.matrices))
            if not np.array_equal(prod, rebuilt):
                u, v = np.argwhere(prod != rebuilt)[0]
                s.failures.append({"pair": (i, j), "position": (int(u), int(v)),
                                   "product": int(prod[u, v]), "combination": int(rebuilt[u, v])})
            s.constants[(i, j)] = coeffs
    return s.constants


def verify_axioms(s: SchemeStructure) -> Report:
    rep = Report("scheme axioms", s.q)
    rep.results["variant"] = s.variant
    n = s.n
    m0 = s.matrices[0]
    rep.check("C0 is the identity", np.array_equal(m0, np.eye(n, dtype=np.int64)))
    total = sum(s.matrices)
    bad = np.argwhere(total != 1)
    rep.check("classes partition the all-ones matrix", len(bad) == 0,
              {"position": bad[0].tolist(), "cover": int(total[tuple(bad[0])])} if len(bad) else None)
    rep.check("entries are 0/1", all(np.isin(m, (0, 1)).all() for m in s.matrices))
    if not s.constants:
        extract_constants(s)
    rep.check("closed under products with integral constants", not s.failures,
              s.failures[0] if s.failures else None)
    d = len(s.matrices)
    comm = [(i, j) for i in range(d) for j in range(i + 1, d)
            if not np.array_equal(s.matrices[i] @ s.matrices[j], s.matrices[j] @ s.matrices[i])]
    rep.check("commutative", not comm, comm[:1])
    asym = [s.labels[i] for i, m in enumerate(s.matrices) if not np.array_equal(m, m.T)]
    rep.check("all classes symmetric", not asym, asym)
    return rep


# -- closed forms --------------------------------------------------------------

def d5_closed_form(q: int) -> dict:
    """Displayed products C_i C_j (both orders) for the d=5 scheme."""
    s = q - 1
    out = {}

    def put(i, j, vec):
        out[(i, j)] = tuple(vec)
        out[(j, i)] = tuple(vec)

    e = lambda k, c=1: tuple(c if t == k else 0 for t in range(6))  # noqa: E731
    for x in range(6):
        put(0, x, e(x))
    put(1, 1, (q - 2, q - 3, 0, 0, 0, 0))
    for y in range(2, 6):
        put(1, y, e(y, q - 2))
    put(2, 2, (s, s, 0, 0, 0, 0))
    put(2, 3, e(3, s))
    put(2, 4, e(5, s))
    put(2, 5, e(4, s))
    a = s * s * (q - 2)
    put(3, 3, (a, a, a, s * (q - 3) * (q - 4), s * (q - 2) * (q - 3), s * (q - 2) * (q - 3)))
    put(3, 4, (0, 0, 0, 2 * s * (q - 3), s * (q - 2), s * (q - 2)))
    put(3, 5, (0, 0, 0, 2 * s * (q - 3), s * (q - 2), s * (q - 2)))
    put(4, 4, (2 * s * s, 2 * s * s, 0, 2 * s, s * (q - 2), s))
    put(4, 5, (0, 0, 2 * s * s, 2 * s, s, s * (q - 2)))
    put(5, 5, (2 * s * s, 2 * s * s, 0, 2 * s, s * (q - 2), s))
    return out


def tilde_closed_form(q: int) -> dict:
    s = q - 1
    out = {}

    def put(i, j, vec):
        out[(i, j)] = tuple(vec)
        out[(j, i)] = tuple(vec)

    for x in range(4):
        put(0, x, tuple(1 if t == x else 0 for t in range(4)))
    put(1, 1, (2 * q - 3, 2 * (q - 2), 0, 0))
    put(1, 2, (0, 0, 2 * q - 3, 0))
    put(1, 3, (0, 0, 0, 2 * q - 3))
    a = s * s * (q - 2)
    put(2, 2, (a, a, s * (q - 3) * (q - 4), s * (q - 2) * (q - 3)))
    put(2, 3, (0, 0, 4 * s * (q - 3), 2 * s * (q - 2)))
    put(3, 3, (4 * s * s, 4 * s * s, 8 * s, 2 * s * s))
    return out


def displayed_tilde_matrices(q: int) -> list:
    """The four printed 4x4 multiplication matrices M_0..M_3."""
    s = q - 1
    m0 = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    m1 = [[0, 2 * q - 3, 0, 0], [1, 2 * (q - 2), 0, 0], [0, 0, 2 * q - 3, 0], [0, 0, 0, 2 * q - 3]]
    m2 = [
        [0, 0, s * s * (q - 2), 0],
        [0, 0, s * s * (q - 2), 0],
        [1, 2 * q - 3, s * (q - 3) * (q - 4), 4 * s * (q - 3)],
        [0, 0, s * (q - 2) * (q - 3), 2 * s * (q - 2)],
    ]
    m3 = [
        [0, 0, 0, 4 * s * s],
        [0, 0, 0, 4 * s * s],
        [0, 0, 4 * s * (q - 3), 8 * s],
        [1, 2 * q - 3, 2 * s * (q - 2), 2 * s * s],
    ]
    return [m0, m1, m2, m3]


def tilde_mult_matrices(q: int, constants: dict | None = None) -> list:
    """Column j of M_i holds the coordinates of C~_i C~_j."""
    if constants is None:
        constants = build_scheme(q, "tilde").constants
    return [[[constants[(i, j)][k] for j in range(4)] for k in range(4)] for i in range(4)]


# -- beta idempotents ----------------------------------------------------------

def beta(q: int) -> list:
    """The four minimal idempotents in the basis C~_0..C~_3."""
    s = q - 1
    return [
        tuple(Fr(1, q**3 - q) for _ in range(4)),
        (Fr(q - 2, 2 * (q * q - q)), Fr(q - 2, 2 * (q * q - q)), Fr(1, q * s * s), -Fr(q - 2, 2 * q * s * s)),
        (Fr(2 * q - 3, 2 * s), -Fr(1, 2 * s), Fr(0), Fr(0)),
        (Fr(1, q * q - 1), Fr(1, q * q - 1), -Fr(2, s * s * (q + 1)), Fr(q - 3, 2 * s * s * (q + 1))),
    ]


def eigenvalue_table(q: int) -> list:
    """Printed rows (dim, eigenvalue on C~_0..C~_3) for beta_0..beta_3."""
    s = q - 1
    return [
        (Fr(1), 1, 2 * q - 3, s * s * (q - 2), 4 * s * s),
        (Fr((q + 1) * (q - 2), 2), 1, 2 * q - 3, 2 * s, 4 * (1 - q)),
        (Fr(q * (2 * q - 3) * (q + 1), 2), 1, -1, 0, 0),
        (Fr(q), 1, 2 * q - 3, 2 * (1 - q) * (q - 2), 2 * s * (q - 3)),
    ]


def _small_mul(u, v, constants, d):
    out = [Fr(0)] * d
    for i in range(d):
        for j in range(d):
            if u[i] and v[j]:
                for k, c in enumerate(constants[(i, j)]):
                    out[k] += u[i] * v[j] * c
    return tuple(out)


def beta_system(q: int, scheme: SchemeStructure | None = None) -> Report:
    """Check the beta idempotents and their eigenvalue table, exactly and on the full matrices."""
    s = scheme or build_scheme(q, "tilde")
    rep = Report("beta system", q)
    n = s.n
    bs = beta(q)
    for name, consts in (("closed form", tilde_closed_form(q)), ("extracted", s.constants)):
        for a, x in enumerate(bs):
            rep.check(f"beta{a} idempotent ({name})", _small_mul(x, x, consts, 4) == x)
            for b, y in enumerate(bs):
                if b != a:
                    rep.check(f"beta{a}*beta{b} = 0 ({name})", not any(_small_mul(x, y, consts, 4)))
    rep.check("betas sum to C~_0", tuple(sum(c) for c in zip(*bs)) == (1, 0, 0, 0))
    table = []
    for a, x in enumerate(bs):
        row = []
        for j in range(4):
            e = tuple(Fr(int(t == j)) for t in range(4))
            y = _small_mul(e, x, s.constants, 4)
            k = next(t for t, c in enumerate(x) if c)
            lam = y[k] / x[k]
            if any(yy != lam * xx for yy, xx in zip(y, x)):
                rep.check(f"C~{j} acts by a scalar on beta{a}", False, {"image": y})
            row.append(lam)
        table.append(((q**3 - q) * x[0], *row))
    rep.results["eigenvalue_table"] = table
    for a, (got, want) in enumerate(zip(table, eigenvalue_table(q))):
        rep.check(f"eigenvalue row beta{a}", tuple(got) == tuple(want), {"got": got, "want": want})
    dims = [row[0] for row in table]
    rep.check("dimensions sum to q^3-q", sum(dims) == q**3 - q, dims)

    # exact spectral check on the n x n matrices themselves
    for a, x in enumerate(bs):
        den = lcm(*(c.denominator for c in x))
        big = sum(int(c * den) * m for c, m in zip(x, s.matrices))
        ok_idem = np.array_equal(big @ big, den * big)
        tr = Fr(int(np.trace(big)), den)
        rep.check(f"beta{a} matrix idempotent", ok_idem)
        rep.check(f"beta{a} matrix trace = dimension", tr == dims[a], {"trace": tr, "dim": dims[a]})
        for j, m in enumerate(s.matrices):
            lam = table[a][j + 1]
            prod = m @ big
            rep.check(f"C~{j} - ({lam}) I singular on beta{a} image",
                      big.any() and np.array_equal(prod, int(lam) * big))
    return rep


def closed_form_report(s: SchemeStructure) -> Report:
    rep = Report("scheme products", s.q)
    rep.results["variant"] = s.variant
    if s.variant == "d5":
        want = d5_closed_form(s.q)
    elif s.variant in ("tilde", "merged12_45"):
        want = tilde_closed_form(s.q)
    else:
        return rep
    for pair, vec in want.items():
        got = s.constants[pair]
        rep.check(f"C{pair[0]}C{pair[1]}", got == vec, {"got": got, "want": vec})
    if s.variant == "d5":
        c1sq = s.constants[(1, 1)]
        naive = tuple((s.q - 2) ** 2 if k == 0 else 0 for k in range(6))
        rep.check("C1^2 differs from (q-2)^2 C0", c1sq != naive, c1sq)
    if s.variant == "tilde":
        got = tilde_mult_matrices(s.q, s.constants)
        rep.check("tilde multiplication matrices match display", got == displayed_tilde_matrices(s.q),
                  {"got": got})
    return rep


def corrupt_drop_pair(s: SchemeStructure, cls: int = 1) -> SchemeStructure:
    """Negative-control fixture: remove one (u, v) pair from class ``cls``."""
    mats = [m.copy() for m in s.matrices]
    u, v = np.argwhere(mats[cls])[0]
    mats[cls][u, v] = 0
    out = SchemeStructure(s.variant + "(corrupted)", s.q, list(s.labels), mats)
    extract_constants(out)
    return out
