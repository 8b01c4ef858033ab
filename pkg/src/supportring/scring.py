"""The rank-7 ring of support classes with structure constants polynomial in q.

Vectors in the ring are 7-tuples of exact numbers (int or Fraction) in the
basis order ``A, B, C, D+, D-, E+, E-``.  The product table below is the
closed form; :mod:`supportring.oracle` checks it against brute force.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .groupring import all_class_sums, brute_force_products, convolve, decompose_support
from .sl2 import LABELS, det_subgroup, parse_label, require_sc_field

IDX = {label: i for i, label in enumerate(LABELS)}


@dataclass(frozen=True)
class QPoly:
    """Integer polynomial in q; ``coeffs[i]`` multiplies q**i."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def q(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @staticmethod
    def _lift(other):
        return other if isinstance(other, QPoly) else QPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return QPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return QPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        return sum(c * q**i for i, c in enumerate(self.coeffs))

    def divmod_linear(self, root: int):
        """Synthetic division by (q - root): returns (quotient, remainder)."""
        if not self.coeffs:
            return QPoly(), 0
        acc, quot = 0, []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            quot.append(acc)
        rem = quot.pop()
        return QPoly(tuple(reversed(quot))), rem

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c:
                mono = {0: "", 1: "q"}.get(i, f"q^{i}")
                coef = str(c) if (c not in (1, -1) or not mono) else ("-" if c < 0 else "")
                terms.append(f"{coef}{'*' if mono and coef not in ('', '-') else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _vec(terms: dict) -> tuple:
    out = [QPoly()] * 7
    for label, coeff in terms.items():
        out[IDX[label]] = QPoly._lift(coeff)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _closed_form() -> dict:
    q = QPoly.q()
    t = {}

    def put(pairs, rhs):
        for pair in pairs:
            assert pair not in t, pair
            t[pair] = _vec(rhs)

    for x in LABELS:
        put({("A", x), (x, "A")}, {x: q - 1})
    put([("B", "B")], {"A": q - 1})
    put([("B", "C"), ("C", "B")], {"C": q - 1})
    put([("B", "D+"), ("D-", "B")], {"E-": q - 1})
    put([("B", "D-"), ("D+", "B")], {"E+": q - 1})
    put([("B", "E+"), ("E-", "B")], {"D-": q - 1})
    put([("B", "E-"), ("E+", "B")], {"D+": q - 1})
    c3 = (q - 1) * (q - 2) * (q - 3)
    put([("C", "C")], {"A": (q - 1) ** 2 * (q - 2), "B": (q - 1) ** 2 * (q - 2),
                       "C": (q - 1) * (q - 3) * (q - 4), "D+": c3, "D-": c3, "E+": c3, "E-": c3})
    a, b = (q - 1) * (q - 3), (q - 1) * (q - 2)
    put([("C", "D+"), ("C", "E-")], {"C": a, "D-": b, "E+": b})
    put([("C", "D-"), ("C", "E+")], {"C": a, "D+": b, "E-": b})
    put([("D+", "C"), ("E+", "C")], {"C": a, "D-": b, "E-": b})
    put([("D-", "C"), ("E-", "C")], {"C": a, "D+": b, "E+": b})
    put([("D+", "D+"), ("E+", "E-")], {"A": (q - 1) ** 2, "D+": b})
    put([("D+", "D-"), ("E+", "E+")], {"C": q - 1, "E-": q - 1})
    put([("D-", "D+"), ("E-", "E-")], {"C": q - 1, "E+": q - 1})
    put([("D+", "E+"), ("E+", "D-")], {"B": (q - 1) ** 2, "E+": b})
    put([("E+", "D+"), ("D+", "E-")], {"C": q - 1, "D-": q - 1})
    put([("E-", "D+"), ("D-", "E-")], {"B": (q - 1) ** 2, "E-": b})
    put([("D-", "D-"), ("E-", "E+")], {"A": (q - 1) ** 2, "D-": b})
    put([("D-", "E+"), ("E-", "D-")], {"C": q - 1, "D+": q - 1})
    assert len(t) == 49
    return t


def structure_table() -> dict:
    """All 49 products of basis elements, as 7-tuples of QPoly (a fresh copy)."""
    return dict(_closed_form())


def evaluate_table(table: dict, q: int) -> dict:
    return {pair: tuple(c(q) for c in vec) for pair, vec in table.items()}


@functools.lru_cache(maxsize=None)
def _numeric_table(q: int):
    ev = evaluate_table(_closed_form(), q)
    return tuple(tuple(ev[(x, y)] for y in LABELS) for x in LABELS)


def _numeric(q: int, table=None):
    if table is None:
        return _numeric_table(q)
    ev = evaluate_table(table, q)
    return tuple(tuple(ev[(x, y)] for y in LABELS) for x in LABELS)


def basis_vector(label: str) -> tuple:
    v = [0] * 7
    v[IDX[parse_label(label)]] = 1
    return tuple(v)


def as_vector(x) -> tuple:
    return basis_vector(x) if isinstance(x, str) else tuple(x)


def sc_mul(u, v, q: int, table=None) -> tuple:
    """Product in the support-class ring at a concrete q > 2."""
    require_sc_field(q)
    u, v = as_vector(u), as_vector(v)
    t = _numeric(q, table)
    out = [0] * 7
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    w = ui * vj
                    for k, c in enumerate(t[i][j]):
                        if c:
                            out[k] += w * c
    return tuple(out)


def vadd(*vs) -> tuple:
    return tuple(sum(cs) for cs in zip(*vs))


def vscale(c, v) -> tuple:
    return tuple(c * x for x in v)


def vsub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def identity(q: int) -> tuple:
    """The unit element A/(q-1)."""
    return vscale(Fraction(1, q - 1), basis_vector("A"))


def left_mult_matrix(x, q: int, table=None) -> list[list]:
    """Matrix of ``v -> x*v``; column j is the image of the j-th basis vector."""
    cols = [sc_mul(x, basis_vector(y), q, table) for y in LABELS]
    return [[cols[j][i] for j in range(7)] for i in range(7)]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def displayed_matrices(q: int) -> dict:
    """Left-multiplication matrices as printed for B, C, D+, E+, and alpha."""
    s = q - 1
    c1, c2, c3 = (q - 1) * (q - 2), (q - 3) * (q - 4), (q - 2) * (q - 3)
    m_b = [
        [0, 1, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0, 0, 0],
    ]
    m_c = [
        [0, 0, c1, 0, 0, 0, 0],
        [0, 0, c1, 0, 0, 0, 0],
        [1, 1, c2, q - 3, q - 3, q - 3, q - 3],
        [0, 0, c3, 0, q - 2, q - 2, 0],
        [0, 0, c3, q - 2, 0, 0, q - 2],
        [0, 0, c3, q - 2, 0, 0, q - 2],
        [0, 0, c3, 0, q - 2, q - 2, 0],
    ]
    m_dp = [
        [0, 0, 0, q - 1, 0, 0, 0],
        [0, 0, 0, 0, 0, q - 1, 0],
        [0, 0, q - 3, 0, 1, 0, 1],
        [1, 0, 0, q - 2, 0, 0, 0],
        [0, 0, q - 2, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, q - 2, 0],
        [0, 0, q - 2, 0, 1, 0, 0],
    ]
    m_ep = [
        [0, 0, 0, 0, 0, 0, q - 1],
        [0, 0, 0, 0, q - 1, 0, 0],
        [0, 0, q - 3, 1, 0, 1, 0],
        [0, 1, 0, 0, 0, 0, q - 2],
        [0, 0, q - 2, 1, 0, 0, 0],
        [1, 0, 0, 0, q - 2, 0, 0],
        [0, 0, q - 2, 0, 0, 1, 0],
    ]
    alpha = [
        [1, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 1, 0],
    ]
    scale = lambda m: [[s * x for x in row] for row in m]  # noqa: E731
    return {"B": scale(m_b), "C": scale(m_c), "D+": scale(m_dp), "E+": scale(m_ep), "alpha": alpha}


def derived_matrices(q: int) -> dict:
    """M_A, M_D- and M_E- from the displayed ones by the stated rules."""
    d = displayed_matrices(q)
    a = d["alpha"]
    m_b2 = matmul(d["B"], d["B"])
    return {
        "A": [[Fraction(x, q - 1) for x in row] for row in m_b2],
        "D-": matmul(matmul(a, d["D+"]), a),
        "E-": matmul(matmul(a, d["E+"]), a),
    }


# -- involutions ----------------------------------------------------------------

_SIGMA_TAU = (0, 1, 2, 4, 3, 6, 5)  # swap D+<->D-, E+<->E-
_INVERSION = (0, 1, 2, 3, 4, 6, 5)  # matrix inverse swaps E+<->E- only
_TRANSPOSE = (0, 1, 2, 4, 3, 5, 6)  # transpose swaps D+<->D- only


def _permute(u, perm):
    u = as_vector(u)
    return tuple(u[perm[i]] for i in range(7))


def sigma_tau(u) -> tuple:
    """Automorphism induced by inverse-transpose."""
    return _permute(u, _SIGMA_TAU)


def inversion(u) -> tuple:
    """Antiautomorphism induced by matrix inversion."""
    return _permute(u, _INVERSION)


def transposition(u) -> tuple:
    """Antiautomorphism induced by matrix transposition."""
    return _permute(u, _TRANSPOSE)


# -- interpolation ----------------------------------------------------------------

class InterpolationError(ValueError):
    pass


class Underdetermined(InterpolationError):
    pass


class NonIntegerFit(InterpolationError):
    pass


class InterpolationMismatch(InterpolationError):
    def __init__(self, pair, index, fitted, expected):
        self.pair, self.index, self.fitted, self.expected = pair, index, fitted, expected
        super().__init__(
            f"{pair[0]}*{pair[1]} coefficient of {LABELS[index]}: fitted {fitted}, table {expected}"
        )


def _lagrange(points) -> list[Fraction]:
    """Coefficients (low degree first) of the interpolating polynomial."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    return coeffs


def interpolate_constants(sample_qs, products=None, table=None) -> dict:
    """Rebuild the structure constants from brute-force products at a few q.

    Each coefficient is divided by (q-1), fitted by a polynomial through all
    sample points, required to have integer coefficients and degree <= 2,
    multiplied back by (q-1) and compared with the closed-form table.
    """
    qs = sorted(set(sample_qs))
    if len(qs) < 3:
        raise Underdetermined(f"need at least 3 distinct q values, got {qs}")
    for q in qs:
        require_sc_field(q)
    products = products or brute_force_products
    data = {q: products(q) for q in qs}
    table = structure_table() if table is None else table
    one_minus = QPoly((-1, 1))
    fitted = {}
    for pair in table:
        vec = []
        for k in range(7):
            pts = []
            for q in qs:
                v = data[q][pair][k]
                if v % (q - 1):
                    raise NonIntegerFit(f"{pair} coefficient {LABELS[k]} = {v} not divisible by q-1={q - 1}")
                pts.append((q, v // (q - 1)))
            c = _lagrange(pts)
            if any(x.denominator != 1 for x in c):
                raise NonIntegerFit(f"{pair} coefficient {LABELS[k]}: non-integer fit {c}")
            poly = one_minus * QPoly(tuple(int(x) for x in c))
            if poly.degree > 3 or poly != table[pair][k]:
                raise InterpolationMismatch(pair, k, poly, table[pair][k])
            vec.append(poly)
        fitted[pair] = tuple(vec)
    return fitted


# -- variants ---------------------------------------------------------------------

class VariantMismatch(ValueError):
    def __init__(self, variant, pair, got, expected):
        self.variant, self.pair, self.got, self.expected = variant, pair, got, expected
        super().__init__(f"{variant}: {pair[0]}*{pair[1]} = {got}, expected {expected}")


def scaled_variant_check(q: int, variant: str, m: int | None = None) -> dict:
    """Brute-force the class-sum products in PSL2, GL2 or a det-subgroup of GL2.

    Every structure constant must equal the SL2 closed form times 1/2
    (PSL2, odd q), q-1 (GL2) or m (determinants in the order-m subgroup).
    """
    require_sc_field(q)
    if variant == "PSL2":
        if q % 2 == 0:
            raise ValueError("PSL2 variant needs odd q")
        kind, dets, factor = "PSL2", None, Fraction(1, 2)
    elif variant == "GL2":
        kind, dets, factor = "GL2", None, Fraction(q - 1)
    elif variant == "subgroup":
        if m is None:
            raise ValueError("subgroup variant needs m")
        kind, dets, factor = "GL2", det_subgroup(q, m), Fraction(m)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    sums = all_class_sums(q, kind, dets)
    expected = evaluate_table(structure_table(), q)
    for x in LABELS:
        for y in LABELS:
            got = decompose_support(convolve(sums[x], sums[y]))
            want = tuple(factor * c for c in expected[(x, y)])
            if got != want:
                raise VariantMismatch(variant, (x, y), got, want)
    return {"variant": variant, "q": q, "m": m, "factor": factor, "pairs_checked": 49,
            "group_order": next(iter(sums.values())).group.order}
