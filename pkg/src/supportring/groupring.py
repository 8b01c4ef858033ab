"""Sparse integer group-ring arithmetic over SL2, PSL2 and GL2 of F_q."""

from __future__ import annotations

import numpy as np

from .sl2 import LABELS, MatrixGroup, matrix_group, require_sc_field

INT64_MAX = np.iinfo(np.int64).max
_CHUNK = 1 << 21


class GroupMismatch(ValueError):
    pass


class IntegerOverflow(OverflowError):
    pass


class NotInSpan(ValueError):
    """The element is not a combination of support classes.

    ``witness`` holds two matrices of the same support class together with
    their differing coefficients.
    """

    def __init__(self, label, witness):
        self.label = label
        self.witness = witness
        super().__init__(f"coefficients differ inside class {label}: {witness}")


class GroupAlgebraElement:
    """Finite formal sum of group elements with integer coefficients.

    Coefficients are kept as ``{element index: int}`` without zeros and
    iterate in the group's element order.
    """

    __slots__ = ("group", "coeffs")

    def __init__(self, group: MatrixGroup, coeffs=None):
        self.group = group
        items = sorted((int(k), int(v)) for k, v in (coeffs or {}).items() if v)
        self.coeffs = dict(items)

    @classmethod
    def from_matrices(cls, group, terms):
        out = {}
        for g, c in terms.items():
            i = group.find(g)
            out[i] = out.get(i, 0) + c
        return cls(group, out)

    def _check(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        if other.group.tag != self.group.tag:
            raise GroupMismatch(f"{self.group} vs {other.group}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraElement(self.group, out)

    def __neg__(self):
        return GroupAlgebraElement(self.group, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar: int):
        return GroupAlgebraElement(self.group, {k: scalar * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return convolve(self, other)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group.tag == other.group.tag and self.coeffs == other.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"<{self.group} element with {len(self.coeffs)} terms>"

    def coefficient(self, g) -> int:
        return self.coeffs.get(self.group.find(g), 0)

    def terms(self):
        """``(matrix, coefficient)`` pairs in element order."""
        return [(self.group.elements[k], v) for k, v in self.coeffs.items()]


def identity(group: MatrixGroup) -> GroupAlgebraElement:
    return GroupAlgebraElement(group, {group.identity: 1})


def convolve(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    """Group-ring product ``(xy)(g) = sum_h x(h) y(h^-1 g)``, exact in int64.

    Raises IntegerOverflow when the l1 bound on the result could exceed
    int64; results are never wrapped.
    """
    x._check(y)
    G = x.group
    if not x.coeffs or not y.coeffs:
        return GroupAlgebraElement(G)
    bound = sum(abs(v) for v in x.coeffs.values()) * sum(abs(v) for v in y.coeffs.values())
    if bound > INT64_MAX:
        raise IntegerOverflow(f"product coefficients may exceed int64 (l1 bound {bound})")
    kx = np.fromiter(x.coeffs.keys(), dtype=np.int64)
    vx = np.fromiter(x.coeffs.values(), dtype=np.int64)
    ky = np.fromiter(y.coeffs.keys(), dtype=np.int64)
    vy = np.fromiter(y.coeffs.values(), dtype=np.int64)
    acc = np.zeros(G.order, dtype=np.int64)
    step = max(1, _CHUNK // len(ky))
    for s in range(0, len(kx), step):
        left = np.repeat(kx[s:s + step], len(ky))
        right = np.tile(ky, len(kx[s:s + step]))
        idx = G.mul_many(left, right)
        w = np.outer(vx[s:s + step], vy).ravel()
        np.add.at(acc, idx, w)
    nz = np.flatnonzero(acc)
    return GroupAlgebraElement(G, dict(zip(nz.tolist(), acc[nz].tolist())))


def class_sum(q: int, label: str, kind: str = "SL2", dets=None) -> GroupAlgebraElement:
    """Sum of all group elements whose support pattern is ``label``."""
    require_sc_field(q)
    G = matrix_group(q, kind, dets)
    return GroupAlgebraElement(G, {i: 1 for i in G.support_members(label)})


def all_class_sums(q: int, kind: str = "SL2", dets=None) -> dict[str, GroupAlgebraElement]:
    return {label: class_sum(q, label, kind, dets) for label in LABELS}


def decompose_support(x: GroupAlgebraElement) -> tuple[int, ...]:
    """Coordinates of ``x`` in the basis A, B, C, D+, D-, E+, E-.

    Raises NotInSpan if some support class carries two different coefficients.
    """
    G = x.group
    coords = []
    for label in LABELS:
        members = G.support_members(label)
        first = x.coeffs.get(members[0], 0)
        for i in members[1:]:
            c = x.coeffs.get(i, 0)
            if c != first:
                raise NotInSpan(label, ((G.elements[members[0]], first), (G.elements[i], c)))
        coords.append(first)
    return tuple(coords)


def augmentation(x: GroupAlgebraElement) -> int:
    return sum(x.coeffs.values())


def diagonal_f(q: int) -> GroupAlgebraElement:
    """F = sum over lambda in F_q^* of diag(1, lambda), in Z[GL2(F_q)]."""
    G = matrix_group(q, "GL2")
    return GroupAlgebraElement.from_matrices(G, {(1, 0, 0, lam): 1 for lam in G.field.units()})


def transport(x: GroupAlgebraElement, group: MatrixGroup) -> GroupAlgebraElement:
    """Re-index ``x`` into another group containing its matrices (e.g. SL2 into GL2)."""
    return GroupAlgebraElement.from_matrices(group, dict(x.terms()))


def brute_force_products(q: int) -> dict:
    """All 49 products of class sums in Z[SL2(F_q)], decomposed."""
    sums = all_class_sums(q)
    return {(x, y): decompose_support(convolve(sums[x], sums[y])) for x in LABELS for y in LABELS}
