"""Enumeration of SL2(F_q), PSL2(F_q), GL2(F_q) and classification of matrices.

A matrix ``(a b / c d)`` is stored as the tuple ``(a, b, c, d)`` of field
codes (see :mod:`supportring.gf`).  Groups list their elements in
lexicographic order of these tuples, and every container built on top of a
group iterates in that order.
"""

from __future__ import annotations

import functools
from collections import Counter, defaultdict
from dataclasses import dataclass

import numpy as np

from .gf import GF, field_new

LABELS = ("A", "B", "C", "D+", "D-", "E+", "E-")

_ALIASES = {
    "Dplus": "D+", "Dminus": "D-", "Eplus": "E+", "Eminus": "E-",
    "D_+": "D+", "D_-": "D-", "E_+": "E+", "E_-": "E-",
}


class UnsupportedField(ValueError):
    """Support classes need q > 2 (class C is empty over F_2)."""


class UnreachablePattern(ValueError):
    pass


def parse_label(name: str) -> str:
    label = _ALIASES.get(name, name)
    if label not in LABELS:
        raise ValueError(f"unknown support class {name!r}")
    return label


def require_sc_field(q: int):
    if q <= 2:
        raise UnsupportedField(f"support classes need q > 2, got q={q}")


def support_of(g) -> str:
    """Support class label of a unimodular (or invertible) matrix."""
    a, b, c, d = (x != 0 for x in g)
    pattern = {
        (True, False, False, True): "A",
        (False, True, True, False): "B",
        (True, True, True, True): "C",
        (True, True, False, True): "D+",
        (True, False, True, True): "D-",
        (True, True, True, False): "E+",
        (False, True, True, True): "E-",
    }.get((a, b, c, d))
    if pattern is None:
        raise UnreachablePattern(f"no invertible matrix has support {(a, b, c, d)}")
    return pattern


class MatrixGroup:
    """A finite group of 2x2 matrices over GF(q) with indexed elements.

    ``kind`` is ``"SL2"``, ``"PSL2"`` or ``"GL2"``.  For GL2, ``dets``
    optionally restricts to matrices whose determinant lies in that
    multiplicative subgroup.  PSL2 elements are represented by the
    lexicographically smaller of ``g`` and ``-g``.
    """

    def __init__(self, field: GF, kind: str = "SL2", dets=None):
        if kind not in ("SL2", "PSL2", "GL2"):
            raise ValueError(f"unknown group kind {kind!r}")
        if kind == "PSL2" and field.p == 2:
            raise ValueError("PSL2 is only distinguished from SL2 for odd q")
        self.field = field
        self.q = q = field.q
        self.kind = kind
        if kind == "GL2":
            self.dets = frozenset(field.units()) if dets is None else frozenset(dets)
        else:
            self.dets = frozenset([1])
        F = field
        mats = []
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    for d in range(q):
                        if F.sub(F.mul(a, d), F.mul(b, c)) in self.dets:
                            mats.append((a, b, c, d))
        if kind == "PSL2":
            mats = [g for g in mats if g <= self.negate(g)]
        self.elements = mats
        self.order = len(mats)
        self.index = {g: i for i, g in enumerate(mats)}
        lookup = np.full(q**4, -1, dtype=np.int64)
        for i, g in enumerate(mats):
            lookup[self.code(g)] = i
            if kind == "PSL2":
                lookup[self.code(self.negate(g))] = i
        self._lookup = lookup
        self.entries = np.array(mats, dtype=np.int64).reshape(-1, 4)
        self.identity = self.index[(1, 0, 0, 1)]

    def __repr__(self):
        extra = "" if self.kind != "GL2" or len(self.dets) == self.q - 1 else f", |M|={len(self.dets)}"
        return f"{self.kind}(F_{self.q}{extra})"

    @property
    def tag(self):
        return (self.kind, self.q, tuple(sorted(self.dets)))

    def negate(self, g):
        n = self.field.neg
        return tuple(n(x) for x in g)

    def code(self, g) -> int:
        a, b, c, d = g
        q = self.q
        return ((a * q + b) * q + c) * q + d

    def find(self, g) -> int:
        """Index of a matrix (either sign for PSL2)."""
        i = int(self._lookup[self.code(g)])
        if i < 0:
            raise KeyError(f"{g} is not in {self}")
        return i

    def matmul(self, g, h):
        F = self.field
        a1, b1, c1, d1 = g
        a2, b2, c2, d2 = h
        return (
            F.add(F.mul(a1, a2), F.mul(b1, c2)),
            F.add(F.mul(a1, b2), F.mul(b1, d2)),
            F.add(F.mul(c1, a2), F.mul(d1, c2)),
            F.add(F.mul(c1, b2), F.mul(d1, d2)),
        )

    def mul(self, i: int, j: int) -> int:
        return self.find(self.matmul(self.elements[i], self.elements[j]))

    def inverse_matrix(self, g):
        F = self.field
        a, b, c, d = g
        det_inv = F.inv(F.sub(F.mul(a, d), F.mul(b, c)))
        return (F.mul(d, det_inv), F.mul(F.neg(b), det_inv), F.mul(F.neg(c), det_inv), F.mul(a, det_inv))

    def inv(self, i: int) -> int:
        return self.find(self.inverse_matrix(self.elements[i]))

    def mul_many(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Vectorised products ``elements[left[k]] @ elements[right[k]]`` as indices."""
        add, mul = self.field.add_table, self.field.mul_table
        a1, b1, c1, d1 = self.entries[left].T
        a2, b2, c2, d2 = self.entries[right].T
        a = add[mul[a1, a2], mul[b1, c2]]
        b = add[mul[a1, b2], mul[b1, d2]]
        c = add[mul[c1, a2], mul[d1, c2]]
        d = add[mul[c1, b2], mul[d1, d2]]
        q = self.q
        return self._lookup[((a * q + b) * q + c) * q + d]

    @functools.cached_property
    def inverse_indices(self) -> np.ndarray:
        return np.array([self.inv(i) for i in range(self.order)], dtype=np.int64)

    @functools.cached_property
    def supports(self) -> list[str]:
        return [support_of(g) for g in self.elements]

    def support_members(self, label: str) -> list[int]:
        label = parse_label(label)
        return [i for i, s in enumerate(self.supports) if s == label]


@functools.lru_cache(maxsize=None)
def matrix_group(q: int, kind: str = "SL2", dets: frozenset | None = None) -> MatrixGroup:
    return MatrixGroup(field_new(q), kind, dets)


def det_subgroup(q: int, m: int) -> frozenset:
    """The unique subgroup of order m of F_q^*."""
    F = field_new(q)
    if (q - 1) % m:
        raise ValueError(f"m={m} does not divide q-1={q - 1}")
    g = F.power(F.units_generator(), (q - 1) // m)
    return frozenset(F.power(g, e) for e in range(m))


def enumerate_sl2(q: int) -> list[tuple]:
    return list(matrix_group(q, "SL2").elements)


def enumerate_gl2(q: int) -> list[tuple]:
    return list(matrix_group(q, "GL2").elements)


def class_sizes(q: int) -> dict[str, int]:
    """Number of SL2(F_q) matrices in each support class, by enumeration."""
    require_sc_field(q)
    counts = Counter(matrix_group(q, "SL2").supports)
    return {label: counts[label] for label in LABELS}


def expected_class_sizes(q: int) -> dict[str, int]:
    return {
        "A": q - 1, "B": q - 1, "C": (q - 1) ** 2 * (q - 2),
        "D+": (q - 1) ** 2, "D-": (q - 1) ** 2, "E+": (q - 1) ** 2, "E-": (q - 1) ** 2,
    }


# -- GL2 conjugacy classes ----------------------------------------------------

@dataclass(frozen=True, order=True)
class ConjClass:
    """GL2 conjugacy class: kind in 'abcd' plus normalised parameters.

    a: (x,) central; b: (x,) scalar times unipotent; c: (x, y) with x < y the
    two eigenvalues; d: (xi,) an eigenvalue in GF(q^2) \\ GF(q), the smaller
    code of the Frobenius pair.
    """

    kind: str
    params: tuple

    def __str__(self):
        return f"{self.kind}{self.params}"


def conj_type_of(g, field: GF) -> ConjClass:
    F = field
    a, b, c, d = g
    tr = F.add(a, d)
    det = F.sub(F.mul(a, d), F.mul(b, c))
    roots = [x for x in F.elements() if F.add(F.sub(F.mul(x, x), F.mul(tr, x)), det) == 0]
    if len(roots) == 2:
        return ConjClass("c", tuple(sorted(roots)))
    if len(roots) == 1:
        x = roots[0]
        if b == 0 and c == 0 and a == d:
            return ConjClass("a", (x,))
        return ConjClass("b", (x,))
    E = F.extension
    xi, xi_q = E.roots_of(tr, det)
    return ConjClass("d", (min(xi, xi_q),))


def refined_type(cls: ConjClass, field: GF) -> str:
    """Column label of the class-profile tables.

    Odd q separates c_{x,-x} from the other split classes and d_xi with
    trace 0 from the rest; even q keeps the four plain types.
    """
    F = field
    if cls.kind == "a":
        return "a_x"
    if cls.kind == "b":
        return "b_x"
    if F.p == 2:
        return "c_x,y" if cls.kind == "c" else "d_xi"
    if cls.kind == "c":
        x, y = cls.params
        return "c_x,-x" if F.add(x, y) == 0 else "c_x,y"
    E = F.extension
    return "d_tr=0" if E.trace(cls.params[0]) == 0 else "d_tr!=0"


def refined_types(q: int) -> tuple[str, ...]:
    if q % 2 == 0:
        return ("a_x", "b_x", "c_x,y", "d_xi")
    return ("a_x", "b_x", "c_x,-x", "c_x,y", "d_tr=0", "d_tr!=0")


@functools.lru_cache(maxsize=None)
def gl2_classes(q: int) -> dict[ConjClass, list[int]]:
    """Conjugacy classes of GL2(F_q) as lists of element indices, sorted by class."""
    G = matrix_group(q, "GL2")
    classes = defaultdict(list)
    for i, g in enumerate(G.elements):
        classes[conj_type_of(g, G.field)].append(i)
    return dict(sorted(classes.items()))


def class_counts_by_type(q: int, refined: bool = False) -> dict[str, tuple[int, int]]:
    """Map type -> (number of classes, class size), read off the enumeration."""
    F = field_new(q)
    by_type = defaultdict(list)
    for cls, members in gl2_classes(q).items():
        key = refined_type(cls, F) if refined else cls.kind
        by_type[key].append(len(members))
    out = {}
    for key, sizes in by_type.items():
        if len(set(sizes)) != 1:
            raise AssertionError(f"classes of type {key} have sizes {sorted(set(sizes))}")
        out[key] = (len(sizes), sizes[0])
    return out


def expected_class_counts(q: int, refined: bool = False) -> dict[str, tuple[int, int]]:
    sizes = {"a": 1, "b": q * q - 1, "c": q * q + q, "d": q * q - q}
    if not refined:
        return {
            "a": (q - 1, 1), "b": (q - 1, sizes["b"]),
            "c": ((q - 1) * (q - 2) // 2, sizes["c"]), "d": (q * (q - 1) // 2, sizes["d"]),
        }
    if q % 2 == 0:
        return {
            "a_x": (q - 1, 1), "b_x": (q - 1, sizes["b"]),
            "c_x,y": ((q - 1) * (q - 2) // 2, sizes["c"]), "d_xi": (q * (q - 1) // 2, sizes["d"]),
        }
    return {
        "a_x": (q - 1, 1),
        "b_x": (q - 1, sizes["b"]),
        "c_x,-x": ((q - 1) // 2, sizes["c"]),
        "c_x,y": ((q - 1) * (q - 3) // 2, sizes["c"]),
        "d_tr=0": ((q - 1) // 2, sizes["d"]),
        "d_tr!=0": ((q - 1) ** 2 // 2, sizes["d"]),
    }
