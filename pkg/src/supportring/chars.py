"""Characters of GL2(F_q) and the decomposition of the support-class idempotents.

Characters are parameterised by integer exponents against the canonical
generators of F_q^* and F_{q^2}^* from :mod:`supportring.gf`.  Character
values are complex floats; class sums of group-ring elements are exact.
"""

from __future__ import annotations

import cmath
import functools
from dataclasses import dataclass
from fractions import Fraction as Fr

import numpy as np

from .gf import field_new
from .groupring import GroupAlgebraElement, class_sum, convolve, diagonal_f, transport
from .idempotents import expected_traces, pi
from .report import Report
from .sl2 import LABELS, ConjClass, gl2_classes, matrix_group, refined_type, refined_types

TOL = 1e-9
SNAP = 1e-6
FAMILIES = ("U", "V", "W", "X")
DIMS = {"U": lambda q: 1, "V": lambda q: q, "W": lambda q: q + 1, "X": lambda q: q - 1}


class InvalidSpec(ValueError):
    pass


class NotTypeConstant(ValueError):
    def __init__(self, kind, witness):
        self.kind = kind
        self.witness = witness
        super().__init__(f"class sums differ inside type {kind}: {witness}")


class NotPointwiseConstant(ValueError):
    def __init__(self, kind, witness):
        self.kind = kind
        self.witness = witness
        super().__init__(f"coefficients differ inside type {kind}: {witness}")


class NotNearInteger(ValueError):
    pass


@dataclass(frozen=True)
class MultiplicativeCharacter:
    """chi(g^k) = exp(2 pi i e k / n) for the fixed generator g of a cyclic group of order n."""

    n: int
    e: int

    def __call__(self, k: int) -> complex:
        return cmath.exp(2j * cmath.pi * ((self.e * k) % self.n) / self.n)


@dataclass(frozen=True, order=True)
class IrrepSpec:
    family: str
    q: int
    params: tuple

    def __post_init__(self):
        q = self.q
        if self.family in ("U", "V"):
            (a,) = self.params
            ok = 0 <= a < q - 1
        elif self.family == "W":
            a, b = self.params
            ok = 0 <= a < q - 1 and 0 <= b < q - 1 and a != b
        elif self.family == "X":
            (e,) = self.params
            ok = 0 <= e < q * q - 1 and e % (q + 1) != 0
        else:
            ok = False
        if not ok:
            raise InvalidSpec(f"{self.family}{self.params} is not a valid irreducible for q={q}")

    @property
    def dim(self) -> int:
        return DIMS[self.family](self.q)

    def canonical(self) -> "IrrepSpec":
        """Representative of the isomorphism class (W symmetric, X up to Frobenius)."""
        if self.family == "W":
            return IrrepSpec("W", self.q, tuple(sorted(self.params)))
        if self.family == "X":
            n = self.q * self.q - 1
            e = self.params[0]
            return IrrepSpec("X", self.q, (min(e, (e * self.q) % n),))
        return self

    def __str__(self):
        return f"{self.family}{self.params}"


def enumerate_irreps(q: int) -> list[IrrepSpec]:
    """One spec per isomorphism class of irreducible GL2(F_q)-representations."""
    out = [IrrepSpec("U", q, (a,)) for a in range(q - 1)]
    out += [IrrepSpec("V", q, (a,)) for a in range(q - 1)]
    out += [IrrepSpec("W", q, (a, b)) for a in range(q - 1) for b in range(a + 1, q - 1)]
    n = q * q - 1
    out += [IrrepSpec("X", q, (e,)) for e in range(n) if e % (q + 1) and e <= (e * q) % n]
    return out


# -- class data ----------------------------------------------------------------

@dataclass(frozen=True)
class ClassInfo:
    cls: ConjClass
    kind: str       # refined type
    size: int
    members: tuple


@functools.lru_cache(maxsize=None)
def class_infos(q: int) -> tuple[ClassInfo, ...]:
    F = field_new(q)
    return tuple(ClassInfo(c, refined_type(c, F), len(m), tuple(m)) for c, m in gl2_classes(q).items())


def char_value(spec: IrrepSpec, cls: ConjClass) -> complex:
    q = spec.q
    F = field_new(q)
    E = F.extension
    alpha = lambda e, x: MultiplicativeCharacter(q - 1, e)(F.log(x))  # noqa: E731
    phi = lambda e, z: MultiplicativeCharacter(q * q - 1, e)(E.log(z))  # noqa: E731
    fam, k = spec.family, cls.kind
    if k in "ab":
        x = cls.params[0]
        xx = F.mul(x, x)
        if fam == "U":
            return alpha(spec.params[0], xx)
        if fam == "V":
            return q * alpha(spec.params[0], xx) if k == "a" else 0j
        if fam == "W":
            a, b = spec.params
            v = alpha(a, x) * alpha(b, x)
            return (q + 1) * v if k == "a" else v
        v = phi(spec.params[0], E.embed(x))
        return (q - 1) * v if k == "a" else -v
    if k == "c":
        x, y = cls.params
        if fam in "UV":
            return alpha(spec.params[0], F.mul(x, y))
        if fam == "W":
            a, b = spec.params
            return alpha(a, x) * alpha(b, y) + alpha(a, y) * alpha(b, x)
        return 0j
    xi = cls.params[0]
    if fam == "U":
        return alpha(spec.params[0], E.norm(xi))
    if fam == "V":
        return -alpha(spec.params[0], E.norm(xi))
    if fam == "W":
        return 0j
    e = spec.params[0]
    return -(phi(e, xi) + phi(e, E.frobenius(xi)))


@functools.lru_cache(maxsize=None)
def character_matrix(q: int) -> tuple[list[IrrepSpec], np.ndarray]:
    specs = enumerate_irreps(q)
    infos = class_infos(q)
    mat = np.array([[char_value(s, c.cls) for c in infos] for s in specs], dtype=complex)
    return specs, mat


def character_orthogonality(q: int) -> Report:
    rep = Report("character orthogonality", q)
    specs, mat = character_matrix(q)
    sizes = np.array([c.size for c in class_infos(q)], dtype=float)
    order = int(sizes.sum())
    gram = (mat * sizes) @ mat.conj().T / order
    err = np.abs(gram - np.eye(len(specs)))
    i, j = np.unravel_index(np.argmax(err), err.shape)
    rep.check("first orthogonality relation", err.max() < TOL,
              {"pair": [str(specs[i]), str(specs[j])], "value": complex(gram[i, j])})
    dims = [s.dim for s in specs]
    rep.check("number of irreducibles equals number of classes", len(specs) == len(sizes))
    rep.check("sum of squared dimensions is |GL2|", sum(d * d for d in dims) == order,
              {"sum": sum(d * d for d in dims), "order": order})
    for s, row in zip(specs, mat):
        if abs(row[0] - s.dim) > TOL:   # class 0 is a_1, the identity
            rep.check(f"{s} degree", False, {"value": complex(row[0])})
    # swapped parameters give the same character
    idx = {s: n for n, s in enumerate(specs)}
    for s in specs:
        if s.family == "W":
            a, b = s.params
            swapped = np.array([char_value(IrrepSpec("W", q, (b, a)), c.cls) for c in class_infos(q)])
            if np.abs(swapped - mat[idx[s]]).max() > TOL:
                rep.check(f"{s} symmetric in its parameters", False)
    rep.results["irreducibles"] = len(specs)
    rep.results["sum_dim_squared"] = sum(d * d for d in dims)
    return rep


# -- class profiles ------------------------------------------------------------

def class_sums_by_class(e, q: int) -> dict:
    """Sum of the coefficients of ``e`` over each conjugacy class.

    ``e`` is a GroupAlgebraElement over GL2 or a mapping index -> rational.
    """
    coeffs = e.coeffs if isinstance(e, GroupAlgebraElement) else e
    return {c.cls: sum((coeffs.get(i, 0) for i in c.members), Fr(0)) for c in class_infos(q)}


def _profile_from_classes(per_class: dict, q: int) -> dict:
    out, first = {}, {}
    for c in class_infos(q):
        v = per_class[c.cls]
        if c.kind not in out:
            out[c.kind], first[c.kind] = v, c.cls
        elif out[c.kind] != v:
            raise NotTypeConstant(c.kind, {str(first[c.kind]): out[c.kind], str(c.cls): v})
    return {k: out[k] for k in present_types(q)}


def present_types(q: int) -> tuple[str, ...]:
    """Refined types with at least one class (c_{x,y != +-x} is empty at q = 3)."""
    kinds = {c.kind for c in class_infos(q)}
    return tuple(k for k in refined_types(q) if k in kinds)


def class_profile_sum(e, q: int) -> dict:
    """Refined type -> coefficient sum over one conjugacy class of that type."""
    prof = _profile_from_classes(class_sums_by_class(e, q), q)
    return {k: int(v) if v.denominator == 1 else v for k, v in prof.items()}


def class_profile_pointwise(e, q: int) -> dict:
    """Refined type -> the common coefficient of every element of that type."""
    coeffs = e.coeffs if isinstance(e, GroupAlgebraElement) else e
    G = matrix_group(q, "GL2")
    out, first = {}, {}
    for c in class_infos(q):
        for i in c.members:
            v = Fr(coeffs.get(i, 0))
            if c.kind not in out:
                out[c.kind], first[c.kind] = v, i
            elif out[c.kind] != v:
                raise NotPointwiseConstant(
                    c.kind, {"elements": [G.elements[first[c.kind]], G.elements[i]],
                             "coefficients": [out[c.kind], v]})
    return {k: out[k] for k in present_types(q)}


@functools.lru_cache(maxsize=None)
def fx_elements(q: int) -> dict[str, GroupAlgebraElement]:
    """F X in Z[GL2(F_q)] for each support class X."""
    G = matrix_group(q, "GL2")
    f = diagonal_f(q)
    return {x: convolve(f, transport(class_sum(q, x), G)) for x in LABELS}


def displayed_fx_table(q: int) -> dict:
    """Printed class-profile rows of F X, keyed by support label then refined type."""
    s = q - 1
    if q % 2 == 0:
        cols = refined_types(q)
        rows = {
            "A": (1, 0, 2, 0),
            "B": (0, s, 0, 0),
            "C": (0, s * (q - 2), s * (q - 4), s * (q - 2)),
            "D": (0, s, 2 * s, 0),
            "E": (0, 0, s, s),
        }
    else:
        cols = refined_types(q)
        rows = {
            "A": (1, 0, 2, 2, 0, 0),
            "B": (0, 0, s, 0, s, 0),
            "C": (0, s * (q - 3), s * (q - 3), s * (q - 4), s * s, s * (q - 2)),
            "D": (0, s, 2 * s, 2 * s, 0, 0),
            "E": (0, s, 0, s, 0, s),
        }
    keep = present_types(q)
    return {x: {k: v for k, v in zip(cols, rows[x[0]]) if k in keep} for x in LABELS}


def displayed_class_sizes(q: int) -> dict:
    """Footer row: the size of a conjugacy class of each refined type."""
    sizes = {"a": 1, "b": q * q - 1, "c": q * q + q, "d": q * q - q}
    return {k: sizes[k[0]] for k in present_types(q)}


def pi_tilde_profile(i: int, q: int) -> dict:
    """Class sums of (1/(q-1)) pi_i F, by refined type, as exact rationals."""
    coeffs = pi(i, q)
    fx = {x: class_sums_by_class(e, q) for x, e in fx_elements(q).items()}
    per_class = {c.cls: sum((coeffs[k] * fx[x][c.cls] for k, x in enumerate(LABELS)), Fr(0)) / (q - 1)
                 for c in class_infos(q)}
    return _profile_from_classes(per_class, q)


def pi_tilde_element(i: int, q: int) -> dict:
    """(1/(q-1)) pi_i F as a sparse map GL2 index -> rational."""
    coeffs = pi(i, q)
    out = {}
    for k, x in enumerate(LABELS):
        for g, v in fx_elements(q)[x].coeffs.items():
            out[g] = out.get(g, Fr(0)) + coeffs[k] * v / (q - 1)
    return {g: v for g, v in out.items() if v}


def displayed_pi_tilde_table(q: int) -> dict:
    """Printed class-sum coefficients of the four projectors (odd q)."""
    s = q - 1
    rows = {
        1: (Fr(1, s * s * q * (q + 1)), Fr(1, q * s), Fr(1, s * s), Fr(1, s * s), Fr(1, q * q - 1), Fr(1, q * q - 1)),
        2: (Fr(q - 2, 2 * q * s * s), Fr(-1, q * s), Fr(q - 3, 2 * s * s), Fr(-1, s * s), Fr(1, 2 * s), Fr(0)),
        3: (Fr(1, 2 * (q * q - 1)), Fr(0), Fr(-1, 2 * s), Fr(0), Fr(-1, 2 * (q + 1)), Fr(1, q * q - 1)),
        4: (Fr(2, s * s * (q + 1)), Fr(0), Fr(2, s * s), Fr(2, s * s), Fr(-2, q * q - 1), Fr(-2, q * q - 1)),
    }
    keep = present_types(q)
    return {i: {k: v for k, v in zip(refined_types(q), r) if k in keep} for i, r in rows.items()}


def profile_report(q: int) -> Report:
    rep = Report("class profiles", q)
    table = displayed_fx_table(q)
    profiles = {}
    for x, e in fx_elements(q).items():
        try:
            prof = class_profile_sum(e, q)
        except NotTypeConstant as err:
            rep.check(f"F{x} constant on refined types", False, err.witness)
            continue
        profiles[x] = prof
        rep.check(f"F{x} profile", prof == table[x], {"got": prof, "want": table[x]})
    rep.results["fx"] = profiles
    if len(profiles) == len(LABELS):
        # footer: A + B + C + D+ + D- + E+ + E- covers every element once per F factor
        cover = {k: sum(profiles[x][k] for x in LABELS) for k in present_types(q)}
        want = displayed_class_sizes(q)
        rep.check("column sums give class sizes", cover == want, {"got": cover, "want": want})
    tildes = {}
    for i in range(1, 5):
        try:
            tildes[i] = pi_tilde_profile(i, q)
        except NotTypeConstant as err:
            rep.check(f"pi~{i} constant on refined types", False, err.witness)
    rep.results["pi_tilde"] = tildes
    if q % 2 and len(tildes) == 4:
        want = displayed_pi_tilde_table(q)
        for i in range(1, 5):
            rep.check(f"pi~{i} class-sum row", tildes[i] == want[i], {"got": tildes[i], "want": want[i]})
    return rep


# -- ranks ---------------------------------------------------------------------

def snap(value: complex, what: str = "") -> int:
    n = round(value.real)
    if abs(value - n) > SNAP or n < 0:
        raise NotNearInteger(f"{what} {value} is not within {SNAP} of a nonnegative integer")
    return int(n)


def rank_in_irrep(e, spec: IrrepSpec) -> int:
    """sum_g e(g) chi(g): the rank of an idempotent acting on the irreducible."""
    q = spec.q
    per_class = class_sums_by_class(e, q)
    total = sum(float(per_class[c.cls]) * char_value(spec, c.cls) for c in class_infos(q))
    return snap(complex(total), f"trace of e on {spec}")


def _ranks_from_classes(per_class: dict, q: int) -> dict:
    specs, mat = character_matrix(q)
    vec = np.array([float(per_class[c.cls]) for c in class_infos(q)])
    vals = mat @ vec
    return {s: snap(v, f"trace on {s}") for s, v in zip(specs, vals)}


def rank_table(q: int) -> dict:
    """Ranks of pi~1..pi~4 and of pi = FA/(q-1)^2 in every irreducible."""
    coeffs = {i: pi(i, q) for i in range(1, 5)}
    fx = {x: class_sums_by_class(e, q) for x, e in fx_elements(q).items()}
    out = {}
    for i in range(1, 5):
        per_class = {c.cls: sum((coeffs[i][k] * fx[x][c.cls] for k, x in enumerate(LABELS)), Fr(0)) / (q - 1)
                     for c in class_infos(q)}
        out[i] = _ranks_from_classes(per_class, q)
    out["pi"] = _ranks_from_classes({c: v / (q - 1) ** 2 for c, v in fx["A"].items()}, q)
    return out


def alpha_at_minus_one(e: int, q: int) -> int:
    return 1 if q % 2 == 0 else (-1) ** e


def sigma(spec: IrrepSpec) -> int:
    """phi(xi) for a trace-zero xi; +-1 when phi is trivial on F_q^*."""
    q = spec.q
    E = field_new(q).extension
    xi = next(z for z in E.units() if not E.in_base(z) and E.trace(z) == 0)
    v = MultiplicativeCharacter(q * q - 1, spec.params[0])(E.log(xi))
    return snap(complex(v.real + 1, v.imag), "sigma+1") - 1


def relevant_irreps(q: int) -> dict:
    """The irreducibles that can meet pi = FA/(q-1)^2, grouped by role."""
    out = {"U": [IrrepSpec("U", q, (0,))], "V": [IrrepSpec("V", q, (0,))]}
    if q % 2:
        out["V_L"] = [IrrepSpec("V", q, ((q - 1) // 2,))]
    out["W"] = [IrrepSpec("W", q, (a, q - 1 - a)) for a in range(1, q - 1) if 2 * a < q - 1]
    ks = [k for k in range(1, q + 1) if 2 * k != q + 1 and k <= q + 1 - k]
    out["X"] = [IrrepSpec("X", q, ((q - 1) * k,)).canonical() for k in ks]
    return out


def decomposition_report(q: int) -> Report:
    rep = Report("decomposition", q)
    ranks = rank_table(q)
    specs, _ = character_matrix(q)
    traces = expected_traces(q)
    rel = relevant_irreps(q)
    s = q - 1

    for i in range(1, 5):
        tr = sum(sp.dim * r for sp, r in ranks[i].items())
        rep.check(f"pi~{i} regular trace", tr == traces[i - 1], {"got": tr, "want": traces[i - 1]})
    mismatch = [str(sp) for sp in specs if ranks["pi"][sp] != sum(ranks[i][sp] for i in range(1, 5))]
    rep.check("pi~1+..+pi~4 = FA/(q-1)^2 in every irreducible", not mismatch, mismatch[:3])

    fam_tot = {f: sum(sp.dim * r for sp, r in ranks["pi"].items() if sp.family == f) for f in FAMILIES}
    if q % 2:
        want = {"U": 1, "V": 3 * q, "W": (q + 1) * (q - 3) // 2, "X": s * s // 2}
    else:
        want = {"U": 1, "V": 2 * q, "W": (q + 1) * (q - 2) // 2, "X": s * q // 2}
    rep.results["family_totals"] = fam_tot
    rep.check("family contributions", fam_tot == want, {"got": fam_tot, "want": want})
    rep.check("total trace q(q+1)", sum(fam_tot.values()) == q * (q + 1), sum(fam_tot.values()))

    def support(i):
        return {sp: r for sp, r in ranks[i].items() if r}

    u0, v0 = rel["U"][0], rel["V"][0]
    rep.check("pi~1 only in the trivial U, rank 1", support(1) == {u0: 1}, {str(k): v for k, v in support(1).items()})
    rep.check("pi~4 only in V, rank 2 (multiplicity q)", support(4) == {v0: 2},
              {str(k): v for k, v in support(4).items()})

    expected = {2: {}, 3: {}}
    summary = {}
    if q % 2:
        vl = rel["V_L"][0]
        expected[2 if q % 4 == 1 else 3][vl] = 1
        wsign = {1: 0, -1: 0}
        for sp in rel["W"]:
            sgn = alpha_at_minus_one(sp.params[0], q)
            wsign[sgn] += 1
            expected[2 if sgn == 1 else 3][sp] = 1
        xsign = {1: 0, -1: 0}
        for sp in rel["X"]:
            sg = sigma(sp)
            xsign[sg] += 1
            expected[3 if sg == 1 else 2][sp] = 1
        if q % 4 == 1:
            ww = {1: (q - 5) // 4, -1: (q - 1) // 4}
            xw = {1: (q - 1) // 4, -1: (q - 1) // 4}
        else:
            ww = {1: (q - 3) // 4, -1: (q - 3) // 4}
            xw = {1: (q - 3) // 4, -1: (q + 1) // 4}
        rep.check("W counts by alpha(-1)", wsign == ww, {"got": wsign, "want": ww})
        rep.check("X counts by sigma", xsign == xw, {"got": xsign, "want": xw})
        summary.update(W_by_alpha_minus_one=wsign, X_by_sigma=xsign,
                       V_L="pi~2" if q % 4 == 1 else "pi~3")
    else:
        for sp in rel["W"]:
            expected[2][sp] = 1
        for sp in rel["X"]:
            expected[3][sp] = 1
        rep.check("(q-2)/2 relevant W", len(rel["W"]) == (q - 2) // 2, len(rel["W"]))
        rep.check("q/2 relevant X (the family read as X)", len(rel["X"]) == q // 2, len(rel["X"]))
    for i in (2, 3):
        got = support(i)
        rep.check(f"pi~{i} involvement", got == expected[i],
                  {"got": {str(k): v for k, v in got.items()},
                   "want": {str(k): v for k, v in expected[i].items()}})
    rep.results["multiplicities"] = {
        f"pi~{i}": {str(sp): sp.dim * r for sp, r in support(i).items()} for i in range(1, 5)}
    rep.results.update(summary)
    return rep


# -- mean values (odd q >= 5) ---------------------------------------------------

def displayed_mean_values(q: int, family: str, sign: int = 1) -> dict:
    """Printed mean values; ``sign`` is alpha(-1) for W and sigma for X."""
    leg = 1 if q % 4 == 1 else -1
    if family == "V_L":
        row = (Fr(q), Fr(0), Fr(leg), -Fr(1 + leg, q - 3), Fr(leg), Fr(1 - leg, q - 1))
    elif family == "W":
        row = (Fr(q + 1), Fr(1), Fr(2 * sign), Fr(-2 * (1 + sign), q - 3), Fr(0), Fr(0))
    else:
        row = (Fr(q - 1), Fr(-1), Fr(0), Fr(0), Fr(-2 * sign), Fr(2 * (1 + sign), q - 1))
    return dict(zip(refined_types(q), row))


def mean_values(spec: IrrepSpec) -> dict:
    acc, cnt = {}, {}
    for c in class_infos(spec.q):
        acc[c.kind] = acc.get(c.kind, 0) + char_value(spec, c.cls)
        cnt[c.kind] = cnt.get(c.kind, 0) + 1
    return {k: acc[k] / cnt[k] for k in refined_types(spec.q)}


def mean_values_check(q: int) -> Report:
    if q % 2 == 0 or q < 5:
        raise ValueError(f"mean-value tables need odd q >= 5, got q={q}")
    rep = Report("mean values", q)
    rel = relevant_irreps(q)
    cases = [("V_L", sp, 1) for sp in rel["V_L"]]
    cases += [("W", sp, alpha_at_minus_one(sp.params[0], q)) for sp in rel["W"]]
    cases += [("X", sp, sigma(sp)) for sp in rel["X"]]
    for fam, sp, sg in cases:
        got = mean_values(sp)
        want = displayed_mean_values(q, fam, sg)
        bad = {k: [got[k], want[k]] for k in got if abs(got[k] - float(want[k])) > TOL}
        rep.check(f"{sp} mean values", not bad, bad)
    return rep
