"""Idempotents and matrix units of the rational support-class algebra.

Everything here is exact over Q except :func:`fusion_constants`, which also
reports floating-point values; its exact content is carried by N^2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction as Fr

from .gf import factor_prime_power
from .report import Report
from .scring import (
    LABELS,
    as_vector,
    basis_vector,
    identity,
    sc_mul,
    vadd,
    vscale,
    vsub,
)
from .sl2 import require_sc_field

ZERO = (0,) * 7


def _v(**kw) -> tuple:
    """Vector from keyword coefficients; Dp/Dm/Ep/Em stand for D+/D-/E+/E-."""
    names = {"A": 0, "B": 1, "C": 2, "Dp": 3, "Dm": 4, "Ep": 5, "Em": 6}
    out = [Fr(0)] * 7
    for k, c in kw.items():
        out[names[k]] = Fr(c)
    return tuple(out)


def pi(i: int, q: int) -> tuple:
    """The central idempotents pi_1..pi_4."""
    require_sc_field(q)
    if i == 1:
        c = Fr(1, q**3 - q)
        return _v(A=c, B=c, C=c, Dp=c, Dm=c, Ep=c, Em=c)
    if i == 2:
        ab = Fr(q - 2, 2 * (q * q - q))
        c = Fr(1, q * (q - 1) ** 2)
        de = -Fr(q - 2, 2 * q * (q - 1) ** 2)
        return _v(A=ab, B=ab, C=c, Dp=de, Dm=de, Ep=de, Em=de)
    if i == 3:
        a = Fr(1, 2 * (q + 1))
        d = Fr(1, 2 * (q * q - 1))
        return _v(A=a, B=-a, Dp=-d, Dm=-d, Ep=d, Em=d)
    if i == 4:
        s = Fr(1, (q + 1) * (q - 1) ** 2)
        return _v(A=s * 2 * (q - 1), C=-2 * s, Dp=s * (q - 2), Dm=s * (q - 2), Ep=-s, Em=-s)
    raise ValueError(f"pi index must be 1..4, got {i}")


def matrix_unit(i: int, j: int, q: int) -> tuple:
    """M_{i,j}, transcribed as printed (including the unequal denominators of M_12, M_21)."""
    require_sc_field(q)
    if (i, j) == (1, 1):
        a, d = Fr(1, q * q - 1), Fr(1, 2 * (q * q - 1))
        return _v(A=a, B=-a, Dp=d, Dm=d, Ep=-d, Em=-d)
    if (i, j) == (2, 2):
        a = Fr(1, q * q - 1)
        c = -Fr(2, (q + 1) * (q - 1) ** 2)
        d = Fr(q - 3, 2 * (q + 1) * (q - 1) ** 2)
        return _v(A=a, B=a, C=c, Dp=d, Dm=d, Ep=d, Em=d)
    if (i, j) == (1, 2):
        d = Fr(1, 2 * (q - 1) ** 2)
        return _v(Dp=d, Dm=-d, Ep=d, Em=-d)
    if (i, j) == (2, 1):
        d = Fr(1, 2 * (q * q - 1))
        return _v(Dp=d, Dm=-d, Ep=-d, Em=d)
    raise ValueError(f"matrix unit index must be in 1..2, got {(i, j)}")


class NotRankOne(ValueError):
    pass


def character_value(idem, x, q: int, table=None) -> Fr:
    """The scalar lambda with x * idem = lambda * idem."""
    idem = as_vector(idem)
    y = sc_mul(x, idem, q, table)
    k = next(k for k, c in enumerate(idem) if c)
    lam = Fr(y[k]) / idem[k]
    if any(Fr(a) != lam * b for a, b in zip(y, idem)):
        raise NotRankOne(f"{x} * idempotent is not a multiple of it")
    return lam


def projector_trace(i: int, q: int) -> Fr:
    """Trace of left multiplication by pi_i on Q[SL2(F_q)]: (q^3-q) * coeff_A."""
    return (q**3 - q) * pi(i, q)[0]


def expected_traces(q: int) -> tuple:
    return (Fr(1), Fr((q + 1) * (q - 2), 2), Fr(q * (q - 1), 2), Fr(2 * q))


# -- exact rank over Q --------------------------------------------------------

def rank(rows) -> int:
    rows = [[Fr(x) for x in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# -- Theorem-level structure ---------------------------------------------------

def structure_report(q: int) -> Report:
    """Idempotent, central, orthogonal, complete; matrix units; block dimensions."""
    rep = Report("idempotents", q)
    pis = [pi(i, q) for i in range(1, 5)]
    basis = [basis_vector(x) for x in LABELS]
    for i, p in enumerate(pis, 1):
        rep.check(f"pi{i} idempotent", sc_mul(p, p, q) == p, sc_mul(p, p, q))
        for x, e in zip(LABELS, basis):
            left, right = sc_mul(e, p, q), sc_mul(p, e, q)
            rep.check(f"pi{i} commutes with {x}", left == right, {"X*pi": left, "pi*X": right})
        for j, p2 in enumerate(pis, 1):
            if j != i:
                prod = sc_mul(p, p2, q)
                rep.check(f"pi{i}*pi{j} = 0", prod == ZERO, prod)
    total = vadd(*pis)
    rep.check("sum of pi_i is A/(q-1)", total == identity(q), total)
    one = identity(q)
    rep.check("A/(q-1) is a two-sided identity",
              all(sc_mul(one, e, q) == e == sc_mul(e, one, q) for e in basis))

    units = {(i, j): matrix_unit(i, j, q) for i in (1, 2) for j in (1, 2)}
    for (i, j), m in units.items():
        for (k, l), n in units.items():
            want = units[(i, l)] if j == k else ZERO
            got = sc_mul(m, n, q)
            rep.check(f"M{i}{j}*M{k}{l}", got == want, {"got": got, "want": want})
    rep.check("pi4 = M11 + M22", vadd(units[(1, 1)], units[(2, 2)]) == pis[3])

    dims = []
    for p in pis:
        block = [sc_mul(sc_mul(p, e, q), p, q) for e in basis]
        dims.append(rank(block))
    rep.results["block_dimensions"] = dims
    rep.check("blocks realise Q+Q+Q+M2(Q)", dims == [1, 1, 1, 4], dims)
    span4 = rank([units[k] for k in sorted(units)])
    rep.check("matrix units are linearly independent", span4 == 4, span4)
    rep.check("total dimension 7", sum(dims) == 7 and rank(basis) == 7)

    b = basis_vector("B")
    minus = vscale(Fr(1, 2 * (q - 1)), vsub(basis_vector("A"), b))
    plus = vscale(Fr(1, 2 * (q - 1)), vadd(basis_vector("A"), b))
    rep.check("(A-B)/(2(q-1)) = pi3 + M11", minus == vadd(pis[2], units[(1, 1)]))
    rep.check("(A+B)/(2(q-1)) = pi1 + pi2 + M22", plus == vadd(pis[0], pis[1], units[(2, 2)]))
    for name, proj, lam in (("1-q", minus, 1 - q), ("q-1", plus, q - 1)):
        ok = all(
            sc_mul(b, sc_mul(proj, e, q), q) == vscale(lam, sc_mul(proj, e, q)) for e in basis
        )
        rep.check(f"projection onto B-eigenspace {name}", ok and sc_mul(proj, proj, q) == proj)

    table = {}
    for i in (1, 2, 3):
        table[f"pi{i}"] = {x: character_value(pis[i - 1], x, q) for x in LABELS}
    rep.results["characters"] = table
    want = central_character_table(q)
    for row, vals in want.items():
        for x, v in vals.items():
            rep.check(f"character {row}({x})", table[row][x] == v, {"got": table[row][x], "want": v})
    traces = [projector_trace(i, q) for i in range(1, 5)]
    rep.results["traces"] = traces
    rep.check("trace table", tuple(traces) == expected_traces(q), traces)
    rep.check("traces sum to q(q+1)", sum(traces) == q * (q + 1), sum(traces))
    return rep


def central_character_table(q: int) -> dict:
    s = q - 1
    row = lambda a, b, c, d, e: dict(zip(LABELS, (a, b, c, d, d, e, e)))  # noqa: E731
    return {
        "pi1": row(s, s, s * s * (q - 2), s * s, s * s),
        "pi2": row(s, s, 2 * s, -s, -s),
        "pi3": row(s, -s, 0, -s, s),
    }


# -- commutative subalgebras ----------------------------------------------------

def reduced_basis(q: int | None = None) -> dict:
    """D = D+ + D-, E = E+ + E-, F = D + E, I = A + B in full coordinates."""
    e = {x: basis_vector(x) for x in LABELS}
    d = vadd(e["D+"], e["D-"])
    ee = vadd(e["E+"], e["E-"])
    return {"A": e["A"], "B": e["B"], "C": e["C"], "D": d, "E": ee, "F": vadd(d, ee),
            "I": vadd(e["A"], e["B"])}


@dataclass
class IdempotentSystem:
    """Idempotents written in a reduced basis, with their displayed character table."""

    kind: str
    basis: tuple
    members: dict                      # name -> reduced coordinates
    displayed: dict = field(default_factory=dict)  # name -> {basis name: value}

    def full(self, name: str) -> tuple:
        rb = reduced_basis()
        return vadd(*(vscale(c, rb[b]) for b, c in zip(self.basis, self.members[name])))

    def identity(self) -> tuple:
        return vadd(*(self.full(n) for n in self.members))


def subalgebra_system(kind: str, q: int) -> IdempotentSystem:
    """The rank 5, 4 and 3 commutative subalgebras with their idempotents."""
    require_sc_field(q)
    s = q - 1
    p1 = Fr(1, q**3 - q)
    p2ab, p2c, p2de = Fr(q - 2, 2 * (q * q - q)), Fr(1, q * s * s), -Fr(q - 2, 2 * q * s * s)
    m22ab, m22c, m22de = Fr(1, q * q - 1), -Fr(2, (q + 1) * s * s), Fr(q - 3, 2 * (q + 1) * s * s)
    if kind == "rank5":
        basis = ("A", "B", "C", "D", "E")
        members = {
            "pi1": (p1, p1, p1, p1, p1),
            "pi2": (p2ab, p2ab, p2c, p2de, p2de),
            "pi3": (Fr(1, 2 * (q + 1)), -Fr(1, 2 * (q + 1)), 0, -Fr(1, 2 * (q * q - 1)), Fr(1, 2 * (q * q - 1))),
            "M11": (Fr(1, q * q - 1), -Fr(1, q * q - 1), 0, Fr(1, 2 * (q * q - 1)), -Fr(1, 2 * (q * q - 1))),
            "M22": (m22ab, m22ab, m22c, m22de, m22de),
        }
        table = {
            "pi1": (s, s, s * s * (q - 2), 2 * s * s, 2 * s * s),
            "pi2": (s, s, 2 * s, 2 * (1 - q), 2 * (1 - q)),
            "pi3": (s, 1 - q, 0, 2 * (1 - q), 2 * s),
            "M11": (s, 1 - q, 0, s * s, -s * s),
            "M22": (s, s, 2 * (1 - q) * (q - 2), s * (q - 3), s * (q - 3)),
        }
    elif kind == "rank4":
        basis = ("A", "B", "C", "F")
        members = {
            "pi1": (p1, p1, p1, p1),
            "pi2": (p2ab, p2ab, p2c, p2de),
            "pi3+M11": (Fr(1, 2 * s), -Fr(1, 2 * s), 0, 0),
            "M22": (m22ab, m22ab, m22c, m22de),
        }
        table = {
            "pi1": (s, s, s * s * (q - 2), 4 * s * s),
            "pi2": (s, s, 2 * s, 4 * (1 - q)),
            "pi3+M11": (s, 1 - q, 0, 0),
            "M22": (s, s, 2 * (1 - q) * (q - 2), 2 * s * (q - 3)),
        }
    elif kind == "rank3":
        basis = ("I", "C", "F")
        members = {
            "pi1": (p1, p1, p1),
            "pi2": (p2ab, p2c, p2de),
            "M22": (m22ab, m22c, m22de),
        }
        table = {
            "pi1": (2 * s, s * s * (q - 2), 4 * s * s),
            "pi2": (2 * s, 2 * s, 4 * (1 - q)),
            "M22": (2 * s, 2 * (1 - q) * (q - 2), 2 * s * (q - 3)),
        }
    else:
        raise ValueError(f"unknown subalgebra {kind!r}")
    displayed = {n: dict(zip(basis, vals)) for n, vals in table.items()}
    return IdempotentSystem(kind, basis, members, displayed)


def rank3_products(q: int) -> dict:
    """I*X, C^2, CF and F^2 as printed, in (I, C, F) coordinates."""
    s = q - 1
    return {
        ("I", "I"): (2 * s, 0, 0),
        ("I", "C"): (0, 2 * s, 0),
        ("I", "F"): (0, 0, 2 * s),
        ("C", "C"): (s * s * (q - 2), s * (q - 3) * (q - 4), s * (q - 2) * (q - 3)),
        ("C", "F"): (0, 4 * s * (q - 3), 2 * s * (q - 2)),
        ("F", "F"): (4 * s * s, 8 * s, 2 * s * s),
    }


def subalgebra_report(kind: str, q: int) -> Report:
    sysm = subalgebra_system(kind, q)
    rep = Report(f"subalgebra {kind}", q)
    rb = reduced_basis()
    gens = [rb[b] for b in sysm.basis]
    span_rank = rank(gens)
    for x in gens:
        for y in gens:
            xy, yx = sc_mul(x, y, q), sc_mul(y, x, q)
            if xy != yx or rank(gens + [xy]) != span_rank:
                rep.check("closed and commutative", False, {"x": x, "y": y})
                break
    else:
        rep.check("closed and commutative", True)
    full = {n: sysm.full(n) for n in sysm.members}
    for n, e in full.items():
        rep.check(f"{n} idempotent", sc_mul(e, e, q) == e)
        for m, f in full.items():
            if m != n:
                rep.check(f"{n}*{m} = 0", sc_mul(e, f, q) == ZERO)
    unit = sysm.identity()
    rep.check("idempotents sum to the unit of the subalgebra",
              all(sc_mul(unit, g, q) == g == sc_mul(g, unit, q) for g in gens))
    if kind == "rank3":
        # I, C, F do not span A/(q-1); the unit here is I/(2(q-1))
        rep.check("unit is I/(2(q-1))", unit == vscale(Fr(1, 2 * (q - 1)), rb["I"]))
    else:
        rep.check("unit is A/(q-1)", unit == identity(q))
    if kind == "rank5":
        rep.check("pi_i agree with the central idempotents",
                  all(full[f"pi{i}"] == pi(i, q) for i in (1, 2, 3)))
        rep.check("M11, M22 agree with the matrix units",
                  full["M11"] == matrix_unit(1, 1, q) and full["M22"] == matrix_unit(2, 2, q))
    computed = {}
    for n, e in full.items():
        computed[n] = {b: character_value(e, rb[b], q) for b in sysm.basis}
        for b in sysm.basis:
            want = sysm.displayed[n][b]
            rep.check(f"character {n}({b})", computed[n][b] == want,
                      {"got": computed[n][b], "want": want})
    rep.results["characters"] = computed
    if kind == "rank3":
        for (x, y), coords in rank3_products(q).items():
            want = vadd(*(vscale(c, rb[b]) for b, c in zip(("I", "C", "F"), coords)))
            got = sc_mul(rb[x], rb[y], q)
            rep.check(f"{x}{y} product", got == want, {"got": got, "want": want})
            if x != y:
                rep.check(f"{y}{x} = {x}{y}", sc_mul(rb[y], rb[x], q) == got)
    return rep


# -- fusion normalisation -----------------------------------------------------

def fusion_scales(q: int) -> dict:
    """k_X with X~ = X / sqrt(k_X)."""
    s = q - 1
    return {"I": Fr(4 * s * s), "C": Fr(2 * s**3 * (q - 2)), "F": Fr(8 * s**3)}


def fusion_constants(q: int) -> dict:
    """N_{X,Y,Z} for X, Y, Z in {I~, C~, F~}.

    Returns ``{(X, Y, Z): (N_squared, sign, N_float)}``; N^2 is an exact
    rational, the float is only a convenience.
    """
    require_sc_field(q)
    k = fusion_scales(q)
    prods = rank3_products(q)
    names = ("I", "C", "F")
    out = {}
    for x in names:
        for y in names:
            coords = prods.get((x, y)) or prods[(y, x)]
            for z, c in zip(names, coords):
                n2 = Fr(c * c) * k[z] / (k[x] * k[y])
                sign = (c > 0) - (c < 0)
                out[(x, y, z)] = (n2, sign, sign * math.sqrt(n2))
    return out


def displayed_fusion_squares(q: int) -> dict:
    """Squares of the printed N values, keyed by sorted index triple."""
    s = q - 1
    return {
        ("C", "C", "C"): Fr((q - 3) ** 2 * (q - 4) ** 2, 2 * s * (q - 2)),
        ("C", "C", "F"): Fr((q - 3) ** 2 * 2, s),
        ("C", "F", "F"): Fr(2 * (q - 2), s),
        ("F", "F", "F"): Fr(s, 2),
    }


def displayed_fusion_values(q: int) -> dict:
    s = q - 1
    return {
        ("C", "C", "C"): (q - 3) * (q - 4) / math.sqrt(2 * s * (q - 2)),
        ("C", "C", "F"): (q - 3) * math.sqrt(2 / s),
        ("C", "F", "F"): math.sqrt(2 * (q - 2) / s),
        ("F", "F", "F"): math.sqrt(s / 2),
    }


def fusion_report(q: int, rel_tol: float = 1e-12) -> Report:
    rep = Report("fusion", q)
    n = fusion_constants(q)
    names = ("I", "C", "F")
    sym = all(
        n[t][0] == n[p][0] and n[t][1] == n[p][1]
        for t in n for p in itertools.permutations(t)
    )
    rep.check("N symmetric under all permutations (exact N^2 and sign)", sym)
    fl = all(abs(n[t][2] - n[p][2]) <= rel_tol * max(1.0, abs(n[t][2]))
             for t in n for p in itertools.permutations(t))
    rep.check("N symmetric in floating point", fl)
    for x in names:
        for y in names:
            rep.check(f"N(I,{x},{y}) = delta", n[("I", x, y)][0] == (1 if x == y else 0)
                      and n[("I", x, y)][1] >= 0)
    squares = displayed_fusion_squares(q)
    values = displayed_fusion_values(q)
    for t, want in squares.items():
        rep.check(f"N{t}^2 exact", n[t][0] == want, {"got": n[t][0], "want": want})
        got = n[t][2]
        rep.check(f"N{t} float", abs(got - values[t]) <= rel_tol * max(1.0, abs(values[t])),
                  {"got": got, "want": values[t]})
    rep.results["N"] = {",".join(t): {"N^2": v[0], "sign": v[1], "approx": v[2]} for t, v in n.items()}
    if q == 3:
        rep.check("q=3: all N in {0,1}", all(v[0] in (0, 1) and v[1] >= 0 for v in n.values()))
    return rep


# -- reduction to finite fields ------------------------------------------------

class NotCoprime(ValueError):
    pass


def embedding_relations_check(q: int, r: int) -> Report:
    """Matrix-unit relations after reducing all coefficients into F_r.

    Rationals map to the prime field of F_r, so denominators must be prime
    to its characteristic p; this is the condition gcd(r, 2(q^2-1)) = 1.
    """
    require_sc_field(q)
    p, _ = factor_prime_power(r)
    if math.gcd(r, 2 * (q * q - 1)) != 1:
        raise NotCoprime(f"gcd({r}, 2(q^2-1)) = {math.gcd(r, 2 * (q * q - 1))}")
    rep = Report("embedding", q)
    rep.results["r"] = r
    rep.results["characteristic"] = p

    def red(v):
        return tuple(x.numerator * pow(x.denominator, -1, p) % p for x in map(Fr, v))

    units = {(i, j): red(matrix_unit(i, j, q)) for i in (1, 2) for j in (1, 2)}
    for (i, j), m in units.items():
        for (k, l), n in units.items():
            got = tuple(c % p for c in sc_mul(m, n, q))
            want = units[(i, l)] if j == k else (0,) * 7
            rep.check(f"M{i}{j}*M{k}{l} mod {p}", got == want, {"got": got, "want": want})
    rows = [list(units[k]) for k in sorted(units)]
    rep.check("reduced matrix units independent over F_p", _rank_mod(rows, p) == 4)
    return rep


def _rank_mod(rows, p) -> int:
    rows = [list(r) for r in rows]
    r = 0
    for col in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r
