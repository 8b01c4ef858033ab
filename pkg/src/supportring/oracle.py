"""Brute-force verification engine and the full-suite runner.

The product checks here only use group enumeration and convolution; the
closed-form table enters solely as the thing being compared against.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
from dataclasses import dataclass, field

from .gf import factor_prime_power, field_new
from .groupring import brute_force_products
from .report import Report
from .scring import QPoly, evaluate_table, interpolate_constants, scaled_variant_check, structure_table
from .sl2 import LABELS, UnsupportedField, conj_type_of, matrix_group, require_sc_field

DEFAULT_MAX_Q = 9
DEFAULT_SCHEME_MAX_Q = 7


class ConfigError(ValueError):
    pass


def max_q() -> int:
    return int(os.environ.get("SC_MAX_Q", DEFAULT_MAX_Q))


def corrupt_table(pair=("B", "B"), label: str = "A", delta: int = 1) -> dict:
    """Negative-control fixture: the closed-form table with one constant shifted."""
    table = structure_table()
    vec = list(table[pair])
    k = LABELS.index(label)
    vec[k] = vec[k] + QPoly.const(delta)
    table[pair] = tuple(vec)
    return table


def verify_theorem1(q: int, table: dict | None = None) -> Report:
    """All 49 brute-force products against the closed forms at q."""
    require_sc_field(q)
    rep = Report("theorem1", q)
    t0 = time.perf_counter()
    got = brute_force_products(q)
    rep.timings["brute_force"] = time.perf_counter() - t0
    want = evaluate_table(structure_table() if table is None else table, q)
    agree = 0
    for pair in itertools.product(LABELS, LABELS):
        ok = got[pair] == tuple(want[pair])
        agree += ok
        if not ok:
            rep.check(f"{pair[0]}*{pair[1]}", False,
                      {"pair": list(pair), "brute_force": got[pair], "closed_form": want[pair]})
    rep.check(f"{agree}/49 products agree", agree == 49)
    rep.results["agree"] = agree
    return rep


# -- rank-1 support classes ---------------------------------------------------------

def _rank1_classes(n: int, q: int) -> dict:
    """Support pattern (rows, cols) -> set of rank-1 n x n matrices over F_q."""
    F = field_new(q)
    vecs = [v for v in itertools.product(F.elements(), repeat=n) if any(v)]
    classes = {}
    for u in vecs:
        for v in vecs:
            m = tuple(tuple(F.mul(a, b) for b in v) for a in u)
            key = (tuple(bool(a) for a in u), tuple(bool(b) for b in v))
            classes.setdefault(key, set()).add(m)
    return classes


def _matprod(x, y, F):
    n = len(x)
    return tuple(
        tuple(_dot(F, (x[i][k] for k in range(n)), (y[k][j] for k in range(n))) for j in range(n))
        for i in range(n)
    )


def _dot(F, a, b):
    s = 0
    for u, v in zip(a, b):
        s = F.add(s, F.mul(u, v))
    return s


def rank1_support_ring_check(n: int, q: int) -> Report:
    """Products of rank-1 support sums are nonnegative combinations of support sums."""
    F = field_new(q)
    rep = Report("rank1 support ring", q)
    rep.results["n"] = n
    classes = _rank1_classes(n, q)
    rep.check(f"(2^n-1)^2 = {(2**n - 1) ** 2} support classes", len(classes) == (2**n - 1) ** 2, len(classes))
    owner = {m: key for key, ms in classes.items() for m in ms}
    zero = tuple((0,) * n for _ in range(n))
    bad = 0
    for kx, xs in classes.items():
        for ky, ys in classes.items():
            prod = {}
            for a in xs:
                for b in ys:
                    m = _matprod(a, b, F)
                    if m != zero:
                        prod[m] = prod.get(m, 0) + 1
            coeff = {}
            ok = True
            for m, c in prod.items():
                key = owner.get(m)
                if key is None or coeff.setdefault(key, c) != c:
                    ok = False
                    break
            ok = ok and all(len(classes[k]) * c == sum(prod[m] for m in classes[k] if m in prod)
                            for k, c in coeff.items())
            if not ok:
                bad += 1
                if bad == 1:
                    rep.check("closure", False, {"pair": [kx, ky]})
    rep.check(f"all {len(classes) ** 2} products close", bad == 0)
    return rep


def gl2_rank1_counterexample(q: int) -> Report:
    """(F* 0; F* 0)(F* F*; 0 0) is (q-1) times the sum of all full-support rank-1 matrices."""
    F = field_new(q)
    rep = Report("gl2 rank1 counterexample", q)
    units = list(F.units())
    left = [((a, 0), (c, 0)) for a in units for c in units]
    right = [((a, b), (0, 0)) for a in units for b in units]
    prod = {}
    for x in left:
        for y in right:
            m = _matprod(x, y, F)
            prod[m] = prod.get(m, 0) + 1
    rep.results["terms"] = len(prod)
    rep.results["coefficients"] = sorted(set(prod.values()))
    full = {m for m in _rank1_classes(2, q)[((True, True), (True, True))]}
    rep.check("(q-1)^3 distinct terms", len(prod) == (q - 1) ** 3, len(prod))
    rep.check("terms are exactly the full-support rank-1 matrices", set(prod) == full)
    rep.check("every coefficient is q-1", set(prod.values()) == {q - 1}, sorted(set(prod.values())))
    rep.check("augmentation (q-1)^4 on both sides", sum(prod.values()) == (q - 1) ** 4 == (q - 1) * len(full))
    singular = all(F.sub(F.mul(m[0][0], m[1][1]), F.mul(m[0][1], m[1][0])) == 0 for m in prod)
    rep.check("all terms singular, so outside the span of invertible support classes", singular)
    return rep


def conj_invariance_spot_check(q: int, seed: int = 0, samples: int = 50) -> Report:
    """Random conjugates keep their GL2 conjugacy-class label."""
    rng = random.Random(seed)
    G = matrix_group(q, "GL2")
    rep = Report("conjugation spot-check", q, seed=seed)
    bad = []
    for _ in range(samples):
        g = G.elements[rng.randrange(G.order)]
        h = rng.randrange(G.order)
        c = G.mul(G.mul(h, G.find(g)), G.inv(h))
        if conj_type_of(G.elements[c], G.field) != conj_type_of(g, G.field):
            bad.append([g, G.elements[h]])
    rep.check(f"{samples} seeded conjugations preserve the class", not bad, bad[:1])
    return rep


# -- full suite ------------------------------------------------------------------------

@dataclass
class SuiteConfig:
    qs: tuple = (3, 4, 5, 7)
    scheme_max_q: int = DEFAULT_SCHEME_MAX_Q
    variant_max_q: int = 5
    seed: int = 0
    include_rank1: bool = True
    table: dict | None = None                 # corrupted fixture for negative controls
    corrupt_scheme: bool = False
    max_q: int = field(default_factory=max_q)

    def validate(self):
        if not self.qs:
            raise ConfigError("no q values given")
        for q in self.qs:
            try:
                factor_prime_power(q)
            except ValueError as err:
                raise ConfigError(str(err)) from err
            if q <= 2:
                raise ConfigError(f"q={q}: the support-class ring needs q > 2")
            if q > self.max_q:
                raise ConfigError(f"q={q} exceeds the cap {self.max_q} (set SC_MAX_Q to raise it)")


def run_full_suite(config: SuiteConfig | None = None) -> Report:
    from . import chars, idempotents, schemes   # heavier modules, loaded on demand

    cfg = config or SuiteConfig()
    cfg.validate()
    qs = sorted(set(cfg.qs))
    rep = Report("verify", qs, seed=cfg.seed)

    def run(name, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            sub = fn(*args, **kw)
        except (UnsupportedField, ValueError) as err:
            rep.check(name, False, {"error": f"{type(err).__name__}: {err}"})
            return None
        finally:
            rep.timings[name] = time.perf_counter() - t0
        if isinstance(sub, Report):
            rep.extend(sub, f"{name}: ")
        else:
            rep.check(name, True)
        return sub

    for q in qs:
        run(f"theorem1 q={q}", verify_theorem1, q, cfg.table)
    if cfg.table is None and len([q for q in qs if q <= 5]) >= 3:
        run("interpolation from q=3,4,5", interpolate_constants, [3, 4, 5])
    for q in qs:
        run(f"idempotents q={q}", idempotents.structure_report, q)
        for kind in ("rank5", "rank4", "rank3"):
            run(f"{kind} q={q}", idempotents.subalgebra_report, kind, q)
        run(f"fusion q={q}", idempotents.fusion_report, q)
        if q <= cfg.variant_max_q:
            if q % 2:
                run(f"PSL2 q={q}", scaled_variant_check, q, "PSL2")
            run(f"GL2 q={q}", scaled_variant_check, q, "GL2")
        if 4 <= q <= cfg.scheme_max_q:
            for variant in schemes.VARIANTS:
                s = schemes.build_scheme(q, variant)
                if cfg.corrupt_scheme and variant == "d5":
                    s = schemes.corrupt_drop_pair(s)
                run(f"scheme {variant} q={q}", schemes.verify_axioms, s)
                run(f"scheme {variant} products q={q}", schemes.closed_form_report, s)
            run(f"beta q={q}", schemes.beta_system, q)
        run(f"characters q={q}", chars.character_orthogonality, q)
        run(f"profiles q={q}", chars.profile_report, q)
        run(f"decomposition q={q}", chars.decomposition_report, q)
        if q % 2 and q >= 5:
            run(f"mean values q={q}", chars.mean_values_check, q)
        run(f"conjugation q={q}", conj_invariance_spot_check, q, cfg.seed)
    if 5 in qs and 5 <= cfg.variant_max_q:
        run("subgroup q=5 m=2", scaled_variant_check, 5, "subgroup", 2)
    for a, b in itertools.permutations(qs, 2):
        if math.gcd(b, 2 * (a * a - 1)) == 1:
            run(f"embedding q={a} r={b}", idempotents.embedding_relations_check, a, b)
    if cfg.include_rank1:
        for n, q in ((2, 2), (2, 3), (3, 2)):
            run(f"rank1 n={n} q={q}", rank1_support_ring_check, n, q)
        for q in (3, 4):
            run(f"gl2 counterexample q={q}", gl2_rank1_counterexample, q)
    rep.results["checks_run"] = len(rep.checks)
    rep.results["failures"] = len(rep.failures)
    return rep
