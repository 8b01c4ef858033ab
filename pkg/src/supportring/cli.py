"""Command-line interface for computing tables and running verifications.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import sys

from . import chars, idempotents, oracle, schemes
from .gf import NotPrimePower, factor_prime_power
from .groupring import class_sum, convolve, decompose_support
from .report import Report, to_jsonable
from .scring import basis_vector, evaluate_table, sc_mul, structure_table
from .sl2 import LABELS, class_counts_by_type, class_sizes, expected_class_counts, expected_class_sizes, parse_label

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _vector_dict(vec) -> dict:
    return {x: c for x, c in zip(LABELS, vec) if c}


def _check_q(q: int, *, low: int = 3, cap: int | None = None) -> int:
    try:
        factor_prime_power(q)
    except NotPrimePower as err:
        raise UsageError(str(err)) from err
    if q < low:
        raise UsageError(f"q={q} is not supported here (need q >= {low})")
    cap = oracle.max_q() if cap is None else cap
    if q > cap:
        raise UsageError(f"q={q} exceeds the cap {cap} (set SC_MAX_Q to raise it)")
    return q


def _parse_qs(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as err:
        raise UsageError(f"bad q list {text!r}") from err


# -- subcommands ------------------------------------------------------------------

def cmd_classes(args) -> Report:
    q = _check_q(args.q)
    rep = Report("classes", q, seed=args.seed)
    sizes = class_sizes(q)
    rep.results["support_class_sizes"] = sizes
    rep.check("support class sizes", sizes == expected_class_sizes(q), sizes)
    rep.check("sizes add up to |SL2|", sum(sizes.values()) == q**3 - q, sum(sizes.values()))
    counts = {k: list(v) for k, v in class_counts_by_type(q, refined=True).items()}
    rep.results["gl2_classes"] = {k: {"classes": v[0], "size": v[1]} for k, v in counts.items()}
    want = {k: list(v) for k, v in expected_class_counts(q, refined=True).items() if v[0]}
    rep.check("GL2 class counts by refined type", counts == want, counts)
    return rep


def cmd_mul(args) -> Report:
    q = _check_q(args.q)
    try:
        x, y = parse_label(args.x), parse_label(args.y)
    except ValueError as err:
        raise UsageError(str(err)) from err
    rep = Report("mul", q, seed=args.seed)
    vec = sc_mul(basis_vector(x), basis_vector(y), q)
    rep.results = _vector_dict(vec)
    brute = decompose_support(convolve(class_sum(q, x), class_sum(q, y)))
    rep.check(f"{x}*{y} agrees with brute force", tuple(brute) == tuple(vec), _vector_dict(brute))
    return rep


def cmd_table(args) -> Report:
    q = _check_q(args.q)
    rep = Report("table", q, seed=args.seed)
    want = evaluate_table(structure_table(), q)
    rep.results = {f"{x}*{y}": _vector_dict(want[(x, y)]) for x in LABELS for y in LABELS}
    rep.extend(oracle.verify_theorem1(q))
    return rep


def cmd_idempotents(args) -> Report:
    q = _check_q(args.q)
    rep = Report("idempotents", q, seed=args.seed)
    sub = idempotents.structure_report(q)
    rep.results["pi"] = {f"pi{i}": _vector_dict(idempotents.pi(i, q)) for i in range(1, 5)}
    rep.results["matrix_units"] = {
        f"M{i}{j}": _vector_dict(idempotents.matrix_unit(i, j, q)) for i in (1, 2) for j in (1, 2)}
    rep.results.update(sub.results)
    rep.extend(sub)
    for kind in ("rank5", "rank4", "rank3"):
        rep.extend(idempotents.subalgebra_report(kind, q), f"{kind}: ")
    return rep


def cmd_scheme(args) -> Report:
    q = _check_q(args.q, low=4, cap=args.max_q or oracle.DEFAULT_SCHEME_MAX_Q)
    s = schemes.build_scheme(q, args.variant)
    if args.corrupt:
        s = schemes.corrupt_drop_pair(s)
    rep = Report("scheme", q, seed=args.seed)
    rep.results["variant"] = args.variant
    rep.results["classes"] = {lab: int(m[0].sum()) for lab, m in zip(s.labels, s.matrices)}
    d = len(s.matrices)
    rep.results["constants"] = {f"C{i}*C{j}": list(s.constants[(i, j)]) for i in range(d) for j in range(d)}
    rep.extend(schemes.verify_axioms(s), "axioms: ")
    rep.extend(schemes.closed_form_report(s), "products: ")
    if args.variant in ("tilde", "merged12_45") and not args.corrupt:
        b = schemes.beta_system(q, s)
        rep.results["beta_table"] = b.results["eigenvalue_table"]
        rep.extend(b, "beta: ")
    return rep


def cmd_chars(args) -> Report:
    q = _check_q(args.q)
    rep = Report("chars", q, seed=args.seed)
    for name, fn in (("orthogonality", chars.character_orthogonality),
                     ("profiles", chars.profile_report),
                     ("decomposition", chars.decomposition_report)):
        sub = fn(q)
        rep.results[name] = sub.results
        rep.extend(sub, f"{name}: ")
    if q % 2 and q >= 5:
        rep.extend(chars.mean_values_check(q), "mean values: ")
    return rep


def cmd_fusion(args) -> Report:
    q = _check_q(args.q)
    sub = idempotents.fusion_report(q)
    rep = Report("fusion", q, results=sub.results, seed=args.seed)
    rep.extend(sub)
    return rep


def cmd_verify(args) -> Report:
    qs = _parse_qs(args.q)
    for q in qs:
        _check_q(q)
    table = oracle.corrupt_table() if args.corrupt == "table" else None
    if not args.all:
        rep = Report("verify", qs, seed=args.seed)
        for q in qs:
            rep.extend(oracle.verify_theorem1(q, table), f"theorem1 q={q}: ")
        if args.corrupt == "scheme":
            s = schemes.corrupt_drop_pair(schemes.build_scheme(max(4, min(qs)), "d5"))
            rep.extend(schemes.verify_axioms(s), "corrupted scheme: ")
        return rep
    cfg = oracle.SuiteConfig(qs=tuple(qs), seed=args.seed, table=table,
                             corrupt_scheme=args.corrupt == "scheme")
    if args.corrupt == "scheme" and not any(q >= 4 for q in qs):
        raise UsageError("--corrupt scheme needs some q >= 4")
    try:
        return oracle.run_full_suite(cfg)
    except oracle.ConfigError as err:
        raise UsageError(str(err)) from err


# -- output ---------------------------------------------------------------------------

def render_text(rep: Report) -> str:
    data = rep.to_dict()
    lines = [f"{data['command']}  q={data['q']}  seed={data['seed']}  version={data['version']}"]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and any(isinstance(t, (dict, list)) for t in
                                                             (v.values() if isinstance(v, dict) else v)):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_flat(v)}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_flat(v)}")

    if data["results"]:
        lines.append("results:")
        walk(data["results"], 1)
    passed = sum(c["status"] == "pass" for c in data["checks"])
    lines.append(f"checks: {passed}/{len(data['checks'])} passed")
    for c in data["checks"]:
        if c["status"] == "fail":
            lines.append(f"  FAIL {c['name']}: {_flat(c['witness'])}")
    return "\n".join(lines) + "\n"


def _flat(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    return str(to_jsonable(v))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report here instead of standard output")
    common.add_argument("--seed", type=int, default=0, help="seed for the conjugation spot-checks")

    p = argparse.ArgumentParser(prog="supportring", description="Support-class rings of SL2(F_q).")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, q_type=int):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("--q", type=q_type, required=True)
        sp.set_defaults(func=fn)
        return sp

    add("classes", cmd_classes, "support class sizes and GL2 class counts")
    sp = add("mul", cmd_mul, "product of two support classes")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    add("table", cmd_table, "all 49 products")
    add("idempotents", cmd_idempotents, "central idempotents, matrix units, traces, subalgebras")
    sp = add("scheme", cmd_scheme, "association schemes")
    sp.add_argument("--variant", choices=schemes.VARIANTS, default="d5")
    sp.add_argument("--max-q", type=int, default=None, help="override the scheme size cap")
    sp.add_argument("--corrupt", action="store_true", help="drop one adjacency pair (negative control)")
    add("chars", cmd_chars, "GL2 characters and idempotent decompositions")
    add("fusion", cmd_fusion, "fusion-normalised rank-3 subalgebra")
    sp = add("verify", cmd_verify, "brute-force verification suite", q_type=str)
    sp.add_argument("--all", action="store_true", help="run every battery, not only the product table")
    sp.add_argument("--corrupt", choices=("table", "scheme"), help="inject a known defect")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
    except (UsageError, schemes.UnsupportedField) as err:
        print(f"supportring {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    rep.seed = args.seed
    text = rep.to_json() + "\n" if args.format == "json" else render_text(rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
