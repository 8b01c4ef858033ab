"""Print the product table and the derived summary tables for one q.

    python scripts/reproduce_tables.py --q 5
"""

import argparse

from supportring import chars, idempotents, schemes
from supportring.scring import evaluate_table, structure_table
from supportring.sl2 import LABELS


def show_products(q):
    table = evaluate_table(structure_table(), q)
    print(f"products of support classes at q={q} (rows X, columns Y, entry = X*Y)")
    for x in LABELS:
        for y in LABELS:
            terms = " + ".join(f"{c}{z}" for c, z in zip(table[(x, y)], LABELS) if c)
            print(f"  {x:>2} * {y:<2} = {terms}")


def show_traces(q):
    tr = [idempotents.projector_trace(i, q) for i in range(1, 5)]
    print(f"projector traces: {', '.join(map(str, tr))} (sum {sum(tr)} = q(q+1) = {q * (q + 1)})")


def show_beta(q):
    if q < 4:
        return
    rep = schemes.beta_system(q)
    print("beta table: dim | eigenvalues on C~0..C~3")
    for i, row in enumerate(rep.results["eigenvalue_table"]):
        print(f"  beta{i}: {row[0]} | {', '.join(map(str, row[1:]))}")


def show_decomposition(q):
    rep = chars.decomposition_report(q)
    print(f"family contributions to tr(pi): {rep.results['family_totals']}")
    for name, mults in rep.results["multiplicities"].items():
        print(f"  {name}: {mults}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=5)
    args = ap.parse_args()
    show_products(args.q)
    show_traces(args.q)
    show_beta(args.q)
    show_decomposition(args.q)
