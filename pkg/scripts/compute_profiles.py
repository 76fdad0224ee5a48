"""Print the invariant profile of every catalog algebra at the given arity as a table."""

import argparse
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from filippov.catalog import catalog_ids, make
from filippov.graph import profile_json
from filippov.invariants import profile


@dataclass
class TableConfig:
    n: int = 3
    alphas: Sequence[Fraction] = (Fraction(0), Fraction(-1, 4), Fraction(-1, 2))


def _c(doc) -> str:
    return doc.get("value", doc["tag"])


def run(cfg: TableConfig) -> None:
    head = f"{'algebra':<10} {'der':>3} {'ann':>3} {'aut':>3} {'socle':>5}  c11 | c12 | c22"
    print(head)
    print("-" * len(head))
    for cid in catalog_ids(cfg.n, cfg.alphas):
        p = profile(make(cid))
        socle = p.socle_dim if isinstance(p.socle_dim, int) else "?"
        doc = profile_json(p)
        cs = " | ".join(_c(doc[f"c_{i}_{j}"]) for i, j in sorted(p.c_invariants))
        print(f"{cid.name:<10} {p.dim_derived:>3} {p.dim_ann:>3} {p.aut_dim:>3} {socle:>5}  {cs}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--alpha", type=Fraction, nargs="*", default=[Fraction(0), Fraction(-1, 4), Fraction(-1, 2)])
    a = p.parse_args()
    run(TableConfig(a.n, tuple(a.alpha)))


if __name__ == "__main__":
    main()
