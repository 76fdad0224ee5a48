"""Build the degeneration graph for a range of arities and write DOT and JSON reports.

    python3 scripts/reproduce_graph.py --n 2 3 4 5 --out results/
"""

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

from filippov.graph import build_graph, dumps, figure_edges, levels, report_json, rigid_nodes, to_dot


@dataclass
class RunConfig:
    arities: List[int] = field(default_factory=lambda: [2, 3, 4, 5])
    out: Path = Path("results")


def run(cfg: RunConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for n in cfg.arities:
        start = time.perf_counter()
        g = build_graph(n)
        elapsed = time.perf_counter() - start
        (cfg.out / f"graph_n{n}.dot").write_text(to_dot(g))
        (cfg.out / f"graph_n{n}.json").write_text(dumps(report_json(g)))
        lv = levels(g)
        print(f"n={n}: {len(g.nodes)} nodes, {len(g.proper_edges())} proper, {len(g.refuted)} refuted, {elapsed:.1f}s")
        print(f"  rigid: {', '.join(rigid_nodes(g))}")
        print(f"  levels: {', '.join(f'{v}={lv[v]}' for v in g.nodes)}")
        for a, b in sorted(figure_edges(g)):
            print(f"  {a} -> {b}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--out", type=Path, default=Path("results"))
    a = p.parse_args()
    run(RunConfig(a.n, a.out))


if __name__ == "__main__":
    main()
