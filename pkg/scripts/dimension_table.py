#!/usr/bin/env python3
"""Tabulate basis sizes, coboundary ranks, and kernel dimensions.

Sweeps every grading of non-positive degree realizable below a vertex
bound and prints one row per cell: vertex/edge counts, the number of
basis classes, the exact rank of the coboundary matrix out of that cell,
and the dimension of its kernel.  Cells whose candidate universe exceeds
the safety cap are reported as skipped rather than attempted.

Example:
    python3 scripts/dimension_table.py --mode edge-renumbering --max-vertices 6
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from graphcoh.coboundary import delta_matrix
from graphcoh.errors import BasisTooLarge
from graphcoh.graphs import SymmetryMode, counts_for_grading


@dataclass(frozen=True)
class TableConfig:
    mode: SymmetryMode = SymmetryMode.LITERAL
    max_vertices: int = 4
    connected: bool = False
    cap: int | None = None


def cells(config: TableConfig):
    seen = set()
    for v in range(2, config.max_vertices + 1):
        for e in range((v + 1) // 2, (3 * v) // 2 + 1):
            cell = (e - v, 2 * e - 3 * v)
            if cell not in seen:
                seen.add(cell)
                yield cell


def print_table(config: TableConfig) -> None:
    print(f"# mode {config.mode.value} connected {str(config.connected).lower()}")
    header = f"{'order':>5} {'degree':>6} {'V':>3} {'E':>3} {'dim':>5} {'rank':>5} {'kernel':>6}"
    print(header)
    print("-" * len(header))
    for order, degree in sorted(cells(config)):
        v, e = counts_for_grading(order, degree)
        try:
            dm = delta_matrix(
                order, degree,
                connected=config.connected, mode=config.mode, cap=config.cap,
            )
        except BasisTooLarge as exc:
            print(f"{order:>5} {degree:>6} {v:>3} {e:>3}  skipped: {exc}")
            continue
        dim = dm.shape[1]
        rank = dm.rank()
        print(f"{order:>5} {degree:>6} {v:>3} {e:>3} {dim:>5} {rank:>5} {dim - rank:>6}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--mode", choices=[m.value for m in SymmetryMode], default="literal"
    )
    parser.add_argument("--max-vertices", type=int, default=4)
    parser.add_argument("--connected", action="store_true")
    parser.add_argument("--cap", type=int, default=None)
    args = parser.parse_args(argv)
    config = TableConfig(
        mode=SymmetryMode.parse(args.mode),
        max_vertices=args.max_vertices,
        connected=args.connected,
        cap=args.cap,
    )
    print_table(config)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
