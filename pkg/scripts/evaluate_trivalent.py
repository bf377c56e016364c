#!/usr/bin/env python3
"""Evaluate every trivalent class of a given order against a tensor.

Decorates each enumerated trivalent skeleton uniformly with a catalogue
tensor (or a tensor file), prints the exact full-contraction value, and
reports whether the decorated graph is closed under the coboundary.

Example:
    python3 scripts/evaluate_trivalent.py --order 2 --tensor eps --connected
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from graphcoh.decorated import (
    DecoratedChain,
    decorate_uniform,
    evaluate,
    is_cocycle_decorated,
)
from graphcoh.enumeration import enumerate_trivalent
from graphcoh.graphs import SymmetryMode
from graphcoh.tensors import CATALOGUE, catalogue_tensor, parse_tensor


@dataclass(frozen=True)
class EvalConfig:
    order: int = 1
    tensor: str = "eps"
    mode: SymmetryMode = SymmetryMode.LITERAL
    connected: bool = True
    tolerance: float | None = None


def load_tensor(ref: str):
    if ref in CATALOGUE:
        return catalogue_tensor(ref)
    return parse_tensor(Path(ref).read_text(), label=Path(ref).stem)


def run(config: EvalConfig) -> None:
    tensor = load_tensor(config.tensor)
    classes = enumerate_trivalent(
        config.order, connected=config.connected, mode=config.mode
    )
    print(
        f"# order {config.order} mode {config.mode.value} "
        f"tensor {config.tensor} classes {len(classes)}"
    )
    closed_count = 0
    for k, cls in enumerate(classes, start=1):
        dg = decorate_uniform(cls.skeleton, tensor)
        value = evaluate(dg)
        chain = DecoratedChain([(Fraction(1), dg)])
        closed = is_cocycle_decorated(chain, config.tolerance)
        closed_count += closed
        edges = " ".join(f"{t}-{h}" for t, h in cls.skeleton.edges)
        print(f"g{k:<4} value {str(value):>8}  closed {str(closed):<5}  edges {edges}")
    print(f"# closed {closed_count} of {len(classes)}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=1)
    parser.add_argument(
        "--tensor", default="eps",
        help=f"catalogue name ({', '.join(sorted(CATALOGUE))}) or a tensor file",
    )
    parser.add_argument(
        "--mode", choices=[m.value for m in SymmetryMode], default="literal"
    )
    parser.add_argument("--all-components", action="store_true",
                        help="include disconnected classes")
    parser.add_argument("--tol", type=float, default=None)
    args = parser.parse_args(argv)
    config = EvalConfig(
        order=args.order,
        tensor=args.tensor,
        mode=SymmetryMode.parse(args.mode),
        connected=not args.all_components,
        tolerance=args.tol,
    )
    run(config)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
