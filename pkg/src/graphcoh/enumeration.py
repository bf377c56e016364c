"""Exhaustive enumeration of nonzero graph classes at a fixed grading.

The labeled universe at vertex/edge counts (V, E) is finite once edges are
oriented tail < head: in LITERAL mode it is the set of length-E sequences
of vertex pairs, in EDGE_RENUMBERING mode the set of multiplicity vectors
over the pairs.  A class is kept when its labeled representative is the
canonical one (no vertex permutation reaches a lexicographically smaller
flattened edge list) and no self-symmetry carries sign -1.

Small universes are walked one object at a time through canonicalize;
larger ones go through a vectorized sweep that packs each candidate row
into a single integer key and filters the whole universe against one
permutation at a time.  Both paths produce identical class lists.

Enumeration refuses to start when the labeled universe would exceed a
multiple of the configured class cap (BasisTooLarge), so hopeless requests
fail fast instead of grinding.
"""

from __future__ import annotations

import functools
import math
import os

import numpy as np

from .canonical import GraphClass, _perm_tables, canonicalize
from .errors import BasisTooLarge
from .graphs import (
    GraphSkeleton,
    SymmetryMode,
    counts_for_grading,
    is_connected,
)

DEFAULT_CAP = 200_000
CAP_ENV_VAR = "GRAPHCOH_CAP"

_SIMPLE_PATH_LIMIT = 20_000  # walk tiny universes object by object
_UNIVERSE_FACTOR = 50  # labeled universe may be this many times the cap
_COMPACT_EVERY = 32  # drop dead rows from the bulk sweep this often


def resolve_cap(cap: int | None = None) -> int:
    """Explicit cap, else the GRAPHCOH_CAP environment variable, else default."""
    if cap is None:
        env = os.environ.get(CAP_ENV_VAR)
        cap = int(env) if env else DEFAULT_CAP
    if cap <= 0:
        raise ValueError(f"cap must be positive, got {cap}")
    return cap


def _universe_size(v: int, e: int, mode: SymmetryMode) -> int:
    p = v * (v - 1) // 2
    if mode is SymmetryMode.LITERAL:
        return p**e
    return math.comb(e + p - 1, p - 1)


@functools.lru_cache(maxsize=2048)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All ways to write `total` as an ordered sum of `parts` naturals."""
    if parts == 1:
        out = np.array([[total]], dtype=np.uint8)
    else:
        blocks = []
        for first in range(total + 1):
            rest = _compositions(total - first, parts - 1)
            col = np.full((rest.shape[0], 1), first, np.uint8)
            blocks.append(np.hstack([col, rest]))
        out = np.vstack(blocks)
    out.flags.writeable = False
    return out


def _expand_multiplicities(row, pairs) -> tuple[tuple[int, int], ...]:
    edges: list[tuple[int, int]] = []
    for pid, m in enumerate(row):
        edges.extend([pairs[pid]] * int(m))
    return tuple(edges)


def _labeled_universe(v: int, e: int, mode: SymmetryMode, tables) -> np.ndarray:
    """Rows of the labeled universe: pair-id sequences or multiplicity vectors."""
    p = len(tables.pairs)
    if mode is SymmetryMode.LITERAL:
        n = p**e
        arr = np.empty((n, e), dtype=np.uint8)
        base = np.arange(n, dtype=np.int64)
        for col in range(e):
            arr[:, col] = (base // p ** (e - 1 - col)) % p
        return arr
    return np.array(_compositions(e, p), dtype=np.uint8)


def _valence_filter(arr: np.ndarray, v: int, mode: SymmetryMode, tables, trivalent: bool) -> np.ndarray:
    """Keep rows where every vertex is touched (or has valence exactly 3)."""
    p = len(tables.pairs)
    incidence = np.zeros((p, v), dtype=np.uint8)
    for pid, (a, b) in enumerate(tables.pairs):
        incidence[pid, a - 1] = 1
        incidence[pid, b - 1] = 1
    if mode is SymmetryMode.LITERAL:
        keep = np.ones(arr.shape[0], dtype=bool)
        for u in range(v):
            count = incidence[:, u][arr].sum(axis=1)
            keep &= (count == 3) if trivalent else (count >= 1)
        return arr[keep]
    val = arr.astype(np.int16) @ incidence.astype(np.int16)
    keep = (val == 3).all(axis=1) if trivalent else (val >= 1).all(axis=1)
    return arr[keep]


def _pack_powers(width: int, base: int) -> np.ndarray:
    if base**width > 2**62:
        raise BasisTooLarge(
            f"candidate keys do not fit a packed integer (width {width}, base {base})",
            cap=0,
        )
    return np.array([base ** (width - 1 - i) for i in range(width)], dtype=np.int64)


def _bulk_survivors(arr: np.ndarray, mode: SymmetryMode, tables):
    """Canonical rows of the labeled universe plus their zero-class flags.

    LITERAL canonical rows are lexicographic minima over the permutation
    action; EDGE_RENUMBERING rows are multiplicity vectors, where the least
    flattened sorted edge list corresponds to the lexicographically
    greatest vector.
    """
    nperm = len(tables.perms)
    p = len(tables.pairs)
    width = arr.shape[1]
    base = 16 if (p if mode is SymmetryMode.LITERAL else arr.max(initial=0)) < 16 else 32
    powers = _pack_powers(width, base)

    def keys_under(rows: np.ndarray, g: int) -> np.ndarray:
        if mode is SymmetryMode.LITERAL:
            transformed = tables.pair_map[g].astype(np.int64)[rows]
        else:
            transformed = rows[:, tables.pair_map_inv[g]].astype(np.int64)
        return transformed @ powers

    keys0 = arr.astype(np.int64) @ powers
    live = arr
    live_keys = keys0
    mask = np.ones(live.shape[0], dtype=bool)
    minimize = mode is SymmetryMode.LITERAL
    for g in range(1, nperm):
        kg = keys_under(live, g)
        mask &= (kg >= live_keys) if minimize else (kg <= live_keys)
        if g % _COMPACT_EVERY == 0 and not mask.all():
            live = live[mask]
            live_keys = live_keys[mask]
            mask = np.ones(live.shape[0], dtype=bool)
    live = live[mask]
    live_keys = live_keys[mask]

    # Zero detection: collect signs of the permutations fixing each survivor.
    zero = np.zeros(live.shape[0], dtype=bool)
    for g in range(1, nperm):
        kg = keys_under(live, g)
        eq = kg == live_keys
        if not eq.any():
            continue
        if mode is SymmetryMode.LITERAL:
            flips = tables.pair_flip[g][live[eq]].sum(axis=1)
        else:
            flips = live[eq].astype(np.int16) @ tables.pair_flip[g].astype(np.int16)
        sign = tables.parity[g] * (1 - 2 * (flips & 1))
        hit = np.zeros_like(zero)
        hit[eq] = sign == -1
        zero |= hit
    return live, zero


def enumerate_by_counts(
    vertex_count: int,
    edge_count: int,
    *,
    connected: bool = False,
    trivalent: bool = False,
    mode: SymmetryMode = SymmetryMode.LITERAL,
    cap: int | None = None,
) -> list[GraphClass]:
    """All nonzero classes with the given vertex and edge counts, sorted."""
    cap = resolve_cap(cap)
    v, e = vertex_count, edge_count
    if v < 2 or e < 1 or 2 * e < v:
        return []
    if trivalent and 2 * e != 3 * v:
        return []
    universe = _universe_size(v, e, mode)
    if universe > _UNIVERSE_FACTOR * cap:
        raise BasisTooLarge(
            f"labeled universe at V={v}, E={e} has {universe} candidates", cap
        )
    if v > 8:
        raise BasisTooLarge(
            f"V={v} needs a {math.factorial(v)}-permutation sweep per candidate, "
            "past the exhaustive-search bound (V <= 8)",
            cap,
        )

    classes: list[GraphClass] = []
    if universe <= _SIMPLE_PATH_LIMIT:
        seen: dict[GraphSkeleton, GraphClass] = {}
        tables = _perm_tables(v)
        arr = _labeled_universe(v, e, mode, tables)
        arr = _valence_filter(arr, v, mode, tables, trivalent)
        for row in arr:
            if mode is SymmetryMode.LITERAL:
                edges = tuple(tables.pairs[int(pid)] for pid in row)
            else:
                edges = _expand_multiplicities(row, tables.pairs)
            g = GraphSkeleton(v, edges)
            cls = canonicalize(g, mode)
            if cls.is_zero:
                continue
            seen.setdefault(cls.skeleton, cls.basis_class())
        classes = list(seen.values())
    else:
        tables = _perm_tables(v)
        arr = _labeled_universe(v, e, mode, tables)
        arr = _valence_filter(arr, v, mode, tables, trivalent)
        rows, zero = _bulk_survivors(arr, mode, tables)
        for row, z in zip(rows, zero):
            if z:
                continue
            if mode is SymmetryMode.LITERAL:
                edges = tuple(tables.pairs[int(pid)] for pid in row)
            else:
                edges = _expand_multiplicities(row, tables.pairs)
            classes.append(GraphClass(GraphSkeleton(v, edges), 1, mode))

    if connected:
        classes = [c for c in classes if is_connected(c.skeleton)]
    classes.sort(key=GraphClass.sort_key)
    if len(classes) > cap:
        raise BasisTooLarge(
            f"{len(classes)} classes at V={v}, E={e} exceed the cap", cap
        )
    return classes


def enumerate_grading(
    order: int,
    degree: int,
    *,
    connected: bool = False,
    mode: SymmetryMode = SymmetryMode.LITERAL,
    cap: int | None = None,
) -> list[GraphClass]:
    """Basis of nonzero classes at (order, degree), sorted deterministically."""
    v, e = counts_for_grading(order, degree)
    if v < 0 or e < 0:
        return []
    return enumerate_by_counts(v, e, connected=connected, mode=mode, cap=cap)


def enumerate_trivalent(
    order: int,
    *,
    connected: bool = True,
    mode: SymmetryMode = SymmetryMode.LITERAL,
    cap: int | None = None,
) -> list[GraphClass]:
    """All nonzero trivalent classes of the given order (V = 2m, E = 3m)."""
    if order < 1:
        return []
    return enumerate_by_counts(
        2 * order,
        3 * order,
        connected=connected,
        trivalent=True,
        mode=mode,
        cap=cap,
    )
