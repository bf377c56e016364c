"""Decorated graphs: tensors on vertices, edge contraction, decorated delta.

Slot convention: slot k of the tensor at vertex i corresponds to the k-th
half-edge at i, where half-edges are ordered by ascending edge number
(GraphSkeleton.incident_edges).  Since parallel edges carry distinct
numbers and loops are excluded, this order is unambiguous.

evaluate contracts every edge's two half-edge slots with the orthonormal
pairing and returns the resulting scalar; it is independent of the
contraction order, of edge orientations, and multiplies over disjoint
unions.

delta_decorated mirrors the skeleton-level coboundary: for each regular
edge it contracts the two endpoint tensors along the edge's slots and then
permutes the merged tensor's slots to realign with the contracted
skeleton's half-edge order.  Contracting the lone edge of a two-vertex
graph with valence-1 endpoints would leave a valence-0 vertex; that is
rejected rather than given an ad-hoc scalar meaning.

is_cocycle_decorated groups the termwise coboundary by canonical skeleton
(literal symmetry mode, since decorations are tied to edge numbers),
transports every term onto the group's representative with the witness
permutation and its sign, and tests whether each group's sum of full
vertex-tensor outer products vanishes — exactly for exact scalar kinds,
within a tolerance for floating ones.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .canonical import transport_to_canonical
from .coboundary import contract_edge
from .errors import (
    DegenerateContraction,
    FormatError,
    MixedScalarKinds,
    NotAntisymmetric,
    ShapeMismatch,
    SlotOutOfRange,
)
from .graphs import GraphSkeleton, SymmetryMode, grading, regular_edges
from .tensors import (
    FLOAT_TOLERANCE,
    EquivariantTensor,
    ScalarKind,
    unify_kinds,
)


def _common_kind(kinds: Iterable[ScalarKind]) -> ScalarKind:
    kinds = list(kinds)
    unified = unify_kinds(kinds)
    if unified.name == "float" and any(k.is_exact for k in kinds):
        raise MixedScalarKinds(sorted(str(k) for k in set(kinds)))
    return unified


@dataclass(frozen=True)
class DecoratedGraph:
    """A skeleton with one tensor per vertex (decorations[i-1] at vertex i)."""

    skeleton: GraphSkeleton
    decorations: tuple[EquivariantTensor, ...]

    def __post_init__(self):
        object.__setattr__(self, "decorations", tuple(self.decorations))
        g, decs = self.skeleton, self.decorations
        if len(decs) != g.vertex_count:
            raise ShapeMismatch(
                f"need {g.vertex_count} decorations, got {len(decs)}"
            )
        vals = g.valences()
        for i, t in enumerate(decs, start=1):
            if t.valence != vals[i - 1]:
                raise ShapeMismatch(
                    f"vertex {i} has valence {vals[i - 1]} but its tensor has valence {t.valence}"
                )
        dims = {t.dim for t in decs}
        if len(dims) > 1:
            raise ShapeMismatch(f"decorations mix dimensions {sorted(dims)}")
        _common_kind(t.kind for t in decs)

    @property
    def dim(self) -> int:
        return self.decorations[0].dim if self.decorations else 0

    @property
    def kind(self) -> ScalarKind:
        return _common_kind(t.kind for t in self.decorations)

    @property
    def grading(self) -> tuple[int, int]:
        return grading(self.skeleton)


def decorate(g: GraphSkeleton, decorations: Sequence[EquivariantTensor]) -> DecoratedGraph:
    return DecoratedGraph(g, tuple(decorations))


def decorate_uniform(g: GraphSkeleton, tensor: EquivariantTensor) -> DecoratedGraph:
    """Attach the same tensor to every vertex (valences must all match)."""
    return DecoratedGraph(g, tuple(tensor for _ in range(g.vertex_count)))


class DecoratedChain:
    """Formal sum of decorated graphs with nonzero rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Fraction, DecoratedGraph]] = ()):
        out = []
        for coeff, g in terms:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            out.append((coeff, g))
        gradings = {g.grading for _, g in out}
        if len(gradings) > 1:
            raise ValueError(f"chain mixes gradings {sorted(gradings)}")
        self._terms = tuple(out)

    @property
    def terms(self) -> tuple[tuple[Fraction, DecoratedGraph], ...]:
        return self._terms

    @property
    def is_empty(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __add__(self, other: "DecoratedChain") -> "DecoratedChain":
        return DecoratedChain(self._terms + other._terms)

    def __repr__(self):
        return f"DecoratedChain({len(self._terms)} terms)"


def _arrays_for(g: DecoratedGraph):
    if g.kind.name == "float":
        return [np.asarray(t.array, dtype=float) for t in g.decorations]
    return [t.array for t in g.decorations]


def evaluate(g: DecoratedGraph):
    """Full contraction of all edges with the orthonormal pairing.

    Vertices are folded in one at a time; each tensor axis is tracked by
    the edge whose half-edge it carries, and axes meeting their partner
    are contracted together.  Disjoint components multiply.
    """
    if g.skeleton.vertex_count == 0:
        return Fraction(1)
    arrays = _arrays_for(g)
    result = arrays[0]
    open_slots: list[int] = list(g.skeleton.incident_edges(1))
    for v in range(2, g.skeleton.vertex_count + 1):
        t = arrays[v - 1]
        t_slots = list(g.skeleton.incident_edges(v))
        shared = [e for e in t_slots if e in open_slots]
        axes_res = [open_slots.index(e) for e in shared]
        axes_t = [t_slots.index(e) for e in shared]
        result = np.tensordot(result, t, axes=(axes_res, axes_t))
        open_slots = [e for e in open_slots if e not in shared] + [
            e for e in t_slots if e not in shared
        ]
    assert not open_slots, "every edge must be contracted exactly once"
    value = result.item() if isinstance(result, np.ndarray) else result
    return float(value) if g.kind.name == "float" else value


def contract_decoration(
    rho_i: EquivariantTensor,
    rho_j: EquivariantTensor,
    k: int,
    l: int,
) -> EquivariantTensor:
    """Contract slot k of rho_i against slot l of rho_j (orthonormal pairing).

    The result has valence v_i + v_j - 2; its slots are rho_i's remaining
    slots in order followed by rho_j's remaining slots in order.
    """
    if rho_i.dim != rho_j.dim:
        raise ShapeMismatch(f"dimension mismatch: {rho_i.dim} vs {rho_j.dim}")
    if not (1 <= k <= rho_i.valence):
        raise SlotOutOfRange(k, rho_i.valence)
    if not (1 <= l <= rho_j.valence):
        raise SlotOutOfRange(l, rho_j.valence)
    if rho_i.valence + rho_j.valence - 2 < 1:
        raise ShapeMismatch(
            "contraction would produce a valence-0 tensor (both slots are the "
            "tensors' only slots); scalars are not decorations"
        )
    kind = unify_kinds([rho_i.kind, rho_j.kind])
    if kind.name == "float":
        a = np.asarray(rho_i.array, dtype=float)
        b = np.asarray(rho_j.array, dtype=float)
    else:
        a, b = rho_i.array, rho_j.array
    out = np.tensordot(a, b, axes=([k - 1], [l - 1]))
    return EquivariantTensor(f"{rho_i.label}.{rho_j.label}", kind, out)


def delta_decorated(g: DecoratedGraph) -> DecoratedChain:
    """Decorated coboundary: one term per regular edge, slots realigned."""
    skel = g.skeleton
    terms: list[tuple[Fraction, DecoratedGraph]] = []
    for e in regular_edges(skel):
        try:
            contracted, sign = contract_edge(skel, e)
        except DegenerateContraction:
            raise ShapeMismatch(
                f"contracting edge {e} would leave a valence-0 vertex; "
                "such degenerate graphs are rejected"
            ) from None
        i, j = skel.edges[e - 1]
        inc_i = list(skel.incident_edges(i))
        inc_j = list(skel.incident_edges(j))
        k = inc_i.index(e) + 1
        l = inc_j.index(e) + 1
        merged = contract_decoration(g.decorations[i - 1], g.decorations[j - 1], k, l)
        # realign merged slots with the contracted skeleton's half-edge order
        slot_edges = [x for x in inc_i if x != e] + [x for x in inc_j if x != e]
        target = sorted(slot_edges)
        if target != slot_edges:
            axes = [slot_edges.index(x) for x in target]
            merged = EquivariantTensor(
                merged.label, merged.kind, np.transpose(merged.array, axes)
            )
        lo, hi = (i, j) if i < j else (j, i)
        new_decs: list[EquivariantTensor | None] = [None] * contracted.vertex_count
        new_decs[lo - 1] = merged
        for u in range(1, skel.vertex_count + 1):
            if u == i or u == j:
                continue
            w = u - 1 if u > hi else u
            new_decs[w - 1] = g.decorations[u - 1]
        terms.append((Fraction(sign), DecoratedGraph(contracted, tuple(new_decs))))
    return DecoratedChain(terms)


def _big_tensor(decorations: Sequence[np.ndarray]) -> np.ndarray:
    return functools.reduce(lambda a, b: np.tensordot(a, b, axes=0), decorations)


def is_cocycle_decorated(c: DecoratedChain, tolerance: float | None = None) -> bool:
    """True iff delta of the chain vanishes group-by-group.

    Terms of the termwise coboundary are transported onto canonical
    skeletons (literal mode — decorations are tied to edge numbers) and
    each skeleton group's signed sum of vertex-tensor outer products is
    tested against zero.  Exact scalar kinds are compared exactly;
    floating ones against the tolerance (default 1e-12).  Mixing exact and
    floating kinds without an explicit tolerance is an error.
    """
    if c.is_empty:
        return True
    kinds = {g.kind for _, g in c}
    unified = unify_kinds(kinds)
    if unified.name == "float" and tolerance is None and any(k.is_exact for k in kinds):
        raise MixedScalarKinds(sorted(str(k) for k in kinds))
    exact = unified.is_exact
    groups: dict[GraphSkeleton, list[tuple[Fraction, DecoratedGraph]]] = {}
    for coeff, g in c:
        for sign, h in delta_decorated(g):
            cls, perm, wsign = transport_to_canonical(h.skeleton, SymmetryMode.LITERAL)
            decs: list[EquivariantTensor | None] = [None] * h.skeleton.vertex_count
            for v in range(1, h.skeleton.vertex_count + 1):
                decs[perm[v - 1] - 1] = h.decorations[v - 1]
            moved = DecoratedGraph(cls.skeleton, tuple(decs))
            groups.setdefault(cls.skeleton, []).append((coeff * sign * wsign, moved))
    tol = FLOAT_TOLERANCE if tolerance is None else tolerance
    for skel, members in groups.items():
        dims = {g.dim for _, g in members}
        if len(dims) > 1:
            raise ShapeMismatch(f"skeleton group mixes dimensions {sorted(dims)}")
        total = None
        for coeff, g in members:
            arrays = _arrays_for(g) if exact else [
                np.asarray(t.array, dtype=float) for t in g.decorations
            ]
            big = _big_tensor(arrays)
            big = big * (coeff if exact else float(coeff))
            total = big if total is None else total + big
        if exact:
            if any(x != 0 for x in total.ravel()):
                return False
        else:
            if np.abs(total).max() > tol:
                return False
    return True


def ihx_violation(
    f: EquivariantTensor, tolerance: float | None = None
) -> tuple[int, int, int, int] | None:
    """First (a, b, c, d) violating the contracted Jacobi form, or None.

    The tested identity is
    sum_e f[a,b,e] f[e,c,d] - f[a,c,e] f[e,b,d] + f[a,d,e] f[e,b,c] = 0.
    Raises NotAntisymmetric when the input is not fully antisymmetric.
    """
    if f.valence != 3:
        raise ShapeMismatch(f"need a valence-3 tensor, got valence {f.valence}")
    arr = f.array
    exact = f.kind.is_exact
    tol = FLOAT_TOLERANCE if tolerance is None else tolerance
    for k in range(1, 4):
        for l in range(k + 1, 4):
            swapped = np.swapaxes(arr, k - 1, l - 1)
            if exact:
                bad = np.vectorize(lambda a, b: a != -b, otypes=[bool])(swapped, arr)
            else:
                bad = np.abs(swapped + arr) > tol
            if bad.any():
                flat = int(np.flatnonzero(bad.ravel())[0])
                witness = tuple(int(x) + 1 for x in np.unravel_index(flat, bad.shape))
                raise NotAntisymmetric((k, l), witness)
    base = arr if exact else np.asarray(arr, dtype=float)
    t1 = np.tensordot(base, base, axes=([2], [0]))
    t2 = t1.transpose(0, 2, 1, 3)
    t3 = t1.transpose(0, 2, 3, 1)
    total = t1 - t2 + t3
    if exact:
        bad = np.vectorize(lambda x: x != 0, otypes=[bool])(total)
    else:
        bad = np.abs(total) > tol
    if not bad.any():
        return None
    flat = int(np.flatnonzero(bad.ravel())[0])
    return tuple(int(x) + 1 for x in np.unravel_index(flat, bad.shape))


def ihx_check(f: EquivariantTensor, tolerance: float | None = None) -> bool:
    """True iff the contracted Jacobi form vanishes; see ihx_violation."""
    return ihx_violation(f, tolerance) is None


# ---------------------------------------------------------------------------
# Decoration files: one `vertex <i> tensor <name-or-file>` line per vertex.
# ---------------------------------------------------------------------------


def parse_decoration_lines(text: str) -> dict[int, str]:
    """Map vertex number -> tensor reference (catalogue name or file path)."""
    out: dict[int, str] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "vertex" or parts[2] != "tensor":
            raise FormatError(ln, f"expected 'vertex <i> tensor <ref>', got {line!r}")
        try:
            vertex = int(parts[1])
        except ValueError:
            raise FormatError(ln, f"bad vertex number {parts[1]!r}") from None
        if vertex < 1:
            raise FormatError(ln, f"vertex numbers start at 1, got {vertex}")
        if vertex in out:
            raise FormatError(ln, f"duplicate decoration for vertex {vertex}")
        out[vertex] = parts[3]
    return out


def format_decoration_lines(refs: dict[int, str]) -> str:
    return "\n".join(f"vertex {v} tensor {refs[v]}" for v in sorted(refs)) + "\n"
