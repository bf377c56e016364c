"""The coboundary complex: cochains of graph classes and the map delta.

delta contracts one regular edge at a time.  Contracting the edge numbered
e, oriented from vertex i to vertex j, carries the sign

    sigma(i, j) = (-1)**j     if j > i,
                  (-1)**(i+1) if j < i,

merges the endpoints into min(i, j), shifts vertex numbers above
max(i, j) down by one, deletes edge e and shifts higher edge numbers down
by one.  delta raises the degree by one and keeps the order, and squares
to zero on classes; both facts are exercised by the test suite rather than
assumed.

Kernels are computed over exact rationals: the coefficient matrix is
brought to reduced row echelon form with pivots chosen by smallest
numerator/denominator magnitude, and the kernel basis is read off the free
columns.  Everything is deterministic for fixed bases.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .canonical import GraphClass, canonicalize
from .enumeration import enumerate_grading, resolve_cap
from .errors import DegenerateContraction, FormatError, NotRegular
from .graphs import GraphSkeleton, SymmetryMode, grading, regular_edges


def contraction_sign(i: int, j: int) -> int:
    """Sign attached to contracting an edge oriented from vertex i to j."""
    return (-1) ** j if j > i else (-1) ** (i + 1)


def contract_edge(g: GraphSkeleton, e: int) -> tuple[GraphSkeleton, int]:
    """Contract regular edge number e; returns the new skeleton and the sign.

    The merged vertex takes the number min(i, j); numbers above max(i, j)
    close the gap.  Raises NotRegular when another edge joins the same
    endpoints, DegenerateContraction when both endpoints have valence 1
    (the result would be a bare vertex, which is not a graph here).
    """
    if not (1 <= e <= g.edge_count):
        raise ValueError(f"no edge {e} in a graph with {g.edge_count} edges")
    i, j = g.edges[e - 1]
    pair = (i, j) if i < j else (j, i)
    if g.pair_multiplicities()[pair] != 1:
        raise NotRegular(e, f"vertices {pair[0]} and {pair[1]} are joined more than once")
    val = g.valences()
    if val[i - 1] == 1 and val[j - 1] == 1:
        raise DegenerateContraction(e)
    lo, hi = pair

    def relabel(u: int) -> int:
        if u == i or u == j:
            return lo
        return u - 1 if u > hi else u

    new_edges = tuple(
        (relabel(t), relabel(h))
        for k, (t, h) in enumerate(g.edges, start=1)
        if k != e
    )
    return GraphSkeleton(g.vertex_count - 1, new_edges), contraction_sign(i, j)


class Cochain:
    """Formal rational combination of nonzero classes in one grading and mode."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[GraphClass, Fraction] | Iterable[tuple[GraphClass, Fraction]] = ()):
        acc: dict[GraphClass, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for cls, coeff in items:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if not isinstance(cls, GraphClass):
                raise TypeError(f"cochain keys must be graph classes, got {type(cls)!r}")
            if cls.sign_state != 1:
                raise ValueError(
                    "cochain keys must be canonical basis classes (sign_state +1); "
                    "fold relation signs into the coefficients first"
                )
            acc[cls] = acc.get(cls, Fraction(0)) + coeff
        self._terms = {k: v for k, v in acc.items() if v != 0}
        gradings = {k.grading for k in self._terms}
        modes = {k.mode for k in self._terms}
        if len(gradings) > 1:
            raise ValueError(f"cochain mixes gradings {sorted(gradings)}")
        if len(modes) > 1:
            raise ValueError("cochain mixes symmetry modes")

    @classmethod
    def from_class(cls, graph_class: GraphClass, coeff: Fraction | int = 1) -> "Cochain":
        """One-term cochain; the class's relation sign is folded into the coefficient."""
        if graph_class.is_zero:
            return cls()
        return cls({graph_class.basis_class(): Fraction(coeff) * graph_class.sign_state})

    @property
    def terms(self) -> dict[GraphClass, Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def grading(self) -> tuple[int, int] | None:
        for k in self._terms:
            return k.grading
        return None

    @property
    def mode(self) -> SymmetryMode | None:
        for k in self._terms:
            return k.mode
        return None

    def coefficient(self, graph_class: GraphClass) -> Fraction:
        return self._terms.get(graph_class.basis_class(), Fraction(0))

    def support(self) -> list[GraphClass]:
        return sorted(self._terms, key=GraphClass.sort_key)

    def __add__(self, other: "Cochain") -> "Cochain":
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return Cochain(acc)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "Cochain":
        s = Fraction(scalar)
        return Cochain({k: s * v for k, v in self._terms.items()})

    __mul__ = __rmul__

    def __neg__(self) -> "Cochain":
        return (-1) * self

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key()))

    def __repr__(self) -> str:
        if self.is_zero:
            return "Cochain(0)"
        bits = [f"{v}*[{k.skeleton.edges}]" for k, v in self]
        return "Cochain(" + " + ".join(bits) + ")"


@functools.lru_cache(maxsize=1 << 17)
def _delta_of_class(graph_class: GraphClass) -> Cochain:
    g = graph_class.skeleton
    mode = graph_class.mode
    acc: dict[GraphClass, Fraction] = {}
    for e in regular_edges(g):
        try:
            contracted, sign = contract_edge(g, e)
        except DegenerateContraction:
            # the would-be bare vertex is not a graph; its class is zero here
            continue
        cls = canonicalize(contracted, mode)
        if cls.is_zero:
            continue
        key = cls.basis_class()
        acc[key] = acc.get(key, Fraction(0)) + sign * cls.sign_state
    return Cochain(acc)


def delta(c: Cochain | GraphClass) -> Cochain:
    """Coboundary of a cochain (or of a single class, sign folded in)."""
    if isinstance(c, GraphClass):
        c = Cochain.from_class(c)
    out = Cochain()
    for cls, coeff in c.terms.items():
        out = out + coeff * _delta_of_class(cls)
    if not c.is_zero and not out.is_zero:
        n, t = c.grading
        assert out.grading == (n, t + 1), "delta must shift the degree by one"
    return out


@dataclass(eq=False)
class DeltaMatrix:
    """Sparse matrix of delta between two enumerated bases.

    Column j holds delta(domain[j]) expanded over codomain; entries maps
    (row, col) with 0-based indices to nonzero rationals.
    """

    order: int
    degree: int
    mode: SymmetryMode
    connected: bool
    domain: tuple[GraphClass, ...]
    codomain: tuple[GraphClass, ...]
    entries: dict[tuple[int, int], Fraction] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.codomain), len(self.domain))

    def to_dense(self) -> list[list[Fraction]]:
        rows, cols = self.shape
        dense = [[Fraction(0)] * cols for _ in range(rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def rank(self) -> int:
        _, pivots = rref(self.to_dense())
        return len(pivots)

    def kernel(self) -> list[list[Fraction]]:
        return kernel_basis(self.to_dense(), len(self.domain))


def delta_matrix(
    order: int,
    degree: int,
    *,
    connected: bool = False,
    mode: SymmetryMode = SymmetryMode.LITERAL,
    cap: int | None = None,
) -> DeltaMatrix:
    """Matrix of delta from grading (order, degree) to (order, degree + 1)."""
    cap = resolve_cap(cap)
    domain = tuple(enumerate_grading(order, degree, connected=connected, mode=mode, cap=cap))
    codomain = tuple(enumerate_grading(order, degree + 1, connected=connected, mode=mode, cap=cap))
    index = {cls: i for i, cls in enumerate(codomain)}
    entries: dict[tuple[int, int], Fraction] = {}
    for col, cls in enumerate(domain):
        image = _delta_of_class(cls)
        for target, coeff in image.terms.items():
            row = index.get(target)
            if row is None:
                raise AssertionError(
                    f"delta image {target.skeleton.edges} missing from codomain basis"
                )
            entries[(row, col)] = coeff
    return DeltaMatrix(order, degree, mode, connected, domain, codomain, entries)


# ---------------------------------------------------------------------------
# Exact rational elimination.
# ---------------------------------------------------------------------------


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns).

    The pivot in each column is the candidate with the smallest
    max(|numerator|, denominator), ties broken by row position, which keeps
    intermediate fractions small without giving up determinism.
    """
    if not rows:
        return rows, []
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r >= nrows:
            break
        best_row = -1
        best_size = None
        for rr in range(r, nrows):
            x = rows[rr][c]
            if x != 0:
                size = max(abs(x.numerator), x.denominator)
                if best_size is None or size < best_size:
                    best_size, best_row = size, rr
        if best_row < 0:
            continue
        rows[r], rows[best_row] = rows[best_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for rr in range(nrows):
            if rr != r and rows[rr][c] != 0:
                f = rows[rr][c]
                rows[rr] = [a - f * b for a, b in zip(rows[rr], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def kernel_basis(dense: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Deterministic kernel basis (one vector per free column of the RREF)."""
    if not dense:
        return [
            [Fraction(1) if i == f else Fraction(0) for i in range(ncols)]
            for f in range(ncols)
        ]
    rows, pivots = rref([list(row) for row in dense])
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -rows[r][f]
        basis.append(vec)
    return basis


def cocycles_of(dm: DeltaMatrix) -> list[Cochain]:
    """Kernel of a delta matrix, expressed as cochains over its domain basis."""
    out = []
    for vec in dm.kernel():
        out.append(Cochain({cls: coeff for cls, coeff in zip(dm.domain, vec)}))
    return out


def cocycle_basis(
    order: int,
    degree: int,
    *,
    connected: bool = False,
    mode: SymmetryMode = SymmetryMode.LITERAL,
    cap: int | None = None,
) -> list[Cochain]:
    """Basis of closed cochains at (order, degree)."""
    return cocycles_of(delta_matrix(order, degree, connected=connected, mode=mode, cap=cap))


# ---------------------------------------------------------------------------
# Text exports.  Indices are 1-based in files, matching vertex and edge
# numbering everywhere else.
# ---------------------------------------------------------------------------


def format_matrix(dm: DeltaMatrix) -> str:
    rows, cols = dm.shape
    lines = [
        f"# delta matrix order {dm.order} degree {dm.degree} mode {dm.mode.value}"
        f" connected {str(dm.connected).lower()}",
        f"# rows {rows} cols {cols}",
    ]
    for (r, c) in sorted(dm.entries):
        v = dm.entries[(r, c)]
        lines.append(f"{r + 1} {c + 1} {v.numerator}/{v.denominator}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> dict[tuple[int, int], Fraction]:
    """Read the sparse triples back (0-based keys); comments are skipped."""
    entries: dict[tuple[int, int], Fraction] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        parts = raw.split()
        if len(parts) != 3:
            raise FormatError(ln, f"expected 'row col value', got {raw!r}")
        entries[(int(parts[0]) - 1, int(parts[1]) - 1)] = Fraction(parts[2])
    return entries


def format_cochain(c: Cochain, index_of: Mapping[GraphClass, int]) -> str:
    """One `coeff<TAB>g<k>` line per term; k is the 1-based basis position."""
    lines = []
    for cls, coeff in c:
        lines.append(f"{coeff.numerator}/{coeff.denominator}\tg{index_of[cls] + 1}")
    return "\n".join(lines) + "\n"


def parse_cochain(text: str, basis: Sequence[GraphClass]) -> Cochain:
    terms: dict[GraphClass, Fraction] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        parts = raw.split("\t")
        if len(parts) != 2 or not parts[1].startswith("g"):
            raise FormatError(ln, f"expected 'coeff<TAB>g<k>', got {raw!r}")
        cls = basis[int(parts[1][1:]) - 1]
        terms[cls] = terms.get(cls, Fraction(0)) + Fraction(parts[0])
    return Cochain(terms)
