"""Exact tensors with three scalar kinds, plus the shipped catalogue.

Scalar kinds
------------
* ``rational``   — entries are ``Fraction``s.
* ``radical d``  — entries are ``a + b*sqrt(d)`` with rational a, b and one
  declared non-square radicand d per tensor (class :class:`Rad`).
* ``float``      — binary64, compared with an absolute tolerance (1e-12 by
  default).

Combining kinds follows the obvious lattice: rational mixes with radical d
to give radical d; distinct radicands or any float force float.  When a
caller demands an exact verdict but the kinds force float, that is an
error (:class:`~graphcoh.errors.MixedScalarKinds`), raised by the
consumers of :func:`unify_kinds`.

A tensor's slots are numbered 1..valence, matching the half-edge order of
decorated graphs.  Generators act slotwise by ``out[i,...] = sum_a G[i,a]
t[a,...]``; a tensor is equivariant when the sum of the slot actions
vanishes for every generator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import FormatError, ShapeMismatch

FLOAT_TOLERANCE = 1e-12


class Rad:
    """Number of the form a + b*sqrt(d) with rational a, b and fixed d.

    d must be a non-square integer >= 2.  Values with b == 0 compare and
    hash like plain rationals, so Fraction and Rad entries can coexist.
    Arithmetic between different radicands is refused (the result would
    leave the ring); callers fall back to floats in that case.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        d = int(d)
        if d < 2 or math.isqrt(d) ** 2 == d:
            raise ValueError(f"radicand must be a non-square integer >= 2, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _align(self, other) -> "tuple[Rad, Rad] | None":
        """Bring both operands into one radicand's ring, if possible.

        A radical-free operand adopts the other's radicand; two genuinely
        different radicands cannot be reconciled.
        """
        if isinstance(other, (int, Fraction)):
            other = Rad(other, 0, self.d)
        if not isinstance(other, Rad):
            return None
        if self.d == other.d:
            return self, other
        if other.b == 0:
            return self, Rad(other.a, 0, self.d)
        if self.b == 0:
            return Rad(self.a, 0, other.d), other
        return None

    def __add__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return Rad(x.a + y.a, x.b + y.b, x.d)

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return Rad(x.a - y.a, x.b - y.b, x.d)

    def __rsub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return Rad(y.a - x.a, y.b - x.b, x.d)

    def __mul__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return Rad(
            x.a * y.a + x.b * y.b * x.d,
            x.a * y.b + x.b * y.a,
            x.d,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return Rad(-self.a, -self.b, self.d)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, Rad):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"Rad({self.a}, 0, {self.d})"
        return f"Rad({self.a}, {self.b}, {self.d})"


@dataclass(frozen=True)
class ScalarKind:
    name: str  # "rational" | "radical" | "float"
    radicand: int | None = None

    def __post_init__(self):
        if self.name not in ("rational", "radical", "float"):
            raise ValueError(f"unknown scalar kind {self.name!r}")
        if (self.name == "radical") != (self.radicand is not None):
            raise ValueError("radical kind needs a radicand; others must not carry one")

    @property
    def is_exact(self) -> bool:
        return self.name != "float"

    def __str__(self) -> str:
        return f"radical {self.radicand}" if self.name == "radical" else self.name

    @staticmethod
    def parse(tokens: Sequence[str]) -> "ScalarKind":
        if tokens and tokens[0] == "rational" and len(tokens) == 1:
            return RATIONAL
        if tokens and tokens[0] == "float" and len(tokens) == 1:
            return FLOAT
        if tokens and tokens[0] == "radical" and len(tokens) == 2:
            return radical(int(tokens[1]))
        raise ValueError(f"bad scalar kind {' '.join(tokens)!r}")


RATIONAL = ScalarKind("rational")
FLOAT = ScalarKind("float")


def radical(d: int) -> ScalarKind:
    d = int(d)
    if d < 2 or math.isqrt(d) ** 2 == d:
        raise ValueError(f"radicand must be a non-square integer >= 2, got {d}")
    return ScalarKind("radical", d)


def unify_kinds(kinds: Iterable[ScalarKind]) -> ScalarKind:
    """Smallest scalar kind containing all inputs (float when incompatible)."""
    out = RATIONAL
    for k in kinds:
        if k.name == "float" or out.name == "float":
            out = FLOAT
        elif k.name == "radical":
            if out.name == "radical" and out.radicand != k.radicand:
                out = FLOAT
            else:
                out = k
    return out


def _zero_of(kind: ScalarKind):
    if kind.name == "rational":
        return Fraction(0)
    if kind.name == "radical":
        return Rad(0, 0, kind.radicand)
    return 0.0


def scalar_is_zero(x, tolerance: float | None) -> bool:
    if isinstance(x, (Fraction, int, Rad)) and tolerance is None:
        return x == 0
    tol = FLOAT_TOLERANCE if tolerance is None else tolerance
    return abs(complex(x) if isinstance(x, complex) else float(x)) <= tol


@dataclass(frozen=True, eq=False)
class EquivariantTensor:
    """Dense valence-v tensor over an m-dimensional space, one scalar kind."""

    label: str
    kind: ScalarKind
    array: np.ndarray

    def __post_init__(self):
        arr = self.array
        if arr.ndim < 1:
            raise ShapeMismatch("tensor valence must be at least 1")
        if len(set(arr.shape)) != 1:
            raise ShapeMismatch(f"tensor must be a hypercube, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ShapeMismatch("tensor dimension must be at least 1")
        arr.flags.writeable = False

    @property
    def valence(self) -> int:
        return self.array.ndim

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    def entry(self, *index: int):
        """Entry at a 1-based multi-index."""
        return self.array[tuple(i - 1 for i in index)]

    def with_label(self, label: str) -> "EquivariantTensor":
        return EquivariantTensor(label, self.kind, self.array)

    def __eq__(self, other):
        if not isinstance(other, EquivariantTensor):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.array.shape == other.array.shape
            and bool(np.all(self.array == other.array))
        )

    def __hash__(self):
        return hash((self.kind, self.array.shape, self.array.tobytes() if self.array.dtype != object else id(self)))

    def __repr__(self):
        return f"EquivariantTensor({self.label!r}, valence {self.valence}, dim {self.dim}, {self.kind})"


def _normalize_entry(x, kind: ScalarKind):
    if kind.name == "rational":
        return Fraction(x)
    if kind.name == "radical":
        if isinstance(x, Rad):
            if x.b != 0 and x.d != kind.radicand:
                raise ValueError(f"entry radicand {x.d} does not match declared {kind.radicand}")
            return Rad(x.a, x.b, kind.radicand)
        return Rad(Fraction(x), 0, kind.radicand)
    return float(x)


def _infer_kind(values) -> ScalarKind:
    kind = RATIONAL
    for x in values:
        if isinstance(x, float):
            return FLOAT
        if isinstance(x, Rad):
            k = radical(x.d)
            if kind.name == "radical" and kind.radicand != k.radicand and x.b != 0:
                raise ValueError("entries mix different radicands; declare kind float instead")
            if x.b != 0:
                kind = k
    return kind


def make_tensor(values, kind: ScalarKind | None = None, label: str = "t") -> EquivariantTensor:
    """Build a tensor from nested sequences (or an ndarray), inferring the kind."""
    arr = np.asarray(values, dtype=object)
    flat = list(arr.ravel())
    if kind is None:
        kind = _infer_kind(flat)
    if kind.name == "float":
        out = np.asarray(values, dtype=float)
    else:
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = [_normalize_entry(x, kind) for x in flat]
    return EquivariantTensor(label, kind, out)


def zero_tensor(valence: int, dim: int, kind: ScalarKind = RATIONAL, label: str = "zero") -> EquivariantTensor:
    if kind.name == "float":
        arr = np.zeros((dim,) * valence, dtype=float)
    else:
        arr = np.full((dim,) * valence, _zero_of(kind), dtype=object)
    return EquivariantTensor(label, kind, arr)


def pairing(t1: EquivariantTensor, t2: EquivariantTensor):
    """Full slotwise orthonormal contraction: sum of entrywise products."""
    if t1.valence != t2.valence or t1.dim != t2.dim:
        raise ShapeMismatch(
            f"pairing needs equal shapes, got valence {t1.valence} dim {t1.dim}"
            f" vs valence {t2.valence} dim {t2.dim}"
        )
    kind = unify_kinds([t1.kind, t2.kind])
    if kind.name == "float":
        return float(np.sum(np.asarray(t1.array, dtype=float) * np.asarray(t2.array, dtype=float)))
    total = _zero_of(kind)
    for a, b in zip(t1.array.ravel(), t2.array.ravel()):
        total = total + a * b
    return total


def direct_sum(t1: EquivariantTensor, t2: EquivariantTensor, label: str | None = None) -> EquivariantTensor:
    """Block tensor on the direct sum: t1 on the first block, t2 on the second."""
    if t1.valence != t2.valence:
        raise ShapeMismatch(f"direct sum needs equal valences, got {t1.valence} vs {t2.valence}")
    kind = unify_kinds([t1.kind, t2.kind])
    v, m1, m2 = t1.valence, t1.dim, t2.dim
    m = m1 + m2
    if kind.name == "float":
        arr = np.zeros((m,) * v, dtype=float)
    else:
        arr = np.full((m,) * v, _zero_of(kind), dtype=object)
    block1 = tuple(slice(0, m1) for _ in range(v))
    block2 = tuple(slice(m1, m) for _ in range(v))
    if kind.name == "float":
        arr[block1] = np.asarray(t1.array, dtype=float)
        arr[block2] = np.asarray(t2.array, dtype=float)
    else:
        for idx in itertools.product(range(m1), repeat=v):
            arr[idx] = _normalize_entry(t1.array[idx], kind)
        for idx in itertools.product(range(m2), repeat=v):
            arr[tuple(i + m1 for i in idx)] = _normalize_entry(t2.array[idx], kind)
    return EquivariantTensor(label or f"{t1.label}+{t2.label}", kind, arr)


def apply_generator(generator: np.ndarray, array: np.ndarray, slot: int) -> np.ndarray:
    """Act on one slot (1-based): out[..., i, ...] = sum_a G[i, a] t[..., a, ...]."""
    moved = np.tensordot(generator, array, axes=([1], [slot - 1]))
    return np.moveaxis(moved, 0, slot - 1)


def _generator_arrays(generators, dim: int, exact: bool):
    out = []
    all_exact = True
    for g in generators:
        arr = np.asarray(g)
        if arr.shape != (dim, dim):
            raise ShapeMismatch(f"generator must be {dim}x{dim}, got {arr.shape}")
        if arr.dtype == object:
            flat = list(arr.ravel())
            if any(isinstance(x, (float, complex)) for x in flat):
                all_exact = False
        elif not np.issubdtype(arr.dtype, np.integer):
            all_exact = False
        out.append(arr)
    return out, all_exact


def check_equivariance(
    t: EquivariantTensor,
    generators: Sequence,
    tolerance: float | None = None,
) -> bool:
    """True iff the summed slot action of every generator annihilates t.

    Exact when both the tensor and the generators are exact; otherwise
    evaluated in complex binary64 against an absolute tolerance.
    """
    gens, gens_exact = _generator_arrays(generators, t.dim, exact=True)
    exact = t.kind.is_exact and gens_exact and tolerance is None
    if exact:
        arr = t.array
        for g in gens:
            gobj = np.empty(g.shape, dtype=object)
            gobj.ravel()[:] = [Fraction(int(x)) if not isinstance(x, (Fraction, Rad)) else x for x in np.asarray(g, dtype=object).ravel()]
            residual = sum(apply_generator(gobj, arr, s) for s in range(1, t.valence + 1))
            if any(x != 0 for x in residual.ravel()):
                return False
        return True
    tol = FLOAT_TOLERANCE if tolerance is None else tolerance
    arr = np.asarray(
        t.array if t.kind.name == "float" else np.vectorize(float, otypes=[float])(t.array),
        dtype=complex,
    )
    for g in gens:
        gc = np.asarray(g, dtype=complex)
        residual = sum(apply_generator(gc, arr, s) for s in range(1, t.valence + 1))
        if np.abs(residual).max() > tol:
            return False
    return True


def symmetry_profile(t: EquivariantTensor, tolerance: float | None = None) -> dict[tuple[int, int], int | None]:
    """For each slot transposition (k, l): +1, -1, or None (no symmetry)."""
    out: dict[tuple[int, int], int | None] = {}
    arr = t.array
    exact = t.kind.is_exact
    tol = FLOAT_TOLERANCE if tolerance is None else tolerance
    for k in range(1, t.valence + 1):
        for l in range(k + 1, t.valence + 1):
            swapped = np.swapaxes(arr, k - 1, l - 1)
            if exact:
                if bool(np.all(swapped == arr)):
                    out[(k, l)] = 1
                elif bool(np.all(swapped == -arr)):
                    out[(k, l)] = -1
                else:
                    out[(k, l)] = None
            else:
                if np.abs(swapped - arr).max() <= tol:
                    out[(k, l)] = 1
                elif np.abs(swapped + arr).max() <= tol:
                    out[(k, l)] = -1
                else:
                    out[(k, l)] = None
    return out


# ---------------------------------------------------------------------------
# Text format.  Header `valence v dim m kind <kind>`, then one line per
# nonzero entry: 1-based indices followed by the value.  Values are `p/q`
# (rational), `p/q r d` (meaning (p/q)*sqrt(d)), or a decimal literal.
# ---------------------------------------------------------------------------


def format_scalar(x, kind: ScalarKind) -> str:
    if kind.name == "float":
        return repr(float(x))
    if isinstance(x, Rad) and x.b != 0:
        if x.a != 0:
            raise ValueError(
                "entry mixes rational and radical parts; not representable in the text format"
            )
        return f"{x.b.numerator}/{x.b.denominator} r {x.d}"
    q = x.a if isinstance(x, Rad) else Fraction(x)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(tokens: Sequence[str], kind: ScalarKind):
    if kind.name == "float":
        if len(tokens) != 1:
            raise ValueError("float entries take one value token")
        return float(tokens[0])
    if len(tokens) == 1:
        q = Fraction(tokens[0])
        return Rad(q, 0, kind.radicand) if kind.name == "radical" else q
    if len(tokens) == 3 and tokens[1] == "r":
        if kind.name != "radical":
            raise ValueError("radical value in a non-radical tensor")
        d = int(tokens[2])
        if d != kind.radicand:
            raise ValueError(f"radicand {d} does not match declared {kind.radicand}")
        return Rad(0, Fraction(tokens[0]), d)
    raise ValueError(f"bad value {' '.join(tokens)!r}")


def format_tensor(t: EquivariantTensor) -> str:
    lines = [f"valence {t.valence} dim {t.dim} kind {t.kind}"]
    for idx in itertools.product(range(t.dim), repeat=t.valence):
        x = t.array[idx]
        if (x == 0) if t.kind.is_exact else (x == 0.0):
            continue
        pos = " ".join(str(i + 1) for i in idx)
        lines.append(f"{pos} {format_scalar(x, t.kind)}")
    return "\n".join(lines) + "\n"


def parse_tensor(text: str, label: str = "t") -> EquivariantTensor:
    header = None
    entries: list[tuple[tuple[int, ...], object]] = []
    valence = dim = None
    kind = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) < 6 or parts[0] != "valence" or parts[2] != "dim" or parts[4] != "kind":
                raise FormatError(ln, f"expected 'valence v dim m kind ...', got {line!r}")
            try:
                valence, dim = int(parts[1]), int(parts[3])
                kind = ScalarKind.parse(parts[5:])
            except ValueError as exc:
                raise FormatError(ln, str(exc)) from None
            if valence < 1 or dim < 1:
                raise FormatError(ln, "valence and dim must be positive")
            header = ln
            continue
        if len(parts) < valence + 1:
            raise FormatError(ln, f"expected {valence} indices and a value, got {line!r}")
        try:
            idx = tuple(int(p) for p in parts[:valence])
        except ValueError:
            raise FormatError(ln, f"bad index in {line!r}") from None
        if any(not (1 <= i <= dim) for i in idx):
            raise FormatError(ln, f"index out of range 1..{dim} in {line!r}")
        try:
            value = parse_scalar(parts[valence:], kind)
        except ValueError as exc:
            raise FormatError(ln, str(exc)) from None
        entries.append((idx, value))
    if header is None:
        raise FormatError(1, "missing tensor header")
    seen = set()
    for idx, _ in entries:
        if idx in seen:
            raise FormatError(header, f"duplicate entry at index {idx}")
        seen.add(idx)
    if kind.name == "float":
        arr = np.zeros((dim,) * valence, dtype=float)
    else:
        arr = np.full((dim,) * valence, _zero_of(kind), dtype=object)
    for idx, value in entries:
        arr[tuple(i - 1 for i in idx)] = value
    return EquivariantTensor(label, kind, arr)


# ---------------------------------------------------------------------------
# Catalogue.
# ---------------------------------------------------------------------------


def levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


def eps_tensor() -> EquivariantTensor:
    """The alternating tensor on dimension 3 (six entries, all +-1)."""
    arr = np.full((3, 3, 3), Fraction(0), dtype=object)
    for i, j, k in itertools.permutations(range(1, 4)):
        arr[i - 1, j - 1, k - 1] = Fraction(levi_civita(i, j, k))
    return EquivariantTensor("eps", RATIONAL, arr)


def half_half_one_tensor() -> EquivariantTensor:
    """Invariant coupling of two spin-1/2 slots and one spin-1 slot.

    The space is the 5-dimensional direct sum (indices 1-2 the spinor
    block, 3-5 the vector block).  Nonzero entries sit in the
    (spinor, spinor, vector) sector, built from the Pauli matrices in a
    basis that makes every entry rational; the largest entry is 1, and the
    tensor is symmetric under exchanging the two spinor slots.
    """
    arr = np.full((5, 5, 5), Fraction(0), dtype=object)
    blocks = {
        3: ((1, 1, 1), (2, 2, -1)),
        4: ((1, 1, 1), (2, 2, 1)),
        5: ((1, 2, -1), (2, 1, -1)),
    }
    for m, cells in blocks.items():
        for a, b, v in cells:
            arr[a - 1, b - 1, m - 1] = Fraction(v)
    return EquivariantTensor("half-half-one", RATIONAL, arr)


def so3_generators() -> list[np.ndarray]:
    """Adjoint action on dimension 3: (G_k)[a, b] = -levi_civita(k, a, b)."""
    gens = []
    for k in range(1, 4):
        g = np.empty((3, 3), dtype=object)
        for a in range(1, 4):
            for b in range(1, 4):
                g[a - 1, b - 1] = Fraction(-levi_civita(k, a, b))
        gens.append(g)
    return gens


def half_half_one_generators() -> list[np.ndarray]:
    """Block action on the 5-dimensional space of the half-half-one tensor.

    Spinor block: -(i/2) times the Pauli matrices.  Vector block: the
    spin-1 generators conjugated into the basis that makes the catalogue
    tensor rational (they pick up imaginary entries; the check runs in
    complex floating point).
    """
    sigma = [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    phase = np.diag([1, -1j, 1])
    phase_inv = np.diag([1, 1j, 1])
    gens = []
    for k in range(1, 4):
        vec = np.array(
            [[-levi_civita(k, a, b) for b in range(1, 4)] for a in range(1, 4)],
            dtype=complex,
        )
        g = np.zeros((5, 5), dtype=complex)
        g[0:2, 0:2] = -0.5j * sigma[k - 1]
        g[2:5, 2:5] = phase_inv @ vec @ phase
        gens.append(g)
    return gens


CATALOGUE = {
    "eps": eps_tensor,
    "half-half-one": half_half_one_tensor,
}


def catalogue_tensor(name: str) -> EquivariantTensor:
    try:
        return CATALOGUE[name]()
    except KeyError:
        raise KeyError(
            f"unknown catalogue tensor {name!r}; available: {', '.join(sorted(CATALOGUE))}"
        ) from None
