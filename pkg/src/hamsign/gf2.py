"""Linear algebra over F_2^m with vectors packed into a single int.

Bit conventions: a multisign ``(b_0, ..., b_{m-1})`` is stored as the integer
whose most significant of ``m`` bits is ``b_0``.  The text form is the
fixed-width bit string ``b_0 b_1 ... b_{m-1}``, so ``Multisign.parse("10")``
has ``bits == 2``.  Lexicographic order on tuples coincides with numeric
order on ``bits``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_DIM = 64


class DimensionError(ValueError):
    """Raised when vectors of different dimensions are combined."""


def _check_dim(m: int) -> None:
    if not 1 <= m <= MAX_DIM:
        raise DimensionError(f"dimension must be in 1..{MAX_DIM}, got {m}")


@dataclass(frozen=True, order=True)
class Multisign:
    """An element of F_2^m."""

    bits: int
    m: int

    def __post_init__(self) -> None:
        _check_dim(self.m)
        if not 0 <= self.bits < (1 << self.m):
            raise ValueError(f"bits {self.bits:#x} do not fit in {self.m} bits")

    @classmethod
    def zero(cls, m: int) -> Multisign:
        return cls(0, m)

    @classmethod
    def parse(cls, text: str) -> Multisign:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def from_tuple(cls, bits: Sequence[int]) -> Multisign:
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"entries must be 0 or 1, got {b!r}")
            value = (value << 1) | b
        return cls(value, len(bits))

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> (self.m - 1 - i)) & 1 for i in range(self.m))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: Multisign) -> Multisign:
        return add(self, other)

    __xor__ = __add__
    __sub__ = __add__

    def __str__(self) -> str:
        return format(self.bits, f"0{self.m}b")


def add(a: Multisign, b: Multisign) -> Multisign:
    """Componentwise XOR of two multisigns of equal dimension."""
    if a.m != b.m:
        raise DimensionError(f"dimension mismatch: {a.m} vs {b.m}")
    return Multisign(a.bits ^ b.bits, a.m)


def to_bits(x: Multisign | int) -> int:
    return x.bits if isinstance(x, Multisign) else int(x)


def _common_dim(vs: Sequence[Multisign], m: int | None) -> int:
    dims = {v.m for v in vs}
    if m is not None:
        dims.add(m)
    if len(dims) > 1:
        raise DimensionError(f"mixed dimensions {sorted(dims)}")
    if not dims:
        raise DimensionError("dimension unknown for empty input; pass m")
    return dims.pop()


@dataclass(frozen=True)
class Gf2Basis:
    """Reduced row-echelon basis of a subspace of F_2^m.

    ``pivots[i]`` is the tuple index (0 = most significant bit) of the
    leading one of ``rows[i]``; rows are sorted by pivot.  A subspace has
    exactly one such basis, so two ``Gf2Basis`` values compare equal iff
    they span the same space.
    """

    dimension: int
    rows: tuple[int, ...] = ()
    pivots: tuple[int, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[Multisign]:
        return [Multisign(r, self.dimension) for r in self.rows]

    def reduce(self, v: Multisign | int) -> int:
        """Return the residue of ``v`` after clearing every pivot column."""
        x = to_bits(v)
        for row, p in zip(self.rows, self.pivots):
            if (x >> (self.dimension - 1 - p)) & 1:
                x ^= row
        return x

    def __contains__(self, v: Multisign | int) -> bool:
        return self.reduce(v) == 0

    def elements(self) -> Iterator[int]:
        """Yield all 2^rank members of the span as ints (Gray-code order)."""
        x = 0
        yield x
        for i in range(1, 1 << self.rank):
            x ^= self.rows[(i & -i).bit_length() - 1]
            yield x

    def is_full(self) -> bool:
        return self.rank == self.dimension

    def __str__(self) -> str:
        return ",".join(format(r, f"0{self.dimension}b") for r in self.rows)


def _rref(rows: Iterable[int], m: int) -> Gf2Basis:
    reduced: list[int] = []
    for x in rows:
        for r in reduced:
            if x ^ r < x:  # leading bit of r is set in x
                x ^= r
        if x:
            # keep rows fully reduced against the new pivot
            lead = x.bit_length() - 1
            reduced = [r ^ x if (r >> lead) & 1 else r for r in reduced]
            reduced.append(x)
            reduced.sort(reverse=True)
    # leading-bit elimination above leaves each pivot column with a single one
    pivots = tuple(m - r.bit_length() for r in reduced)
    return Gf2Basis(m, tuple(reduced), pivots)


def span_basis(vs: Sequence[Multisign], m: int | None = None) -> Gf2Basis:
    """Reduced echelon basis of ``span(vs)``; ``m`` is needed when ``vs`` is empty."""
    dim = _common_dim(vs, m)
    return _rref((v.bits for v in vs), dim)


def span_basis_bits(vs: Iterable[int], m: int) -> Gf2Basis:
    """As :func:`span_basis` but for raw int vectors."""
    _check_dim(m)
    return _rref(vs, m)


def solve_combination(
    vs: Sequence[Multisign], target: Multisign
) -> tuple[int, ...] | None:
    """Find ``a`` in {0,1}^t with ``sum(a_i * vs[i]) == target``, or None.

    Elimination tracks, for every reduced row, the subset of inputs that sum
    to it.  Free inputs get coefficient 0, so the returned solution is the
    first one in pivot order.
    """
    dim = _common_dim(list(vs) + [target], None)
    del dim
    pivot_rows: list[tuple[int, int]] = []  # (vector, combination mask)
    for i, v in enumerate(vs):
        x, mask = v.bits, 1 << i
        for r, rmask in pivot_rows:
            if x ^ r < x:
                x ^= r
                mask ^= rmask
        if x:
            pivot_rows.append((x, mask))
            pivot_rows.sort(reverse=True)
    x, mask = target.bits, 0
    for r, rmask in pivot_rows:
        if x ^ r < x:
            x ^= r
            mask ^= rmask
    if x:
        return None
    return tuple((mask >> i) & 1 for i in range(len(vs)))


def combine(vs: Sequence[Multisign], coefficients: Sequence[int], m: int) -> Multisign:
    total = 0
    for v, a in zip(vs, coefficients):
        if a:
            total ^= v.bits
    return Multisign(total, m)


VERDICT_KINDS = ("Full", "Subspace", "Affine", "Other", "Unknown")


@dataclass(frozen=True)
class RealizationVerdict:
    """Shape of a realized multisign set.

    ``offset`` is meaningful for Affine only and is the lexicographically
    smallest element of the set; ``witness_set`` is filled for Other.
    """

    kind: str
    dimension: int
    basis: Gf2Basis | None = None
    offset: Multisign | None = None
    witness_set: frozenset[Multisign] = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in VERDICT_KINDS:
            raise ValueError(f"unknown verdict kind {self.kind!r}")

    @classmethod
    def unknown(cls, m: int) -> RealizationVerdict:
        return cls("Unknown", m)

    def members(self) -> frozenset[Multisign] | None:
        """The described set, or None for Unknown."""
        m = self.dimension
        if self.kind == "Unknown":
            return None
        if self.kind == "Other":
            return self.witness_set
        assert self.basis is not None
        shift = self.offset.bits if self.offset is not None else 0
        return frozenset(Multisign(x ^ shift, m) for x in self.basis.elements())

    def to_text(self) -> str:
        m = self.dimension
        offset = self.offset if self.offset is not None else Multisign.zero(m)
        parts = [f"verdict={self.kind}"]
        if self.kind != "Unknown":
            parts.append(f"offset={offset}")
            parts.append(f"basis={self.basis if self.basis is not None else ''}")
        if self.kind == "Other":
            parts.append("set=" + ",".join(str(s) for s in sorted(self.witness_set)))
        return " ".join(parts)


def classify_set(S: Iterable[Multisign], m: int) -> RealizationVerdict:
    """Decide whether ``S`` is all of F_2^m, a subspace, an affine subspace, or neither."""
    _check_dim(m)
    elems = frozenset(S)
    if not elems:
        raise ValueError("cannot classify an empty set")
    if any(s.m != m for s in elems):
        raise DimensionError("element dimension differs from m")
    s0 = min(elems)
    shifted = [s.bits ^ s0.bits for s in elems]
    basis = _rref(shifted, m)
    # shifted set is contained in its span, so equal sizes mean equality
    is_coset = len(elems) == 1 << basis.rank
    if not is_coset:
        return RealizationVerdict("Other", m, witness_set=elems)
    if basis.rank == m:
        return RealizationVerdict("Full", m, basis=basis)
    if s0.bits == 0:
        return RealizationVerdict("Subspace", m, basis=basis)
    return RealizationVerdict("Affine", m, basis=basis, offset=s0)
