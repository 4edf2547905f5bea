"""Counting recursions and graded dimension bookkeeping.

Everything here is exact integer combinatorics on shapes and filtration
words: the end-box recursion for the number of cells, its graded
refinement (Poincare polynomials in q, one coefficient per even
cohomological degree), the ambient flag-variety product of q-factorials,
and the assembly of graded standard-module dimensions over all
filtration words of a fixed dimension vector.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .cyclic_core import (
    Box,
    Row,
    Shape,
    normalize_vertex,
    validate_word,
)


def _poly_string(items: Sequence[tuple[int, int]], var: str) -> str:
    if not items:
        return "0"
    terms = []
    for k, c in sorted(items):
        if k == 0:
            terms.append(str(c))
            continue
        power = var if k == 1 else f"{var}^{k}"
        terms.append(power if c == 1 else f"{c}{power}")
    return " + ".join(terms)


class PoincarePoly:
    """Finitely supported coefficients in nonnegative powers of q."""

    __slots__ = ("_items",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        items = []
        for k, c in (coeffs or {}).items():
            if c == 0:
                continue
            if k < 0:
                raise ValueError(f"negative degree {k}")
            if c < 0:
                raise ValueError(f"negative coefficient {c} at degree {k}")
            items.append((int(k), int(c)))
        self._items = tuple(sorted(items))

    def coeff(self, k: int) -> int:
        for kk, c in self._items:
            if kk == k:
                return c
        return 0

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._items)

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        return self._items[-1][0] if self._items else -1

    def evaluate(self, q: int) -> int:
        return sum(c * q**k for k, c in self._items)

    def total(self) -> int:
        """Sum of all coefficients, the value at q = 1."""
        return sum(c for _, c in self._items)

    def shifted(self, s: int) -> "PoincarePoly":
        if s < 0:
            raise ValueError(f"shift must be nonnegative, got {s}")
        return PoincarePoly({k + s: c for k, c in self._items})

    def __add__(self, other: "PoincarePoly") -> "PoincarePoly":
        out = dict(self._items)
        for k, c in other._items:
            out[k] = out.get(k, 0) + c
        return PoincarePoly(out)

    def __mul__(self, other: "PoincarePoly") -> "PoincarePoly":
        out: dict[int, int] = {}
        for k1, c1 in self._items:
            for k2, c2 in other._items:
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return PoincarePoly(out)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, PoincarePoly) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def qstring(self) -> str:
        return _poly_string(self._items, "q")

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in self._items}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "PoincarePoly":
        return cls({int(k): int(c) for k, c in data.items()})

    def __repr__(self) -> str:
        return f"PoincarePoly({self.qstring()!r})"


def q_int(m: int) -> PoincarePoly:
    """1 + q + ... + q^(m-1)."""
    if m < 0:
        raise ValueError(f"q-integer of negative {m}")
    return PoincarePoly({k: 1 for k in range(m)})


def q_factorial(m: int) -> PoincarePoly:
    out = PoincarePoly({0: 1})
    for j in range(2, m + 1):
        out = out * q_int(j)
    return out


def ambient_poincare(dims: Sequence[int]) -> PoincarePoly:
    """Product of q-factorials, one per vertex dimension.

    Poincare polynomial of the product of classical complete flag
    varieties containing every instance with this dimension vector; a
    per-degree upper bound for the graded cell counts.
    """
    out = PoincarePoly({0: 1})
    for d in dims:
        out = out * q_factorial(d)
    return out


def end_boxes(shape: Shape, i: int) -> list[Box]:
    """Rightmost boxes of the rows currently ending at vertex i, top to bottom."""
    v = normalize_vertex(i, shape.n)
    return [
        Box(idx, row.length)
        for idx, row in enumerate(shape.rows, start=1)
        if row.socle == v
    ]


def remove_box(shape: Shape, b: Box) -> Shape:
    """Drop the end box `b`; the row shortens and now ends one vertex earlier.

    Row order is kept as is: identity of the remaining rows must survive
    the recursion, so no re-canonicalization happens here.
    """
    if not 1 <= b.row <= len(shape.rows):
        raise ValueError(f"row index {b.row} out of range")
    row = shape.rows[b.row - 1]
    if b.pos != row.length:
        raise ValueError(f"box {b} is not the end box of its row")
    rows = list(shape.rows)
    if row.length == 1:
        del rows[b.row - 1]
    else:
        rows[b.row - 1] = Row(
            normalize_vertex(row.socle - 1, shape.n), row.length - 1
        )
    return Shape(shape.n, rows, keep_order=True)


def _shrink(rows: tuple[Row, ...], idx: int, n: int) -> tuple[Row, ...]:
    row = rows[idx]
    if row.length == 1:
        return rows[:idx] + rows[idx + 1 :]
    shorter = Row(normalize_vertex(row.socle - 1, n), row.length - 1)
    return rows[:idx] + (shorter,) + rows[idx + 1 :]


# Both recursions below are memoized on the ordered row tuple: the result
# genuinely depends on the order of rows, not just their multiset, e.g.
# for n=1 and word (1,1,1) the rows ((1,2),(1,1)) give 1 + q + q^2 while
# ((1,1),(1,2)) give 1 + 2q.


@lru_cache(maxsize=None)
def _count(n: int, rows: tuple[Row, ...], word: tuple[int, ...]) -> int:
    if not word:
        return 1
    i = word[0]
    rest = word[1:]
    return sum(
        _count(n, _shrink(rows, idx, n), rest)
        for idx, row in enumerate(rows)
        if row.socle == i
    )


@lru_cache(maxsize=None)
def _graded(
    n: int, rows: tuple[Row, ...], word: tuple[int, ...]
) -> tuple[tuple[int, int], ...]:
    if not word:
        return ((0, 1),)
    i = word[0]
    rest = word[1:]
    ends = [idx for idx, row in enumerate(rows) if row.socle == i]
    s = len(ends)
    acc: dict[int, int] = {}
    for m, idx in enumerate(ends, start=1):
        # the m-th candidate from the top contributes with degree shift
        # s - m: lower candidates contribute in lower degrees
        shift = s - m
        for k, c in _graded(n, _shrink(rows, idx, n), rest):
            acc[k + shift] = acc.get(k + shift, 0) + c
    return tuple(sorted(acc.items()))


def f_count(shape: Shape, f: Sequence[int]) -> int:
    """Number of cells by the end-box recursion (no enumeration)."""
    word = validate_word(f, shape.n)
    return _count(shape.n, shape.rows, word)


def f_graded(shape: Shape, f: Sequence[int]) -> PoincarePoly:
    """Graded cell count by the shifted end-box recursion."""
    word = validate_word(f, shape.n)
    return PoincarePoly(dict(_graded(shape.n, shape.rows, word)))


def bundle_dim(f: Sequence[int], n: int) -> int:
    """Dimension of the induced vector bundle over the ambient flag variety.

    Flag part: sum over vertices of d(d-1)/2.  Fiber part: at step k the
    arrow out of the step's vertex must send the new subspace into the
    previous stage at the next vertex, contributing that stage's
    dimension there.
    """
    word = validate_word(f, n)
    counts = [0] * n
    fiber = 0
    for v in word:
        fiber += counts[v % n]  # vertex v+1, 0-based index
        counts[v - 1] += 1
    flag = sum(d * (d - 1) // 2 for d in counts)
    return flag + fiber


def orbit_dim(shape: Shape) -> int:
    """Dimension of the isomorphism-class orbit inside its matrix space.

    Group dimension minus endomorphism-algebra dimension; the latter is
    an exact rational-elimination computation.
    """
    from . import ffmod

    dims = shape.dim_vector()
    return sum(d * d for d in dims) - ffmod.dim_end(shape)


def multiset_words(dims: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All distinct words with dims[v-1] occurrences of each vertex v.

    Deterministic lexicographic order, smallest vertex first.
    """
    n = len(dims)
    remaining = list(dims)
    total = sum(dims)
    word: list[int] = []

    def rec():
        if len(word) == total:
            yield tuple(word)
            return
        for v in range(1, n + 1):
            if remaining[v - 1]:
                remaining[v - 1] -= 1
                word.append(v)
                yield from rec()
                word.pop()
                remaining[v - 1] += 1

    return rec()


class KatoGdim:
    """Graded dimension of a standard module, normalized by orbit dimension.

    Coefficients live in integer powers of t; `orbit_dim` records the
    normalization exponent that was divided out.
    """

    __slots__ = ("coeffs", "orbit_dim")

    def __init__(self, coeffs: Mapping[int, int], orbit_dim: int):
        self.coeffs = {int(k): int(c) for k, c in coeffs.items() if c != 0}
        self.orbit_dim = orbit_dim

    def total(self) -> int:
        return sum(self.coeffs.values())

    def tstring(self) -> str:
        return _poly_string(sorted(self.coeffs.items()), "t")

    def to_json(self) -> dict:
        return {
            "coeffs": {str(k): c for k, c in sorted(self.coeffs.items())},
            "orbit_dim": self.orbit_dim,
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KatoGdim)
            and self.coeffs == other.coeffs
            and self.orbit_dim == other.orbit_dim
        )

    def __repr__(self) -> str:
        return f"KatoGdim({self.tstring()!r}, orbit_dim={self.orbit_dim})"


def kato_gdim(shape: Shape) -> KatoGdim:
    """Sum the graded counts over every filtration word of the shape.

    A word with bundle dimension e turns its degree-j graded count into
    a contribution at t-exponent e - j.
    """
    coeffs: dict[int, int] = {}
    for word in multiset_words(shape.dim_vector()):
        e = bundle_dim(word, shape.n)
        for j, c in _graded(shape.n, shape.rows, word):
            coeffs[e - j] = coeffs.get(e - j, 0) + c
    return KatoGdim(coeffs, orbit_dim(shape))
