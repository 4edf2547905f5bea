"""Row multi-tableaux: the combinatorial cells of a complete flag variety.

A filling assigns the entries 1..r bijectively to the boxes of a shape so
that every row increases strictly left to right.  Entries are placed in
decreasing order r, r-1, ..., 1; the entry placed at step k sits in the
rightmost then-unfilled box of its row, and the column label of that box
is the k-th letter of the induced dimension filtration.  Each filling
parametrizes one affine cell; its dimension is a sum of per-step counts
of unblocked lower rows.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .cyclic_core import Box, Row, Shape, is_compatible, validate_word


class SplitSummand(NamedTuple):
    """Flag of submodules of one uniserial row, encoded by part sizes.

    `lam` is a weakly decreasing tuple with one part per filtration step;
    part s is the number of boxes of the row occupied by entries placed
    up to step s.
    """

    socle: int
    lam: tuple[int, ...]


class RowMultiTableau:
    """A validated filling of a shape."""

    __slots__ = ("shape", "filling", "_box_of_entry")

    def __init__(self, shape: Shape, filling: Iterable[Iterable[int]]):
        filling = tuple(tuple(int(e) for e in row) for row in filling)
        if len(filling) != len(shape.rows):
            raise ValueError(
                f"filling has {len(filling)} rows, shape has {len(shape.rows)}"
            )
        r = shape.size
        box_of_entry: dict[int, Box] = {}
        for i, (row, entries) in enumerate(zip(shape.rows, filling), start=1):
            if len(entries) != row.length:
                raise ValueError(
                    f"row {i} holds {len(entries)} entries for {row.length} boxes"
                )
            for pos, e in enumerate(entries, start=1):
                if pos > 1 and entries[pos - 2] >= e:
                    raise ValueError(f"row {i} is not strictly increasing")
                if e in box_of_entry:
                    raise ValueError(f"entry {e} appears twice")
                box_of_entry[e] = Box(i, pos)
        if set(box_of_entry) != set(range(1, r + 1)):
            raise ValueError(f"entries must be exactly 1..{r}")
        self.shape = shape
        self.filling = filling
        self._box_of_entry = box_of_entry

    @property
    def size(self) -> int:
        return self.shape.size

    def box_of_entry(self, e: int) -> Box:
        if e not in self._box_of_entry:
            raise ValueError(f"no entry {e} in a filling of size {self.size}")
        return self._box_of_entry[e]

    def step_box(self, k: int) -> Box:
        """Box filled at step k, i.e. the box holding entry r+1-k."""
        r = self.size
        if not 1 <= k <= r:
            raise ValueError(f"step {k} out of range 1..{r}")
        return self._box_of_entry[r + 1 - k]

    def d_tau(self, k: int) -> int:
        """Number of free directions contributed by entry k.

        Counts smaller entries s whose box has the same column label and
        sits in a strictly lower row, provided that row holds no entry
        strictly between s and k.  Entry k is the one placed at step
        r+1-k of the filling order.
        """
        box_k = self.box_of_entry(k)
        label_k = self.shape.label(box_k)
        count = 0
        for s in range(1, k):
            box_s = self._box_of_entry[s]
            if box_s.row <= box_k.row:
                continue
            if self.shape.label(box_s) != label_k:
                continue
            row_entries = self.filling[box_s.row - 1]
            if any(s < e < k for e in row_entries):
                continue
            count += 1
        return count

    def cell_dim(self) -> int:
        return sum(self.d_tau(k) for k in range(1, self.size + 1))

    def dim_filtration(self) -> tuple[int, ...]:
        """The induced word: letter k is the column label of the step-k box."""
        r = self.size
        return tuple(
            self.shape.label(self._box_of_entry[r + 1 - k])
            for k in range(1, r + 1)
        )

    def split_module(self) -> tuple[SplitSummand, ...]:
        """Per-row flags of the unique direct-sum-compatible flag point.

        The number of boxes of a row occupied after step s is the count
        of its entries exceeding r - s; collecting these occupancies over
        all r steps and listing them weakly decreasing gives the part
        tuple of that row's summand.
        """
        r = self.size
        out = []
        for row, entries in zip(self.shape.rows, self.filling):
            occupancy = [
                sum(1 for a in entries if a > r - s) for s in range(1, r + 1)
            ]
            # occupancy is weakly increasing in s, so reversing sorts it
            out.append(SplitSummand(row.socle, tuple(reversed(occupancy))))
        return tuple(out)

    def to_json(self) -> dict:
        data = self.shape.to_json()
        data["filling"] = [list(row) for row in self.filling]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "RowMultiTableau":
        # row order in the file is authoritative: the filling is aligned
        # with it, so the shape must not be re-sorted here
        shape = Shape.from_json(data, keep_order=True)
        try:
            filling = data["filling"]
        except KeyError as exc:
            raise ValueError("missing filling") from exc
        return cls(shape, filling)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RowMultiTableau)
            and self.shape == other.shape
            and self.filling == other.filling
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.filling))

    def __repr__(self) -> str:
        return f"RowMultiTableau({self.filling})"


def _placement_dfs(shape: Shape, force_word=None):
    """Yield (word, filling) for every completable placement sequence.

    Entries are placed r, r-1, ..., 1; at each step any row with an
    unfilled box may receive the entry in its rightmost unfilled box.
    When force_word is given, only rows whose next box carries the
    required label are tried.  Rows are tried top to bottom, which makes
    the output order lexicographic in placement choices.
    """
    rows = shape.rows
    labels = [row.labels(shape.n) for row in rows]
    r = shape.size
    filled = [0] * len(rows)  # boxes already filled, counted from the right
    filling = [[0] * row.length for row in rows]
    word: list[int] = []

    def rec(k: int):
        if k > r:
            yield tuple(word), tuple(tuple(row) for row in filling)
            return
        entry = r + 1 - k
        want = force_word[k - 1] if force_word is not None else None
        for i, row in enumerate(rows):
            if filled[i] == row.length:
                continue
            pos = row.length - filled[i]  # rightmost unfilled, 1-based
            if want is not None and labels[i][pos - 1] != want:
                continue
            filling[i][pos - 1] = entry
            filled[i] += 1
            if force_word is None:
                word.append(labels[i][pos - 1])
            yield from rec(k + 1)
            filled[i] -= 1
            filling[i][pos - 1] = 0
            if force_word is None:
                word.pop()

    yield from rec(1)


def enumerate_tableaux(
    shape: Shape, word: Sequence[int]
) -> list[RowMultiTableau]:
    """All fillings of `shape` inducing the filtration `word`.

    Incompatible words give an empty list.  Rows fill right to left as
    entries descend, so the strict-increase invariant holds by
    construction; the constructor revalidates anyway.
    """
    word = validate_word(word, shape.n)
    if not is_compatible(shape, word):
        return []
    return [
        RowMultiTableau(shape, filling)
        for _, filling in _placement_dfs(shape, force_word=word)
    ]


def enumerate_by_filtration(
    shape: Shape,
) -> dict[tuple[int, ...], list[RowMultiTableau]]:
    """Group every filling of `shape` by its induced filtration word.

    One traversal of all placement sequences; considerably cheaper than
    calling enumerate_tableaux once per candidate word when sweeping a
    whole shape.
    """
    out: dict[tuple[int, ...], list[RowMultiTableau]] = {}
    for word, filling in _placement_dfs(shape):
        out.setdefault(word, []).append(RowMultiTableau(shape, filling))
    return out


def d_tau(t: RowMultiTableau, k: int) -> int:
    return t.d_tau(k)


def cell_dim(t: RowMultiTableau) -> int:
    return t.cell_dim()


def dim_filtration_of(t: RowMultiTableau) -> tuple[int, ...]:
    return t.dim_filtration()


def tableau_to_split_module(t: RowMultiTableau) -> tuple[SplitSummand, ...]:
    return t.split_module()
