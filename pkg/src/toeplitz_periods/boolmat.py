"""Bit-packed square Boolean matrices.

Each row is a Python integer used as a bit vector: bit j-1 of row i-1
holds entry (i, j), so a matrix of order n is a tuple of n integers
below 2**n.  Multiplication over the Boolean semiring (OR for +, AND
for *) becomes row selection plus OR, one word operation per machine
word instead of one per scalar.  Matrices are immutable and hashable,
which lets dictionaries do fingerprint-then-exact-compare keying for
free during cycle detection.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from .toeplitz import ToeplitzSpec


class CapExceededError(RuntimeError):
    """Power iteration ran past its step cap without closing a cycle."""


def default_power_cap(n: int) -> int:
    """Step cap for power iteration on a matrix of order n."""
    return (n - 1) ** 2 + 2 + n


class BoolMatrix:
    """Immutable square 0/1 matrix with OR/AND arithmetic.

    Entries are addressed 1-indexed: ``get(i, j)`` is row i, column j
    with 1 <= i, j <= n.  ``rows`` is exposed read-only for callers
    that want to work on the packed integers directly.
    """

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, rows: Iterable[int]):
        rows = tuple(rows)
        n = len(rows)
        mask = (1 << n) - 1
        for r in rows:
            if r < 0 or r & ~mask:
                raise ValueError("row value has bits outside column range")
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def zeros(cls, n: int) -> "BoolMatrix":
        return cls([0] * n)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls([1 << i for i in range(n)])

    @classmethod
    def ones(cls, n: int) -> "BoolMatrix":
        return cls([(1 << n) - 1] * n)

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int]]) -> "BoolMatrix":
        """Build from 1-indexed (i, j) positions that hold a 1."""
        rows = [0] * n
        for i, j in entries:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"entry ({i}, {j}) outside order {n}")
            rows[i - 1] |= 1 << (j - 1)
        return cls(rows)

    def get(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"({i}, {j}) outside order {self.n}")
        return (self.rows[i - 1] >> (j - 1)) & 1

    def entries(self) -> Iterator[tuple[int, int]]:
        """Yield 1-indexed positions of the 1 entries, row-major."""
        for i, r in enumerate(self.rows, start=1):
            while r:
                low = r & -r
                yield i, low.bit_length()
                r ^= low

    def count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        if self.n != other.n:
            raise ValueError("order mismatch")
        brows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc |= brows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return BoolMatrix(out)

    def transpose(self) -> "BoolMatrix":
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            bit = 1 << i
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= bit
                r ^= low
        return BoolMatrix(cols)

    def power(self, m: int) -> "BoolMatrix":
        """m-th Boolean power by repeated squaring; power(0) is identity."""
        if m < 0:
            raise ValueError("negative power")
        result = BoolMatrix.identity(self.n)
        sq = self
        while m:
            if m & 1:
                result = result @ sq
            m >>= 1
            if m:
                sq = sq @ sq
        return result

    def __pow__(self, m: int) -> "BoolMatrix":
        return self.power(m)

    def __or__(self, other: "BoolMatrix") -> "BoolMatrix":
        if self.n != other.n:
            raise ValueError("order mismatch")
        return BoolMatrix(a | b for a, b in zip(self.rows, other.rows))

    def and_not(self, other: "BoolMatrix") -> "BoolMatrix":
        """Entries present in self but absent in other."""
        if self.n != other.n:
            raise ValueError("order mismatch")
        return BoolMatrix(a & ~b for a, b in zip(self.rows, other.rows))

    def dominated_by(self, other: "BoolMatrix") -> bool:
        """Entrywise <=: every 1 of self is a 1 of other."""
        if self.n != other.n:
            raise ValueError("order mismatch")
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n,) + self.rows)
        return self._hash

    def fingerprint(self) -> int:
        """Cheap equality proxy; equal matrices share it, collisions possible.

        Dictionary lookups keyed by the matrix itself already chase a
        fingerprint hit with an exact comparison, so use the matrix as
        the key whenever a first-occurrence map is needed.
        """
        return hash(self)

    def __str__(self) -> str:
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.n))
            for r in self.rows
        )

    def __repr__(self) -> str:
        return f"BoolMatrix(n={self.n}, ones={self.count()})"


def from_toeplitz(spec: "ToeplitzSpec") -> BoolMatrix:
    """Adjacency matrix with entry (i, j) = 1 iff j-i in S or i-j in T."""
    n = spec.n
    rows = []
    for i in range(1, n + 1):
        r = 0
        for s in spec.S:
            if i + s <= n:
                r |= 1 << (i + s - 1)
        for t in spec.T:
            if i - t >= 1:
                r |= 1 << (i - t - 1)
        rows.append(r)
    return BoolMatrix(rows)


def _right_multiplier(m: BoolMatrix) -> Callable[[BoolMatrix], BoolMatrix]:
    """Function computing X @ m for the fixed right factor m.

    Plain row selection is cheapest at small orders.  From a few dozen
    rows on, 256-entry OR tables per 8-column chunk pay off because a
    product then costs n * ceil(n/8) table lookups regardless of
    density.
    """
    if m.n < 32:
        return lambda x: x @ m
    n = m.n
    nchunks = (n + 7) // 8
    tables: list[list[int]] = []
    for c in range(nchunks):
        tab = [0] * 256
        width = min(8, n - 8 * c)
        for t in range(width):
            row = m.rows[8 * c + t]
            step = 1 << t
            for b in range(step, 2 * step):
                tab[b] = tab[b - step] | row
        for t in range(width, 8):
            step = 1 << t
            for b in range(step, 2 * step):
                tab[b] = tab[b - step]
        tables.append(tab)

    def apply(x: BoolMatrix) -> BoolMatrix:
        out = []
        for r in x.rows:
            acc = 0
            c = 0
            while r:
                byte = r & 255
                if byte:
                    acc |= tables[c][byte]
                r >>= 8
                c += 1
            out.append(acc)
        return BoolMatrix(out)

    return apply


def _row_selectors(m: BoolMatrix) -> list[tuple[int, ...]]:
    """Per row of m, the 0-indexed columns holding a 1."""
    sel = []
    for r in m.rows:
        cols = []
        while r:
            low = r & -r
            cols.append(low.bit_length() - 1)
            r ^= low
        sel.append(tuple(cols))
    return sel


class PowerSequence:
    """Memoized consecutive Boolean powers of one base matrix.

    ``power(m)`` returns base**m with power(0) the identity.  Powers are
    grown one multiply at a time, recording the first occurrence of each
    value; once some power repeats an earlier one the sequence has
    closed its cycle and any exponent beyond is answered by folding into
    the recorded cycle rather than multiplying further.  ``cycle()``
    forces detection and returns (index, period): the first repeat
    base**b == base**a with a < b gives index a and period b - a, which
    for a sequence driven by one fixed multiplication is the least
    transient and least period.
    """

    def __init__(self, base: BoolMatrix):
        self._base = base
        self._step = _right_multiplier(base)
        self._pows: list[BoolMatrix] = [BoolMatrix.identity(base.n), base]
        self._first: dict[BoolMatrix, int] = {base: 1}
        self._cycle: tuple[int, int] | None = None

    @property
    def base(self) -> BoolMatrix:
        return self._base

    def _advance(self) -> None:
        nxt = self._step(self._pows[-1])
        m = len(self._pows)
        seen = self._first.get(nxt)
        if seen is not None:
            self._cycle = (seen, m - seen)
        else:
            self._first[nxt] = m
        self._pows.append(nxt)

    def cycle(self, max_steps: int | None = None) -> tuple[int, int]:
        """(index, period) of the power sequence, scanning from base**1."""
        cap = default_power_cap(self._base.n) if max_steps is None else max_steps
        while self._cycle is None:
            if len(self._pows) > cap:
                raise CapExceededError(
                    f"no repeated power of an order-{self._base.n} matrix "
                    f"within {cap} steps"
                )
            self._advance()
        return self._cycle

    def power(self, m: int) -> BoolMatrix:
        if m < 0:
            raise ValueError("negative power")
        if self._cycle is not None:
            a, p = self._cycle
            if m >= a:
                m = a + (m - a) % p
        while m >= len(self._pows):
            if self._cycle is not None:
                a, p = self._cycle
                m = a + (m - a) % p if m >= a else m
                continue
            self._advance()
        return self._pows[m]
