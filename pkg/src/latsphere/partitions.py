"""Integer partitions with componentwise order, conjugation and rectangle complements.

Partitions serve as the isomorphism types of elements in every lattice handled
by this package, so all counting tables are keyed by them.  Parts are stored
1-based in formulas; positions past the last part read as zero.
"""

from __future__ import annotations

from itertools import zip_longest
from typing import Iterable, Iterator


class Partition:
    """A non-increasing tuple of nonnegative integers, trailing zeros stripped.

    Two inputs differing only in zero padding construct equal objects; the
    empty partition ``Partition()`` is the unique partition of 0.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[int] = ()):
        norm = tuple(int(x) for x in parts)
        while norm and norm[-1] == 0:
            norm = norm[:-1]
        if norm and norm[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {norm}")
        for a, b in zip(norm, norm[1:]):
            if a < b:
                raise ValueError(f"parts must be non-increasing: {norm}")
        self._parts = norm

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def weight(self) -> int:
        """Sum of all parts."""
        return sum(self._parts)

    def part(self, i: int) -> int:
        """1-based part access; positions beyond the last part read as 0."""
        if i < 1:
            raise IndexError("part positions are 1-based")
        return self._parts[i - 1] if i <= len(self._parts) else 0

    def conjugate(self) -> "Partition":
        """Transpose of the Ferrers diagram; an involution."""
        if not self._parts:
            return Partition()
        first = self._parts[0]
        return Partition(
            sum(1 for p in self._parts if p >= j) for j in range(1, first + 1)
        )

    @property
    def is_rectangular(self) -> bool:
        """True when all parts are equal, i.e. the shape is (s^l); () counts."""
        return len(set(self._parts)) <= 1

    # --- componentwise partial order -------------------------------------

    def __le__(self, other: "Partition") -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return all(
            a <= b for a, b in zip_longest(self._parts, other._parts, fillvalue=0)
        )

    def __ge__(self, other: "Partition") -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return other.__le__(self)

    def __lt__(self, other: "Partition") -> bool:
        le = self.__le__(other)
        if le is NotImplemented:
            return le
        return le and self != other

    def __gt__(self, other: "Partition") -> bool:
        ge = self.__ge__(other)
        if ge is NotImplemented:
            return ge
        return ge and self != other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __repr__(self) -> str:
        return f"Partition({list(self._parts)!r})"

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self._parts) + "]"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the bracket syntax used on the CLI, e.g. "[2,1]" or "[]"."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"expected bracketed partition, got {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        try:
            return cls(int(tok) for tok in body.split(","))
        except ValueError as exc:
            raise ValueError(f"bad partition literal {text!r}: {exc}") from None


def complement(rect: Partition, mu: Partition) -> Partition:
    """Complement of ``mu`` inside the rectangle ``rect`` = (s^l).

    With ``mu`` padded by zeros to l parts, the result is
    (s - mu_l, ..., s - mu_1).  Involutive: complementing twice gives ``mu``
    back.  Rejects non-rectangular ``rect`` and ``mu`` not fitting inside it.
    """
    if not rect.is_rectangular:
        raise ValueError(f"complement needs a rectangular bound, got {rect}")
    if not mu <= rect:
        raise ValueError(f"{mu} does not fit inside {rect}")
    length = len(rect)
    side = rect.part(1)
    return Partition(side - mu.part(i) for i in range(length, 0, -1))


def partitions_of(n: int, bound: Partition | None = None) -> list[Partition]:
    """All partitions of ``n``, optionally only those componentwise below ``bound``.

    Returned in descending lexicographic order, so iteration is deterministic.
    """
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    bound_parts = bound.parts if bound is not None else None
    return [Partition(p) for p in _gen_parts(n, n, bound_parts, 0)]


def _gen_parts(
    n: int, max_part: int, bound: tuple[int, ...] | None, pos: int
) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    cap = min(n, max_part)
    if bound is not None:
        cap = min(cap, bound[pos] if pos < len(bound) else 0)
    for first in range(cap, 0, -1):
        for rest in _gen_parts(n - first, first, bound, pos + 1):
            yield (first, *rest)
