"""Contact multiplicity combinatorics for curves meeting a divisor.

A curve hits a distinguished divisor in finitely many points, each with a
multiplicity and each decorated by an index into a chosen homology basis of
the divisor.  An ordered list of such pairs is a *contact sequence*; the
unordered version with counts is a :class:`ContactMultiset`.  The numerical
statistics (number of points, total multiplicity, product of multiplicities,
factorial of the counts) are the weights appearing in every gluing sum.

The pairing on the divisor homology enters through
:class:`IntersectionMatrix`; :func:`dual_multiset` re-expresses a multiset in
the dual basis, which is how the diagonal is split when two curves are glued.
Only even-degree basis classes are supported, so no sign bookkeeping occurs.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

ContactPair = tuple[int, int]  # (multiplicity >= 1, basis-class index >= 0)
ContactSeq = tuple[ContactPair, ...]


class ContactError(ValueError):
    pass


def _validate_pair(a: int, i: int) -> None:
    if a < 1:
        raise ContactError(f"contact multiplicity must be >= 1, got {a}")
    if i < 0:
        raise ContactError(f"basis index must be >= 0, got {i}")


def seq_stats(s: Sequence[ContactPair]) -> tuple[int, int, int]:
    """(number of points, sum of multiplicities, product of multiplicities)."""
    length, degree, product = 0, 0, 1
    for a, i in s:
        _validate_pair(a, i)
        length += 1
        degree += a
        product *= a
    return length, degree, product


class ContactMultiset:
    """Multiset of (multiplicity, basis index) pairs, canonically sorted.

    Hashable and immutable; used directly as a dictionary key in coefficient
    tables and serialized as ``a^count(i)`` groups.
    """

    __slots__ = ("items",)

    def __init__(self, counts: Iterable[tuple[ContactPair, int]] = ()):
        merged: dict[ContactPair, int] = {}
        for (a, i), n in counts:
            _validate_pair(a, i)
            if n < 0:
                raise ContactError("counts must be nonnegative")
            if n:
                merged[(a, i)] = merged.get((a, i), 0) + n
        object.__setattr__(self, "items", tuple(sorted(merged.items())))

    def __setattr__(self, name, value):
        raise AttributeError("ContactMultiset is immutable")

    @classmethod
    def from_seq(cls, s: Sequence[ContactPair]) -> "ContactMultiset":
        return cls(((pair, 1) for pair in s))

    @classmethod
    def from_partition(cls, parts: Sequence[int], index: int = 0) -> "ContactMultiset":
        """Multiset with all contacts on one basis class, e.g. a partition."""
        return cls.from_seq([(a, index) for a in parts])

    def count(self, a: int, i: int) -> int:
        for pair, n in self.items:
            if pair == (a, i):
                return n
        return 0

    def __iter__(self) -> Iterator[tuple[ContactPair, int]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __eq__(self, other):
        return isinstance(other, ContactMultiset) and self.items == other.items

    def __hash__(self):
        return hash(self.items)

    def __lt__(self, other):
        return self.items < other.items

    def __repr__(self):
        return f"ContactMultiset({self.to_string()!r})"

    def union(self, other: "ContactMultiset") -> "ContactMultiset":
        return ContactMultiset(tuple(self.items) + tuple(other.items))

    def to_string(self) -> str:
        """Canonical form ``a^count(i) ...``; empty multiset is ``-``."""
        if not self.items:
            return "-"
        return " ".join(f"{a}^{n}({i})" for (a, i), n in self.items)

    @classmethod
    def from_string(cls, text: str) -> "ContactMultiset":
        text = text.strip()
        if text in ("", "-"):
            return cls()
        counts = []
        for group in text.split():
            m = re.fullmatch(r"(\d+)\^(\d+)\((\d+)\)", group)
            if not m:
                raise ContactError(f"bad contact group {group!r}")
            a, n, i = (int(g) for g in m.groups())
            counts.append(((a, i), n))
        return cls(counts)


def multiset_stats(m: ContactMultiset) -> tuple[int, int, int, int]:
    """(number of points, total multiplicity, product a^count, count factorial)."""
    length = sum(n for _, n in m)
    degree = sum(a * n for (a, _), n in m)
    product = 1
    fact = 1
    for (a, _), n in m:
        product *= a ** n
        fact *= math.factorial(n)
    return length, degree, product, fact


def multiset_degree(m: ContactMultiset) -> int:
    return sum(a * n for (a, _), n in m)


def multiset_length(m: ContactMultiset) -> int:
    return sum(n for _, n in m)


def ordered_multiplicity(m: ContactMultiset) -> int:
    """Number of ordered sequences realizing the multiset: ``len! / counts!``."""
    length, _, _, fact = multiset_stats(m)
    return math.factorial(length) // fact


def multiset_binomial(m: ContactMultiset, sub: ContactMultiset) -> int:
    """Product of binomials ``C(count_m, count_sub)``; 0 if not a submultiset."""
    counts = dict(m.items)
    out = 1
    for pair, n in sub:
        have = counts.get(pair, 0)
        if n > have:
            return 0
        out *= math.comb(have, n)
    return out


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` in decreasing-part order."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, slots - 1):
            yield (head,) + rest


@functools.lru_cache(maxsize=4096)
def enumerate_multisets(deg_target: int, basis_size: int) -> list[ContactMultiset]:
    """All contact multisets of total multiplicity ``deg_target``.

    Basis indices run over ``0..basis_size-1``; the result is duplicate-free
    and canonically ordered.  Over a one-element basis this enumerates the
    integer partitions of ``deg_target``.
    """
    if deg_target < 0:
        raise ContactError("degree target must be >= 0")
    if basis_size < 1:
        raise ContactError("basis size must be >= 1")
    results = []
    for parts in partitions(deg_target):
        groups = {}
        for a in parts:
            groups[a] = groups.get(a, 0) + 1
        choices: list[list[tuple[tuple[ContactPair, int], ...]]] = []
        for a, count in sorted(groups.items()):
            ways = []
            for comp in _compositions(count, basis_size):
                ways.append(tuple(((a, i), c) for i, c in enumerate(comp) if c))
            choices.append(ways)
        stack = [()]
        for ways in choices:
            stack = [acc + w for acc in stack for w in ways]
        for acc in stack:
            results.append(ContactMultiset(acc))
    return sorted(set(results))


class SingularMatrix(ContactError):
    pass


class IntersectionMatrix:
    """Square rational pairing on the chosen divisor homology basis."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Fraction | int]]):
        n = len(rows)
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        for row in data:
            if len(row) != n:
                raise ContactError("intersection matrix must be square")
        object.__setattr__(self, "rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntersectionMatrix is immutable")

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, IntersectionMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntersectionMatrix({[[str(x) for x in r] for r in self.rows]})"

    @classmethod
    def identity(cls, n: int) -> "IntersectionMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def point_pairing(cls) -> "IntersectionMatrix":
        """Pairing for a point divisor: a single class pairing to 1."""
        return cls([[1]])

    @classmethod
    def sphere_pairing(cls) -> "IntersectionMatrix":
        """Pairing for a sphere divisor with basis (point, fundamental)."""
        return cls([[0, 1], [1, 0]])

    def inverse(self) -> "IntersectionMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        n = self.size
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise SingularMatrix("intersection matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
        return IntersectionMatrix([row[n:] for row in aug])


def dual_multiset(m: ContactMultiset, q: IntersectionMatrix
                  ) -> dict[ContactMultiset, Fraction]:
    """Expand a multiset in the dual basis determined by the pairing.

    Each class index ``i`` is replaced by its dual expansion
    ``sum_j q[i][j] * (class j)``, multilinearly over all contact points.
    The result maps multisets to rational weights.  For a permutation
    pairing this is a single index swap with weight 1.
    """
    return dict(_dual_multiset_cached(m, q))


@functools.lru_cache(maxsize=65536)
def _dual_multiset_cached(m: ContactMultiset, q: IntersectionMatrix
                          ) -> tuple[tuple[ContactMultiset, Fraction], ...]:
    if q.size < 1:
        raise ContactError("empty pairing")
    q.inverse()  # raises SingularMatrix if degenerate
    result: dict[tuple, Fraction] = {(): Fraction(1)}
    for (a, i), count in m:
        if i >= q.size:
            raise ContactError(f"basis index {i} outside pairing of size {q.size}")
        row = q.rows[i]
        factor_terms: list[tuple[tuple[tuple[ContactPair, int], ...], Fraction]] = []
        for comp in _compositions(count, q.size):
            weight = Fraction(math.factorial(count))
            entry = []
            for j, c in enumerate(comp):
                if not c:
                    continue
                weight *= row[j] ** c / math.factorial(c)
                entry.append(((a, j), c))
            if weight:
                factor_terms.append((tuple(entry), weight))
        new: dict[tuple, Fraction] = {}
        for acc, w0 in result.items():
            for entry, w in factor_terms:
                key = acc + entry
                val = new.get(key, Fraction(0)) + w0 * w
                if val:
                    new[key] = val
                else:
                    new.pop(key, None)
        result = new
    out: dict[ContactMultiset, Fraction] = {}
    for acc, w in result.items():
        ms = ContactMultiset(acc)
        val = out.get(ms, Fraction(0)) + w
        if val:
            out[ms] = val
        else:
            out.pop(ms, None)
    return tuple(sorted(out.items()))


def dual_combination(comb: dict[ContactMultiset, Fraction], q: IntersectionMatrix
                     ) -> dict[ContactMultiset, Fraction]:
    """Linear extension of :func:`dual_multiset` to weighted combinations."""
    out: dict[ContactMultiset, Fraction] = {}
    for m, w in comb.items():
        for m2, w2 in dual_multiset(m, q).items():
            val = out.get(m2, Fraction(0)) + w * w2
            if val:
                out[m2] = val
            else:
                out.pop(m2, None)
    return out
