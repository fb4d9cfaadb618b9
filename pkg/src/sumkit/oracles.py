"""Independent brute-force oracles for the recursion engines.

Nothing here touches the series or gluing machinery: these functions work by
direct enumeration or closed recursions taken from elsewhere, so the numbers
they produce are independent ground truth for the fast implementations.  Keep
it that way -- this module must import only the standard library.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def divisor_sum(n: int) -> int:
    """Sum of the divisors of ``n`` by trial division."""
    if n < 1:
        raise ValueError("divisor_sum needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d != n // d:
                total += n // d
        d += 1
    return total


class Permutation:
    """Permutation of ``{0..d-1}`` as an image tuple."""

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("not a bijection")
        object.__setattr__(self, "image", image)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def cycle_type(self) -> tuple[int, ...]:
        seen = [False] * len(self.image)
        lengths = []
        for start in range(len(self.image)):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.image[x]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))


def _cycle_count(image: list[int]) -> int:
    seen = [False] * len(image)
    cycles = 0
    for start in range(len(image)):
        if not seen[start]:
            cycles += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = image[x]
    return cycles


def _transitive(d: int, pairs: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    blocks = d
    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            blocks -= 1
    return blocks == 1


def branch_count_rh(d: int, g: int, alpha: Sequence[int]) -> int:
    """Number of extra simple branch points forced by the Euler characteristic.

    For a connected degree-``d`` genus-``g`` cover of the sphere whose
    ramification over one marked point has parts ``alpha``, the remaining
    branching consists of ``2d + 2g - 2 - sum(a - 1)`` simple points.
    """
    return 2 * d + 2 * g - 2 - sum(a - 1 for a in alpha)


def hurwitz_oracle(d: int, g: int, alpha: Sequence[int]) -> Fraction:
    """Transposition-tuple count for branched covers of the sphere.

    Counts tuples ``(t_1, ..., t_r)`` of transpositions in the symmetric
    group on ``d`` letters whose product ``t_r ... t_1`` has cycle type
    ``alpha`` and whose entries generate a transitive subgroup, divided by
    ``d!``.  The tuple length ``r`` is fixed by ``d``, ``g`` and ``alpha``.

    Pure backtracking over the ``C(d,2)`` transpositions with an incremental
    product and cycle-count pruning; transitivity is checked at the leaves by
    union-find over the supports.  Bounded to ``d <= 6``.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d > 6:
        raise ValueError("oracle enumeration is bounded to d <= 6")
    alpha = tuple(sorted(alpha, reverse=True))
    if sum(alpha) != d or any(a < 1 for a in alpha):
        raise ValueError(f"{alpha} is not a partition of {d}")
    r = branch_count_rh(d, g, alpha)
    if r < 0:
        return Fraction(0)
    # Parity: r transpositions compose to a permutation of sign (-1)^r.
    if (d - len(alpha)) % 2 != r % 2:
        return Fraction(0)

    target = alpha
    target_cycles = len(alpha)
    transpositions = [(i, j) for i in range(d) for j in range(i + 1, d)]
    product = list(range(d))   # running product, updated in place
    inverse = list(range(d))   # positions: inverse[v] = x with product[x] = v
    chosen: list[tuple[int, int]] = []
    count = 0

    def cycle_type_of_product() -> tuple[int, ...]:
        seen = [False] * d
        lengths = []
        for s in range(d):
            if not seen[s]:
                n = 0
                x = s
                while not seen[x]:
                    seen[x] = True
                    x = product[x]
                    n += 1
                lengths.append(n)
        return tuple(sorted(lengths, reverse=True))

    def same_cycle(i: int, j: int) -> bool:
        x = product[i]
        while x != i:
            if x == j:
                return True
            x = product[x]
        return False

    def recurse(depth: int, cycles: int) -> None:
        nonlocal count
        if depth == r:
            if cycles == target_cycles and cycle_type_of_product() == target \
                    and _transitive(d, chosen):
                count += 1
            return
        if r - depth < abs(cycles - target_cycles):
            return
        for i, j in transpositions:
            # left-compose by the transposition (i j): swap the two preimages
            delta = 1 if same_cycle(i, j) else -1
            pi = inverse[i]
            pj = inverse[j]
            product[pi] = j
            product[pj] = i
            inverse[i], inverse[j] = pj, pi
            chosen.append((i, j))
            recurse(depth + 1, cycles + delta)
            chosen.pop()
            product[pi] = i
            product[pj] = j
            inverse[i], inverse[j] = pi, pj

    recurse(0, d)
    return Fraction(count, math.factorial(d))


def kontsevich_oracle(d: int) -> int:
    """Rational plane-curve counts from the classical degree recursion.

    ``N_1 = 1`` and for ``d >= 2``::

        N_d = sum over d1+d2=d of N_d1 N_d2 d1^2 d2 *
              (d2 * C(3d-4, 3d1-2) - d1 * C(3d-4, 3d1-1))
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    values = {1: 1}
    for n in range(2, d + 1):
        total = 0
        for d1 in range(1, n):
            d2 = n - d1
            total += (
                values[d1] * values[d2] * d1 * d1 * d2
                * (d2 * math.comb(3 * n - 4, 3 * d1 - 2)
                   - d1 * math.comb(3 * n - 4, 3 * d1 - 1))
            )
        values[n] = total
    return values[d]
