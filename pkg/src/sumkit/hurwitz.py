"""Branched-cover counts of the sphere via the cut-join equation.

``hurwitz_number(d, g, alpha)`` is the weighted count of connected degree-``d``
genus-``g`` covers of the sphere with branching pattern ``alpha`` over one
fixed point and simple branching over the forced number of further fixed
points: the number of transposition tuples with product of cycle type
``alpha`` generating a transitive group, divided by ``d!``.

The values are not transcribed from a closed recursion; they are solved
coefficient-by-coefficient from the transport equation of the generating
function (one simple branch point removed)::

    dG/du = 1/2 * sum_{i,j>=1} ( i*j * lam^2 * z_{i+j} *
                                  (d2G/dz_i dz_j + dG/dz_i * dG/dz_j)
                                + (i+j) * z_i * z_j * dG/dz_{i+j} )

where ``G = sum N(d, g, alpha) * z^alpha * u^r/r! * lam^(2g-2)`` collects the
counts on plain part-monomials ``z^alpha`` (the ``u``-slots are divided
because branch points are labeled; the parts are not).  The quadratic term
carries the connected bookkeeping, and the squared marker ``lam^2`` tracks
the genus jump when two cycles join.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from sumkit.oracles import branch_count_rh
from sumkit.series import Series, VariableContext


class HurwitzError(ValueError):
    pass


def _normalize(alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(sorted(alpha, reverse=True))
    if any(a < 1 for a in alpha):
        raise HurwitzError("partition parts must be >= 1")
    return alpha


def branch_count(d: int, g: int, alpha: Sequence[int]) -> int:
    """Simple branch points forced by the Euler characteristic:
    ``2d + 2g - 2 - sum(a - 1)``.  Negative means the key is empty."""
    if d < 1:
        raise HurwitzError("degree must be >= 1")
    alpha = _normalize(alpha)
    if sum(alpha) != d:
        raise HurwitzError(f"{alpha} is not a partition of {d}")
    return branch_count_rh(d, g, alpha)


def _context(d_max: int) -> VariableContext:
    names = [(f"z{a}", a) for a in range(1, d_max + 1)]
    names.append(("u", 1))
    names.append(("lam", 0, True))
    return VariableContext(*names)


def cut_join_apply(g_series: Series, d_max: int) -> Series:
    """The right-hand side of the transport equation applied to a series."""
    ctx = g_series.context
    cutoff = g_series.cutoff
    total = Series.zero(ctx, cutoff)
    derivs = {}
    for a in range(1, d_max + 1):
        derivs[a] = g_series.differentiate(f"z{a}")
    lam2 = Series.term(ctx, cutoff, {"lam": 2})
    for i in range(1, d_max + 1):
        for j in range(1, d_max + 1):
            if i + j > d_max:
                continue
            z_ipj = Series.term(ctx, cutoff, {f"z{i + j}": 1})
            join = derivs[i].differentiate(f"z{j}") + derivs[i] * derivs[j]
            total = total + z_ipj * lam2 * join * Fraction(i * j, 2)
            pair_powers = {f"z{i}": 2} if i == j else {f"z{i}": 1, f"z{j}": 1}
            z_i_z_j = Series.term(ctx, cutoff, pair_powers)
            total = total + z_i_z_j * derivs[i + j] * Fraction(i + j, 2)
    return total


class CutJoinTable:
    """Solves the transport equation level by level in the branch count."""

    def __init__(self, d_max: int, r_max: int):
        self.d_max = d_max
        self.r_max = r_max
        self.context = _context(d_max)
        self.series = self._solve()

    def _seed(self) -> Series:
        # the unbranched single sheet: degree 1, genus 0, no branch points.
        # Extra cutoff headroom d_max compensates the grading lost to the
        # derivatives in the transport operator.
        return Series.term(self.context, 2 * self.d_max + self.r_max,
                           {"z1": 1, "lam": -2})

    def _solve(self) -> Series:
        ctx = self.context
        cutoff = 2 * self.d_max + self.r_max
        g_series = self._seed()
        u_index = ctx.index("u")
        for r in range(1, self.r_max + 1):
            rhs = cut_join_apply(g_series, self.d_max)
            new_terms = {}
            for exps, c in rhs.terms.items():
                if exps[u_index] != r - 1:
                    continue
                lifted = list(exps)
                lifted[u_index] = r
                new_terms[tuple(lifted)] = c * Fraction(1, r)
            if new_terms:
                g_series = g_series + Series(ctx, cutoff, new_terms)
        return g_series

    def value(self, d: int, g: int, alpha: Sequence[int]) -> Fraction:
        alpha = _normalize(alpha)
        if d > self.d_max:
            raise HurwitzError("degree beyond table bound")
        r = branch_count_rh(d, g, alpha)
        if r < 0 or g < 0 or r > self.r_max:
            if r > self.r_max >= 0 and g >= 0:
                raise HurwitzError("branch count beyond table bound")
            return Fraction(0)
        powers = {"u": r, "lam": 2 * g - 2}
        for a in set(alpha):
            powers[f"z{a}"] = alpha.count(a)
        return self.series.coefficient(powers) * math.factorial(r)


_tables: dict[tuple[int, int], CutJoinTable] = {}


def _table_for(d: int, r: int) -> CutJoinTable:
    for (dm, rm), table in _tables.items():
        if d <= dm and r <= rm:
            return table
    d_max = max(d, 5)
    r_max = max(r, 6)
    table = CutJoinTable(d_max, r_max)
    _tables[(d_max, r_max)] = table
    return table


def hurwitz_number(d: int, g: int, alpha: Sequence[int]) -> Fraction:
    """Connected cover count; invalid keys give 0."""
    if d < 1:
        raise HurwitzError("degree must be >= 1")
    alpha = _normalize(alpha)
    if sum(alpha) != d:
        return Fraction(0)
    if g < 0:
        return Fraction(0)
    r = branch_count_rh(d, g, alpha)
    if r < 0:
        return Fraction(0)
    return _table_for(d, r).value(d, g, alpha)


def cut_join_residual(d_max: int, r_max: int) -> Series:
    """Difference of the two sides of the transport equation.

    Assembles the generating series from :func:`hurwitz_number` values with
    degree at most ``d_max`` and branch count at most ``r_max``, applies both
    sides, and restricts to the window where all inputs are present
    (``u``-exponent below ``r_max``, part degree at most ``d_max``).  The
    contract is the zero series.
    """
    if d_max < 1 or r_max < 0:
        raise HurwitzError("bounds must be positive")
    ctx = _context(d_max)
    cutoff = 2 * d_max + r_max
    terms = {}
    for d in range(1, d_max + 1):
        for alpha in _partitions_of(d):
            for r in range(0, r_max + 1):
                residue = r - branch_count_rh(d, 0, alpha)
                if residue < 0 or residue % 2:
                    continue
                g = residue // 2
                value = hurwitz_number(d, g, alpha)
                if not value:
                    continue
                powers = {"u": r, "lam": 2 * g - 2}
                for a in set(alpha):
                    powers[f"z{a}"] = alpha.count(a)
                exps = ctx.exponents(powers)
                terms[exps] = value / math.factorial(r)
    g_series = Series(ctx, cutoff, terms)
    residual = g_series.differentiate("u") - cut_join_apply(g_series, d_max)
    u_index = ctx.index("u")
    z_indices = [ctx.index(f"z{a}") for a in range(1, d_max + 1)]
    window = {}
    for exps, c in residual.terms.items():
        if exps[u_index] > r_max - 1:
            continue
        if sum(a * exps[i] for a, i in zip(range(1, d_max + 1), z_indices)) \
                > d_max:
            continue
        window[exps] = c
    return Series(ctx, cutoff, window)


def _partitions_of(d: int):
    if d == 0:
        yield ()
        return
    def rec(n, max_part):
        if n == 0:
            yield ()
            return
        for first in range(min(n, max_part), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest
    yield from rec(d, d)
