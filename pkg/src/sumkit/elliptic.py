"""Curve counts on the rational elliptic surface.

The genus-zero counts of section-plus-fiber classes assemble into a series
determined two independent ways: by a first-order recursion against the
divisor-sum series (splitting off multiple fiber covers), and as the twelfth
power of the partition generating function.  Higher-genus series are the
genus-zero one times powers of the derivative of the divisor-sum series.
The genus-one recursion and the fiber-sum identity suite tie these together;
every identity is checked exactly as a vanishing residual series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from sumkit.oracles import divisor_sum
from sumkit.series import Series, VariableContext, geometric_inverse


def fiber_context() -> VariableContext:
    """Single fiber-degree variable; the section-class marker is implicit."""
    return VariableContext("t")


def sigma_series(cutoff: int) -> Series:
    """Divisor-sum generating function ``sum sigma(n) t^n``."""
    ctx = fiber_context()
    return Series(ctx, cutoff, {
        ctx.exponents({"t": n}): divisor_sum(n) for n in range(1, cutoff + 1)
    })


def f0_via_ode(cutoff: int) -> Series:
    """Genus-zero section-class series from ``t F' = 12 G F`` with ``F(0) = 1``.

    Coefficientwise: ``n c_n = 12 sum_{k=1..n} sigma(k) c_{n-k}``.
    """
    sigma = [0] + [divisor_sum(n) for n in range(1, cutoff + 1)]
    coeffs = [Fraction(1)]
    for n in range(1, cutoff + 1):
        total = sum(sigma[k] * coeffs[n - k] for k in range(1, n + 1))
        coeffs.append(Fraction(12 * total, n))
    ctx = fiber_context()
    return Series(ctx, cutoff,
                  {ctx.exponents({"t": n}): c for n, c in enumerate(coeffs)})


def f0_product(cutoff: int) -> Series:
    """The same series as the twelfth power of the partition series."""
    ctx = fiber_context()
    partitions = Series.one(ctx, cutoff)
    for d in range(1, cutoff + 1):
        partitions = partitions * geometric_inverse(ctx, cutoff, {"t": d})
    return partitions ** 12


def fg(g: int, cutoff: int) -> Series:
    """Genus-``g`` series: the genus-zero one times ``(G')^g``."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    f = f0_product(cutoff)
    if g == 0:
        return f
    gprime = sigma_series(cutoff + 1).differentiate("t")
    return f * gprime ** g


def ghost_torus_count(k_dot_b: int) -> Fraction:
    """Class-zero genus-one count against a surface class: ``K.B / 24``."""
    return Fraction(k_dot_b, 24)


@dataclass(frozen=True)
class SurfaceClassData:
    """Intersection data for a family of classes ``A(d) = base + d * fiber``.

    ``a_sq_base`` is the self-intersection of the base class; the family has
    ``A(d)^2 = a_sq_base + 2 d * f_dot_a``.  ``k_dot_a`` is the (d-independent)
    canonical pairing.  Defaults describe the section classes of the rational
    elliptic surface.
    """

    k_dot_a: int = -1
    a_sq_base: int = -1
    f_dot_a: int = 1


def trr_genus1(data: SurfaceClassData, gw0: Sequence[Fraction | int],
               fiber_elliptic: Mapping[int, Fraction] | None = None
               ) -> Series:
    """Genus-one descendant counts from the genus-zero ones.

    For each fiber degree ``d``::

        H_d = (f.A / 24) (A(d)^2 + K.A) gw0_d
              + sum_{k=1..d} k * fiber_elliptic[k] * gw0_{d-k}

    With the elliptic-surface inputs (``fiber_elliptic[k] = sigma(k)/k``)
    this assembles to ``(t F0' - F0)/12 + F0 * G``.
    """
    cutoff = len(gw0) - 1
    if fiber_elliptic is None:
        fiber_elliptic = {k: Fraction(divisor_sum(k), k)
                          for k in range(1, cutoff + 1)}
    coeffs = []
    for d in range(cutoff + 1):
        a_sq = data.a_sq_base + 2 * d * data.f_dot_a
        value = Fraction(data.f_dot_a * (a_sq + data.k_dot_a), 24) \
            * Fraction(gw0[d])
        for k in range(1, d + 1):
            value += k * fiber_elliptic[k] * Fraction(gw0[d - k])
        coeffs.append(value)
    ctx = fiber_context()
    return Series(ctx, cutoff,
                  {ctx.exponents({"t": d}): c for d, c in enumerate(coeffs)})


def genus1_via_fiber_recursion(cutoff: int) -> Series:
    """Genus-one series built by the descendant recursion: ``(tF0'-F0)/12 + F0 G``."""
    f0 = f0_product(cutoff + 1)
    t = Series.term(fiber_context(), cutoff, {"t": 1})
    tfp = (t * f0.differentiate("t")).truncate(cutoff)
    return (tfp - f0.truncate(cutoff)) * Fraction(1, 12) \
        + (f0 * sigma_series(cutoff + 1)).truncate(cutoff)


def genus1_via_fiber_sum(cutoff: int) -> Series:
    """The same series from splitting off the trivial fibration: ``2 F0 (G - 1/24)``."""
    f0 = f0_product(cutoff)
    return f0 * (sigma_series(cutoff) - Fraction(1, 24)) * 2


def _reciprocal(f: Series, cutoff: int) -> Series:
    """Inverse of a series with constant term 1, by the geometric expansion."""
    g = (1 - f).truncate(cutoff)
    acc = Series.one(f.context, cutoff)
    power = g
    while not power.is_zero():
        acc = acc + power
        power = power * g
    return acc


def lsplit_suite(g_max: int, cutoff: int) -> dict[str, Series]:
    """Residuals of the fiber-sum identity suite; all must vanish.

    The point-conditioned relative series ``FVg(p) = Fg - F(g-1) G'`` is what
    the one-point splitting leaves after the fiber-conditioned series is
    identified with the absolute one.  The doubled fiber sum has no curves at
    all, forcing ``FVg(p) F0 + F(g-1) FV1(p) = 0``; at genus one this solves
    (dividing by the invertible genus-zero series) to ``FV1(p) = 0``, which
    propagates up the genus ladder and collapses it to multiplication by
    ``G'``.  The returned residual series are indexed by identity name.
    """
    if g_max < 1:
        raise ValueError("need g_max >= 1")
    f0 = f0_product(cutoff)
    f0_inv = _reciprocal(f0, cutoff)
    gprime = sigma_series(cutoff + 1).differentiate("t")
    f = {g: fg(g, cutoff) for g in range(0, g_max + 1)}
    fv_point = {g: (f[g] - f[g - 1] * gprime).truncate(cutoff)
                for g in range(1, g_max + 1)}

    residuals: dict[str, Series] = {}
    # genus one: 0 = FV1(p) F0 + F0 FV1(p), divided by 2 F0
    doubled = fv_point[1] * f0 + f0 * fv_point[1]
    residuals["fv1-point-vanishes"] = (
        doubled * f0_inv * Fraction(1, 2)
    ).truncate(cutoff)
    for g in range(1, g_max + 1):
        residuals[f"fv{g}-point-vanishes"] = fv_point[g]
        # doubled fiber sum: FVg(p) F0 + F(g-1) FV1(p) = 0
        residuals[f"k3-vanishing-g{g}"] = (
            fv_point[g] * f0 + f[g - 1] * fv_point[1]
        ).truncate(cutoff)
        # genus ladder: Fg = F(g-1) G'
        residuals[f"ladder-g{g}"] = (f[g] - f[g - 1] * gprime).truncate(cutoff)
        # closed form: Fg = F0 (G')^g
        residuals[f"closed-form-g{g}"] = (
            f[g] - f[0] * gprime ** g
        ).truncate(cutoff)
    return residuals
