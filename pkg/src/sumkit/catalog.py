"""Closed-form relative invariants of the model spaces.

These are the computable building blocks fed into the gluing formula: covers
of the sphere relative to one or two points, genus-one counts on the torus
and on the trivial elliptic fibration over the sphere, and rational ruled
surfaces relative to their zero and infinity sections.  Each entry is a
closed form fixed by a dimension count, so the values here double as a test
bed for the dimension bookkeeping in :mod:`sumkit.gluing`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from sumkit.contacts import ContactMultiset, IntersectionMatrix, seq_stats
from sumkit.gluing import (
    Geometry,
    RelKey,
    RelSeries,
    riemann_surface_geometry,
    tw_from_gw,
)
from sumkit.series import Series, VariableContext, geometric_inverse

ContactSeq = Sequence[tuple[int, int]]


class CatalogError(ValueError):
    pass


# -- covers of the sphere relative to two points ------------------------------

def p1_rel(d: int, g: int, s: ContactSeq, s_prime: ContactSeq) -> Fraction:
    """Count of degree-``d`` covers of the sphere relative to two points.

    Nonzero only for genus 0 with a single point of full multiplicity over
    each end, where the ``z -> z^d`` cover contributes ``1/d``.
    """
    if d < 1:
        raise CatalogError("degree must be >= 1")
    ls, degs, _ = seq_stats(s)
    lsp, degsp, _ = seq_stats(s_prime)
    if degs != d or degsp != d:
        raise CatalogError(f"contact degrees {degs}, {degsp} must equal {d}")
    if g == 0 and ls == 1 and lsp == 1:
        return Fraction(1, d)
    return Fraction(0)


def p1_rel_branch(d: int, g: int, s: ContactSeq, s_prime: ContactSeq) -> Fraction:
    """Same count with one fixed simple branch point.

    The dimension count leaves genus 0 with three contact points in total;
    each such configuration contributes exactly 1.
    """
    if d < 1:
        raise CatalogError("degree must be >= 1")
    ls, degs, _ = seq_stats(s)
    lsp, degsp, _ = seq_stats(s_prime)
    if degs != d or degsp != d:
        raise CatalogError(f"contact degrees {degs}, {degsp} must equal {d}")
    if g == 0 and ls + lsp == 3:
        return Fraction(1)
    return Fraction(0)


def p1_tw_series(cutoff: int) -> RelSeries:
    """Disconnected two-ended cover series of the sphere.

    Every contributing map is a disjoint union of full-multiplicity covers,
    so this equals the convolution identity on the degree bookkeeping and
    its scattering matrix is trivial.
    """
    geo = riemann_surface_geometry()
    terms = {}
    for d in range(1, cutoff + 1):
        key = RelKey((d,), 2, (ContactMultiset([((d, 0), 1)]),
                               ContactMultiset([((d, 0), 1)])))
        terms[key] = p1_rel(d, 0, [(d, 0)], [(d, 0)])
    return tw_from_gw(RelSeries(geo, 2, cutoff, terms))


# -- torus ---------------------------------------------------------------------

def torus_context() -> VariableContext:
    return VariableContext("t")


def torus_rel_series(cutoff: int, points: int = 0) -> Series:
    """Genus-one cover counts of the torus relative to ``points`` marked points.

    The count is independent of the number of relative points; it equals the
    divisor-sum generating function, computed here from the expansion
    ``sum_d d t^d / (1 - t^d)``.
    """
    if points < 0:
        raise CatalogError("points must be >= 0")
    ctx = torus_context()
    total = Series.zero(ctx, cutoff)
    for d in range(1, cutoff + 1):
        total = total + geometric_inverse(ctx, cutoff, {"t": d}) \
            * Series.term(ctx, cutoff, {"t": d}, d)
    return total


# -- the trivial elliptic fibration over the sphere -----------------------------

T2S2_FAMILIES = ("df-absolute", "df-relF", "s+df-absolute", "s+df-relF")


def t2s2_series(family: str, cutoff: int) -> Series:
    """Genus-one count series on the product of a torus and a sphere.

    Fiber classes: the absolute count is twice the relative one (covers of
    the zero and infinity fibers versus one of them).  Section-plus-fiber
    classes with two point constraints: the same with the divisor-sum series
    replaced by its derivative (the marked point moves on the fiber cover).
    """
    g = torus_rel_series(cutoff + 1)
    if family == "df-absolute":
        return g.truncate(cutoff) * 2
    if family == "df-relF":
        return g.truncate(cutoff)
    if family == "s+df-absolute":
        return g.differentiate("t") * 2
    if family == "s+df-relF":
        return g.differentiate("t")
    raise CatalogError(f"unknown family {family!r}; expected one of {T2S2_FAMILIES}")


def t2s2_two_fiber(family: str, constraint: str, cutoff: int
                   ) -> tuple[bool, Series]:
    """Counts relative to two fibers, reported with their torus-class support.

    Returns ``(supported_only_at_trivial_refinement, series)``.  For fiber
    classes everything vanishes; for section-plus-fiber classes the counts
    sit entirely at the trivial refinement class and reproduce the
    one-fiber values, except that fixing both contact points kills them.
    """
    ctx = torus_context()
    if family not in ("df", "s+df"):
        raise CatalogError("family must be 'df' or 's+df'")
    if family == "df":
        return True, Series.zero(ctx, cutoff)
    if constraint == "p^2":
        return True, t2s2_series("s+df-absolute", cutoff)
    if constraint == "p;C1(p)":
        return True, t2s2_series("s+df-relF", cutoff)
    if constraint == "C1(p);C1(p)":
        return True, Series.zero(ctx, cutoff)
    raise CatalogError(f"unknown constraint {constraint!r}")


# -- rational ruled surfaces -----------------------------------------------------

@dataclass(frozen=True)
class RuledInvariant:
    """Value of a ruled-surface relative invariant.

    ``divisor_tensor`` marks values carried by the section-class tensor
    (zero section on one side plus infinity section on the other) rather
    than by a plain number.
    """

    value: Fraction
    divisor_tensor: bool = False


def vanishing_filter(a: int, g: int, deg_alpha: int) -> bool:
    """Dimension filter for ruled-surface invariants: ``2a + g <= 1 + deg(alpha)``.

    Returns True when the invariant is allowed to be nonzero.
    """
    return 2 * a + g <= 1 + deg_alpha


def ruled_rel(n: int, a: int, b: int, g: int, s: ContactSeq, s_prime: ContactSeq,
              constraint: str = "none", contacts_fixed: bool = False
              ) -> RuledInvariant:
    """Relative invariants of the ruled surface with twisting index ``n``.

    The class is ``a*(zero section) + b*(fiber)``; ``s`` and ``s_prime`` are the
    contacts with the zero and infinity sections, of total multiplicity ``b``
    and ``b + n*a``.  Without constraints, only multiple fiber classes
    survive, with a single full-multiplicity contact at each end, value
    ``1/b`` on the section-class tensor.  With one point constraint the
    fiber case contributes 1, and the section case (``a = 1``, genus 0)
    contributes 1 once every contact point is held fixed.
    """
    if n < 0:
        raise CatalogError("twisting index must be >= 0")
    ls, degs, _ = seq_stats(s)
    lsp, degsp, _ = seq_stats(s_prime)
    if degs != b or degsp != b + n * a:
        raise CatalogError(
            f"contact degrees ({degs}, {degsp}) must be ({b}, {b + n * a})"
        )
    if constraint == "none":
        if not vanishing_filter(a, g, 0):
            return RuledInvariant(Fraction(0))
        if a == 0 and g == 0 and b > 0 and ls == 1 and lsp == 1:
            return RuledInvariant(Fraction(1, b), divisor_tensor=True)
        return RuledInvariant(Fraction(0))
    if constraint == "point":
        if not vanishing_filter(a, g, 1):
            return RuledInvariant(Fraction(0))
        if a == 0 and g == 0 and b > 0 and ls == 1 and lsp == 1:
            return RuledInvariant(Fraction(1))
        if a == 1 and g == 0 and b >= 0:
            return RuledInvariant(Fraction(1 if contacts_fixed else 0))
        return RuledInvariant(Fraction(0))
    raise CatalogError(f"unknown constraint {constraint!r}")


def ruled_geometry(n: int) -> Geometry:
    """Class bookkeeping for the ruled surface: classes ``a*S + b*F``.

    The divisor pairing is against the infinity section (degree ``b``);
    the canonical pairing is ``-(n + 2) a - 2 b``.
    """
    return Geometry(
        class_dim=2,
        v_degree=(0, 1),
        canonical_k=(-(n + 2), -2),
        grading=(1, 1),
        v_basis=2,
    )


# -- the addressable catalog ------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    producer: Callable[[int], object]


def _ruled_table(n: int) -> Callable[[int], list[dict]]:
    def produce(cutoff: int) -> list[dict]:
        rows = []
        for b in range(1, cutoff + 1):
            plain = ruled_rel(n, 0, b, 0, [(b, 0)], [(b, 0)], "none")
            point = ruled_rel(n, 0, b, 0, [(b, 0)], [(b, 0)], "point")
            rows.append({
                "class": f"{b}F",
                "unconstrained": str(plain.value),
                "tensor": plain.divisor_tensor,
                "point": str(point.value),
            })
        sect = ruled_rel(n, 1, 0, 0, [], [(1, 0)] * n, "point", contacts_fixed=True)
        rows.append({
            "class": "S",
            "unconstrained": "0",
            "tensor": False,
            "point": str(sect.value),
        })
        return rows

    return produce


def catalog_entries() -> dict[str, CatalogEntry]:
    entries = {
        "p1": CatalogEntry(
            "p1", "two-point relative cover series of the sphere",
            p1_tw_series),
        "torus": CatalogEntry(
            "torus", "genus-one relative cover series of the torus",
            torus_rel_series),
        "t2xs2": CatalogEntry(
            "t2xs2", "genus-one series of the trivial elliptic fibration",
            lambda cutoff: {fam: t2s2_series(fam, cutoff)
                            for fam in T2S2_FAMILIES}),
    }
    for n in range(0, 4):
        entries[f"ruled:{n}"] = CatalogEntry(
            f"ruled:{n}", f"ruled surface invariants, twisting index {n}",
            _ruled_table(n))
    return entries
