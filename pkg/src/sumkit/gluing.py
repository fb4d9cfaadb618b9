"""Relative-count series and the gluing convolution algebra.

A :class:`RelSeries` is a coefficient table for curve counts relative to a
divisor: each key records a homology class (an integer vector), the Euler
characteristic of the domain, one contact multiset per divisor end, and an
opaque constraint tag.  Two products live on these tables:

* the *disjoint product*, under which classes and Euler characteristics add
  and contact multisets merge with binomial weights -- this is the product in
  which the disconnected-count series is the exponential of the
  connected-count series;

* the *convolution*, which glues the last end of one series to the first end
  of another.  The glued coefficient sums over contact multisets ``m`` with
  total multiplicity equal to the class pairing against the divisor, weighted
  by ``|m|/m!``, pairing one side against the dual basis expansion.  Euler
  characteristics combine as ``chi1 + chi2 - 2*len(m)``.

The fiber-cover series :func:`identity_element` is the convolution unit; the
scattering matrix of a two-ended series ``I + R`` is its convolution inverse,
computed as the alternating sum of convolution powers of ``R`` (a finite sum,
because every non-trivial term carries positive base grading).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from sumkit.contacts import (
    ContactMultiset,
    IntersectionMatrix,
    dual_multiset,
    enumerate_multisets,
    multiset_binomial,
    multiset_degree,
    multiset_length,
    multiset_stats,
)
from sumkit.series import Series, VariableContext

ClassKey = tuple[int, ...]


class GluingError(ValueError):
    pass


def _dot(vec: tuple[int, ...], key: ClassKey) -> int:
    if len(vec) != len(key):
        raise GluingError("class key has wrong dimension")
    return sum(a * b for a, b in zip(vec, key))


@dataclass(frozen=True)
class Geometry:
    """Linear bookkeeping data for one space relative to a divisor.

    ``class_dim`` is the length of the integer vectors naming homology
    classes.  ``v_degree`` and ``canonical_k`` are linear functionals (stored
    as coefficient vectors) giving the pairing of a class with the divisor
    and with the canonical class.  ``grading`` is the nonnegative functional
    used for truncation.  ``v_basis`` is the size of the divisor homology
    basis indexing contact points.  For spaces that serve as necks,
    ``fiber`` names the class of an irreducible fiber; it must pair to 1
    with the divisor.
    """

    class_dim: int
    v_degree: tuple[int, ...]
    canonical_k: tuple[int, ...]
    grading: tuple[int, ...]
    v_basis: int = 1
    fiber: ClassKey | None = None

    def __post_init__(self):
        for name in ("v_degree", "canonical_k", "grading"):
            if len(getattr(self, name)) != self.class_dim:
                raise GluingError(f"{name} has wrong dimension")
        if self.fiber is not None:
            if len(self.fiber) != self.class_dim:
                raise GluingError("fiber has wrong dimension")
            if _dot(self.v_degree, self.fiber) != 1:
                raise GluingError("fiber class must pair to 1 with the divisor")

    def pair_v(self, key: ClassKey) -> int:
        return _dot(self.v_degree, key)

    def pair_k(self, key: ClassKey) -> int:
        return _dot(self.canonical_k, key)

    def grade(self, key: ClassKey) -> int:
        return _dot(self.grading, key)

    def zero_key(self) -> ClassKey:
        return (0,) * self.class_dim

    def add(self, k1: ClassKey, k2: ClassKey) -> ClassKey:
        return tuple(a + b for a, b in zip(k1, k2))

    def to_json(self) -> dict:
        return {
            "class_dim": self.class_dim,
            "v_degree": list(self.v_degree),
            "canonical_k": list(self.canonical_k),
            "grading": list(self.grading),
            "v_basis": self.v_basis,
            "fiber": list(self.fiber) if self.fiber is not None else None,
        }


def neck_geometry(base_dim: int = 1, v_basis: int = 1,
                  base_canonical: tuple[int, ...] | None = None) -> Geometry:
    """Standard two-ended model: classes ``(fiber multiple, base part)``.

    The first coordinate counts fiber multiples (it pairs to 1 with the
    divisor and is absorbed when gluing); the remaining ``base_dim``
    coordinates are base classes whose grading drives truncation.
    """
    dim = 1 + base_dim
    if base_canonical is None:
        base_canonical = (0,) * base_dim
    return Geometry(
        class_dim=dim,
        v_degree=(1,) + (0,) * base_dim,
        canonical_k=(-2,) + tuple(base_canonical),
        grading=(1,) * dim,
        v_basis=v_basis,
        fiber=(1,) + (0,) * base_dim,
    )


def riemann_surface_geometry() -> Geometry:
    """Degree bookkeeping for covers of a sphere relative to points."""
    return Geometry(class_dim=1, v_degree=(1,), canonical_k=(-2,),
                    grading=(1,), v_basis=1, fiber=(1,))


# -- constraint tags ---------------------------------------------------------

def tag_mul(t1: str, t2: str) -> str:
    """Commutative product of constraint tags.

    Tags are canonical strings: semicolon-joined sorted atoms, repeated atoms
    contracted to ``atom^count``.  The unit tag is ``"1"``.
    """
    counts: dict[str, int] = {}
    for t in (t1, t2):
        for atom in t.split(";"):
            atom = atom.strip()
            if not atom or atom == "1":
                continue
            if "^" in atom:
                base, _, mult = atom.rpartition("^")
                if mult.isdigit():
                    counts[base] = counts.get(base, 0) + int(mult)
                    continue
            counts[atom] = counts.get(atom, 0) + 1
    if not counts:
        return "1"
    parts = []
    for atom in sorted(counts):
        n = counts[atom]
        parts.append(atom if n == 1 else f"{atom}^{n}")
    return ";".join(parts)


@dataclass(frozen=True, order=True)
class RelKey:
    """Index of one coefficient: class, Euler characteristic, contacts, tag."""

    class_key: ClassKey
    chi: int
    contacts: tuple[ContactMultiset, ...]
    tag: str = "1"

    def __post_init__(self):
        if self.chi % 2:
            raise GluingError("Euler characteristic must be even")

    def to_json(self) -> dict:
        return {
            "class": list(self.class_key),
            "chi": self.chi,
            "contacts": [m.to_string() for m in self.contacts],
            "tag": self.tag,
        }


class RelSeries:
    """Truncated table of relative curve counts.

    Keys are :class:`RelKey` values with ``end_count`` contact multisets
    each; every stored key satisfies ``grade(class) <= cutoff`` and, on each
    end, ``deg(contacts) == pair_v(class)``.  Values are nonzero Fractions.
    Immutable.
    """

    __slots__ = ("geometry", "end_count", "cutoff", "terms")

    def __init__(self, geometry: Geometry, end_count: int, cutoff: int,
                 terms: Mapping[RelKey, Fraction | int] | None = None):
        if end_count not in (0, 1, 2):
            raise GluingError("end_count must be 0, 1 or 2")
        clean: dict[RelKey, Fraction] = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                if len(key.class_key) != geometry.class_dim:
                    raise GluingError("class key has wrong dimension")
                if len(key.contacts) != end_count:
                    raise GluingError("key has wrong number of ends")
                if geometry.grade(key.class_key) > cutoff:
                    raise GluingError("term beyond cutoff")
                if geometry.grade(key.class_key) < 0:
                    raise GluingError("negative grading")
                deg_v = geometry.pair_v(key.class_key)
                for m in key.contacts:
                    if multiset_degree(m) != deg_v:
                        raise GluingError(
                            f"contact degree {multiset_degree(m)} != class "
                            f"pairing {deg_v} for key {key}"
                        )
                clean[key] = c
        object.__setattr__(self, "geometry", geometry)
        object.__setattr__(self, "end_count", end_count)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("RelSeries is immutable")

    # -- basics -------------------------------------------------------------

    @classmethod
    def zero(cls, geometry: Geometry, end_count: int, cutoff: int) -> "RelSeries":
        return cls(geometry, end_count, cutoff)

    @classmethod
    def unit(cls, geometry: Geometry, end_count: int, cutoff: int) -> "RelSeries":
        """Coefficient 1 on the empty-curve key."""
        key = RelKey(geometry.zero_key(), 0,
                     tuple(ContactMultiset() for _ in range(end_count)))
        return cls(geometry, end_count, cutoff, {key: 1})

    def coefficient(self, key: RelKey) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, RelSeries)
            and self.geometry == other.geometry
            and self.end_count == other.end_count
            and self.cutoff == other.cutoff
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.geometry, self.end_count, self.cutoff,
                     frozenset(self.terms.items())))

    def __repr__(self):
        return (f"RelSeries(ends={self.end_count}, cutoff={self.cutoff}, "
                f"terms={len(self.terms)})")

    def sorted_keys(self) -> list[RelKey]:
        return sorted(
            self.terms,
            key=lambda k: (self.geometry.grade(k.class_key), k.class_key,
                           k.chi, k.contacts, k.tag),
        )

    def __add__(self, other: "RelSeries") -> "RelSeries":
        self._compatible(other)
        cutoff = min(self.cutoff, other.cutoff)
        out = {k: c for k, c in self.terms.items()
               if self.geometry.grade(k.class_key) <= cutoff}
        for k, c in other.terms.items():
            if self.geometry.grade(k.class_key) > cutoff:
                continue
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RelSeries(self.geometry, self.end_count, cutoff, out)

    def __sub__(self, other: "RelSeries") -> "RelSeries":
        return self + other.scale(-1)

    def scale(self, c: Fraction | int) -> "RelSeries":
        return RelSeries(self.geometry, self.end_count, self.cutoff,
                         {k: v * c for k, v in self.terms.items()})

    def _compatible(self, other: "RelSeries") -> None:
        if self.geometry != other.geometry or self.end_count != other.end_count:
            raise GluingError("incompatible series")

    # -- the disjoint (disconnected-union) product ---------------------------

    def disjoint_mul(self, other: "RelSeries") -> "RelSeries":
        """Product under disjoint union of curves.

        Classes and Euler characteristics add, tags multiply, and contact
        multisets merge; merging multiplies by the binomial count of ways to
        split the merged multiset, matching the divided-power normalization
        of the coefficient tables.
        """
        self._compatible(other)
        cutoff = min(self.cutoff, other.cutoff)
        geo = self.geometry
        out: dict[RelKey, Fraction] = {}
        for k1, c1 in self.terms.items():
            g1 = geo.grade(k1.class_key)
            for k2, c2 in other.terms.items():
                if g1 + geo.grade(k2.class_key) > cutoff:
                    continue
                contacts = tuple(a.union(b)
                                 for a, b in zip(k1.contacts, k2.contacts))
                weight = Fraction(1)
                for merged, part in zip(contacts, k1.contacts):
                    weight *= multiset_binomial(merged, part)
                key = RelKey(geo.add(k1.class_key, k2.class_key),
                             k1.chi + k2.chi, contacts,
                             tag_mul(k1.tag, k2.tag))
                s = out.get(key, Fraction(0)) + weight * c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return RelSeries(geo, self.end_count, cutoff, out)

    def _positive_grading_part(self) -> "RelSeries":
        geo = self.geometry
        bad = [k for k in self.terms if geo.grade(k.class_key) == 0]
        if bad:
            raise GluingError(
                f"terms of grading zero obstruct the exponential: {bad[:3]}"
            )
        return self


def tw_from_gw(gw: RelSeries) -> RelSeries:
    """Disconnected counts from connected ones: the disjoint-product exponential."""
    gw._positive_grading_part()
    result = RelSeries.unit(gw.geometry, gw.end_count, gw.cutoff)
    power = result
    for n in range(1, gw.cutoff + 1):
        power = power.disjoint_mul(gw).scale(Fraction(1, n))
        if power.is_zero():
            break
        result = result + power
    return result


def gw_from_tw(tw: RelSeries) -> RelSeries:
    """Connected counts from disconnected ones: the disjoint-product logarithm."""
    unit_key = RelKey(tw.geometry.zero_key(), 0,
                      tuple(ContactMultiset() for _ in range(tw.end_count)))
    if tw.coefficient(unit_key) != 1:
        raise GluingError("series must have coefficient 1 on the empty key")
    rest = tw - RelSeries.unit(tw.geometry, tw.end_count, tw.cutoff)
    rest._positive_grading_part()
    result = rest
    power = rest
    for n in range(2, tw.cutoff + 1):
        power = power.disjoint_mul(rest)
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    return result


# -- convolution --------------------------------------------------------------

GlueMap = Callable[[ClassKey, ClassKey, int], ClassKey]


def glue_add(k1: ClassKey, k2: ClassKey, deg_m: int) -> ClassKey:
    return tuple(a + b for a, b in zip(k1, k2))


def make_neck_glue(fiber: ClassKey) -> GlueMap:
    """Componentwise sum with the matched fiber multiples absorbed."""

    def glue(k1: ClassKey, k2: ClassKey, deg_m: int) -> ClassKey:
        return tuple(a + b - deg_m * f for a, b, f in zip(k1, k2, fiber))

    return glue


def _default_glue(x: RelSeries, y: RelSeries) -> GlueMap:
    if x.geometry == y.geometry and x.geometry.fiber is not None:
        return make_neck_glue(x.geometry.fiber)
    if x.geometry.class_dim == y.geometry.class_dim:
        return glue_add
    raise GluingError("no default glue map for these geometries; pass glue=")


def convolve(x: RelSeries, y: RelSeries, q: IntersectionMatrix, *,
             glue: GlueMap | None = None,
             out_geometry: Geometry | None = None) -> RelSeries:
    """Glue the last end of ``x`` to the first end of ``y``.

    The coefficient of an output key sums ``(|m|/m!) * x(..., m) *
    y(dual(m), ...)`` over contact multisets ``m`` whose total multiplicity
    matches the divisor pairing of the class on each side; the dual
    expansion splits the divisor diagonal through ``q``.  Euler
    characteristics combine as ``chi1 + chi2 - 2*len(m)``.

    ``glue`` maps the two class keys (and the matched multiplicity) to the
    output class key; by default keys add, with fiber multiples absorbed on
    a shared neck geometry.
    """
    if x.end_count < 1 or y.end_count < 1:
        raise GluingError("both factors need an end to glue")
    if x.geometry.v_basis != y.geometry.v_basis or x.geometry.v_basis != q.size:
        raise GluingError("divisor basis sizes do not match the pairing")
    if glue is None:
        glue = _default_glue(x, y)
    if out_geometry is None:
        if x.geometry == y.geometry:
            out_geometry = x.geometry
        else:
            raise GluingError("pass out_geometry when gluing across geometries")
    out_ends = (x.end_count - 1) + (y.end_count - 1)
    if out_ends > 2:
        raise GluingError("output would have more than two ends")
    cutoff = min(x.cutoff, y.cutoff)

    # Index both factors by (class key, glued-end multiset).
    x_index: dict[tuple[ClassKey, ContactMultiset], list[tuple[RelKey, Fraction]]] = {}
    for k, c in x.terms.items():
        x_index.setdefault((k.class_key, k.contacts[-1]), []).append((k, c))
    y_index: dict[tuple[ClassKey, ContactMultiset], list[tuple[RelKey, Fraction]]] = {}
    for k, c in y.terms.items():
        y_index.setdefault((k.class_key, k.contacts[0]), []).append((k, c))

    x_classes = {k.class_key for k in x.terms}
    y_classes = {k.class_key for k in y.terms}

    out: dict[RelKey, Fraction] = {}
    for ax in x_classes:
        deg_m = x.geometry.pair_v(ax)
        if deg_m < 0:
            continue
        for ay in y_classes:
            if y.geometry.pair_v(ay) != deg_m:
                continue
            for m in enumerate_multisets(deg_m, q.size):
                left = x_index.get((ax, m))
                if not left:
                    continue
                length, _, product, fact = multiset_stats(m)
                weight = Fraction(product, fact)
                for m_dual, w_dual in dual_multiset(m, q).items():
                    right = y_index.get((ay, m_dual))
                    if not right:
                        continue
                    for kx, cx in left:
                        for ky, cy in right:
                            key = RelKey(
                                glue(ax, ay, deg_m),
                                kx.chi + ky.chi - 2 * length,
                                kx.contacts[:-1] + ky.contacts[1:],
                                tag_mul(kx.tag, ky.tag),
                            )
                            if out_geometry.grade(key.class_key) > cutoff:
                                continue
                            s = out.get(key, Fraction(0)) \
                                + weight * w_dual * cx * cy
                            if s:
                                out[key] = s
                            else:
                                del out[key]
    return RelSeries(out_geometry, out_ends, cutoff, out)


def convolve_via_operator(x: RelSeries, y: RelSeries, q: IntersectionMatrix, *,
                          glue: GlueMap | None = None,
                          out_geometry: Geometry | None = None) -> RelSeries:
    """Convolution computed through the bilinear differential operator.

    Packs the glued-end contacts of each side into divided-power polynomial
    generating functions in variables ``z(a,i)`` and ``w(a,j)``, applies the
    exponential of ``sum a * q[i][j] * d/dz(a,i) d/dw(a,j)`` to their
    product, and reads off the constant term, with each operator application
    accounting for one glued contact in the Euler characteristic.  Must agree
    exactly with :func:`convolve`; the two paths share no weight bookkeeping.
    """
    if x.end_count < 1 or y.end_count < 1:
        raise GluingError("both factors need an end to glue")
    if x.geometry.v_basis != y.geometry.v_basis or x.geometry.v_basis != q.size:
        raise GluingError("divisor basis sizes do not match the pairing")
    if glue is None:
        glue = _default_glue(x, y)
    if out_geometry is None:
        if x.geometry == y.geometry:
            out_geometry = x.geometry
        else:
            raise GluingError("pass out_geometry when gluing across geometries")
    out_ends = (x.end_count - 1) + (y.end_count - 1)
    cutoff = min(x.cutoff, y.cutoff)
    basis = q.size

    # Group terms by everything except the glued-end multiset.
    def group(series: RelSeries, end: int):
        grouped: dict[tuple, dict[ContactMultiset, Fraction]] = {}
        for k, c in series.terms.items():
            outer = k.contacts[:end] + k.contacts[end + 1:]
            rest = (k.class_key, k.chi, outer, k.tag)
            grouped.setdefault(rest, {})[k.contacts[end]] = c
        return grouped

    gx = group(x, x.end_count - 1)
    gy = group(y, 0)

    max_deg = 0
    for (ax, _, _, _) in gx:
        max_deg = max(max_deg, x.geometry.pair_v(ax))
    # weight-0 variables: these polynomials are exact, never truncated
    names = []
    for a in range(1, max_deg + 1):
        for i in range(basis):
            names.append((f"z{a}_{i}", 0))
    for a in range(1, max_deg + 1):
        for i in range(basis):
            names.append((f"w{a}_{i}", 0))
    ctx = VariableContext(*names) if names else VariableContext(("z1_0", 0))
    poly_cutoff = 0

    def packed(table: Mapping[ContactMultiset, Fraction], prefix: str) -> Series:
        total = Series.zero(ctx, poly_cutoff)
        for m, c in table.items():
            _, _, _, fact = multiset_stats(m)
            powers = {f"{prefix}{a}_{i}": n for (a, i), n in m}
            total = total + Series.term(ctx, poly_cutoff, powers,
                                        Fraction(c, fact))
        return total

    out: dict[RelKey, Fraction] = {}
    zero_exps = (0,) * len(ctx)
    for (ax, chi_x, outer_x, tag_x), table_x in gx.items():
        deg_m = x.geometry.pair_v(ax)
        if deg_m < 0:
            continue
        fx = packed(table_x, "z")
        for (ay, chi_y, outer_y, tag_y), table_y in gy.items():
            if y.geometry.pair_v(ay) != deg_m:
                continue
            out_class = glue(ax, ay, deg_m)
            if out_geometry.grade(out_class) > cutoff:
                continue
            fy = packed(table_y, "w")
            p = fx * fy
            k = 0
            while not p.is_zero():
                c0 = p.terms.get(zero_exps)
                if c0:
                    key = RelKey(out_class, chi_x + chi_y - 2 * k,
                                 outer_x + outer_y, tag_mul(tag_x, tag_y))
                    s = out.get(key, Fraction(0)) + c0
                    if s:
                        out[key] = s
                    else:
                        del out[key]
                # apply the bilinear operator once and divide by the new count
                k += 1
                nxt = Series.zero(ctx, poly_cutoff)
                for a in range(1, deg_m + 1):
                    for i in range(basis):
                        dzi = p.differentiate(f"z{a}_{i}")
                        if dzi.is_zero():
                            continue
                        for j in range(basis):
                            if not q[i, j]:
                                continue
                            dd = dzi.differentiate(f"w{a}_{j}")
                            if dd.is_zero():
                                continue
                            nxt = nxt + dd * (a * q[i, j])
                p = nxt * Fraction(1, k)
    return RelSeries(out_geometry, out_ends, cutoff, out)


# -- scattering ---------------------------------------------------------------

def identity_element(geometry: Geometry, q: IntersectionMatrix,
                     cutoff: int) -> RelSeries:
    """The convolution unit: the disconnected series of plain fiber covers.

    A multiplicity-``a`` cover of a fiber meets each divisor copy once with
    multiplicity ``a``, contributes Euler characteristic 2, and carries the
    inverse pairing on its two contact labels, weighted ``1/a``.  Convolving
    with the resulting disconnected series leaves any series unchanged.
    """
    cached = _identity_cache.get((geometry, q, cutoff))
    if cached is not None:
        return cached
    result = _identity_element_uncached(geometry, q, cutoff)
    _identity_cache[(geometry, q, cutoff)] = result
    return result


_identity_cache: dict[tuple, RelSeries] = {}


def _identity_element_uncached(geometry: Geometry, q: IntersectionMatrix,
                               cutoff: int) -> RelSeries:
    if geometry.fiber is None:
        raise GluingError("identity element needs a geometry with a fiber class")
    if q.size != geometry.v_basis:
        raise GluingError("pairing size does not match the divisor basis")
    qinv = q.inverse()
    fiber_grade = geometry.grade(geometry.fiber)
    if fiber_grade < 1:
        raise GluingError("fiber class must have positive grading")
    terms: dict[RelKey, Fraction] = {}
    a = 1
    while a * fiber_grade <= cutoff:
        class_key = tuple(a * f for f in geometry.fiber)
        for i in range(q.size):
            for j in range(q.size):
                w = qinv[i, j]
                if not w:
                    continue
                key = RelKey(class_key, 2,
                             (ContactMultiset([((a, i), 1)]),
                              ContactMultiset([((a, j), 1)])))
                terms[key] = Fraction(1, a) * w
        a += 1
    gw = RelSeries(geometry, 2, cutoff, terms)
    return tw_from_gw(gw)


def _base_grading(geometry: Geometry, key: ClassKey) -> int:
    """Grading with the fiber direction projected out."""
    if geometry.fiber is None:
        return geometry.grade(key)
    return geometry.grade(key) - geometry.pair_v(key) * geometry.grade(geometry.fiber)


def s_matrix(twf: RelSeries, q: IntersectionMatrix) -> RelSeries:
    """Convolution inverse of a two-ended series of the form unit + R.

    ``R`` must have strictly positive base grading on every term (true of
    every non-fiber contribution), which makes its convolution powers vanish
    at the cutoff; the inverse is the alternating sum of those powers.
    """
    if twf.end_count != 2:
        raise GluingError("scattering input must be two-ended")
    ident = identity_element(twf.geometry, q, twf.cutoff)
    r = twf - ident
    for key in r.terms:
        if _base_grading(twf.geometry, key.class_key) < 1:
            raise GluingError(
                "series does not have unit fiber part: residual term "
                f"{key} lacks positive base grading"
            )
    result = ident
    power = ident
    sign = 1
    for _ in range(twf.cutoff + 1):
        power = convolve(power, r, q)
        if power.is_zero():
            break
        sign = -sign
        result = result + power.scale(sign)
    else:
        if not power.is_zero():
            raise GluingError("residual part is not nilpotent at this cutoff")
    return result


def neck_identity(twf: RelSeries, n: int, q: IntersectionMatrix) -> RelSeries:
    """Alternating binomial sum of convolution powers from an n-fold neck cut.

    Evaluates ``sum_{k=1..2n} (-1)^(k-1) C(2n, k) * twf^(k-1)`` under
    convolution.  When the residual square vanishes at the cutoff this equals
    the scattering matrix for every ``n >= 1``.
    """
    if n < 1:
        raise GluingError("neck count must be >= 1")
    if twf.end_count != 2:
        raise GluingError("scattering input must be two-ended")
    power = identity_element(twf.geometry, q, twf.cutoff)
    total = power.scale(math.comb(2 * n, 1))
    for k in range(2, 2 * n + 1):
        power = convolve(power, twf, q)
        if power.is_zero():
            break
        total = total + power.scale((-1) ** (k - 1) * math.comb(2 * n, k))
    return total


def inclusion_exclusion_check(length: int) -> int:
    """Alternating binomial sum ``l - C(l,2) + C(l,3) - ... (+-) C(l,l)``."""
    if length < 1:
        raise GluingError("need length >= 1")
    return sum((-1) ** (k - 1) * math.comb(length, k)
               for k in range(1, length + 1))


# -- dimension bookkeeping ----------------------------------------------------

def moduli_dimension(geometry: Geometry, class_key: ClassKey, chi: int,
                     n_points: int, contacts: Iterable[tuple[int, int]],
                     dim_x: int) -> int:
    """Expected real dimension of the space of relative maps.

    ``-2 K[A] + (chi/2)(dim X - 6) + 2 n - 2 (deg s - len s)`` where ``s``
    runs over all contact points (both ends together) and ``chi`` is the
    Euler characteristic of the domain.  Each contact of multiplicity ``a``
    cuts the dimension by ``2(a - 1)``.
    """
    deg_s = 0
    len_s = 0
    for a, _ in contacts:
        deg_s += a
        len_s += 1
    return (-2 * geometry.pair_k(class_key)
            + (chi * (dim_x - 6)) // 2
            + 2 * n_points
            - 2 * (deg_s - len_s))


def sum_canonical(k_x: int, k_y: int, beta: int) -> int:
    """Canonical pairing of a glued class: ``K_X[C1] + K_Y[C2] + 2 beta``.

    ``beta`` is the common intersection number of the two halves with the
    divisor.  Classes swept out by circles of the divisor pair to zero.
    """
    return k_x + k_y + 2 * beta


# -- serialization -------------------------------------------------------------

def relseries_to_json(series: RelSeries) -> dict:
    return {
        "geometry": series.geometry.to_json(),
        "end_count": series.end_count,
        "cutoff": series.cutoff,
        "terms": [
            dict(series_key.to_json(),
                 coeff=f"{series.terms[series_key].numerator}/"
                       f"{series.terms[series_key].denominator}")
            for series_key in series.sorted_keys()
        ],
    }


def relseries_from_json(data: dict) -> RelSeries:
    g = data["geometry"]
    geometry = Geometry(
        class_dim=g["class_dim"],
        v_degree=tuple(g["v_degree"]),
        canonical_k=tuple(g["canonical_k"]),
        grading=tuple(g["grading"]),
        v_basis=g["v_basis"],
        fiber=tuple(g["fiber"]) if g.get("fiber") is not None else None,
    )
    terms = {}
    for t in data["terms"]:
        num, den = t["coeff"].split("/")
        key = RelKey(tuple(t["class"]), t["chi"],
                     tuple(ContactMultiset.from_string(s) for s in t["contacts"]),
                     t["tag"])
        terms[key] = Fraction(int(num), int(den))
    return RelSeries(geometry, data["end_count"], data["cutoff"], terms)
