"""Truncated multivariate power series over the rationals.

Every generating function in the package is carried by :class:`Series`: a
sparse map from exponent vectors to ``Fraction`` coefficients, truncated by a
weighted grading.  Each variable in a :class:`VariableContext` has a
nonnegative integer weight; a monomial is kept only while its total weight is
at most the series cutoff.  Arithmetic is exact -- coefficients are
``fractions.Fraction`` values and are never stored as zero.

One variable per context may be marked *laurent*, in which case negative
exponents are allowed on it.  Its weight must be 0, so truncation never
interacts with the laurent direction.  This is used to track the Euler
characteristic marker, which appears with exponents of both signs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Coeff = Union[Fraction, int]


class SeriesError(ValueError):
    """Base class for series-algebra failures."""


class ContextMismatch(SeriesError):
    """Operands were built over different variable contexts."""


class CutoffExceeded(SeriesError):
    """A coefficient beyond the truncation order was requested.

    This is distinct from the coefficient being zero: the value is unknown
    and the caller must recompute with a larger cutoff.
    """


class VariableContext:
    """Ordered collection of graded formal variables.

    Each entry is a name, a nonnegative integer weight, and a laurent flag.
    Entries may be given as ``"t"`` (weight 1), ``("t", weight)`` or
    ``("lam", 0, True)``.  Names must be unique, at most one variable may be
    laurent, and a laurent variable must have weight 0.
    """

    __slots__ = ("names", "weights", "laurent_index", "_index")

    def __init__(self, *variables):
        names, weights = [], []
        laurent_index = None
        for entry in variables:
            if isinstance(entry, str):
                entry = (entry, 1, False)
            elif len(entry) == 2:
                entry = (entry[0], entry[1], False)
            name, weight, laurent = entry
            if weight < 0:
                raise SeriesError(f"negative weight for variable {name!r}")
            if laurent:
                if laurent_index is not None:
                    raise SeriesError("at most one laurent variable is allowed")
                if weight != 0:
                    raise SeriesError("a laurent variable must have weight 0")
                laurent_index = len(names)
            names.append(name)
            weights.append(weight)
        if len(set(names)) != len(names):
            raise SeriesError("variable names must be unique")
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.laurent_index = laurent_index
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VariableContext)
            and self.names == other.names
            and self.weights == other.weights
            and self.laurent_index == other.laurent_index
        )

    def __hash__(self) -> int:
        return hash((self.names, self.weights, self.laurent_index))

    def __repr__(self) -> str:
        return f"VariableContext{self.names!r}"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SeriesError(f"unknown variable {name!r}") from None

    def exponents(self, powers: Mapping[str, int]) -> tuple[int, ...]:
        """Exponent tuple for ``{name: exponent}``, zero elsewhere."""
        exps = [0] * len(self.names)
        for name, e in powers.items():
            exps[self.index(name)] = e
        return tuple(exps)

    def grading(self, exponents: tuple[int, ...]) -> int:
        return sum(w * e for w, e in zip(self.weights, exponents) if e)

    def validate(self, exponents: tuple[int, ...]) -> None:
        if len(exponents) != len(self.names):
            raise SeriesError("exponent vector has wrong length")
        for i, e in enumerate(exponents):
            if e < 0 and i != self.laurent_index:
                raise SeriesError(
                    f"negative exponent on non-laurent variable {self.names[i]!r}"
                )


class Series:
    """Sparse truncated power series with exact rational coefficients.

    Immutable once constructed; all operations return new series.  Stored
    monomials always satisfy ``grading <= cutoff`` and never carry a zero
    coefficient.  The minimum exponent appearing on the laurent variable is
    tracked as ``laurent_floor`` (0 for series without laurent terms).
    """

    __slots__ = ("context", "cutoff", "terms", "laurent_floor")

    def __init__(self, context: VariableContext, cutoff: int,
                 terms: Mapping[tuple[int, ...], Coeff] | None = None):
        self.context = context
        self.cutoff = cutoff
        clean: dict[tuple[int, ...], Fraction] = {}
        floor = 0
        li = context.laurent_index
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                context.validate(exps)
                c = Fraction(c)
                if not c:
                    continue
                if context.grading(exps) > cutoff:
                    raise SeriesError("term beyond cutoff")
                clean[exps] = c
                if li is not None and exps[li] < floor:
                    floor = exps[li]
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "laurent_floor", floor)

    def __setattr__(self, name, value):
        if name in ("terms", "laurent_floor") and hasattr(self, "laurent_floor"):
            raise AttributeError("Series is immutable")
        object.__setattr__(self, name, value)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, context: VariableContext, cutoff: int) -> "Series":
        return cls(context, cutoff)

    @classmethod
    def constant(cls, context: VariableContext, cutoff: int, c: Coeff) -> "Series":
        exps = (0,) * len(context)
        return cls(context, cutoff, {exps: Fraction(c)})

    @classmethod
    def one(cls, context: VariableContext, cutoff: int) -> "Series":
        return cls.constant(context, cutoff, 1)

    @classmethod
    def term(cls, context: VariableContext, cutoff: int,
             powers: Mapping[str, int], c: Coeff = 1) -> "Series":
        return cls(context, cutoff, {context.exponents(powers): Fraction(c)})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, powers: Mapping[str, int] | tuple[int, ...]) -> Fraction:
        """Coefficient of a monomial; raises :class:`CutoffExceeded` beyond cutoff."""
        if isinstance(powers, tuple):
            exps = powers
        else:
            exps = self.context.exponents(powers)
        self.context.validate(exps)
        if self.context.grading(exps) > self.cutoff:
            raise CutoffExceeded(
                f"monomial {exps} has grading beyond cutoff {self.cutoff}"
            )
        return self.terms.get(exps, Fraction(0))

    def monomials(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """Terms in canonical (graded lexicographic) order."""
        key = lambda e: (self.context.grading(e), e)
        for exps in sorted(self.terms, key=key):
            yield exps, self.terms[exps]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.context == other.context
            and self.cutoff == other.cutoff
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.context, self.cutoff, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        body = self.to_text().replace("\n", "; ")
        return f"Series[cutoff={self.cutoff}]({body})"

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Series") -> None:
        if self.context != other.context:
            raise ContextMismatch("series built over different contexts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.constant(self.context, self.cutoff, other)
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        out = {e: c for e, c in self.terms.items()
               if self.context.grading(e) <= cutoff}
        for e, c in other.terms.items():
            if self.context.grading(e) > cutoff:
                continue
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Series(self.context, cutoff, out)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.context, self.cutoff,
                      {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.constant(self.context, self.cutoff, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series(self.context, self.cutoff,
                          {e: c * other for e, c in self.terms.items()})
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        grading = self.context.grading
        out: dict[tuple[int, ...], Fraction] = {}
        right = [(e, grading(e), c) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            g1 = grading(e1)
            for e2, g2, c2 in right:
                if g1 + g2 > cutoff:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Series(self.context, cutoff, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise SeriesError("negative powers are not supported")
        result = Series.one(self.context, self.cutoff)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def truncate(self, cutoff: int) -> "Series":
        """Drop every term of grading above ``cutoff``."""
        if cutoff > self.cutoff:
            raise SeriesError("cannot raise a cutoff; recompute instead")
        out = {e: c for e, c in self.terms.items()
               if self.context.grading(e) <= cutoff}
        return Series(self.context, cutoff, out)

    # -- transcendental operations ----------------------------------------

    def _grading_zero_part(self) -> list[tuple[int, ...]]:
        return [e for e in self.terms if self.context.grading(e) == 0]

    def exp(self) -> "Series":
        """Exponential ``sum f^n / n!``.

        Requires every term of the argument to have positive grading, so
        only finitely many powers reach each graded piece.  Laurent exponents
        are unrestricted.
        """
        if self._grading_zero_part():
            raise SeriesError("exp needs all terms in positive grading")
        result = Series.one(self.context, self.cutoff)
        power = result
        for n in range(1, self.cutoff + 1):
            power = power * self * Fraction(1, n)
            if power.is_zero():
                break
            result = result + power
        return result

    def log(self) -> "Series":
        """Logarithm ``sum (-1)^(n+1) (f-1)^n / n`` for f with constant term 1."""
        const = (0,) * len(self.context)
        if self.terms.get(const) != 1:
            raise SeriesError("log needs constant term exactly 1")
        g = self - 1
        if g._grading_zero_part():
            raise SeriesError("log needs all non-constant terms in positive grading")
        result = g
        power = g
        for n in range(2, self.cutoff + 1):
            power = power * g
            if power.is_zero():
                break
            result = result + power * Fraction((-1) ** (n + 1), n)
        return result

    def differentiate(self, name: str) -> "Series":
        """Formal partial derivative.  The cutoff drops by the variable weight."""
        i = self.context.index(name)
        cutoff = self.cutoff - self.context.weights[i]
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
        return Series(self.context, cutoff, out)

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form: one term per line, ``num/den var^exp ...``."""
        lines = []
        for exps, c in self.monomials():
            parts = [f"{c.numerator}/{c.denominator}"]
            for name, e in zip(self.context.names, exps):
                if e:
                    parts.append(f"{name}^{e}")
            lines.append(" ".join(parts))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, context: VariableContext, cutoff: int, text: str) -> "Series":
        terms: dict[tuple[int, ...], Fraction] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            head, *factors = line.split()
            num, den = head.split("/")
            powers = {}
            for f in factors:
                name, e = f.rsplit("^", 1)
                powers[name] = int(e)
            exps = context.exponents(powers)
            terms[exps] = terms.get(exps, Fraction(0)) + Fraction(int(num), int(den))
        return cls(context, cutoff, terms)


def geometric_inverse(context: VariableContext, cutoff: int,
                      powers: Mapping[str, int]) -> Series:
    """The expansion of ``1/(1 - x)`` for the monomial ``x``: ``sum x^k``."""
    exps = context.exponents(powers)
    g = context.grading(exps)
    if g <= 0:
        raise SeriesError("geometric inverse needs a positive-grading monomial")
    terms = {}
    k = 0
    while k * g <= cutoff:
        terms[tuple(k * e for e in exps)] = Fraction(1)
        k += 1
    return Series(context, cutoff, terms)
