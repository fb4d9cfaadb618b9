"""Exact truncated power series: the arithmetic every module runs on.

Builds the divisor-sum series two ways, exponentiates, and shows that all
coefficients stay exact rationals.
"""

from fractions import Fraction

from sumkit.oracles import divisor_sum
from sumkit.series import Series, VariableContext, geometric_inverse


def main():
    ctx = VariableContext("t", ("lam", 0, True))
    cutoff = 12

    # G(t) = sum sigma(n) t^n, from trial division
    sigma = Series(ctx, cutoff, {
        ctx.exponents({"t": n}): divisor_sum(n) for n in range(1, cutoff + 1)
    })
    print("divisor-sum series:")
    print(sigma.to_text())

    # the same series from sum_d d t^d / (1 - t^d)
    geometric = Series.zero(ctx, cutoff)
    for d in range(1, cutoff + 1):
        geometric = geometric + geometric_inverse(ctx, cutoff, {"t": d}) \
            * Series.term(ctx, cutoff, {"t": d}, d)
    print("\nagrees with the geometric-series route:", sigma == geometric)

    # exponentials track disconnected counts; the Euler marker is laurent
    connected = Series.term(ctx, cutoff, {"t": 1, "lam": -2}, Fraction(1, 2))
    disconnected = connected.exp()
    print("\nexp of (1/2) t lam^-2, coefficient of t^3 lam^-6:",
          disconnected.coefficient({"t": 3, "lam": -6}), "(= (1/2)^3 / 3!)")
    print("log recovers the input exactly:",
          disconnected.log() == connected)


if __name__ == "__main__":
    main()
