"""The gluing convolution and the scattering matrix.

Glues the two-point relative cover series of the sphere to itself (nothing
changes: those covers are the convolution unit), then perturbs a neck series
and inverts it with the alternating-power scattering expansion.
"""

import random
from fractions import Fraction

from sumkit.catalog import p1_tw_series
from sumkit.contacts import ContactMultiset, IntersectionMatrix
from sumkit.gluing import (
    RelKey,
    RelSeries,
    convolve,
    convolve_via_operator,
    gw_from_tw,
    identity_element,
    neck_geometry,
    neck_identity,
    s_matrix,
)


def main():
    point = IntersectionMatrix.point_pairing()

    # covers of the sphere relative to two points: gluing two spheres at a
    # point gives a sphere again, and the cover counts 1/d reproduce
    tw = p1_tw_series(8)
    glued = convolve(tw, tw, point)
    print("sphere # sphere leaves the cover series fixed:", glued == tw)
    connected = gw_from_tw(glued)
    for d in (1, 2, 5):
        key = RelKey((d,), 2, (ContactMultiset([((d, 0), 1)]),
                               ContactMultiset([((d, 0), 1)])))
        print(f"  degree {d}: connected coefficient", connected.coefficient(key))

    # a neck with a sphere divisor: basis (point, fundamental)
    sphere = IntersectionMatrix.sphere_pairing()
    geo = neck_geometry(base_dim=1, v_basis=2)
    cutoff = 4
    ident = identity_element(geo, sphere, cutoff)

    rng = random.Random(1)
    residual = RelSeries(geo, 2, cutoff, {
        RelKey((1, 1), 0, (ContactMultiset([((1, 0), 1)]),
                           ContactMultiset([((1, 1), 1)]))): Fraction(2, 3),
        RelKey((0, 2), 2, (ContactMultiset(), ContactMultiset())):
            Fraction(-1, 2),
    })
    twf = ident + residual
    s = s_matrix(twf, sphere)
    print("\nscattering inverse:",
          convolve(s, twf, sphere) == ident,
          convolve(twf, s, sphere) == ident)

    # both convolution routes agree term for term
    print("differential-operator route agrees:",
          convolve(twf, twf, sphere)
          == convolve_via_operator(twf, twf, sphere))

    # many-cut alternating sums reproduce the inverse once the residual
    # square dies at the cutoff
    steep = RelSeries(geo, 2, cutoff, {
        RelKey((1, 3), 0, (ContactMultiset([((1, 0), 1)]),
                           ContactMultiset([((1, 0), 1)]))): Fraction(5)})
    twf2 = ident + steep
    s2 = s_matrix(twf2, sphere)
    print("neck sums for n = 1..5 all equal the inverse:",
          all(neck_identity(twf2, n, sphere) == s2 for n in range(1, 6)))


if __name__ == "__main__":
    main()
