import random
from fractions import Fraction

import pytest

from sumkit.contacts import ContactMultiset, IntersectionMatrix, enumerate_multisets
from sumkit.gluing import (
    Geometry,
    GluingError,
    RelKey,
    RelSeries,
    convolve,
    convolve_via_operator,
    glue_add,
    gw_from_tw,
    identity_element,
    inclusion_exclusion_check,
    moduli_dimension,
    neck_geometry,
    neck_identity,
    relseries_from_json,
    relseries_to_json,
    riemann_surface_geometry,
    s_matrix,
    sum_canonical,
    tag_mul,
    tw_from_gw,
)

POINT = IntersectionMatrix.point_pairing()
SPHERE = IntersectionMatrix.sphere_pairing()


def single(a, i=0):
    return ContactMultiset([((a, i), 1)])


def random_two_ended(rng, geo, cutoff, basis, min_base=0):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        d = rng.randint(0, 2)
        b = rng.randint(min_base, max(min_base, 2))
        if d + b > cutoff:
            continue
        options = enumerate_multisets(d, basis)
        key = RelKey((d, b), 2 * rng.randint(-1, 1),
                     (rng.choice(options), rng.choice(options)))
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if c:
            terms[key] = terms.get(key, Fraction(0)) + c
    return RelSeries(geo, 2, cutoff, {k: v for k, v in terms.items() if v})


class TestRelSeries:
    def test_contact_degree_enforced(self):
        geo = riemann_surface_geometry()
        with pytest.raises(GluingError):
            RelSeries(geo, 2, 5, {
                RelKey((2,), 2, (single(1), single(2))): 1})

    def test_grading_cutoff_enforced(self):
        geo = riemann_surface_geometry()
        with pytest.raises(GluingError):
            RelSeries(geo, 2, 3, {
                RelKey((4,), 2, (single(4), single(4))): 1})

    def test_json_roundtrip(self):
        geo = neck_geometry(base_dim=1, v_basis=2)
        rng = random.Random(3)
        series = random_two_ended(rng, geo, 4, 2)
        assert relseries_from_json(relseries_to_json(series)) == series

    def test_json_terms_canonically_ordered(self):
        geo = riemann_surface_geometry()
        series = identity_element(geo, POINT, 4)
        data = relseries_to_json(series)
        assert data["terms"] == sorted(
            data["terms"], key=lambda t: (t["class"], t["chi"],
                                          t["contacts"], t["tag"]))


class TestTags:
    def test_unit(self):
        assert tag_mul("1", "p") == "p"
        assert tag_mul("p", "1") == "p"

    def test_commutative_canonical(self):
        assert tag_mul("p", "C1(p)") == "C1(p);p"
        assert tag_mul("C1(p)", "p") == "C1(p);p"

    def test_powers_accumulate(self):
        assert tag_mul("p", "p") == "p^2"
        assert tag_mul("p^2", "p") == "p^3"


class TestExpLog:
    def test_exp_of_zero_is_unit(self):
        geo = riemann_surface_geometry()
        zero = RelSeries.zero(geo, 1, 5)
        assert tw_from_gw(zero) == RelSeries.unit(geo, 1, 5)

    def test_single_term_squares(self):
        # contactless sector: coefficient c becomes c^2/2 at the doubled key
        geo = Geometry(class_dim=1, v_degree=(0,), canonical_k=(0,),
                       grading=(1,), v_basis=1)
        gw = RelSeries(geo, 1, 6, {
            RelKey((2,), -2, (ContactMultiset(),)): Fraction(3)})
        tw = tw_from_gw(gw)
        key = RelKey((4,), -4, (ContactMultiset(),))
        assert tw.coefficient(key) == Fraction(9, 2)

    def test_single_term_squares_with_contacts(self):
        # with contact multisets the divided-power normalization adds the
        # binomial count of ways to split the merged multiset: c^2/2 * C(2,1)
        geo = riemann_surface_geometry()
        gw = RelSeries(geo, 1, 6, {RelKey((2,), 2, (single(2),)): Fraction(3)})
        tw = tw_from_gw(gw)
        key = RelKey((4,), 4, (ContactMultiset([((2, 0), 2)]),))
        assert tw.coefficient(key) == Fraction(9, 2) * 2

    def test_roundtrip(self):
        rng = random.Random(5)
        geo = neck_geometry(base_dim=1, v_basis=2)
        for _ in range(10):
            gw = random_two_ended(rng, geo, 5, 2, min_base=1)
            assert gw_from_tw(tw_from_gw(gw)) == gw

    def test_grading_zero_obstruction(self):
        geo = riemann_surface_geometry()
        gw = RelSeries(geo, 1, 5, {RelKey((0,), 0, (ContactMultiset(),)): 1})
        with pytest.raises(GluingError):
            tw_from_gw(gw)


class TestConvolve:
    def test_identity_element_is_identity(self):
        rng = random.Random(11)
        geo = neck_geometry(base_dim=1, v_basis=2)
        ident = identity_element(geo, SPHERE, 4)
        for _ in range(10):
            series = random_two_ended(rng, geo, 4, 2)
            assert convolve(ident, series, SPHERE) == series
            assert convolve(series, ident, SPHERE) == series

    def test_euler_characteristic_gluing(self):
        """Gluing the class-zero point-count terms adds the two counts."""
        geo = Geometry(class_dim=1, v_degree=(0,), canonical_k=(0,),
                       grading=(1,), v_basis=1)
        chi_x, chi_y, chi_v = 24, 46, 2

        def side(value):
            terms = {
                RelKey((0,), 0, (ContactMultiset(),), "chi"): value,
                RelKey((0,), 0, (ContactMultiset(),), "1"): 1,
            }
            return RelSeries(geo, 1, 3, terms)

        glued = convolve(side(chi_x - chi_v), side(chi_y - chi_v), POINT,
                         glue=glue_add, out_geometry=geo)
        key = RelKey((0,), 0, (), "chi")
        assert glued.coefficient(key) == chi_x + chi_y - 2 * chi_v

    def test_sphere_self_gluing_reproduces_covers(self):
        geo = riemann_surface_geometry()
        ident = identity_element(geo, POINT, 8)
        glued = convolve(ident, ident, POINT)
        assert glued == ident
        connected = gw_from_tw(glued)
        for d in range(1, 9):
            key = RelKey((d,), 2, (single(d), single(d)))
            assert connected.coefficient(key) == Fraction(1, d)

    def test_chi_and_degree_conservation(self):
        rng = random.Random(23)
        geo = neck_geometry(base_dim=1, v_basis=2)
        x = random_two_ended(rng, geo, 4, 2)
        y = random_two_ended(rng, geo, 4, 2)
        glued = convolve(x, y, SPHERE)
        for key in glued.terms:
            # output contacts pair against the class through the divisor
            for m in key.contacts:
                assert sum(a * n for (a, _), n in m) \
                    == geo.pair_v(key.class_key)
            assert key.chi % 2 == 0

    def test_associative_across_middle_factor(self):
        rng = random.Random(29)
        geo = neck_geometry(base_dim=1, v_basis=2)
        for _ in range(8):
            x = random_two_ended(rng, geo, 4, 2)
            m = random_two_ended(rng, geo, 4, 2)
            y = random_two_ended(rng, geo, 4, 2)
            assert convolve(convolve(x, m, SPHERE), y, SPHERE) \
                == convolve(x, convolve(m, y, SPHERE), SPHERE)

    def test_operator_route_agrees(self):
        rng = random.Random(31)
        geo = neck_geometry(base_dim=1, v_basis=2)
        q = IntersectionMatrix([[0, 1], [1, 1]])
        ident = identity_element(geo, q, 3)
        assert convolve_via_operator(ident, ident, q) == ident
        for _ in range(15):
            x = random_two_ended(rng, geo, 3, 2)
            y = random_two_ended(rng, geo, 3, 2)
            assert convolve(x, y, q) == convolve_via_operator(x, y, q)

    def test_pairing_size_mismatch(self):
        geo = riemann_surface_geometry()
        ident = identity_element(geo, POINT, 3)
        with pytest.raises(GluingError):
            convolve(ident, ident, SPHERE)


class TestScattering:
    def test_scattering_of_unit_is_unit(self):
        geo = neck_geometry(base_dim=1, v_basis=1)
        ident = identity_element(geo, POINT, 4)
        assert s_matrix(ident, POINT) == ident

    def test_dimension_two_scattering_trivial(self):
        # covers of a sphere: every map is a disjoint union of fiber covers
        geo = riemann_surface_geometry()
        ident = identity_element(geo, POINT, 6)
        assert s_matrix(ident, POINT) == ident

    def test_inverse_property(self):
        rng = random.Random(37)
        geo = neck_geometry(base_dim=1, v_basis=2)
        ident = identity_element(geo, SPHERE, 4)
        for _ in range(15):
            twf = ident + random_two_ended(rng, geo, 4, 2, min_base=1)
            s = s_matrix(twf, SPHERE)
            assert convolve(s, twf, SPHERE) == ident
            assert convolve(twf, s, SPHERE) == ident

    def test_square_nilpotent_neck_sums(self):
        rng = random.Random(41)
        geo = neck_geometry(base_dim=1, v_basis=2)
        cutoff = 4
        ident = identity_element(geo, SPHERE, cutoff)
        for _ in range(5):
            r = random_two_ended(rng, geo, cutoff, 2,
                                 min_base=cutoff // 2 + 1)
            twf = ident + r
            s = s_matrix(twf, SPHERE)
            for n in range(1, 6):
                assert neck_identity(twf, n, SPHERE) == s

    def test_neck_identity_of_unit(self):
        geo = neck_geometry(base_dim=1, v_basis=1)
        ident = identity_element(geo, POINT, 3)
        for n in range(1, 6):
            assert neck_identity(ident, n, POINT) == ident

    def test_explicit_square_zero_algebra(self):
        # unit + r with r*r = 0: the single-cut sum is 2*unit - (unit + r)
        geo = neck_geometry(base_dim=1, v_basis=1)
        cutoff = 3
        ident = identity_element(geo, POINT, cutoff)
        r = RelSeries(geo, 2, cutoff, {
            RelKey((0, 2), 0, (ContactMultiset(), ContactMultiset())): 5})
        twf = ident + r
        got = neck_identity(twf, 1, POINT)
        assert got == ident - r
        assert got == s_matrix(twf, POINT)

    def test_rejects_bad_unit_part(self):
        geo = neck_geometry(base_dim=1, v_basis=1)
        bad = RelSeries(geo, 2, 3, {
            RelKey((1, 0), 2, (single(1), single(1))): 7})
        with pytest.raises(GluingError):
            s_matrix(bad, POINT)


class TestInclusionExclusion:
    def test_small_values(self):
        assert inclusion_exclusion_check(1) == 1
        assert inclusion_exclusion_check(2) == 1

    def test_ten(self):
        assert inclusion_exclusion_check(10) == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(GluingError):
            inclusion_exclusion_check(0)


class TestDimensions:
    def test_sphere_relative_two_points(self):
        geo = riemann_surface_geometry()
        for d in range(1, 6):
            for g in range(0, 3):
                chi = 2 - 2 * g
                contacts = [(d, 0), (d, 0)]
                dim = moduli_dimension(geo, (d,), chi, 0, contacts, 2)
                assert dim == 2 * (2 * g - 2 + 2)

    def test_degree_one_rigid(self):
        geo = riemann_surface_geometry()
        assert moduli_dimension(geo, (1,), 2, 0, [(1, 0), (1, 0)], 2) == 0

    def test_ruled_surface_halved_dimension(self):
        # classes a*S + b*F on the twisted surface, divisor = both sections
        n = 2
        geo = Geometry(class_dim=2, v_degree=(0, 1),
                       canonical_k=(-(n + 2), -2), grading=(1, 1), v_basis=2)
        for a, b, g in [(0, 2, 0), (1, 1, 0), (1, 2, 1)]:
            contacts = [(1, 0)] * b + [(1, 0)] * (b + n * a)
            chi = 2 - 2 * g
            dim = moduli_dimension(geo, (a, b), chi, 0, contacts, 4)
            length = len(contacts)
            assert dim // 2 == 2 * a + g - 1 + length

    def test_canonical_of_glued_class(self):
        assert sum_canonical(0, 0, 0) == 0
        assert sum_canonical(-3, -2, 2) == -1

    def test_rim_class_pairs_to_zero(self):
        # a class built from equal opposite halves meeting the divisor once
        assert sum_canonical(-1, -1, 1) == 0

    def test_glued_dimension_matches_both_sides(self):
        # dimension count of the glued space agrees with the fiber product
        rng = random.Random(43)
        dim_x = 4
        geo = neck_geometry(base_dim=1, v_basis=1, base_canonical=(-3,))
        for _ in range(25):
            d = rng.randint(0, 3)
            contacts = [(a, 0) for a in _random_partition(rng, d)]
            b1, b2 = rng.randint(0, 3), rng.randint(0, 3)
            k1, k2 = (d, b1), (d, b2)
            chi1, chi2 = 2 * rng.randint(-2, 1), 2 * rng.randint(-2, 1)
            n1, n2 = rng.randint(0, 2), rng.randint(0, 2)
            length = len(contacts)
            chi = chi1 + chi2 - 2 * length
            glued_k = sum_canonical(geo.pair_k(k1), geo.pair_k(k2), d)
            lhs = (-2 * glued_k + (chi * (dim_x - 6)) // 2
                   + 2 * (n1 + n2))
            rhs = (moduli_dimension(geo, k1, chi1, n1, contacts, dim_x)
                   + moduli_dimension(geo, k2, chi2, n2, contacts, dim_x)
                   - length * (dim_x - 2))
            assert lhs == rhs


def _random_partition(rng, n):
    parts = []
    while n > 0:
        p = rng.randint(1, n)
        parts.append(p)
        n -= p
    return parts
