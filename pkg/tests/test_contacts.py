from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sumkit.contacts import (
    ContactError,
    ContactMultiset,
    IntersectionMatrix,
    SingularMatrix,
    dual_combination,
    dual_multiset,
    enumerate_multisets,
    multiset_binomial,
    multiset_stats,
    ordered_multiplicity,
    partitions,
    seq_stats,
)


class TestSeqStats:
    def test_single_triple_contact(self):
        assert seq_stats([(3, 0)]) == (1, 3, 3)

    def test_empty(self):
        assert seq_stats([]) == (0, 0, 1)

    def test_mixed(self):
        assert seq_stats([(2, 0), (3, 1)]) == (2, 5, 6)

    def test_rejects_zero_multiplicity(self):
        with pytest.raises(ContactError):
            seq_stats([(0, 0)])


class TestMultisetStats:
    def test_triple_double_contact(self):
        m = ContactMultiset([((2, 0), 3)])
        assert multiset_stats(m) == (3, 6, 8, 6)

    def test_empty(self):
        assert multiset_stats(ContactMultiset()) == (0, 0, 1, 1)

    def test_mixed(self):
        m = ContactMultiset([((1, 0), 2), ((3, 0), 1)])
        assert multiset_stats(m) == (3, 5, 3, 2)


class TestOrderedMultiplicity:
    def test_all_equal(self):
        assert ordered_multiplicity(ContactMultiset([((2, 0), 3)])) == 1

    def test_two_distinct(self):
        m = ContactMultiset([((1, 0), 1), ((2, 0), 1)])
        assert ordered_multiplicity(m) == 2

    def test_multinomial(self):
        m = ContactMultiset([((1, 0), 2), ((2, 0), 2)])
        assert ordered_multiplicity(m) == 6


class TestEnumerate:
    def test_degree_zero(self):
        assert enumerate_multisets(0, 3) == [ContactMultiset()]

    def test_partitions_of_two(self):
        got = enumerate_multisets(2, 1)
        assert got == sorted([
            ContactMultiset([((1, 0), 2)]),
            ContactMultiset([((2, 0), 1)]),
        ])

    def test_partition_count_three(self):
        assert len(enumerate_multisets(3, 1)) == 3

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 8))
    def test_cardinality_is_partition_count(self, n):
        assert len(enumerate_multisets(n, 1)) == len(list(partitions(n)))

    def test_two_color_count(self):
        # every multiset has a well-formed degree and no duplicates appear
        ms = enumerate_multisets(4, 2)
        assert len(set(ms)) == len(ms)
        assert all(multiset_stats(m)[1] == 4 for m in ms)


class TestDual:
    def test_identity_pairing(self):
        m = ContactMultiset([((2, 0), 1), ((1, 1), 2)])
        assert dual_multiset(m, IntersectionMatrix.identity(2)) == {m: 1}

    def test_sphere_pairing_swaps(self):
        m = ContactMultiset([((2, 0), 1)])
        swapped = ContactMultiset([((2, 1), 1)])
        assert dual_multiset(m, IntersectionMatrix.sphere_pairing()) \
            == {swapped: 1}

    def test_dual_of_dual_roundtrip(self):
        q = IntersectionMatrix([[1, 2], [0, 1]])
        m = ContactMultiset([((1, 0), 2), ((2, 1), 1)])
        back = dual_combination(dual_multiset(m, q), q.inverse())
        assert back == {m: 1}

    def test_involution_for_self_inverse(self):
        q = IntersectionMatrix.sphere_pairing()
        m = ContactMultiset([((1, 0), 1), ((1, 1), 2), ((3, 0), 1)])
        assert dual_combination(dual_multiset(m, q), q) == {m: 1}

    def test_singular_pairing_rejected(self):
        with pytest.raises(SingularMatrix):
            dual_multiset(ContactMultiset([((1, 0), 1)]),
                          IntersectionMatrix([[1, 1], [1, 1]]))


class TestProperties:
    def test_stats_multiplicative_over_union(self):
        a = ContactMultiset([((2, 0), 1), ((1, 1), 2)])
        b = ContactMultiset([((2, 0), 2), ((3, 0), 1)])
        la, da, pa, fa = multiset_stats(a)
        lb, db, pb, fb = multiset_stats(b)
        lu, du, pu, fu = multiset_stats(a.union(b))
        assert (lu, du, pu) == (la + lb, da + db, pa * pb)
        # counts merge, so the factorial picks up binomials of merged counts
        assert fu % (fa * fb) == 0

    def test_ordered_multiplicity_times_factorial(self):
        import math
        m = ContactMultiset([((1, 0), 3), ((2, 1), 2)])
        length, _, _, fact = multiset_stats(m)
        assert ordered_multiplicity(m) * fact == math.factorial(length)

    def test_binomial_of_submultiset(self):
        m = ContactMultiset([((1, 0), 3), ((2, 0), 1)])
        sub = ContactMultiset([((1, 0), 2)])
        assert multiset_binomial(m, sub) == 3
        assert multiset_binomial(sub, m) == 0


class TestStrings:
    def test_canonical_form(self):
        m = ContactMultiset([((3, 0), 1), ((1, 0), 2)])
        assert m.to_string() == "1^2(0) 3^1(0)"

    def test_roundtrip(self):
        m = ContactMultiset([((2, 1), 4), ((1, 0), 1)])
        assert ContactMultiset.from_string(m.to_string()) == m

    def test_empty_roundtrip(self):
        assert ContactMultiset.from_string(
            ContactMultiset().to_string()) == ContactMultiset()

    def test_bad_string(self):
        with pytest.raises(ContactError):
            ContactMultiset.from_string("2(0)")
