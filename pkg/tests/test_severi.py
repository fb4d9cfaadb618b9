import pytest

from sumkit.contacts import partitions
from sumkit.oracles import kontsevich_oracle
from sumkit.severi import (
    SeveriError,
    genus,
    point_count,
    rational_degree,
    severi_number,
    severi_table,
    trim,
    tw_severi,
)


class TestPointCount:
    def test_line_through_two_points(self):
        assert point_count(1, 0, (), (1,)) == 2

    def test_rational_cubic(self):
        assert point_count(3, 0, (), (3,)) == 8

    def test_conic(self):
        assert point_count(2, 0, (), (2,)) == 5

    def test_fixed_contacts_cost_more(self):
        assert point_count(3, 0, (3,), ()) == 5

    def test_negative_signals_empty(self):
        assert point_count(1, 0, (0, 0, 1), ()) < 0


class TestBaseCases:
    def test_line(self):
        assert severi_number(1, 0, (), (1,)) == 1

    def test_line_through_fixed_point(self):
        assert severi_number(1, 0, (1,), ()) == 1

    def test_invalid_profile_is_zero(self):
        assert severi_number(1, 0, (), (2,)) == 0

    def test_negative_genus_is_zero(self):
        assert severi_number(2, 1) == 0


class TestClassicalValues:
    def test_unique_conic(self):
        assert severi_number(2, 0) == 1

    def test_rational_cubics(self):
        assert severi_number(3, 1) == 12

    def test_one_nodal_discriminant_degrees(self):
        # 3(d-1)^2 one-nodal curves; irreducible ones exist from degree 3
        for d in (3, 4, 5):
            assert severi_number(d, 1) == 3 * (d - 1) ** 2
        # for conics the whole discriminant is the reducible line pairs
        assert severi_number(2, 1) == 0
        assert tw_severi(2, 4) == 3

    def test_two_nodal_quartics(self):
        assert severi_number(4, 2) == 225

    def test_rational_quartics(self):
        assert severi_number(4, 3) == 620

    def test_tangent_conics(self):
        assert severi_number(2, 0, (), (0, 1)) == 2

    def test_conic_tangent_at_fixed_point(self):
        assert severi_number(2, 0, (0, 1), ()) == 1

    def test_cubics_with_fixed_collinear_points(self):
        # pencil through 8 points with 3 on a line: 12 minus the double
        # point of the discriminant at the line + conic member
        assert severi_number(3, 1, (3,), ()) == 10


class TestDisconnectedLevel:
    def test_line_pairs(self):
        assert tw_severi(2, 4, (), (2,)) == 3

    def test_cubic_plus_line_configurations(self):
        # 620 irreducible rational quartics plus 55 cubic+line splittings
        assert tw_severi(4, 2, (), (4,)) == 675

    def test_connected_sector_matches(self):
        for d in (1, 2, 3):
            assert tw_severi(d, 2 - 2 * genus(d, 0), (), (d,)) \
                == severi_number(d, 0)


class TestRationalDegrees:
    def test_matches_oracle(self):
        for d in range(1, 6):
            assert rational_degree(d) == kontsevich_oracle(d)

    def test_rejects_bad_degree(self):
        with pytest.raises(SeveriError):
            rational_degree(0)


class TestInvariants:
    def test_values_nonnegative_integers(self):
        for d in range(1, 5):
            for delta in range(0, 4):
                for alpha_w in range(0, d + 1):
                    for alpha_parts in partitions(alpha_w):
                        alpha = _to_profile(alpha_parts)
                        for beta_parts in partitions(d - alpha_w):
                            beta = _to_profile(beta_parts)
                            value = severi_number(d, delta, alpha, beta)
                            assert isinstance(value, int) and value >= 0

    def test_point_count_conserved_along_first_sum(self):
        # the recursion moves exactly one point per step
        d, delta = 3, 1
        g = genus(d, delta)
        r0 = point_count(d, g, (), (3,))
        r1 = point_count(d, g, (1,), (2,))
        assert r1 == r0 - 1

    def test_point_count_conserved_across_degree_drop(self):
        assert point_count(2, 0, (), (2,)) \
            == point_count(3, genus(3, 1), (2,), (1,)) - 1


class TestTable:
    def test_single_row(self):
        rows = severi_table(1, 0)
        assert len(rows) == 1 and rows[0]["value"] == "1"

    def test_includes_smooth_cubic(self):
        rows = severi_table(3, 1)
        smooth = [r for r in rows if r["d"] == 3 and r["delta"] == 0]
        assert smooth[0]["value"] == "1" and smooth[0]["r"] == 9

    def test_includes_rational_quartics(self):
        rows = severi_table(4, 3)
        quartic = [r for r in rows if r["d"] == 4 and r["delta"] == 3]
        assert quartic[0]["value"] == "620"

    def test_bad_bounds(self):
        with pytest.raises(SeveriError):
            severi_table(0, 0)


def _to_profile(parts):
    out = [0] * (max(parts) if parts else 0)
    for p in parts:
        out[p - 1] += 1
    return trim(out)
