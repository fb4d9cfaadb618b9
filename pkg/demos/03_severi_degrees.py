"""Severi degrees: nodal plane curves with line tangencies.

Runs the tangency recursion, compares the rational specialization against
the independent degree recursion, and shows the disconnected-level counts
that make the bookkeeping close.
"""

from sumkit.oracles import kontsevich_oracle
from sumkit.severi import rational_degree, severi_number, severi_table, tw_severi


def main():
    print("irreducible rational plane curves through 3d-1 points:")
    for d in range(1, 6):
        mine = rational_degree(d)
        oracle = kontsevich_oracle(d)
        print(f"  d={d}: {mine}   (degree recursion: {oracle})")

    print("\none-nodal counts 3(d-1)^2:")
    for d in range(3, 6):
        print(f"  d={d}: {severi_number(d, 1)}")

    print("\ntangency examples:")
    print("  conics tangent to the line through 4 points:",
          severi_number(2, 0, (), (0, 1)))
    print("  cubics with three fixed line points (pencil count 12 - 2):",
          severi_number(3, 1, (3,), ()))

    print("\ndisconnected counts close the recursion:")
    print("  line pairs through 4 points:", tw_severi(2, 4))
    print("  rational quartics + cubic-line splittings:",
          tw_severi(4, 2), "= 620 + 55")

    print("\ntable up to degree 3:")
    for row in severi_table(3, 1):
        print(" ", row)


if __name__ == "__main__":
    main()
