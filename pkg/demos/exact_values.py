"""
Exact values by clique search
=============================

For small n and q, every weight-3 word is a vertex and codes are cliques of
the "distance at least four" graph. The exact search agrees with
min(U_q(n), C(n, 3)) on each cell it can finish.
"""

from math import comb

from cwcodes import exact_a, main_theorem_value

print(" n  q  exact  formula  nodes  seconds")
for n in (4, 5, 6, 7):
    for q in range(2, 8):
        if (q - 1) ** 3 * comb(n, 3) > 3000:
            continue
        r = exact_a(n, q, time_limit=60)
        print(f"{n:2d} {q:2d}  {r.exact_size:5d}  {main_theorem_value(n, q):7d}  "
              f"{r.nodes_explored:5d}  {r.elapsed:7.3f}")

# a witness for (6, 3)
print(exact_a(6, 3).witness.as_array())
