"""
From a large set of designs to optimal codes of length 11 and 10
================================================================

Search for nine designs on 11 points, each with one 5-block and otherwise
triples, that together cover every triple exactly once. Each design lends its
triples a constant symbol; the 5-blocks host small optimal codes. Shortening
at the least-used coordinate then gives length 10.
"""

from cwcodes import construct_from_ls, ls_search, shorten_optimal, u_q, verify_large_set
from cwcodes.largeset import partition_by_five_blocks

result = ls_search(11, time_limit=30)
print(result.status, f"{result.elapsed:.3f}s", result.nodes, "nodes")
ls = result.large_set
print(verify_large_set(ls))

for g in partition_by_five_blocks(ls):
    print("5-block", g.five_block, "designs", g.indices)

print(" q  |C11|  U_q(11)  |C10|  U_q(10)")
for q in range(2, 11):
    c11 = construct_from_ls(ls, q)
    c10 = shorten_optimal(c11)
    print(f"{q:2d}  {len(c11):5d}  {u_q(11, q):7d}  {len(c10):5d}  {u_q(10, q):7d}")
