"""
Codes of length q from a filled incidence matrix
================================================

Every weight-3 binary word of length q, listed by support in lex order,
becomes a codeword once its ones are replaced column by column with the
sequence y(q). The result has distance four and C(q, 3) words.
"""

from math import comb

from cwcodes import build_m, code_of, fill, gen_y, verify_code
from cwcodes.seqconstruct import format_sequence

# the fill sequences for small q, as digit strings
for q in range(3, 11):
    print(f"y({q}) = {format_sequence(gen_y(q), compact=True)}")

# fill M(5) and look at the rows
m = fill(build_m(5), gen_y(5))
print(m.rows)

code = code_of(m)
print(verify_code(code), "d =", code.d)

# larger alphabets work the same way
for q in (12, 20, 30):
    c = code_of(fill(build_m(q), gen_y(q)))
    print(q, len(c), comb(q, 3), c.d)
