"""
Points and singularities over small finite fields
=================================================
"""

from zerocycles.ffgeom import (SchemeSpec, conic_rank, enumerate_points, field_make,
                               parse_poly, projective_space, singular_points)

F3 = field_make(3)
F9 = field_make(3, 2, d=2)   # F_3[x]/(x^2 + 1), which contains sqrt(2)
print(F9.describe())

# a field element is stored as its index; tables do the arithmetic
a = F9.gen
print("x * x =", F9.to_vector(F9.mul(a, a)))    # (2, 0): x^2 = -1
print("sqrt(2) in F_9:", F9.sqrt(F9.from_int(2)), " in F_3:", F3.sqrt(2))

P2 = projective_space(["x", "y", "z"])

# a smooth conic has q + 1 points over F_q
conic = SchemeSpec(P2, [parse_poly("x^2 + y^2 - 2*z^2", P2.variables)], expected_dim=1)
for F in (F3, F9):
    print(F.name, len(enumerate_points(conic, F)), "points,",
          len(singular_points(conic, F)), "singular")

# two lines: 2q + 1 points and one singular point where they cross
pair = SchemeSpec(P2, [parse_poly("x^2 - 2*y^2", P2.variables)], expected_dim=1)
for F in (F3, F9):
    print(F.name, len(enumerate_points(pair, F)), "points, singular at",
          [tuple(p.values) for p in singular_points(pair, F)])

# over F_3 the two lines are conjugate, so the only rational point is the crossing
print("rank of the form:", conic_rank(pair.equations[0], ("x", "y", "z"), {}, F3))
