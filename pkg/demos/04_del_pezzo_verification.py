"""
Re-checking the regular model over finite fields
================================================

The model is built by blowing up twice.  Here each stage is looked at over
F_3 and F_9 and the full verification suite is run at the end.
"""

import logging

from zerocycles import depezzo
from zerocycles.ffgeom import enumerate_points, singular_points

params = depezzo.ModelParams(p=3)
F3, F9 = params.fields()

X0, X1, X = depezzo.build_X0(params), depezzo.build_X1(params), depezzo.build_X(params)
print("equations per stage:", len(X0.equations), len(X1.equations), len(X.equations))

# singular points of each total space on the special fiber pi = 0
for sch in (X0, X1, X):
    print(f"{sch.name}: {len(enumerate_points(sch, F9, {'pi': 0}))} points on pi = 0 over F_9,",
          f"{len(singular_points(sch, F9, fixed={'pi': 0}))} singular")

# after one blow-up the singular points come in Frobenius-conjugate pairs
sing = singular_points(X1, F9, fixed={"pi": 0})
for pt in sing:
    print("  ", dict(zip(pt.variables, pt.values)))

# X0 also has singular points where pi^2 = gamma.  pi is a unit there, so they
# lie outside F_3[[pi]] and the blow-ups leave them alone.
print("X0 singular points with pi != 0:",
      sorted({pt["pi"] for pt in singular_points(X0, F3) if pt["pi"]}))

logging.basicConfig(level=logging.INFO, format="%(message)s")
report = depezzo.run_all(params)
print(report.to_text())
