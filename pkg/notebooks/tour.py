"""
A short tour of discrete_appell
===============================

Run as a script or cell by cell (``# %%`` markers) in an editor.
"""

# %% evaluate both discrete forms
from fractions import Fraction as F

import numpy as np

from discrete_appell import (
    Params1,
    Params2,
    Point,
    eval_f3_disc1,
    eval_f3_disc2,
    eval_f3_classical,
    gauss_laguerre,
    integral_vs_series,
    run_suite,
    default_panel,
)
from discrete_appell.errors import DivergenceDetected

p1 = Params1(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t1=4, t2=3, k1=2, k2=1)
ev = eval_f3_disc1(p1, Point(0.3, -0.3))
print("first form:", ev.value, "terms", ev.terms_used, "terminated", ev.terminated)

p2 = Params2(F(1, 2), F(3, 4), F(5, 3), F(7, 5), F(7, 2), t=4, k=1)
print("second form:", eval_f3_disc2(p2, Point(0.5, 0.2 + 0.1j)).value)

# %% k = 0 recovers the classical function
p0 = p1.replace(k1=0, k2=0)
print(eval_f3_disc1(p0, Point(0.3, 0.2)).value,
      eval_f3_classical(0.5, 0.75, 5 / 3, 1.4, 3.5, Point(0.3, 0.2)).value)

# %% non-integer t with k >= 2 diverges, and the engine says so early
try:
    eval_f3_disc1(p1.replace(t1=1.5), Point(0.3, 0.2))
except DivergenceDetected as exc:
    print("diverged after", exc.diagonals, "anti-diagonals")

# %% a value grid over x for growing t1
xs = np.linspace(-0.5, 0.5, 5)
grid = np.array([[complex(eval_f3_disc1(p1.replace(t1=t), Point(x, 0.2)).value).real for x in xs]
                 for t in (2, 4, 6)])
print(np.round(grid, 6))

# %% Gauss-Laguerre and an integral representation
rule = gauss_laguerre(8)
print("sum of weights", rule.weights.sum(), "<u^5>", rule.integrate(lambda u: u ** 5))
print("F1-a1 residual", integral_vs_series("F1-a1", p1, Point(0.25, 0.25)).rel)

# %% one identity group over the default panel
rep = run_suite(default_panel(), group="CT2")
print(f"CT2: {len(rep.identities)} identities, {rep.n_cases} cases, passed={rep.passed}")
