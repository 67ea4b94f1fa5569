"""Metric structure: signatures, the gamma factor, and Hodge duals.

Everything here is exact rational arithmetic, including the Lorentzian
cases: the boost factor between unit timelike observers and the sign the
double Hodge dual picks up from the metric determinant.
"""

import math
from fractions import Fraction

from formcalc.cochain import dual_volume_ratios
from formcalc.forms import PolyForm
from formcalc.metric import Metric, classify, form_magnitude, gamma_factor
from formcalc.simplicial import build_complex

mink = Metric.minkowski(2)
rest = (Fraction(1), Fraction(0))
moving = (Fraction(5, 4), Fraction(3, 4))  # speed 0.6, unit timelike
print("observer at speed 0.6:", classify(moving, mink))
print("gamma factor:", gamma_factor(rest, moving, mink), "(exactly 5/4)")

e3 = Metric.euclidean(3)
w = PolyForm.basis(3, (0,)).scale(Fraction(7, 2))
print("\n|3.5 dx| =", form_magnitude(w, e3)[0])

print("\nHodge duals:")
print("  *dx in Euclidean 3-space  =", PolyForm.basis(3, (0,)).hodge(e3))
g4 = Metric.minkowski(4)
dt_dx = PolyForm.basis(4, (0, 1))
print("  *(dt^dx) in spacetime     =", dt_dx.hodge(g4))
print("  **(dt^dx)                 =", dt_dx.hodge(g4).hodge(g4),
      " (double dual = -1 on 2-forms)")

# discrete Hodge: dual/primal volume ratios on a well-centered mesh
s = math.sqrt(3) / 2
pair = build_complex([(0.0, 0.0), (1.0, 0.0), (0.5, s), (0.5, -s)],
                     [(0, 1, 2), (0, 1, 3)])
ratios = dual_volume_ratios(pair, 1)
shared = pair.simplex_index((0, 1), 1)
print("\ncircumcentric dual ratio on the shared edge of two equilateral "
      "triangles:")
print(f"  {ratios[shared]:.12f}  (1/sqrt(3) = {1 / math.sqrt(3):.12f})")
