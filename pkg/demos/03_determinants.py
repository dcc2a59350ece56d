"""Fuglede-Kadison determinants of Id - t R_x by both estimators."""

from l2burau.fkdet import fk_det_series, fk_det_truncation
from l2burau.groups import FreeAbelianGroup, FreeGroup
from l2burau.verify import shift_operator

print(f"{'group':6} {'t':>5} {'truncation':>12} {'series':>12} {'max(1,t)':>9}")
for label, oracle in (("Z", FreeAbelianGroup(1)), ("F2", FreeGroup(2))):
    m = shift_operator(oracle)
    for t in (0.25, 0.5, 2.0, 4.0):
        tr, se = fk_det_truncation(m, t), fk_det_series(m, t)
        print(f"{label:6} {t:5g} {tr.value:12.8f} {se.value:12.8f} {max(1.0, t):9g}")

tr = fk_det_truncation(shift_operator(FreeGroup(2)), 2.0)
print("\nradii:", tr.diagnostics["radii"])
print("estimates:", [f"{v:.10f}" for v in tr.diagnostics["estimates"]])
