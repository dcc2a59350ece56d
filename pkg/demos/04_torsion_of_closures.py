"""Determinants and torsion for the unknot, the unlink and the trefoil."""

from l2burau.braid import BraidWord, parse_braid
from l2burau.freegroup import format_word
from l2burau.groups import exponent_sum_gamma
from l2burau.torsion import closure_presentation, fox_torsion_from_presentation, torsion_determinant
from l2burau.verify import trefoil_gamma

GRID = [0.5, 2.0, 3.0]
cases = [
    ("unknot (s1 in B_2)", parse_braid("1", 2), exponent_sum_gamma(2)),
    ("unlink (trivial braid in B_2)", BraidWord.identity(2), exponent_sum_gamma(2)),
    ("trefoil (s1^3), gamma onto <a,b | a^2 = b^3>", parse_braid("1 1 1", 2), trefoil_gamma()),
]

for name, beta, gamma in cases:
    print(name)
    p = closure_presentation(beta)
    print("  relators:", [format_word(r, "g") for r in p.relators])
    for rec in torsion_determinant(beta, gamma, GRID).records:
        fox = fox_torsion_from_presentation(p, gamma, rec.t).value
        print(f"  t={rec.t:<4g} det {rec.det:10.6f}  torsion {rec.torsion:10.6f}  fox route {fox:10.6f}")
