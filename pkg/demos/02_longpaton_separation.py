"""A braid in the Burau kernel that the L2-Burau map still detects."""

import time

from l2burau.braid import act_on_x, longpaton, permutation
from l2burau.burau import burau, theta
from l2burau.groups import identity_gamma
from l2burau.operators import l2_burau

beta = longpaton()
print(f"{beta.n} strands, {len(beta)} letters")
print("Burau is identity:", burau(beta).is_identity())
print("permutation:", permutation(beta))
print("|h(x1)| =", len(act_on_x(beta, 1)))

start = time.perf_counter()
m = l2_burau(beta, identity_gamma(beta.n))
print(f"L2-Burau built in {time.perf_counter() - start:.2f}s")
print("L2-Burau is identity:", m.is_identity())
print("largest entry support:", m.max_support())
print("theta of it is identity:", theta(m).is_identity())
