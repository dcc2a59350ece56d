"""Burau matrices from Fox derivatives, and the symbolic L2 version."""

from l2burau import burau, l2_burau, parse_braid, reduced_burau, theta
from l2burau.freegroup import fox_gradient, format_word, reduce
from l2burau.groups import identity_gamma

w = reduce([1, 2, -1])
print("w =", format_word(w))
for i, d in enumerate(fox_gradient(w, 2), start=1):
    print(f"  dw/dx{i} = {d.format()}")

beta = parse_braid("1 2 -1", 3)
print("\nbraid:", beta)
print("Burau:")
for row in burau(beta).rows:
    print("  ", row)
print("reduced Burau:")
for row in reduced_burau(beta).rows:
    print("  ", row)

m = l2_burau(beta, identity_gamma(3))
print("\nL2-Burau over F_3, gamma = id:")
for row in m.format():
    print("  ", row)
print("theta(L2) == Burau:", theta(m) == burau(beta))
