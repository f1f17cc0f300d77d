# Genus 2, degree 3: the symmetric product map is injective for generic divisors.
import random

from symprod.hyperelliptic import random_curve, random_generic_divisor, rr_space
from symprod.product_map import full_tensor_relation_check, sym2_kernel_report

p = 10007
rng = random.Random(0)

c = random_curve(p, 2, rng)
print("curve: y^2 =", c.f)

D = random_generic_divisor(c, 3, rng)
print("D =", D)

B = rr_space(c, D)
print("h0(D) =", B.dim)            # deg 3 = g + 1, so h0 = 2: a pencil
for phi in B.basis:
    print("  section", phi)

rep = sym2_kernel_report(c, D, B)
print("dim S^2 =", rep.dim_sym2, " rank =", rep.rank, " kernel =", rep.kernel_dim)
print("wedge relation holds:", full_tensor_relation_check(c, D, B, rep.kernel_dim))

# a hundred more draws
hist = {}
for _ in range(100):
    c = random_curve(p, 2, rng)
    k = sym2_kernel_report(c, random_generic_divisor(c, 3, rng)).kernel_dim
    hist[k] = hist.get(k, 0) + 1
print("kernel histogram over 100 curves:", hist)
