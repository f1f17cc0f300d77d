# Odd genus, d = g + 1: does injectivity persist beyond the range the degeneration covers?
# Random generic divisors only; a zero kernel here is evidence, not proof.
import random

from symprod.hyperelliptic import random_curve, random_generic_divisor
from symprod.product_map import sym2_kernel_report

p = 10007
rng = random.Random(5)
for g in (3, 5):
    for d in (g + 1, g + 2):
        hist = {}
        for _ in range(20):
            c = random_curve(p, g, rng)
            rep = sym2_kernel_report(c, random_generic_divisor(c, d, rng))
            hist[rep.kernel_dim] = hist.get(rep.kernel_dim, 0) + 1
        print(f"g={g} d={d}: kernel histogram {hist}")
print("hyperelliptic curves are special in moduli, so nonzero kernels here do not contradict the generic statement")
