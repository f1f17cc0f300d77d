# Riemann-Roch spaces on y^2 = f(x), checked against h0(D) - h0(K - D) = deg D - g + 1.
import random

from symprod.hyperelliptic import Divisor, canonical_divisor, h0, random_curve, random_divisor, rr_space

rng = random.Random(1)
for g in (1, 2, 3, 4):
    c = random_curve(101, g, rng)
    K = canonical_divisor(c)
    print(f"g={g}: K = {K}, h0(K) = {h0(c, K)}")
    for _ in range(3):
        D = random_divisor(c, rng.randint(0, 2 * g), rng)
        l, lk = h0(c, D), h0(c, K - D)
        print(f"   D = {D}: h0 = {l}, h0(K-D) = {lk}, deg - g + 1 = {D.degree - g + 1}")

c = random_curve(101, 2, 0)
print("basis of L(5*inf) at genus 2:", [str(phi) for phi in rr_space(c, Divisor.of(inf=5)).basis])
