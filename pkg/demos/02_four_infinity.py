# D = 4*inf on a hyperelliptic curve: L(D) = <1, x, x^2> and 1.x^2 - x.x maps to zero.
# Special divisors are why "generic" cannot be dropped.
from symprod.hyperelliptic import Divisor, random_curve, rr_space
from symprod.product_map import evaluate_tensor, full_kernel_dim, sym2_kernel_report

p = 10007
for g in (3, 4, 5, 6):
    c = random_curve(p, g, g)
    D = Divisor.of(inf=4)
    B = rr_space(c, D)
    rep = sym2_kernel_report(c, D, B)
    (t,) = rep.kernel_basis
    print(f"g={g}: basis {[str(phi.a) for phi in B.basis]}, rank {rep.rank}/{rep.dim_sym2}, "
          f"kernel {t.to_json()}")
    print("   product of the kernel element:", evaluate_tensor(t, B.basis, c))
    print("   full tensor kernel", full_kernel_dim(c, D, B), "= 1 + k(k-1)/2 =", 1 + 3)
