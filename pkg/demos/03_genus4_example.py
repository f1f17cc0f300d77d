# A bidegree (3,3) curve on P^1 x P^1 has genus 4 and two g^1_3's.
# L = O(1,1)|_C has degree 6 = g + 2 and S^2 H0(L) -> H0(L^2) has a kernel.
from symprod import quadric

p = 10007
c, rep = quadric.run_example(p, seed=0)
print("curve F(u, v) =", c.F)

pts = quadric.sample_points(c, 20, 1).points
print("rank of {s1s2, s1t2, t1s2, t1t2} on 20 points:",
      quadric.evaluation_rank(quadric.four_sections(c), pts, p))
print("rank of the 10 products:", rep.rank)
print("kernel:", [t.to_json() for t in rep.kernel_basis])
print("  i.e. (s1s2).(t1t2) - (s1t2).(t1s2), the base point free pencil trick relation")
print("full tensor kernel:", quadric.full_kernel_dim(c), "= 1 + 6")
