# Vanishing orders at two points P, Q of an elliptic curve for a degree-d class L.
# a + b = d is reached only when L = O(aP + (d-a)Q); torsion in [P - Q] can make it reachable twice.
from symprod.elliptic_pic import PicClass, max_order_sum, orders_at, tight_pairs

d = 4
for c in (PicClass(d, generic=True), PicClass(d, 1), PicClass(d, 1, torsion=3),
          PicClass(d, 1, torsion=2), PicClass(d, 2, torsion=3)):
    best, unique = max_order_sum(c)
    print(f"{c}: orders at P {orders_at(c, 'P')}, at Q {orders_at(c, 'Q')}, "
          f"max sum {best}, unique {unique}, tight {tight_pairs(c)}")
