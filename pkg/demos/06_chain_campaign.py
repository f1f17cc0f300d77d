# Degenerate to a chain of elliptic curves and follow a candidate kernel element rho.
# Each elliptic component either raises ord(rho) by 2 or exposes a rank-one obstruction.
import json
import random

from symprod.chain import random_admissible, random_rho, propagate, run_campaign

rng = random.Random(3)
cfg = random_admissible(4, 3, 2, rng)
rho = random_rho(2, rng)
print("chain:", [c.kind for c in cfg.chain.components])
print("rho:", rho.to_json())
tr = propagate(cfg, rho)
for s in tr.steps:
    print(f"  component {s.component} {s.kind:9s} ord {s.ord:2d} {s.check or ''}")
print("outcome:", tr.outcome)

for g, d in [(4, 3), (5, 4), (4, 4), (3, 4)]:
    print(json.dumps(run_campaign(g, d, 2, 300, seed=0).to_json()))
print("with torsion classes:", json.dumps(run_campaign(4, 3, 2, 300, seed=0, torsion=True).to_json()))
