"""Invariant Berezinians on Chevalley-Eilenberg complexes, and gauge fixing.

A Q-invariant Berezinian on g[1] exists when no cochain of degree n-1 is sent
onto the top monomial.  Unimodular algebras pass; aff(1) does not.
"""
from multigraded.aksz import measure_admissible, top_cohomology_is_line
from multigraded.models import (
    PoissonBivector,
    abelian,
    aff1,
    ce_differential,
    coordinate_space,
    cs_extend_algebra,
    heisenberg,
    jacobiator_oracle,
    sl2,
    so3,
    source_susy_gauge_fix,
)

for label, g in [("abelian(3)", abelian(3)), ("h3", heisenberg()), ("so3", so3()), ("sl2", sl2()), ("aff1", aff1())]:
    res = measure_admissible(ce_differential(g)[1])
    line = f"  {label:<11} invariant measure: {str(res.ok):<5}  H^top = R: {top_cohomology_is_line(g)}"
    if not res.ok:
        line += f"  (witness {res.witness}, {res.stage} stage)"
    print(line)

print()
for m in (1, 2):
    big = cs_extend_algebra(so3(), m)
    print(f"so3 extended over R^(0|{m}): dimension {big.dim}, Jacobi holds: {not jacobiator_oracle(big)}")

print()
M = coordinate_space(["x1", "x2"])
res = source_susy_gauge_fix(PoissonBivector.from_entries(M, {(1, 2): M.one()}))
print("Constant pi^12 = 1: gauge parameters removing the extra fields")
for name, v in res.parameters.items():
    print(f"  {name} = {v}")
print(f"  residual vanishes on shell: {res.ok}")
