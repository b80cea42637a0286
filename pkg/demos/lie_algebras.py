"""Chevalley-Eilenberg differentials and the Jacobi identity.

For each algebra we build Q on the odd generators xi^a and ask whether
Q^2 = 0.  The answer should match a direct check of the Jacobi identity on
the structure constants.
"""
from multigraded import BL, DELIGNE
from multigraded.calculus import apply, squares_to_zero
from multigraded.models import SuperLieAlgebra, ce_differential, gl, jacobiator_oracle, osp12, sl2, so3


def report(label, g):
    for conv, tag in ((BL, "bl"), (DELIGNE, "deligne")):
        ctx, Q = ce_differential(g, conv)
        print(f"  {label:<10} {tag:<8} Q^2 = 0: {squares_to_zero(Q)}")
    bad = jacobiator_oracle(g)
    print(f"  {'':<10} Jacobi on the constants: {'holds' if not bad else f'fails in {len(bad)} components'}")


print("so(3): Q acts as")
ctx, Q = ce_differential(so3())
for name in ctx.names:
    print(f"  Q({name}) = {Q.value(name)}")
print()

for label, g in [("so3", so3()), ("sl2", sl2()), ("osp(1|2)", osp12()), ("gl(1|1)", gl(1, 1))]:
    report(label, g)

# [e1, e2] = 2 e3 + e1 breaks Jacobi; the extra e1 has nothing to cancel against
consts = dict(so3().constants)
consts[(0, 0, 1)], consts[(0, 1, 0)] = 1, -1
consts[(2, 0, 1)], consts[(2, 1, 0)] = 2, -2
broken = SuperLieAlgebra((0, 0, 0), consts)
print()
report("broken", broken)
ctx, Q = ce_differential(broken)
print("  Q^2 on the generators:")
for name in ctx.names:
    print(f"    Q^2({name}) = {apply(Q, Q.value(name))}")
