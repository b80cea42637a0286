"""Maps out of R^{0|m}: lifted structures and component actions.

Lifting along one odd direction doubles every coordinate (q, q_theta); the
lifted Q is theta times the Lie derivative of the original one.  Expanding a
superfield action and integrating over theta gives component actions.
"""
from multigraded.aksz import odd_source_lift, susy_expand, tangent_lift
from multigraded.calculus import squares_to_zero
from multigraded.models import PoissonBivector, coordinate_space, psm_lift

M = coordinate_space(["x1", "x2"])
lift = psm_lift(PoissonBivector.from_entries(M, {(1, 2): M.parse("x1^2")}))

for m in (1, 2):
    o = odd_source_lift(lift.context, lift.Q, lift.omega, m)
    print(f"m = {m}: {len(o.context)} component coordinates")
    print(f"  omega = {o.omega.omega}")
    print(f"  lifted Q squares to zero: {squares_to_zero(o.Q)}")
    if m == 1:
        print(f"  lifted Q equals the tangent-lift route: {o.Q == tangent_lift(lift.Q, o.steps[0])}")
    print()

for m in (1, 2):
    e = susy_expand(PoissonBivector(M, {}), m)
    print(f"int d^{m}theta A dX = {e.action}")

pi = PoissonBivector.from_entries(M, {(1, 2): M.parse("x1^2")})
print(f"with pi^12 = x1^2, m = 1:\n  {susy_expand(pi, 1).action}")
