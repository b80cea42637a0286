"""From a bivector to a BV-style master equation and field equations.

A bivector pi on M gives Pi = 1/2 p pi p on T*[1]M.  Its Hamiltonian vector
field squares to zero exactly when pi is Poisson, and (Pi, Pi) = 0 is the
same statement read through the bracket.
"""
from multigraded.calculus import squares_to_zero
from multigraded.models import PoissonBivector, coordinate_space, pi_jacobiator, psm_field_model, psm_lift
from multigraded.symplectic import master_equation, poisson_bracket


def show(label, pi):
    lift = psm_lift(pi)
    print(f"{label}")
    print(f"  Pi = {lift.Pi}")
    for name in lift.context.names:
        print(f"  Q({name}) = {lift.Q.value(name)}")
    jac = {k: v for k, v in pi_jacobiator(pi).items() if v}
    print(f"  Q^2 = 0: {squares_to_zero(lift.Q)}   master equation: {master_equation(lift.omega, lift.Pi)}")
    if jac:
        (ijk, v), *_ = jac.items()
        args = ",".join(pi.ctx.names[i] for i in ijk)
        print(f"  Jacobiator J({args}) = {v};  (Pi, Pi) = {poisson_bracket(lift.omega, lift.Pi, lift.Pi)}")
    print()
    return lift


M = coordinate_space(["x1", "x2", "x3"])
x1, x2, x3 = (M.gen(n) for n in M.names)
lift = show("so(3)* with pi^{12} = x3 and cyclic", PoissonBivector.from_entries(M, {(1, 2): x3, (2, 3): x1, (3, 1): x2}))
show("pi^{12} = x3, pi^{23} = x2 (not Poisson)", PoissonBivector.from_entries(M, {(1, 2): x3, (2, 3): x2}))

model = psm_field_model(lift)
print("Field equations on the source T[1]R^2 (X = x, A = -p):")
for field, eq in model.field_equations().items():
    print(f"  {field}: {eq}")
print("Gauge transformations with parameters e:")
for field, var in model.gauge_transformations().items():
    print(f"  delta {field} = {var}")
