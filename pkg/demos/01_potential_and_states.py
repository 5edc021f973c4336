"""The Rabi-coupled potential and its three constant states.

For each parameter pair we list the states (a,b), (b,a) and (c,c), check that
they are critical points of W, and classify them by the Hessian.  The mixed
derivative W_uv stays above (2/alpha + 1) omega on the admissible region,
which is the sign fact behind most of the later diagnostics.
"""
import numpy as np

from rabiwall import potential as pot

rng = np.random.default_rng(7)
for alpha, omega in ((2.0, 0.6), (3.0, 1.2), (4.0, 0.5)):
    P = pot.validate_params(alpha, omega)
    print(f"alpha={alpha}, omega={omega}:  a={P.a:.6f}  b={P.b:.6f}  c={P.c:.6f}")
    for name, s in zip(("(a,b)", "(b,a)", "(c,c)"), pot.steady_states(P)):
        g = np.hypot(*pot.potential_gradient(s, P))
        eig = np.linalg.eigvalsh(pot.potential_hessian(s, P).matrix())
        print(f"  {name}: |grad W| = {g:.1e}, Hessian eigenvalues {eig[0]:+.4f} {eig[1]:+.4f}"
              f"  -> {pot.state_stability(s, P)}")
    u, v = pot.sample_admissible(P, 2000, rng)
    w_uv = pot.potential_hessian((u, v), P).w_uv
    print(f"  min W_uv on 2000 admissible samples {w_uv.min():.4f} >= bound {pot.wuv_lower_bound(P):.4f}")
