"""The linearization around a wall.

The translation derivative of the wall lies in the kernel of L.  On discs of
radius R the lowest Dirichlet eigenvalue is nonnegative and decreases toward
zero as R grows.  On a tilted wall the ratio form Q vanishes, and on a relaxed
discrete wall it respects its negative bound.
"""
import numpy as np

from rabiwall import flow, linearized as lin, potential as pot, walls
from rabiwall.field import BC, central_diff

P = pot.validate_params(2.0, 0.6)
for h in (0.2, 0.1, 0.05):
    f = walls.wall_field(P, (int(round(2 / h)), int(round(20 / h)) + 1), h, (-1.0, -10.0))
    d = walls.wall_derivatives_alpha2(P, f)
    r = lin.apply_L(f, lin.PerturbationPair(d[2], d[3]), P)
    print(f"h={h}: |L(d2 u, d2 v)| = {max(np.abs(r.xi[:, 1:-1]).max(), np.abs(r.eta[:, 1:-1]).max()):.2e}")

bc = (BC.free(), BC.dirichlet((P.a, P.b), (P.b, P.a)))
f = walls.planar_wall(P, None, 89, 0.5, (-30.0, 30.0), x1_origin=-22.0, bc=bc)
for R in (5.0, 10.0, 20.0):
    pair = lin.principal_eigenpair(f, R, P)
    print(f"R={R:4.1f}: lambda_R = {pair.lambda_R:.6g}")

f = walls.wall_field(P, (161, 161), 0.05, (-4.0, -4.0), bc=(BC.dirichlet(), BC.dirichlet()), theta=0.3)
e = walls.wall_derivatives_alpha2(P, f, 0.3)
q = lin.q_ratio_form(f, (e[2], e[3]), lin.slope_pair((e[2], e[3]), (e[0], e[1])), P)
print(f"exact tilted wall: max |Q| = {np.nanmax(np.abs(q.pointwise)):.1e}")
g = flow.relax_newton(f, P)
d = [central_diff(a, g, k, edges="nan") for k in (0, 1) for a in (g.u, g.v)]
q = lin.q_ratio_form(g, (d[2], d[3]), lin.slope_pair((d[2], d[3]), (d[0], d[1])), P)
print(f"relaxed tilted wall: max (Q - bound) = {np.nanmax(q.pointwise - q.bound):.1e}")
