"""Energy of a planar wall in square windows.

The energy in [-R,R]^2 grows like R (the wall has length 2R).  Sliding a
window across the wall gives E(t); its derivative equals a boundary flux,
which we compare against a centered difference.
"""
from rabiwall import energy, potential as pot, walls
from rabiwall.field import BC

P = pot.validate_params(2.0, 0.6)
f = walls.planar_wall(P, None, 321, 0.5, (-90.0, 90.0), x1_origin=-80.0, bc=(BC.free(), BC.dirichlet()))
fit = energy.energy_growth_exponent(f, (10.0, 20.0, 40.0, 80.0), P)
for R, J in zip(fit.radii, fit.J):
    print(f"R={R:5.1f}  J={J:10.6f}  J/R={J / R:.6f}")
print(f"fitted exponent {fit.exponent:.6f}")

g = walls.planar_wall(P, None, 241, 0.1, (-42.0, 62.0), x1_origin=-12.0, bc=(BC.free(), BC.dirichlet()))
scan = energy.energy_translation_scan(g, 10.0, -30.0, 50.0, 81, P)
print(f"E(t) peaks at {scan.E.max():.6f}; tails {scan.E[0]:.1e}, {scan.E[-1]:.1e}")
for t in (9.0, 10.0):
    flux = energy.boundary_flux(g, 10.0, t)
    fd = energy.centered_energy_derivative(g, 10.0, t, 0.1, P)
    print(f"t={t}: boundary flux {flux:+.6f}, centered difference {fd:+.6f}")
