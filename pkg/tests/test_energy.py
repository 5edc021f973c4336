import numpy as np
import pytest

from rabiwall import energy, potential as pot, profile1d as p1, walls
from rabiwall.errors import DegenerateFit, WindowOutOfDomain
from rabiwall.field import BC, Field, constant_field


def planar(p, h=0.1, x1=12.0, x2=(-42.0, 62.0), profile=None):
    n1 = int(round(2 * x1 / h)) + 1
    return walls.planar_wall(p, profile, n1, h, x2, x1_origin=-x1, bc=(BC.free(), BC.dirichlet()))


def test_constant_field_zero_energy(p2):
    f = constant_field((p2.a, p2.b), (41, 41), 0.25, origin=(-5.0, -5.0))
    assert energy.gl_energy(f, ((-2, 2), (-3, 1)), p2) == pytest.approx(0.0, abs=1e-28)
    scan = energy.energy_translation_scan(f, 1.0, -2.0, 2.0, 5, p2)
    assert np.all(np.abs(scan.E) <= 1e-28) and scan.total_variation <= 1e-28


def test_window_outside_domain(p2):
    f = constant_field((p2.a, p2.b), (11, 11), 0.1)
    with pytest.raises(WindowOutOfDomain):
        energy.gl_energy(f, ((0, 1.5), (0, 0.5)), p2)
    with pytest.raises(WindowOutOfDomain):
        energy.gl_energy(f, ((0.5, 0.2), (0, 0.5)), p2)


def test_additivity_2x2_partition(p2, rng):
    u, v = pot.sample_admissible(p2, 61 * 51, rng)
    f = Field(u.reshape(61, 51), v.reshape(61, 51), 0.1, (0.0, 0.0))
    whole = energy.gl_energy(f, ((0.5, 5.5), (1.0, 4.0)), p2)
    parts = sum(
        energy.gl_energy(f, (a, b), p2)
        for a in ((0.5, 2.7), (2.7, 5.5))
        for b in ((1.0, 3.1), (3.1, 4.0))
    )
    assert abs(whole - parts) <= 1e-12 * abs(whole)


def test_single_cell(p2):
    f = Field(np.array([[0.2, 0.3], [0.5, 0.4]]), np.array([[0.9, 0.8], [0.7, 0.85]]), 0.5, (0.0, 0.0))
    u, v, h = f.u, f.v, f.h
    grad = 0.5 * ((u[1, 0] - u[0, 0]) ** 2 + (u[1, 1] - u[0, 1]) ** 2
                  + (u[0, 1] - u[0, 0]) ** 2 + (u[1, 1] - u[1, 0]) ** 2)
    grad += 0.5 * ((v[1, 0] - v[0, 0]) ** 2 + (v[1, 1] - v[0, 1]) ** 2
                   + (v[0, 1] - v[0, 0]) ** 2 + (v[1, 1] - v[1, 0]) ** 2)
    W = pot.potential_value((u, v), p2).mean()
    expected = 0.5 * grad + h * h * W
    assert energy.gl_energy(f, ((0, 0.5), (0, 0.5)), p2) == pytest.approx(expected, rel=1e-14)
    assert energy.cell_density(f, p2)[0, 0] == pytest.approx(expected / h**2, rel=1e-14)


def test_planar_wall_separability(p2):
    prof = p1.solve_profile(p2, p1.Grid1D(20.0, 4001))
    f = walls.planar_wall(p2, prof, 201, prof.h, (-20.0, 20.0), x1_origin=-1.0)
    R = 1.0
    E = energy.gl_energy(f, ((-R, R), (-20.0, 20.0)), p2)
    assert abs(E - 2 * R * p1.profile_energy(prof, p2)) <= 1e-3 * E


def test_scan_shape_and_refinement(p2):
    f = planar(p2)
    scan = energy.energy_translation_scan(f, 10.0, -30.0, 50.0, 81, p2)
    assert np.all(np.diff(scan.t_samples) > 0)
    assert scan.total_variation >= abs(scan.E[-1] - scan.E[0])
    peak = scan.E.max()
    assert abs(scan.t_samples[np.argmax(scan.E)]) <= 0.5
    assert scan.E[0] <= 1e-6 * peak and scan.E[-1] <= 1e-6 * peak
    far = np.abs(scan.t_samples) >= 20
    assert np.all(scan.E[far] <= scan.E[scan.t_samples == 0][0])
    fine = energy.energy_translation_scan(f, 10.0, -30.0, 50.0, 161, p2)
    assert abs(fine.total_variation - scan.total_variation) <= 1e-3 * scan.total_variation


def test_scan_matches_separable_product(p2):
    f = planar(p2)
    R = 10.0
    scan = energy.energy_translation_scan(f, R, -5.0, 5.0, 3, p2)
    line = Field(f.u[0], f.v[0], f.h, (f.origin[1],))
    for t, E in zip(scan.t_samples, scan.E):
        E1 = energy.gl_energy(line, (t - R, t + R), p2)
        assert abs(E - 2 * R * E1) <= 1e-3 * E


# the cube face crosses the wall for |t| near R; deep inside dE/dt is a tiny cancelling difference
@pytest.mark.parametrize("t", [10.0, -10.0, 9.0])
def test_flux_identity(p2, t):
    f = planar(p2)
    flux = energy.boundary_flux(f, 10.0, t)
    fd = energy.centered_energy_derivative(f, 10.0, t, 0.1, p2)
    assert abs(flux - fd) <= 1e-3 * abs(fd)


def test_flux_identity_second_order(p2):
    gaps = []
    for h in (0.1, 0.05):
        f = planar(p2, h=h)
        flux = energy.boundary_flux(f, 10.0, 11.5)
        gaps.append(abs(flux - energy.centered_energy_derivative(f, 10.0, 11.5, h, p2)))
    assert 3.5 <= gaps[0] / gaps[1] <= 4.5


def test_flux_identity_tilted_wall(p2):
    h = 0.05
    n = int(round(30 / h)) + 1
    f = walls.wall_field(p2, (n, n), h, (-15.0, -15.0), bc=(BC.free(), BC.free()), theta=0.3)
    flux = energy.boundary_flux(f, 5.0, 1.0)
    fd = energy.centered_energy_derivative(f, 5.0, 1.0, h, p2)
    assert abs(flux - fd) <= 1e-3 * abs(fd)


def test_growth_exponent_planar(p2):
    f = walls.planar_wall(p2, None, 321, 0.5, (-90.0, 90.0), x1_origin=-80.0, bc=(BC.free(), BC.dirichlet()))
    fit = energy.energy_growth_exponent(f, (10.0, 20.0, 40.0, 80.0), p2)
    assert abs(fit.exponent - 1.0) <= 0.05
    c = fit.constants
    assert (c.max() - c.min()) / c.mean() <= 0.05


def test_growth_exponent_1d_saturates(p2):
    prof = p1.solve_profile(p2, p1.Grid1D(100.0, 20001))
    line = walls.line_field(prof)
    fit = energy.energy_growth_exponent(line, (20.0, 40.0, 80.0), p2)
    assert abs(fit.exponent) <= 0.05


def test_growth_degenerate(p2):
    f = constant_field((p2.a, p2.b), (41, 41), 0.5, origin=(-10.0, -10.0))
    with pytest.raises(DegenerateFit) as info:
        energy.energy_growth_exponent(f, (2.0, 4.0, 8.0), p2)
    assert np.all(info.value.ratios == 0)
    with pytest.raises(ValueError):
        energy.energy_growth_exponent(f, (2.0, 4.0), p2)


def test_total_energy_gradient_is_discrete_el(p2, rng):
    # d(total energy)/d(u_i) = h^2 (-Lap_h u + W_u) on a periodic grid
    from rabiwall.field import laplacian

    n, h = 12, 0.3
    u, v = pot.sample_admissible(p2, n * n, rng)
    f = Field(u.reshape(n, n), v.reshape(n, n), h, (0.0, 0.0), (BC.periodic(), BC.periodic()))
    i = (4, 7)
    e = 1e-6
    up, um = np.array(f.u), np.array(f.u)
    up[i] += e
    um[i] -= e
    fd = (energy.total_energy(f.with_values(up, f.v), p2) - energy.total_energy(f.with_values(um, f.v), p2)) / (2 * e)
    wu, _ = pot.gradient_arrays(f.u, f.v, p2)
    exact = h**2 * (-laplacian(f.u, f) + wu)[i]
    assert fd == pytest.approx(exact, rel=1e-7)
