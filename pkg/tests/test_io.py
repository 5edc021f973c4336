import os

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rabiwall import io, linearized as lin, profile1d as p1, walls
from rabiwall.field import BC, Field


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips(x):
    assert float(io.fmt(x)) == x


def test_csv_round_trip(tmp_path, rng):
    a, b = rng.standard_normal(7), np.arange(7)
    path = io.write_csv(tmp_path / "x.csv", ("a", "b"), (a, b))
    assert path.read_text().splitlines()[0] == "a,b"
    data = io.read_csv(path)
    assert np.array_equal(data["a"], a) and np.array_equal(data["b"], b)


def test_atomic_write_leaves_no_temp(tmp_path):
    target = tmp_path / "sub" / "f.txt"
    io.atomic_write_text(target, "one\n")
    io.atomic_write_text(target, "two\n")
    assert target.read_text() == "two\n"
    assert os.listdir(target.parent) == ["f.txt"]


def test_atomic_write_failure_keeps_old(tmp_path):
    target = tmp_path / "f.txt"
    io.atomic_write_text(target, "old\n")

    class Boom:
        def __str__(self):
            raise RuntimeError

    with pytest.raises(TypeError):
        io.atomic_write_text(target, Boom())
    assert target.read_text() == "old\n"
    assert os.listdir(tmp_path) == ["f.txt"]


def test_profile_csv(tmp_path, p2):
    prof = p1.solve_profile(p2, p1.Grid1D(5.0, 51))
    data = io.read_csv(io.write_profile_csv(tmp_path / "p.csv", prof))
    assert np.array_equal(data["t"], prof.t) and np.array_equal(data["U"], prof.U)
    assert np.array_equal(data["V"], prof.V)


@pytest.mark.parametrize("dims", [1, 2])
def test_snapshot_round_trip(tmp_path, p2, dims):
    if dims == 2:
        f = walls.wall_field(p2, (8, 12), 0.5, (-2.0, -3.0), bend=0.2)
    else:
        prof = p1.solve_profile(p2, p1.Grid1D(5.0, 21))
        f = Field(prof.U, prof.V, prof.t[1] - prof.t[0], (-5.0,), (BC.dirichlet((p2.a, p2.b), (p2.b, p2.a)),))
    g = io.read_snapshot(io.write_snapshot(tmp_path / "s.txt", f))
    assert np.array_equal(g.u, f.u) and np.array_equal(g.v, f.v)
    assert g.h == f.h and g.origin == f.origin
    assert [b.kind for b in g.bc] == [b.kind for b in f.bc]


def test_snapshot_recovers_end_states(tmp_path, p2):
    f = walls.wall_field(p2, (8, 41), 0.5, (-2.0, -10.0), bend=0.0)
    g = io.read_snapshot(io.write_snapshot(tmp_path / "s.txt", f))
    assert g.bc[1].left == pytest.approx((f.u[0, 0], f.v[0, 0]))
    assert g.bc[1].right == pytest.approx((f.u[0, -1], f.v[0, -1]))


def test_snapshot_bad_header(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2 3 3\n1 2 3\n")
    with pytest.raises(ValueError):
        io.read_snapshot(p)
    p.write_text("2 3 3 0.5 0 0 periodic dirichlet\n1 2 3\n")
    with pytest.raises(ValueError):
        io.read_snapshot(p)


def test_eigenpair_sidecar(tmp_path, p2):
    f = walls.planar_wall(p2, None, 21, 0.5, (-10.0, 10.0), x1_origin=-5.0,
                          bc=(BC.free(), BC.dirichlet((p2.a, p2.b), (p2.b, p2.a))))
    pair = lin.principal_eigenpair(f, 3.0, p2)
    path = io.write_eigenpair_csv(tmp_path / "e.csv", f, pair)
    data = io.read_csv(path)
    assert len(data["phi"]) == int(pair.mask.sum())
    side = dict(line.split("=") for line in (tmp_path / "e.csv.lambda").read_text().split())
    assert float(side["lambda_R"]) == pair.lambda_R and float(side["R"]) == 3.0
