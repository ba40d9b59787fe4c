"""Polyline path behaviour: anchoring, parameterization, lifts, JSON."""

import math

import pytest

from sliceworks import ParseError, PathBallSpec, PathCn, UNIT_J, cdist, ray_from_real


def test_constructor_anchors_start_on_reals():
    p = PathCn(((1 + 5j, -2 + 0.5j), (1j, 2j)))
    assert p.vertices[0] == (1 + 0j, -2 + 0j)
    assert p.n == 2


def test_constructor_rejects_bad_shapes():
    with pytest.raises(ValueError):
        PathCn(())
    with pytest.raises(ValueError):
        PathCn(((),))
    with pytest.raises(ValueError):
        PathCn(((1 + 0j,), (1 + 0j, 2 + 0j)))


def test_arc_length_and_point_at():
    # right angle: 0 -> 3 -> 3+4i, lengths 3 and 4
    p = PathCn(((0j,), (3 + 0j,), (3 + 4j,)))
    assert p.arc_length() == pytest.approx(7.0)
    assert p.point_at(0.0) == (0j,)
    assert p.point_at(1.0) == (3 + 4j,)
    # 3/7 of the arc is exactly the corner
    corner = p.point_at(3.0 / 7.0)
    assert cdist(corner, (3 + 0j,)) < 1e-12
    mid_second = p.point_at(5.0 / 7.0)
    assert cdist(mid_second, (3 + 2j,)) < 1e-12
    with pytest.raises(ValueError):
        p.point_at(-0.1)
    with pytest.raises(ValueError):
        p.point_at(1.1)


def test_point_at_constant_path():
    p = PathCn(((2 + 0j,),))
    assert p.is_constant()
    assert p.arc_length() == 0.0
    assert p.point_at(0.5) == (2 + 0j,)


def test_sample_points_counts_and_endpoints():
    p = PathCn(((0j,), (1 + 0j,), (1 + 1j,)))
    pts = p.sample_points(per_segment=4)
    # first vertex + per segment (4 interior + far vertex)
    assert len(pts) == 1 + 2 * (4 + 1)
    assert pts[0] == (0j,)
    assert pts[-1] == (1 + 1j,)
    assert (1 + 0j,) in pts


def test_lift_and_conj():
    p = PathCn(((0.5 + 0j,), (0.6 + 0.8j,)))
    lifted = p.lift(UNIT_J)
    assert len(lifted) == 2
    assert lifted[0].is_real
    (q,) = lifted[1].to_quaternions()
    assert q.w == pytest.approx(0.6)
    assert q.y == pytest.approx(0.8)
    pc = p.conj()
    assert pc.vertices[-1] == (0.6 - 0.8j,)
    assert pc.vertices[0] == (0.5 + 0j,)


def test_extend_checks_dimension():
    p = PathCn(((0j, 0j),))
    q = p.extend((1j, 2 + 0j))
    assert q.endpoint == (1j, 2 + 0j)
    assert q.vertices[0] == (0j, 0j)
    with pytest.raises(ValueError):
        p.extend((1j,))


def test_ray_from_real():
    r = ray_from_real((2 + 0j,))
    assert r.is_constant()
    assert len(r.vertices) == 1
    r2 = ray_from_real((1 + 2j, 3 + 0j))
    assert r2.vertices == ((1 + 0j, 3 + 0j), (1 + 2j, 3 + 0j))
    assert r2.arc_length() == pytest.approx(2.0)


def test_json_round_trip():
    p = PathCn(((0j, 1 + 0j), (2 + 3j, -1j)))
    back = PathCn.from_json(p.to_json())
    assert back == p
    with pytest.raises(ParseError):
        PathCn.from_json({"nope": []})
    with pytest.raises(ParseError):
        PathCn.from_json({"vertices": [[[1.0]]]})
    with pytest.raises(ParseError):
        PathCn.from_json({"vertices": ["x"]})


def test_path_ball_spec():
    p = PathCn(((0j,), (1 + 1j,)))
    ball = PathBallSpec(p, 0.5)
    assert not ball.is_empty()
    assert ball.admits_target((1.1 + 1.1j,))
    assert not ball.admits_target((2 + 2j,))
    # boundary is excluded: open ball
    assert not ball.admits_target((1.5 + 1j,))
    empty = PathBallSpec(p, 0.0)
    assert empty.is_empty()
    assert not empty.admits_target((1 + 1j,))
    with pytest.raises(ValueError):
        PathBallSpec(p, -1.0)


def test_cdist_basics():
    assert cdist((0j,), (3 + 4j,)) == pytest.approx(5.0)
    assert cdist((1j, 1 + 0j), (1j, 1 + 0j)) == 0.0
    assert cdist((0j, 0j), (1 + 0j, 1j)) == pytest.approx(math.sqrt(2.0))
