import random

import pytest

from superspecial.families import xyzw_ring
from superspecial.gf import make_field
from superspecial.linalg import det
from superspecial.poly import monomials_of_degree
from superspecial.smoothness import (NONSINGULAR, SINGULAR, determine_nonsingularity, is_nonsingular,
                                     jacobian_minors, projective_dimension, singular_points_over)

F5 = make_field(5)
F25 = make_field(5, 2)


def _curve(field, q, c):
    R = xyzw_ring(field)
    return [R.parse(q), R.parse(c)]


def test_minor_examples():
    R = xyzw_ring(F5)
    x, y, z, w = R.gens()
    assert any(m == R.one() or m == -R.one() for m in jacobian_minors([x, y], 2))
    Q, P = _curve(F5, "2*y*w + z^2", "x^3 + y^3 + w^3")
    minors = jacobian_minors([Q, P], 2)
    assert len(minors) == 6
    # columns (x, z): det [[0, 2z], [3x^2, 0]] = -6 x^2 z
    assert minors[1] == R.parse("-6*x^2*z")
    assert jacobian_minors([P], 1) == [R.parse("3*x^2"), R.parse("3*y^2"), R.zero(), R.parse("3*w^2")]
    with pytest.raises(ValueError):
        jacobian_minors([Q, P], 3)
    with pytest.raises(ValueError):
        jacobian_minors([Q, P], 0)


def test_verdict_examples():
    assert determine_nonsingularity(_curve(F5, "2*y*w + z^2", "x^3 + y^3 + w^3"), expected_dim=1) == NONSINGULAR
    assert determine_nonsingularity(_curve(F25, "2*y*w + z^2", "x^3 + y^3 + w^3")) == NONSINGULAR
    assert determine_nonsingularity(_curve(F5, "2*y*w + z^2", "y^3 + w^3 + x*z^2")) == SINGULAR
    R = xyzw_ring(F5)
    assert determine_nonsingularity([R.var("x")]) == NONSINGULAR
    assert determine_nonsingularity([R.parse("x^2 + y^2 + z^2 + w^2")]) == NONSINGULAR
    assert determine_nonsingularity([R.parse("x*y")]) == SINGULAR
    assert is_nonsingular([R.parse("x*y - z*w")], expected_dim=2)


def test_verdict_errors():
    curve = _curve(F5, "2*y*w + z^2", "x^3 + y^3 + w^3")
    with pytest.raises(ValueError):
        determine_nonsingularity(curve, expected_dim=2, verify_dim=True)
    with pytest.raises(ValueError):
        determine_nonsingularity([curve[0] + xyzw_ring(F5).var("x")])
    with pytest.raises(ValueError):
        determine_nonsingularity([xyzw_ring(F5).zero()])


def test_singular_point_scan_examples():
    assert singular_points_over(_curve(F5, "2*y*w + z^2", "y^3 + w^3 + x*z^2")) == [(1, 0, 0, 0)]
    assert singular_points_over(_curve(F25, "2*y*w + z^2", "x^3 + y^3 + w^3")) == []


def _random_form(rng, R, degree, allowed=None):
    f = R.zero()
    for m in monomials_of_degree(4, degree):
        if allowed and not allowed(m):
            continue
        if rng.random() < 0.5:
            f = f + R.monomial(m, R.field.from_code(rng.randrange(1, R.field.q)))
    return f


def _random_matrix(rng, field):
    while True:
        M = [[rng.randrange(field.q) for _ in range(4)] for _ in range(4)]
        if det(M, field):
            return [[field.from_code(c) for c in row] for row in M]


def _planted(rng, field):
    # a curve through (1:0:0:0) with dP = l(pt) dQ there, then moved by a random GL_4 element
    R = xyzw_ring(field)
    Q = _random_form(rng, R, 2, lambda m: m[0] < 2)
    ell = _random_form(rng, R, 1)
    H = _random_form(rng, R, 3, lambda m: m[0] < 2 and sum(m[1:]) >= 2)
    M = _random_matrix(rng, field)
    return [Q.linear_transform(M), (ell * Q + H).linear_transform(M)]


def _random_curve(rng, field):
    R = xyzw_ring(field)
    return [_random_form(rng, R, 2), _random_form(rng, R, 3)]


def _scan_corpus():
    rng = random.Random(2024)
    out = []
    while len(out) < 50:
        planted = len(out) < 25
        polys = _planted(rng, F25) if planted else _random_curve(rng, F25)
        if any(not f for f in polys) or projective_dimension(polys) != 1:
            continue
        out.append((planted, polys))
    return out


def test_verdicts_match_the_point_scan():
    verdicts = []
    for planted, polys in _scan_corpus():
        verdict = determine_nonsingularity(polys, expected_dim=1)
        found = singular_points_over(polys)
        if planted:
            assert found and verdict == SINGULAR
        if found:
            assert verdict == SINGULAR
        if verdict == NONSINGULAR:
            assert not found
        verdicts.append(verdict)
    assert NONSINGULAR in verdicts


@pytest.mark.parametrize("equations", [
    ("2*y*w + z^2", "x^3 + y^3 + w^3"),
    ("2*y*w + z^2", "y^3 + w^3 + x*z^2"),
    ("2*x*w + 2*y*z", "x^3 + y^3 + z^3 + w^3"),
])
def test_verdict_invariant_under_coordinate_change(equations):
    rng = random.Random(str(equations))
    polys = _curve(F5, *equations)
    base = determine_nonsingularity(polys)
    assert determine_nonsingularity(polys[::-1]) == base
    for _ in range(10):
        M = _random_matrix(rng, F5)
        assert determine_nonsingularity([f.linear_transform(M) for f in polys], expected_dim=1) == base


def test_diagonal_cubics_are_smooth_for_every_leading_coefficient():
    # a0 x^3 + a6 y^3 + w^3 on 2yw + z^2 is smooth for all units a0, a6
    R = xyzw_ring(F25)
    Q = R.parse("2*y*w + z^2")
    x, y, w = R.var("x"), R.var("y"), R.var("w")
    rng = random.Random(8)
    pairs = [(9, 9), (13, 21), (17, 13)] + [(rng.randrange(1, 25), rng.randrange(1, 25)) for _ in range(12)]
    for a0, a6 in pairs:
        P = x ** 3 * F25.from_code(a0) + y ** 3 * F25.from_code(a6) + w ** 3
        assert determine_nonsingularity([Q, P], expected_dim=1) == NONSINGULAR
