import random

import pytest

from superspecial.families import (CASE_IDS, case_spec, discriminant_class, group_element, quadric,
                                   xyzw_ring)
from superspecial.gf import is_square, make_field, pick_epsilon
from superspecial.linalg import matmul, rank, transpose
from superspecial.poly import monomials_of_degree

F5 = make_field(5)
F25 = make_field(5, 2)

ITERATIONS = {
    "n1i-25": 3456, "n1ii-25": 6912, "n2-25": 2496, "deg-25": 57600,
    "n1i-49": 677376, "n1ii-49": 27648, "n2-49": 470400, "deg-49": 451584,
}


def test_quadrics():
    R = xyzw_ring(F25)
    assert quadric("N1", F25).Q == R.parse("2*x*w + 2*y*z")
    assert quadric("DEG", F25).Q == R.parse("2*y*w + z^2")
    assert quadric("N1", F25).phi == ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0))
    assert quadric("N2", F5, 2).epsilon == F5(2)
    with pytest.raises(ValueError):
        quadric("N2", F5, 4)
    with pytest.raises(ValueError):
        quadric("N3", F5)
    with pytest.raises(ValueError):
        quadric("N2", F5)           # the generator of F_5 is 1, not primitive
    with pytest.raises(ValueError):
        quadric("N1", make_field(2))


def test_quadrics_pairwise_inequivalent():
    for field, eps in ((F5, 2), (F25, None), (make_field(7, 2), None)):
        classes = {tag: discriminant_class(quadric(tag, field, eps)) for tag in ("N1", "N2", "DEG")}
        assert len(set(classes.values())) == 3
        assert classes["DEG"][0] == 3 and classes["N1"][0] == 4


def _similitude_ok(g):
    f = g.field
    phi = [list(r) for r in g.quadric.phi]
    lhs = matmul(matmul(transpose(g.matrix), phi, f), g.matrix, f)
    mu = g.mu.code
    return lhs == [[f.cmul(mu, c) for c in row] for row in phi] and mu != 0


def test_generator_examples():
    qc = quadric("DEG", F5)
    T = group_element("T", qc, 2)
    assert T.matrix == [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]] and T.mu == F5(1)
    s = group_element("s", qc)
    assert s.mu == F5(1) and s.act(qc.Q) == qc.Q
    n2 = quadric("N2", F25)
    eps = n2.epsilon
    for a in F25.elements():
        for b in F25.elements():
            if a * a - eps * b * b == F25.one:
                assert group_element("R", n2, a, b).mu == F25.one
    with pytest.raises(ValueError):
        group_element("T", qc, 0)
    with pytest.raises(ValueError):
        group_element("R", n2, 0, 0)
    with pytest.raises(ValueError):
        group_element("matrix", qc, [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(ValueError):
        group_element("W", qc)


def _random_generators(rng, field):
    u = lambda: field.from_code(rng.randrange(1, field.q))
    e = lambda: field.from_code(rng.randrange(field.q))
    n1, n2, deg = (quadric(t, field) for t in ("N1", "N2", "DEG"))
    out = [group_element("T", n1, u(), u(), u()), group_element("U", n1, e(), e()),
           group_element("A", n1), group_element("s1", n1), group_element("s2", n1),
           group_element("H", n2, u()), group_element("U", n2, e(), e()), group_element("A", n2),
           group_element("W", n2),
           group_element("T", deg, u()), group_element("U", deg, e()), group_element("s", deg),
           group_element("V", deg, u(), e(), e(), e()), group_element("scalar", deg, u()),
           group_element("A", deg)]
    while True:
        a, b = e(), e()
        if a * a - n2.epsilon * b * b:
            out.append(group_element("R", n2, a, b))
            return out


@pytest.mark.parametrize("seed", range(5))
def test_every_generator_is_a_similitude(seed):
    rng = random.Random(seed)
    gens = _random_generators(rng, F25)
    for g in gens:
        assert _similitude_ok(g)
        assert g.act(g.quadric.Q) == g.quadric.Q.scale(g.mu)
    same = [g for g in gens if g.quadric.tag == "DEG"]
    prod = same[0]
    for g in same[1:]:
        prod = prod @ g
        assert _similitude_ok(prod)


def _in_span(polys, basis):
    mons = sorted({m for f in polys + basis for m in f.terms})
    row = lambda f: [f.terms.get(m, 0) for m in mons]
    field = basis[0].ring.field
    return rank([row(f) for f in basis + polys], field) == rank([row(f) for f in basis], field)


def test_n2_rotation_subrepresentations():
    rng = random.Random(41)
    qc = quadric("N2", F25)
    R = xyzw_ring(F25)
    eps = qc.epsilon
    y, z = R.var("y"), R.var("z")
    V1 = [y * (y * y - eps * z * z), z * (y * y - eps * z * z)]
    V2 = [y * (y * y + 3 * eps * z * z), z * (3 * y * y + eps * z * z)]
    done = 0
    while done < 50:
        a, b = (F25.from_code(rng.randrange(25)) for _ in range(2))
        if not a * a - eps * b * b:
            continue
        g = group_element("R", qc, a, b)
        for V in (V1, V2):
            assert _in_span([g.act(f) for f in V], V)
        done += 1


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_iteration_counts(case_id):
    assert case_spec(case_id).cell_count == ITERATIONS[case_id]


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_cell_index_round_trip(case_id):
    spec = case_spec(case_id)
    rng = random.Random(case_id)
    for index in [0, spec.cell_count - 1] + [rng.randrange(spec.cell_count) for _ in range(50)]:
        bvals, loop = spec.cell(index)
        assert spec.cell_index(bvals, loop) == index
        assert set(bvals) == set(spec.b_names) and set(loop) == set(spec.loop_vars)
    with pytest.raises(IndexError):
        spec.cell(spec.cell_count)


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_display_matches_the_basis(case_id):
    spec = case_spec(case_id)
    assert spec.display_P() == spec.generic_P()
    for c in spec.basis + spec.qbasis:
        assert c.is_homogeneous() and c.degree() == 3


def test_case_pins():
    n1i = case_spec("n1i-25")
    assert n1i.solve_vars == ["a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10"]
    assert n1i.b_domains[0] == [0, 1, (-n1i.epsilon).code]
    deg = case_spec("deg-25")
    assert deg.b_domains == [[0, 1], [0, 1]]
    assert deg.Q == xyzw_ring(F25).parse("2*y*w + z^2")
    assert case_spec("n1i-49").loop_vars == ["a1", "a2", "a3"]
    eps = pick_epsilon(F25)
    assert not is_square(eps) and (-eps).order() == 24
    with pytest.raises(ValueError):
        case_spec("n3-25")
    with pytest.raises(ValueError):
        case_spec("deg-25", F5)


def test_cubic_from_codes():
    spec = case_spec("deg-25")
    bvals, loop = spec.cell(0)
    P = spec.cubic({**bvals, **loop, "a8": 1})
    assert P == xyzw_ring(F25).parse("x^3 + y^3 + w^3")
