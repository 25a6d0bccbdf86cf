"""Tools for individual genus-4 curves V(Q, P): rational points, projective
equivalence, the automorphisms of x^3 + y^3 + w^3 on the degenerate quadric,
the 21 F_25-forms, and the superspecial mass.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .families import GroupElement, quadric, xyzw_ring
from .gf import cube_roots, is_primitive, make_field, sqrt
from .groebner import normal_form
from .linalg import as_codes, matmul, scalar_value
from .poly import MonomialOrder, eval_on_points, projective_grid


@dataclass(frozen=True)
class CurvePair:
    Q: object
    P: object

    def __post_init__(self):
        if self.Q.ring != self.P.ring:
            raise ValueError("Q and P live in different rings")
        if self.Q.degree() != 2 or self.P.degree() != 3:
            raise ValueError("expected deg Q = 2 and deg P = 3")
        if not (self.Q.is_homogeneous() and self.P.is_homogeneous()):
            raise ValueError("Q and P must be homogeneous")
        if not normal_form(self.P, [self.Q]):
            raise ValueError("P lies in the ideal of Q")

    @property
    def field(self):
        return self.Q.ring.field


def curve(Q, P, field=None):
    """CurvePair from text or Polys; text is parsed in F_q[x, y, z, w]."""
    if isinstance(Q, str) or isinstance(P, str):
        if field is None:
            raise ValueError("a field is needed to parse equations")
        R = xyzw_ring(field)
        Q = R.parse(Q) if isinstance(Q, str) else Q
        P = R.parse(P) if isinstance(P, str) else P
    return CurvePair(Q, P)


# ---------------------------------------------------------------- points

def count_points(C):
    """Number of F_q-rational points of V(Q, P) in P^3."""
    pts = projective_grid(C.field.q, 4)
    on = (eval_on_points(C.Q, pts) == 0) & (eval_on_points(C.P, pts) == 0)
    return int(on.sum())


# ---------------------------------------------------------------- equivalence

def _lex(f):
    return f.with_order(MonomialOrder("lex"))


def verify_projective_equivalence(g, C1, C2):
    """lambda with g P2 = lambda P1 mod Q, or None.

    ``g`` is a GroupElement (or a plain matrix) acting by P -> P(g v).
    """
    if C1.Q != C2.Q:
        raise ValueError("the curves lie on different quadrics")
    M = g.elements() if isinstance(g, GroupElement) else g
    Q = _lex(C1.Q)
    P1 = normal_form(_lex(C1.P), [Q])
    gP2 = normal_form(_lex(C2.P.linear_transform(M)), [Q])
    if not P1:
        return None
    m = P1.lm()
    c2 = gP2.terms.get(m, 0)
    if not c2:
        return None
    field = P1.ring.field
    lam = field.from_code(c2) / field.from_code(P1.terms[m])
    if gP2 - P1.scale(lam):
        return None
    return lam


def is_automorphism(g, C):
    return verify_projective_equivalence(g, C, C) is not None


# ---------------------------------------------------------------- the F_25 curve

def f25():
    return make_field(5, 2)


def sqrt3(field=None):
    """The square root t of 3 with 1 + t primitive (smallest code if both are)."""
    field = field or f25()
    roots = sqrt(field(3))
    if not roots:
        raise ValueError(f"3 is a square-free non-residue with no root in F_{field.q}")
    for t in roots:
        if is_primitive(field.one + t):
            return t
    raise ValueError("1 + sqrt(3) is not primitive for either root")


def zeta(field=None):
    field = field or f25()
    z = field.one + sqrt3(field)
    assert is_primitive(z)
    return z


def base_curve(field=None):
    """2yw + z^2 = 0, x^3 + y^3 + w^3 = 0."""
    field = field or f25()
    return CurvePair(quadric("DEG", field).Q, xyzw_ring(field).parse("x^3 + y^3 + w^3"))


def coxeter_generators(field=None):
    """The four involutions s_1..s_4 generating the S_5 inside Aut."""
    field = field or f25()
    qc = quadric("DEG", field)
    t = sqrt3(field)
    one = field.one
    s1 = [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]
    s2 = [[1, 0, 0, 0], [0, 0, 0, 2 * one - t], [0, 0, 1, 0], [0, 2 * one + t, 0, 0]]
    s3 = [[1, 0, 0, 0], [0, -1, 1, 3], [0, 1, 3, 1], [0, 3, 1, -1]]
    s4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]
    return [GroupElement(m, qc, f"s{i + 1}") for i, m in enumerate([s1, s2, s3, s4])]


def _word(gens, indices, field):
    M = [[int(i == j) for j in range(4)] for i in range(4)]
    for i in indices:
        M = matmul(M, gens[i].matrix, field)
    return M


def coxeter_order(gens, i, j, field, limit=6):
    """Smallest n with (s_i s_j)^n scalar, projectively."""
    for n in range(1, limit + 1):
        if scalar_value(_word(gens, [i, j] * n, field)) is not None:
            return n
    return None


def verify_s5_presentation(field=None):
    """s_1..s_4 are automorphisms of the base curve and satisfy the Coxeter
    relations of S_5 up to scalars."""
    field = field or f25()
    gens = coxeter_generators(field)
    C = base_curve(field)
    if not all(is_automorphism(g, C) for g in gens):
        return False
    for i in range(4):
        if coxeter_order(gens, i, i, field) != 1:
            # s_i s_i = 1 means order 1 for the pair (s_i s_i)
            return False
        for j in range(i + 1, 4):
            if coxeter_order(gens, i, j, field) != (3 if j == i + 1 else 2):
                return False
    return True


def _g_element(field, qc, sign, lam, a, c, d):
    """diag(1,1,sign,1) T(c) U(b) s U(a) diag(d,1,1,1) with b = a^17 + a^11 + 2a^5."""
    from .families import group_element
    b = a ** 17 + a ** 11 + 2 * a ** 5
    parts = [
        as_codes([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, sign, 0], [0, 0, 0, 1]], field),
        group_element("T", qc, c).matrix,
        group_element("U", qc, b).matrix,
        group_element("s", qc).matrix,
        group_element("U", qc, a).matrix,
        as_codes([[d, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], field),
    ]
    M = parts[0]
    for part in parts[1:]:
        M = matmul(M, part, field)
    return M


def automorphism_group_elements(field=None):
    """The matrices of G_k (orthogonal, g P = lambda P mod Q with lambda = +-1),
    listed from the two parametrised families and each checked for membership.

    Returns (elements, failures) where ``elements`` is a list of
    (matrix, lambda) and ``failures`` the parameter sets whose matrix does not
    satisfy the membership test.
    """
    field = field or f25()
    qc = quadric("DEG", field)
    C = base_curve(field)
    one = field.one
    out, failures = [], []

    def check(M, lam, params):
        g = GroupElement(M, qc, codes=True)
        got = verify_projective_equivalence(g, C, C)
        if g.mu != one or got is None or got != lam:
            failures.append(params)
        else:
            out.append((tuple(map(tuple, g.matrix)), lam))

    for lam in (one, -one):
        for sign in (one, -one):
            for c in cube_roots(lam):
                for d in cube_roots(lam):
                    M = [[d, 0, 0, 0], [0, c, 0, 0], [0, 0, sign, 0], [0, 0, 0, 1 / c]]
                    check(as_codes(M, field), lam, ("diag", lam, sign, c, d))
        for a in field.elements():
            base = 3 * a ** 6 + one
            if not base:
                continue
            for sign in (one, -one):
                for c in cube_roots(lam * base):
                    for d in cube_roots(lam):
                        check(_g_element(field, qc, sign, lam, a, c, d), lam, ("bruhat", lam, sign, a, c, d))
    return out, failures


def automorphism_group_order(field=None):
    elements, failures = automorphism_group_elements(field)
    if failures:
        raise ValueError(f"{len(failures)} listed parameter sets fail the membership test")
    return len({m for m, _ in elements})


# ---------------------------------------------------------------- representatives

EXPECTED_COUNTS = {
    ("I", 0, 0): 66,
    **{("I", i, j): 36 for i, j in [(2, 1), (1, 2), (1, 3), (2, 3)]},
    **{("II", i, k): 31 for i, k in [(0, 2), (2, 2)]},
    **{("II", i, k): 26 for i, k in [(0, 0), (1, 0), (2, 0), (0, 3), (1, 3), (2, 3)]},
    **{("I", i, j): 21 for i, j in [(0, 1), (1, 1), (0, 2), (2, 2)]},
    ("II", 1, 2): 16,
    **{("I", i, j): 6 for i, j in [(1, 0), (2, 0), (0, 3)]},
}


@dataclass(frozen=True)
class Representative:
    family: str
    i: int
    j: int
    curve: CurvePair
    expected_points: int

    def label(self):
        return f"({self.family}) ({self.i},{self.j})"


def representative(family, i, j, field=None):
    """zeta^i x^3 + zeta^j y^3 + w^3 (+ z w^2 for family II) on 2yw + z^2."""
    field = field or f25()
    R = xyzw_ring(field)
    z = zeta(field)
    x, y, zz, w = R.gens()
    P = x ** 3 * (z ** i) + y ** 3 * (z ** j) + w ** 3
    if family == "II":
        P = P + zz * w * w
    elif family != "I":
        raise ValueError(f"unknown family {family!r}")
    C = CurvePair(quadric("DEG", field).Q, P)
    return Representative(family, i, j, C, EXPECTED_COUNTS[(family, i, j)])


def representatives_21(field=None):
    field = field or f25()
    reps = [representative("I", i, j, field) for i in range(3) for j in range(4)]
    reps += [representative("II", i, k, field) for i in range(3) for k in (0, 2, 3)]
    return reps


def classification_table(field=None, check_superspecial=True):
    """Rows (label, expected, computed, superspecial) for the 21 forms."""
    from .enumerate import verify_survivor
    rows = []
    for rep in representatives_21(field):
        C = rep.curve
        ss = verify_survivor(C.P, C.Q) if check_superspecial else None
        rows.append({"family": rep.family, "i": rep.i, "j": rep.j, "equation": str(C.P),
                     "expected": rep.expected_points, "computed": count_points(C),
                     "superspecial": ss})
    return rows


# ---------------------------------------------------------------- mass

MAX_MASS_GENUS = 8


def _bernoulli(n):
    from sympy import bernoulli
    b = bernoulli(n)
    return Fraction(int(b.p), int(b.q))


def mass_formula(g, p):
    """prod_i (2i-1)! zeta(2i) / (2 pi)^(2i) * prod_i (p^i + (-1)^i), exactly.

    Uses (2i-1)! zeta(2i) / (2 pi)^(2i) = (-1)^(i+1) B_2i / (4i).
    """
    if not 1 <= g <= MAX_MASS_GENUS:
        raise ValueError(f"genus must be in 1..{MAX_MASS_GENUS}")
    if p < 2:
        raise ValueError("p must be a prime")
    zeta_part = prod((Fraction((-1) ** (i + 1)) * _bernoulli(2 * i) / (4 * i) for i in range(1, g + 1)),
                     start=Fraction(1))
    return zeta_part * prod(p ** i + (-1) ** i for i in range(1, g + 1))


def mass_share(aut_order, mass):
    """Share of the mass carried by one Jacobian with |Aut(C)| = aut_order:
    (1 / (2 |Aut(C)|)) / mass, as an exact fraction."""
    if aut_order < 1:
        raise ValueError("automorphism group order must be positive")
    return Fraction(1, 2 * aut_order) / Fraction(mass)
