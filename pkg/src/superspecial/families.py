"""Quadric normal forms, similitude-group generators and the eight cubic families.

A nonhyperelliptic genus-4 curve is V(Q, P) with Q one of three quadric
normal forms:

    N1   2xw + 2yz
    N2   2xw + y^2 - eps z^2      (eps a non-square)
    DEG  2yw + z^2                (rank 3)

and P a cubic reduced by the similitude group {g : g^T phi g = mu phi} of Q.
The reduced cubics form the parametrized families packaged by
:func:`case_spec`, one per (quadric, q) pair, with the coefficient split used
by the enumeration.
"""

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import prod

from .gf import is_square, make_field, pick_epsilon
from .linalg import as_codes, det, matmul, scalar_value, transpose
from .poly import MonomialOrder, Poly, poly_ring

XYZW = ("x", "y", "z", "w")
TAGS = ("N1", "N2", "DEG")


def field_for_q(q):
    if q == 25:
        return make_field(5, 2)
    if q == 49:
        return make_field(7, 2)
    raise ValueError(f"unsupported field size {q}; the families are pinned to q = 25 and 49")


def xyzw_ring(field, order=None):
    return poly_ring(field, XYZW, order or MonomialOrder("grevlex"))


@dataclass(frozen=True)
class QuadricClass:
    tag: str
    epsilon: object
    Q: Poly
    phi: tuple

    @property
    def field(self):
        return self.Q.ring.field

    def form(self, v):
        """v^T phi v for a vector of codes."""
        f = self.field
        out = 0
        for i in range(4):
            for j in range(4):
                if self.phi[i][j] and v[i] and v[j]:
                    out = f.cadd(out, f.cmul(self.phi[i][j], f.cmul(v[i], v[j])))
        return out


def quadric(tag, field, epsilon=None):
    tag = tag.upper()
    if tag not in TAGS:
        raise ValueError(f"unknown quadric class {tag!r}")
    if field.p == 2:
        raise ValueError("characteristic 2 is not supported")
    R = xyzw_ring(field)
    x, y, z, w = R.gens()
    if tag == "N1":
        Q = 2 * x * w + 2 * y * z
        phi = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
        eps = None
    elif tag == "N2":
        eps = pick_epsilon(field) if epsilon is None else field(epsilon)
        if not eps or is_square(eps):
            raise ValueError(f"epsilon = {eps} must be a non-square")
        Q = 2 * x * w + y * y - eps * z * z
        phi = [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, -eps, 0], [1, 0, 0, 0]]
    else:
        # 2yw - eps z^2 normalized to 2yw + z^2, i.e. eps = -1
        eps = field(-1)
        Q = 2 * y * w + z * z
        phi = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]
    phi = tuple(tuple(row) for row in as_codes(phi, field))
    qc = QuadricClass(tag, eps, Q, phi)
    _check_quadric(qc)
    return qc


def _check_quadric(qc):
    R = qc.Q.ring
    acc = R.zero()
    gens = R.gens()
    for i in range(4):
        for j in range(4):
            if qc.phi[i][j]:
                acc = acc + gens[i] * gens[j] * R.field.from_code(qc.phi[i][j])
    if acc != qc.Q:
        raise AssertionError(f"phi does not represent {qc.Q}")


def discriminant_class(qc):
    """(rank, square class of the product of non-zero eigen-entries)."""
    from .linalg import rank
    f = qc.field
    r = rank([list(row) for row in qc.phi], f)
    if r == 4:
        d = f.from_code(det([list(row) for row in qc.phi], f))
    else:
        # rank-3 part: drop the kernel direction x
        d = f.from_code(det([list(row[1:]) for row in qc.phi[1:]], f))
    return r, is_square(d)


class GroupElement:
    """A matrix g with g^T phi g = mu phi for the attached quadric."""

    def __init__(self, matrix, quadric_class, name="", codes=False):
        """``matrix`` holds anything the field coerces; with ``codes=True``
        its entries are taken as field codes verbatim."""
        f = quadric_class.field
        self.quadric = quadric_class
        self.matrix = [list(r) for r in (matrix if codes else as_codes(matrix, f))]
        self.name = name
        if det(self.matrix, f) == 0:
            raise ValueError("singular matrix")
        phi = [list(r) for r in quadric_class.phi]
        lhs = matmul(matmul(transpose(self.matrix), phi, f), self.matrix, f)
        mu = _ratio(lhs, phi, f)
        if mu is None:
            raise ValueError(f"{name or 'matrix'} is not a similitude of {quadric_class.Q}")
        self.mu = f.from_code(mu)

    @property
    def field(self):
        return self.quadric.field

    def __matmul__(self, other):
        return GroupElement(matmul(self.matrix, other.matrix, self.field), self.quadric,
                            f"{self.name}*{other.name}", codes=True)

    def elements(self):
        f = self.field
        return [[f.from_code(c) for c in row] for row in self.matrix]

    def act(self, P):
        """P(g v)."""
        return P.linear_transform(self.elements())

    def is_scalar(self):
        return scalar_value(self.matrix) is not None

    def __repr__(self):
        f = self.field
        rows = ["[" + ", ".join(f.format_code(c) for c in row) + "]" for row in self.matrix]
        return f"GroupElement({self.name}, mu={self.mu}, [{', '.join(rows)}])"


def _ratio(a, b, f):
    """mu with a == mu * b, or None."""
    mu = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if y == 0:
                if x:
                    return None
                continue
            m = f.cmul(x, f.cinv(y))
            if mu is None:
                mu = m
            elif m != mu:
                return None
    if not mu:
        return None
    return mu


def group_element(kind, qc, *params):
    """Generator matrices of the similitude group of ``qc``.

    N1:  T(a, b, c), U(a, b), A, s1, s2
    N2:  H(a), A, U(a, b), R(a, b), W
    DEG: T(a), U(a), s, V(a, b, c, d), scalar(b), A
    Any class: matrix(M) for an arbitrary candidate (membership is checked).
    """
    f = qc.field
    p = [f(x) for x in params] if kind != "matrix" else params
    one, zero = f.one, f.zero

    def need_unit(*xs):
        for x in xs:
            if not x:
                raise ValueError(f"{kind}: parameter must be non-zero")

    eps = qc.epsilon
    tag = qc.tag
    if kind == "matrix":
        return GroupElement(params[0], qc, "M")
    if kind == "A":
        if tag == "N1":
            M = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
        else:
            M = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]
        return GroupElement(M, qc, "A")
    if tag == "N1":
        if kind == "T":
            a, b, c = p
            need_unit(a, b, c)
            return GroupElement(_diag(a, b, c / b, c / a), qc, "T")
        if kind == "U":
            a, b = p
            u1 = [[one, a, zero, zero], [zero, one, zero, zero], [zero, zero, one, -a], [zero, zero, zero, one]]
            u2 = [[one, zero, b, zero], [zero, one, zero, -b], [zero, zero, one, zero], [zero, zero, zero, one]]
            return GroupElement(matmul(as_codes(u1, f), as_codes(u2, f), f), qc, "U", codes=True)
        if kind == "s1":
            return GroupElement([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], qc, "s1")
        if kind == "s2":
            return GroupElement([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], qc, "s2")
    elif tag == "N2":
        if kind == "H":
            (a,) = p
            need_unit(a)
            return GroupElement(_diag(a, one, one, 1 / a), qc, "H")
        if kind == "U":
            a, b = p
            u1 = [[one, a, zero, -a * a / 2], [zero, one, zero, -a], [zero, zero, one, zero], [zero, zero, zero, one]]
            u2 = [[one, zero, b, b * b / (2 * eps)], [zero, one, zero, zero], [zero, zero, one, b / eps],
                  [zero, zero, zero, one]]
            return GroupElement(matmul(as_codes(u1, f), as_codes(u2, f), f), qc, "U", codes=True)
        if kind == "R":
            a, b = p
            n = a * a - eps * b * b
            if not n:
                raise ValueError("R(a, b) needs a^2 - eps b^2 != 0")
            return GroupElement([[one, zero, zero, zero], [zero, a, eps * b, zero], [zero, b, a, zero],
                                 [zero, zero, zero, n]], qc, "R")
        if kind == "W":
            return GroupElement([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]], qc, "W")
    else:
        if kind == "T":
            (a,) = p
            need_unit(a)
            return GroupElement(_diag(one, a, one, 1 / a), qc, "T")
        if kind == "U":
            (a,) = p
            # eps = -1 in the normalized quadric
            M = [[one, zero, zero, zero], [zero, one, a, a * a / (2 * eps)], [zero, zero, one, a / eps],
                 [zero, zero, zero, one]]
            return GroupElement(M, qc, "U")
        if kind == "s":
            return GroupElement([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], qc, "s")
        if kind == "V":
            a, b, c, d = p
            need_unit(a)
            return GroupElement([[a, b, c, d], [zero, one, zero, zero], [zero, zero, one, zero],
                                 [zero, zero, zero, one]], qc, "V")
        if kind == "scalar":
            (b,) = p
            need_unit(b)
            return GroupElement(_diag(one, b, b, b), qc, "scalar")
    raise ValueError(f"unknown generator {kind!r} for class {tag}")


def _diag(*entries):
    n = len(entries)
    zero = entries[0] * 0
    return [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]


# -- enumeration cases ---------------------------------------------------------

# Basis cubics as text in x,y,z,w with "eps" for the fixed non-square.
_N1I = dict(
    tag="N1",
    basis=["y*x^2", "z*x^2", "y*z*x", "z^3", "y*z^2", "y^2*w", "y*z*w", "y*w^2", "z*w^2", "w^3"],
    fixed="y^3",
    qbasis=["y^2*z", "z^2*w"],
    bdomains=[["0", "1", "-eps"], ["0", "1"]],
    display="(a1*y + a2*z)*x^2 + a3*y*z*x + y^3 + a4*z^3 + b1*y^2*z + a5*y*z^2"
            " + (a6*y^2 + a7*y*z + b2*z^2)*w + (a8*y + a9*z)*w^2 + a10*w^3",
)
_N1II = dict(
    tag="N1",
    basis=["y*x^2", "z*x^2", "y*z*x", "y^2*w", "y*z*w", "y*w^2", "z*w^2", "w^3"],
    fixed=None,
    qbasis=["y^2*z", "y*z^2", "z^2*w"],
    bdomains=[["0", "1"], ["0", "1", "-eps"], ["0", "1"]],
    display="(a1*y + a2*z)*x^2 + a3*y*z*x + b1*y^2*z + b2*y*z^2"
            " + (a4*y^2 + a5*y*z + b3*z^2)*w + (a6*y + a7*z)*w^2 + a8*w^3",
)
_N2 = dict(
    tag="N2",
    basis=["y*x^2", "z*x^2", "(y^2 - eps*z^2)*x", "y*(y^2 + 3*eps*z^2)", "z*(3*y^2 + eps*z^2)",
           "y^2*w", "y*z*w", "y*w^2", "z*w^2", "w^3"],
    fixed=None,
    qbasis=["y*(y^2 - eps*z^2)", "z^2*w"],
    bdomains=[["0", "1"], ["0", "1"]],
    display="(a1*y + a2*z)*x^2 + a3*(y^2 - eps*z^2)*x + b1*y*(y^2 - eps*z^2) + a4*y*(y^2 + 3*eps*z^2)"
            " + a5*z*(3*y^2 + eps*z^2) + (a6*y^2 + a7*y*z + b2*z^2)*w + (a8*y + a9*z)*w^2 + a10*w^3",
)
_DEG = dict(
    tag="DEG",
    basis=["x^3", "x*y^2", "x*z^2", "x*w^2", "x*y*z", "x*z*w", "y^3", "z^3", "w^3", "y*z^2"],
    fixed=None,
    qbasis=["z^2*w", "z*w^2"],
    bdomains=[["0", "1"], ["0", "1"]],
    display="a0*x^3 + (a1*y^2 + a2*z^2 + a3*w^2 + a4*y*z + a5*z*w)*x"
            " + a6*y^3 + a7*z^3 + a8*w^3 + a9*y*z^2 + b1*z^2*w + b2*z*w^2",
    first_index=0,
)

# loop-domain factors: "U" = units, "F" = whole field, "NZ2" = pairs != (0, 0)
_CASES = {
    "n1i-25": (_N1I, 25, ["a3", "a6", "a5", "a7", "a8", "a4", "a9", "a10"], [(("a1",), "U"), (("a2",), "U")]),
    "n1ii-25": (_N1II, 25, ["a3", "a4", "a5", "a6", "a7", "a8"], [(("a1",), "U"), (("a2",), "U")]),
    "n2-25": (_N2, 25, ["a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10"], [(("a1", "a2"), "NZ2")]),
    "deg-25": (_DEG, 25, ["a4", "a2", "a5", "a3", "a9", "a7", "a8"],
               [(("a0",), "U"), (("a1",), "F"), (("a6",), "U")]),
    "n1i-49": (_N1I, 49, ["a6", "a5", "a7", "a8", "a4", "a9", "a10"],
               [(("a1",), "U"), (("a2",), "U"), (("a3",), "F")]),
    "n1ii-49": (_N1II, 49, ["a3", "a4", "a5", "a6", "a7", "a8"], [(("a1",), "U"), (("a2",), "U")]),
    "n2-49": (_N2, 49, ["a4", "a5", "a6", "a7", "a8", "a9", "a10"], [(("a1", "a2"), "NZ2"), (("a3",), "F")]),
    "deg-49": (_DEG, 49, ["a4", "a2", "a5", "a3", "a9", "a7", "a8"],
               [(("a0",), "U"), (("a1",), "F"), (("a6",), "U")]),
}

CASE_IDS = tuple(_CASES)

# the solver variables in index order, per case
_SOLVE_SETS = {
    "n1i-25": ["a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10"],
    "n1ii-25": ["a3", "a4", "a5", "a6", "a7", "a8"],
    "n2-25": ["a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10"],
    "deg-25": ["a2", "a3", "a4", "a5", "a7", "a8", "a9"],
    "n1i-49": ["a4", "a5", "a6", "a7", "a8", "a9", "a10"],
    "n1ii-49": ["a3", "a4", "a5", "a6", "a7", "a8"],
    "n2-49": ["a4", "a5", "a6", "a7", "a8", "a9", "a10"],
    "deg-49": ["a2", "a3", "a4", "a5", "a7", "a8", "a9"],
}


def _factor_values(kind, nvars, q):
    if kind == "U":
        return [(c,) for c in range(1, q)]
    if kind == "F":
        return [(c,) for c in range(q)]
    if kind == "NZ2":
        return [t for t in product(range(q), repeat=2) if t != (0, 0)]
    raise ValueError(kind)


@dataclass
class CaseSpec:
    case_id: str
    q: int
    field: object
    quadric: QuadricClass
    a_names: list          # a_i names in basis order
    basis: list            # cubics p_i (Poly in xyzw)
    fixed: object          # fixed cubic part (Poly, possibly zero)
    b_names: list
    qbasis: list           # cubics q_j
    b_domains: list        # per-b lists of codes
    solve_vars: list       # index order
    priority: list         # solver order, most significant first
    loop_vars: list
    loop_factors: list     # [(names, [value tuples])]
    display: str
    generic_ring: object = dc_field(repr=False, default=None)

    @property
    def p(self):
        return self.field.p

    @property
    def Q(self):
        return self.quadric.Q

    @property
    def epsilon(self):
        """The fixed non-square with -eps primitive (also used by N1's b-domains)."""
        return pick_epsilon(self.field)

    @property
    def b_count(self):
        return prod(len(d) for d in self.b_domains)

    @property
    def loop_count(self):
        return prod(len(v) for _, v in self.loop_factors)

    @property
    def cell_count(self):
        return self.b_count * self.loop_count

    def solver_ring(self):
        return poly_ring(self.field, self.solve_vars, MonomialOrder("grevlex", self.priority))

    def cell(self, index):
        """(b values, loop values) as dicts name -> code for cell ``index``.

        Cells run over the b-domains (outermost, in b order) and then the loop
        factors in order, each in increasing code order.
        """
        if not 0 <= index < self.cell_count:
            raise IndexError(f"cell {index} outside [0, {self.cell_count})")
        index, rem = divmod(index, self.loop_count)
        loop = {}
        sizes = [len(v) for _, v in self.loop_factors]
        digits = []
        for s in reversed(sizes):
            rem, d = divmod(rem, s)
            digits.append(d)
        digits.reverse()
        for (names, values), d in zip(self.loop_factors, digits):
            for n, c in zip(names, values[d]):
                loop[n] = c
        bvals = {}
        bdigits = []
        for dom in reversed(self.b_domains):
            index, d = divmod(index, len(dom))
            bdigits.append(d)
        bdigits.reverse()
        for n, dom, d in zip(self.b_names, self.b_domains, bdigits):
            bvals[n] = dom[d]
        return bvals, loop

    def cell_index(self, bvals, loop):
        """Inverse of :meth:`cell`."""
        idx = 0
        for n, dom in zip(self.b_names, self.b_domains):
            idx = idx * len(dom) + dom.index(bvals[n])
        for names, values in self.loop_factors:
            idx = idx * len(values) + values.index(tuple(loop[n] for n in names))
        return idx

    def generic_P(self):
        """P = fixed + sum a_i p_i + sum b_j q_j in F_q[a.., b.., x, y, z, w]."""
        R = self.generic_ring
        out = self.fixed.to_ring(R) if self.fixed else R.zero()
        for n, c in zip(self.a_names, self.basis):
            out = out + R.var(n) * c.to_ring(R)
        for n, c in zip(self.b_names, self.qbasis):
            out = out + R.var(n) * c.to_ring(R)
        return out

    def cubic(self, values):
        """The explicit cubic for an assignment {name: value}; missing names are 0.

        Plain ints are read as field codes (as produced by :meth:`cell`).
        """
        R = xyzw_ring(self.field)
        f = self.field
        out = self.fixed if self.fixed else R.zero()
        for n, c in list(zip(self.a_names, self.basis)) + list(zip(self.b_names, self.qbasis)):
            v = values.get(n, 0)
            v = v if isinstance(v, int) else f.coerce_code(v)
            if v:
                out = out + c.scale(f.from_code(v))
        return out

    def display_P(self):
        """The family's displayed P parsed with symbolic coefficients."""
        R = self.generic_ring
        return R.parse(self.display, {"eps": self.epsilon})


def case_spec(case_id, field=None):
    key = case_id.lower()
    if key not in _CASES:
        raise ValueError(f"unknown case {case_id!r}; expected one of {', '.join(CASE_IDS)}")
    fam, q, priority, loop = _CASES[key]
    if field is None:
        field = field_for_q(q)
    elif field.q != q:
        raise ValueError(f"case {case_id} needs F_{q}, got F_{field.q}")
    qc = quadric(fam["tag"], field)
    R = xyzw_ring(field)
    eps = pick_epsilon(field)
    syms = {"eps": eps}
    basis = [R.parse(t, syms) for t in fam["basis"]]
    first = fam.get("first_index", 1)
    a_names = [f"a{first + i}" for i in range(len(basis))]
    qbasis = [R.parse(t, syms) for t in fam["qbasis"]]
    b_names = [f"b{j + 1}" for j in range(len(qbasis))]
    named = {"0": 0, "1": 1, "-eps": (-eps).code}
    b_domains = [[named[s] for s in dom] for dom in fam["bdomains"]]
    fixed = R.parse(fam["fixed"]) if fam["fixed"] else None
    loop_factors = [(names, _factor_values(kind, len(names), q)) for names, kind in loop]
    loop_vars = [n for names, _ in loop for n in names]
    solve = _SOLVE_SETS[key]
    assert sorted(solve) == sorted(priority)
    assert set(solve) | set(loop_vars) == set(a_names)
    spec = CaseSpec(key, q, field, qc, a_names, basis, fixed, b_names, qbasis, b_domains,
                    solve, priority, loop_vars, loop_factors, fam["display"])
    spec.generic_ring = poly_ring(field, tuple(a_names + b_names) + XYZW, MonomialOrder("grevlex"))
    return spec
