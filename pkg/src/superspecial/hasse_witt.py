"""Hasse-Witt matrices of complete-intersection curves by coefficient extraction.

For a curve C = V(f_1, ..., f_{r-1}) in P^r, write the product
(f_1 ... f_{r-1})^(p-1) = sum c_I X^I and let k^(1), ..., k^(g) be the strictly
negative exponent vectors summing to -sum(deg f_i).  The Hasse-Witt matrix is

    H[i][j] = c_{-p k^(j) + k^(i)}

(column j is the Frobenius-pulled index).  For genus-4 curves V(Q, P) in P^3
this gives the sixteen monomials of :func:`genus4_table` and the fast zero test
:func:`is_hw_zero`.
"""

from itertools import combinations

from .gf import FieldElement
from .poly import Poly, add_into, mul_terms, poly_ring


class HWIndexSet:
    def __init__(self, r, degrees, rows):
        self.r = r
        self.degrees = tuple(degrees)
        self.rows = rows

    @property
    def genus(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):
        return f"HWIndexSet(r={self.r}, degrees={self.degrees}, rows={self.rows})"


def _negative_tuples(length, total):
    """Tuples of ``length`` integers <= -1 summing to ``total``, lex ascending."""
    if length == 0:
        return [()] if total == 0 else []
    out = []
    # first entry ranges from the most negative feasible value up to -1
    for first in range(total + (length - 1), 0):
        for rest in _negative_tuples(length - 1, total - first):
            out.append((first,) + rest)
    return out


def hw_index_set(r, degrees):
    if r < 2:
        raise ValueError("ambient dimension must be at least 2")
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != r - 1:
        raise ValueError(f"a curve in P^{r} needs {r - 1} equations, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    return HWIndexSet(r, degrees, _negative_tuples(r + 1, -sum(degrees)))


def extraction_table(index_set, p):
    """table[a][b] = exponent vector -p*k^(a) + k^(b).

    Row a is the Frobenius-pulled index, so the Hasse-Witt matrix is the
    transpose of this table.
    """
    rows = index_set.rows
    return [[tuple(-p * ka + kb for ka, kb in zip(ra, rb)) for rb in rows] for ra in rows]


def genus4_table(p):
    return extraction_table(hw_index_set(3, (3, 2)), p)


class HasseWittMatrix:
    def __init__(self, entries, index_set):
        self.entries = entries
        self.index_set = index_set

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def rank(self):
        from .linalg import rank
        if not self.entries:
            return 0
        field = self.entries[0][0].field
        return rank([[e.code for e in row] for row in self.entries], field)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        cells = [[str(e) for e in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def _check_homogeneous(polys):
    for f in polys:
        if not f:
            raise ValueError("zero polynomial in the defining equations")
        if not f.is_homogeneous():
            raise ValueError(f"not homogeneous: {f}")


def _divides(g, f):
    from .groebner import normal_form
    return not normal_form(f, [g])


def hasse_witt_matrix(polys, p=None):
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one equation")
    ring = polys[0].ring
    if any(f.ring != ring for f in polys):
        raise ValueError("equations live in different rings")
    p = p or ring.field.p
    if p != ring.field.p:
        raise ValueError(f"p={p} does not match the field characteristic {ring.field.p}")
    r = ring.nvars - 1
    if len(polys) != r - 1:
        raise ValueError(f"a curve in P^{r} needs {r - 1} equations, got {len(polys)}")
    _check_homogeneous(polys)
    degrees = [f.degree() for f in polys]
    for sub in combinations(degrees, r - 2):
        if sum(sub) > r:
            raise ValueError(f"degree bound violated: {sub} sums past {r}")
    for i, f in enumerate(polys):
        for j, g in enumerate(polys):
            if i != j and _divides(g, f):
                raise ValueError(f"equation {j} divides equation {i}")
    idx = hw_index_set(r, degrees)
    prod = ring.one()
    for f in polys:
        prod = prod * f
    prod = prod ** (p - 1)
    table = extraction_table(idx, p)
    field = ring.field
    g = len(idx)
    entries = [[FieldElement(field, prod.terms.get(ring.encode(table[j][i]), 0))
                for j in range(g)] for i in range(g)]
    return HasseWittMatrix(entries, idx)


def _genus4_check(f, g):
    ring = f.ring
    if g.ring != ring:
        raise ValueError("f and g live in different rings")
    if ring.nvars != 4:
        raise ValueError("genus-4 test needs 4 variables")
    _check_homogeneous([f, g])
    if f.degree() != 3 or g.degree() != 2:
        raise ValueError("expected deg f = 3 and deg g = 2")


def hw_coefficients(f, g, p=None):
    """The 16 extraction coefficients of (f g)^(p-1), table row-major."""
    _genus4_check(f, g)
    ring = f.ring
    p = p or ring.field.p
    prod = (f * g) ** (p - 1)
    return [FieldElement(ring.field, prod.terms.get(ring.encode(e), 0))
            for row in genus4_table(p) for e in row]


def is_hw_zero(f, g, p=None):
    """True iff all 16 genus-4 extraction coefficients vanish."""
    _genus4_check(f, g)
    ring = f.ring
    p = p or ring.field.p
    if p != ring.field.p:
        raise ValueError(f"p={p} does not match the field characteristic")
    prod = (f * g) ** (p - 1)
    terms = prod.terms
    return all(ring.encode(e) not in terms for row in genus4_table(p) for e in row)


def symbolic_hw_coefficients(P, Q, p=None, xyzw=("x", "y", "z", "w"), coeff_ring=None):
    """Coefficients of the 16 genus-4 monomials of (PQ)^(p-1) as polynomials in
    the non-xyzw variables of P's ring.

    P^(p-1) is grouped by its xyzw part and multiplied against Q^(p-1) only
    where the product can land on a target monomial; partial powers are pruned
    to xyzw parts dividing some needed monomial.
    """
    ring = P.ring
    field = ring.field
    p = p or field.p
    for v in xyzw:
        if v not in ring.index:
            raise ValueError(f"P's ring lacks variable {v}")
    avars = [v for v in ring.names if v not in xyzw]
    if coeff_ring is None:
        coeff_ring = ring.sub_ring(avars)
    xi = [ring.index[v] for v in xyzw]
    ai = [ring.index[v] for v in avars]

    # Q as {xyzw exps: code}
    qring = Q.ring
    q_terms = {}
    for m, c in Q.terms.items():
        e = qring.decode(m)
        for v, x in zip(qring.names, e):
            if x and v not in xyzw:
                raise ValueError(f"Q involves the coefficient variable {v}")
        q_terms[tuple(e[qring.index[v]] for v in xyzw)] = c
    Qp = poly_ring(field, xyzw)
    qpow = Poly(Qp, {Qp.encode(k): c for k, c in q_terms.items()}) ** (p - 1)
    qpow = {Qp.decode(m): c for m, c in qpow.terms.items()}

    targets = [e for row in genus4_table(p) for e in row]
    needed = set()
    for t in targets:
        for u in qpow:
            d = tuple(a - b for a, b in zip(t, u))
            if min(d) >= 0:
                needed.add(d)
    def useful(e):
        return any(all(a <= b for a, b in zip(e, d)) for d in needed)

    # P grouped by xyzw part, coefficients packed in coeff_ring
    grouped = {}
    for m, c in P.terms.items():
        e = ring.decode(m)
        key = tuple(e[i] for i in xi)
        am = coeff_ring.encode([e[i] for i in ai])
        grouped.setdefault(key, {})[am] = c
    base = {k: v for k, v in grouped.items() if useful(k)}
    power = {tuple([0] * len(xyzw)): {0: 1}}
    useful_cache = {}
    for _ in range(p - 1):
        nxt = {}
        for k1, c1 in power.items():
            for k2, c2 in base.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                ok = useful_cache.get(k)
                if ok is None:
                    ok = useful_cache[k] = useful(k)
                if not ok:
                    continue
                prod = mul_terms(c1, c2, field)
                if not prod:
                    continue
                acc = nxt.get(k)
                if acc is None:
                    nxt[k] = prod
                else:
                    add_into(acc, prod, field)
                    if not acc:
                        del nxt[k]
        power = nxt
    out = []
    mul, q = field.mul_table, field.q
    for t in targets:
        acc = {}
        for u, cu in qpow.items():
            d = tuple(a - b for a, b in zip(t, u))
            if d in power:
                row = cu * q
                add_into(acc, {m: mul[row + c] for m, c in power[d].items()}, field)
        out.append(Poly(coeff_ring, acc))
    return out

