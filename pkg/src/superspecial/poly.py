"""Sparse multivariate polynomials over a FiniteField.

A monomial is a single packed Python integer.  The low bits hold the exponent
vector (16 bits per variable, top bit of each field kept clear as a guard for
the divisibility test); the high bits hold the rows of the order matrix of the
ring's monomial order.  Consequently

* integer comparison of two monomials is the monomial order,
* multiplying monomials is integer addition,
* ``a | b`` is a borrow-free subtraction test on the exponent fields.

A polynomial is a dict ``{monomial: coefficient code}`` with no zero values,
wrapped in :class:`Poly`.
"""

from functools import lru_cache
from itertools import product as iproduct

from ._parse import evaluate
from .gf import FieldElement

EXP_BITS = 16
MAX_EXP = (1 << (EXP_BITS - 1)) - 1  # 32767


class MonomialOrder:
    """grevlex or lex with a variable priority list (most significant first)."""

    KINDS = ("grevlex", "lex")

    def __init__(self, kind="grevlex", permutation=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.permutation = tuple(permutation) if permutation is not None else None

    def resolve(self, names):
        perm = self.permutation or tuple(names)
        if sorted(perm) != sorted(names):
            raise ValueError(f"order permutation {perm} does not match variables {names}")
        return perm

    def rows(self, names):
        """Order matrix rows as integer weight vectors over ``names``."""
        perm = self.resolve(names)
        idx = {v: i for i, v in enumerate(names)}
        n = len(names)
        rows = []
        if self.kind == "lex":
            for v in perm:
                r = [0] * n
                r[idx[v]] = 1
                rows.append(r)
        else:
            rows.append([1] * n)
            for k in range(n - 1, 0, -1):
                r = [0] * n
                for v in perm[:k]:
                    r[idx[v]] = 1
                rows.append(r)
        return rows

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.permutation) == (
            other.kind, other.permutation)

    def __hash__(self):
        return hash((self.kind, self.permutation))

    def __repr__(self):
        if self.permutation:
            return f"{self.kind}({' > '.join(self.permutation)})"
        return self.kind


def _as_order(order):
    if order is None:
        return MonomialOrder()
    if isinstance(order, str):
        return MonomialOrder(order)
    return order


class PolyRing:
    """F_q[names] with an attached monomial order.  Use :func:`poly_ring`."""

    def __init__(self, field, names, order=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.nvars = n = len(names)
        order = _as_order(order)
        if order.permutation is not None:
            order.resolve(names)
        self.order = order
        self.index = {v: i for i, v in enumerate(names)}
        self.exp_width = EXP_BITS * n
        self.exp_mask = (1 << self.exp_width) - 1
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(n))
        rows = order.rows(names) if n else []
        self.key_bits = max((n * MAX_EXP).bit_length(), 1)
        k = len(rows)
        self._row_shift = [self.exp_width + self.key_bits * (k - 1 - r) for r in range(k)]
        self.weights = []
        for i in range(n):
            w = 1 << (EXP_BITS * i)
            for r, row in enumerate(rows):
                if row[i]:
                    w += row[i] << self._row_shift[r]
            self.weights.append(w)
        # grevlex keeps the total degree in the top row
        self.degree_shift = self._row_shift[0] if (order.kind == "grevlex" and n) else None

    # monomials ---------------------------------------------------------------
    def encode(self, exps):
        m = 0
        for e, w in zip(exps, self.weights):
            if e:
                if e > MAX_EXP or e < 0:
                    raise OverflowError(f"exponent {e} outside [0, {MAX_EXP}]")
                m += e * w
        return m

    def decode(self, m):
        mask = (1 << EXP_BITS) - 1
        return tuple((m >> (EXP_BITS * i)) & mask for i in range(self.nvars))

    def mono_degree(self, m):
        if self.degree_shift is not None:
            return m >> self.degree_shift
        return sum(self.decode(m))

    def divides(self, a, b):
        """True iff monomial a divides monomial b."""
        g = self.guard
        return (((b & self.exp_mask) | g) - (a & self.exp_mask)) & g == g

    def lcm(self, a, b):
        return self.encode([max(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def var_mono(self, name):
        return self.weights[self.index[name]]

    # element constructors ----------------------------------------------------
    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {0: 1})

    def const(self, c):
        code = self.field.coerce_code(c)
        return Poly(self, {0: code} if code else {})

    def var(self, name):
        return Poly(self, {self.var_mono(name): 1})

    def gens(self):
        return [self.var(v) for v in self.names]

    def monomial(self, exps, coeff=1):
        code = self.field.coerce_code(coeff)
        return Poly(self, {self.encode(exps): code} if code else {})

    def from_dict(self, d):
        """Build from ``{exponent tuple: coefficient}``."""
        out = {}
        add = self.field.add_table
        q = self.field.q
        for exps, c in d.items():
            code = self.field.coerce_code(c)
            if code:
                m = self.encode(exps)
                v = add[out.get(m, 0) * q + code]
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self, out)

    def __call__(self, value):
        if isinstance(value, Poly):
            return value.to_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text, symbols=None):
        """Parse the "c*x^i*y^j + ..." text format; ``g`` is the field generator."""
        symbols = dict(symbols or {})

        def resolve(name):
            if name in self.index:
                return self.var(name)
            if name in symbols:
                v = symbols[name]
                return v if isinstance(v, Poly) else self.const(v)
            if name == "g":
                return self.const(self.field.gen)
            raise ValueError(f"unknown symbol {name!r} (ring variables: {', '.join(self.names)})")

        out = evaluate(text, resolve, self.one())
        return out if isinstance(out, Poly) else self.const(out)

    def with_order(self, order):
        return poly_ring(self.field, self.names, _as_order(order))

    def sub_ring(self, names, order=None):
        """Ring over ``names`` keeping this ring's order kind (restricted permutation)."""
        names = tuple(names)
        if order is None:
            perm = self.order.permutation
            kind = self.order.kind
            order = MonomialOrder(kind, tuple(v for v in perm if v in names) if perm else None)
        return poly_ring(self.field, names, order)

    def __eq__(self, other):
        return self is other or (
            isinstance(other, PolyRing)
            and (self.field, self.names, self.order) == (other.field, other.names, other.order))

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}] ({self.order!r})"

    def __reduce__(self):
        return (poly_ring, (self.field, self.names, self.order))


@lru_cache(maxsize=None)
def _cached_ring(field, names, order):
    return PolyRing(field, names, order)


def poly_ring(field, names, order=None):
    if isinstance(names, str):
        names = tuple(v.strip() for v in names.replace(",", " ").split())
    return _cached_ring(field, tuple(names), _as_order(order))


# dict-level kernels ---------------------------------------------------------

def add_into(acc, terms, field):
    """acc += terms (in place)."""
    add = field.add_table
    q = field.q
    for m, c in terms.items():
        v = add[acc.get(m, 0) * q + c]
        if v:
            acc[m] = v
        else:
            del acc[m]


def mul_terms(a, b, field):
    if len(a) > len(b):
        a, b = b, a
    add, mul, q = field.add_table, field.mul_table, field.q
    out = {}
    get = out.get
    bitems = list(b.items())
    for ma, ca in a.items():
        row = ca * q
        for mb, cb in bitems:
            m = ma + mb
            v = add[get(m, 0) * q + mul[row + cb]]
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def scale_terms(terms, c, field, shift=0):
    """c * x^shift * terms."""
    if c == 0:
        return {}
    mul, q = field.mul_table, field.q
    row = c * q
    return {m + shift: mul[row + v] for m, v in terms.items()}


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to codes."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # coercion ----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.terms
        if isinstance(other, (int, FieldElement)):
            code = self.ring.field.coerce_code(other)
            return {0: code} if code else {}
        return None

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        out = dict(self.terms)
        add_into(out, t, self.ring.field)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg_table
        return Poly(self.ring, {m: neg[c] for m, c in self.terms.items()})

    def __sub__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        neg = self.ring.field.neg_table
        out = dict(self.terms)
        add_into(out, {m: neg[c] for m, c in t.items()}, self.ring.field)
        return Poly(self.ring, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        if self.terms and t and self.degree() + Poly(self.ring, t).degree() > MAX_EXP:
            raise OverflowError("product degree exceeds exponent capacity")
        return Poly(self.ring, mul_terms(self.terms, t, self.ring.field))

    __rmul__ = __mul__

    def scale(self, c):
        f = self.ring.field
        return self._scale_code(f.coerce_code(c))

    def _scale_code(self, code):
        # ``code`` is a field code, not an integer to be read mod p
        return Poly(self.ring, scale_terms(self.terms, code, self.ring.field))

    def __truediv__(self, c):
        f = self.ring.field
        if isinstance(c, Poly):
            if not c.is_constant() or not c.terms:
                raise ZeroDivisionError("division only by nonzero constants")
            return self._scale_code(f.cinv(c.terms[0]))
        if isinstance(c, (int, FieldElement)):
            return self._scale_code(f.cinv(f.coerce_code(c)))
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        if e and self.terms and self.degree() * e > MAX_EXP:
            raise OverflowError("power degree exceeds exponent capacity")
        result = {0: 1}
        base = self.terms
        f = self.ring.field
        while e:
            if e & 1:
                result = mul_terms(result, base, f)
            e >>= 1
            if e:
                base = mul_terms(base, base, f)
        return Poly(self.ring, result)

    # queries -----------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ring is self.ring or other.ring == self.ring:
                return self.terms == other.terms
            if other.ring.names == self.ring.names and other.ring.field == self.ring.field:
                return self.terms == other.to_ring(self.ring).terms
            return False
        t = self._coerce(other)
        return t is not None and t == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def lm(self):
        """Leading monomial (packed) under the ring order."""
        return max(self.terms)

    def lm_exps(self):
        return self.ring.decode(self.lm())

    def lc(self):
        return FieldElement(self.ring.field, self.terms[self.lm()])

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return FieldElement(self.ring.field, self.terms.get(0, 0))

    def degree(self):
        if not self.terms:
            return -1
        md = self.ring.mono_degree
        return max(md(m) for m in self.terms)

    def degrees_set(self):
        md = self.ring.mono_degree
        return {md(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees_set()) <= 1

    def variables(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(self.ring.decode(m)):
                if e:
                    used.add(self.ring.names[i])
        return [v for v in self.ring.names if v in used]

    def coefficient(self, exps):
        """Coefficient of the monomial with exponent vector ``exps`` (zero if absent)."""
        if isinstance(exps, dict):
            full = [0] * self.ring.nvars
            for v, e in exps.items():
                full[self.ring.index[v]] = e
            exps = full
        if len(exps) != self.ring.nvars:
            raise ValueError("arity mismatch")
        return FieldElement(self.ring.field, self.terms.get(self.ring.encode(exps), 0))

    def items(self):
        """(exponent tuple, FieldElement) pairs in decreasing order."""
        f = self.ring.field
        return [(self.ring.decode(m), FieldElement(f, self.terms[m]))
                for m in sorted(self.terms, reverse=True)]

    def monic(self):
        if not self.terms:
            return self
        return self._scale_code(self.ring.field.cinv(self.terms[self.lm()]))

    # transformations ---------------------------------------------------------
    def to_ring(self, ring):
        """Re-encode into ``ring`` (matching variables by name)."""
        if ring is self.ring:
            return self
        if ring.field != self.ring.field:
            raise ValueError("field mismatch")
        src = self.ring
        pos = []
        for i, v in enumerate(src.names):
            pos.append(ring.index.get(v))
        out = {}
        for m, c in self.terms.items():
            exps = src.decode(m)
            new = [0] * ring.nvars
            for i, e in enumerate(exps):
                if e:
                    j = pos[i]
                    if j is None:
                        raise ValueError(f"variable {src.names[i]} missing from target ring")
                    new[j] = e
            out[ring.encode(new)] = c
        return Poly(ring, out)

    def with_order(self, order):
        return self.to_ring(self.ring.with_order(order))

    def substitute(self, bindings):
        """Bind some variables to field values.

        Returns a polynomial over the unbound variables, or a FieldElement when
        every variable is bound.
        """
        ring, f = self.ring, self.ring.field
        vals = {}
        for v, c in bindings.items():
            if v not in ring.index:
                raise ValueError(f"unknown variable {v!r}")
            vals[ring.index[v]] = f.coerce_code(c)
        rest = [v for v in ring.names if ring.index[v] not in vals]
        target = ring.sub_ring(rest) if rest else None
        add, mul, q = f.add_table, f.mul_table, f.q
        cpow = f.cpow
        out = {}
        for m, c in self.terms.items():
            exps = ring.decode(m)
            new = []
            for i, e in enumerate(exps):
                if i in vals:
                    if e:
                        c = mul[c * q + cpow(vals[i], e)]
                else:
                    new.append(e)
            if not c:
                continue
            nm = target.encode(new) if target else 0
            v = add[out.get(nm, 0) * q + c]
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
        if target is None:
            return FieldElement(f, out.get(0, 0))
        return Poly(target, out)

    def evaluate(self, point):
        """Value at a full point (sequence aligned with ring.names)."""
        f = self.ring.field
        codes = [f.coerce_code(x) for x in point]
        return FieldElement(f, eval_codes(self, codes))

    def partial_derivative(self, name):
        ring, f = self.ring, self.ring.field
        i = ring.index[name]
        w = ring.weights[i]
        shift = EXP_BITS * i
        mul, q, p = f.mul_table, f.q, f.p
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & 0xFFFF
            if e % p == 0:
                continue
            v = mul[c * q + (e % p)]
            if v:
                out[m - w] = v
        return Poly(ring, out)

    def linear_transform(self, matrix):
        """f(M * (x_1, ..., x_n)^T) for an n x n matrix over the field."""
        return linear_transform(self, matrix)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def eval_codes(f, codes):
    """Evaluate at a point given as field codes; returns a code."""
    field, ring = f.ring.field, f.ring
    add, mul, q = field.add_table, field.mul_table, field.q
    cpow = field.cpow
    total = 0
    for m, c in f.terms.items():
        v = c
        if m:
            for i, e in enumerate(ring.decode(m)):
                if e:
                    v = mul[v * q + cpow(codes[i], e)]
                    if not v:
                        break
        total = add[total * q + v]
    return total


def linear_transform(f, matrix):
    ring, field = f.ring, f.ring.field
    n = ring.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"need a {n}x{n} matrix")
    from .linalg import det  # local import keeps poly importable standalone

    codes = [[field.coerce_code(x) for x in row] for row in matrix]
    if det(codes, field) == 0:
        raise ValueError("singular transformation matrix")
    images = []
    for i in range(n):
        images.append({ring.weights[j]: codes[i][j] for j in range(n) if codes[i][j]})
    maxdeg = [0] * n
    for m in f.terms:
        for i, e in enumerate(ring.decode(m)):
            maxdeg[i] = max(maxdeg[i], e)
    powers = []
    for i in range(n):
        pw = [{0: 1}]
        for _ in range(maxdeg[i]):
            pw.append(mul_terms(pw[-1], images[i], field))
        powers.append(pw)
    out = {}
    for m, c in f.terms.items():
        acc = {0: c}
        for i, e in enumerate(ring.decode(m)):
            if e:
                acc = mul_terms(acc, powers[i][e], field)
        add_into(out, acc, field)
    return Poly(ring, out)


def format_poly(f):
    if not f.terms:
        return "0"
    ring, field = f.ring, f.ring.field
    parts = []
    for m in sorted(f.terms, reverse=True):
        c = f.terms[m]
        exps = ring.decode(m)
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}") for v, e in zip(ring.names, exps) if e)
        cs = field.format_code(c)
        if c >= field.p:
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts)


def monomials_of_degree(n, d):
    """All exponent tuples of length n and total degree d."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - e):
            out.append((e,) + rest)
    return out


def all_points(field, n):
    """Every point of F_q^n as a tuple of codes."""
    return iproduct(range(field.q), repeat=n)


def projective_grid(q, n):
    """(N, n) int array of the canonical points of P^(n-1)(F_q) as codes:
    first non-zero coordinate 1."""
    import numpy as np
    blocks = []
    for lead in range(n):
        tail = n - 1 - lead
        pts = np.zeros((q ** tail, n), dtype=np.int64)
        pts[:, lead] = 1
        if tail:
            pts[:, lead + 1:] = np.indices((q,) * tail).reshape(tail, -1).T
        blocks.append(pts)
    return np.concatenate(blocks)


def eval_on_points(f, pts):
    """Codes of f at every row of the code array ``pts``, through the field tables."""
    import numpy as np
    ring = f.ring
    field = ring.field
    q = field.q
    mul = np.asarray(field.mul_table, dtype=np.int64)
    add = np.asarray(field.add_table, dtype=np.int64)
    deg = max((max(ring.decode(m), default=0) for m in f.terms), default=0)
    powers = np.ones((deg + 1, q), dtype=np.int64)
    for e in range(1, deg + 1):
        powers[e] = mul[powers[e - 1] * q + np.arange(q)]
    acc = np.zeros(len(pts), dtype=np.int64)
    for m, c in f.terms.items():
        v = np.full(len(pts), c, dtype=np.int64)
        for i, e in enumerate(ring.decode(m)):
            if e:
                v = mul[v * q + powers[e][pts[:, i]]]
        acc = add[acc * q + v]
    return acc
