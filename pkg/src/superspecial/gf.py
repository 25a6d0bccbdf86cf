"""Finite fields F_{p^n} with table-driven arithmetic.

Elements are residue polynomials modulo a fixed monic irreducible modulus.
Internally an element is an integer *code* ``sum(c_i * p**i)`` where
``c_0, c_1, ...`` are the residue coefficients, constant term first; so the
prime subfield occupies codes ``0..p-1`` and the generator ``g`` (the class of
the indeterminate) has code ``p`` when ``n > 1``.  All arithmetic goes through
precomputed flat tables, which the polynomial and Groebner kernels index
directly.
"""

from functools import lru_cache
from itertools import product
from math import gcd

from ._parse import evaluate

# Conway polynomials (constant term first), the usual default moduli.
DEFAULT_MODULI = {
    (5, 2): (2, 4, 1),  # g^2 + 4g + 2
    (7, 2): (3, 6, 1),  # g^2 + 6g + 3
}

MAX_TABLE_ORDER = 2048


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# -- dense polynomials over F_p, coefficient lists constant term first ---------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b, p):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a = _trim(a)
    return quot, a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus, p):
    """Exhaustive factor search; fine for the small degrees used here."""
    f = _trim(modulus)
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            _, r = _pdivmod(f, list(tail) + [1], p)
            if not r:
                return False
    return True


def _ext_euclid_inverse(a, modulus, p):
    """Inverse of residue polynomial ``a`` modulo ``modulus`` (extended Euclid)."""
    r0, r1 = _trim(modulus), _trim(a)
    s0, s1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("not invertible")
    c = pow(r0[0], p - 2, p)
    return [x * c % p for x in s0]


class FiniteField:
    """F_q = F_p[g]/(modulus).  Immutable after construction."""

    def __init__(self, p, n=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = DEFAULT_MODULI.get((p, n)) or _default_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(_trim(modulus)) != n + 1 or modulus[n] != 1:
            raise ValueError(f"modulus must be monic of degree {n}")
        if n > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.n, self.q = p, n, p ** n
        if self.q > MAX_TABLE_ORDER:
            raise ValueError(f"q = {self.q} too large for table arithmetic")
        self.modulus = modulus
        self._build_tables()

    # table construction ------------------------------------------------------
    def _vec(self, code):
        v = []
        for _ in range(self.n):
            code, c = divmod(code, self.p)
            v.append(c)
        return v

    def _code(self, vec):
        code = 0
        for c in reversed(list(vec) + [0] * (self.n - len(vec))):
            code = code * self.p + c % self.p
        return code

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        vecs = [self._vec(c) for c in range(q)]
        self.add_table = [self._code([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                          for a in range(q) for b in range(q)]
        self.neg_table = [self._code([(-x) % p for x in vecs[a]]) for a in range(q)]
        mod = list(self.modulus)
        mul = [0] * (q * q)
        for a in range(1, q):
            for b in range(a, q):
                _, r = _pdivmod(_pmul(_trim(vecs[a]), _trim(vecs[b]), p), mod, p)
                mul[a * q + b] = mul[b * q + a] = self._code(r)
        self.mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._code(_ext_euclid_inverse(vecs[a], mod, p))
        self.inv_table = inv
        self.sub_table = [self.add_table[a * q + self.neg_table[b]]
                          for a in range(q) for b in range(q)]
        # discrete logs w.r.t. a primitive element, used for orders and roots
        prim = next(a for a in range(1, q) if self._order_by_mult(a) == q - 1)
        self.primitive_code = prim
        self.exp_table = [0] * (q - 1)
        self.log_table = [None] * q
        x = 1
        for k in range(q - 1):
            self.exp_table[k] = x
            self.log_table[x] = k
            x = mul[x * q + prim]

    def _order_by_mult(self, a):
        x, k = a, 1
        while x != 1:
            x = self.mul_table[x * self.q + a]
            k += 1
        return k

    # element construction ----------------------------------------------------
    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self._code(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def from_code(self, code):
        return FieldElement(self, code)

    def coerce_code(self, value):
        """Code of an int / FieldElement / text value."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value.code
        if isinstance(value, int):
            return value % self.p
        return self(value).code

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        """Class of the indeterminate g."""
        if self.n == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    def units(self):
        return [FieldElement(self, c) for c in range(1, self.q)]

    def primitive_element(self):
        return FieldElement(self, self.primitive_code)

    def parse(self, text):
        gen = self.gen

        def resolve(name):
            if name == "g":
                return gen
            raise ValueError(f"unknown symbol {name!r} in field element {text!r}")

        return self(evaluate(text, resolve, self.one))

    def format_code(self, code):
        if code < self.p:
            return str(code)
        parts = []
        for k, c in reversed(list(enumerate(self._vec(code)))):
            if not c:
                continue
            mono = "" if k == 0 else ("g" if k == 1 else f"g^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts)

    # code-level arithmetic used by the kernels -------------------------------
    def cmul(self, a, b):
        return self.mul_table[a * self.q + b]

    def cadd(self, a, b):
        return self.add_table[a * self.q + b]

    def csub(self, a, b):
        return self.sub_table[a * self.q + b]

    def cinv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[a]

    def cpow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.q}, modulus={self.format_modulus()})"

    def format_modulus(self):
        terms = []
        for k in range(self.n, -1, -1):
            c = self.modulus[k]
            if c:
                mono = "" if k == 0 else ("g" if k == 1 else f"g^{k}")
                terms.append(mono if c == 1 and mono else (f"{c}*{mono}" if mono else str(c)))
        return "+".join(terms)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.n, self.modulus) == (
            other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.n, self.modulus))


class FieldElement:
    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def _other(self, b):
        if isinstance(b, FieldElement):
            if b.field is not self.field and b.field != self.field:
                raise ValueError("cross-field operation")
            return b.code
        if isinstance(b, int):
            return b % self.field.p
        return NotImplemented

    def __add__(self, b):
        c = self._other(b)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.cadd(self.code, c))

    __radd__ = __add__

    def __sub__(self, b):
        c = self._other(b)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.csub(self.code, c))

    def __rsub__(self, b):
        c = self._other(b)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.csub(c, self.code))

    def __mul__(self, b):
        c = self._other(b)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.cmul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, b):
        c = self._other(b)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.cmul(self.code, self.field.cinv(c)))

    def __rtruediv__(self, b):
        c = self._other(b)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.cmul(c, self.field.cinv(self.code)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_table[self.code])

    def __pow__(self, e):
        return FieldElement(self.field, self.field.cpow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.cinv(self.code))

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self.field == b.field and self.code == b.code
        if isinstance(b, int):
            return self.code == b % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __bool__(self):
        return self.code != 0

    def coeffs(self):
        return tuple(self.field._vec(self.code))

    def log(self):
        """Exponent k with self == primitive_element()**k."""
        if self.code == 0:
            raise ValueError("log of zero")
        return self.field.log_table[self.code]

    def order(self):
        if self.code == 0:
            raise ValueError("zero has no multiplicative order")
        q1 = self.field.q - 1
        return q1 // gcd(self.field.log_table[self.code], q1)

    def __str__(self):
        return self.field.format_code(self.code)

    def __repr__(self):
        return f"FieldElement({self})"


def _default_modulus(p, n):
    if n == 1:
        return (p - 1, 1)  # g - 1, so the generator is 1
    for tail in product(range(p), repeat=n):
        cand = tuple(tail) + (1,)
        if cand[0] == 0 or not is_irreducible(cand, p):
            continue
        f = FiniteField.__new__(FiniteField)
        f.p, f.n, f.q, f.modulus = p, n, p ** n, cand
        f._build_tables()
        if FieldElement(f, p).order() == f.q - 1:
            return cand
    raise ValueError(f"no primitive modulus found for F_{p}^{n}")


@lru_cache(maxsize=None)
def _make_field_cached(p, n, modulus):
    return FiniteField(p, n, modulus)


def make_field(p, n=1, modulus=None):
    """Cached field constructor; identical arguments give the identical object."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if modulus is None:
        modulus = DEFAULT_MODULI.get((p, n)) or _default_modulus(p, n)
    return _make_field_cached(p, n, tuple(int(c) % p for c in modulus))


def is_primitive(a):
    if not a:
        raise ValueError("zero is not a unit")
    return a.order() == a.field.q - 1


def is_square(a):
    if not a:
        raise ValueError("square-class test needs a unit")
    f = a.field
    if f.p == 2:
        return True
    return a ** ((f.q - 1) // 2) == 1


def sqrt(a):
    """All square roots of ``a`` in the field, sorted by code."""
    return sorted((x for x in a.field.elements() if x * x == a), key=lambda e: e.code)


def cube_roots(a):
    return sorted((x for x in a.field.elements() if x ** 3 == a), key=lambda e: e.code)


def pick_epsilon(field):
    """The fixed non-square eps = -g, with -eps = g primitive."""
    g = field.gen
    if not g or not is_primitive(g):
        raise ValueError(f"generator {g} of {field} is not primitive; supply another modulus")
    eps = -g
    if field.p != 2 and is_square(eps):
        raise ValueError("epsilon is square")
    return eps
