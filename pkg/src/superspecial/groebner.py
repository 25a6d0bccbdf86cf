"""Buchberger's algorithm over F_q and the things built on it.

The kernels work on raw term dicts of a :class:`PolyRing` (packed monomials
mapping to field codes); the public functions take and return :class:`Poly`.

Pair selection is the sugar strategy (which is the normal strategy on
homogeneous input) with the Gebauer-Moeller installation of Buchberger's
product and chain criteria.  Zero-dimensional solving goes grevlex -> FGLM ->
lex, then back-substitution with exhaustive root search over F_q.
"""

from heapq import heapify, heappop, heappush
from itertools import combinations

from .gf import FieldElement
from .poly import MonomialOrder, Poly, poly_ring


class GroebnerBasis:
    """A reduced Groebner basis; ``basis`` is sorted by leading monomial."""

    def __init__(self, ring, basis):
        self.ring = ring
        self.basis = basis
        self.order = ring.order

    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0].terms.keys() == {0}

    def leading_monomials(self):
        return [g.lm() for g in self.basis]

    def reduce(self, f):
        f = f.to_ring(self.ring)
        return Poly(self.ring, _reduce(self.ring, f.terms, _prep(self.ring, [g.terms for g in self.basis])))

    def contains(self, f):
        return not self.reduce(f)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and [
            g.terms for g in self.basis] == [h.terms for h in other.basis]

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(str(g) for g in self.basis) + "])"


# -- kernels -----------------------------------------------------------------

def _lcm(ring, a, b):
    if a == 0:
        return b
    if b == 0:
        return a
    da, db = ring.decode(a), ring.decode(b)
    return ring.encode([x if x > y else y for x, y in zip(da, db)])


def _make_monic(field, terms):
    lm = max(terms)
    c = terms[lm]
    if c == 1:
        return terms
    ic = field.inv_table[c]
    mul, q = field.mul_table, field.q
    row = ic * q
    return {m: mul[row + v] for m, v in terms.items()}


def _prep(ring, polys):
    """Reducer list [(lm, inverse lc, tail items)] sorted by leading monomial."""
    out = []
    inv = ring.field.inv_table
    for t in polys:
        if not t:
            continue
        lm = max(t)
        tail = [(m, c) for m, c in t.items() if m != lm]
        out.append((lm, inv[t[lm]], tail))
    out.sort(key=lambda r: r[0])
    return out


def _reduce(ring, terms, reducers, full=True):
    """Multivariate division remainder of ``terms`` by ``reducers``."""
    if not reducers or not terms:
        return dict(terms)
    field = ring.field
    add, mul, neg, q = field.add_table, field.mul_table, field.neg_table, field.q
    guard, emask = ring.guard, ring.exp_mask
    h = dict(terms)
    heap = [-m for m in h]
    heapify(heap)
    out = {}
    while heap:
        m = -heappop(heap)
        c = h.pop(m, 0)
        if not c:
            continue
        me = (m & emask) | guard
        for lm, ilc, tail in reducers:
            if lm <= m and (me - (lm & emask)) & guard == guard:
                break
        else:
            out[m] = c
            if not full:
                for mm, cc in h.items():
                    out[mm] = cc
                return out
            continue
        d = m - lm
        row = mul[neg[c] * q + ilc] * q
        for tm, tc in tail:
            nm = tm + d
            v = mul[row + tc]
            old = h.get(nm)
            if old is None:
                h[nm] = v
                heappush(heap, -nm)
            else:
                v = add[old * q + v]
                if v:
                    h[nm] = v
                else:
                    del h[nm]
    return out


def _spoly(ring, f, g, lf, lg, lcm):
    field = ring.field
    mul, q = field.mul_table, field.q
    neg = field.neg_table
    out = {}
    df = lcm - lf
    for m, c in f.items():
        if m != lf:
            out[m + df] = c
    dg = lcm - lg
    add = field.add_table
    for m, c in g.items():
        if m == lg:
            continue
        nm = m + dg
        v = add[out.get(nm, 0) * q + neg[c]]
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def buchberger(ring, polys, early_exit=True):
    """Reduced Groebner basis of ``polys`` (term dicts) as a list of monic dicts.

    Returns ``[{0: 1}]`` for the unit ideal; the run stops as soon as a
    non-zero constant shows up.  ``early_exit`` is accepted for symmetry with
    the solver and has no further effect.
    """
    field = ring.field
    mono_deg = ring.mono_degree
    gens = [_make_monic(field, t) for t in polys if t]
    if not gens:
        return []
    if any(0 in t and len(t) == 1 for t in gens):
        return [{0: 1}]
    gens.sort(key=max)
    basis = []  # entries: [lm, terms, sugar, active]
    pairs = []  # entries: (sugar, lcm, i, j)
    guard, emask = ring.guard, ring.exp_mask

    def divides(a, b):
        return (((b & emask) | guard) - (a & emask)) & guard == guard

    def reducers():
        return [(b[0], 1, [(m, c) for m, c in b[1].items() if m != b[0]])
                for b in basis if b[3]]

    red_cache = [None]

    def current_reducers():
        if red_cache[0] is None:
            red = reducers()
            red.sort(key=lambda r: r[0])
            red_cache[0] = red
        return red_cache[0]

    def install(terms, sugar):
        nonlocal pairs
        h = max(terms)
        hi = len(basis)
        # Gebauer-Moeller update
        cand = []
        for i, b in enumerate(basis):
            if b[3]:
                cand.append((i, _lcm(ring, b[0], h)))
        keep = []
        for k, (i, l) in enumerate(cand):
            coprime = l == basis[i][0] + h
            if coprime:
                keep.append((i, l, True))
                continue
            dominated = False
            for k2, (i2, l2) in enumerate(cand):
                if k2 != k and divides(l2, l) and (l2 != l or k2 < k):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, l, False))
        new_pairs = []
        for p in pairs:
            _, l, i, j = p
            if divides(h, l) and _lcm(ring, basis[i][0], h) != l and _lcm(ring, basis[j][0], h) != l:
                continue
            new_pairs.append(p)
        hdeg = mono_deg(h)
        for i, l, coprime in keep:
            if coprime:
                continue
            ld = mono_deg(l)
            s = max(basis[i][2] + ld - mono_deg(basis[i][0]), sugar + ld - hdeg)
            new_pairs.append((s, l, i, hi))
        pairs = new_pairs
        for b in basis:
            if b[3] and divides(h, b[0]):
                b[3] = False
        basis.append([h, terms, sugar, True])
        red_cache[0] = None

    for t in gens:
        r = _reduce(ring, t, current_reducers())
        if not r:
            continue
        if max(r) == 0:
            return [{0: 1}]
        install(_make_monic(field, r), max(mono_deg(m) for m in t))

    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pairs[k][0], pairs[k][1]))
        s, l, i, j = pairs[best]
        pairs[best] = pairs[-1]
        pairs.pop()
        sp = _spoly(ring, basis[i][1], basis[j][1], basis[i][0], basis[j][0], l)
        r = _reduce(ring, sp, current_reducers())
        if not r:
            continue
        if max(r) == 0:
            return [{0: 1}]
        install(_make_monic(field, r), s)

    return _interreduce(ring, [b[1] for b in basis if b[3]])


def _interreduce(ring, polys):
    field = ring.field
    polys = sorted((_make_monic(field, t) for t in polys if t), key=max)
    # drop elements whose leading monomial is divisible by another's
    guard, emask = ring.guard, ring.exp_mask
    lms = [max(t) for t in polys]
    minimal = []
    for k, t in enumerate(polys):
        lm = lms[k]
        if any(k2 != k and (((lm & emask) | guard) - (lms[k2] & emask)) & guard == guard
               and (lms[k2] != lm or k2 < k) for k2 in range(len(polys))):
            continue
        minimal.append(t)
    out = []
    for k, t in enumerate(minimal):
        others = _prep(ring, minimal[:k] + minimal[k + 1:])
        lm = max(t)
        tail = {m: c for m, c in t.items() if m != lm}
        r = _reduce(ring, tail, others)
        r[lm] = 1
        out.append(r)
    out.sort(key=max)
    return out


# -- public API --------------------------------------------------------------

def _common_ring(polys, order=None):
    polys = [p for p in polys]
    if not polys:
        raise ValueError("empty generator list")
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise ValueError("generators live in different rings")
    if order is not None:
        ring = ring.with_order(order)
    return ring, [p.to_ring(ring) for p in polys]


def groebner_basis(generators, order=None):
    """Reduced Groebner basis of the ideal spanned by ``generators``."""
    ring, polys = _common_ring(generators, order)
    nonzero = [p.terms for p in polys if p.terms]
    if not nonzero:
        raise ValueError("all generators are zero")
    basis = buchberger(ring, nonzero, early_exit=False)
    return GroebnerBasis(ring, [Poly(ring, t) for t in basis])


def normal_form(f, G, order=None):
    """Remainder of f on division by the list G (leading terms under ``order``)."""
    ring = f.ring if order is None else f.ring.with_order(order)
    f = f.to_ring(ring)
    if isinstance(G, GroebnerBasis):
        G = G.basis
    red = _prep(ring, [g.to_ring(ring).terms for g in G])
    return Poly(ring, _reduce(ring, f.terms, red))


def ideal_membership(f, generators, order=None):
    gb = groebner_basis(generators, order)
    return gb.contains(f)


def _fresh_name(names, base="Y"):
    name = base
    k = 0
    while name in names:
        k += 1
        name = f"{base}{k}"
    return name


def radical_membership(f, generators):
    """f in sqrt(I), by the Rabinowitsch trick: 1 in <I, 1 - Y f>."""
    ring, polys = _common_ring(list(generators) + [f])
    y = _fresh_name(ring.names)
    ext = poly_ring(ring.field, ring.names + (y,), MonomialOrder("grevlex"))
    polys = [p.to_ring(ext) for p in polys]
    fy = polys[-1] * ext.var(y)
    gens = [p.terms for p in polys[:-1] if p.terms] + [(ext.one() - fy).terms]
    return buchberger(ext, gens, early_exit=True) == [{0: 1}]


def _max_independent_dim(ring, lms):
    n = ring.nvars
    supports = []
    for m in lms:
        supports.append({i for i, e in enumerate(ring.decode(m)) if e})
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return -1


def ideal_dimension(generators):
    """Krull dimension of k[vars]/I; -1 for the unit ideal."""
    gb = groebner_basis(generators)
    if gb.is_unit():
        return -1
    return _max_independent_dim(gb.ring, gb.leading_monomials())


# -- zero-dimensional solving -------------------------------------------------

def field_equations(ring):
    q = ring.field.q
    neg1 = ring.field.neg_table[1]
    out = []
    for v in ring.names:
        i = ring.index[v]
        exps = [0] * ring.nvars
        exps[i] = q
        hi = ring.encode(exps)
        out.append({hi: 1, ring.weights[i]: neg1})
    return out


def fglm(ring, basis, target):
    """Convert a reduced zero-dimensional basis in ``ring`` to the reduced basis
    of ``target`` (same variables, any order).  Returns term dicts in target."""
    field = ring.field
    add, mul, neg, q, inv = field.add_table, field.mul_table, field.neg_table, field.q, field.inv_table
    red = _prep(ring, basis)
    n = ring.nvars
    tw = target.weights
    sw = ring.weights

    staircase = []  # target monomials
    nfs = {}        # target monomial -> NF in source ring (dict)
    rows = []       # (pivot source monomial, vector dict, combination dict over staircase idx)
    new_basis = []
    new_lms = []
    guard, emask = target.guard, target.exp_mask

    def divisible_by_new(m):
        me = (m & emask) | guard
        return any((me - (lm & emask)) & guard == guard for lm in new_lms)

    cand = [0]
    seen = {0}
    nfs_parent = {0: (None, None)}
    while cand:
        m = min(cand)
        cand.remove(m)
        if divisible_by_new(m):
            continue
        parent, var = nfs_parent[m]
        if parent is None:
            v = _reduce(ring, {0: 1}, red)
        else:
            base = nfs[parent]
            v = _reduce(ring, {mm + sw[var]: c for mm, c in base.items()}, red)
        vec = dict(v)
        comb = {}
        # eliminate against existing rows
        for piv, rv, rc in rows:
            c = vec.get(piv)
            if c:
                nc = neg[c]
                for mm, cc in rv.items():
                    x = add[vec.get(mm, 0) * q + mul[nc * q + cc]]
                    if x:
                        vec[mm] = x
                    else:
                        vec.pop(mm, None)
                for k, cc in rc.items():
                    x = add[comb.get(k, 0) * q + mul[nc * q + cc]]
                    if x:
                        comb[k] = x
                    else:
                        comb.pop(k, None)
        if not vec:
            # m = -sum comb_k * staircase_k ... we tracked vec(m) - sum; relation: m + sum(comb) = 0
            poly = {m: 1}
            for k, c in comb.items():
                poly[staircase[k]] = c
            new_basis.append(poly)
            new_lms.append(m)
            continue
        idx = len(staircase)
        staircase.append(m)
        nfs[m] = v
        piv = max(vec)
        ip = inv[vec[piv]]
        comb[idx] = 1
        rows.append((piv, {mm: mul[ip * q + cc] for mm, cc in vec.items()},
                     {k: mul[ip * q + cc] for k, cc in comb.items()}))
        for i in range(n):
            nm = m + tw[i]
            if nm not in seen:
                seen.add(nm)
                cand.append(nm)
                nfs_parent[nm] = (m, i)
    new_basis.sort(key=max)
    return _interreduce(target, new_basis)


def _back_substitute(ring, lex_basis, perm_idx):
    """All F_q points of a zero-dimensional lex basis (variables most
    significant first in perm_idx)."""
    field = ring.field
    q = field.q
    n = ring.nvars
    decoded = []
    for t in lex_basis:
        items = [(ring.decode(m), c) for m, c in t.items()]
        used = {i for e, _ in items for i, x in enumerate(e) if x}
        decoded.append((items, used))
    order = list(reversed(perm_idx))  # least significant first
    sols = [dict()]
    cpow = field.cpow
    add, mul = field.add_table, field.mul_table
    for k, vi in enumerate(order):
        known = set(order[:k])
        rel = [items for items, used in decoded if vi in used and used <= known | {vi}]
        new = []
        for sol in sols:
            # univariate coefficient lists in vi
            polys = []
            for items in rel:
                coeffs = {}
                for e, c in items:
                    v = c
                    for i, x in enumerate(e):
                        if x and i != vi:
                            v = mul[v * q + cpow(sol[i], x)]
                    if v:
                        coeffs[e[vi]] = add[coeffs.get(e[vi], 0) * q + v]
                polys.append(coeffs)
            for a in range(q):
                ok = True
                for coeffs in polys:
                    s = 0
                    for e, c in coeffs.items():
                        s = add[s * q + mul[c * q + cpow(a, e)]]
                    if s:
                        ok = False
                        break
                if ok:
                    s2 = dict(sol)
                    s2[vi] = a
                    new.append(s2)
        sols = new
        if not sols:
            return []
    return [tuple(s[i] for i in range(n)) for s in sols]


def reduced_field_equations(ring, basis):
    """NF(v^q) - v for each variable, computed modulo the Groebner basis
    ``basis`` by iterating Frobenius: NF(h^p) = NF(sum c^p m^p).

    Together with ``basis`` these generate the same ideal as basis plus the
    field equations, but without the degree-q swell.
    """
    field = ring.field
    p, q = field.p, field.q
    frob = [field.cpow(c, p) for c in range(q)]
    reducers = _prep(ring, basis)
    neg1 = field.neg_table[1]
    out = []
    for v in ring.names:
        w = ring.weights[ring.index[v]]
        h = {w: 1}
        k = 1
        while k < q:
            h = _reduce(ring, {m * p: frob[c] for m, c in h.items()}, reducers)
            k *= p
        h = dict(h)
        c = add_code(field, h.get(w, 0), neg1)
        if c:
            h[w] = c
        else:
            h.pop(w, None)
        if h:
            out.append(h)
    return out


def add_code(field, a, b):
    return field.add_table[a * field.q + b]


def solve_codes(ring, polys, early_exit=True):
    """F_q-points of the system (term dicts in ``ring``) as tuples of codes,
    sorted.  ``ring`` should carry a grevlex order.

    The system's own basis is computed first; the field equations are then
    adjoined in reduced form (see :func:`reduced_field_equations`).
    """
    polys = [t for t in polys if t]
    if not polys:
        raise ValueError("all generators are zero")
    gb = buchberger(ring, polys, early_exit=early_exit)
    if gb == [{0: 1}]:
        return []
    gb = buchberger(ring, gb + reduced_field_equations(ring, gb), early_exit=early_exit)
    if gb == [{0: 1}]:
        return []
    perm = ring.order.permutation or ring.names
    lex = poly_ring(ring.field, ring.names, MonomialOrder("lex", perm))
    lexgb = fglm(ring, gb, lex)
    sols = _back_substitute(lex, lexgb, [ring.index[v] for v in perm])
    return sorted(sols)


def variety_over_Fq(generators):
    """Every point of F_q^n (coordinates ordered as the ring's variables)
    where all generators vanish, sorted by coordinate codes."""
    ring, polys = _common_ring(generators)
    if ring.order.kind != "grevlex":
        ring = ring.with_order(MonomialOrder("grevlex", ring.order.permutation))
        polys = [p.to_ring(ring) for p in polys]
    sols = solve_codes(ring, [p.terms for p in polys])
    # the back-substitution is exact, but verify against the input anyway
    from .poly import eval_codes
    for s in sols:
        for p in polys:
            if eval_codes(p, s):
                raise AssertionError(f"solver returned a non-solution {s}")
    f = ring.field
    return [tuple(FieldElement(f, c) for c in s) for s in sols]


def brute_force_variety(generators):
    """Exhaustive scan of F_q^n; the oracle for :func:`variety_over_Fq`."""
    from .poly import all_points, eval_codes
    ring, polys = _common_ring(generators)
    f = ring.field
    out = []
    for pt in all_points(f, ring.nvars):
        if all(eval_codes(p, pt) == 0 for p in polys):
            out.append(tuple(FieldElement(f, c) for c in pt))
    return out
