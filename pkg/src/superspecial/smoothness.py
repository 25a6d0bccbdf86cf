"""Non-singularity of projective complete intersections.

V(f_1..f_t) in P^r of dimension d is non-singular iff every coordinate X_i lies
in the radical of the ideal generated by the f_j and the (r-d)-minors of their
Jacobian.  Each membership is decided by the Rabinowitsch trick.
"""

from itertools import combinations

from .groebner import ideal_dimension, radical_membership

NONSINGULAR = "nonsingular"
SINGULAR = "singular"


def jacobian(polys):
    ring = polys[0].ring
    return [[f.partial_derivative(v) for v in ring.names] for f in polys]


def _det(block):
    n = len(block)
    if n == 1:
        return block[0][0]
    if n == 2:
        return block[0][0] * block[1][1] - block[0][1] * block[1][0]
    out = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in block[1:]]
        term = block[0][j] * _det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


def jacobian_minors(polys, minor_size):
    polys = list(polys)
    if minor_size < 1:
        raise ValueError("minor size must be positive")
    ring = polys[0].ring
    if minor_size > min(len(polys), ring.nvars):
        raise ValueError(f"minor size {minor_size} exceeds the Jacobian shape "
                         f"{len(polys)}x{ring.nvars}")
    J = jacobian(polys)
    out = []
    for rows in combinations(range(len(polys)), minor_size):
        for cols in combinations(range(ring.nvars), minor_size):
            out.append(_det([[J[i][j] for j in cols] for i in rows]))
    return out


def _clean(minors):
    seen = set()
    out = []
    for m in minors:
        if not m:
            continue
        key = frozenset(m.monic().terms.items())
        if key in seen:
            continue
        seen.add(key)
        out.append(m)
    out.sort(key=lambda f: f.lm())
    return out


def projective_dimension(polys):
    return ideal_dimension(polys) - 1


def determine_nonsingularity(polys, expected_dim=None, verify_dim=False):
    """'nonsingular' or 'singular' for the projective variety V(polys)."""
    polys = [f for f in polys if f]
    if not polys:
        raise ValueError("no equations")
    ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise ValueError("equations live in different rings")
        if not f.is_homogeneous():
            raise ValueError(f"not homogeneous: {f}")
    r = ring.nvars - 1
    if expected_dim is None or verify_dim:
        dim = projective_dimension(polys)
        if expected_dim is not None and dim != expected_dim:
            raise ValueError(f"expected dimension {expected_dim}, the equations cut out dimension {dim}")
        expected_dim = dim
    if expected_dim < 0:
        return NONSINGULAR  # empty variety
    m = r - expected_dim
    if m < 1 or m > len(polys):
        raise ValueError(f"expected dimension {expected_dim} is inconsistent with {len(polys)} equations in P^{r}")
    ideal = _clean(jacobian_minors(polys, m)) + polys
    for v in ring.names:
        if not radical_membership(ring.var(v), ideal):
            return SINGULAR
    return NONSINGULAR


def is_nonsingular(polys, expected_dim=None):
    return determine_nonsingularity(polys, expected_dim) == NONSINGULAR


def singular_points_over(polys):
    """F_q-rational singular points by brute force (the scan oracle).

    Returns the canonical projective points (code tuples) of V(polys) where
    the Jacobian has rank below the codimension.
    """
    from .linalg import rank
    from .poly import eval_codes, eval_on_points, projective_grid
    ring = polys[0].ring
    f = ring.field
    pts = projective_grid(f.q, ring.nvars)
    on = None
    for p in polys:
        z = eval_on_points(p, pts) == 0
        on = z if on is None else on & z
    J = jacobian(polys)
    codim = (ring.nvars - 1) - projective_dimension(polys)
    out = []
    for row in pts[on]:
        pt = tuple(int(c) for c in row)
        mat = [[eval_codes(d, pt) for d in r] for r in J]
        if rank(mat, f) < codim:
            out.append(pt)
    return out
