"""Small dense matrices over a FiniteField.

Matrices are lists of rows of field codes.  ``as_codes`` accepts anything
the field can coerce (ints, FieldElements, strings).
"""


def as_codes(matrix, field):
    return [[field.coerce_code(x) for x in row] for row in matrix]


def as_elements(matrix, field):
    return [[field.from_code(c) for c in row] for row in matrix]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b, field):
    add, mul, q = field.add_table, field.mul_table, field.q
    bt = transpose(b)
    out = []
    for row in a:
        r = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = add[s * q + mul[x * q + y]]
            r.append(s)
        out.append(r)
    return out


def scale(a, c, field):
    mul, q = field.mul_table, field.q
    return [[mul[c * q + x] for x in row] for row in a]


def _echelon(a, field):
    """Row echelon form (copy); returns (rows, rank, determinant sign-adjusted product)."""
    m = [list(r) for r in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    sub, mul, q, inv, neg = field.sub_table, field.mul_table, field.q, field.inv_table, field.neg_table
    rank, det = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            det = 0
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
            det = neg[det]
        pv = m[rank][col]
        det = mul[det * q + pv]
        ip = inv[pv]
        for r in range(rank + 1, nrows):
            if m[r][col]:
                f = mul[m[r][col] * q + ip]
                m[r] = [sub[x * q + mul[f * q + y]] for x, y in zip(m[r], m[rank])]
        rank += 1
    return m, rank, det


def det(a, field):
    if len(a) != len(a[0]):
        raise ValueError("determinant of a non-square matrix")
    _, rank, d = _echelon(a, field)
    return d if rank == len(a) else 0


def rank(a, field):
    if not a or not a[0]:
        return 0
    return _echelon(a, field)[1]


def inverse(a, field):
    n = len(a)
    aug = [list(row) + identity(n)[i] for i, row in enumerate(a)]
    sub, mul, q, inv = field.sub_table, field.mul_table, field.q, field.inv_table
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        ip = inv[aug[col][col]]
        aug[col] = [mul[ip * q + x] for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [sub[x * q + mul[f * q + y]] for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def scalar_value(a):
    """c if a == c*I with c != 0, else None."""
    c = a[0][0]
    if not c:
        return None
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if x != (c if i == j else 0):
                return None
    return c


def mat_pow(a, e, field):
    out = identity(len(a))
    base = a
    while e:
        if e & 1:
            out = matmul(out, base, field)
        e >>= 1
        if e:
            base = matmul(base, base, field)
    return out
