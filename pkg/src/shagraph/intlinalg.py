"""Exact integer linear algebra on lists of Python ints (matrices as row lists)."""


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _cols(mat, ncols):
    return [[row[j] for row in mat] for j in range(ncols)]


def column_echelon(cols, nrows):
    """Column-reduce ``cols`` (list of column vectors) by unimodular operations.

    Returns ``(pivots, ops)`` where ``pivots`` are the nonzero columns of the
    echelon form (each with a leading positive entry strictly below the
    previous one) and ``ops[j]`` is the combination of input columns giving
    output column ``j``.  Columns past ``len(pivots)`` in ``ops`` span the
    integer relations among the inputs.
    """
    cols = [list(c) for c in cols]
    n = len(cols)
    ops = [[int(i == j) for i in range(n)] for j in range(n)]
    piv = 0
    for r in range(nrows):
        for j in range(piv + 1, n):
            if cols[j][r] == 0:
                continue
            a, b = cols[piv][r], cols[j][r]
            g, x, y = _xgcd(a, b)
            if a == 0:
                cols[piv], cols[j] = cols[j], cols[piv]
                ops[piv], ops[j] = ops[j], ops[piv]
                continue
            ag, bg = a // g, b // g
            ci, cj = cols[piv], cols[j]
            oi, oj = ops[piv], ops[j]
            cols[piv] = [x * p + y * q for p, q in zip(ci, cj)]
            cols[j] = [-bg * p + ag * q for p, q in zip(ci, cj)]
            ops[piv] = [x * p + y * q for p, q in zip(oi, oj)]
            ops[j] = [-bg * p + ag * q for p, q in zip(oi, oj)]
        if piv < n and cols[piv][r] != 0:
            if cols[piv][r] < 0:
                cols[piv] = [-v for v in cols[piv]]
                ops[piv] = [-v for v in ops[piv]]
            piv += 1
    return cols[:piv], ops


def lattice_basis(cols, nrows):
    """Basis (list of columns, lower echelon) of the lattice spanned by ``cols``."""
    basis, _ = column_echelon(cols, nrows)
    return basis


def integer_kernel(mat, ncols):
    """Basis of ``{x in Z^ncols : mat x = 0}`` as a list of vectors."""
    cols = _cols(mat, ncols)
    pivots, ops = column_echelon(cols, len(mat))
    return ops[len(pivots):]


def solve_echelon(basis, vec):
    """Integer coordinates of ``vec`` in a square lower-echelon ``basis``."""
    n = len(vec)
    rest = list(vec)
    coords = []
    row = 0
    for b in basis:
        while b[row] == 0:
            if rest[row] != 0:
                raise ValueError("vector is not in the lattice")
            row += 1
        q, r = divmod(rest[row], b[row])
        if r:
            raise ValueError("vector is not in the lattice")
        coords.append(q)
        rest = [x - q * y for x, y in zip(rest, b)]
        row += 1
    if any(rest[i] for i in range(n)):
        raise ValueError("vector is not in the lattice")
    return coords


def smith_invariants(mat, nrows, ncols):
    """Nonzero diagonal entries of the Smith normal form, ascending."""
    a = [list(row) for row in mat]
    diag = []
    t = 0
    while t < min(nrows, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return sorted(diag)
