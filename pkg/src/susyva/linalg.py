"""Small exact linear algebra over the scalar field (Gauss-Jordan)."""

from .coeff import Q as _q


def _inv(c):
    return _q(1, c) if isinstance(c, int) else 1 / c


def rref(rows, ncols):
    """Reduced row echelon form of a list of dict rows {col: value}.

    Returns (rows, pivots) with pivot columns in increasing order.
    """
    rows = [dict((k, v) for k, v in r.items() if v) for r in rows]
    pivots = []
    out = []
    for col in range(ncols):
        piv = next((r for r in rows if r.get(col)), None)
        if piv is None:
            continue
        rows.remove(piv)
        s = _inv(piv[col])
        piv = {k: v * s for k, v in piv.items()}
        for r in rows + out:
            f = r.get(col)
            if f:
                for k, v in piv.items():
                    x = r.get(k, 0) - f * v
                    if x:
                        r[k] = x
                    else:
                        r.pop(k, None)
        out.append(piv)
        pivots.append(col)
    # rows left over have no pivot in 0..ncols-1 (possibly nonzero rhs)
    return out + [r for r in rows if r], pivots


def solve(equations, nvars):
    """Solve sparse linear equations Σ a_j x_j = rhs.

    Each equation is a dict {j: a_j} with the right-hand side under the key
    ``nvars``.  Returns a dict of pivot values (free variables set to 0), or
    None when inconsistent.
    """
    rows, pivots = rref(equations, nvars)
    sol = {}
    for r in rows:
        cols = [k for k in r if k < nvars]
        if not cols:
            if r.get(nvars):
                return None
            continue
    for r, p in zip(rows, pivots):
        sol[p] = r.get(nvars, 0)
    return sol


def inverse(matrix):
    """Inverse of a square matrix given as a list of lists."""
    n = len(matrix)
    rows = []
    for i, row in enumerate(matrix):
        r = {j: v for j, v in enumerate(row) if v}
        r[n + i] = 1
        rows.append(r)
    out, pivots = rref(rows, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [[r.get(n + j, 0) for j in range(n)] for r in out[:n]]


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), 0)
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
