"""Exact linear algebra over the finite fields of this package.

Matrices are lists of rows.  Row reduction has a fast path for prime fields
since that is where the large systems (torsion kernels, charpoly solves) live.
"""

from __future__ import annotations

from drinfeld_lab.errors import DimensionMismatch


def _check_rect(M, ncols=None):
    if not M:
        return 0 if ncols is None else ncols
    w = len(M[0])
    if any(len(r) != w for r in M):
        raise DimensionMismatch("ragged matrix")
    return w


def rref(F, M, ncols=None):
    """Reduced row echelon form; returns (rows, pivot columns).

    Only the first ``ncols`` columns are used for pivoting, so augmented
    right-hand sides ride along.
    """
    w = _check_rect(M)
    ncols = w if ncols is None else ncols
    if F.is_prime_field:
        return _rref_prime(F.p, M, ncols)
    R = [list(r) for r in M]
    z = F.zero
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(R)) if R[i][col] != z), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = F.inv(R[row][col])
        R[row] = [F.mul(inv, x) for x in R[row]]
        prow = R[row]
        for i in range(len(R)):
            if i != row and R[i][col] != z:
                c = R[i][col]
                R[i] = [F.sub(x, F.mul(c, y)) if y != z else x for x, y in zip(R[i], prow)]
        pivots.append(col)
        row += 1
        if row == len(R):
            break
    return R, pivots


def _rref_prime(p, M, ncols):
    R = [[x % p for x in r] for r in M]
    pivots = []
    row = 0
    nrows = len(R)
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if R[i][col]:
                piv = i
                break
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = pow(R[row][col], p - 2, p)
        prow = [(inv * x) % p for x in R[row]]
        R[row] = prow
        nz = [j for j, y in enumerate(prow) if y]
        for i in range(nrows):
            if i != row:
                c = R[i][col]
                if c:
                    ri = R[i]
                    for j in nz:
                        ri[j] = (ri[j] - c * prow[j]) % p
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return R, pivots


def rank(F, M):
    return len(rref(F, M)[1])


def kernel(F, M, ncols=None):
    """Basis of {x : M x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[F.one if j == i else F.zero for j in range(ncols)] for i in range(ncols)]
    if len(M[0]) != ncols:
        raise DimensionMismatch("column count mismatch")
    R, pivots = rref(F, M)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][free])
        basis.append(v)
    return basis


def solve_affine(F, A, rhs_columns):
    """Solve A x = b_0 + sum_j t_j b_j parametrically.

    Returns (particular, constraints, kernel): ``particular[j]`` solves the
    system for right-hand side b_j alone (pivot-only solution), and every
    constraint row c means sum_j c[j] * t_j = 0 must hold for solvability.
    """
    n = len(A[0]) if A else 0
    k = len(rhs_columns)
    aug = [list(A[i]) + [col[i] for col in rhs_columns] for i in range(len(A))]
    R, pivots = rref(F, aug, ncols=n)
    particular = [[F.zero] * n for _ in range(k)]
    for r, pc in enumerate(pivots):
        for j in range(k):
            particular[j][pc] = R[r][n + j]
    constraints = [R[r][n:] for r in range(len(pivots), len(R))]
    constraints = [c for c in constraints if any(x != F.zero for x in c)]
    pivset = set(pivots)
    kern = []
    for free in range(n):
        if free in pivset:
            continue
        v = [F.zero] * n
        v[free] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][free])
        kern.append(v)
    return particular, constraints, kern


def solve(F, A, b):
    """One solution of A x = b, or None."""
    part, cons, _ = solve_affine(F, A, [b])
    if cons:
        return None
    return part[0]


def matmul(F, A, B):
    if A and len(A[0]) != len(B):
        raise DimensionMismatch("inner dimensions differ")
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    if F.is_prime_field:
        p = F.p
        return [[sum(x * y for x, y in zip(row, col)) % p for col in cols] for row in A]
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = F.zero
            for x, y in zip(row, col):
                if x != F.zero and y != F.zero:
                    acc = F.add(acc, F.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(F, A, v):
    if F.is_prime_field:
        p = F.p
        return [sum(x * y for x, y in zip(row, v)) % p for row in A]
    out = []
    for row in A:
        acc = F.zero
        for x, y in zip(row, v):
            if x != F.zero and y != F.zero:
                acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return out


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def det(F, M):
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("determinant of a non-square matrix")
    R = [list(r) for r in M]
    d = F.one
    for col in range(n):
        piv = next((i for i in range(col, n) if R[i][col] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != col:
            R[col], R[piv] = R[piv], R[col]
            d = F.neg(d)
        d = F.mul(d, R[col][col])
        inv = F.inv(R[col][col])
        for i in range(col + 1, n):
            c = F.mul(R[i][col], inv)
            if c != F.zero:
                R[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(R[i], R[col])]
    return d


def inverse(F, M):
    n = len(M)
    aug = [list(M[i]) + [F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    R, pivots = rref(F, aug, ncols=n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def charpoly(F, M):
    """Coefficients (lowest first, monic) of det(X I - M), via Hessenberg form."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    H = [list(r) for r in M]
    z = F.zero
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1] != z), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        t_inv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = F.mul(H[i][m - 1], t_inv)
            if u == z:
                continue
            H[i] = [F.sub(x, F.mul(u, y)) for x, y in zip(H[i], H[m])]
            for row in H:
                row[m] = F.add(row[m], F.mul(u, row[i]))
    # p_k = charpoly of the leading k x k block
    polys = [[F.one]]
    for k in range(1, n + 1):
        hkk = H[k - 1][k - 1]
        prev = polys[k - 1]
        # (X - h_kk) * p_{k-1}
        cur = [F.zero] + list(prev)
        for j, c in enumerate(prev):
            cur[j] = F.sub(cur[j], F.mul(hkk, c))
        prod = F.one
        for i in range(k - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            coef = F.mul(H[i - 1][k - 1], prod)
            if coef != z:
                for j, c in enumerate(polys[i - 1]):
                    cur[j] = F.sub(cur[j], F.mul(coef, c))
        polys.append(cur)
    return polys[n]


class FiniteMatrix:
    """An immutable square-or-rectangular matrix over one finite field."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix")
        self.field = field
        self.rows = rows
        self._hash = None

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @classmethod
    def identity(cls, field, n):
        return cls(field, identity(field, n))

    def __matmul__(self, other):
        if other.field != self.field:
            raise DimensionMismatch("matrices over different fields")
        return FiniteMatrix(self.field, matmul(self.field, self.rows, other.rows))

    def __eq__(self, other):
        return isinstance(other, FiniteMatrix) and self.rows == other.rows and self.field == other.field

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def det(self):
        return det(self.field, self.rows)

    def is_invertible(self):
        return self.shape[0] == self.shape[1] and self.det() != self.field.zero

    def inverse(self):
        return FiniteMatrix(self.field, inverse(self.field, self.rows))

    def charpoly(self):
        return tuple(charpoly(self.field, self.rows))

    def trace(self):
        F = self.field
        acc = F.zero
        for i in range(len(self.rows)):
            acc = F.add(acc, self.rows[i][i])
        return acc

    def rank(self):
        return rank(self.field, self.rows)

    def kernel(self):
        return matrix_kernel(self)

    def __pow__(self, n):
        result = FiniteMatrix.identity(self.field, self.shape[0])
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def order(self, cap=10 ** 6):
        ident = FiniteMatrix.identity(self.field, self.shape[0])
        x, k = self, 1
        while x != ident:
            x = x @ self
            k += 1
            if k > cap:
                raise ArithmeticError("matrix order exceeds cap")
        return k

    def __repr__(self):
        return f"FiniteMatrix({[list(r) for r in self.rows]})"


def matrix_kernel(M):
    """Basis of the null space of a FiniteMatrix (column vectors)."""
    return kernel(M.field, [list(r) for r in M.rows], M.shape[1])
