"""Dense symmetric matrices/tensors and exact elimination routines.

Symmetric containers store one entry per index multiset; accessors sort the
requested indices, so `m[i, j] == m[j, i]` by construction. Dimensions stay
small here (n of order a few), so storage and cubic-time elimination are not
a concern; what matters is that everything works verbatim over Fractions,
floats, and `Complex` values.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, SingularMatrix
from .scalars import Complex, is_exact_scalar

__all__ = [
    "SymMatrix",
    "Sym3Tensor",
    "CurvTensor",
    "inertia",
    "hermitian_inertia",
    "invert",
    "invert_rows",
    "contract",
    "identity_rows",
    "mat_mul",
    "mat_vec",
    "congruence",
]


def _pair_index(i, j):
    if i > j:
        i, j = j, i
    return i + j * (j + 1) // 2


class SymMatrix:
    """Symmetric n x n matrix with triangular storage."""

    __slots__ = ("n", "_data")

    def __init__(self, n, data):
        if len(data) != n * (n + 1) // 2:
            raise DimensionMismatch("packed length does not match dimension")
        self.n = n
        self._data = list(data)

    @classmethod
    def zeros(cls, n, zero=Fraction(0)):
        return cls(n, [zero] * (n * (n + 1) // 2))

    @classmethod
    def identity(cls, n, one=Fraction(1), zero=Fraction(0)):
        m = cls.zeros(n, zero)
        for i in range(n):
            m[i, i] = one
        return m

    @classmethod
    def from_rows(cls, rows):
        n = len(rows)
        m = cls.zeros(n)
        for i in range(n):
            if len(rows[i]) != n:
                raise DimensionMismatch("ragged rows")
            for j in range(i, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ")
                m[i, j] = rows[i][j]
        return m

    @classmethod
    def build(cls, n, fn):
        m = cls.zeros(n)
        for i in range(n):
            for j in range(i, n):
                m[i, j] = fn(i, j)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self._data[_pair_index(i, j)]

    def __setitem__(self, ij, value):
        i, j = ij
        self._data[_pair_index(i, j)] = value

    def rows(self):
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def scale(self, c):
        return SymMatrix(self.n, [c * v for v in self._data])

    def __eq__(self, other):
        return (isinstance(other, SymMatrix) and self.n == other.n
                and self._data == other._data)

    def __repr__(self):
        return f"SymMatrix({self.rows()!r})"


def _triple_index(n, i, j, k):
    i, j, k = sorted((i, j, k))
    # offset of the block with smallest index i, then a pair index within it
    return i * (i * i - 3 * i * (n + 1) + 3 * n * n + 6 * n + 2) // 6 \
        + _pair_index(j - i, k - i)


class Sym3Tensor:
    """Fully symmetric 3-index tensor with one stored entry per multiset."""

    __slots__ = ("n", "_data")

    def __init__(self, n, data):
        size = n * (n + 1) * (n + 2) // 6
        if len(data) != size:
            raise DimensionMismatch("packed length does not match dimension")
        self.n = n
        self._data = list(data)

    @classmethod
    def zeros(cls, n, zero=Fraction(0)):
        return cls(n, [zero] * (n * (n + 1) * (n + 2) // 6))

    @classmethod
    def build(cls, n, fn):
        t = cls.zeros(n)
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    t[i, j, k] = fn(i, j, k)
        return t

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self._data[_triple_index(self.n, i, j, k)]

    def __setitem__(self, ijk, value):
        i, j, k = ijk
        self._data[_triple_index(self.n, i, j, k)] = value

    def scale(self, c):
        return Sym3Tensor(self.n, [c * v for v in self._data])

    def __eq__(self, other):
        return (isinstance(other, Sym3Tensor) and self.n == other.n
                and self._data == other._data)

    def __repr__(self):
        return f"Sym3Tensor(n={self.n}, {self._data!r})"


class CurvTensor:
    """Dense 4-index tensor R[i, j, k, l] (curvature-type index layout)."""

    __slots__ = ("n", "_data")

    def __init__(self, n, data=None, zero=Fraction(0)):
        self.n = n
        self._data = [zero] * n**4 if data is None else list(data)
        if len(self._data) != n**4:
            raise DimensionMismatch("dense length does not match dimension")

    def __getitem__(self, ijkl):
        i, j, k, l = ijkl
        n = self.n
        return self._data[((i * n + j) * n + k) * n + l]

    def __setitem__(self, ijkl, value):
        i, j, k, l = ijkl
        n = self.n
        self._data[((i * n + j) * n + k) * n + l] = value

    def __sub__(self, other):
        if self.n != other.n:
            raise DimensionMismatch("tensor dimensions differ")
        return CurvTensor(self.n, [a - b for a, b in zip(self._data, other._data)])

    def scale(self, c):
        return CurvTensor(self.n, [c * v for v in self._data])

    def max_abs(self):
        return max(abs(v) for v in self._data) if self._data else 0

    def entries(self):
        return list(self._data)

    def has_pair_symmetries(self) -> bool:
        """Check R[i,j,k,l] = R[k,j,i,l] = R[i,l,k,j] = R[k,l,i,j]."""
        n = self.n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        v = self[i, j, k, l]
                        if (v != self[k, j, i, l] or v != self[i, l, k, j]
                                or v != self[k, l, i, j]):
                            return False
        return True

    def __eq__(self, other):
        return (isinstance(other, CurvTensor) and self.n == other.n
                and self._data == other._data)

    def __repr__(self):
        return f"CurvTensor(n={self.n})"


def inertia(m: SymMatrix):
    """Sylvester inertia (n_plus, n_minus, n_zero) of an exact symmetric matrix.

    Symmetric Gaussian elimination with 1x1/2x2 pivot blocks (Bunch-Kaufman
    style over the rationals): each step replaces the trailing block by its
    Schur complement, a congruence transformation, so signs of the pivot
    blocks accumulate the inertia exactly. No eigenvalue iteration.
    """
    for v in m._data:
        if not is_exact_scalar(v):
            raise TypeError("inertia requires exact rational entries")
    n = m.n
    a = [[Fraction(m[i, j]) for j in range(n)] for i in range(n)]
    plus = minus = zero = 0
    k = 0
    while k < n:
        # best 1x1 pivot: largest |diagonal| for mild coefficient control
        piv, best = -1, Fraction(0)
        for i in range(k, n):
            if abs(a[i][i]) > best:
                piv, best = i, abs(a[i][i])
        if piv >= 0:
            _sym_swap(a, k, piv)
            d = a[k][k]
            plus, minus = (plus + 1, minus) if d > 0 else (plus, minus + 1)
            col = [a[r][k] for r in range(n)]
            for r in range(k + 1, n):
                for s in range(r, n):
                    a[r][s] -= col[r] * col[s] / d
                    a[s][r] = a[r][s]
            k += 1
            continue
        # all trailing diagonals vanish: find an off-diagonal 2x2 block
        off = None
        for i in range(k, n):
            for j in range(i + 1, n):
                if a[i][j] != 0:
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            zero += n - k
            break
        _sym_swap(a, k, off[0])
        _sym_swap(a, k + 1, off[1])
        b = a[k][k + 1]
        # block [[0, b], [b, 0]] has eigenvalues +/- b: one of each sign
        plus += 1
        minus += 1
        u = [a[r][k] for r in range(n)]
        v = [a[r][k + 1] for r in range(n)]
        for r in range(k + 2, n):
            for s in range(r, n):
                a[r][s] -= (v[r] * u[s] + u[r] * v[s]) / b
                a[s][r] = a[r][s]
        k += 2
    return plus, minus, zero


def _sym_swap(a, i, j):
    if i == j:
        return
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def hermitian_inertia(rows):
    """Inertia of an exact hermitian matrix via its real symmetric embedding.

    H = A + iB embeds as [[A, -B], [B, A]], which doubles each eigenvalue;
    the doubled counts are halved back.
    """
    n = len(rows)
    emb = SymMatrix.zeros(2 * n)
    for i in range(n):
        for j in range(n):
            z = Complex.of(rows[i][j])
            zt = Complex.of(rows[j][i])
            if z.re != zt.re or z.im != -zt.im:
                raise ValueError("matrix is not hermitian")
            if j >= i:
                emb[i, j] = z.re
                emb[n + i, n + j] = z.re
            emb[i, n + j] = -z.im
    p, m, z = inertia(emb)
    if p % 2 or m % 2 or z % 2:
        raise ValueError("embedding produced odd multiplicities")
    return p // 2, m // 2, z // 2


def _pivot_size(x):
    if isinstance(x, Complex):
        return x.abs2()
    return abs(x)


def identity_rows(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def invert_rows(rows):
    """Inverse of a square matrix given as rows; Gauss-Jordan with pivoting.

    Works over any field scalar (Fraction, float, Complex). Exact inputs give
    the exact inverse; raises SingularMatrix on a zero pivot column.
    """
    n = len(rows)
    a = [list(r) for r in rows]
    for r in a:
        if len(r) != n:
            raise DimensionMismatch("matrix is not square")
    inv = identity_rows(n, one=_like_one(a), zero=_like_zero(a))
    for col in range(n):
        piv = max(range(col, n), key=lambda r: _pivot_size(a[r][col]))
        if _pivot_size(a[piv][col]) == 0:
            raise SingularMatrix(f"zero pivot in column {col}")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        d = a[col][col]
        a[col] = [v / d for v in a[col]]
        inv[col] = [v / d for v in inv[col]]
        for r in range(n):
            if r != col and _pivot_size(a[r][col]) != 0:
                c = a[r][col]
                a[r] = [v - c * w for v, w in zip(a[r], a[col])]
                inv[r] = [v - c * w for v, w in zip(inv[r], inv[col])]
    return inv


def _like_one(a):
    x = a[0][0]
    if isinstance(x, Complex):
        return Complex(Fraction(1) if is_exact_scalar(x.re) else 1.0)
    if is_exact_scalar(x):
        return Fraction(1)
    return 1.0


def _like_zero(a):
    one = _like_one(a)
    return one - one


def invert(m: SymMatrix) -> SymMatrix:
    """Inverse of a symmetric matrix, returned symmetric."""
    inv = invert_rows(m.rows())
    out = SymMatrix.zeros(m.n)
    for i in range(m.n):
        for j in range(i, m.n):
            out[i, j] = inv[i][j]
    return out


def mat_mul(a, b):
    n, m = len(a), len(b[0])
    inner = len(b)
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def congruence(p_rows, m: SymMatrix) -> SymMatrix:
    """P M P^T for a square P given as rows."""
    pm = mat_mul(p_rows, m.rows())
    pt = [[p_rows[j][i] for j in range(len(p_rows))] for i in range(len(p_rows))]
    return SymMatrix.from_rows(mat_mul(pm, pt))


def contract(t: Sym3Tensor, s: Sym3Tensor, minv: SymMatrix) -> CurvTensor:
    """CurvTensor R with R[i,j,k,l] = sum_{p,q} Minv[p,q] T[i,k,p] S[j,l,q].

    Inherits the curvature pair symmetries from the full symmetry of T and S.
    """
    if not (t.n == s.n == minv.n):
        raise DimensionMismatch("tensor and matrix dimensions differ")
    n = t.n
    out = CurvTensor(n, zero=_zero_of(t, s, minv))
    for i in range(n):
        for k in range(i, n):
            tv = [t[i, k, p] for p in range(n)]
            for j in range(n):
                for l in range(j, n):
                    sv = [s[j, l, q] for q in range(n)]
                    acc = sum(minv[p, q] * tv[p] * sv[q]
                              for p in range(n) for q in range(n))
                    out[i, j, k, l] = acc
                    out[k, j, i, l] = acc
                    out[i, l, k, j] = acc
                    out[k, l, i, j] = acc
    return out


def _zero_of(t, s, minv):
    probe = t._data[0] * s._data[0] * minv._data[0]
    return probe - probe
