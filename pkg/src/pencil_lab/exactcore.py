"""
Exact scalars, dense univariate polynomials and small exact linear algebra.

Scalars are :class:`fractions.Fraction` on every exact path. The same
:class:`Poly` type also carries ``float``/``complex`` coefficients for the
numeric paths (root finding, quadrature, square-root normalised families), so
all arithmetic here is written against the generic number protocol.
"""
from fractions import Fraction
from functools import lru_cache
from numbers import Number

import numpy as np

from .errors import PencilLabError

__all__ = [
    "Rat",
    "rat",
    "Poly",
    "X",
    "PolyMatrix",
    "poly_eval",
    "divided_difference",
    "eval_divided_difference",
    "polymat_det",
    "det_exact",
    "solve_linear_exact",
    "roots_float",
    "squarefree_decomposition",
]

Rat = Fraction


def rat(value):
    """Coerce ``int``/``str``/``Fraction`` to ``Fraction``; floats and complex pass through.

    Strings use the ``"num/den"`` form accepted by :class:`fractions.Fraction`.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool,)):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, complex, np.floating, np.complexfloating)):
        return value
    raise TypeError(f"cannot interpret {value!r} as a scalar")


class Poly:
    """Dense polynomial in one variable; ``coeffs[k]`` is the coefficient of ``λ**k``.

    Instances are immutable and hashable. Trailing zero coefficients are
    stripped, so the zero polynomial has ``coeffs == ()`` and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, value):
        return cls((value,))

    @classmethod
    def monomial(cls, k, coeff=1):
        return cls((0,) * k + (coeff,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, Number):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("λ" if k == 1 else f"λ^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")

    # arithmetic -------------------------------------------------------

    @staticmethod
    def _wrap(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, Number):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] = out[k] + v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return Poly(c / scalar for c in self.coeffs)

    def __pow__(self, k):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation at ``x`` (exact for ``Fraction`` input)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order=1):
        c = self.coeffs
        for _ in range(order):
            c = tuple(k * c[k] for k in range(1, len(c)))
        return Poly(c)

    def divmod(self, divisor):
        """Euclidean division; the divisor must be nonzero."""
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading
        if isinstance(lead, int):
            lead = Fraction(lead)
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q != 0:
                for i, dc in enumerate(divisor.coeffs):
                    rem[k + i] -= q * dc
        return Poly(quot), Poly(rem[:dd])

    def __floordiv__(self, divisor):
        return self.divmod(divisor)[0]

    def __mod__(self, divisor):
        return self.divmod(divisor)[1]

    def divided_difference_at(self, point):
        """Return the polynomial ``(p(λ) - p(point)) / (λ - point)``.

        Synthetic division, so no limit is needed when ``λ == point``.
        """
        c = self.coeffs
        if len(c) <= 1:
            return Poly()
        out = [0] * (len(c) - 1)
        acc = 0
        for k in range(len(c) - 1, 0, -1):
            acc = acc * point + c[k]
            out[k - 1] = acc
        return Poly(out)

    def monic(self):
        return self / self.leading

    def to_float(self):
        return Poly(complex(c) if isinstance(c, complex) else float(c) for c in self.coeffs)


X = Poly((0, 1))


def poly_eval(p, x):
    """Evaluate ``p`` at ``x`` by Horner's rule."""
    return p(x)


def divided_difference(p):
    """Coefficients of ``(p(λ) - p(t)) / (λ - t)`` as a polynomial in ``t``.

    Returns a tuple ``r`` of :class:`Poly` in ``λ`` with
    ``(p(λ) - p(t)) / (λ - t) == sum(r[k](λ) * t**k)``; the tuple has
    ``deg(p)`` entries (empty for constants).
    """
    c = p.coeffs
    n = len(c) - 1
    if n <= 0:
        return ()
    # coefficient of t^i is sum_{j > i} c_j λ^(j-1-i)
    return tuple(Poly(c[i + 1 :]) for i in range(n))


def eval_divided_difference(r, x, t):
    return sum((rk(x) * t**k for k, rk in enumerate(r)), 0)


class PolyMatrix:
    """Row-major matrix of :class:`Poly` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(e if isinstance(e, Poly) else Poly.const(e) for e in entries)
        if len(entries) != rows * cols:
            raise PencilLabError("shape-mismatch", f"{len(entries)} entries for {rows}x{cols}")
        self.rows, self.cols, self.entries = rows, cols, entries

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise PencilLabError("shape-mismatch", "ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def pencil(cls, A, B):
        """The linear pencil ``A - λ B`` for equally sized scalar matrices."""
        n = len(A)
        return cls(n, n, [Poly((A[i][j], -B[i][j])) for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def evaluate(self, x):
        return [[self[i, j](x) for j in range(self.cols)] for i in range(self.rows)]


POLYMAT_DET_MAX = 12


def polymat_det(m):
    """Exact determinant of a square :class:`PolyMatrix`.

    Laplace expansion along rows, memoised on the set of consumed columns, so
    banded matrices of the sizes used here cost a few thousand products.
    """
    if m.rows != m.cols:
        raise PencilLabError("non-square", f"{m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return Poly.const(Fraction(1))
    if n > POLYMAT_DET_MAX:
        raise PencilLabError("too-large", f"size {n} exceeds cap {POLYMAT_DET_MAX}")

    @lru_cache(maxsize=None)
    def minor(row, used):
        if row == n:
            return Poly.const(Fraction(1))
        total = Poly()
        sign = 1
        for col in range(n):
            if used >> col & 1:
                continue
            e = m[row, col]
            if e:
                sub = minor(row + 1, used | (1 << col))
                if sub:
                    total = total + (e * sub if sign > 0 else -(e * sub))
            sign = -sign
        return total

    return minor(0, 0)


def det_exact(A):
    """Fraction-free (Bareiss) determinant of a square scalar matrix."""
    M = [[rat(x) for x in row] for row in A]
    n = len(M)
    if any(len(row) != n for row in M):
        raise PencilLabError("non-square", "determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def solve_linear_exact(A, b):
    """Solve ``A x = b`` exactly by Gauss-Jordan elimination over the rationals."""
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise PencilLabError("non-square", "solve_linear_exact needs square A and matching b")
    M = [[rat(x) for x in row] + [rat(bi)] for row, bi in zip(A, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise PencilLabError("singular-system", f"no pivot in column {k}")
        M[k], M[piv] = M[piv], M[k]
        inv = 1 / M[k][k]
        M[k] = [v * inv for v in M[k]]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                M[i] = [vi - f * vk for vi, vk in zip(M[i], M[k])]
    return [row[n] for row in M]


def _root_key(z):
    return (round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0)


def roots_float(p):
    """All complex roots of ``p`` with multiplicity, from companion-matrix eigenvalues.

    Sorted lexicographically by ``(re, im)`` after rounding to 1e-12. A nonzero
    constant has no roots; the zero polynomial raises ``undefined-roots``.
    """
    if not p:
        raise PencilLabError("undefined-roots", "the zero polynomial has no root set")
    c = np.array([complex(v) for v in p.coeffs])
    if np.all(c.imag == 0):
        c = c.real
    n = len(c) - 1
    if n == 0:
        return []
    comp = np.zeros((n, n), dtype=c.dtype)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    vals = np.linalg.eigvals(comp)
    if not np.all(np.isfinite(vals)):
        raise PencilLabError("undefined-roots", "non-finite eigenvalue")
    return sorted((complex(v) for v in vals), key=_root_key)


def _gcd(f, g):
    while g:
        f, g = g, f % g
    return f.monic() if f else f


def squarefree_decomposition(p):
    """Yun's algorithm over the rationals: ``p = lc * prod(f_k ** k)``.

    Returns ``[(f_k, k), ...]`` for the nonconstant monic factors.
    """
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = _gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree >= 1:
        g = _gcd(b, d)
        if g.degree >= 1:
            out.append((g, k))
        b = b // g
        c = d // g
        d = c - b.derivative()
        k += 1
    return out
