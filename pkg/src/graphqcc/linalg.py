"""Dense exact and numeric linear algebra.

Exact routines work over any Python field type that supports ``+ - * /``
and comparison with ``0``: :class:`fractions.Fraction` for rational data
and :class:`AlgebraicNumber` for spectral parameters that are roots of a
rational irreducible polynomial (Gaussian rationals are the special case
``x**2 + 1``).  Numeric routines use numpy's SVD.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Any, Sequence

import numpy as np

DEFAULT_TOL = 1e-8


# ----------------------------------------------------------------------
# scalars

def as_fraction(x) -> Fraction:
    """Parse ``x`` (int, Fraction, or a string such as ``"3/4"``) exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    """Division of coefficient lists (lowest degree first) over a field."""
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        a = _poly_trim(a)
    return q, a


class NumberField:
    """The field Q[x]/(p) for a monic irreducible rational polynomial p.

    ``modulus`` lists the coefficients of p lowest degree first.  The field
    is not checked for irreducibility; dividing by a zero divisor raises
    :class:`ZeroDivisionError`.  ``embedding`` is the complex root of p that
    the generator stands for when values are converted to numbers.
    """

    def __init__(self, modulus: Sequence, embedding: complex | None = None):
        mod = [as_fraction(c) for c in modulus]
        mod = _poly_trim(mod)
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        lead = mod[-1]
        self.modulus = tuple(c / lead for c in mod)
        self.degree = len(self.modulus) - 1
        self.embedding = embedding

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({[str(c) for c in self.modulus]})"

    def __call__(self, coeffs) -> "AlgebraicNumber":
        if isinstance(coeffs, AlgebraicNumber):
            return coeffs
        if not isinstance(coeffs, (list, tuple)):
            coeffs = [coeffs]
        return AlgebraicNumber(self, coeffs)

    @property
    def generator(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, [0, 1])

    def reduce(self, coeffs):
        c = [as_fraction(x) for x in coeffs]
        d = self.degree
        mod = self.modulus
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead:
                for i in range(d + 1):
                    c[k - d + i] -= lead * mod[i]
        c = c[:d] + [Fraction(0)] * max(0, d - len(c))
        return tuple(c)


GAUSSIAN = NumberField([1, 0, 1], embedding=1j)


def gaussian(re, im=0) -> "AlgebraicNumber":
    """Exact Gaussian rational ``re + im*i``."""
    return AlgebraicNumber(GAUSSIAN, [as_fraction(re), as_fraction(im)])


class AlgebraicNumber:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = field.reduce(coeffs)

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                raise TypeError("mixing elements of different number fields")
            return other.coeffs
        if isinstance(other, (int, Rational)):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, [a + b for a, b in zip(self.coeffs, o)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, [a - b for a, b in zip(self.coeffs, o)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return AlgebraicNumber(self.field, [a * f for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        return AlgebraicNumber(self.field, prod)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        # extended Euclid on (self, modulus)
        r0, r1 = list(self.field.modulus), _poly_trim(self.coeffs)
        if not r1:
            raise ZeroDivisionError("division by zero in number field")
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            if not r1:
                raise ZeroDivisionError("zero divisor: modulus is reducible")
        c = r1[0]
        return AlgebraicNumber(self.field, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return AlgebraicNumber(self.field, [a / f for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * AlgebraicNumber(self.field, o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = AlgebraicNumber(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __complex__(self):
        root = self.field.embedding
        if root is None:
            raise ValueError("number field has no chosen complex embedding")
        return complex(sum(float(c) * root ** k for k, c in enumerate(self.coeffs)))

    def __repr__(self):
        terms = [f"{c}*a^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return "(" + (" + ".join(terms) or "0") + ")"


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [Fraction(x) - y for x, y in zip(a, b)]


def is_exact_scalar(z) -> bool:
    return isinstance(z, (int, Rational, AlgebraicNumber)) and not isinstance(z, bool)


def format_scalar(x) -> str:
    """Serialize a scalar: ``"p/q"`` for rationals, ``"re,im"`` for complex.

    Gaussian rationals keep exact parts, e.g. ``"1/2,-3"``.
    """
    if isinstance(x, AlgebraicNumber):
        if x.is_rational():
            x = x.coeffs[0]
        elif x.field == GAUSSIAN:
            return f"{format_scalar(x.coeffs[0])},{format_scalar(x.coeffs[1])}"
        elif x.field.embedding is not None:
            x = complex(x)
        else:
            return repr(x)
    if isinstance(x, (int, Rational)):
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    c = complex(x)
    return f"{c.real!r},{c.imag!r}"


def parse_scalar(s: str):
    """Inverse of :func:`format_scalar`."""
    s = s.strip()
    if "," in s:
        re_, im_ = s.split(",")
        return complex(float(re_), float(im_))
    return Fraction(s)


# ----------------------------------------------------------------------
# exact elimination

def rref(rows: Sequence[Sequence[Any]]) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form over an exact field.

    Returns the nonzero rows of the RREF and the pivot columns.  The input
    is not modified.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Fraction(1, m[r][c])
        m[r] = [v * inv for v in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    m[i] = [a - f * b if b != 0 else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def exact_nullspace(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list[Any]]:
    """Basis of the right kernel, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns, so the basis is canonical for a given matrix.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows)
    if red:
        one = red[0][pivots[0]]
        zero = one - one
    else:
        one, zero = Fraction(1), Fraction(0)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def exact_rank(rows: Sequence[Sequence[Any]]) -> int:
    if rows and all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
                    for r in rows for x in r):
        return _integer_rank([[int(x) for x in r] for r in rows])
    return len(rref(rows)[1])


def _integer_rank(m: list[list[int]]) -> int:
    """Rank by fraction-free (Bareiss) row echelon form; all divisions are exact."""
    nrows, ncols = len(m), len(m[0]) if m else 0
    r, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p, prow = m[r][c], m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            m[i] = [(a * p - f * b) // prev for a, b in zip(row, prow)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def exact_det(rows: Sequence[Sequence[Any]]):
    """Determinant over Q (fraction-free) or over a number field."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    flat = [x for r in rows for x in r]
    if all(isinstance(x, (int, Rational)) for x in flat):
        scale = Fraction(1)
        ints = []
        for r in rows:
            den = 1
            for x in r:
                den = _lcm(den, Fraction(x).denominator)
            scale *= den
            ints.append([int(Fraction(x) * den) for x in r])
        return Fraction(bareiss_det(ints)) / scale
    m = [list(r) for r in rows]
    det = None
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return m[0][0] * 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        det = m[k][k] if det is None else det * m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det * sign


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def charpoly(rows: Sequence[Sequence[Any]]) -> list[Fraction]:
    """Characteristic polynomial det(xI - A) by Faddeev-LeVerrier.

    Returns coefficients highest degree first, leading coefficient 1.
    Integer input stays in integers throughout.
    """
    n = len(rows)
    integral = all(Fraction(x).denominator == 1 for r in rows for x in r)
    conv = (lambda x: int(x)) if integral else Fraction
    a = np.array([[conv(x) for x in r] for r in rows], dtype=object).reshape(n, n)
    zero, one = conv(0), conv(1)
    m = np.full((n, n), zero, dtype=object)
    coeffs = [one]
    c = one
    for k in range(1, n + 1):
        m = a.dot(m)
        for i in range(n):
            m[i, i] += c
        tr = np.trace(a.dot(m))
        if integral:
            q, r = divmod(-tr, k)
            assert r == 0
            c = q
        else:
            c = -Fraction(tr) / k
        coeffs.append(c)
    return [Fraction(x) for x in coeffs]


def factor_rational_poly(coeffs: Sequence) -> list[tuple[list[Fraction], int]]:
    """Irreducible factorization over Q of a polynomial (highest degree first).

    Returns ``(monic factor coefficients highest first, multiplicity)`` pairs
    in a deterministic order (by degree, then coefficients).
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                       for c in coeffs], x, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        fac = fac.monic()
        out.append(([Fraction(int(c.p), int(c.q)) for c in fac.all_coeffs()], int(mult)))
    out.sort(key=lambda t: (len(t[0]), [float(c) for c in t[0]]))
    return out


# ----------------------------------------------------------------------
# matrix containers

@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with exact entries (Fraction or AlgebraicNumber)."""

    rows: int
    cols: int
    entries: tuple[tuple[Any, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "ExactMatrix":
        data = tuple(tuple(v if isinstance(v, AlgebraicNumber) else as_fraction(v)
                           for v in r) for r in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n))
                               for i in range(n)))

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows
                           else tuple(() for _ in range(self.cols)))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r)
                                                       for r in self.entries))

    def shift(self, z) -> "ExactMatrix":
        """Return ``self - z*I``."""
        return ExactMatrix(self.rows, self.cols, tuple(
            tuple(a - z if i == j else a for j, a in enumerate(r))
            for i, r in enumerate(self.entries)))

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            cols = list(zip(*other.entries))
            return ExactMatrix(self.rows, other.cols, tuple(
                tuple(_dot(r, c) for c in cols) for r in self.entries))
        return [_dot(r, other) for r in self.entries]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.shape == other.shape
                and all(a == b for r, s in zip(self.entries, other.entries)
                        for a, b in zip(r, s)))

    __hash__ = None

    def is_integer(self) -> bool:
        return all(isinstance(a, Fraction) and a.denominator == 1
                   for r in self.entries for a in r)

    def rank(self) -> int:
        return exact_rank(self.entries)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return exact_det(self.entries)

    def charpoly(self) -> list[Fraction]:
        return charpoly(self.entries)

    def to_numeric(self, tol: float = DEFAULT_TOL) -> "NumericMatrix":
        arr = np.array([[complex(a) if isinstance(a, AlgebraicNumber) else float(a)
                         for a in r] for r in self.entries], dtype=complex)
        return NumericMatrix(arr.reshape(self.rows, self.cols), tol)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "mode": "exact",
                "entries": [format_scalar(a) for r in self.entries for a in r]}

    @classmethod
    def from_json(cls, doc: dict) -> "ExactMatrix":
        if doc.get("mode") != "exact":
            raise ValueError("not an exact matrix document")
        n, m = doc["rows"], doc["cols"]
        vals = [gaussian(*s.split(",")) if "," in s else Fraction(s) for s in doc["entries"]]
        return cls.from_rows([vals[i * m:(i + 1) * m] for i in range(n)])


def _dot(r, c):
    acc = None
    for a, b in zip(r, c):
        if a != 0 and b != 0:
            acc = a * b if acc is None else acc + a * b
    return Fraction(0) if acc is None else acc


@dataclass(frozen=True)
class NumericMatrix:
    """Complex double-precision matrix with a relative rank tolerance."""

    data: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.data, compute_uv=False)

    def rank(self) -> int:
        return self.cols - len(numeric_kernel(self.data, self.tol))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "mode": "numeric",
                "entries": [format_scalar(a) for a in self.data.ravel()]}

    @classmethod
    def from_json(cls, doc: dict, tol: float = DEFAULT_TOL) -> "NumericMatrix":
        n, m = doc["rows"], doc["cols"]
        vals = [complex(parse_scalar(s)) for s in doc["entries"]]
        return cls(np.array(vals, dtype=complex).reshape(n, m), tol)


def numeric_kernel(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal kernel basis as rows, from right singular vectors.

    A singular value counts as zero when it is below ``tol * sigma_max``;
    missing singular values of a wide matrix count as zero.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[1]
    if a.size == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(n, dtype=complex)
    nonzero = int(np.sum(s >= tol * smax))
    return vh[nonzero:].conj()


@dataclass
class EqualizerBasis:
    """Kernel basis together with where it came from."""

    operator: str
    z: Any
    mode: str
    vectors: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def as_array(self) -> np.ndarray:
        if self.mode == "numeric":
            return np.array(self.vectors, dtype=complex).reshape(self.dimension, -1)
        return np.array(self.vectors, dtype=object)


def nullspace(m: ExactMatrix, operator: str = "", z=None) -> EqualizerBasis:
    return EqualizerBasis(operator, z, "exact", exact_nullspace(m.entries, m.cols))


def nullspace_numeric(m: NumericMatrix, operator: str = "", z=None) -> EqualizerBasis:
    return EqualizerBasis(operator, z, "numeric", list(numeric_kernel(m.data, m.tol)))
