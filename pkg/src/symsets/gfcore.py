"""Exact arithmetic in small finite fields GF(p^m) and matrix algebra over them.

Field elements are plain ints in ``[0, q)``; the base-p digits of the code are
the polynomial coefficients, constant term first.  Multiplication and
inversion go through discrete-log tables built once per field.  Matrices over
GF(2) are eliminated with rows packed into Python ints (one XOR per row op).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, FieldError, SingularMatrixError

MAX_ORDER = 256

# Monic irreducible moduli, coefficients low degree first (leading 1 included).
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 1, 1, 0, 1),  # x^6 + x^4 + x^3 + x + 1
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),  # x^7 + x + 1
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),  # x^8 + x^4 + x^3 + x^2 + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (3, 4): (2, 0, 0, 2, 1),  # x^4 + 2x^3 + 2
    (3, 5): (1, 2, 0, 0, 0, 1),  # x^5 + 2x + 1
    (5, 2): (2, 0, 1),  # x^2 + 2
    (5, 3): (3, 3, 0, 1),  # x^3 + 3x + 3
    (7, 2): (3, 6, 1),  # x^2 + 6x + 3
    (11, 2): (2, 7, 1),  # x^2 + 7x + 2
    (13, 2): (2, 12, 1),  # x^2 + 12x + 2
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of ``num`` by the monic polynomial ``den`` over GF(p)."""
    num = list(num)
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i] % p
        if c:
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % p
    return [c % p for c in num[:d]] + [0] * max(0, d - len(num))


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(poly) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_mod(list(poly), divisor, p)):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^m) with a fixed modulus.  Build through :func:`make_field`."""

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self) -> None:
        q = self.p**self.m
        object.__setattr__(self, "q", q)
        p = self.p
        digits = [self._digits(a) for a in range(q)]

        add = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits[a]
            for b in range(q):
                db = digits[b]
                add[a][b] = self._code([(x + y) % p for x, y in zip(da, db)])
        neg = [self._code([(-x) % p for x in digits[a]]) for a in range(q)]

        def polymul(a: int, b: int) -> int:
            prod = [0] * (2 * self.m - 1)
            for i, x in enumerate(digits[a]):
                if x:
                    for j, y in enumerate(digits[b]):
                        prod[i + j] += x * y
            if self.m == 1:
                return prod[0] % p
            return self._code(_poly_mod(prod, self.modulus, p))

        # find a generator of the multiplicative group
        gen = None
        for g in range(2, q) if q > 2 else [1]:
            seen, x = 1, g
            while x != 1:
                x = polymul(x, g)
                seen += 1
            if seen == q - 1:
                gen = g
                break
        assert gen is not None
        exp = [1] * (2 * (q - 1))
        log = [0] * q
        for i in range(1, 2 * (q - 1)):
            exp[i] = polymul(exp[i - 1], gen)
        for i in range(q - 1):
            log[exp[i]] = i
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)]

        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_neg", neg)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        object.__setattr__(self, "_inv", inv)
        object.__setattr__(self, "generator", gen)
        frob = []
        for e in range(self.m):
            power = p**e
            frob.append(tuple(self.power(a, power) for a in range(q)))
        object.__setattr__(self, "_frob", tuple(frob))

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _code(self, digits: Sequence[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def automorphism(self, e: int) -> "FieldAutomorphism":
        return FieldAutomorphism(self, e % self.m)

    def automorphisms(self) -> list["FieldAutomorphism"]:
        return [FieldAutomorphism(self, e) for e in range(self.m)]

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of {self!r}")
        return a


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Return GF(p^m) using the built-in modulus table.

    Prime fields (m=1) use the placeholder modulus ``x``; arithmetic is mod p.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if p**m > MAX_ORDER:
        raise FieldError(f"GF({p}^{m}) exceeds the supported order {MAX_ORDER}")
    if m == 1:
        modulus: tuple[int, ...] = (0, 1)
    else:
        try:
            modulus = MODULUS_TABLE[(p, m)]
        except KeyError:
            raise FieldError(f"no modulus for GF({p}^{m}) in the table") from None
        if not is_irreducible(modulus, p):
            raise FieldError(f"table modulus {modulus} for GF({p}^{m}) is reducible")
    return FieldSpec(p, m, modulus)


def field_of_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return make_field(p, m)


@dataclass(frozen=True)
class FieldAutomorphism:
    """Frobenius power ``a -> a^(p^e)``."""

    field: FieldSpec
    e: int

    def __call__(self, a: int) -> int:
        return self.field._frob[self.e][a]

    @property
    def is_identity(self) -> bool:
        return self.e == 0

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        """``self o other``."""
        return FieldAutomorphism(self.field, (self.e + other.e) % self.field.m)

    def inverse(self) -> "FieldAutomorphism":
        return FieldAutomorphism(self.field, (-self.e) % self.field.m)

    def apply_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if self.e == 0:
            return tuple(v)
        table = self.field._frob[self.e]
        return tuple(table[x] for x in v)

    def __repr__(self) -> str:
        return f"Frob^{self.e}"


def apply_automorphism(sigma: FieldAutomorphism, a: int) -> int:
    return sigma(a)


Row = tuple[int, ...]


@dataclass(frozen=True)
class Matrix:
    """Immutable row-major matrix over a :class:`FieldSpec`."""

    field: FieldSpec
    rows: tuple[Row, ...]
    ncols: int

    @classmethod
    def from_rows(cls, fld: FieldSpec, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatchError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatchError(f"row of length {len(r)} in a {ncols}-column matrix")
            for a in r:
                fld.check(a)
        return cls(fld, rows, ncols)

    @classmethod
    def zeros(cls, fld: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls(fld, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, fld: FieldSpec, n: int) -> "Matrix":
        return cls(fld, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Row:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        cols = tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols))
        return Matrix(self.field, tuple(tuple(c) for c in cols), len(self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        add, mul = F._add, F.mul
        cols = other.transpose().rows
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = add[acc][mul(a, b)]
                row.append(acc)
            out.append(tuple(row))
        return Matrix(F, tuple(out), other.ncols)

    def apply(self, v: Sequence[int]) -> Row:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(self.field, r, v) for r in self.rows)

    def scale(self, a: int) -> "Matrix":
        mul = self.field.mul
        return Matrix(self.field, tuple(tuple(mul(a, x) for x in r) for r in self.rows), self.ncols)

    def neg(self) -> "Matrix":
        neg = self.field._neg
        return Matrix(self.field, tuple(tuple(neg[x] for x in r) for r in self.rows), self.ncols)

    def map_entries(self, sigma: FieldAutomorphism) -> "Matrix":
        if sigma.is_identity:
            return self
        return Matrix(self.field, tuple(sigma.apply_vector(r) for r in self.rows), self.ncols)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionMismatchError("column counts differ")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def dot(F: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    add, mul = F._add, F.mul
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = add[acc][mul(a, b)]
    return acc


def _pack(row: Row) -> int:
    bits = 0
    for j, x in enumerate(row):
        if x:
            bits |= 1 << j
    return bits


def _unpack(bits: int, ncols: int) -> Row:
    return tuple((bits >> j) & 1 for j in range(ncols))


def _rref_gf2(rows: Sequence[Row], ncols: int) -> tuple[list[Row], list[int]]:
    packed = [_pack(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        for i in range(top, len(packed)):
            if packed[i] & bit:
                break
        else:
            continue
        packed[top], packed[i] = packed[i], packed[top]
        pr = packed[top]
        for i in range(len(packed)):
            if i != top and packed[i] & bit:
                packed[i] ^= pr
        pivots.append(col)
        top += 1
        if top == len(packed):
            break
    return [_unpack(b, ncols) for b in packed], pivots


def _rref_general(F: FieldSpec, rows: Sequence[Row], ncols: int) -> tuple[list[Row], list[int]]:
    work = [list(r) for r in rows]
    add, neg, mul, inv = F._add, F._neg, F.mul, F._inv
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        for i in range(top, len(work)):
            if work[i][col]:
                break
        else:
            continue
        work[top], work[i] = work[i], work[top]
        pr = work[top]
        c = pr[col]
        if c != 1:
            ci = inv[c]
            pr = work[top] = [mul(ci, x) for x in pr]
        for i in range(len(work)):
            if i != top:
                f = work[i][col]
                if f:
                    nf = neg[f]
                    row = work[i]
                    for j in range(col, ncols):
                        if pr[j]:
                            row[j] = add[row[j]][mul(nf, pr[j])]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return [tuple(r) for r in work], pivots


def rref_rows(F: FieldSpec, rows: Sequence[Row], ncols: int) -> tuple[list[Row], list[int]]:
    """RREF of a list of rows; returns (all rows, pivot columns)."""
    if F.q == 2:
        return _rref_gf2(rows, ncols)
    return _rref_general(F, rows, ncols)


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivots are the first nonzero entry scanning columns left to right and
    rows top to bottom; pivot entries are normalised to 1.
    """
    rows, pivots = rref_rows(M.field, M.rows, M.ncols)
    return Matrix(M.field, tuple(rows), M.ncols), len(pivots), pivots


def rank(M: Matrix) -> int:
    return len(rref_rows(M.field, M.rows, M.ncols)[1])


def row_basis(F: FieldSpec, rows: Sequence[Row], ncols: int) -> tuple[Row, ...]:
    """Nonzero RREF rows spanning the same row space."""
    reduced, pivots = rref_rows(F, rows, ncols)
    return tuple(reduced[: len(pivots)])


def kernel(M: Matrix) -> Matrix:
    """Basis (as RREF rows) of the right null space ``{v : M v = 0}``."""
    F = M.field
    n = M.ncols
    reduced, pivots = rref_rows(F, M.rows, n)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            a = reduced[i][f]
            if a:
                v[pc] = F._neg[a]
        basis.append(tuple(v))
    # free-column construction gives a basis; canonicalise it
    return Matrix(F, row_basis(F, basis, n), n)


def invert(M: Matrix) -> Matrix:
    if not M.is_square():
        raise DimensionMismatchError(f"cannot invert a {M.shape} matrix")
    n = M.nrows
    F = M.field
    aug = [r + tuple(int(i == j) for j in range(n)) for i, r in enumerate(M.rows)]
    reduced, pivots = rref_rows(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix(F, tuple(r[n:] for r in reduced[:n]), n)


def is_invertible(M: Matrix) -> bool:
    return M.is_square() and rank(M) == M.nrows


def solve_combination(F: FieldSpec, vectors: Sequence[Row], target: Row) -> list[int] | None:
    """Coefficients c with sum c_i vectors_i = target, or None."""
    k = len(vectors)
    n = len(target)
    # columns are the vectors, augmented by target
    aug = [tuple(vectors[i][j] for i in range(k)) + (target[j],) for j in range(n)]
    reduced, pivots = rref_rows(F, aug, k + 1)
    if k in pivots:
        return None
    coeffs = [0] * k
    for i, pc in enumerate(pivots):
        coeffs[pc] = reduced[i][k]
    return coeffs


def all_vectors(F: FieldSpec, n: int) -> Iterable[Row]:
    """Every vector of GF(q)^n, first coordinate varying slowest."""
    return itertools.product(range(F.q), repeat=n)
