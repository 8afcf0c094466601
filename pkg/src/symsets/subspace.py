"""Subspaces of GF(q)^n in canonical RREF form and Grassmannian enumeration.

Enumeration order is part of the public contract: pivot-column sets in
lexicographic order, then the free entries (row-major, i.e. by row then
column) in odometer order with the last free entry varying fastest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatchError, InputError, ParseError
from .gfcore import FieldSpec, Matrix, Row, row_basis, rref_rows


@dataclass(frozen=True)
class Subspace:
    """A subspace stored by its RREF basis; equal sets give equal values."""

    field: FieldSpec
    n: int
    rows: tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return Matrix(self.field, self.rows, self.n)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    def order_key(self) -> tuple:
        """Sort key reproducing :func:`enumerate_grassmannian` order."""
        piv = self.pivots
        pivset = set(piv)
        free = tuple(
            r[j] for i, r in enumerate(self.rows) for j in range(piv[i] + 1, self.n) if j not in pivset
        )
        return piv, free

    def __contains__(self, v: Sequence[int]) -> bool:
        return contains(self, span(self.field, [v], self.n))

    def vectors(self) -> Iterator[Row]:
        """All q^dim vectors of the subspace."""
        F = self.field
        for coeffs in itertools.product(range(F.q), repeat=self.dim):
            v = [0] * self.n
            for c, r in zip(coeffs, self.rows):
                if c:
                    for j, x in enumerate(r):
                        if x:
                            v[j] = F._add[v[j]][F.mul(c, x)]
            yield tuple(v)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return span_sum(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)

    def __str__(self) -> str:
        return "<" + "; ".join(" ".join(map(str, r)) for r in self.rows) + ">"


def span(field: FieldSpec, vectors: Iterable[Sequence[int]], n: int | None = None) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    if n is None:
        if not vectors:
            raise DimensionMismatchError("ambient dimension needed to span no vectors")
        n = len(vectors[0])
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatchError(f"vector of length {len(v)} in GF(q)^{n}")
        for a in v:
            field.check(a)
    return Subspace(field, n, row_basis(field, vectors, n))


def zero_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, ())


def whole_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def unit_vector(n: int, i: int) -> Row:
    return tuple(int(j == i) for j in range(n))


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.n != b.n or a.field is not b.field:
        raise DimensionMismatchError("subspaces live in different ambient spaces")


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    if not b.rows:
        return a
    if not a.rows:
        return b
    return Subspace(a.field, a.n, row_basis(a.field, a.rows + b.rows, a.n))


def sum_all(field: FieldSpec, n: int, spaces: Iterable[Subspace]) -> Subspace:
    rows: list[Row] = []
    for s in spaces:
        rows.extend(s.rows)
    return Subspace(field, n, row_basis(field, rows, n))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce [[a, a], [b, 0]]; rows with zero left half give a∩b."""
    _same_ambient(a, b)
    n = a.n
    if not a.rows or not b.rows:
        return zero_space(a.field, n)
    rows = [r + r for r in a.rows] + [r + (0,) * n for r in b.rows]
    reduced, pivots = rref_rows(a.field, rows, 2 * n)
    inter = [reduced[i][n:] for i, pc in enumerate(pivots) if pc >= n]
    return Subspace(a.field, n, row_basis(a.field, inter, n))


def contains(outer: Subspace, inner: Subspace) -> bool:
    _same_ambient(outer, inner)
    if inner.dim > outer.dim:
        return False
    if not inner.rows:
        return True
    _, pivots = rref_rows(outer.field, outer.rows + inner.rows, outer.n)
    return len(pivots) == outer.dim


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if not 0 <= k <= n:
        raise InputError(f"need 0 <= k <= n, got n={n}, k={k}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def enumerate_grassmannian(field: FieldSpec, n: int, k: int) -> Iterator[Subspace]:
    """Yield every k-subspace of GF(q)^n exactly once, in contract order."""
    if not 0 <= k <= n:
        raise InputError(f"need 0 <= k <= n, got n={n}, k={k}")
    q = field.q
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        slots = [(i, j) for i in range(k) for j in range(piv[i] + 1, n) if j not in pivset]
        for vals in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, j), x in zip(slots, vals):
                rows[i][j] = x
            yield Subspace(field, n, tuple(tuple(r) for r in rows))


def grassmannian(field: FieldSpec, n: int, k: int) -> list[Subspace]:
    return list(enumerate_grassmannian(field, n, k))


def lines(field: FieldSpec, n: int) -> list[Subspace]:
    return grassmannian(field, n, 1)


def hyperplanes(field: FieldSpec, n: int) -> list[Subspace]:
    return grassmannian(field, n, n - 1)


def incident_planes(s: Subspace, k: int) -> Iterator[Subspace]:
    """k-subspaces inside ``s`` (dim s > k) or containing ``s`` (dim s < k)."""
    F, n, d = s.field, s.n, s.dim
    if d == k:
        raise InputError("incident_planes needs dim(s) != k")
    if not 0 <= k <= n:
        raise InputError(f"need 0 <= k <= n, got n={n}, k={k}")
    if d > k:
        for coeff in enumerate_grassmannian(F, d, k):
            combos = []
            for c in coeff.rows:
                v = [0] * n
                for a, r in zip(c, s.rows):
                    if a:
                        for j, x in enumerate(r):
                            if x:
                                v[j] = F._add[v[j]][F.mul(a, x)]
                combos.append(tuple(v))
            yield Subspace(F, n, row_basis(F, combos, n))
    else:
        # lift subspaces of the complement spanned by the non-pivot unit vectors
        pivset = set(s.pivots)
        free = [j for j in range(n) if j not in pivset]
        for sub in enumerate_grassmannian(F, n - d, k - d):
            lifted = []
            for r in sub.rows:
                v = [0] * n
                for j, x in zip(free, r):
                    v[j] = x
                lifted.append(tuple(v))
            yield Subspace(F, n, row_basis(F, list(s.rows) + lifted, n))


def format_block(s: Subspace) -> str:
    return s.to_text()


def parse_block(field: FieldSpec, n: int, lines_: Sequence[str]) -> Subspace:
    """Parse k lines of n integers; the rows must already be the RREF basis."""
    rows = []
    for line in lines_:
        try:
            vals = tuple(int(t) for t in line.split())
        except ValueError:
            raise ParseError(f"non-integer entry in row {line!r}") from None
        if len(vals) != n:
            raise ParseError(f"row {line!r} does not have {n} entries")
        for x in vals:
            if not 0 <= x < field.q:
                raise ParseError(f"entry {x} outside [0, {field.q})")
        rows.append(vals)
    s = Subspace(field, n, row_basis(field, rows, n))
    if s.rows != tuple(rows):
        raise ParseError("block is not a canonical RREF basis of full rank")
    return s
