"""Sesquilinear forms given by a Gram matrix and an automorphism pair.

The coordinate convention lives here and nowhere else::

    Omega(x, y) = sigma1(x)^T . A . sigma2(y)

with automorphisms applied entrywise.  Every other module evaluates forms and
takes orthogonal complements through this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatchError, FormError, ParseError, SingularMatrixError
from .gfcore import (
    FieldAutomorphism,
    FieldSpec,
    Matrix,
    Row,
    all_vectors,
    dot,
    field_of_order,
    invert,
    is_invertible,
    kernel,
    rank,
    row_basis,
)
from .subspace import Subspace, enumerate_grassmannian, intersect, span

# Above this many vectors, reflexivity is decided on pairs of lines only.
REFLEXIVE_VECTOR_LIMIT = 256


@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix
    sigma1: FieldAutomorphism
    sigma2: FieldAutomorphism

    @classmethod
    def plain(cls, gram: Matrix) -> "BilinearForm":
        """Bilinear form with trivial automorphisms."""
        ident = gram.field.automorphism(0)
        return cls(gram, ident, ident)

    def __post_init__(self) -> None:
        if not self.gram.is_square():
            raise DimensionMismatchError(f"Gram matrix must be square, got {self.gram.shape}")

    @property
    def field(self) -> FieldSpec:
        return self.gram.field

    @property
    def n(self) -> int:
        return self.gram.nrows

    @property
    def is_plain(self) -> bool:
        return self.sigma1.is_identity and self.sigma2.is_identity

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> int:
        return evaluate(self, x, y)


def evaluate(omega: BilinearForm, x: Sequence[int], y: Sequence[int]) -> int:
    n = omega.n
    if len(x) != n or len(y) != n:
        raise DimensionMismatchError(f"vectors must have length {n}")
    F = omega.field
    sx = omega.sigma1.apply_vector(x)
    Ay = omega.gram.apply(omega.sigma2.apply_vector(y))
    return dot(F, sx, Ay)


def standard_gram(field: FieldSpec, n: int) -> Matrix:
    """Block diagonal J with 2x2 blocks [[0, 1], [-1, 0]]."""
    if n % 2:
        raise FormError(f"standard symplectic Gram needs even n, got {n}")
    rows = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        rows[i][i + 1] = 1
        rows[i + 1][i] = field.neg(1)
    return Matrix(field, tuple(tuple(r) for r in rows), n)


def standard_form(field: FieldSpec, n: int) -> BilinearForm:
    return BilinearForm.plain(standard_gram(field, n))


def is_alternating(A: Matrix) -> bool:
    """Zero diagonal and A = -A^T."""
    F = A.field
    n = A.nrows
    for i in range(n):
        if A[i, i]:
            return False
        for j in range(i + 1, n):
            if A[i, j] != F.neg(A[j, i]):
                return False
    return True


def is_skew_symmetric(A: Matrix) -> bool:
    F = A.field
    return all(A[i, j] == F.neg(A[j, i]) for i in range(A.nrows) for j in range(A.nrows))


def is_symplectic(omega: BilinearForm) -> bool:
    """Omega(x, x) = 0 for every x, decided from the Gram matrix.

    Forms with sigma1 != sigma2 are never symplectic here.  With
    sigma1 = sigma2 the condition is on sigma(x) which ranges over all
    vectors, so it is exactly alternation of the Gram matrix.
    """
    if omega.sigma1 != omega.sigma2:
        return False
    return is_alternating(omega.gram)


def is_symplectic_pointwise(omega: BilinearForm) -> bool:
    """Brute-force check of Omega(x, x) = 0 over all q^n vectors."""
    return all(evaluate(omega, x, x) == 0 for x in all_vectors(omega.field, omega.n))


def is_non_singular(omega: BilinearForm) -> bool:
    return is_invertible(omega.gram)


def _require_non_singular(omega: BilinearForm) -> None:
    if not is_non_singular(omega):
        raise FormError("form is singular")


def _line_reps(field: FieldSpec, n: int) -> list[Row]:
    return [s.rows[0] for s in enumerate_grassmannian(field, n, 1)]


def is_reflexive(omega: BilinearForm) -> bool:
    """Omega(x, y) = 0 iff Omega(y, x) = 0, for all x, y.

    Exhaustive over vector pairs for tiny spaces, otherwise over pairs of line
    representatives (vanishing is unchanged by rescaling either argument).
    """
    _require_non_singular(omega)
    F, n = omega.field, omega.n
    if F.q**n <= REFLEXIVE_VECTOR_LIMIT:
        vecs = list(all_vectors(F, n))
    else:
        vecs = _line_reps(F, n)
    for i, x in enumerate(vecs):
        for y in vecs[i:]:
            if (evaluate(omega, x, y) == 0) != (evaluate(omega, y, x) == 0):
                return False
    return True


def radical(omega: BilinearForm) -> Subspace:
    """{y : Omega(x, y) = 0 for all x}."""
    K = kernel(omega.gram)
    back = omega.sigma2.inverse()
    return span(omega.field, [back.apply_vector(r) for r in K.rows], omega.n)


def orthogonal_complement(omega: BilinearForm, s: Subspace) -> Subspace:
    """Right orthogonal complement {y : Omega(x, y) = 0 for all x in s}."""
    _require_non_singular(omega)
    return _complement(omega, s)


def _complement(omega: BilinearForm, s: Subspace) -> Subspace:
    F, n = omega.field, omega.n
    if s.n != n:
        raise DimensionMismatchError("subspace and form have different ambient dimension")
    if not s.rows:
        return Subspace(F, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    M = s.basis.map_entries(omega.sigma1) @ omega.gram
    K = kernel(M)
    if omega.sigma2.is_identity:
        return Subspace(F, n, K.rows)
    back = omega.sigma2.inverse()
    return Subspace(F, n, row_basis(F, [back.apply_vector(r) for r in K.rows], n))


def left_complement(omega: BilinearForm, s: Subspace) -> Subspace:
    """{x : Omega(x, y) = 0 for all y in s}."""
    return orthogonal_complement(transpose_form(omega), s)


def restricted_gram(omega: BilinearForm, s: Subspace) -> Matrix:
    """[Omega(b_i, b_j)] over the canonical basis of s."""
    B = s.basis
    return B.map_entries(omega.sigma1) @ omega.gram @ B.map_entries(omega.sigma2).transpose()


def restriction_is_singular(omega: BilinearForm, s: Subspace) -> bool:
    return rank(restricted_gram(omega, s)) < s.dim


def transpose_form(omega: BilinearForm) -> BilinearForm:
    """Omega'(x, y) = Omega(y, x)."""
    return BilinearForm(omega.gram.transpose(), omega.sigma2, omega.sigma1)


def scale_form(omega: BilinearForm, a: int) -> BilinearForm:
    if a == 0:
        raise FormError("scaling a form by zero")
    return BilinearForm(omega.gram.scale(a), omega.sigma1, omega.sigma2)


def twist_form(omega: BilinearForm, sigma: FieldAutomorphism) -> BilinearForm:
    """The form sigma o Omega: Gram sigma(A), automorphisms sigma*sigma1, sigma*sigma2."""
    return BilinearForm(
        omega.gram.map_entries(sigma), sigma.compose(omega.sigma1), sigma.compose(omega.sigma2)
    )


@dataclass(frozen=True)
class SemilinearMap:
    """v -> G . sigma(v)."""

    matrix: Matrix
    sigma: FieldAutomorphism

    def __post_init__(self) -> None:
        if not is_invertible(self.matrix):
            raise SingularMatrixError("semilinear map needs an invertible matrix")

    @classmethod
    def linear(cls, matrix: Matrix) -> "SemilinearMap":
        return cls(matrix, matrix.field.automorphism(0))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "SemilinearMap":
        return cls.linear(Matrix.identity(field, n))

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def __call__(self, v: Sequence[int]) -> Row:
        return self.matrix.apply(self.sigma.apply_vector(v))

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """self o other = (G1 sigma1(G2), sigma1 sigma2)."""
        return SemilinearMap(self.matrix @ other.matrix.map_entries(self.sigma), self.sigma.compose(other.sigma))

    def inverse(self) -> "SemilinearMap":
        # v = G s(u)  =>  u = s^-1(G^-1) s^-1(v)
        sinv = self.sigma.inverse()
        return SemilinearMap(invert(self.matrix).map_entries(sinv), sinv)


def pullback_form(omega: BilinearForm, f: SemilinearMap) -> BilinearForm:
    """Omega'(x, y) = Omega(f(x), f(y))."""
    G = f.matrix
    gram = G.map_entries(omega.sigma1).transpose() @ omega.gram @ G.map_entries(omega.sigma2)
    return BilinearForm(gram, omega.sigma1.compose(f.sigma), omega.sigma2.compose(f.sigma))


def apply_map_to_subspace(f: SemilinearMap, s: Subspace) -> Subspace:
    return Subspace(s.field, s.n, row_basis(s.field, [f(r) for r in s.rows], s.n))


def symplectic_basis(omega: BilinearForm) -> SemilinearMap:
    """Linear f whose columns form hyperbolic pairs, so pullback_form(omega, f) has Gram J.

    Candidates are scanned in coordinate-vector order of GF(q)^n.
    """
    F, n = omega.field, omega.n
    if not omega.is_plain:
        raise FormError("symplectic_basis needs trivial automorphisms")
    if n % 2:
        raise FormError(f"no non-singular symplectic form in odd dimension {n}")
    if not is_symplectic(omega):
        raise FormError("form is not symplectic")
    _require_non_singular(omega)

    cols: list[Row] = []
    rest = span(F, [tuple(int(i == j) for j in range(n)) for i in range(n)], n)
    while rest.dim:
        u = next(v for v in all_vectors(F, n) if any(v) and v in rest)
        v = None
        for w in all_vectors(F, n):
            if any(w) and w in rest:
                c = evaluate(omega, u, w)
                if c:
                    v = tuple(F.mul(F.inv(c), x) for x in w)
                    break
        if v is None:
            raise FormError("form is singular on a complement; cannot find a hyperbolic partner")
        cols.extend([u, v])
        pair = span(F, [u, v], n)
        rest = intersect(rest, _complement(omega, pair))
    return SemilinearMap.linear(Matrix(F, tuple(tuple(r) for r in zip(*cols)), n))


def format_gram(A: Matrix) -> str:
    lines = [f"{A.field.q} {A.nrows}"]
    lines += [" ".join(str(x) for x in r) for r in A.rows]
    return "\n".join(lines) + "\n"


def parse_gram(text: str) -> Matrix:
    """Parse "q n" followed by n rows of n codes; '#' lines are ignored."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty Gram file")
    head = lines[0].split()
    try:
        q, n = (int(t) for t in head)
    except ValueError:
        raise ParseError(f"bad Gram header {lines[0]!r}; expected 'q n'") from None
    if n < 1:
        raise ParseError(f"bad dimension {n}")
    F = field_of_order(q)
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} Gram rows, found {len(body)}")
    rows = []
    for ln in body:
        try:
            row = tuple(int(t) for t in ln.split())
        except ValueError:
            raise ParseError(f"non-integer entry in {ln!r}") from None
        if len(row) != n or any(not 0 <= x < q for x in row):
            raise ParseError(f"bad Gram row {ln!r}")
        rows.append(row)
    return Matrix(F, tuple(rows), n)

