"""Recover the semilinear map behind a collineation of projective space.

Lines (1-subspaces) are the points of the projective space; a :class:`LineMap`
stores the image of every line, indexed by enumeration order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .errors import DimensionMismatchError, NotACollineationError, SingularMatrixError
from .forms import SemilinearMap, apply_map_to_subspace
from .gfcore import FieldSpec, Matrix, solve_combination
from .subspace import Subspace, enumerate_grassmannian, incident_planes, span, sum_all, unit_vector


@dataclass(frozen=True)
class LineMap:
    field: FieldSpec
    n: int
    images: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        domain = tuple(enumerate_grassmannian(self.field, self.n, 1))
        if len(self.images) != len(domain):
            raise DimensionMismatchError(f"line map needs {len(domain)} images, got {len(self.images)}")
        for img in self.images:
            if img.dim != 1 or img.n != self.n or img.field is not self.field:
                raise DimensionMismatchError(f"{img} is not a line of GF({self.field.q})^{self.n}")
        object.__setattr__(self, "_domain", domain)
        object.__setattr__(self, "_pos", {l: i for i, l in enumerate(domain)})

    @classmethod
    def from_function(cls, field: FieldSpec, n: int, fn: Callable[[Subspace], Subspace]) -> "LineMap":
        return cls(field, n, tuple(fn(l) for l in enumerate_grassmannian(field, n, 1)))

    @classmethod
    def induced_by(cls, f: SemilinearMap) -> "LineMap":
        return cls.from_function(f.field, f.n, lambda l: apply_map_to_subspace(f, l))

    @property
    def domain(self) -> tuple[Subspace, ...]:
        return self._domain

    def __call__(self, line: Subspace) -> Subspace:
        return self.images[self._pos[line]]

    def items(self):
        return zip(self._domain, self.images)

    def compose(self, other: "LineMap") -> "LineMap":
        """self o other."""
        return LineMap(self.field, self.n, tuple(self(img) for img in other.images))


def verify_collineation(f: LineMap) -> bool:
    """Bijective, and maps every projective line into a projective line.

    Also checks that each n-subset of the standard frame e_1..e_n,
    e_1+...+e_n stays independent.  A bijection of a finite projective space
    sending lines into lines maps them onto lines, so its inverse preserves
    collinearity too.
    """
    F, n = f.field, f.n
    if len(set(f.images)) != len(f.images):
        return False
    if n >= 2:
        for plane in enumerate_grassmannian(F, n, 2):
            if sum_all(F, n, (f(p) for p in incident_planes(plane, 1))).dim != 2:
                return False
    frame = [span(F, [unit_vector(n, i)], n) for i in range(n)]
    frame.append(span(F, [(1,) * n], n))
    for subset in itertools.combinations(frame, n):
        if sum_all(F, n, (f(p) for p in subset)).dim != n:
            return False
    return True


def recover_semilinear(f: LineMap) -> SemilinearMap:
    """Find (G, sigma) with span(G sigma(v)) = f(span(v)) for every line.

    G is fixed up to a nonzero scalar by sending the unit frame through f;
    sigma is read off the images of span(e_1 + a e_2) and matched against the
    Frobenius powers.  The result is checked on every line before returning.
    """
    F, n = f.field, f.n
    reps = [f(span(F, [unit_vector(n, i)], n)).rows[0] for i in range(n)]
    w = f(span(F, [(1,) * n], n)).rows[0]
    coeffs = solve_combination(F, reps, w)
    if coeffs is None or 0 in coeffs:
        raise NotACollineationError("images of the standard frame are not in general position")
    cols = [tuple(F.mul(c, x) for x in v) for c, v in zip(coeffs, reps)]
    G = Matrix(F, tuple(tuple(r) for r in zip(*cols)), n)

    sigma = F.automorphism(0)
    if F.m > 1:
        if n < 2:
            raise NotACollineationError("cannot recover a field automorphism in dimension 1")
        table = [0, 1]
        for a in range(2, F.q):
            v = [0] * n
            v[0], v[1] = 1, a
            u = f(span(F, [v], n)).rows[0]
            c = solve_combination(F, [cols[0], cols[1]], u)
            if c is None or c[0] == 0:
                raise NotACollineationError(f"image of <e1 + {a} e2> left the line <Ge1, Ge2>")
            table.append(F.div(c[1], c[0]))
        for cand in F.automorphisms():
            if all(cand(a) == table[a] for a in range(F.q)):
                sigma = cand
                break
        else:
            raise NotACollineationError("no field automorphism matches the recovered scalar action")

    try:
        g = SemilinearMap(G, sigma)
    except SingularMatrixError as exc:
        raise NotACollineationError(str(exc)) from None
    for line, img in f.items():
        if apply_map_to_subspace(g, line) != img:
            raise NotACollineationError(f"recovered map disagrees with f on {line}")
    return g
