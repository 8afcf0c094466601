"""Singular-restriction sets of symplectic forms and the condition-S checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ConditionSError, FormError, InputError, ParseError
from .forms import BilinearForm, is_non_singular, is_symplectic, restriction_is_singular
from .gfcore import FieldSpec, field_of_order
from .subspace import (
    Subspace,
    contains,
    enumerate_grassmannian,
    incident_planes,
    intersect,
    parse_block,
    span_sum,
)

HYPERPLANE = "hyperplane"  # k = n-2, F maps hyperplanes to lines
LINE = "line"  # k = 2, F maps lines to hyperplanes


@dataclass(frozen=True)
class PlaneSet:
    """A duplicate-free set of k-subspaces kept in enumeration order."""

    field: FieldSpec
    n: int
    k: int
    members: tuple[Subspace, ...]
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for s in self.members:
            if s.n != self.n or s.dim != self.k or s.field is not self.field:
                raise InputError(f"member {s} is not a {self.k}-subspace of GF({self.field.q})^{self.n}")
        ordered = tuple(sorted(self.members, key=Subspace.order_key))
        index = frozenset(ordered)
        if len(index) != len(ordered):
            raise InputError("plane set contains duplicates")
        object.__setattr__(self, "members", ordered)
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, field: FieldSpec, n: int, k: int, members: Iterable[Subspace]) -> "PlaneSet":
        return cls(field, n, k, tuple(members))

    @property
    def q(self) -> int:
        return self.field.q

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, s: object) -> bool:
        return s in self._index

    def as_frozenset(self) -> frozenset:
        return self._index

    def with_plane(self, s: Subspace) -> "PlaneSet":
        return PlaneSet(self.field, self.n, self.k, self.members + (s,))

    def without_plane(self, s: Subspace) -> "PlaneSet":
        return PlaneSet(self.field, self.n, self.k, tuple(m for m in self.members if m != s))


def equal_sets(a: PlaneSet, b: PlaneSet) -> bool:
    if (a.q, a.n, a.k) != (b.q, b.n, b.k):
        raise InputError(f"cannot compare sets with parameters {(a.q, a.n, a.k)} and {(b.q, b.n, b.k)}")
    return a.as_frozenset() == b.as_frozenset()


def _require_symplectic(omega: BilinearForm) -> None:
    if not is_symplectic(omega):
        raise FormError("form is not symplectic")
    if not is_non_singular(omega):
        raise FormError("form is singular")


def singular_set(omega: BilinearForm, k: int) -> PlaneSet:
    """All k-planes on which the restriction of ``omega`` is degenerate."""
    _require_symplectic(omega)
    F, n = omega.field, omega.n
    if not 1 <= k <= n - 1:
        raise InputError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    planes = enumerate_grassmannian(F, n, k)
    if k % 2:
        # alternating forms have even rank, so every odd-dimensional restriction is singular
        return PlaneSet(F, n, k, tuple(planes))
    return PlaneSet(F, n, k, tuple(l for l in planes if restriction_is_singular(omega, l)))


@dataclass(frozen=True)
class WitnessF:
    """The map F certifying condition S.

    ``direction == HYPERPLANE``: hyperplane s -> line F(s) inside s.
    ``direction == LINE``: line s -> hyperplane F(s) containing s.
    """

    direction: str
    field: FieldSpec
    n: int
    assignments: tuple[tuple[Subspace, Subspace], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_map", dict(self.assignments))

    def __call__(self, s: Subspace) -> Subspace:
        return self._map[s]

    def __len__(self) -> int:
        return len(self.assignments)

    def items(self) -> tuple[tuple[Subspace, Subspace], ...]:
        return self.assignments

    def incidence_holds(self) -> bool:
        """F(s) inside s (hyperplanes) / s inside F(s) (lines), for every s."""
        if self.direction == HYPERPLANE:
            return all(contains(s, t) for s, t in self.assignments)
        return all(contains(t, s) for s, t in self.assignments)

    def symmetry_holds(self) -> bool:
        """F(s1) in s2 iff F(s2) in s1 (dually s1 in F(s2) iff s2 in F(s1))."""
        items = self.assignments
        for i, (s1, t1) in enumerate(items):
            for s2, t2 in items[i + 1 :]:
                if self.direction == HYPERPLANE:
                    if contains(s2, t1) != contains(s1, t2):
                        return False
                elif contains(t2, s1) != contains(t1, s2):
                    return False
        return True


def default_direction(n: int, k: int) -> str:
    return LINE if k == 2 else HYPERPLANE


def _incidence_index(X: PlaneSet, m: int) -> dict[Subspace, list[Subspace]]:
    """For each m-space s incident with some member of X, the incident members."""
    index: dict[Subspace, list[Subspace]] = {}
    for l in X.members:
        for s in incident_planes(l, m):
            index.setdefault(s, []).append(l)
    return index


def _between(low: Subspace, high: Subspace, k: int) -> list[Subspace]:
    """k-spaces l with low <= l <= high, in enumeration order."""
    if low.dim == k:
        return [low] if contains(high, low) else []
    return [l for l in incident_planes(low, k) if contains(high, l)]


def check_condition_s(X: PlaneSet, direction: str | None = None) -> WitnessF:
    """Decide condition S and return its witness map F.

    Raises :class:`ConditionSError` naming the hyperplane/line where the
    incidence equality fails, plus one offending plane.
    """
    F, n, k = X.field, X.n, X.k
    if n < 4:
        raise InputError(f"condition S needs n >= 4, got n={n}")
    if k not in (2, n - 2):
        raise InputError(f"condition S is defined for k = 2 or n-2 only, got k={k}, n={n}")
    if direction is None:
        direction = default_direction(n, k)
    if direction == HYPERPLANE and k != n - 2:
        raise InputError("hyperplane direction needs k = n-2")
    if direction == LINE and k != 2:
        raise InputError("line direction needs k = 2")
    if direction not in (HYPERPLANE, LINE):
        raise InputError(f"unknown direction {direction!r}")

    if direction == HYPERPLANE:
        m, target = n - 1, 1
    else:
        m, target = 1, n - 1
    index = _incidence_index(X, m)
    assignments = []
    for s in enumerate_grassmannian(F, n, m):
        Y = index.get(s, [])
        if not Y:
            first = next(incident_planes(s, k))
            raise ConditionSError(f"no member of X is incident with {direction} {s}", s, first, "empty")
        cand = Y[0]
        for l in Y[1:]:
            nxt = intersect(cand, l) if direction == HYPERPLANE else span_sum(cand, l)
            if (direction == HYPERPLANE and nxt.dim == 0) or (direction == LINE and nxt.dim == n):
                raise ConditionSError(
                    f"members of X incident with {direction} {s} share no common "
                    + ("line" if direction == HYPERPLANE else "hyperplane"),
                    s,
                    l,
                    "extra",
                )
            cand = nxt
        ys = set(Y)
        if cand.dim != target:
            # shrink/grow the candidate to the right dimension; some plane is then missing
            if direction == HYPERPLANE:
                probe = next(incident_planes(cand, 1))
                rhs = _between(probe, s, k)
            else:
                probe = next(incident_planes(cand, n - 1))
                rhs = _between(s, probe, k)
            missing = next((l for l in rhs if l not in ys), None)
            raise ConditionSError(
                f"members of X incident with {direction} {s} pin down a {cand.dim}-space, not a "
                + ("line" if direction == HYPERPLANE else "hyperplane"),
                s,
                missing,
                "missing",
            )
        rhs = _between(cand, s, k) if direction == HYPERPLANE else _between(s, cand, k)
        if set(rhs) != ys:
            missing = next((l for l in rhs if l not in ys), None)
            if missing is not None:
                raise ConditionSError(f"plane {missing} through F(s) is missing from X", s, missing, "missing")
            extra = next(l for l in Y if l not in set(rhs))
            raise ConditionSError(f"plane {extra} in X does not pass through F(s)", s, extra, "extra")
        assignments.append((s, cand))
    return WitnessF(direction, F, n, tuple(assignments))


def satisfies_condition_s(X: PlaneSet, direction: str | None = None) -> bool:
    try:
        check_condition_s(X, direction)
    except ConditionSError:
        return False
    return True


def format_plane_set(X: PlaneSet) -> str:
    """Header "q n k count", then each block preceded by one blank line."""
    out = [f"{X.q} {X.n} {X.k} {len(X)}"]
    for s in X.members:
        out.append("")
        out.extend(" ".join(str(x) for x in r) for r in s.rows)
    return "\n".join(out) + "\n"


def parse_plane_set(text: str) -> PlaneSet:
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise ParseError("empty plane-set file")
    try:
        q, n, k, count = (int(t) for t in lines[0].split())
    except ValueError:
        raise ParseError(f"bad plane-set header {lines[0]!r}; expected 'q n k count'") from None
    if not 0 <= k <= n or n < 1 or count < 0:
        raise ParseError(f"bad parameters in header {lines[0]!r}")
    F = field_of_order(q)
    rows = [ln for ln in lines[1:] if ln.strip()]
    if len(rows) != count * k:
        raise ParseError(f"expected {count} blocks of {k} rows, found {len(rows)} rows")
    members = [parse_block(F, n, rows[i * k : (i + 1) * k]) for i in range(count)]
    try:
        return PlaneSet(F, n, k, tuple(members))
    except InputError as exc:
        raise ParseError(str(exc)) from None
