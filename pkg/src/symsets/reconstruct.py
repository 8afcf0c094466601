"""Rebuild a non-singular symplectic form from a set of planes satisfying condition S.

For k = n-2 ("direct"): take the witness F (hyperplane -> line), compose it
with the complement map of the identity form to get a map f on lines, recover
f as a semilinear map, then solve linear equations for a Gram matrix whose
complement map is F.  For k = 2 ("dual"): move the set to k = n-2 with the
identity-form complement map, reconstruct there, and pull the result back
through the semilinear map recovered from the composed dualities.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    ConditionSError,
    InputError,
    NotACollineationError,
    ReconstructionError,
    SymsetsError,
)
from .forms import (
    BilinearForm,
    SemilinearMap,
    is_non_singular,
    is_reflexive,
    is_symplectic,
    orthogonal_complement,
    pullback_form,
    standard_form,
)
from .ftpg import LineMap, recover_semilinear, verify_collineation
from .gfcore import FieldSpec, Matrix, dot, field_of_order, is_invertible, kernel
from .rng import SplitMix64
from .singsets import (
    HYPERPLANE,
    LINE,
    PlaneSet,
    WitnessF,
    check_condition_s,
    equal_sets,
    singular_set,
)

DIRECT = "direct"
DUAL = "dual"


@dataclass(frozen=True)
class ReconstructionReport:
    q: int
    n: int
    k: int
    size: int
    via: str
    witness: WitnessF
    semilinear: SemilinearMap
    form: BilinearForm
    symplectic: bool
    non_singular: bool
    sets_equal: bool
    witness_matches: bool
    elapsed: float = field(compare=False)

    @property
    def ok(self) -> bool:
        return self.symplectic and self.non_singular and self.sets_equal and self.witness_matches

    def summary_lines(self) -> list[str]:
        G = self.semilinear.matrix
        return [
            f"input q={self.q} n={self.n} k={self.k} planes={self.size} via={self.via}",
            f"witness {self.witness.direction} map with {len(self.witness)} assignments",
            f"semilinear map sigma=Frob^{self.semilinear.sigma.e} G=" + "/".join(" ".join(map(str, r)) for r in G.rows),
            f"form sigma1=Frob^{self.form.sigma1.e} sigma2=Frob^{self.form.sigma2.e}",
            f"symplectic={self.symplectic} non_singular={self.non_singular} "
            f"sets_equal={self.sets_equal} witness_matches={self.witness_matches}",
        ]


@lru_cache(maxsize=None)
def reference_form(F: FieldSpec, n: int) -> BilinearForm:
    """Identity Gram: symmetric, hence reflexive, and non-singular over every field."""
    omega0 = BilinearForm.plain(Matrix.identity(F, n))
    if not is_reflexive(omega0):
        raise ReconstructionError("reference form is not reflexive")
    return omega0


def _check_params(X: PlaneSet, via: str | None) -> str:
    n, k = X.n, X.k
    if n % 2:
        raise InputError(f"odd dimension n={n} carries no non-singular symplectic form")
    if n < 4:
        raise InputError(f"reconstruction needs n >= 4, got n={n}")
    if k not in (2, n - 2):
        raise InputError(f"reconstruction is defined for k = 2 or n-2 only, got k={k}")
    if via is None:
        via = DIRECT if k == n - 2 else DUAL
    if via == DIRECT and k != n - 2:
        raise InputError("--via direct needs k = n-2")
    if via == DUAL and k != 2:
        raise InputError("--via dual needs k = 2")
    if via not in (DIRECT, DUAL):
        raise InputError(f"unknown pipeline {via!r}")
    return via


def _solve_gram(witness: WitnessF, sigma) -> Matrix:
    """Gram A with sigma(b) A sigma(w) = 0 for every hyperplane row b and w spanning F(s)."""
    F, n = witness.field, witness.n
    eqs = []
    for s, line in witness.items():
        w = sigma.apply_vector(line.rows[0])
        for b in s.rows:
            sb = sigma.apply_vector(b)
            eqs.append(tuple(F.mul(x, y) for x in sb for y in w))
    sol = kernel(Matrix(F, tuple(eqs), n * n))
    if sol.nrows != 1:
        raise ReconstructionError(f"Gram solution space has dimension {sol.nrows}, expected 1")
    a = sol.rows[0]
    return Matrix(F, tuple(tuple(a[i * n : (i + 1) * n]) for i in range(n)), n)


def _hyperplane_pipeline(X: PlaneSet) -> tuple[WitnessF, SemilinearMap, BilinearForm]:
    F, n = X.field, X.n
    witness = check_condition_s(X, HYPERPLANE)
    omega0 = reference_form(F, n)

    f = LineMap.from_function(F, n, lambda l: witness(orthogonal_complement(omega0, l)))

    reps = [(l.rows[0], f(l).rows[0]) for l in f.domain]
    for v, fv in reps:
        if dot(F, v, fv):
            raise ReconstructionError(f"line {v} is not orthogonal to its image {fv}")
    for (v1, f1), (v2, f2) in itertools.combinations(reps, 2):
        if (dot(F, v1, f2) == 0) != (dot(F, v2, f1) == 0):
            raise ReconstructionError(f"orthogonality of {v1}, {v2} and their images is not symmetric")

    if not verify_collineation(f):
        raise ReconstructionError("line map built from the witness is not a collineation")
    try:
        g = recover_semilinear(f)
    except NotACollineationError as exc:
        raise ReconstructionError(f"semilinear recovery failed: {exc}") from None

    A = _solve_gram(witness, g.sigma)
    return witness, g, BilinearForm(A, g.sigma, g.sigma)


def _dual_pipeline(X: PlaneSet) -> tuple[WitnessF, SemilinearMap, BilinearForm]:
    F, n = X.field, X.n
    witness = check_condition_s(X, LINE)
    omega0 = reference_form(F, n)
    gX = PlaneSet(F, n, n - 2, tuple(orthogonal_complement(omega0, l) for l in X))
    try:
        _, _, omega = _hyperplane_pipeline(gX)
    except ConditionSError as exc:
        raise ReconstructionError(f"dual image of a condition-S set fails condition S: {exc}") from None

    if not is_non_singular(omega):
        raise ReconstructionError("intermediate form is singular")
    h = LineMap.from_function(
        F, n, lambda t: orthogonal_complement(omega, orthogonal_complement(omega0, t))
    )
    if not verify_collineation(h):
        raise ReconstructionError("composed duality is not a collineation")
    try:
        f = recover_semilinear(h)
    except NotACollineationError as exc:
        raise ReconstructionError(f"semilinear recovery failed: {exc}") from None
    return witness, f, pullback_form(omega, f)


def reconstruct_form(X: PlaneSet, via: str | None = None) -> ReconstructionReport:
    """Return a verified report for a form whose S-set is X.

    Raises :class:`ConditionSError` if X fails condition S, and
    :class:`ReconstructionError` if any internal verification fails.
    """
    start = time.perf_counter()
    via = _check_params(X, via)
    if via == DIRECT:
        witness, g, omega = _hyperplane_pipeline(X)
    else:
        witness, g, omega = _dual_pipeline(X)

    non_singular = is_invertible(omega.gram)
    if not non_singular:
        raise ReconstructionError("reconstructed form is singular")
    symplectic = is_symplectic(omega)
    if not symplectic:
        raise ReconstructionError("reconstructed form is not symplectic")
    witness_matches = all(orthogonal_complement(omega, s) == t for s, t in witness.items())
    if not witness_matches:
        raise ReconstructionError("witness map differs from the complement map of the reconstructed form")
    sets_equal = equal_sets(singular_set(omega, X.k), X)
    if not sets_equal:
        raise ReconstructionError("S-set of the reconstructed form differs from the input")
    return ReconstructionReport(
        X.q, X.n, X.k, len(X), via, witness, g, omega,
        symplectic, non_singular, sets_equal, witness_matches,
        time.perf_counter() - start,
    )


def alternating_grams(F: FieldSpec, n: int):
    """Every invertible alternating n x n Gram matrix, upper entries in odometer order."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for vals in itertools.product(range(F.q), repeat=len(slots)):
        rows = [[0] * n for _ in range(n)]
        for (i, j), a in zip(slots, vals):
            rows[i][j] = a
            rows[j][i] = F.neg(a)
        A = Matrix(F, tuple(tuple(r) for r in rows), n)
        if is_invertible(A):
            yield A


def random_invertible(F: FieldSpec, n: int, rng: SplitMix64) -> Matrix:
    while True:
        A = Matrix(F, tuple(tuple(rng.below(F.q) for _ in range(n)) for _ in range(n)), n)
        if is_invertible(A):
            return A


def random_semilinear(F: FieldSpec, n: int, rng: SplitMix64) -> SemilinearMap:
    G = random_invertible(F, n, rng)
    return SemilinearMap(G, F.automorphism(rng.below(F.m)))


def sample_forms(F: FieldSpec, n: int, samples: int, seed: int) -> list[BilinearForm]:
    """Pullbacks of the standard form through seeded random semilinear maps."""
    rng = SplitMix64(seed)
    J = standard_form(F, n)
    return [pullback_form(J, random_semilinear(F, n, rng)) for _ in range(samples)]


@dataclass
class TheoremSummary:
    q: int
    n: int
    k: int
    mode: str
    forms: int = 0
    distinct_ssets: int = 0
    failures: int = 0
    messages: list[str] = field(default_factory=list)

    def line(self) -> str:
        return (
            f"q={self.q} n={self.n} k={self.k} mode={self.mode} "
            f"forms={self.forms} failures={self.failures} distinct_ssets={self.distinct_ssets}"
        )


def verify_theorem(
    q: int,
    n: int,
    k: int = 2,
    mode: str = "exhaustive",
    samples: int = 10,
    seed: int = 0,
    via: str | None = None,
) -> TheoremSummary:
    """Check both implications on every form in scope; failures are counted, not raised."""
    F = field_of_order(q)
    if n % 2 or n < 4:
        raise InputError(f"need even n >= 4, got {n}")
    if k not in (2, n - 2):
        raise InputError(f"need k = 2 or n-2, got {k}")
    if mode == "exhaustive":
        forms = [BilinearForm.plain(A) for A in alternating_grams(F, n)]
    elif mode == "sampled":
        forms = sample_forms(F, n, samples, seed)
    else:
        raise InputError(f"unknown mode {mode!r}")
    direction = None
    if via is not None:
        direction = HYPERPLANE if via == DIRECT else LINE

    summary = TheoremSummary(q, n, k, mode)
    seen = set()
    for idx, omega in enumerate(forms):
        summary.forms += 1
        S = singular_set(omega, k)
        seen.add(S.as_frozenset())
        try:
            W = check_condition_s(S, direction)
            if not all(orthogonal_complement(omega, s) == t for s, t in W.items()):
                raise ReconstructionError("witness differs from the complement map")
            reconstruct_form(S, via)
        except SymsetsError as exc:
            summary.failures += 1
            summary.messages.append(f"form {idx}: {type(exc).__name__}: {exc}")
    summary.distinct_ssets = len(seen)
    return summary
