"""Subgroup searches on the Seifert form.

Two kinds of witness are hunted: isotropic subgroups (the form vanishes on
them; their maximal rank a controls the lower bound g - a for the
topological slice genus) and Alexander-trivial subgroups (the restricted
form has unit determinant polynomial; their maximal rank d gives the upper
bound (dim - d)/2).  Searches are randomized but deterministic given the
seed; not-found is always inconclusive.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_algebra import (
    IntMatrix,
    LaurentPoly,
    laurent_is_unit,
    laurent_matrix_det,
    symmetric_signature,
)
from .quadratic_forms import (
    DEFAULT_PRIME_BOUND,
    PadicVerdict,
    SeifertMatrix,
    scan_obstruction_primes,
)

DEFAULT_SEED = 0
DEFAULT_MAX_ITERATIONS = 1_000_000
DEFAULT_MAX_COEFFICIENT = 16


@dataclass(frozen=True)
class SubgroupBasis:
    """Integer vectors spanning a subgroup of Z^(dim theta)."""

    vectors: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lists(cls, vectors) -> "SubgroupBasis":
        return cls(tuple(tuple(int(x) for x in v) for v in vectors))

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def to_matrix_text(self) -> str:
        """Columns are the basis vectors, in the shared matrix text format."""
        if not self.vectors:
            return ""
        n = len(self.vectors[0])
        rows = [[v[i] for v in self.vectors] for i in range(n)]
        return IntMatrix.from_rows(rows).to_text()

    @classmethod
    def from_matrix_text(cls, text: str) -> "SubgroupBasis":
        m = IntMatrix.from_text(text)
        return cls.from_lists([[m[i, j] for i in range(m.rows)] for j in range(m.cols)])


@dataclass(frozen=True)
class SearchBudget:
    seed: int = DEFAULT_SEED
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    max_coefficient: int = DEFAULT_MAX_COEFFICIENT

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.max_coefficient < 1:
            raise ValueError("max_coefficient must be >= 1")


@dataclass(frozen=True)
class GenusBoundsFromForm:
    taylor_lower: int
    taylor_upper: int
    galg_upper: int
    signature: int
    padic_verdicts: tuple[PadicVerdict, ...] = ()
    isotropic_witness: SubgroupBasis | None = None
    alexander_trivial_witness: SubgroupBasis | None = None

    def __post_init__(self):
        if self.taylor_lower > self.taylor_upper:
            raise ValueError(
                f"taylor_lower {self.taylor_lower} exceeds taylor_upper {self.taylor_upper}"
            )
        if min(self.taylor_lower, self.galg_upper) < 0:
            raise ValueError("bounds must be non-negative")


# ---------------------------------------------------------------------------
# integer linear algebra helpers


def _column_echelon(rows: list[list[int]], n: int):
    """Integer column echelon form of a k x n matrix.

    Returns (H, U, pivots) with M @ U = H, U unimodular, and pivots the list
    of (row, col) pivot positions.  Columns of U over non-pivot columns of H
    form a basis of the integer kernel.
    """
    k = len(rows)
    h = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pivots: list[tuple[int, int]] = []
    col = 0
    for r in range(k):
        if col >= n:
            break
        while True:
            best = None
            for j in range(col, n):
                if h[r][j] != 0 and (best is None or abs(h[r][j]) < abs(h[r][best])):
                    best = j
            if best is None:
                break
            if best != col:
                for i in range(k):
                    h[i][col], h[i][best] = h[i][best], h[i][col]
                for i in range(n):
                    u[i][col], u[i][best] = u[i][best], u[i][col]
            done = True
            for j in range(col + 1, n):
                if h[r][j] != 0:
                    q = h[r][j] // h[r][col]
                    if q:
                        for i in range(k):
                            h[i][j] -= q * h[i][col]
                        for i in range(n):
                            u[i][j] -= q * u[i][col]
                    if h[r][j] != 0:
                        done = False
            if done:
                break
        if h[r][col] != 0:
            pivots.append((r, col))
            col += 1
    return h, u, pivots


def _integer_kernel(rows: list[list[int]], n: int) -> list[list[int]]:
    """Basis of {x in Z^n : M x = 0}."""
    if not rows:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    h, u, pivots = _column_echelon(rows, n)
    pivot_cols = {c for _, c in pivots}
    kernel = []
    for j in range(n):
        if j not in pivot_cols:
            kernel.append([u[i][j] for i in range(n)])
    return kernel


def _solve_integer(rows: list[list[int]], rhs: list[int], n: int) -> list[int] | None:
    """A particular solution of M x = rhs over Z, or None."""
    h, u, pivots = _column_echelon(rows, n)
    y = [0] * n
    piv_by_row = dict(pivots)
    for r in range(len(rows)):
        acc = sum(h[r][j] * y[j] for j in range(n))
        rem = rhs[r] - acc
        if r in piv_by_row:
            c = piv_by_row[r]
            if rem % h[r][c] != 0:
                return None
            y[c] = rem // h[r][c]
        elif rem != 0:
            return None
    return [sum(u[i][j] * y[j] for j in range(n)) for i in range(n)]


def _rank(vectors: list[tuple[int, ...]] | list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    a = [list(v) for v in vectors]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, rows):
            if a[r][c] != 0:
                pr, pc = a[rank][c], a[r][c]
                for j in range(cols):
                    a[r][j] = a[r][j] * pr - a[rank][j] * pc
        rank += 1
        if rank == rows:
            break
    return rank


def _gcd_reduce(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g > 1:
        return [x // g for x in v]
    return list(v)


# ---------------------------------------------------------------------------
# verifiers


def _check_dimensions(theta: SeifertMatrix, basis: SubgroupBasis) -> None:
    for v in basis.vectors:
        if len(v) != theta.dim:
            raise ValueError(f"basis vector length {len(v)} != form dimension {theta.dim}")


def restrict_form(theta: SeifertMatrix, basis: SubgroupBasis) -> IntMatrix:
    """Gram matrix A with A_ij = u_i^T theta u_j."""
    _check_dimensions(theta, basis)
    vs = basis.vectors
    r = len(vs)
    m = theta.m
    n = theta.dim
    images = [
        [sum(m[i, j] * v[j] for j in range(n)) for i in range(n)] for v in vs
    ]  # images[k] = theta @ u_k as column
    entries = []
    for i in range(r):
        for j in range(r):
            entries.append(sum(vs[i][k] * images[j][k] for k in range(n)))
    return IntMatrix(r, r, entries)


def verify_isotropic_basis(theta: SeifertMatrix, basis: SubgroupBasis) -> bool:
    """True iff the form vanishes identically on independent vectors."""
    _check_dimensions(theta, basis)
    if basis.rank == 0:
        return True
    if _rank(list(basis.vectors)) != basis.rank:
        return False
    a = restrict_form(theta, basis)
    return all(a[i, j] == 0 for i in range(a.rows) for j in range(a.cols))


def alexander_determinant(theta: SeifertMatrix, basis: SubgroupBasis) -> LaurentPoly:
    """det(t*A - A^T) for the restriction A of the form to the subgroup."""
    a = restrict_form(theta, basis)
    entries = [
        [LaurentPoly({1: a[i, j], 0: -a[j, i]}) for j in range(a.cols)] for i in range(a.rows)
    ]
    return laurent_matrix_det(entries)


def verify_alexander_trivial_basis(theta: SeifertMatrix, basis: SubgroupBasis) -> bool:
    """True iff det(t*A - A^T) is a unit (forces linear independence)."""
    _check_dimensions(theta, basis)
    return laurent_is_unit(alexander_determinant(theta, basis))


# ---------------------------------------------------------------------------
# searches


class _FormSearch:
    """Shared proposal machinery over a sublattice of Z^n."""

    def __init__(self, theta: SeifertMatrix, budget: SearchBudget):
        self.m = theta.m
        self.n = theta.dim
        self.rng = random.Random(budget.seed)
        self.budget = budget
        self.iterations = 0

    def spent(self) -> bool:
        return self.iterations >= self.budget.max_iterations

    def tick(self) -> None:
        self.iterations += 1

    def pairing_rows(self, v: list[int]) -> tuple[list[int], list[int]]:
        """Rows expressing w -> theta(v, w) and w -> theta(w, v)."""
        n = self.n
        left = [sum(v[i] * self.m[i, j] for i in range(n)) for j in range(n)]
        right = [sum(self.m[j, i] * v[i] for i in range(n)) for j in range(n)]
        return left, right

    def value(self, v: list[int], w: list[int]) -> int:
        n = self.n
        return sum(v[i] * self.m[i, j] * w[j] for i in range(n) for j in range(n))

    def _q_value(self, q: list[list[int]], x: list[int]) -> int:
        d = len(q)
        return sum(x[i] * q[i][j] * x[j] for i in range(d) for j in range(d))

    def _q_pair(self, q: list[list[int]], x: list[int], y: list[int]) -> int:
        d = len(q)
        return sum(x[i] * (q[i][j] + q[j][i]) * y[j] for i in range(d) for j in range(d))

    def random_coords(self, d: int) -> list[int]:
        c = self.budget.max_coefficient
        mode = self.rng.random()
        if mode < 0.7:
            return [self.rng.randint(-2, 2) for _ in range(d)]
        if mode < 0.9:
            return [self.rng.randint(-3, 3) for _ in range(d)]
        k = self.rng.randint(1, min(3, d))
        v = [0] * d
        for _ in range(k):
            v[self.rng.randrange(d)] = self.rng.randint(-c, c)
        return v

    def isotropic_candidates(
        self,
        kernel: list[list[int]],
        existing: list[list[int]],
        slice_iters: int,
        max_candidates: int = 160,
    ) -> list[list[int]]:
        """Vectors v in the span of kernel with theta(v, v) = 0, each
        linearly independent of existing, in deterministic order."""
        d = len(kernel)
        if d == 0:
            return []
        q = [
            [self.value(kernel[i], kernel[j]) for j in range(d)] for i in range(d)
        ]  # restricted (non-symmetrized) form in kernel coordinates
        found: list[list[int]] = []
        seen: set[tuple[int, ...]] = set()

        def push(coords: list[int]) -> bool:
            v = self._lift(kernel, coords)
            key = tuple(v)
            if not any(v) or key in seen:
                return False
            seen.add(key)
            if _rank(existing + [v]) != len(existing) + 1:
                return False
            found.append(v)
            return len(found) >= max_candidates

        # zero-diagonal basis directions come for free
        for i in range(d):
            self.tick()
            if q[i][i] == 0:
                if push([1 if k == i else 0 for k in range(d)]):
                    return found
        start = self.iterations
        # deterministic sweep: enumerate all but one coordinate in a small box
        # and solve the quadratic for the remaining one; kernel coordinates
        # keep entries small even when ambient witness entries are large.
        # The sweep runs to completion (its size is bounded by the radius
        # table); slice_iters limits only the randomized tail.
        radius = {1: 1, 2: 12, 3: 8, 4: 4, 5: 3, 6: 2, 7: 2, 8: 2}.get(d, 1)
        for k in range(d):
            a = q[k][k]
            for rest in _small_box(d - 1, radius) if d > 1 else [()]:
                if self.spent():
                    return found
                self.tick()
                x = list(rest[:k]) + [0] + list(rest[k:])
                b = sum(x[i] * (q[i][k] + q[k][i]) for i in range(d) if i != k)
                c0 = self._q_value(q, x)
                for t in _integer_roots(a, b, c0):
                    x[k] = t
                    if any(x) and push(list(x)):
                        return found
                x[k] = 0
        start = self.iterations
        small = list(range(-3, 4))
        while self.iterations - start < slice_iters and not self.spent():
            self.tick()
            mode = self.rng.random()
            if mode < 0.5:
                x = self.random_coords(d)
                if any(x) and self._q_value(q, x) == 0:
                    if push(x):
                        return found
            else:
                # quadratic completion on a random pair
                x = [self.rng.choice(small) for _ in range(d)]
                y = [self.rng.choice(small) for _ in range(d)]
                if not any(x) or not any(y):
                    continue
                a = self._q_value(q, y)
                b = self._q_pair(q, x, y)
                c0 = self._q_value(q, x)
                root = _rational_root(a, b, c0)
                if root is None:
                    continue
                num, den = root
                cand = [den * xi + num * yi for xi, yi in zip(x, y)]
                if any(cand) and self._q_value(q, cand) == 0:
                    if push(cand):
                        return found
        return found

    def _lift(self, kernel: list[list[int]], coords: list[int]) -> list[int]:
        n = self.n
        v = [sum(coords[k] * kernel[k][i] for k in range(len(kernel))) for i in range(n)]
        v = _gcd_reduce(v)
        for x in v:
            if x:
                return v if x > 0 else [-y for y in v]
        return v


def _small_box(d: int, radius: int):
    """Nonzero integer vectors in [-radius, radius]^d, by increasing max-norm."""
    from itertools import product as _product

    for r in range(1, radius + 1):
        for coords in _product(range(-r, r + 1), repeat=d):
            if max(abs(x) for x in coords) == r:
                yield coords


def _rational_root(a: int, b: int, c: int) -> tuple[int, int] | None:
    """A rational root (num, den) of a t^2 + b t + c, if one exists."""
    if a == 0:
        if b == 0:
            return None
        return (-c, b)
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    r = math.isqrt(disc)
    if r * r != disc:
        return None
    return (-b + r, 2 * a)


def _integer_roots(a: int, b: int, c: int) -> list[int]:
    """All integer roots of a t^2 + b t + c."""
    if a == 0:
        if b == 0 or c % b != 0:
            return []
        return [-c // b]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = math.isqrt(disc)
    if r * r != disc:
        return []
    out = []
    for num in ((-b + r), (-b - r)):
        if num % (2 * a) == 0:
            t = num // (2 * a)
            if t not in out:
                out.append(t)
    return out


def search_isotropic_subgroup(
    theta: SeifertMatrix, target_rank: int, budget: SearchBudget | None = None
) -> SubgroupBasis | None:
    """Hunt a rank target_rank subgroup with identically vanishing form.

    Deterministic for a fixed seed.  None means not found within budget,
    which is inconclusive.
    """
    budget = budget or SearchBudget()
    if not (0 <= target_rank <= theta.genus):
        raise ValueError(f"target rank {target_rank} out of range for genus {theta.genus}")
    if target_rank == 0:
        return SubgroupBasis(())
    search = _FormSearch(theta, budget)
    slice_iters = max(500, budget.max_iterations // (4 * target_rank))

    def extend(basis: list[list[int]], rows: list[list[int]]) -> list[list[int]] | None:
        kernel = _integer_kernel(rows, search.n)
        for v in search.isotropic_candidates(kernel, basis, slice_iters):
            if search.spent():
                return None
            if len(basis) + 1 == target_rank:
                return basis + [v]
            left, right = search.pairing_rows(v)
            got = extend(basis + [v], rows + [left, right])
            if got is not None:
                return got
        return None

    while not search.spent():
        basis = extend([], [])
        if basis is not None:
            result = SubgroupBasis.from_lists(basis)
            if verify_isotropic_basis(theta, result):
                return result
    return None


def search_alexander_trivial_subgroup(
    theta: SeifertMatrix, target_rank: int, budget: SearchBudget | None = None
) -> SubgroupBasis | None:
    """Hunt an even-rank subgroup whose restricted form has unit determinant.

    Pairs are built in the nested shape: each step finds u with theta(u,u)=0,
    then solves theta(u, w) = 1, theta(w, u) = 0 over the integers, and
    recurses on the sublattice pairing trivially with u.
    """
    budget = budget or SearchBudget()
    if target_rank % 2 != 0:
        raise ValueError("Alexander-trivial rank targets must be even")
    if not (0 <= target_rank <= theta.dim):
        raise ValueError(f"target rank {target_rank} out of range for dim {theta.dim}")
    if target_rank == 0:
        return SubgroupBasis(())
    search = _FormSearch(theta, budget)
    pairs_needed = target_rank // 2
    slice_iters = max(500, budget.max_iterations // (4 * pairs_needed))

    def extend(basis: list[list[int]], rows: list[list[int]]) -> list[list[int]] | None:
        kernel = _integer_kernel(rows, search.n)
        for u1 in search.isotropic_candidates(kernel, basis, slice_iters):
            if search.spent():
                return None
            left, right = search.pairing_rows(u1)
            # u2 pairs to (1, 0) with u1 while staying in the current sublattice
            system = rows + [left, right]
            rhs = [0] * len(rows) + [1, 0]
            u2 = _solve_integer(system, rhs, search.n)
            if u2 is None or _rank(basis + [u1, u2]) != len(basis) + 2:
                continue
            if len(basis) + 2 == target_rank:
                return basis + [u1, u2]
            got = extend(basis + [u1, u2], rows + [left, right])
            if got is not None:
                return got
        return None

    while not search.spent():
        basis = extend([], [])
        if basis is not None:
            result = SubgroupBasis.from_lists(basis)
            if verify_alexander_trivial_basis(theta, result):
                return result
    return None


def bounds_from_seifert_form(
    theta: SeifertMatrix,
    budget: SearchBudget | None = None,
    prime_bound: int = DEFAULT_PRIME_BOUND,
) -> GenusBoundsFromForm:
    """Run both searches and the local obstruction on one Seifert form.

    taylor_lower <= t(K) <= taylor_upper and g4top <= galg_upper hold for the
    form; the searches walk ranks upward and stop at the first failure.
    """
    budget = budget or SearchBudget()
    g = theta.genus
    sigma = symmetric_signature(theta.symmetrization())
    verdicts = tuple(scan_obstruction_primes(theta, prime_bound))

    best_iso: SubgroupBasis | None = SubgroupBasis(())
    for rank in range(1, g + 1):
        found = search_isotropic_subgroup(theta, rank, budget)
        if found is None:
            break
        best_iso = found
    iso_rank = best_iso.rank if best_iso else 0

    best_alex: SubgroupBasis | None = SubgroupBasis(())
    for rank in range(2, theta.dim + 1, 2):
        found = search_alexander_trivial_subgroup(theta, rank, budget)
        if found is None:
            break
        best_alex = found
    alex_rank = best_alex.rank if best_alex else 0

    taylor_lower = (abs(sigma) + 1) // 2
    if verdicts:
        taylor_lower = max(taylor_lower, 2)
    return GenusBoundsFromForm(
        taylor_lower=taylor_lower,
        taylor_upper=g - iso_rank,
        galg_upper=(theta.dim - alex_rank) // 2,
        signature=sigma,
        padic_verdicts=verdicts,
        isotropic_witness=best_iso if iso_rank else None,
        alexander_trivial_witness=best_alex if alex_rank else None,
    )
