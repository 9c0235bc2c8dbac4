"""Adjacency-commuting matrices with near-diagonal support.

For a graph with adjacency matrix A, call B "A-like" when B commutes with A
and every entry of B at a pair of distinct non-adjacent vertices is zero.
These matrices form a transpose-closed subspace, so it splits into a
symmetric and an antisymmetric part.

This module computes that space for any small graph by exact constraint
solving, and for the d-cube also builds the closed-form bases:
{I, alpha_1..alpha_d} for the symmetric part and the matrices
b_ij = alpha_star_i A alpha_star_j - alpha_star_j A alpha_star_i for the
antisymmetric part.  ``verify_all`` drives the whole identity suite and
returns a structured report.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exactlinalg import (
    CapExceeded,
    ExactMatrix,
    ExactVector,
    SubspaceBasis,
    commutator,
    nullspace,
    span_equal,
    unvectorize,
    vectorize,
)
from .hypercube import (
    Graph,
    HypercubeContext,
    adjacency,
    alpha,
    alpha_star,
    alpha_star_via_kron,
    alpha_via_kron,
    cube_adjacency,
    eigen_data,
    hypercube,
    idempotent_report,
    scaled_eigenvector,
)

DEFAULT_BRUTE_CAP = 64

_HALF = Fraction(1, 2)
_ONE = Fraction(1)


class SupportPattern:
    """Deterministic ordering of the allowed nonzero positions.

    All diagonal cells (x, x) by vertex index first, then for each edge
    {u, v} with u < v (edges sorted) the pair (u, v) followed by (v, u).
    The position index doubles as the unknown index in the solver.
    """

    __slots__ = ("n", "positions", "_index")

    def __init__(self, n, positions):
        self.n = n
        self.positions = tuple(positions)
        self._index = {pos: k for k, pos in enumerate(self.positions)}

    @classmethod
    def for_graph(cls, g: Graph):
        positions = [(x, x) for x in range(g.n)]
        for u, v in sorted(g.edges):
            positions.append((u, v))
            positions.append((v, u))
        return cls(g.n, positions)

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __getitem__(self, k):
        return self.positions[k]

    def index_of(self, x, y):
        return self._index.get((x, y))


@dataclass(frozen=True)
class AlikeCheck:
    """Outcome of the two membership conditions, with a witness on failure."""

    ok: bool
    failed_condition: str | None = None
    position: tuple | None = None
    value: Fraction | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class AlikeDecomposition:
    """Full space plus its symmetric and antisymmetric parts.

    All three bases live in the vectorized n^2-dimensional ambient space and
    are canonical, so spans from different routes compare exactly.
    """

    graph: Graph
    support: SupportPattern
    full: SubspaceBasis
    symmetric: SubspaceBasis
    antisymmetric: SubspaceBasis

    @property
    def dims(self):
        return (self.full.dim, self.symmetric.dim, self.antisymmetric.dim)

    def basis_matrices(self, part="full"):
        basis = {
            "full": self.full,
            "sym": self.symmetric,
            "antisym": self.antisymmetric,
        }.get(part)
        if basis is None:
            raise ValueError(f"unknown part {part!r}")
        n = self.graph.n
        return [unvectorize(v, n, n) for v in basis]


def solve_alike(g: Graph, cap=DEFAULT_BRUTE_CAP) -> AlikeDecomposition:
    """Solve the commutation constraints over the support pattern exactly.

    Unknowns are the support positions; each matrix cell of B A - A B yields
    one linear equation.  The kernel is re-embedded into the n^2 vectorized
    ambient space, canonicalized, and split by B -> (B +- B^T)/2.
    """
    if g.n > cap:
        raise CapExceeded(
            f"brute-force solver capped at {cap} vertices, got {g.n}"
        )
    pattern = SupportPattern.for_graph(g)
    n = g.n
    ent = {}
    nrows = 0
    for x in range(n):
        for y in range(n):
            coeffs = {}
            for v in g.neighbors(y):
                k = pattern.index_of(x, v)
                if k is not None:
                    coeffs[k] = coeffs.get(k, 0) + 1
            for v in g.neighbors(x):
                k = pattern.index_of(v, y)
                if k is not None:
                    coeffs[k] = coeffs.get(k, 0) - 1
            row = {k: c for k, c in coeffs.items() if c}
            if row:
                for k, c in row.items():
                    ent[(nrows, k)] = Fraction(c)
                nrows += 1
    system = ExactMatrix._raw(max(nrows, 1), len(pattern), ent)
    kernel = nullspace(system)

    embedded = []
    for vec in kernel:
        amb = {}
        for k, value in vec.entries.items():
            x, y = pattern[k]
            amb[x * n + y] = value
        embedded.append(ExactVector._raw(n * n, amb))
    full = SubspaceBasis(n * n, embedded)

    sym_vecs = []
    antisym_vecs = []
    for vec in full:
        b = unvectorize(vec, n, n)
        bt = b.transpose()
        if not full.contains_matrix(bt):
            raise AssertionError(
                "solution space is not transpose-closed; "
                "this cannot happen for an undirected graph"
            )
        sym_vecs.append(vectorize((b + bt).scale(_HALF)))
        antisym_vecs.append(vectorize((b - bt).scale(_HALF)))
    symmetric = SubspaceBasis(n * n, sym_vecs)
    antisymmetric = SubspaceBasis(n * n, antisym_vecs)
    if symmetric.dim + antisymmetric.dim != full.dim:
        raise AssertionError("symmetric/antisymmetric split does not add up")
    return AlikeDecomposition(g, pattern, full, symmetric, antisymmetric)


def is_alike(g: Graph, b: ExactMatrix) -> AlikeCheck:
    """Check both membership conditions; report the first violated entry."""
    if b.rows != g.n or b.cols != g.n:
        raise ValueError(f"matrix is {b.rows}x{b.cols}, graph has {g.n} vertices")
    comm = commutator(b, adjacency(g))
    if comm.entries:
        pos = min(comm.entries)
        return AlikeCheck(False, "commute", pos, comm.entries[pos])
    for (x, y), value in sorted(b.entries.items()):
        if x != y and not g.has_edge(x, y):
            return AlikeCheck(False, "support", (x, y), value)
    return AlikeCheck(True)


def closed_form_sym_basis(ctx: HypercubeContext) -> list[ExactMatrix]:
    """The symmetric-part basis [I, alpha_1, ..., alpha_d]."""
    return [ExactMatrix.identity(ctx.n)] + [
        alpha(ctx, i) for i in range(1, ctx.d + 1)
    ]


def b_matrix(ctx: HypercubeContext, i, j) -> ExactMatrix:
    """b_ij = alpha_star_i A alpha_star_j - alpha_star_j A alpha_star_i."""
    if not 1 <= i < j <= ctx.d:
        raise ValueError(f"need 1 <= i < j <= {ctx.d}, got ({i}, {j})")
    a = cube_adjacency(ctx)
    si = alpha_star(ctx, i)
    sj = alpha_star(ctx, j)
    return si @ a @ sj - sj @ a @ si


def closed_form_antisym_basis(ctx: HypercubeContext) -> list[ExactMatrix]:
    """The antisymmetric-part basis [b_ij for 1 <= i < j <= d], lexicographic."""
    return [
        b_matrix(ctx, i, j)
        for i in range(1, ctx.d + 1)
        for j in range(i + 1, ctx.d + 1)
    ]


def characterization_residual(ctx: HypercubeContext, b: ExactMatrix, i, j) -> ExactMatrix:
    """s_i s_j B - s_i B s_j - s_j B s_i + B s_i s_j with s = alpha_star.

    Entry (x, y) equals (s_i[x,x] - s_i[y,y]) (s_j[x,x] - s_j[y,y]) B[x,y],
    so the residual vanishes for every pair i < j exactly when the support of
    B lies inside {equal or adjacent}.
    """
    if not 1 <= i < j <= ctx.d:
        raise ValueError(f"need 1 <= i < j <= {ctx.d}, got ({i}, {j})")
    if b.rows != ctx.n or b.cols != ctx.n:
        raise ValueError("matrix does not match the cube size")
    si = alpha_star(ctx, i)
    sj = alpha_star(ctx, j)
    return si @ sj @ b - si @ b @ sj - sj @ b @ si + b @ si @ sj


def restriction_to_E1(ctx: HypercubeContext, b: ExactMatrix) -> ExactMatrix:
    """Matrix of B restricted to the eigenvalue-(d-2) eigenspace.

    Written in the orthonormal basis of singleton sign vectors:
    M[t-1, s-1] = <W_{t}, B W_{s}> / 2^d.  Requires B to commute with the
    cube adjacency so the eigenspace is invariant.
    """
    if b.rows != ctx.n or b.cols != ctx.n:
        raise ValueError("matrix does not match the cube size")
    comm = commutator(b, cube_adjacency(ctx))
    if comm.entries:
        pos = min(comm.entries)
        raise ValueError(
            f"matrix does not commute with the cube adjacency (entry {pos})"
        )
    singles = [scaled_eigenvector(ctx, 1 << (t - 1)).vec for t in range(1, ctx.d + 1)]
    ent = {}
    for s in range(1, ctx.d + 1):
        image = b.matvec(singles[s - 1])
        for t in range(1, ctx.d + 1):
            value = singles[t - 1].inner(image) / ctx.n
            if value:
                ent[(t - 1, s - 1)] = value
    return ExactMatrix._raw(ctx.d, ctx.d, ent)


def bij_action_on_wS(ctx: HypercubeContext, i, j, s):
    """Closed-form action of b_ij on the sign vector of subset s.

    Returns (coefficient, subset_mask): (-4, (s | j) \\ i) when i is in s and
    j is not, (+4, (s | i) \\ j) in the mirrored case, and (0, None) otherwise.
    """
    if not 1 <= i < j <= ctx.d:
        raise ValueError(f"need 1 <= i < j <= {ctx.d}, got ({i}, {j})")
    mask = s if isinstance(s, int) else ctx.mask_of(s)
    if not 0 <= mask < ctx.n:
        raise ValueError(f"subset mask {mask} out of range for d={ctx.d}")
    bi, bj = ctx.bit(i), ctx.bit(j)
    in_i = bool(mask & bi)
    in_j = bool(mask & bj)
    if in_i and not in_j:
        return -4, (mask | bj) & ~bi
    if in_j and not in_i:
        return 4, (mask | bi) & ~bj
    return 0, None


# -- verification -------------------------------------------------------------

GROUP_NAMES = (
    "alpha",
    "eigenbasis",
    "idempotents",
    "characterization",
    "sym_basis",
    "antisym_basis",
    "dimensions",
    "restriction",
)

SKIP_ALIASES = {"brute": "dimensions"}


@dataclass(frozen=True)
class GroupResult:
    name: str
    passed: bool | None
    checks: int
    witness: str | None = None
    skipped: bool = False
    reason: str | None = None
    sampled: bool = False

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "sampled": self.sampled,
            "skipped": self.skipped,
            "reason": self.reason,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    d: int
    seed: int
    groups: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def all_passed(self):
        return all(g.skipped or g.passed for g in self.groups)

    def group(self, name):
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(name)

    def to_dict(self):
        # timings deliberately excluded: the dict is the deterministic payload
        return {
            "d": self.d,
            "seed": self.seed,
            "all_passed": self.all_passed,
            "groups": [g.to_dict() for g in self.groups],
        }


def _matches_sign_vector(ctx, entries, mask, scale):
    """Entries equal scale * W_mask (empty when scale is 0), checked exactly."""
    if scale == 0:
        return not entries
    if len(entries) != ctx.n:
        return False
    for x, v in entries.items():
        expect = -scale if (mask & x).bit_count() & 1 else scale
        if v != expect:
            return False
    return True


def _random_fraction(rng):
    return Fraction(rng.randint(-6, 6), rng.randint(1, 3))


def _random_nonzero_fraction(rng):
    num = rng.randint(1, 6) * rng.choice((-1, 1))
    return Fraction(num, rng.randint(1, 3))


def _random_support_matrix(pattern, rng):
    ent = {}
    for x, y in pattern:
        value = _random_fraction(rng)
        if value:
            ent[(x, y)] = value
    return ExactMatrix._raw(pattern.n, pattern.n, ent)


def run_characterization_cases(ctx, g: Graph, rng, cases_per_direction):
    """Seeded two-direction test of the support/residual equivalence.

    Direction one: matrices supported inside {equal or adjacent} have zero
    residual for every pair i < j.  Direction two: planting one entry at a
    distant pair makes the residual for a pair of differing coordinates
    nonzero at exactly that entry.  Returns (ok, checks, witness).
    """
    pattern = SupportPattern.for_graph(g)
    pairs = [
        (i, j) for i in range(1, ctx.d + 1) for j in range(i + 1, ctx.d + 1)
    ]
    checks = 0
    for case in range(cases_per_direction):
        b = _random_support_matrix(pattern, rng)
        for i, j in pairs:
            if characterization_residual(ctx, b, i, j).entries:
                return (
                    False,
                    checks,
                    f"supported case {case}: residual ({i},{j}) is nonzero",
                )
            checks += 1
    # pairs must differ in at least two coordinates so a residual pair exists
    outside = [
        (x, y)
        for x in range(g.n)
        for y in range(g.n)
        if x != y and not g.has_edge(x, y) and (x ^ y).bit_count() >= 2
    ]
    if outside and pairs:
        stars = {i: alpha_star(ctx, i) for i in range(1, ctx.d + 1)}
        for case in range(cases_per_direction):
            x, y = rng.choice(outside)
            planted = _random_nonzero_fraction(rng)
            b = _random_support_matrix(pattern, rng)
            ent = dict(b.entries)
            ent[(x, y)] = planted
            b = ExactMatrix._raw(g.n, g.n, ent)
            diff = x ^ y
            i = diff & -diff
            j = (diff & ~i) & -(diff & ~i)
            ci = i.bit_length()
            cj = j.bit_length()
            residual = characterization_residual(ctx, b, ci, cj)
            fi = stars[ci][x, x] - stars[ci][y, y]
            fj = stars[cj][x, x] - stars[cj][y, y]
            expect = fi * fj * planted
            got = residual[x, y]
            if not expect or got != expect:
                return (
                    False,
                    checks,
                    f"planted case {case}: residual ({ci},{cj}) at {(x, y)} is "
                    f"{got}, expected {expect}",
                )
            checks += 1
    return True, checks, None


def _group_alpha(ctx, g):
    d, n = ctx.d, ctx.n
    checks = 0
    ident = ExactMatrix.identity(n)
    alphas = {i: alpha(ctx, i) for i in range(1, d + 1)}
    stars = {i: alpha_star(ctx, i) for i in range(1, d + 1)}
    for i in range(1, d + 1):
        if alphas[i] @ alphas[i] != ident:
            return False, checks, f"alpha_{i}^2 != I", False
        if stars[i] @ stars[i] != ident:
            return False, checks, f"alpha_star_{i}^2 != I", False
        if alpha_via_kron(ctx, i) != alphas[i]:
            return False, checks, f"alpha_{i} != its Kronecker chain", False
        if alpha_star_via_kron(ctx, i) != stars[i]:
            return False, checks, f"alpha_star_{i} != its Kronecker chain", False
        checks += 4
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if alphas[i] @ alphas[j] != alphas[j] @ alphas[i]:
                return False, checks, f"alpha_{i} and alpha_{j} do not commute", False
            if stars[i] @ stars[j] != stars[j] @ stars[i]:
                return (
                    False,
                    checks,
                    f"alpha_star_{i} and alpha_star_{j} do not commute",
                    False,
                )
            checks += 2
            if i == j:
                if alphas[i] @ stars[i] != -(stars[i] @ alphas[i]):
                    return (
                        False,
                        checks,
                        f"alpha_{i} and alpha_star_{i} do not anticommute",
                        False,
                    )
            else:
                if alphas[i] @ stars[j] != stars[j] @ alphas[i]:
                    return (
                        False,
                        checks,
                        f"alpha_{i} and alpha_star_{j} do not commute",
                        False,
                    )
            checks += 1
    total = ExactMatrix.zeros(n)
    for i in range(1, d + 1):
        total = total + alphas[i]
    if total != adjacency(g):
        return False, checks, "sum of alpha_i is not the adjacency matrix", False
    checks += 1
    return True, checks, None, False


def _group_eigenbasis(ctx, rng, exhaustive_cap=10, sample_size=128):
    d, n = ctx.d, ctx.n
    checks = 0
    alphas = {i: alpha(ctx, i) for i in range(1, d + 1)}
    stars = {i: alpha_star(ctx, i) for i in range(1, d + 1)}
    adj = cube_adjacency(ctx)
    sampled = d > exhaustive_cap
    if sampled:
        masks = {0, n - 1}
        while len(masks) < sample_size:
            masks.add(rng.randrange(n))
        masks = sorted(masks)
    else:
        masks = range(n)
    for mask in masks:
        vec = scaled_eigenvector(ctx, mask).vec
        for i in range(1, d + 1):
            bit = 1 << (i - 1)
            moved = alphas[i].matvec(vec)
            sign = -1 if mask & bit else 1
            if not _matches_sign_vector(ctx, moved.entries, mask, sign):
                return False, checks, f"alpha_{i} action wrong on mask {mask}", sampled
            starred = stars[i].matvec(vec)
            if not _matches_sign_vector(ctx, starred.entries, mask ^ bit, 1):
                return (
                    False,
                    checks,
                    f"alpha_star_{i} action wrong on mask {mask}",
                    sampled,
                )
            checks += 2
        image = adj.matvec(vec)
        eigenvalue = d - 2 * mask.bit_count()
        if not _matches_sign_vector(ctx, image.entries, mask, eigenvalue):
            return (
                False,
                checks,
                f"adjacency action wrong on mask {mask}",
                sampled,
            )
        checks += 1
    if d <= 6:
        vecs = {m: scaled_eigenvector(ctx, m).vec for m in range(n)}
        pair_iter = ((s, t) for s in range(n) for t in range(n))
    else:
        pair_iter = []
        for _ in range(150):
            s = rng.randrange(n)
            pair_iter.append((s, s if rng.random() < 0.3 else rng.randrange(n)))
        vecs = None
        sampled = True
    for s, t in pair_iter:
        vs = vecs[s] if vecs else scaled_eigenvector(ctx, s).vec
        vt = vecs[t] if vecs else scaled_eigenvector(ctx, t).vec
        expect = n if s == t else 0
        if vs.inner(vt) != expect:
            return False, checks, f"<W_{s}, W_{t}> != {expect}", sampled
        checks += 1
    return True, checks, None, sampled


def _group_characterization(ctx, g, rng, cases):
    ok, checks, witness = run_characterization_cases(ctx, g, rng, cases)
    if not ok:
        return False, checks, witness, False
    # residual route vs entrywise product formula, on unrestricted matrices
    stars = {i: alpha_star(ctx, i) for i in range(1, ctx.d + 1)}
    pairs = [(i, j) for i in range(1, ctx.d + 1) for j in range(i + 1, ctx.d + 1)]
    for _ in range(5):
        ent = {}
        for _ in range(3 * ctx.n):
            x = rng.randrange(ctx.n)
            y = rng.randrange(ctx.n)
            value = _random_fraction(rng)
            if value:
                ent[(x, y)] = value
        b = ExactMatrix._raw(ctx.n, ctx.n, ent)
        chosen = pairs if ctx.d <= 5 else rng.sample(pairs, 10)
        for i, j in chosen:
            residual = characterization_residual(ctx, b, i, j)
            formula = {}
            for (x, y), value in b.entries.items():
                fi = stars[i][x, x] - stars[i][y, y]
                fj = stars[j][x, x] - stars[j][y, y]
                product = fi * fj * value
                if product:
                    formula[(x, y)] = product
            if residual.entries != formula:
                return (
                    False,
                    checks,
                    f"residual ({i},{j}) disagrees with the entrywise formula",
                    False,
                )
            checks += 1
    if 2 <= ctx.d <= 6:
        for p in range(1, ctx.d + 1):
            for q in range(p + 1, ctx.d + 1):
                b = b_matrix(ctx, p, q)
                for i, j in pairs:
                    if characterization_residual(ctx, b, i, j).entries:
                        return (
                            False,
                            checks,
                            f"residual ({i},{j}) of b_{p}{q} is nonzero",
                            False,
                        )
                    checks += 1
    return True, checks, None, False


def _group_sym_basis(ctx, g):
    d = ctx.d
    checks = 0
    mats = closed_form_sym_basis(ctx)
    if len(mats) != d + 1:
        return False, checks, "symmetric basis has the wrong length", False
    supports = []
    for idx, m in enumerate(mats):
        verdict = is_alike(g, m)
        if not verdict:
            return (
                False,
                checks,
                f"symmetric basis element {idx} fails membership "
                f"({verdict.failed_condition} at {verdict.position})",
                False,
            )
        if not m.is_symmetric():
            return False, checks, f"symmetric basis element {idx} not symmetric", False
        diag = {m[x, x] for x in range(ctx.n)}
        if len(diag) != 1:
            return (
                False,
                checks,
                f"symmetric basis element {idx} has a nonconstant diagonal",
                False,
            )
        supports.append(set(m.entries))
        checks += 3
    for a in range(len(supports)):
        for b in range(a + 1, len(supports)):
            if supports[a] & supports[b]:
                return False, checks, "symmetric basis supports overlap", False
            checks += 1
    if SubspaceBasis.from_matrices(mats).dim != d + 1:
        return False, checks, "symmetric basis is linearly dependent", False
    checks += 1
    return True, checks, None, False


def _group_antisym_basis(ctx, g, rng, exhaustive_cap=5, sample_size=120):
    d, n = ctx.d, ctx.n
    checks = 0
    adj = cube_adjacency(ctx)
    alphas = {i: alpha(ctx, i) for i in range(1, d + 1)}
    stars = {i: alpha_star(ctx, i) for i in range(1, d + 1)}
    pairs = [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    mats = {}
    for i, j in pairs:
        b = b_matrix(ctx, i, j)
        mats[(i, j)] = b
        product_form = (stars[i] @ stars[j] @ (alphas[i] - alphas[j])).scale(2)
        if b != product_form:
            return (
                False,
                checks,
                f"b_{i}{j} != 2 s_{i} s_{j} (alpha_{i} - alpha_{j})",
                False,
            )
        if b.transpose() != -b:
            return False, checks, f"b_{i}{j} is not antisymmetric", False
        if commutator(b, adj).entries:
            return False, checks, f"b_{i}{j} does not commute with the adjacency", False
        verdict = is_alike(g, b)
        if not verdict:
            return (
                False,
                checks,
                f"b_{i}{j} fails membership ({verdict.failed_condition})",
                False,
            )
        checks += 4
        for ell in range(1, d + 1):
            lhs = b @ alphas[ell]
            rhs = alphas[ell] @ b
            if ell in (i, j):
                rhs = -rhs
            if lhs != rhs:
                return (
                    False,
                    checks,
                    f"b_{i}{j} sign relation with alpha_{ell} fails",
                    False,
                )
            checks += 1
    sampled = d > exhaustive_cap
    if sampled:
        combos = []
        for _ in range(sample_size):
            i, j = rng.choice(pairs) if pairs else (None, None)
            combos.append((i, j, rng.randrange(n)))
    else:
        combos = [(i, j, mask) for (i, j) in pairs for mask in range(n)]
    for i, j, mask in combos:
        coeff, target = bij_action_on_wS(ctx, i, j, mask)
        image = mats[(i, j)].matvec(scaled_eigenvector(ctx, mask).vec)
        if not _matches_sign_vector(ctx, image.entries, target or 0, coeff):
            return (
                False,
                checks,
                f"b_{i}{j} action on mask {mask} does not match the table",
                sampled,
            )
        checks += 1
    if pairs:
        if SubspaceBasis.from_matrices(list(mats.values())).dim != len(pairs):
            return False, checks, "antisymmetric basis is linearly dependent", sampled
        checks += 1
    return True, checks, None, sampled


def _group_idempotents(ctx, cap):
    data = eigen_data(ctx, cap=cap)
    ok, checks, witness = idempotent_report(ctx, data)
    return ok, checks, witness, False


def _group_dimensions(ctx, g, cap):
    d, n = ctx.d, ctx.n
    checks = 0
    decomposition = solve_alike(g, cap=cap)
    expected = (1 + d + math.comb(d, 2), d + 1, math.comb(d, 2))
    if decomposition.dims != expected:
        return (
            False,
            checks,
            f"solver dims {decomposition.dims} != formula {expected}",
            False,
        )
    checks += 1
    sym_mats = closed_form_sym_basis(ctx)
    antisym_mats = closed_form_antisym_basis(ctx)
    closed_full = SubspaceBasis.from_matrices(sym_mats + antisym_mats)
    closed_sym = SubspaceBasis.from_matrices(sym_mats)
    closed_antisym = SubspaceBasis.from_matrices(antisym_mats, shape=(n, n))
    for label, got, want in (
        ("full", decomposition.full, closed_full),
        ("sym", decomposition.symmetric, closed_sym),
        ("antisym", decomposition.antisymmetric, closed_antisym),
    ):
        if not span_equal(got, want):
            return (
                False,
                checks,
                f"solver {label} span differs from the closed form",
                False,
            )
        checks += 1
    return True, checks, None, False


def _group_restriction(ctx):
    d = ctx.d
    checks = 0
    restrictions = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            m = restriction_to_E1(ctx, b_matrix(ctx, i, j))
            expected = ExactMatrix(
                d, d, {(i - 1, j - 1): 4, (j - 1, i - 1): -4}
            )
            if m != expected:
                return (
                    False,
                    checks,
                    f"restriction of b_{i}{j} is not 4(e_{i}e_{j}^T - e_{j}e_{i}^T)",
                    False,
                )
            if not m.is_antisymmetric():
                return False, checks, f"restriction of b_{i}{j} not antisymmetric", False
            restrictions.append(m)
            checks += 2
    if restrictions:
        if SubspaceBasis.from_matrices(restrictions).dim != math.comb(d, 2):
            return (
                False,
                checks,
                "restrictions do not span the antisymmetric space",
                False,
            )
        checks += 1
    return True, checks, None, False


def verify_all(
    ctx: HypercubeContext,
    groups=None,
    seed=0,
    graph=None,
    brute_cap=DEFAULT_BRUTE_CAP,
    projector_cap=8,
    characterization_cases=None,
) -> VerificationReport:
    """Run the selected identity-check groups and collect a report.

    ``graph`` overrides the cube graph wherever a graph is consumed (support
    patterns, membership checks, the adjacency-sum identity, the brute-force
    solve); it exists so tests can feed corrupted data and watch the checks
    fail.  Groups whose size caps are exceeded are reported as skipped, not
    failed.  Per-group wall-clock timings are kept on the report object but
    stay out of ``to_dict`` so serialized reports are deterministic.
    """
    if groups is None:
        selected = list(GROUP_NAMES)
    else:
        selected = [SKIP_ALIASES.get(name, name) for name in groups]
        unknown = [name for name in selected if name not in GROUP_NAMES]
        if unknown:
            raise ValueError(f"unknown check groups: {', '.join(sorted(unknown))}")
    if graph is None:
        graph = hypercube(ctx.d, cap=max(ctx.d, 12))[0]
    if characterization_cases is None:
        # residuals cost O(C(d,2) * cube size) per case; keep big cubes snappy
        characterization_cases = 50 if ctx.d <= 5 else 12 if ctx.d <= 8 else 4
    report = VerificationReport(d=ctx.d, seed=seed)
    for name in GROUP_NAMES:
        if name not in selected:
            continue
        rng = random.Random(f"{seed}:{name}")
        start = time.perf_counter()
        if name == "idempotents" and ctx.d > projector_cap:
            result = GroupResult(
                name,
                None,
                0,
                skipped=True,
                reason=f"dense projectors capped at d<={projector_cap}",
            )
        elif name == "dimensions" and graph.n > brute_cap:
            result = GroupResult(
                name,
                None,
                0,
                skipped=True,
                reason=f"brute-force solver capped at {brute_cap} vertices",
            )
        else:
            if name == "alpha":
                passed, checks, witness, sampled = _group_alpha(ctx, graph)
            elif name == "eigenbasis":
                passed, checks, witness, sampled = _group_eigenbasis(ctx, rng)
            elif name == "idempotents":
                passed, checks, witness, sampled = _group_idempotents(
                    ctx, projector_cap
                )
            elif name == "characterization":
                passed, checks, witness, sampled = _group_characterization(
                    ctx, graph, rng, characterization_cases
                )
            elif name == "sym_basis":
                passed, checks, witness, sampled = _group_sym_basis(ctx, graph)
            elif name == "antisym_basis":
                passed, checks, witness, sampled = _group_antisym_basis(
                    ctx, graph, rng
                )
            elif name == "dimensions":
                passed, checks, witness, sampled = _group_dimensions(
                    ctx, graph, brute_cap
                )
            else:
                passed, checks, witness, sampled = _group_restriction(ctx)
            result = GroupResult(name, passed, checks, witness, sampled=sampled)
        report.timings[name] = time.perf_counter() - start
        report.groups.append(result)
    return report
