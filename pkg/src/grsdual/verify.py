"""Independent brute-force checks: self-duality, MDS-ness, dual
identities, and the character-sum count bound.

Every check returns a CheckResult rather than raising, so a report can
collect failures; only precondition violations (over-budget exact checks,
repeated points, even characteristic where odd is required) raise.

The exact MDS check is the definition itself -- every k-subset of
generator columns must be nonsingular -- run with the table-indexed
elimination kernel where the field allows it.  The randomized mode samples
subsets from a seeded generator and reports confidence only; the
structural mode certifies via the evaluation-code shape (distinct points,
nonzero multipliers).  Minimum distance by full codeword enumeration is
provided as a second, independent oracle for tiny codes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import (
    BudgetExceededError,
    DuplicatePointsError,
    EvenCharacteristicError,
)
from .gf import FieldCtx, Felt
from .grs import GrsCode, dual_coefficients, generator_matrix
from .linalg import MatrixGF, nonsingular_rows, rank_rows

EXACT_MDS_BUDGET = 10 ** 6
RANDOM_MDS_SAMPLES = 10 ** 4


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str          # "pass" | "fail" | "skipped"
    detail: str
    mode: str            # "exact" | "randomized" | "structural"
    seed: Optional[int] = None

    def to_json(self) -> dict:
        obj = {"name": self.name, "status": self.status,
               "mode": self.mode, "detail": self.detail}
        if self.seed is not None:
            obj["seed"] = self.seed
        return obj


@dataclass
class VerificationReport:
    checks: list[CheckResult]

    @property
    def overall(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {"overall": self.overall,
                "checks": [c.to_json() for c in self.checks]}


# --- self-duality -----------------------------------------------------------

def check_self_dual_matrix(ctx: FieldCtx, gen: MatrixGF) -> CheckResult:
    """N = 2k, full row rank, and all pairwise row inner products zero."""
    k, ncols = gen.nrows, gen.ncols
    if ncols != 2 * k:
        return CheckResult("self-dual", "fail",
                           f"block length {ncols} != 2k = {2 * k}", "exact")
    if rank_rows(ctx, gen.rows_list()) != k:
        return CheckResult("self-dual", "fail",
                           f"generator rank below k = {k}", "exact")
    rows = gen.rows_list()
    for i in range(k):
        for j in range(i, k):
            acc = 0
            for xi, xj in zip(rows[i], rows[j]):
                if xi and xj:
                    acc = ctx.add(acc, ctx.mul(xi, xj))
            if acc != 0:
                return CheckResult(
                    "self-dual", "fail",
                    f"rows {i} and {j} have inner product {acc} != 0", "exact")
    return CheckResult("self-dual", "pass",
                       f"[{ncols}, {k}] with G*G^T = 0 and rank k", "exact")


def check_self_dual(code: GrsCode) -> CheckResult:
    return check_self_dual_matrix(code.ctx, generator_matrix(code))


# --- MDS --------------------------------------------------------------------

def check_mds_matrix(ctx: FieldCtx, gen: MatrixGF, mode: str = "exact",
                     budget: int = EXACT_MDS_BUDGET,
                     samples: int = RANDOM_MDS_SAMPLES,
                     seed: int = 0) -> CheckResult:
    k, ncols = gen.nrows, gen.ncols
    if k > ncols:
        return CheckResult("mds", "fail",
                           f"dimension {k} exceeds block length {ncols}",
                           "exact" if mode == "exact" else mode)
    rows = gen.rows_list()
    ops = ctx.table_ops()
    if ops is not None:
        import numpy as np
        arr = np.array(rows, dtype=np.int32)

        def nonsingular(cols):
            return _np_subset_nonsingular(arr, cols, ops)
    else:
        def nonsingular(cols):
            return nonsingular_rows(ctx, [[row[c] for c in cols]
                                          for row in rows])

    if mode == "exact":
        total = math.comb(ncols, k)
        if total > budget:
            raise BudgetExceededError(
                f"C({ncols},{k}) = {total} subsets exceed budget {budget}")
        for cols in combinations(range(ncols), k):
            if not nonsingular(cols):
                return CheckResult(
                    "mds", "fail",
                    f"columns {list(cols)} are singular", "exact")
        return CheckResult("mds", "pass",
                           f"all {total} column {k}-subsets nonsingular",
                           "exact")
    if mode == "randomized":
        rng = random.Random(seed)
        for _ in range(samples):
            cols = tuple(sorted(rng.sample(range(ncols), k)))
            if not nonsingular(cols):
                return CheckResult(
                    "mds", "fail",
                    f"columns {list(cols)} are singular", "randomized",
                    seed=seed)
        return CheckResult(
            "mds", "pass",
            f"{samples} sampled column {k}-subsets nonsingular "
            "(statistical evidence, not a proof)", "randomized", seed=seed)
    raise ValueError(f"unknown mds mode {mode!r}")


def _np_subset_nonsingular(arr, cols, ops) -> bool:
    from .linalg import _np_nonsingular
    return _np_nonsingular(arr[:, cols].copy(), ops)


def check_mds(code: GrsCode, mode: str = "exact",
              budget: int = EXACT_MDS_BUDGET,
              samples: int = RANDOM_MDS_SAMPLES,
              seed: int = 0) -> CheckResult:
    if mode == "structural":
        # the defining data already forces d = N - k + 1
        return CheckResult(
            "mds", "pass",
            f"{code.n} distinct evaluation points and nonzero multipliers; "
            "evaluation codes of this shape meet the Singleton bound",
            "structural")
    return check_mds_matrix(code.ctx, generator_matrix(code), mode=mode,
                            budget=budget, samples=samples, seed=seed)


def resolve_mds_mode(code: GrsCode, budget: int = EXACT_MDS_BUDGET) -> str:
    """'exact' when the subset count fits the budget, else 'randomized'."""
    ncols = code.block_length
    return "exact" if math.comb(ncols, code.k) <= budget else "randomized"


# --- dual identity ------------------------------------------------------------

def check_dual_identity(ctx: FieldCtx, points: Sequence[Felt],
                        k: int) -> CheckResult:
    """Rowspace of GRS_{n-k}(a, u) equals the nullspace of GRS_k(a, 1).

    Checked as mutual orthogonality plus a dimension count, which pins the
    two spaces to each other exactly.
    """
    n = len(points)
    if not 1 <= k <= n - 1:
        return CheckResult("dual-identity", "skipped",
                           f"k = {k} outside 1..n-1 = {n - 1}", "exact")
    u = dual_coefficients(ctx, points)
    ones = (1,) * n
    gk = generator_matrix(GrsCode(ctx, tuple(points), ones, k))
    gd = generator_matrix(GrsCode(ctx, tuple(points), u, n - k))
    for i in range(gd.nrows):
        drow = gd.row(i)
        for j in range(gk.nrows):
            acc = 0
            for xd, xk in zip(drow, gk.row(j)):
                if xd and xk:
                    acc = ctx.add(acc, ctx.mul(xd, xk))
            if acc != 0:
                return CheckResult(
                    "dual-identity", "fail",
                    f"row {i} of the dual generator is not orthogonal "
                    f"to row {j}", "exact")
    if rank_rows(ctx, gk.rows_list()) != k:
        return CheckResult("dual-identity", "fail",
                           "primal generator not full rank", "exact")
    if rank_rows(ctx, gd.rows_list()) != n - k:
        return CheckResult("dual-identity", "fail",
                           "dual generator not full rank", "exact")
    return CheckResult(
        "dual-identity", "pass",
        f"GRS_{n - k}(a, u) spans the nullspace of GRS_{k}(a, 1)", "exact")


# --- character-sum count bound -------------------------------------------------

def check_character_sum_bound(ctx: FieldCtx,
                              points: Sequence[Felt]) -> CheckResult:
    """Count b with chi(b - a) = 1 for all a in points, and test the
    window |N - q/2^(n-1)| <= ((n-3)/2 + 2^(1-n)) sqrt(q) + (n-1)/2 where
    n = len(points) + 1.

    The comparison is exact: both sides are rational except for sqrt(q),
    so a positive deviation D is tested via D^2 <= c1^2 * q in Fractions.
    No floating point is involved, which can only make the test stricter.
    """
    if ctx.p == 2:
        raise EvenCharacteristicError("the character needs odd q")
    if len(set(points)) != len(points):
        raise DuplicatePointsError("points must be distinct")
    if not points:
        raise ValueError("need at least one point")
    chi = ctx.character_table()
    sub = ctx.sub
    count = 0
    for b in range(ctx.q):
        if all(chi[sub(b, a)] == 1 for a in points):
            count += 1
    n = len(points) + 1
    q = ctx.q
    center = Fraction(q, 2 ** (n - 1))
    c1 = Fraction(n - 3, 2) + Fraction(1, 2 ** (n - 1))
    c2 = Fraction(n - 1, 2)
    dev = abs(Fraction(count) - center) - c2
    ok = dev <= 0 or dev * dev <= c1 * c1 * q
    detail = (f"N = {count}, center q/2^{n - 1} = {float(center):.4f}, "
              f"allowed radius {float(c1):.4f}*sqrt({q}) + {float(c2):.4f}")
    return CheckResult("character-sum-bound", "pass" if ok else "fail",
                       detail, "exact")


# --- minimum distance oracle ----------------------------------------------------

def minimum_distance(code: GrsCode, budget: int = EXACT_MDS_BUDGET) -> int:
    """Exact minimum distance by enumerating all q^k codewords."""
    ctx = code.ctx
    total = ctx.q ** code.k
    if total > budget:
        raise BudgetExceededError(
            f"{total} codewords exceed budget {budget}")
    gen = generator_matrix(code)
    ops = ctx.table_ops()
    if ops is not None:
        return _np_min_distance(ctx, gen, total, ops)
    best = gen.ncols
    rows = gen.rows_list()
    message = [0] * code.k
    for idx in range(1, total):
        # next message in mixed radix q
        pos = 0
        while True:
            message[pos] += 1
            if message[pos] < ctx.q:
                break
            message[pos] = 0
            pos += 1
        word = [0] * gen.ncols
        for i, mi in enumerate(message):
            if mi:
                for j, gij in enumerate(rows[i]):
                    if gij:
                        word[j] = ctx.add(word[j], ctx.mul(mi, gij))
        weight = sum(1 for x in word if x)
        if weight < best:
            best = weight
    return best


def _np_min_distance(ctx: FieldCtx, gen: MatrixGF, total: int, ops) -> int:
    import numpy as np

    q, k, ncols = ctx.q, gen.nrows, gen.ncols
    grows = np.array(gen.rows_list(), dtype=np.int32)
    best = ncols
    chunk = 1 << 15
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        words = np.zeros((idx.size, ncols), dtype=np.int32)
        for i in range(k):
            digits = ((idx // q ** i) % q).astype(np.int32)
            words = ops.add[words, ops.mul[digits[:, None], grows[i][None, :]]]
        weights = np.count_nonzero(words, axis=1)
        if start == 0:
            weights = weights[1:]  # drop the zero message
        if weights.size:
            best = min(best, int(weights.min()))
    return best


# --- report assembly --------------------------------------------------------------

def verify_code(code: GrsCode, mds_mode: str = "auto",
                budget: int = EXACT_MDS_BUDGET,
                samples: int = RANDOM_MDS_SAMPLES, seed: int = 0,
                dual_identity: bool = False,
                stored_generator: Optional[MatrixGF] = None,
                ) -> VerificationReport:
    """Self-dual and MDS checks, with optional extras, as one report.

    When a stored generator matrix is supplied, the self-dual and MDS
    checks run against it (so hand-edited matrices fail honestly) and an
    extra consistency check compares it to the matrix implied by (a,v,k).
    """
    checks: list[CheckResult] = []
    ctx = code.ctx
    canonical = generator_matrix(code)
    target = canonical
    if stored_generator is not None:
        target = stored_generator
        if stored_generator.entries == canonical.entries:
            checks.append(CheckResult(
                "generator-consistency", "pass",
                "stored generator matches the one implied by (a, v, k)",
                "exact"))
        else:
            checks.append(CheckResult(
                "generator-consistency", "fail",
                "stored generator differs from the one implied by (a, v, k)",
                "exact"))
    checks.append(check_self_dual_matrix(ctx, target))
    if mds_mode == "auto":
        mds_mode = resolve_mds_mode(code, budget)
    if mds_mode == "structural":
        checks.append(check_mds(code, mode="structural"))
    else:
        checks.append(check_mds_matrix(ctx, target, mode=mds_mode,
                                       budget=budget, samples=samples,
                                       seed=seed))
    if dual_identity:
        if code.extended:
            checks.append(CheckResult(
                "dual-identity", "skipped",
                "dual identity check applies to plain codes", "exact"))
        else:
            checks.append(check_dual_identity(ctx, code.a, code.k))
    return VerificationReport(checks)
