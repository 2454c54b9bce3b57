"""Construction families for MDS self-dual codes.

Every family follows the same recipe: pick evaluation points a, compute
the dual coefficients u, exhibit column multipliers v with lam * u_i =
v_i^2 for a single scalar lam, and return GRS_{n/2}(a, v).  That identity
is exactly what makes the code equal to its own dual, so each result
carries the witnesses (u, lam, and where relevant the subfield vector w
and the generators beta/gamma) as a machine-checkable certificate, and is
re-verified before being returned.

Families
  even-char        any even q, any even n <= q: everything is a square.
  extended         odd q: the length-(q+1) extended code over all of GF(q).
  square-set       q = 1 mod 4: backtracking search for points whose
                   pairwise differences are all nonzero squares.
  subfield-points  q = r^2: points inside GF(r), so u lands in GF(r).
  roots-of-unity   q = r^2: points {0} plus the (n-1)-st roots of unity.
  theorem-3-5      q = r^2, r = 3 mod 4: 2t translated copies of GF(r)
                   along beta = gamma^((r+1)/2), giving n = 2tr.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    BadOrderError,
    BadResidueClassError,
    BadSubfieldError,
    BudgetExceededError,
    EvenCharacteristicError,
    InternalCheckError,
    LengthTooLongError,
    NoSubfieldSolutionError,
    NotFoundError,
    NotSelfDualizableError,
    OddLengthError,
    ParameterRangeError,
)
from .gf import FieldCtx, Felt, make_field, split_prime_power
from .grs import GrsCode, code_to_json, dual_coefficients
from .linalg import entrywise_power, row_equivalent, vandermonde_system

FAMILIES = (
    "even-char", "extended", "square-set",
    "subfield-points", "roots-of-unity", "theorem-3-5",
)

AUTO_ORDER = (
    "theorem-3-5", "roots-of-unity", "subfield-points",
    "square-set", "extended", "even-char",
)


@dataclass(frozen=True)
class Certificate:
    """Witnesses for self-duality: lam * u_i = v_i^2 entrywise.

    Fields not used by a family stay None; the extended family needs no
    witnesses beyond its point set.
    """

    alpha_set: tuple[Felt, ...]
    u: Optional[tuple[Felt, ...]] = None
    lam: Optional[Felt] = None
    w: Optional[tuple[Felt, ...]] = None
    beta: Optional[Felt] = None
    gamma: Optional[Felt] = None


@dataclass(frozen=True)
class ConstructionResult:
    code: GrsCode
    family: str
    certificate: Certificate


@dataclass(frozen=True)
class ConstructionRequest:
    """Parameters for one construction; q may be given instead of (r, t)."""

    family: str
    q: Optional[int] = None
    r: Optional[int] = None
    t: Optional[int] = None
    n: Optional[int] = None


# --- subfield rationality of the nullspace line ---------------------------

def find_subfield_scaling(ctx: FieldCtx, u: Sequence[Felt]) -> tuple[Felt, ...]:
    """Scale u onto the subfield GF(r), r = sqrt(q), if possible.

    Any GF(r)-rational nonzero solution of the power-rows system lies on
    the single line spanned by u, so u/u_1 is in GF(r)^n exactly when one
    exists; that scaled vector is returned.
    """
    if ctx.e % 2:
        raise BadSubfieldError("q must be a square to have GF(sqrt(q))")
    r = ctx.p ** (ctx.e // 2)
    if not u or any(x == 0 for x in u):
        raise ValueError("u must be a nonzero-coordinate vector")
    scale = ctx.inverse(u[0])
    w = tuple(ctx.mul(ui, scale) for ui in u)
    for i, wi in enumerate(w):
        if not ctx.in_subfield(wi, r):
            raise NoSubfieldSolutionError(
                f"coordinate {i} of u/u_1 lies outside GF({r})")
    return w


def has_subfield_solution(ctx: FieldCtx, points: Sequence[Felt]) -> bool:
    """Row-equivalence test: the system for these points has a GF(r)
    solution iff raising every matrix entry to the r-th power preserves
    the row space."""
    if ctx.e % 2:
        raise BadSubfieldError("q must be a square to have GF(sqrt(q))")
    r = ctx.p ** (ctx.e // 2)
    system = vandermonde_system(ctx, points)
    return row_equivalent(system, entrywise_power(system, r))


# --- the generic self-dualizing step --------------------------------------

def _certified_selfdual(ctx: FieldCtx, points: Sequence[Felt],
                        family_w: Optional[tuple[Felt, ...]] = None,
                        ) -> tuple[GrsCode, Certificate]:
    n = len(points)
    if n % 2:
        raise OddLengthError(f"self-dual codes need even length, got {n}")
    a = tuple(points)
    u = dual_coefficients(ctx, a)
    lam: Optional[Felt] = None
    w: Optional[tuple[Felt, ...]] = family_w
    if ctx.p == 2:
        lam = 1
        v = tuple(ctx.sqrt(ui) for ui in u)
    else:
        chars = [ctx.quadratic_character(ui) for ui in u]
        if all(c == 1 for c in chars):
            lam = 1
            v = tuple(ctx.sqrt(ui) for ui in u)
        elif all(c == -1 for c in chars):
            lam = ctx.smallest_nonresidue()
            v = tuple(ctx.sqrt(ctx.mul(lam, ui)) for ui in u)
        elif ctx.e % 2 == 0:
            # mixed characters: fall back to a subfield-rational scaling
            # (elements of GF(r)* are squares in GF(r^2))
            try:
                w = find_subfield_scaling(ctx, u)
            except NoSubfieldSolutionError as exc:
                raise NotSelfDualizableError(str(exc)) from exc
            lam = ctx.inverse(u[0])
            v = tuple(ctx.sqrt(wi) for wi in w)
        else:
            raise NotSelfDualizableError(
                "dual coefficients have mixed quadratic characters")
    code = GrsCode(ctx, a, v, n // 2)
    cert = Certificate(alpha_set=a, u=u, lam=lam, w=w)
    _check_certificate(ctx, code, cert)
    return code, cert


def selfdualize(ctx: FieldCtx, points: Sequence[Felt]) -> GrsCode:
    """Column multipliers making GRS_{n/2}(points, v) self-dual, if any."""
    return _certified_selfdual(ctx, points)[0]


def _check_certificate(ctx: FieldCtx, code: GrsCode, cert: Certificate) -> None:
    if cert.u is None or cert.lam is None:
        return
    for ui, vi in zip(cert.u, code.v):
        if ctx.mul(cert.lam, ui) != ctx.mul(vi, vi):
            raise InternalCheckError("certificate identity lam*u = v^2 failed")
    if cert.w is not None:
        for wi, vi in zip(cert.w, code.v):
            if wi != ctx.mul(vi, vi):
                raise InternalCheckError("certificate identity w = v^2 failed")


def _check_selfdual_result(result: ConstructionResult) -> ConstructionResult:
    # late import: verify depends on grs but not on this module
    from .verify import check_self_dual

    res = check_self_dual(result.code)
    if res.status != "pass":
        raise InternalCheckError(f"constructed code is not self-dual: {res.detail}")
    return result


# --- families --------------------------------------------------------------

def construct_even_char(q: int, n: int) -> ConstructionResult:
    """Self-dual [n, n/2] code over even GF(q) on the first n elements."""
    p, e = split_prime_power(q)
    if p != 2:
        raise ParameterRangeError(f"q = {q} is not a power of 2")
    if n % 2:
        raise OddLengthError(f"length must be even, got {n}")
    if n > q:
        raise LengthTooLongError(f"need n <= q, got n = {n} > q = {q}")
    if n < 2:
        raise ParameterRangeError("length must be at least 2")
    ctx = make_field(p, e)
    code, cert = _certified_selfdual(ctx, tuple(range(n)))
    return _check_selfdual_result(ConstructionResult(code, "even-char", cert))


def construct_extended(q: int) -> ConstructionResult:
    """Extended [q+1, (q+1)/2, (q+3)/2] self-dual code over odd GF(q)."""
    p, e = split_prime_power(q)
    if p == 2:
        raise EvenCharacteristicError("extended family needs odd q")
    ctx = make_field(p, e)
    code = GrsCode(ctx, tuple(range(q)), (1,) * q, (q + 1) // 2, extended=True)
    cert = Certificate(alpha_set=code.a)
    return _check_selfdual_result(ConstructionResult(code, "extended", cert))


def search_square_difference_set(q: int, n: int,
                                 node_budget: Optional[int] = None,
                                 ) -> Optional[tuple[Felt, ...]]:
    """Lexicographically first n-subset with all pairwise differences
    nonzero squares, or None when the exhaustive search finds none.

    Needs q = 1 mod 4 so that -1 is a square and the difference condition
    is symmetric.  The first element can be pinned to 0: translating any
    valid set by -min maps it to a lex-smaller one starting at 0, so the
    overall lex-first set starts there.  Depth-first extension in index
    order then yields the lex-first set; node_budget caps the number of
    extension attempts for large fields.
    """
    p, e = split_prime_power(q)
    if q % 4 != 1:
        raise BadResidueClassError(f"q = {q} is not 1 mod 4")
    if n < 2:
        raise ParameterRangeError("need n >= 2")
    ctx = make_field(p, e)
    chi = ctx.character_table()
    sub = ctx.sub
    nodes = 0

    def extend(chain: list[Felt], start: Felt) -> Optional[list[Felt]]:
        nonlocal nodes
        if len(chain) == n:
            return chain
        for x in range(start, q):
            if all(chi[sub(x, s)] == 1 for s in chain):
                nodes += 1
                if node_budget is not None and nodes > node_budget:
                    raise BudgetExceededError(
                        f"search exceeded node budget {node_budget}")
                found = extend(chain + [x], x + 1)
                if found is not None:
                    return found
        return None

    found = extend([0], 1)
    return tuple(found) if found is not None else None


def construct_square_set(q: int, n: int,
                         node_budget: Optional[int] = None) -> ConstructionResult:
    """Self-dual [n, n/2] code from a square-difference point set."""
    if n % 2:
        raise OddLengthError(f"length must be even, got {n}")
    points = search_square_difference_set(q, n, node_budget=node_budget)
    if points is None:
        raise NotFoundError(
            f"no square-difference set of size {n} exists in GF({q})")
    ctx = make_field(*split_prime_power(q))
    code, cert = _certified_selfdual(ctx, points)
    if cert.lam != 1:
        raise InternalCheckError("square-set coefficients must all be squares")
    return _check_selfdual_result(ConstructionResult(code, "square-set", cert))


def construct_subfield_points(r: int, n: int) -> ConstructionResult:
    """Self-dual [n, n/2] code over GF(r^2) on the first n points of GF(r).

    With all points inside GF(r) the dual coefficients stay in GF(r), and
    every element of GF(r)* is a square in the quadratic extension.
    """
    p, d = split_prime_power(r)
    if n % 2:
        raise OddLengthError(f"length must be even, got {n}")
    if n > r:
        raise LengthTooLongError(f"need n <= r, got n = {n} > r = {r}")
    if n < 2:
        raise ParameterRangeError("length must be at least 2")
    ctx = make_field(p, 2 * d)
    points = tuple(ctx.subfield_elements(r)[:n])
    u = dual_coefficients(ctx, points)
    for ui in u:
        if not ctx.in_subfield(ui, r):
            raise InternalCheckError("dual coefficients left the subfield")
    v = tuple(ctx.sqrt(ui) for ui in u)
    code = GrsCode(ctx, points, v, n // 2)
    cert = Certificate(alpha_set=points, u=u, lam=1, w=u)
    _check_certificate(ctx, code, cert)
    return _check_selfdual_result(
        ConstructionResult(code, "subfield-points", cert))


def construct_roots_of_unity(q: int, n: int) -> ConstructionResult:
    """Self-dual [n, n/2] code over GF(q), q = r^2 odd, on {0} plus the
    (n-1)-st roots of unity; needs (n-1) | (q-1).

    Raising the power-rows system to the r-th power permutes its rows for
    this point set, so the scaled dual coefficients land in GF(r).
    """
    p, e = split_prime_power(q)
    if p == 2:
        raise EvenCharacteristicError("this family needs odd q")
    if e % 2:
        raise BadSubfieldError(f"q = {q} is not a square")
    if n % 2:
        raise OddLengthError(f"length must be even, got {n}")
    if n < 2:
        raise ParameterRangeError("length must be at least 2")
    m = n - 1
    if (q - 1) % m != 0:
        raise BadOrderError(f"n - 1 = {m} does not divide q - 1 = {q - 1}")
    ctx = make_field(p, e)
    points = tuple([0] + ctx.roots_of_unity(m))
    u = dual_coefficients(ctx, points)
    w = find_subfield_scaling(ctx, u)
    v = tuple(ctx.sqrt(wi) for wi in w)
    code = GrsCode(ctx, points, v, n // 2)
    cert = Certificate(alpha_set=points, u=u, lam=ctx.inverse(u[0]), w=w)
    _check_certificate(ctx, code, cert)
    return _check_selfdual_result(
        ConstructionResult(code, "roots-of-unity", cert))


def construct_theorem_3_5(r: int, t: int) -> ConstructionResult:
    """Self-dual [2tr, tr] code over GF(r^2) for r = 3 mod 4, t <= (r-1)/2.

    Points are a_l * beta + a_k over the canonical labeling a_1..a_r of
    GF(r) and l = 1..2t, where beta = gamma^((r+1)/2) for the canonical
    primitive element gamma.  beta is a square, beta^(r-1) - 1 equals -2,
    and block products of point differences stay in GF(r) up to square
    factors, which makes every dual coefficient a square.
    """
    p, d = split_prime_power(r)
    if r % 4 != 3:
        raise BadResidueClassError(f"r = {r} is not 3 mod 4")
    if not 1 <= t <= (r - 1) // 2:
        raise ParameterRangeError(
            f"t = {t} outside [1, {(r - 1) // 2}] for r = {r}")
    ctx = make_field(p, 2 * d)
    gamma = ctx.primitive_element()
    beta = ctx.power(gamma, (r + 1) // 2)
    labels = ctx.subfield_elements(r)
    points = tuple(ctx.add(ctx.mul(labels[bl], beta), labels[kk])
                   for bl in range(2 * t) for kk in range(r))
    if len(set(points)) != 2 * t * r:
        raise InternalCheckError("coset points collided")
    _check_block_products(ctx, r, t, beta, labels, points)
    u = dual_coefficients(ctx, points)
    v = tuple(ctx.sqrt(ui) for ui in u)
    code = GrsCode(ctx, points, v, t * r)
    cert = Certificate(alpha_set=points, u=u, lam=1, beta=beta, gamma=gamma)
    _check_certificate(ctx, code, cert)
    return _check_selfdual_result(
        ConstructionResult(code, "theorem-3-5", cert))


def _check_block_products(ctx: FieldCtx, r: int, t: int, beta: Felt,
                          labels: Sequence[Felt],
                          points: Sequence[Felt]) -> None:
    """Exact identities behind the theorem-3-5 certificate.

    For each point: the product of differences within its own block lies
    in GF(r); the product over any other block l equals
    (a_{l0} - a_l) * beta * (beta^(r-1) - 1); and beta^(r-1) - 1 = -2.
    """
    minus_two = ctx.neg(ctx.add(1, 1))
    beta_shift = ctx.sub(ctx.power(beta, r - 1), 1)
    if beta_shift != minus_two:
        raise InternalCheckError("beta^(r-1) - 1 != -2")
    cross_unit = ctx.mul(beta, beta_shift)
    for i, ai in enumerate(points):
        l0 = i // r
        own = 1
        for j in range(l0 * r, l0 * r + r):
            if j != i:
                own = ctx.mul(own, ctx.sub(ai, points[j]))
        if not ctx.in_subfield(own, r):
            raise InternalCheckError("own-block product left GF(r)")
        for bl in range(2 * t):
            if bl == l0:
                continue
            prod = 1
            for j in range(bl * r, bl * r + r):
                prod = ctx.mul(prod, ctx.sub(ai, points[j]))
            expected = ctx.mul(ctx.sub(labels[l0], labels[bl]), cross_unit)
            if prod != expected:
                raise InternalCheckError("cross-block product mismatch")


# --- dispatch ---------------------------------------------------------------

def construct_auto(q: Optional[int] = None, n: Optional[int] = None,
                   r: Optional[int] = None, t: Optional[int] = None,
                   ) -> ConstructionResult:
    """First family that succeeds, tried in a fixed preference order."""
    if q is None and r is not None:
        q = r * r
        if n is None and t is not None:
            n = 2 * t * r
    if q is None or n is None:
        raise ParameterRangeError("auto needs q (or r) and a target length n")
    attempts = []
    for family in AUTO_ORDER:
        try:
            return _try_family(family, q, n)
        except NotEligible as exc:
            attempts.append(f"{family}: {exc}")
        except (NotFoundError, NotSelfDualizableError) as exc:
            attempts.append(f"{family}: {exc}")
    raise NotSelfDualizableError(
        f"no family yields a self-dual code for q={q}, n={n} "
        f"({'; '.join(attempts)})")


class NotEligible(Exception):
    """Internal: parameters do not meet a family's entry conditions."""


def _try_family(family: str, q: int, n: int) -> ConstructionResult:
    root = math.isqrt(q)
    is_square = root * root == q
    if family == "theorem-3-5":
        if not is_square or root % 4 != 3:
            raise NotEligible("needs q = r^2 with r = 3 mod 4")
        if n <= 0 or n % (2 * root) != 0 or n // (2 * root) > (root - 1) // 2:
            raise NotEligible("needs n = 2tr with t <= (r-1)/2")
        return construct_theorem_3_5(root, n // (2 * root))
    if family == "roots-of-unity":
        if not is_square or q % 2 == 0:
            raise NotEligible("needs odd q = r^2")
        if n < 2 or n % 2 or (q - 1) % (n - 1) != 0:
            raise NotEligible("needs even n with (n-1) | (q-1)")
        return construct_roots_of_unity(q, n)
    if family == "subfield-points":
        if not is_square:
            raise NotEligible("needs q = r^2")
        if n < 2 or n % 2 or n > root:
            raise NotEligible("needs even n <= r")
        return construct_subfield_points(root, n)
    if family == "square-set":
        if q % 4 != 1:
            raise NotEligible("needs q = 1 mod 4")
        if n < 2 or n % 2:
            raise NotEligible("needs even n >= 2")
        return construct_square_set(q, n)
    if family == "extended":
        if q % 2 == 0:
            raise NotEligible("needs odd q")
        if n != q + 1:
            raise NotEligible(f"needs n = q + 1 = {q + 1}")
        return construct_extended(q)
    if family == "even-char":
        if q % 2:
            raise NotEligible("needs even q")
        if n < 2 or n % 2 or n > q:
            raise NotEligible("needs even n <= q")
        return construct_even_char(q, n)
    raise ValueError(f"unknown family {family!r}")


def build(request: ConstructionRequest) -> ConstructionResult:
    """Dispatch a request to its family; the CLI front end uses this."""
    fam = request.family
    if fam == "auto":
        return construct_auto(q=request.q, n=request.n,
                              r=request.r, t=request.t)
    if fam == "even-char":
        _need(request, "q", "n")
        return construct_even_char(request.q, request.n)
    if fam == "extended":
        _need(request, "q")
        return construct_extended(request.q)
    if fam == "square-set":
        _need(request, "q", "n")
        return construct_square_set(request.q, request.n)
    if fam == "subfield-points":
        _need(request, "r", "n")
        return construct_subfield_points(request.r, request.n)
    if fam == "roots-of-unity":
        _need(request, "q", "n")
        return construct_roots_of_unity(request.q, request.n)
    if fam == "theorem-3-5":
        _need(request, "r", "t")
        return construct_theorem_3_5(request.r, request.t)
    raise ValueError(f"unknown family {fam!r}")


def _need(request: ConstructionRequest, *names: str) -> None:
    missing = [name for name in names if getattr(request, name) is None]
    if missing:
        raise ValueError(
            f"family {request.family!r} needs {', '.join(missing)}")


def result_to_json(result: ConstructionResult) -> dict:
    ctx = result.code.ctx

    def elem(x: Optional[Felt]):
        return None if x is None else ctx.coeffs(x)

    def vec(xs: Optional[tuple[Felt, ...]]):
        return None if xs is None else [ctx.coeffs(x) for x in xs]

    data = code_to_json(result.code)
    data["family"] = result.family
    data["certificate"] = {
        "u": vec(result.certificate.u),
        "lambda": elem(result.certificate.lam),
        "w": vec(result.certificate.w),
        "beta": elem(result.certificate.beta),
        "gamma": elem(result.certificate.gamma),
        "alpha_set": vec(result.certificate.alpha_set),
    }
    return data
