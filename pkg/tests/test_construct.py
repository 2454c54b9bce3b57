"""Construction families, the subfield-scaling machinery, and the
square-difference search, each checked against independent oracles."""

import random
from itertools import combinations

import pytest

from grsdual import construct as con
from grsdual import verify as ver
from grsdual.errors import (
    BadOrderError,
    BadResidueClassError,
    BadSubfieldError,
    BudgetExceededError,
    EvenCharacteristicError,
    LengthTooLongError,
    NoSubfieldSolutionError,
    NotFoundError,
    NotSelfDualizableError,
    OddLengthError,
    ParameterRangeError,
)
from grsdual.gf import field_for_order, make_field
from grsdual.grs import dual_coefficients, generator_matrix


def assert_certified(result):
    """Common contract: self-dual, structurally MDS, certificate valid."""
    code = result.code
    ctx = code.ctx
    assert ver.check_self_dual(code).status == "pass"
    assert code.block_length == 2 * code.k
    cert = result.certificate
    assert cert.alpha_set == code.a
    if cert.u is not None and cert.lam is not None:
        for ui, vi in zip(cert.u, code.v):
            assert ctx.mul(cert.lam, ui) == ctx.mul(vi, vi)
    if cert.w is not None:
        for wi, vi in zip(cert.w, code.v):
            assert wi == ctx.mul(vi, vi)


# --- subfield scaling --------------------------------------------------------

def test_find_subfield_scaling_constant_points():
    ctx = make_field(3, 2)
    u = dual_coefficients(ctx, (0, 1, 2))
    assert u == (2, 2, 2)  # frozen: each product of differences is 2
    assert con.find_subfield_scaling(ctx, u) == (1, 1, 1)


def test_find_subfield_scaling_failure():
    ctx = make_field(3, 2)
    u = dual_coefficients(ctx, (0, 1, 3))  # 3 is the basis element x
    # frozen: u = (2x, 2+2x, 1+2x); u/u_1 has second coordinate 1+2x
    assert u == (6, 8, 7)
    assert ctx.mul(u[1], ctx.inverse(u[0])) == 7  # outside GF(3)
    with pytest.raises(NoSubfieldSolutionError):
        con.find_subfield_scaling(ctx, u)


def test_find_subfield_scaling_identity_when_already_rational():
    ctx = make_field(5, 2)
    u = (2, 4, 1)  # constants lie in GF(5)
    w = con.find_subfield_scaling(ctx, u)
    assert w == tuple(ctx.mul(x, ctx.inverse(2)) for x in u)
    assert all(ctx.in_subfield(x, 5) for x in w)


def test_find_subfield_scaling_requires_square_field():
    with pytest.raises(BadSubfieldError):
        con.find_subfield_scaling(make_field(5), (1, 2))
    with pytest.raises(ValueError):
        con.find_subfield_scaling(make_field(3, 2), (0, 1))


def test_has_subfield_solution_examples():
    ctx = make_field(3, 2)
    assert con.has_subfield_solution(ctx, (0, 1, 2))
    assert con.has_subfield_solution(ctx, tuple([0] + ctx.roots_of_unity(4)))
    assert not con.has_subfield_solution(ctx, (0, 1, 3))


def test_scaling_agrees_with_row_equivalence_exhaustively_gf9():
    # size 2..5 subsets of GF(9): success of the direct scaling must track
    # the row-equivalence criterion exactly
    ctx = make_field(3, 2)
    for size in range(2, 6):
        for points in combinations(range(9), size):
            u = dual_coefficients(ctx, points)
            try:
                con.find_subfield_scaling(ctx, u)
                scaled = True
            except NoSubfieldSolutionError:
                scaled = False
            assert scaled == con.has_subfield_solution(ctx, points)


def test_scaling_agrees_with_row_equivalence_random_gf25():
    ctx = make_field(5, 2)
    rnd = random.Random(20)
    for _ in range(120):
        points = tuple(rnd.sample(range(25), rnd.randint(2, 6)))
        u = dual_coefficients(ctx, points)
        try:
            con.find_subfield_scaling(ctx, u)
            scaled = True
        except NoSubfieldSolutionError:
            scaled = False
        assert scaled == con.has_subfield_solution(ctx, points)


# --- selfdualize ----------------------------------------------------------------

def test_selfdualize_two_points_gf5():
    code = con.selfdualize(make_field(5), (0, 1))
    assert code.v == (2, 1)
    assert generator_matrix(code).rows_list() == [[2, 1]]  # 4 + 1 = 0
    assert ver.check_self_dual(code).status == "pass"


def test_selfdualize_gf13_uniform_nonresidues():
    # u = (2, 7, 6, 11): all nonsquares mod 13, so the smallest
    # nonresidue 2 rescales them to squares
    ctx = make_field(13)
    u = dual_coefficients(ctx, (0, 1, 2, 3))
    assert u == (2, 7, 6, 11)
    assert [ctx.quadratic_character(x) for x in u] == [-1, -1, -1, -1]
    code = con.selfdualize(ctx, (0, 1, 2, 3))
    assert ver.check_self_dual(code).status == "pass"
    assert ver.check_mds(code).status == "pass"


def test_selfdualize_mixed_characters_fails_over_prime_field():
    # u over GF(7) for (0,1,2,3) is (1, 4, 3, 6) with characters
    # (+,+,-,-): no scalar fixes that, and 7 is not a square
    ctx = make_field(7)
    u = dual_coefficients(ctx, (0, 1, 2, 3))
    assert u == (1, 4, 3, 6)
    assert sorted(ctx.quadratic_character(x) for x in u) == [-1, -1, 1, 1]
    with pytest.raises(NotSelfDualizableError):
        con.selfdualize(ctx, (0, 1, 2, 3))


def test_selfdualize_mixed_characters_over_square_field():
    # mixed characters force the subfield fallback, and no subfield
    # scaling exists for these points either
    ctx = make_field(3, 2)
    u = dual_coefficients(ctx, (0, 1, 2, 3))
    assert sorted(ctx.quadratic_character(x) for x in u) == [-1, -1, 1, 1]
    assert not con.has_subfield_solution(ctx, (0, 1, 2, 3))
    with pytest.raises(NotSelfDualizableError):
        con.selfdualize(ctx, (0, 1, 2, 3))


def test_selfdualize_odd_length_rejected():
    with pytest.raises(OddLengthError):
        con.selfdualize(make_field(5), (0, 1, 2))


def test_selfdualize_coset_points_gf9():
    ctx = make_field(3, 2)
    points = (0, 1, 2, 3, 4, 5)  # {0,1,2} and x + {0,1,2}
    code = con.selfdualize(ctx, points)
    assert ver.check_self_dual(code).status == "pass"
    assert ver.check_mds(code).status == "pass"


# --- square-difference search -------------------------------------------------------

def oracle_lex_first_square_set(q, n):
    """Exhaustive subset scan in lex order; independent of the search."""
    ctx = field_for_order(q)
    chi = ctx.character_table()
    for cand in combinations(range(q), n):
        if all(chi[ctx.sub(b, a)] == 1
               for a, b in combinations(cand, 2)):
            return cand
    return None


def test_search_square_difference_set_frozen_values():
    assert con.search_square_difference_set(13, 2) == (0, 1)
    assert con.search_square_difference_set(13, 3) == (0, 1, 4)
    assert con.search_square_difference_set(29, 4) == (0, 1, 5, 6)


@pytest.mark.parametrize("q,n", [(13, 2), (13, 3), (13, 4), (17, 3),
                                 (25, 3), (29, 4), (5, 3), (5, 4)])
def test_search_matches_exhaustive_lex_scan(q, n):
    assert con.search_square_difference_set(q, n) == \
        oracle_lex_first_square_set(q, n)


def test_search_rejects_wrong_residue_class():
    with pytest.raises(BadResidueClassError):
        con.search_square_difference_set(11, 4)
    with pytest.raises(BadResidueClassError):
        con.search_square_difference_set(16, 4)


def test_search_differences_are_squares_post_hoc():
    points = con.search_square_difference_set(29, 4)
    ctx = make_field(29)
    for a, b in combinations(points, 2):
        assert ctx.quadratic_character(ctx.sub(b, a)) == 1


def test_search_node_budget():
    with pytest.raises(BudgetExceededError):
        con.search_square_difference_set(29, 4, node_budget=1)


# --- families -------------------------------------------------------------------------

def test_construct_even_char():
    result = con.construct_even_char(4, 4)
    assert (result.code.block_length, result.code.k) == (4, 2)
    assert result.family == "even-char"
    assert_certified(result)
    assert ver.check_mds(result.code).status == "pass"
    assert ver.minimum_distance(result.code) == 3

    result = con.construct_even_char(8, 6)
    assert (result.code.block_length, result.code.k) == (6, 3)
    assert ver.check_mds(result.code).status == "pass"

    with pytest.raises(LengthTooLongError):
        con.construct_even_char(4, 6)
    with pytest.raises(OddLengthError):
        con.construct_even_char(8, 5)
    with pytest.raises(ParameterRangeError):
        con.construct_even_char(5, 4)


def test_construct_extended():
    result = con.construct_extended(5)
    code = result.code
    assert (code.block_length, code.k) == (6, 3)
    assert_certified(result)
    assert ver.check_mds(code).status == "pass"
    assert ver.minimum_distance(code) == 4

    result9 = con.construct_extended(9)
    assert (result9.code.block_length, result9.code.k) == (10, 5)
    assert ver.check_mds(result9.code).status == "pass"

    with pytest.raises(EvenCharacteristicError):
        con.construct_extended(4)


def test_construct_square_set():
    result = con.construct_square_set(29, 4)
    assert result.certificate.alpha_set == (0, 1, 5, 6)
    assert result.certificate.lam == 1
    assert (result.code.block_length, result.code.k) == (4, 2)
    assert_certified(result)
    assert ver.check_mds(result.code).status == "pass"

    tiny = con.construct_square_set(13, 2)
    assert (tiny.code.block_length, tiny.code.k) == (2, 1)
    assert_certified(tiny)

    with pytest.raises(BadResidueClassError):
        con.construct_square_set(11, 4)
    with pytest.raises(NotFoundError):
        con.construct_square_set(5, 4)  # squares mod 5 are too sparse


def test_construct_subfield_points():
    result = con.construct_subfield_points(5, 4)
    assert result.code.ctx.q == 25
    assert result.certificate.w == result.certificate.u
    assert_certified(result)
    assert ver.check_mds(result.code).status == "pass"

    tiny = con.construct_subfield_points(3, 2)
    assert (tiny.code.block_length, tiny.code.k) == (2, 1)
    assert tiny.code.ctx.q == 9

    with pytest.raises(LengthTooLongError):
        con.construct_subfield_points(3, 4)


def test_construct_subfield_points_even_characteristic():
    result = con.construct_subfield_points(4, 4)
    assert result.code.ctx.q == 16
    assert_certified(result)


def test_construct_roots_of_unity():
    result = con.construct_roots_of_unity(25, 4)
    code = result.code
    assert code.ctx.q == 25 and (code.block_length, code.k) == (4, 2)
    # points are 0 plus the cube roots of unity
    ctx = code.ctx
    assert code.a[0] == 0
    assert all(ctx.power(z, 3) == 1 for z in code.a[1:])
    assert_certified(result)
    assert ver.check_mds(code).status == "pass"
    r = 5
    assert result.certificate.w is not None
    assert all(ctx.in_subfield(w, r) for w in result.certificate.w)

    tiny = con.construct_roots_of_unity(9, 2)
    assert (tiny.code.block_length, tiny.code.k) == (2, 1)

    with pytest.raises(BadOrderError):
        con.construct_roots_of_unity(25, 6)  # 5 does not divide 24
    with pytest.raises(BadSubfieldError):
        con.construct_roots_of_unity(13, 4)  # not a square
    with pytest.raises(EvenCharacteristicError):
        con.construct_roots_of_unity(16, 4)


def test_construct_theorem_3_5_smallest_case():
    result = con.construct_theorem_3_5(3, 1)
    code = result.code
    ctx = code.ctx
    assert ctx.q == 9 and (code.block_length, code.k) == (6, 3)
    # frozen: gamma = 1+x (index 4), beta = gamma^2 = 2x (index 6),
    # points are GF(3) and beta + GF(3)
    assert result.certificate.gamma == 4
    assert result.certificate.beta == 6
    assert result.certificate.alpha_set == (0, 1, 2, 6, 7, 8)
    assert_certified(result)
    assert ver.check_mds(code).status == "pass"
    # the shift identity behind the certificate
    beta = result.certificate.beta
    assert ctx.sub(ctx.power(beta, 2), 1) == ctx.neg(2)


def test_construct_theorem_3_5_r7():
    for t in (1, 2, 3):
        result = con.construct_theorem_3_5(7, t)
        code = result.code
        assert code.ctx.q == 49
        assert (code.block_length, code.k) == (14 * t, 7 * t)
        assert ver.check_self_dual(code).status == "pass"
        ctx = code.ctx
        beta = result.certificate.beta
        assert ctx.quadratic_character(beta) == 1  # even power of gamma
        assert ctx.sub(ctx.power(beta, 6), 1) == ctx.neg(2)


def test_construct_theorem_3_5_parameter_errors():
    with pytest.raises(BadResidueClassError):
        con.construct_theorem_3_5(5, 1)  # 5 = 1 mod 4
    with pytest.raises(ParameterRangeError):
        con.construct_theorem_3_5(7, 4)  # t must stay below (r-1)/2
    with pytest.raises(ParameterRangeError):
        con.construct_theorem_3_5(3, 0)


# --- dispatch -----------------------------------------------------------------------

def test_auto_prefers_explicit_families():
    assert con.construct_auto(q=9, n=6).family == "theorem-3-5"
    assert con.construct_auto(q=25, n=4).family == "roots-of-unity"
    assert con.construct_auto(q=29, n=4).family == "square-set"
    assert con.construct_auto(q=5, n=6).family == "extended"
    assert con.construct_auto(q=4, n=4).family == "even-char"
    assert con.construct_auto(r=3, t=1).family == "theorem-3-5"


def test_auto_reports_honest_failure():
    with pytest.raises(NotSelfDualizableError):
        con.construct_auto(q=7, n=4)
    # here even the square-set search exhausts: GF(25) has no 6-point set
    with pytest.raises(NotSelfDualizableError):
        con.construct_auto(q=25, n=6)


def test_request_dispatch_and_missing_parameters():
    result = con.build(con.ConstructionRequest("theorem-3-5", r=3, t=1))
    assert result.family == "theorem-3-5"
    with pytest.raises(ValueError):
        con.build(con.ConstructionRequest("theorem-3-5", r=3))
    with pytest.raises(ValueError):
        con.build(con.ConstructionRequest("no-such-family", q=5))


def test_family_outputs_equal_their_computed_duals():
    # independent of the Gram-matrix check: the dual-code operation must
    # return a code spanning the same row space
    from grsdual.grs import dual_code
    from grsdual.linalg import row_equivalent

    results = [
        con.construct_even_char(16, 8),
        con.construct_extended(9),
        con.construct_square_set(29, 4),
        con.construct_subfield_points(9, 6),
        con.construct_roots_of_unity(81, 6),
        con.construct_theorem_3_5(7, 1),
    ]
    for result in results:
        code = result.code
        dual = dual_code(code)
        assert dual.k == code.k
        assert row_equivalent(generator_matrix(code), generator_matrix(dual))


def test_every_family_roundtrips_through_json_and_verifies():
    import json

    from grsdual.grs import code_from_json, stored_generator_from_json

    results = [
        con.construct_even_char(8, 4),
        con.construct_extended(7),
        con.construct_square_set(13, 2),
        con.construct_subfield_points(7, 6),
        con.construct_roots_of_unity(49, 4),
        con.construct_theorem_3_5(3, 1),
    ]
    for result in results:
        blob = json.loads(json.dumps(con.result_to_json(result)))
        code = code_from_json(blob)
        assert code == result.code
        stored = stored_generator_from_json(blob)
        report = ver.verify_code(code, stored_generator=stored,
                                 dual_identity=not code.extended)
        assert report.overall, (result.family, report.to_json())


def test_result_json_shape():
    result = con.construct_theorem_3_5(3, 1)
    blob = con.result_to_json(result)
    assert blob["family"] == "theorem-3-5"
    cert = blob["certificate"]
    assert set(cert) == {"u", "lambda", "w", "beta", "gamma", "alpha_set"}
    assert cert["beta"] == [0, 2]
    assert cert["lambda"] == [1, 0]
    assert cert["w"] is None
    assert len(cert["alpha_set"]) == 6
    ext = con.result_to_json(con.construct_extended(5))
    assert ext["certificate"]["u"] is None
    assert ext["certificate"]["lambda"] is None
    assert len(ext["certificate"]["alpha_set"]) == 5
