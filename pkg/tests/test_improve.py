"""Tests for the improvement operators."""

import pytest
from hypothesis import given, settings, strategies as st

import fixture_a5
import fixture_co2
import fixture_m11
from moc import chartable, improve, intlin
from moc.exactnum import DomainError
from moc.improve import (
    ImproveContext, fong_parity, irr_test, max_multiplicities, pim_test,
    prune_essential, replay_event, singular_slots, split_decomposable,
    subsum_test, subtract_indecomposable,
)


def co2_ctx(**kw):
    return ImproveContext(u=fixture_co2.u_matrix(),
                          b_rows=fixture_co2.b_rows(), **kw)


# ---------------------------------------------------------------------------
# part searches

def test_atom_column_is_a_pim():
    ctx = ImproveContext(u=[[1, 0], [0, 1]])
    assert pim_test(ctx, 0) == "indecomposable"
    assert 0 in ctx.pims
    assert ctx.events[-1].kind == "atom_pim"


def test_pim_inconclusive_without_pool():
    ctx = ImproveContext(u=[[1, 0], [1, 1]])
    assert pim_test(ctx, 0) == "inconclusive"
    assert 0 not in ctx.pims
    assert "part" in ctx.events[-1].certificate


def test_pim_with_killing_row():
    # parts of (1,1) both meet the Brauer character (1,-1) negatively
    ctx = ImproveContext(u=[[1, 0], [1, 1]], b_rows=[[1, -1]])
    assert pim_test(ctx, 0) == "indecomposable"
    assert ctx.events[-1].kind == "pim_test"
    assert ctx.events[-1].certificate["status"] == "infeasible"


def test_pim_rejects_negative_coordinates():
    ctx = ImproveContext(u=[[1, 0], [0, 1]])
    with pytest.raises(DomainError):
        pim_test(ctx, [1, -1])


def test_irr_test_mirrors_pim_test():
    ctx = ImproveContext(u=[[1, 0], [1, 1]], p_rows=[[1, -1]])
    assert irr_test(ctx, 1) == "irreducible"
    assert 1 in ctx.irreducibles
    ctx2 = ImproveContext(u=[[1, 0], [1, 1]])
    assert irr_test(ctx2, 1) == "inconclusive"
    assert irr_test(ctx2, 0) == "irreducible"  # atom row


def test_co2_fixture_is_consistent():
    u = fixture_co2.u_matrix()
    assert intlin.bareiss_det(u) == 1
    for v in fixture_co2.b_rows():
        assert all(x >= 0 for x in intlin.vec_mat(v, u))
    for w in fixture_co2.p_rows():
        assert all(x >= 0 for x in intlin.mat_vec(u, w))


def test_co2_part_search_settles_the_published_columns():
    ctx = co2_ctx()
    verdicts = {j: pim_test(ctx, j) for j in range(16)}
    for j, row in fixture_co2.ATOM_COLUMNS.items():
        assert verdicts[j] == "indecomposable"
        assert ctx.u[row][j] == 1
    for j in fixture_co2.PROVABLE_COLUMNS:
        assert verdicts[j] == "indecomposable"
    for j in fixture_co2.UNSETTLED_COLUMNS:
        assert verdicts[j] == "inconclusive"
    assert ctx.pims == set(fixture_co2.ATOM_COLUMNS) | set(
        fixture_co2.PROVABLE_COLUMNS)


def test_co2_inconclusive_part_is_a_genuine_counterexample():
    ctx = co2_ctx()
    assert pim_test(ctx, 1) == "inconclusive"
    part = ctx.events[-1].certificate["part"]
    n = ctx.column(1)
    assert all(0 <= p <= c for p, c in zip(part, n))
    assert 1 <= sum(part) <= sum(n) - 1
    for v in fixture_co2.b_rows():
        hit = sum(a * b for a, b in zip(v, part))
        full = sum(a * b for a, b in zip(v, n))
        assert 0 <= hit <= full


# ---------------------------------------------------------------------------
# multiplicities and subtraction

def test_co2_multiplicity_bounds():
    ctx = co2_ctx(pims=set(fixture_co2.SUBTRACT_PIMS))
    m = max_multiplicities(ctx)
    assert m[1][0] is None            # column 1 is not certified
    assert m[0][0] == 1 and m[0][4] == 0
    assert m[0][1] == 1 and m[0][14] == 1 and m[0][15] == 1


def test_co2_subtraction_takes_one_copy():
    for tgt in fixture_co2.SUBTRACT_TARGETS:
        ctx = co2_ctx(p_rows=fixture_co2.p_rows(),
                      pims=set(fixture_co2.SUBTRACT_PIMS))
        sigma = [0] * 16
        sigma[tgt] = 1
        z, reduced = subtract_indecomposable(
            ctx, fixture_co2.SUBTRACT_COLUMN, sigma)
        assert z == fixture_co2.SUBTRACT_Z
        assert reduced[tgt] == 1 and reduced[fixture_co2.SUBTRACT_COLUMN] == -1
        # the reduction is still genuine: nonneg products with all Brauer rows
        for _, row in improve._ps_pairing_rows(ctx):
            assert sum(a * b for a, b in zip(row, reduced)) >= 0
        if tgt == 1:
            # peeling psi37 off psi51 leaves exactly the tensor projective
            assert reduced == fixture_co2.EXTRA_PROJECTIVE


def test_co2_subtraction_certificate_shape():
    ctx = co2_ctx(p_rows=fixture_co2.p_rows(),
                  pims=set(fixture_co2.SUBTRACT_PIMS))
    sigma = [0] * 16
    sigma[1] = 1
    subtract_indecomposable(ctx, 0, sigma)
    cert = ctx.events[-1].certificate
    by_label = {tuple(e["row"]): e for e in cert["subproblems"]}
    main = by_label[("bs", 15)]
    assert main["free"] == [1, 14, 15]
    assert main["ub"] == [1, 1, 1]
    assert main["status"] == "optimum" and main["bound"] == 1


def test_subtraction_needs_a_meeting_row():
    ctx = ImproveContext(u=[[1, 0], [0, -1]])
    with pytest.raises(DomainError):
        subtract_indecomposable(ctx, 1, [0, 1])


def test_subtraction_multiplicity_free_mode():
    ctx = ImproveContext(u=[[1, 0], [0, 1]], pims={0, 1})
    z, reduced = subtract_indecomposable(ctx, 0, [1, 2],
                                         mode="multiplicity_free")
    assert z == 1 and reduced == [0, 2]
    with pytest.raises(DomainError):
        subtract_indecomposable(ctx, 0, [1, 2], mode="everything")


# ---------------------------------------------------------------------------
# basis rewrites

def test_triangular_reduce_small():
    ctx = ImproveContext(u=[[1, 0, 0], [1, 1, 0], [1, 1, 1]],
                         p_rows=[[1, 0, -1]])
    before = [intlin.mat_vec(ctx.u, v) for v in ctx.p_rows]
    applied = improve.triangular_reduce(ctx)
    assert applied == [(2, 0, 1)]
    assert ctx.u == [[1, 0, 0], [1, 1, 0], [0, 1, 1]]
    assert ctx.p_rows == [[1, 0, 0]]
    after = [intlin.mat_vec(ctx.u, v) for v in ctx.p_rows]
    assert before == after  # same class functions in new coordinates
    assert improve.triangular_reduce(ctx) == []


def test_triangular_reduce_rejects_general_matrices():
    ctx = ImproveContext(u=[[1, 1], [0, 1]])
    with pytest.raises(DomainError):
        improve.triangular_reduce(ctx)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_triangular_reduce_preserves_class_functions(data):
    s = data.draw(st.integers(2, 4))
    u = [[0] * s for _ in range(s)]
    for i in range(s):
        u[i][i] = 1
        for j in range(i):
            u[i][j] = data.draw(st.integers(0, 2))
    pool = []
    for _ in range(data.draw(st.integers(0, 3))):
        v = [data.draw(st.integers(-2, 2)) for _ in range(s)]
        if all(x >= 0 for x in intlin.mat_vec(u, v)):
            pool.append(v)
    ctx = ImproveContext(u=[r[:] for r in u], p_rows=[v[:] for v in pool])
    before = [intlin.mat_vec(u, v) for v in pool]
    improve.triangular_reduce(ctx)
    after = [intlin.mat_vec(ctx.u, v) for v in ctx.p_rows]
    assert before == after
    assert improve._is_lower_unitriangular(ctx.u)
    assert improve.triangular_reduce(ctx) == []


def test_split_small():
    # PS members P0+P1, P0, P1+P2 over the atom basis; the pool knows P2
    ctx = ImproveContext(u=[[1, 1, 0], [1, 0, 1], [0, 0, 1]],
                         p_rows=[[-1, 1, 1]])
    out = split_decomposable(ctx, 0)
    assert out == ("split", [0, 1, 0], [1, 0, 0])
    assert ctx.u == [[0, 1, 0], [1, 0, 1], [0, 0, 1]]
    assert ctx.p_rows == [[-1, 0, 1]]
    assert abs(intlin.bareiss_det(ctx.u)) == 1


def test_split_refuses_when_containment_is_open():
    # the negative slot names an atom that its partner visibly contains
    ctx = ImproveContext(u=[[1, 0, 0], [1, 1, 0], [0, 1, 1]],
                         p_rows=[[0, 1, -1]])
    out = split_decomposable(ctx, 2)
    assert out[0] == "no_action"
    assert out[1]["reason"] == "containment not excluded"


def test_split_needs_a_negative_witness():
    ctx = ImproveContext(u=[[1, 0], [0, 1]], p_rows=[[1, 1]])
    out = split_decomposable(ctx, 0)
    assert out == ("no_action", {"reason": "no negative coordinate at column"})


# ---------------------------------------------------------------------------
# pruning

def test_co2_prune_matches_the_walkthrough():
    pool = [list(fixture_co2.EXTRA_PROJECTIVE)] + fixture_co2.p_rows()
    ctx = ImproveContext(u=fixture_co2.u_matrix(), p_rows=pool)
    admitted, discarded = prune_essential(ctx)
    assert admitted == [0, 3, 1]      # sums 0, then 1, then 3
    assert set(discarded) == {2}
    cert = discarded[2]
    assert cert["pool_weights"] == {0: 1}
    assert cert["basic_weights"] == {2: 1, 5: 1}
    # replay the certificate by hand
    rebuilt = [cert["pool_weights"].get(0, 0) * x
               for x in fixture_co2.EXTRA_PROJECTIVE]
    for slot, w in cert["basic_weights"].items():
        rebuilt[slot] += w
    assert rebuilt == pool[2]


def test_prune_keeps_an_empty_pool_empty():
    ctx = ImproveContext(u=[[1, 0], [0, 1]])
    assert prune_essential(ctx) == ([], {})


# ---------------------------------------------------------------------------
# subsums over the ordinary characters

def a5_singular_rows():
    table = fixture_a5.a5_table()
    slots = singular_slots(table, 5)
    assert slots == [3, 4]
    return [[row[k] for k in slots] for row in table.rows]


def test_subsum_defect_zero_block():
    rows = a5_singular_rows()
    ctx = ImproveContext(u=[[1]])
    assert rows[4] == [0, 0]  # the degree-5 character vanishes there
    assert subsum_test(ctx, [0, 0, 0, 0, 1], rows) == "indecomposable"
    assert subsum_test(ctx, [0, 0, 0, 0, 2], rows) == "inconclusive"


def test_subsum_agrees_with_the_part_search():
    rows = a5_singular_rows()
    ctx = ImproveContext(u=[[1, 0], [1, 1]], b_rows=[[-1, 1]])
    # first projective: trivial + degree-4 ordinary
    assert subsum_test(ctx, [1, 0, 0, 1, 0], rows) == "indecomposable"
    assert pim_test(ctx, 0) == "indecomposable"
    # second projective: an atom, and the three-constituent subsum test
    assert subsum_test(ctx, [0, 1, 1, 1, 0], rows) == "indecomposable"
    assert pim_test(ctx, 1) == "indecomposable"


def test_subsum_rejects_negative_multiplicities():
    ctx = ImproveContext(u=[[1]])
    with pytest.raises(DomainError):
        subsum_test(ctx, [1, -1], [[0], [0]])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_subsum_matches_exhaustive_search(data):
    k = data.draw(st.integers(2, 4))
    width = data.draw(st.integers(1, 2))
    coeffs = [data.draw(st.integers(0, 2)) for _ in range(k)]
    rows = [[data.draw(st.integers(-2, 2)) for _ in range(width)]
            for _ in range(k)]
    total = sum(coeffs)
    if total < 2:
        return
    found = False
    stack = [[]]
    for i in range(k):
        stack = [p + [v] for p in stack for v in range(coeffs[i] + 1)]
    for part in stack:
        t = sum(part)
        if not 1 <= t <= total - 1:
            continue
        if all(sum(part[i] * rows[i][w] for i in range(k)) == 0
               for w in range(width)):
            found = True
            break
    ctx = ImproveContext(u=[[1]])
    verdict = subsum_test(ctx, coeffs, rows)
    assert verdict == ("inconclusive" if found else "indecomposable")


# ---------------------------------------------------------------------------
# parity at the even prime

def test_m11_parity_pins_the_trivial_cover():
    ctx = ImproveContext(u=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    out = fong_parity(ctx, fixture_m11.T_ROWS, fixture_m11.DEGREES,
                      fixture_m11.REAL_ROWS, 2)
    assert out["status"] == "unique"
    assert out["solutions"] == [fixture_m11.UNIQUE_SOLUTION]
    assert out["containments"] == [fixture_m11.CONTAINMENT]


def test_parity_is_silent_at_odd_primes():
    ctx = ImproveContext(u=[[1]])
    out = fong_parity(ctx, [[1]], [1], [0], 3)
    assert out["status"] == "noop" and out["parity_rows"] == []


def test_parity_needs_a_unit_trivial_row():
    ctx = ImproveContext(u=[[1, 0], [0, 1]])
    with pytest.raises(DomainError):
        fong_parity(ctx, [[1, 1], [0, 1]], [1, 2], [0, 1], 2)


# ---------------------------------------------------------------------------
# proof events

def test_every_event_replays():
    ctx = co2_ctx(p_rows=fixture_co2.p_rows(),
                  pims=set(fixture_co2.SUBTRACT_PIMS))
    for j in range(16):
        pim_test(ctx, j)
    sigma = [0] * 16
    sigma[1] = 1
    subtract_indecomposable(ctx, 0, sigma)
    prune_essential(ctx)
    rows = a5_singular_rows()
    subsum_test(ctx, [1, 0, 0, 1, 0], rows)
    assert len(ctx.events) > 16
    assert all(replay_event(e) for e in ctx.events)
