import random

from hlcluster.appendix import CaseEnv, classify_vertex, expected_arrows
from hlcluster.gridseeds import gv, initial_seed, parse_gv
from hlcluster.heights import build_from_hlr
from hlcluster.hl import GhlSpec
from hlcluster.sequences import ell_policy, q_prefix, seq_S_prime, to_Sm_prime
from hlcluster.verify import random_ghl_spec

SPEC = GhlSpec((2, 4), (-5, -1), 3, (2, 0))


def prepared(spec):
    xi, n = build_from_hlr(spec.idx, spec.as_)
    ell = ell_policy(n, spec.r, max(abs(v) for v in spec.rs))
    seed = initial_seed(n, ell)
    seed, _ = to_Sm_prime(seed, xi, spec.r)
    return xi, n, ell, seed


def test_classification_by_position():
    xi, n, ell, _ = prepared(SPEC)
    # column 2 (= i_1, depth 2): first, middle, last
    assert classify_vertex(CaseEnv(SPEC, xi, 2, 2, 3)) == (2, "")
    assert classify_vertex(CaseEnv(SPEC, xi, 2, 1, 3)) == (3, "")
    assert classify_vertex(CaseEnv(SPEC, xi, 2, 0, 3)) == (3, "last")
    # column 3 rises with depth 2; column 4 descends with depth 2
    assert classify_vertex(CaseEnv(SPEC, xi, 3, 2, 3)) == (7, "")
    assert classify_vertex(CaseEnv(SPEC, xi, 3, 1, 3)) == (6, "")
    assert classify_vertex(CaseEnv(SPEC, xi, 3, 0, 3)) == (5, "")
    assert classify_vertex(CaseEnv(SPEC, xi, 4, 0, 3)) == (8, "")
    assert classify_vertex(CaseEnv(SPEC, xi, 4, 1, 3)) == (9, "")
    assert classify_vertex(CaseEnv(SPEC, xi, 4, 2, 3)) == (10, "")


def test_depth_zero_cases():
    spec = GhlSpec((2, 4), (-5, -1), 2, (0, 0))
    xi, n, ell, _ = prepared(spec)
    assert classify_vertex(CaseEnv(spec, xi, 2, 0, 2)) == (1, "")
    assert classify_vertex(CaseEnv(spec, xi, 3, 0, 2)) == (4, "")
    down = GhlSpec((2, 4), (-1, -5), 2, (0, 0))
    xi2, _, _, _ = prepared(down)
    assert classify_vertex(CaseEnv(down, xi2, 2, 0, 2)) == (1, "reversed")


def test_first_vertex_table_matches_prepared_quiver():
    # the first vertex of the run sees the prepared quiver itself
    xi, n, ell, seed = prepared(SPEC)
    case_id, want = expected_arrows(SPEC, xi, 2, 2, SPEC.r, ell)
    assert case_id == 2
    got = {(u, d): m for u, m, d in seed.quiver.arrows_at(gv(2, SPEC.r + 2))}
    assert got == want


def test_mirror_reflects_rows():
    spec = GhlSpec((2, 4), (-5, -1), 3, (-2, 0))
    xi, n, ell, _ = prepared(spec)
    case_id, arrows = expected_arrows(spec, xi, 2, -2, spec.r, ell)
    assert case_id == 2
    rows = {parse_gv(v)[1] for (v, _), m in arrows.items()}
    # the reflected first-vertex picture sits below row r
    assert rows and max(rows) <= spec.r + 1
    assert any(parse_gv(v)[1] < spec.r for (v, _) in arrows)


def test_q_prefix_agrees_with_incremental_walk():
    rng = random.Random(13)
    for _ in range(5):
        spec = random_ghl_spec(rng, kmax=2, rmax=2, omax=1)
        xi, n, ell, seed = prepared(spec)
        sprime, _ = seq_S_prime(xi, spec.idx, spec.as_, spec.rs, spec.r, n)
        q = seed.quiver
        for v in sprime:
            j, row = parse_gv(v)
            pref = q_prefix(seed, sprime, j, row - spec.r, spec.r)
            assert pref == q, (spec, v)
            q = q.mutate(v)
