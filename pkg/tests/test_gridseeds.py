import pytest

from hlcluster.gridseeds import (
    ExchangeRecord,
    IncomparableExchangeError,
    TrackedSeed,
    gv,
    initial_seed,
    mutate_tracked,
    run,
    t_system_conform,
)
from hlcluster.quiver import FrozenVertexError, IcedQuiver
from hlcluster.ymon import CartanData, kr_monomial, yvar


def test_initial_seed_figure_labels():
    seed = initial_seed(6, 4)
    # all 30 labels: X^(xi_i - 2r + 2)_{i,r}
    for i in range(1, 7):
        base = -1 if i % 2 == 1 else 0
        for r in range(1, 6):
            assert seed.labels[gv(i, r)] == kr_monomial(i, base - 2 * r + 2, r)
    assert seed.labels[gv(1, 2)] == yvar(1, -3) * yvar(1, -1)
    assert seed.labels[gv(2, 5)] == kr_monomial(2, -8, 5)


def test_initial_seed_arrows_spot():
    seed = initial_seed(6, 4)
    q = seed.quiver
    # odd column diagonals, even column horizontals, vertical ups
    assert q.entry(gv(1, 1), gv(2, 2)) == 1
    assert q.entry(gv(2, 1), gv(1, 1)) == 1
    assert q.entry(gv(2, 1), gv(3, 1)) == 1
    assert q.entry(gv(1, 2), gv(1, 1)) == 1
    assert q.entry(gv(3, 2), gv(2, 3)) == 1
    # frozen bottom row: no sideways arrows, still points up
    assert q.is_frozen(gv(2, 5))
    assert q.entry(gv(2, 5), gv(1, 5)) == 0
    assert q.entry(gv(2, 5), gv(2, 4)) == 1
    # no diagonal out of the frozen row
    assert all(q.entry(gv(1, 5), gv(j, k)) <= 0 or (j, k) == (1, 4) for j in (1, 2) for k in (4, 5))


def test_initial_seed_minimal():
    seed = initial_seed(1, 1)
    assert set(seed.quiver.vertices) == {gv(1, 1), gv(1, 2)}
    assert seed.quiver.frozen == frozenset([gv(1, 2)])
    assert seed.quiver.arrows() == [(gv(1, 2), gv(1, 1), 1)]
    with pytest.raises(ValueError):
        initial_seed(0, 1)


def test_mutate_figure_vertex():
    seed = initial_seed(6, 4)
    out, rec = mutate_tracked(seed, gv(2, 1))
    assert rec.p_in == kr_monomial(2, -2, 2)
    assert rec.p_out == yvar(1, -1) * yvar(3, -1)
    assert rec.chosen == "in"
    assert rec.new == yvar(2, -2)
    assert out.labels[gv(2, 1)] == yvar(2, -2)
    assert t_system_conform(rec, seed.cartan)


def test_mutate_involution():
    seed = initial_seed(4, 3)
    v = gv(3, 2)
    once, _ = mutate_tracked(seed, v)
    twice, rec = mutate_tracked(once, v)
    assert twice.labels == seed.labels
    assert twice.quiver == seed.quiver


def test_mutate_frozen_rejected():
    seed = initial_seed(3, 2)
    with pytest.raises(FrozenVertexError):
        mutate_tracked(seed, gv(1, 3))


def test_run_and_reverse():
    seed = initial_seed(5, 3)
    seq = [gv(2, 1), gv(4, 1), gv(1, 1), gv(2, 2)]
    fwd = run(seed, seq)
    assert len(fwd.log) == 4
    back = run(fwd, list(reversed(seq)))
    assert back.labels == seed.labels
    assert back.quiver == seed.quiver
    assert run(seed, []) is seed


def test_incomparable_aborts():
    # two isolated mutable vertices with unrelated labels forced into one
    # exchange: a 2-path u -> v -> w with non-KR labels at u, w
    q = IcedQuiver.from_arrows(["u", "v", "w"], [], [("u", "v", 1), ("v", "w", 1)])
    labels = {"u": yvar(1, 0), "v": yvar(2, 1), "w": yvar(2, 3)}
    seed = TrackedSeed(q, labels, CartanData(3))
    with pytest.raises(IncomparableExchangeError) as exc:
        mutate_tracked(seed, "v")
    assert exc.value.record.vertex == "v"


def test_t_system_conform_negative():
    # a band-type exchange is not KR-shaped
    rec = ExchangeRecord(
        "x",
        yvar(1, 0),
        yvar(1, -1) * yvar(2, 0),
        yvar(2, -2),
        "in",
        yvar(1, -1) * yvar(2, 0) / yvar(1, 0),
    )
    assert not t_system_conform(rec, CartanData(2))


def test_seed_json_round_trip():
    seed = initial_seed(3, 2)
    seed, _ = mutate_tracked(seed, gv(2, 1))
    data = seed.to_json()
    back = TrackedSeed.from_json(data, seed.cartan)
    assert back.labels == seed.labels
    assert back.quiver == seed.quiver
    assert [r.to_json() for r in back.log] == [r.to_json() for r in seed.log]
