import numpy as np
import pytest

from maxsep.core import (
    ElementSet,
    GroundSet,
    Inseparable,
    InstrumentedClosure,
    Separated,
    hss_decide_kakutani,
    is_closed,
    is_half_space,
    mcs_separate,
    resolve_order,
    verify_closure_laws,
)
from maxsep.fixtures import (
    chain_interval,
    dropping_operator,
    padded_operator,
    punctured_threshold_system,
    sparse_system,
    threshold_system,
)
from maxsep.graphs import GammaClosure, Graph
from maxsep.oracles import half_spaces


def test_element_set_algebra():
    g = GroundSet(6)
    a = g.set_of([0, 2, 4])
    b = g.set_of([2, 3])
    assert (a & b).members() == [2]
    assert (a | b).members() == [0, 2, 3, 4]
    assert (a - b).members() == [0, 4]
    assert a.complement().members() == [1, 3, 5]
    assert len(a) == 3 and 4 in a and 1 not in a
    assert a == g.set_of([4, 2, 0])
    assert a != b
    assert list(iter(b)) == [2, 3]
    assert g.full().complement() == g.empty()


def test_element_set_bool_array_roundtrip():
    g = GroundSet(70)  # crosses the 64-bit word boundary
    rng = np.random.default_rng(5)
    for _ in range(20):
        bits = rng.integers(0, 2, size=70, dtype=np.uint8)
        es = ElementSet.from_bool_array(g, bits)
        assert np.array_equal(es.to_bool_array(), bits)


def test_ground_set_validation():
    with pytest.raises(ValueError):
        GroundSet(0)
    with pytest.raises(ValueError):
        GroundSet(3, labels=["a"])
    g = GroundSet(3, labels=["a", "b", "c"])
    assert g.index_of("b") == 1
    assert g.index_of("2") == 2
    with pytest.raises(KeyError):
        g.index_of("zzz")
    with pytest.raises(ValueError):
        g.set_of([3])


def test_resolve_order():
    assert resolve_order("asc", 4) == [0, 1, 2, 3]
    assert resolve_order(None, 3) == [0, 1, 2]
    assert resolve_order([2], 4) == [2, 0, 1, 3]
    r1 = resolve_order("random", 6, seed=9)
    assert sorted(r1) == list(range(6))
    assert r1 == resolve_order("random", 6, seed=9)
    with pytest.raises(ValueError):
        resolve_order([5], 3)
    with pytest.raises(ValueError):
        resolve_order([1, 1], 3)


def test_chain_favorable_order_three_calls():
    # separating {2} from {1} on the chain, trying the far end first,
    # finishes in one iteration with three closure calls in total
    n = 10
    op = chain_interval(n)
    out = mcs_separate(op, op.ground.set_of([1]), op.ground.set_of([0]), order=[n - 1])
    assert isinstance(out, Separated)
    assert out.closure_calls == 3
    assert out.h1.members() == list(range(1, n))
    assert out.h2.members() == [0]
    assert out.is_partition()


def test_chain_adversarial_order_worst_case():
    for n in (5, 10, 17):
        op = chain_interval(n)
        out = mcs_separate(op, op.ground.set_of([0]), op.ground.set_of([1]), order="asc")
        assert out.closure_calls == 2 * n - 2
        assert out.h1.members() == [0]
        assert out.h2.members() == list(range(1, n))


def test_chain_inseparable():
    op = chain_interval(5)
    out = mcs_separate(op, op.ground.set_of([0, 2]), op.ground.set_of([1]))
    assert isinstance(out, Inseparable)


def test_empty_inputs_rejected():
    op = chain_interval(4)
    with pytest.raises(ValueError):
        mcs_separate(op, op.ground.empty(), op.ground.set_of([1]))
    with pytest.raises(ValueError):
        mcs_separate(op, op.ground.set_of([1]), op.ground.empty())


def test_sparse_system_costs_worst_case_on_every_order():
    n = 7
    op = sparse_system(n)
    for seed in range(6):
        out = mcs_separate(
            op, op.ground.set_of([0]), op.ground.set_of([1]), order="random", seed=seed
        )
        assert out.closure_calls == 2 * n - 2
        assert out.h1.members() == [0] and out.h2.members() == [1]


def test_instrumented_counter_monotone():
    op = InstrumentedClosure(chain_interval(5))
    xs = op.ground.set_of([1, 3])
    op(xs)
    op(xs)
    assert op.calls == 2
    op.reset()
    assert op.calls == 0
    out = mcs_separate(op, op.ground.set_of([0]), op.ground.set_of([4]))
    # shared instrument keeps counting; the outcome reports the per-run delta
    assert op.calls == out.closure_calls


def test_is_closed_and_half_space_on_chain():
    op = chain_interval(5)
    g = op.ground
    assert is_closed(op, g.set_of([1, 2]))
    assert not is_closed(op, g.set_of([0, 2]))
    assert is_closed(op, g.full())
    assert is_half_space(op, g.set_of([0, 1]))
    assert not is_half_space(op, g.set_of([1, 2]))
    # empty set: half-space exactly when the empty closure is empty
    assert is_half_space(op, g.empty())
    assert not is_half_space(padded_operator(4), GroundSet(4).empty())


def test_hss_decide_kakutani_examples():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    op = InstrumentedClosure(GammaClosure(path))
    assert hss_decide_kakutani(op, op.ground.set_of([0]), op.ground.set_of([2]))
    assert op.calls == 2
    assert not hss_decide_kakutani(op, op.ground.set_of([0, 2]), op.ground.set_of([1]))
    chain = chain_interval(5)
    assert hss_decide_kakutani(chain, chain.ground.set_of([0, 1]), chain.ground.set_of([3, 4]))


def _assert_maximal_outcome(op, a, b, out):
    assert out.h1.isdisjoint(out.h2)
    assert a.issubset(out.h1) and b.issubset(out.h2)
    assert is_closed(op, out.h1) and is_closed(op, out.h2)
    for e in (out.h1 | out.h2).complement().members():
        assert not op(out.h1.add(e)).isdisjoint(out.h2)
        assert not op(out.h2.add(e)).isdisjoint(out.h1)


def test_outcome_invariants_across_fixtures(rng):
    ops = [
        chain_interval(9),
        threshold_system(8),
        punctured_threshold_system(6, threshold_system(6).ground.set_of([0, 1, 2])),
        sparse_system(6),
    ]
    for op in ops:
        g = op.ground
        for trial in range(30):
            a_bits = rng.integers(0, 2, size=g.size, dtype=np.uint8)
            b_bits = rng.integers(0, 2, size=g.size, dtype=np.uint8)
            a = ElementSet.from_bool_array(g, a_bits)
            b = ElementSet.from_bool_array(g, b_bits)
            if not a or not b:
                continue
            out = mcs_separate(op, a, b, order="random", seed=trial)
            assert isinstance(out, (Separated, Inseparable))
            if isinstance(out, Inseparable):
                assert not op(a).isdisjoint(op(b))
                continue
            assert out.closure_calls <= 2 * g.size - 2
            _assert_maximal_outcome(op, a, b, out)


def test_half_space_separates_inputs_iff_closures():
    # a half-space pair separates (A, B) exactly when it separates
    # their closures
    op = chain_interval(6)
    g = op.ground
    hs = half_spaces(op)
    rng = np.random.default_rng(3)
    for _ in range(60):
        a = ElementSet.from_bool_array(g, rng.integers(0, 2, size=6, dtype=np.uint8))
        b = ElementSet.from_bool_array(g, rng.integers(0, 2, size=6, dtype=np.uint8))
        if not a or not b:
            continue
        ca, cb = op(a), op(b)
        for h in hs:
            hc = h.complement()
            sep_inputs = a.issubset(h) and b.issubset(hc)
            sep_closures = ca.issubset(h) and cb.issubset(hc)
            assert sep_inputs == sep_closures


def test_nonempty_empty_closure_blocks_separation():
    # an operator with a non-empty empty-closure admits no half-space
    # separation of non-empty sets: there are no half-spaces at all
    op = padded_operator(5)
    assert half_spaces(op) == []


def test_verify_closure_laws_pass_and_witnesses():
    assert verify_closure_laws(chain_interval(5), trials=100, seed=0).ok()
    rep = verify_closure_laws(dropping_operator(6), trials=200, seed=0)
    assert rep.extensivity is not None
    assert 0 in rep.extensivity
    assert rep.failures()
    with pytest.raises(ValueError):
        verify_closure_laws(chain_interval(3), trials=0)


def test_verify_closure_laws_catches_non_idempotent():
    g = GroundSet(6)

    def creep(xs):
        if not xs or len(xs) >= 6:
            return xs
        hi = max(xs.members())
        return xs.add(min(hi + 1, 5))

    from maxsep.core import FunctionClosure

    rep = verify_closure_laws(FunctionClosure(g, creep), trials=300, seed=1)
    assert not rep.ok()
    assert rep.extensivity is None  # creep only ever adds elements
