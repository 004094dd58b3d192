import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from danielewski.errors import InputError, MoveError
from danielewski.graphcalc import (
    BlowDown,
    InnerBlowUp,
    MakeZero,
    MoveZero,
    OuterBlowUp,
    Reversion,
    WeightedGraph,
    Zigzag,
    apply,
    classify_zigzag,
    contract_to_minimal,
    is_minimal,
    make_standard_from_semistandard,
    normalize_via_zero_moves,
    parse_step,
    reversion,
    transcript,
)


def zz(text):
    return Zigzag.parse(text)


def random_tree(rng, n):
    weights = {i: rng.randint(-4, 2) for i in range(n)}
    edges = {frozenset((i, rng.randrange(i))) for i in range(1, n)}
    return WeightedGraph(weights, frozenset(edges))


def random_graph(rng, n):
    g = random_tree(rng, n)
    extra = set(g.edges)
    for _ in range(rng.randint(0, 3)):
        u, v = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if u != v:
            extra.add(frozenset((u, v)))
    return WeightedGraph(dict(g.weights), frozenset(extra))


# -- elementary moves ------------------------------------------------------------

def test_inner_blow_up_figure():
    assert str(zz("[[0,0]]").apply(InnerBlowUp(0, 1))) == "[[-1,-1,-1]]"


def test_outer_blow_up_figure():
    assert str(zz("[[0,0,-3]]").apply(OuterBlowUp(2))) == "[[0,0,-4,-1]]"


def test_blow_down_middle():
    z = zz("[[0,-1,-3]]")
    assert str(z.apply(BlowDown(1))) == "[[1,-2]]"


def test_blow_down_preconditions():
    with pytest.raises(MoveError, match="not -1"):
        zz("[[0,0,-3]]").apply(BlowDown(2))
    star = WeightedGraph({0: -1, 1: 0, 2: 0, 3: 0}, frozenset({frozenset((0, i)) for i in (1, 2, 3)}))
    with pytest.raises(MoveError, match="degree"):
        apply(star, BlowDown(0))
    triangle = WeightedGraph({0: -1, 1: 0, 2: 0}, frozenset({frozenset(e) for e in ((0, 1), (0, 2), (1, 2))}))
    with pytest.raises(MoveError, match="already meet"):
        apply(triangle, BlowDown(0))
    with pytest.raises(MoveError):
        apply(star, InnerBlowUp(1, 2))


def test_blow_down_isolated_and_leaf():
    g = WeightedGraph({0: -1, 1: 3}, frozenset())
    assert apply(g, BlowDown(0)) == WeightedGraph({1: 3}, frozenset())
    leaf = WeightedGraph({0: -1, 1: 3}, frozenset({frozenset((0, 1))}))
    assert apply(leaf, BlowDown(0)).weights == {1: 4}


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_blow_up_round_trips(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 12))
    fresh = g.fresh_id()
    v = rng.choice(g.vertices)
    up = apply(g, OuterBlowUp(v))
    assert len(up.weights) == len(g.weights) + 1
    assert apply(up, BlowDown(fresh)) == g
    if g.edges:
        u, w = sorted(rng.choice(sorted(g.edges, key=sorted)))
        up = apply(g, InnerBlowUp(u, w))
        assert len(up.weights) == len(g.weights) + 1
        assert apply(up, BlowDown(fresh)) == g


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_vertex_count_on_random_sequences(seed):
    rng = random.Random(seed)
    g = random_tree(rng, rng.randint(1, 8))
    for _ in range(15):
        n = len(g.weights)
        if not n:
            break
        choices = [OuterBlowUp(rng.choice(g.vertices))]
        if g.edges:
            choices.append(InnerBlowUp(*sorted(rng.choice(sorted(g.edges, key=sorted)))))
        downs = [v for v in g.vertices if g.weights[v] == -1 and g.degree(v) <= 2]
        if downs:
            choices.append(BlowDown(rng.choice(downs)))
        step = rng.choice(choices)
        g = apply(g, step)
        assert len(g.weights) == n + (-1 if isinstance(step, BlowDown) else 1)
        assert all(len(e) == 2 for e in g.edges)


# -- composites ------------------------------------------------------------------

def test_move_zero_left_example():
    assert str(zz("[[-2,0,-2]]").apply(MoveZero(1, "left"))) == "[[-1,0,-3]]"


@pytest.mark.parametrize("w", ["[[-2,0,-2]]", "[[3,0,-1,-2]]", "[[0,0,5]]"])
def test_move_zero_left_then_right(w):
    z = zz(w)
    i = z.weights.index(0, 1) if z.weights[0] == 0 else z.weights.index(0)
    back = z.apply(MoveZero(i, "left")).apply(MoveZero(i, "right"))
    assert back.weights == z.weights


def test_make_zero():
    assert str(zz("[[0,-3,-2]]").apply(MakeZero(0))) == "[[0,-2,-2]]"
    assert str(zz("[[0,1,-2]]").apply(MakeZero(0, inverse=True))) == "[[0,0,-2]]"
    assert str(zz("[[-2,-3,0]]").apply(MakeZero(2))) == "[[-2,-2,0]]"
    with pytest.raises(MoveError):
        zz("[[1,-3,-2]]").apply(MakeZero(0))


def test_standard_from_semistandard():
    out, steps = make_standard_from_semistandard(zz("[[0,-2,-3]]"))
    assert str(out) == "[[0,0,-3]]" and len(steps) == 2 and all(isinstance(s, MakeZero) for s in steps)
    out, steps = make_standard_from_semistandard(zz("[[0,0,-3]]"))
    assert str(out) == "[[0,0,-3]]" and steps == []
    out, steps = make_standard_from_semistandard(zz("[[0,-1,-4]]"))
    assert str(out) == "[[0,0,-4]]" and len(steps) == 1
    out, steps = make_standard_from_semistandard(zz("[[0,2,-4]]"))
    assert str(out) == "[[0,0,-4]]" and all(s.inverse for s in steps)
    with pytest.raises(InputError):
        make_standard_from_semistandard(zz("[[0,-2,-1]]"))


def test_reversion_examples():
    out, _ = reversion(zz("[[0,0,-4]]"))
    assert str(out) == "[[-4,0,0]]"
    out, _ = reversion(zz("[[0,0,-2,-3]]"))
    assert str(out) == "[[-2,-3,0,0]]" and str(out.reversed()) == "[[0,0,-3,-2]]"
    out, steps = reversion(zz("[[0,0]]"))
    assert str(out) == "[[0,0]]" and steps == []
    with pytest.raises(InputError):
        reversion(zz("[[0,-1,-3]]"))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, -2), min_size=0, max_size=6))
def test_reversion_twice_is_identity(tail):
    z = Zigzag.from_weights([0, 0] + tail)
    once, _ = reversion(z)
    assert list(once.weights) == tail + [0, 0]
    twice, _ = reversion(once)
    assert twice.weights == z.weights


@pytest.mark.parametrize(
    "start, step",
    [
        ("[[0,-2,-3]]", MakeZero(0)),
        ("[[0,2,-3]]", MakeZero(0, inverse=True)),
        ("[[-2,0,-2]]", MoveZero(1, "left")),
        ("[[-2,0,-2]]", MoveZero(1, "right")),
        ("[[0,0,-2,-3]]", Reversion()),
        ("[[0,0,-5]]", Reversion()),
    ],
)
def test_composites_replay(start, step):
    z = zz(start)
    direct = z.apply(step)
    cur = z
    for elem in z.expand(step):
        assert isinstance(elem, (OuterBlowUp, InnerBlowUp, BlowDown))
        cur = apply(cur, elem)
    assert cur.weights == direct.weights


# -- minimality and classification --------------------------------------------------

def test_contract_examples():
    out, steps = contract_to_minimal(zz("[[0,-1,-3]]"))
    assert str(out) == "[[1,-2]]" and steps == [BlowDown(1)]
    out, steps = contract_to_minimal(zz("[[0,0,-3]]"))
    assert str(out) == "[[0,0,-3]]" and steps == []


def test_fork_contracts_to_linear_form():
    # centre 0 (-1) with leaves 1, 2 (-2) and the chain 0 - 3 (-1) - 4 (-2)
    fork = WeightedGraph(
        {0: -1, 1: -2, 2: -2, 3: -1, 4: -2},
        frozenset({frozenset(e) for e in ((0, 1), (0, 2), (0, 3), (3, 4))}),
    )
    out, steps = contract_to_minimal(fork)
    assert [str(s) for s in steps] == ["blowdown@3", "blowdown@4"]
    assert out.is_path()
    z = Zigzag.from_graph(out)
    w = z.weights
    assert w[0] == -2 and w[2] == -2 and len(w) == 3
    assert str(z) == "[[-2,1,-2]]"


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_contract_output_is_minimal(seed):
    rng = random.Random(seed)
    g = random_tree(rng, rng.randint(1, 12))
    out, steps = contract_to_minimal(g)
    assert is_minimal(out)
    assert len(out.weights) == len(g.weights) - len(steps)


def test_classify():
    assert str(classify_zigzag(zz("[[0,0,-3]]"))) == "DanielewskiBoundary(3)"
    assert str(classify_zigzag(zz("[[-3,0,0]]"))) == "DanielewskiBoundary(3)"
    assert str(classify_zigzag(zz("[[0,-2,-3]]"))) == "Semistandard(-2)"
    assert str(classify_zigzag(zz("[[0,0,-3,-3]]"))) == "Standard"
    assert str(classify_zigzag(zz("[[-2,0,-2]]"))) == "Other"


def test_normalize_via_zero_moves():
    out, steps = normalize_via_zero_moves(zz("[[-2,0,-2]]"))
    assert str(out) == "[[0,0,-4]]"
    _, records = transcript(zz("[[-2,0,-2]]"), steps)
    mids = [r["after"] for r in records if r["step"].startswith("blowdown")]
    assert mids == ["[[-1,0,-3]]", "[[0,0,-4]]"]


# -- text forms -------------------------------------------------------------------

def test_parse_and_print():
    assert str(zz(" [[0, 0, −3]] ")) == "[[0,0,-3]]"
    for bad in ("[0,0]", "[[]]", "[[a]]"):
        with pytest.raises(InputError):
            zz(bad)


def test_graph_json_round_trip():
    g = random_graph(random.Random(3), 7)
    assert WeightedGraph.from_json(json.dumps(g.to_json())) == g
    with pytest.raises(InputError):
        WeightedGraph.from_json({"vertices": [{"id": 0, "weight": 1}], "edges": [[0, 0]]})
    with pytest.raises(InputError):
        WeightedGraph.from_json({"vertices": [{"id": 0}]})


def test_parse_step_positions():
    z = zz("[[0,0,-3]]").apply(InnerBlowUp(0, 1))  # order 0, 3, 1, 2
    assert parse_step("blowdown@1", z) == BlowDown(3)
    assert parse_step("inner@0-1", z) == InnerBlowUp(0, 3)
    assert parse_step("makezero-inv@0") == MakeZero(0, inverse=True)
    assert parse_step("movezero@2:right") == MoveZero(2, "right")
    assert parse_step("revert") == Reversion()
    with pytest.raises(InputError):
        parse_step("explode@1")


def test_transcript_format():
    final, records = transcript(zz("[[0,-2,-3]]"), [MakeZero(0), MakeZero(0)])
    assert str(final) == "[[0,0,-3]]"
    assert records[0] == {"step": "outer@0", "before": "[[0,-2,-3]]", "after": "[[-1,-1,-2,-3]]"}
    assert all(set(r) == {"step", "before", "after"} for r in records)
    assert records[-1]["after"] == "[[0,0,-3]]"
