import dataclasses

import pytest
from hypothesis import given, strategies as st

from partition_atlas.graph import OrientedEdge, UnorientedEdge
from partition_atlas.invariants import INVARIANT_NAMES
from partition_atlas.layers import (
    Cone,
    GradientDag,
    InternalConsistencyError,
    InvalidPathError,
    boundary_rows,
    check_acyclic,
    classify_axial,
    edge_boundary,
    gradient_dag,
    is_corridor,
    longest_strict_path,
    threshold_layer,
)

from conftest import P, graph, table, vid


def test_boundary_degree_g4():
    b = edge_boundary(table(4), "d", 2)
    assert set(b.edges) == {UnorientedEdge(vid(4, "[4]"), vid(4, "[3,1]")),
                            UnorientedEdge(vid(4, "[2,1,1]"), vid(4, "[1,1,1,1]"))}
    assert b.B_r == 2 and b.B_r_plus == b.B_r_minus == 2


def test_boundary_below_minimum_is_empty():
    b = edge_boundary(table(9), "d", min(table(9).d))
    assert b.edges == [] and b.B_r == b.B_r_plus == b.B_r_minus == 0


def test_boundary_delta_g4():
    b = edge_boundary(table(4), "delta", 2)
    assert set(b.edges) == {UnorientedEdge(0, 1), UnorientedEdge(3, 4)}


@pytest.mark.parametrize("n", range(1, 19))
def test_boundary_balance(n):
    t = table(n)
    for f in INVARIANT_NAMES:
        for _, r, B, plus, minus in boundary_rows(t, f):
            assert plus == minus == B


def test_threshold_layers_nest():
    t = table(10)
    for f in ("d", "delta", "sigma"):
        vals = t.values(f)
        for r in range(min(vals), max(vals) + 1):
            assert threshold_layer(t, f, r + 1).members <= threshold_layer(t, f, r).members


def test_gradient_dag_degree_g4():
    dag = gradient_dag(table(4), "d")
    assert len(dag.up) == 4
    assert dag.plateau == (UnorientedEdge(vid(4, "[3,1]"), vid(4, "[2,1,1]")),)
    ok, order = check_acyclic(dag)
    assert ok and sorted(order) == list(range(5))
    pos = {v: i for i, v in enumerate(order)}
    assert all(pos[s] < pos[t] for s, t in dag.up)


def test_constant_invariant_is_all_plateau():
    dag = gradient_dag(table(2), "sigma")
    assert dag.up == () and len(dag.plateau) == 1
    t = dataclasses.replace(table(7), d=(5,) * len(table(7).d))
    dag = gradient_dag(t, "d")
    assert dag.up == () and len(dag.plateau) == graph(7).edge_count


def test_cycle_detection():
    dag = GradientDag("fake", 3, (OrientedEdge(0, 1), OrientedEdge(1, 2), OrientedEdge(2, 0)), ())
    assert check_acyclic(dag) == (False, None)
    with pytest.raises(InternalConsistencyError):
        longest_strict_path(dag)


@pytest.mark.parametrize("n", range(1, 19))
def test_gradients_acyclic_and_bounded(n):
    t = table(n)
    oriented = 2 * graph(n).edge_count
    for f in INVARIANT_NAMES:
        dag = gradient_dag(t, f)
        assert 2 * len(dag.up) + 2 * len(dag.plateau) == oriented
        length, path = longest_strict_path(dag)
        assert length <= len(set(t.values(f))) - 1
        vals = [t.values(f)[v] for v in path]
        assert vals == sorted(set(vals))


def _all_paths_oracle(dag):
    succ = dag.successors()
    best = (0, [0]) if dag.vertex_count else (0, [])
    stack = [[v] for v in range(dag.vertex_count)]
    while stack:
        p = stack.pop()
        cand = (len(p) - 1, p)
        if cand[0] > best[0] or (cand[0] == best[0] and p < best[1]):
            best = cand
        stack.extend(p + [u] for u in succ[p[-1]])
    return best


@given(st.integers(1, 9), st.sampled_from(INVARIANT_NAMES))
def test_longest_path_matches_enumeration(n, f):
    dag = gradient_dag(table(n), f)
    assert longest_strict_path(dag) == _all_paths_oracle(dag)


def test_longest_path_fixtures():
    assert longest_strict_path(gradient_dag(table(4), "sigma")) == (1, [0, 1])
    length, _ = longest_strict_path(gradient_dag(table(4), "d"))
    assert length == 1 and len(set(table(4).d)) - 1 == 2
    assert longest_strict_path(gradient_dag(table(1), "d")) == (0, [0])


def test_corridor_examples():
    t = table(4)
    assert is_corridor(t, [P("[4]"), P("[3,1]")], Cone.parse("+++")).ok
    check = is_corridor(t, [P("[3,1]"), P("[2,1,1]")], Cone.parse("***/strict"))
    assert not check.ok and check.failed_step == 0 and check.signature == (0, 0, 0)
    assert is_corridor(t, [P("[2,2]")], Cone.parse("000/strict")).ok
    with pytest.raises(InvalidPathError):
        is_corridor(t, [P("[4]"), P("[2,2]")], Cone.parse("***"))


def test_cone_parse():
    c = Cone.parse("+-*/strict")
    assert c.constraints == ("+", "-", "*") and c.strict_somewhere
    assert str(c) == "+-*/strict"
    for bad in ("++", "++x", "+++/weak", "++++"):
        with pytest.raises(ValueError):
            Cone.parse(bad)
    assert Cone.parse("!0*").contains((2, 0, -1))
    assert not Cone.parse("!0*").contains((0, 0, -1))


def _naive(spec, sig):
    body, _, flag = spec.partition("/")
    ok = True
    for c, x in zip(body, sig):
        ok &= {"+": x >= 0, "-": x <= 0, "0": x == 0, "!": x != 0, "*": True}[c]
    return ok and (flag != "strict" or any(sig))


@given(
    st.integers(2, 14),
    st.text(alphabet="+-0*!", min_size=3, max_size=3),
    st.booleans(),
    st.lists(st.integers(0, 10_000), min_size=1, max_size=8),
)
def test_corridor_matches_per_step_recheck(n, body, strict, choices):
    g, t = graph(n), table(n)
    path = [choices[0] % len(g)]
    for c in choices[1:]:
        row = g.adjacency[path[-1]]
        path.append(row[c % len(row)])
    spec = body + ("/strict" if strict else "")
    steps = [(t.d[y] - t.d[x], t.delta[y] - t.delta[x], t.sigma[y] - t.sigma[x])
             for x, y in zip(path, path[1:])]
    check = is_corridor(t, path, Cone.parse(spec))
    assert check.ok == all(_naive(spec, s) for s in steps)
    if not check.ok:
        assert check.failed_step == next(i for i, s in enumerate(steps) if not _naive(spec, s))


def test_classify_axial():
    t = table(4)
    e = OrientedEdge(vid(4, "[4]"), vid(4, "[3,1]"))
    assert classify_axial(t, e) == "inward"
    assert classify_axial(t, e.reversed()) == "outward"
    assert classify_axial(t, OrientedEdge(vid(4, "[3,1]"), vid(4, "[2,1,1]"))) == "neutral"


@pytest.mark.parametrize("n", [5, 12, 17])
def test_upward_threshold_crossing(n):
    t = table(n)
    for f in INVARIANT_NAMES:
        vals = t.values(f)
        rs = range(min(vals), max(vals) + 2)
        layers = {r: threshold_layer(t, f, r).members for r in rs}
        for e in graph(n).oriented_edges():
            up = any(e.source not in layers[r] and e.target in layers[r] for r in rs)
            assert (vals[e.target] > vals[e.source]) == up
