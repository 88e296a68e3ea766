from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from upic.groups import (
    GroupTableError,
    all_subgroups,
    cyclic_subgroups,
    make_cyclic,
    make_dihedral,
    make_klein,
    make_product,
    make_quaternion,
    make_symmetric,
    preset_groups,
    validate_group,
)

PRESETS = preset_groups(8)


def test_z2_table_valid():
    G = validate_group([[0, 1], [1, 0]])
    assert G.order == 2 and G.inverse == (0, 1)


def test_missing_inverse_reports_witness():
    with pytest.raises(GroupTableError) as err:
        validate_group([[0, 1], [1, 1]])
    assert "inverse" in str(err.value)
    assert err.value.witness == (1,)


def test_associativity_witness():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupTableError) as err:
        validate_group(table)
    a, b, c = err.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


@pytest.mark.parametrize(
    "table", [[], [[0, 1]], [[1, 0], [0, 1]], [[0, 2], [1, 0]], [[0, True], [1, 0]]]
)
def test_malformed_tables(table):
    with pytest.raises(GroupTableError):
        validate_group(table)


def test_klein_valid():
    K = make_klein()
    assert validate_group(K.mult).order == 4
    assert all(K.element_order(g) <= 2 for g in range(4))


@pytest.mark.parametrize(
    "G, count, orders",
    [
        (make_cyclic(4), 3, [1, 2, 4]),
        (make_klein(), 4, [1, 2, 2, 2]),
        (make_symmetric(3), 5, [1, 2, 2, 2, 3]),
    ],
)
def test_cyclic_subgroup_counts(G, count, orders):
    subs = cyclic_subgroups(G)
    assert len(subs) == count
    assert sorted(H.order for H in subs) == orders


def test_constructors():
    assert make_cyclic(1).is_trivial()
    assert make_cyclic(2).mult == ((0, 1), (1, 0))
    assert make_product(make_cyclic(2), make_cyclic(2)) == make_klein()
    assert make_dihedral(4).order == 8
    Q = make_quaternion()
    assert Q.order == 8
    assert sum(1 for g in range(8) if Q.element_order(g) == 2) == 1
    with pytest.raises(ValueError):
        make_cyclic(0)


@pytest.mark.parametrize("G", PRESETS, ids=lambda G: G.name)
def test_preset_group_laws(G):
    assert validate_group(G.mult).mult == G.mult
    for H in cyclic_subgroups(G):
        assert G.order % H.order == 0
        assert any(G.element_order(g) == H.order for g in H.elements)
    covered = set().union(*(H.elements for H in cyclic_subgroups(G)))
    assert covered == set(range(G.order))


@pytest.mark.parametrize("G", PRESETS, ids=lambda G: G.name)
def test_all_subgroups_closed(G):
    subs = all_subgroups(G)
    assert subs[0].elements == (0,)
    assert subs[-1].elements == tuple(range(G.order))
    for H in subs:
        s = set(H.elements)
        assert all(G.mult[a][b] in s for a, b in product(H.elements, repeat=2))
        T = H.table()
        assert validate_group(T.mult).order == H.order


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6))
def test_cyclic_products(n, m):
    G = make_product(make_cyclic(n), make_cyclic(m))
    assert G.order == n * m
    # subgroups of a cyclic group correspond to divisors
    assert len(cyclic_subgroups(make_cyclic(n))) == sum(1 for d in range(1, n + 1) if n % d == 0)
