"""Property tests for the Smith-normal-form stack under excat.fincat.groups."""

import itertools

from hypothesis import given, settings, strategies as st

from excat.fincat.groups import (
    FinAb,
    Subgroup,
    group_from_oracle,
    quotient_group,
    smith_normal_form,
    solve_affine,
    solve_mod,
)

small_int = st.integers(min_value=-9, max_value=9)


@st.composite
def matrices(draw, max_dim=4):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    return [
        [draw(small_int) for _ in range(cols)] for _ in range(rows)
    ]


def det(m):
    n = len(m)
    if n == 0:
        return 1
    if len(m[0]) != n:
        raise ValueError("square only")
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # count inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


@given(matrices())
@settings(max_examples=150, derandomize=True)
def test_snf_diagonalizes_with_unimodular_transforms(a):
    u, d, v, vinv = smith_normal_form(a)
    rows, cols = len(a), len(a[0])
    assert matmul(matmul(u, a), v) == d
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    ident = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    assert matmul(v, vinv) == ident
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert d[i][j] == 0
    diag = [d[i][i] for i in range(min(rows, cols))]
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        if x:
            assert y % x == 0
        else:
            assert y == 0


@st.composite
def modular_systems(draw):
    rows = draw(st.integers(1, 3))
    cols = draw(st.integers(1, 3))
    a = [[draw(small_int) for _ in range(cols)] for _ in range(rows)]
    orders = [draw(st.sampled_from([2, 3, 4])) for _ in range(rows)]
    x0 = [draw(st.integers(0, 5)) for _ in range(cols)]
    return a, orders, x0


@given(modular_systems())
@settings(max_examples=150, derandomize=True)
def test_solve_mod_finds_planted_solutions(sys_):
    a, orders, x0 = sys_
    rhs = [
        sum(a[i][j] * x0[j] for j in range(len(x0))) % orders[i]
        for i in range(len(a))
    ]
    solved = solve_mod(a, rhs, orders)
    assert solved is not None
    particular, kernel = solved
    for i in range(len(a)):
        got = sum(a[i][j] * particular[j] for j in range(len(particular)))
        assert (got - rhs[i]) % orders[i] == 0
    for vec in kernel:
        for i in range(len(a)):
            got = sum(a[i][j] * vec[j] for j in range(len(vec)))
            assert got % orders[i] == 0


@st.composite
def homomorphic_systems(draw):
    """Systems whose columns induce maps Z/u_j -> Z/o_i (the real use case)."""
    rows = draw(st.integers(1, 3))
    cols = draw(st.integers(1, 3))
    m = draw(st.sampled_from([2, 3, 4, 6]))
    a = [[draw(small_int) for _ in range(cols)] for _ in range(rows)]
    x0 = [draw(st.integers(0, m - 1)) for _ in range(cols)]
    return a, [m] * rows, [m] * cols, x0


@given(homomorphic_systems())
@settings(max_examples=60, derandomize=True)
def test_solve_affine_matches_brute_force_count(sys_):
    a, orders, unknown_orders, x0 = sys_
    rhs = [
        sum(a[i][j] * x0[j] for j in range(len(x0)))
        for i in range(len(a))
    ]
    sols = solve_affine(unknown_orders, a, rhs, orders)
    brute = [
        x
        for x in itertools.product(*(range(n) for n in unknown_orders))
        if all(
            (sum(a[i][j] * x[j] for j in range(len(x))) - rhs[i]) % orders[i] == 0
            for i in range(len(a))
        )
    ]
    if sols is None:
        assert brute == []
        return
    listed = sorted(set(sols))
    assert listed == sorted(brute)
    assert sols.size == len(brute)


def test_subgroup_matches_brute_force_closure():
    g = FinAb((4, 2, 3))
    gens = [(2, 1, 0), (0, 0, 2)]
    sub = Subgroup.from_gens(g, gens)
    closure = {g.zero()}
    frontier = [g.zero()]
    while frontier:
        cur = frontier.pop()
        for gen in gens:
            nxt = g.add(cur, gen)
            if nxt not in closure:
                closure.add(nxt)
                frontier.append(nxt)
    assert sub.size == len(closure)
    assert set(sub.elements()) == closure
    for elem in closure:
        assert elem in sub


def test_quotient_group_laws():
    g = FinAb((4, 4))
    sub = Subgroup.from_gens(g, [(2, 2)])
    q = quotient_group(g, sub)
    assert q.group.size * sub.size == g.size
    for a in g.elements():
        assert q.proj(g.add(a, (2, 2))) == q.proj(a)
        assert q.proj(q.lift(q.proj(a))) == q.proj(a)
    for b in g.elements():
        for a in g.elements():
            assert q.proj(g.add(a, b)) == q.group.add(q.proj(a), q.proj(b))
    # kernel of proj is exactly the subgroup
    kernel = {a for a in g.elements() if not any(q.proj(a))}
    assert kernel == set(sub.elements())


def test_group_from_oracle_recovers_structure():
    g, to_c, from_c = group_from_oracle(
        list(itertools.product(range(2), range(4))),
        lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 4),
        (0, 0),
    )
    assert sorted(g.orders) == [2, 4]
    assert len(to_c) == 8
    # to_coords is a group isomorphism
    for a in to_c:
        for b in to_c:
            s = ((a[0] + b[0]) % 2, (a[1] + b[1]) % 4)
            assert g.add(to_c[a], to_c[b]) == to_c[s]
