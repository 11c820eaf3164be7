"""Exact linear algebra over finitely generated abelian groups.

Everything in this package that smells like a search — inverses, witnesses
for sequence equivalence, axiom counterexamples, kernels of action maps —
reduces to solving integer linear systems modulo a tuple of cyclic orders.
This module is that solver.

A finite abelian group is presented as a product of cyclic groups and is
identified with its tuple of orders; an element is a tuple of integers with
``e[i]`` reduced modulo ``orders[i]``:

    >>> G = FinAb((2, 4))
    >>> G.add((1, 3), (1, 2))
    (0, 1)
    >>> G.size
    8

The workhorses:

- :func:`smith_normal_form` — ``U @ A @ V == D`` over the integers with
  unimodular ``U``, ``V`` (and ``V`` inverse tracked), ``D`` diagonal with a
  divisibility chain.
- :func:`solve_mod` — all solutions of ``A x ≡ b (mod row_orders)`` as a
  particular solution plus a basis of the homogeneous solution lattice.
- :class:`Subgroup` — a subgroup of a :class:`FinAb` in basis form: every
  element is a unique combination of independent basis elements, so subgroups
  can be enumerated, joined, compared and quotiented without listing the
  ambient group.
- :func:`quotient_group` — ``ambient / subgroup`` as a new :class:`FinAb`
  together with projection and (set-theoretic) lifting maps.
- :func:`group_from_oracle` — reverse-engineer the cyclic decomposition of a
  small abelian group given only its element list and addition function.

All algorithms are deterministic: pivot choices scan row-major for the
smallest nonzero magnitude, and every enumeration is lexicographic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Integer matrix product.

    >>> mat_mul([[1, 2]], [[3], [4]])
    [[11]]
    """
    if not a:
        return []
    inner = len(b)
    assert all(len(row) == inner for row in a), "shape mismatch"
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for row in a
    ]


def mat_vec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def smith_normal_form(mat: Matrix) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Return ``(u, d, v, vinv)`` with ``u @ mat @ v == d`` in Smith form.

    ``u`` and ``v`` are unimodular, ``vinv`` is the inverse of ``v``, and
    ``d`` is diagonal with nonnegative entries satisfying ``d[i] | d[i+1]``.

    >>> u, d, v, vinv = smith_normal_form([[2, 4], [6, 8]])
    >>> [d[0][0], d[1][1]]
    [2, 4]
    >>> mat_mul(mat_mul(u, [[2, 4], [6, 8]]), v) == d
    True
    >>> mat_mul(v, vinv) == [[1, 0], [0, 1]]
    True
    """
    d = [row[:] for row in mat]
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)
    vinv = _identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def add_row(i, j, c):  # row i += c * row j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_col(i, j, c):  # col i += c * col j; vinv row j -= c * vinv row i
        for row in d:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]
        vinv[j] = [x - c * y for x, y in zip(vinv[j], vinv[i])]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    n = min(rows, cols)
    for t in range(n):
        while True:
            # Find the pivot: smallest nonzero magnitude at position >= (t, t).
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x != 0 and (best is None or abs(x) < best):
                        best = abs(x)
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            if d[t][t] < 0:
                negate_row(t)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t] != 0:
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            # Row and column are clear; enforce divisibility of the remainder.
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % p != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
    return u, d, v, vinv


def solve_mod(
    a: Matrix, rhs: Sequence[int], row_orders: Sequence[int]
) -> tuple[list[int], list[list[int]]] | None:
    """Solve ``a @ x ≡ rhs (mod row_orders)`` over the integers.

    Row ``i`` is an equation modulo ``row_orders[i]`` (an order of 0 means a
    genuine integer equation). Returns ``(particular, kernel_basis)`` where
    ``kernel_basis`` spans the lattice of homogeneous solutions, or ``None``
    when the system is inconsistent.

    >>> part, ker = solve_mod([[2]], [0], [4])
    >>> part
    [0]
    >>> sorted(v[0] % 4 for v in ker if v[0] % 4)
    [2]
    >>> solve_mod([[2]], [1], [4]) is None
    True
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols, [v for v in _identity(cols)]
    # Augment with diag(row_orders) columns for the modular slack variables.
    aug = [
        a[i][:] + [row_orders[i] if j == i else 0 for j in range(rows)]
        for i in range(rows)
    ]
    u, d, v, _ = smith_normal_form(aug)
    c = mat_vec(u, list(rhs))
    total = cols + rows
    z = [0] * total
    for i in range(rows):
        di = d[i][i] if i < total else 0
        if di != 0:
            if c[i] % di != 0:
                return None
            z[i] = c[i] // di
        elif c[i] != 0:
            return None
    w = mat_vec(v, z)
    particular = w[:cols]
    kernel = []
    for i in range(total):
        di = d[i][i] if i < rows else 0
        if di == 0:
            col = [v[r][i] for r in range(total)]
            kernel.append(col[:cols])
    return particular, kernel


@dataclass(frozen=True)
class FinAb:
    """A finite abelian group ``Z/orders[0] x ... x Z/orders[-1]``.

    Orders of 1 are allowed but usually normalized away; the empty tuple is
    the zero group.
    """

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        assert all(n >= 1 for n in self.orders)

    @property
    def size(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    @property
    def rank(self) -> int:
        return len(self.orders)

    def zero(self) -> Vector:
        return (0,) * len(self.orders)

    def reduce(self, vec: Sequence[int]) -> Vector:
        return tuple(x % n for x, n in zip(vec, self.orders))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x: Sequence[int]) -> Vector:
        return tuple((-a) % n for a, n in zip(x, self.orders))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return tuple((a - b) % n for a, b, n in zip(x, y, self.orders))

    def smul(self, c: int, x: Sequence[int]) -> Vector:
        return tuple((c * a) % n for a, n in zip(x, self.orders))

    def elements(self) -> Iterator[Vector]:
        """All elements in lexicographic order.

        >>> list(FinAb((2, 2)).elements())
        [(0, 0), (0, 1), (1, 0), (1, 1)]
        """
        return itertools.product(*(range(n) for n in self.orders))


class Subgroup:
    """A subgroup of a :class:`FinAb`, reduced to an independent basis.

    ``basis[i]`` has order ``orders[i]`` in the quotient sense: every element
    of the subgroup is ``sum(c[i] * basis[i])`` for a unique tuple ``c`` with
    ``0 <= c[i] < orders[i]``.

    >>> G = FinAb((2, 2))
    >>> H = Subgroup.from_gens(G, [(1, 0), (1, 1)])
    >>> H.size
    4
    >>> (0, 1) in H
    True
    >>> Subgroup.from_gens(G, [(1, 1)]).size
    2
    """

    def __init__(self, ambient: FinAb, basis: tuple[Vector, ...], orders: tuple[int, ...]):
        self.ambient = ambient
        self.basis = basis
        self.orders = orders

    @classmethod
    def from_gens(cls, ambient: FinAb, gens: Sequence[Sequence[int]]) -> "Subgroup":
        gens = [ambient.reduce(g) for g in gens]
        gens = [g for g in gens if any(g)]
        if not gens:
            return cls(ambient, (), ())
        n = ambient.rank
        k = len(gens)
        # Kernel of Z^k -> ambient, c |-> sum c_i g_i.
        gmat = [[gens[j][i] for j in range(k)] for i in range(n)]
        solved = solve_mod(gmat, [0] * n, ambient.orders)
        assert solved is not None
        _, kernel = solved
        if not kernel:  # free of relations: impossible in a finite group
            raise AssertionError("generators of infinite order")
        _, d, _, vinv = smith_normal_form(kernel and [list(v) for v in kernel])
        # Quotient Z^k / kernel-lattice: basis rows of vinv, orders from d.
        basis = []
        orders = []
        for i in range(k):
            di = d[i][i] if i < min(len(kernel), k) else 0
            assert di != 0, "kernel lattice must have full rank"
            if di == 1:
                continue
            coeffs = vinv[i]
            elem = ambient.zero()
            for c, g in zip(coeffs, gens):
                elem = ambient.add(elem, ambient.smul(c, g))
            basis.append(elem)
            orders.append(di)
        return cls(ambient, tuple(basis), tuple(orders))

    @property
    def size(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def elements(self) -> Iterator[Vector]:
        for coeffs in itertools.product(*(range(n) for n in self.orders)):
            elem = self.ambient.zero()
            for c, b in zip(coeffs, self.basis):
                elem = self.ambient.add(elem, self.ambient.smul(c, b))
            yield elem

    def __contains__(self, elem: Sequence[int]) -> bool:
        elem = self.ambient.reduce(elem)
        if not self.basis:
            return not any(elem)
        n = self.ambient.rank
        gmat = [[self.basis[j][i] for j in range(len(self.basis))] for i in range(n)]
        return solve_mod(gmat, list(elem), self.ambient.orders) is not None

    def join(self, other: "Subgroup") -> "Subgroup":
        assert self.ambient == other.ambient
        return Subgroup.from_gens(self.ambient, list(self.basis) + list(other.basis))

    def same_as(self, other: "Subgroup") -> bool:
        return (
            self.size == other.size
            and all(b in other for b in self.basis)
        )


@dataclass
class QuotientMap:
    """``ambient / subgroup`` with projection and a chosen set-level lift."""

    ambient: FinAb
    group: FinAb  # the quotient
    _v: Matrix
    _vinv: Matrix
    _kept: tuple[int, ...]

    def proj(self, elem: Sequence[int]) -> Vector:
        w = [sum(elem[r] * self._v[r][i] for r in range(len(elem))) for i in self._kept]
        return self.group.reduce(w)

    def lift(self, q: Sequence[int]) -> Vector:
        n = self.ambient.rank
        z = [0] * n
        for qi, i in zip(q, self._kept):
            for r in range(n):
                z[r] += qi * self._vinv[i][r]
        return self.ambient.reduce(z)


def quotient_group(ambient: FinAb, sub: Subgroup) -> QuotientMap:
    """Present ``ambient / sub`` as a new :class:`FinAb`.

    >>> G = FinAb((2, 2))
    >>> q = quotient_group(G, Subgroup.from_gens(G, [(1, 1)]))
    >>> q.group.orders
    (2,)
    >>> q.proj((1, 0)) == q.proj((0, 1))
    True
    >>> q.proj(q.lift((1,)))
    (1,)
    """
    n = ambient.rank
    rels: Matrix = [list(b) for b in sub.basis]
    for i in range(n):
        row = [0] * n
        row[i] = ambient.orders[i]
        rels.append(row)
    if n == 0:
        return QuotientMap(ambient, FinAb(()), [], [], ())
    _, d, v, vinv = smith_normal_form(rels)
    kept = []
    orders = []
    for i in range(n):
        di = d[i][i]
        assert di != 0
        if di != 1:
            kept.append(i)
            orders.append(di)
    return QuotientMap(ambient, FinAb(tuple(orders)), v, vinv, tuple(kept))


class AffineSolutions:
    """The solution set of an affine system inside a product of cyclic groups.

    Iteration yields each solution exactly once, in the deterministic order
    given by the coefficient enumeration of the homogeneous subgroup.
    """

    def __init__(self, group: FinAb, particular: Vector, homogeneous: Subgroup):
        self.group = group
        self.particular = particular
        self.homogeneous = homogeneous

    @property
    def size(self) -> int:
        return self.homogeneous.size

    def __iter__(self) -> Iterator[Vector]:
        for h in self.homogeneous.elements():
            yield self.group.add(self.particular, h)

    def sample(self, rng) -> Vector:
        """A uniformly random solution (used when the coset is too big to walk)."""
        out = self.particular
        for b, n in zip(self.homogeneous.basis, self.homogeneous.orders):
            out = self.group.add(out, self.group.smul(rng.randrange(n), b))
        return out


def solve_affine(
    unknown_orders: Sequence[int],
    a: Matrix,
    rhs: Sequence[int],
    row_orders: Sequence[int],
) -> AffineSolutions | None:
    """All ``x`` (mod ``unknown_orders``) with ``a @ x ≡ rhs (mod row_orders)``.

    The coefficient matrix must describe a map that is well defined modulo
    the unknown orders (true for anything induced by composition in an
    additive category); solutions are then closed under the stated reduction.
    """
    group = FinAb(tuple(unknown_orders))
    if not a:  # no constraints: every assignment solves the system
        return AffineSolutions(
            group,
            group.zero(),
            Subgroup.from_gens(group, list(_identity(group.rank))),
        )
    solved = solve_mod(a, rhs, row_orders)
    if solved is None:
        return None
    particular, kernel = solved
    gens = [group.reduce(vec) for vec in kernel]
    return AffineSolutions(group, group.reduce(particular), Subgroup.from_gens(group, gens))


def solve_system(
    unknown_orders: Sequence[int],
    residual: Callable[[Vector], list[tuple[Sequence[int], Sequence[int]]]],
) -> AffineSolutions | None:
    """Solve ``residual(x) == 0`` for an affine ``residual``.

    ``residual`` maps a flat unknown vector (modulo ``unknown_orders``) to a
    list of ``(value, row_orders)`` pairs, all of which must vanish. The map
    must be affine in the unknown — everything induced by composition and
    extension actions is. The matrix of the linearization is built by probing
    unit vectors, so the cost is one residual evaluation per unknown
    coordinate.
    """
    group = FinAb(tuple(unknown_orders))
    zero = group.zero()
    base = residual(zero)
    rhs: list[int] = []
    row_orders: list[int] = []
    for value, orders in base:
        rhs.extend(-x for x in value)
        row_orders.extend(orders)
    n = len(unknown_orders)
    columns: list[list[int]] = []
    for j in range(n):
        probe = list(zero)
        probe[j] = 1
        out: list[int] = []
        for (value, _), (bvalue, _) in zip(residual(tuple(probe)), base):
            out.extend(x - b for x, b in zip(value, bvalue))
        columns.append(out)
    rows = len(rhs)
    a = [[columns[j][i] for j in range(n)] for i in range(rows)]
    return solve_affine(unknown_orders, a, rhs, row_orders)


def group_from_oracle(
    elements: Sequence,
    add: Callable,
    zero,
) -> tuple[FinAb, dict, list]:
    """Recover the cyclic decomposition of a small abelian group.

    ``elements`` is the full element list (hashable, deterministic order),
    ``add`` the group law, ``zero`` the neutral element. Returns
    ``(group, to_coords, from_coords)`` where ``to_coords`` maps each element
    to its exponent tuple and ``from_coords`` is the inverse lookup (a list
    indexed like ``itertools.product`` over the orders is not returned;
    ``from_coords`` is a dict coords -> element).

    >>> G, to_c, from_c = group_from_oracle(
    ...     [0, 1, 2, 3], lambda a, b: (a + b) % 4, 0)
    >>> G.orders
    (4,)
    >>> sorted(to_c.values()) == [(0,), (1,), (2,), (3,)]
    True
    """
    elems = list(elements)
    n = len(elems)
    assert n >= 1 and zero in set(elems)
    if n > 256:
        raise ValueError("oracle group too large to reverse-engineer")
    index = {e: i for i, e in enumerate(elems)}
    assert len(index) == n, "duplicate elements"
    rels: Matrix = []
    for i, g in enumerate(elems):
        for j in range(i, n):
            h = elems[j]
            s = add(g, h)
            row = [0] * n
            row[i] += 1
            row[j] += 1
            row[index[s]] -= 1
            rels.append(row)
    zrow = [0] * n
    zrow[index[zero]] += 1
    rels.append(zrow)
    _, d, _, vinv = smith_normal_form(rels)
    orders = []
    basis = []
    for i in range(n):
        di = d[i][i] if i < min(len(rels), n) else 0
        assert di != 0, "group relations must present a finite group"
        if di == 1:
            continue
        orders.append(di)
        coeffs = vinv[i]
        elem = zero
        for c, g in zip(coeffs, elems):
            c = c % _order_of(g, add, zero)
            for _ in range(c):
                elem = add(elem, g)
        basis.append(elem)
    group = FinAb(tuple(orders))
    from_coords = {}
    to_coords = {}
    for coords in group.elements():
        elem = zero
        for c, b in zip(coords, basis):
            for _ in range(c):
                elem = add(elem, b)
        assert elem not in to_coords, "oracle group law is not a group"
        to_coords[elem] = coords
        from_coords[coords] = elem
    assert len(to_coords) == n, "basis does not span the oracle group"
    return group, to_coords, from_coords


def _order_of(g, add, zero) -> int:
    n = 1
    x = g
    while x != zero:
        x = add(x, g)
        n += 1
        assert n <= 100000
    return n
