"""Brute-force oracle: representations of the A2 quiver (1 -> 2) over F2.

A representation is ``(d1, d2, f)`` with ``f`` a d2 x d1 F2 matrix (the
action V1 -> V2). A morphism M -> N is a pair (h1, h2) of matrices with
h2 f_M = f_N h1.
"""

from __future__ import annotations

from . import f2

Rep = tuple  # (d1, d2, np.ndarray of shape (d2, d1))

S1: Rep = (1, 0, f2.zeros(0, 1))
S2: Rep = (0, 1, f2.zeros(1, 0))
P: Rep = (1, 1, f2.eye(1))

BASICS = {"S1": S1, "S2": S2, "P": P}


def hom(m: Rep, n: Rep) -> list:
    out = []
    for h1 in f2.all_matrices(n[0], m[0]):
        rhs = f2.mul(n[2], h1)
        for h2 in f2.all_matrices(n[1], m[1]):
            if f2.eq(f2.mul(h2, m[2]), rhs):
                out.append((h1, h2))
    return out


def hom_count(m: Rep, n: Rep) -> int:
    return len(hom(m, n))


def compose(g, f):
    return (f2.mul(g[0], f[0]), f2.mul(g[1], f[1]))


def mor_eq(g, f) -> bool:
    return f2.eq(g[0], f[0]) and f2.eq(g[1], f[1])


def zero_mor(m: Rep, n: Rep):
    return (f2.zeros(n[0], m[0]), f2.zeros(n[1], m[1]))


def identity(m: Rep):
    return (f2.eye(m[0]), f2.eye(m[1]))


def direct_sum(m: Rep, n: Rep) -> Rep:
    return (m[0] + n[0], m[1] + n[1], f2.block_diag(m[2], n[2]))


def all_reps(d1: int, d2: int):
    for f in f2.all_matrices(d2, d1):
        yield (d1, d2, f)


def decompose(m: Rep) -> dict[str, int]:
    """Multiplicities in m ≅ S1^a ⊕ S2^b ⊕ P^r (Krull-Schmidt for A2)."""
    r = f2.rank(m[2])
    return {"S1": m[0] - r, "S2": m[1] - r, "P": r}


def _is_injective(h) -> bool:
    return f2.is_injective(h[0]) and f2.is_injective(h[1])


def _is_surjective(h) -> bool:
    return f2.is_surjective(h[0]) and f2.is_surjective(h[1])


def ses_list(c: Rep, a: Rep) -> list:
    """All short exact sequences a >-> b ->> c, as (b, i, p) triples."""
    out = []
    for b in all_reps(a[0] + c[0], a[1] + c[1]):
        homs_ab = [i for i in hom(a, b) if _is_injective(i)]
        homs_bc = [p for p in hom(b, c) if _is_surjective(p)]
        for i in homs_ab:
            for p in homs_bc:
                if mor_eq(compose(p, i), zero_mor(a, c)):
                    out.append((b, i, p))
    return out


def ses_equivalent(s, t) -> bool:
    (b1, i1, p1), (b2, i2, p2) = s, t
    if b1[:2] != b2[:2]:
        return False
    for phi in hom(b1, b2):
        if (
            mor_eq(compose(phi, i1), i2)
            and mor_eq(compose(p2, phi), p1)
            and _is_injective(phi)
            and _is_surjective(phi)
        ):
            return True
    return False


def ext_classes(c: Rep, a: Rep) -> list:
    """Equivalence classes of extensions of c by a (lists of SES triples)."""
    classes: list[list] = []
    for s in ses_list(c, a):
        for cls in classes:
            if ses_equivalent(s, cls[0]):
                cls.append(s)
                break
        else:
            classes.append([s])
    return classes


def ext_count(c: Rep, a: Rep) -> int:
    return len(ext_classes(c, a))


def is_split(s, c: Rep) -> bool:
    b, _, p = s
    return any(
        mor_eq(compose(p, sec), identity(c)) for sec in hom(c, b)
    )


def serre_dim(m: Rep) -> int:
    """The Serre quotient by add(S2) sends m to F2^d1."""
    return m[0]
