"""Shared oracles and instance generators for the test suite.

Everything here is deliberately independent of the backend implementations:
membership oracles enumerate, set oracles compare boxes pointwise, and the
antichain generator maintains maximality by definition-level checks.
"""

import itertools

from downset import Antichain


def box_points(k, top):
    """All points of [0..top]^k."""
    return itertools.product(range(top + 1), repeat=k)


def brute_member(vectors, u):
    """Downset membership by direct enumeration of dominators."""
    return any(all(a <= b for a, b in zip(u, v)) for v in vectors)


def brute_downset(vectors, top):
    """The downset as an explicit point set inside [0..top]^k."""
    k = len(next(iter(vectors)))
    return {p for p in box_points(k, top) if brute_member(vectors, p)}


def rand_antichain(rng, k, m, maxval):
    """Random antichain of size <= m by incremental insertion."""
    cur = []
    for _ in range(60 * m):
        if len(cur) >= m:
            break
        v = tuple(rng.randint(0, maxval) for _ in range(k))
        if any(all(a <= b for a, b in zip(v, w)) for w in cur):
            continue
        cur = [w for w in cur if not all(a <= b for a, b in zip(w, v))]
        cur.append(v)
    return Antichain(cur, dim=k) if cur else Antichain((), dim=k)


def adversarial_vectors(rng, k, m, special):
    """Worst-case search family: per-dimension distinct positive values on
    the first k-1 coordinates, last coordinate 0.

    With ``special`` the final vector instead takes the strictly largest
    value everywhere and last coordinate 1, which lands it at the rightmost
    leaf; the query (0, ..., 0, 1) is then a member, otherwise not.
    """
    cols = []
    for _ in range(k - 1):
        perm = list(range(1, m + 1))
        rng.shuffle(perm)
        cols.append(perm)
    vecs = [tuple(col[i] for col in cols) + (0,) for i in range(m)]
    if special:
        vecs[-1] = tuple(m + 1 for _ in range(k - 1)) + (1,)
    return vecs


def pair_family(n):
    """The 2^n vectors of length 2n made of blocks (0,1) or (1,0); pairwise
    incomparable, yet their minimal layered DAG has only 4n+1 nodes."""
    vecs = []
    for bits in itertools.product(((0, 1), (1, 0)), repeat=n):
        vecs.append(tuple(x for pair in bits for x in pair))
    return Antichain(vecs, dim=2 * n)


def rand_game(rng, nv, maxp, maxdeg):
    from downset.parity import ParityGame

    owners = [rng.randint(0, 1) for _ in range(nv)]
    prios = [rng.randint(0, maxp) for _ in range(nv)]
    succs = []
    for _ in range(nv):
        deg = rng.randint(1, maxdeg)
        succs.append(sorted(rng.sample(range(nv), min(deg, nv))))
    return ParityGame(owners, prios, succs, list(range(nv)))
