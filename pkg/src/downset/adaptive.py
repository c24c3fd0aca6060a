"""Backend selection: lists versus k-d trees by the size-to-dimension regime.

k-d trees pay off once the antichains are exponentially larger than the
dimension but not absurdly unbalanced, i.e. when
``2^(k log k) <= m <= n <= 2^m`` (with m <= n the two set sizes).  The
predicate is evaluated in logarithm space with exact integer arithmetic:
``k * ceil(log2 k) <= floor(log2 m)`` and ``n <= 2^m``.

This module also provides the uniform dispatch table used by the CLI and
the parity solver to run any operation through a named backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import cst as _cst
from . import kdtree as _kd
from . import sharingtree as _st
from .core import (
    Antichain,
    DimensionMismatch,
    Stats,
    Vector,
    intersect_list,
    member_list,
    union_list,
)


@dataclass(frozen=True)
class BackendChoice:
    kind: str  # "list" or "kdtree"
    k: int
    m: int
    n: int


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def choose_backend(k: int, m: int, n: int) -> BackendChoice:
    """Pure decision: k-d tree iff ``k*log2(k) <= log2(m)`` and ``log2(n) <= m``."""
    if m > n:
        raise ValueError(f"expected m <= n, got m={m} n={n}")
    if m == 0 or n == 0:
        return BackendChoice("list", k, m, n)
    small_dim = k * _ceil_log2(k) <= m.bit_length() - 1
    balanced = _ceil_log2(n) <= m
    kind = "kdtree" if small_dim and balanced else "list"
    return BackendChoice(kind, k, m, n)


def _member_kd(ac: Antichain, u: Vector, stats: Optional[Stats] = None) -> bool:
    if len(tuple(u)) != ac.dim:
        raise DimensionMismatch(f"query has length {len(tuple(u))}, set has dimension {ac.dim}")
    return _kd.member_kdtree(_kd.build_kdtree(ac), u, stats)


def _member_st(ac: Antichain, u: Vector, stats: Optional[Stats] = None) -> bool:
    return _st.member_st(_st.build_sharingtree(ac), u, stats)


def _member_cst(ac: Antichain, u: Vector, stats: Optional[Stats] = None) -> bool:
    tree = _cst.build_cst(ac.vectors, dim=ac.dim)
    return _cst.member_cst(tree, u, stats)


def _union_cst(a: Antichain, b: Antichain, stats: Optional[Stats] = None) -> Antichain:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    out = _cst.union_cst(_cst.build_cst(a.vectors, dim=a.dim),
                         _cst.build_cst(b.vectors, dim=b.dim), stats)
    return _cst.maximal_elements(out)


def _intersect_cst(a: Antichain, b: Antichain, stats: Optional[Stats] = None) -> Antichain:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    out = _cst.intersect_cst(_cst.build_cst(a.vectors, dim=a.dim),
                             _cst.build_cst(b.vectors, dim=b.dim), stats)
    return _cst.maximal_elements(out)


def member_adaptive(ac: Antichain, u: Vector, stats: Optional[Stats] = None,
                    force: Optional[str] = None) -> bool:
    kind = force or choose_backend(ac.dim, len(ac), len(ac)).kind
    if kind == "kdtree" and len(ac) > 0:
        return _member_kd(ac, u, stats)
    return member_list(ac, u, stats)


def union_adaptive(a: Antichain, b: Antichain, stats: Optional[Stats] = None,
                   force: Optional[str] = None) -> Antichain:
    m, n = sorted((len(a), len(b)))
    kind = force or choose_backend(a.dim, m, n).kind
    if kind == "kdtree" and m > 0:
        return _kd.union_kdtree(a, b, stats)
    return union_list(a, b, stats)


def intersect_adaptive(a: Antichain, b: Antichain, stats: Optional[Stats] = None,
                       force: Optional[str] = None) -> Antichain:
    m, n = sorted((len(a), len(b)))
    kind = force or choose_backend(a.dim, m, n).kind
    if kind == "kdtree" and m > 0:
        return _kd.intersect_kdtree(a, b, stats)
    return intersect_list(a, b, stats)


@dataclass(frozen=True)
class BackendOps:
    name: str
    member: object  # (Antichain, Vector, Stats|None) -> bool
    union: object   # (Antichain, Antichain, Stats|None) -> Antichain
    intersect: object


BACKENDS = {
    "list": BackendOps("list", member_list, union_list, intersect_list),
    "kdtree": BackendOps("kdtree", _member_kd, _kd.union_kdtree, _kd.intersect_kdtree),
    "sharingtree": BackendOps("sharingtree", _member_st, _st.union_st, _st.intersect_st),
    "cst": BackendOps("cst", _member_cst, _union_cst, _intersect_cst),
    "adaptive": BackendOps("adaptive", member_adaptive, union_adaptive, intersect_adaptive),
}

BACKEND_NAMES = tuple(BACKENDS)


def get_backend(name: str) -> BackendOps:
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; expected one of {', '.join(BACKENDS)}") from None
