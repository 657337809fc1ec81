"""Positive roots of the Kac-Moody root system attached to a graph.

Loops are handled the usual way: reflections exist only at loop-free
vertices, and a simple root at a loop vertex is imaginary.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import DomainError
from .quiver import AlphaLike, DimVector, bilinear_form, quadratic_form, support_connected, underlying_quiver


class RootTag(str, enum.Enum):
    NOT_ROOT = "not_root"
    REAL = "real"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class RootClass:
    tag: RootTag
    witness: tuple[str, ...] = ()

    @property
    def is_root(self) -> bool:
        return self.tag is not RootTag.NOT_ROOT


def _unit(Q, i):
    return {v: int(v == i) for v in Q.vertices}


def reflect(G, alpha: AlphaLike, i: str) -> DimVector:
    """Simple reflection ``s_i(alpha) = alpha - (alpha, e_i) e_i``.

    The result may have negative entries.
    """
    Q = underlying_quiver(G)
    if i not in Q.vertices:
        raise DomainError(f"unknown vertex {i!r}")
    if Q.loops_at(i):
        raise DomainError(f"cannot reflect at vertex {i!r}: it carries a loop")
    a = {v: int(x) for v, x in (alpha.items() if isinstance(alpha, dict) else zip(Q.vertices, alpha))}
    c = _pairing(Q, a, i)
    a[i] -= c
    return a


def _pairing(Q, a: dict, i: str) -> int:
    # (a, e_i) without the non-negativity check of Quiver.dimvector
    total = 2 * a[i]
    for ar in Q.arrows:
        if ar.tail == i:
            total -= a[ar.head]
        if ar.head == i:
            total -= a[ar.tail]
    return total


def classify_root(G, alpha: AlphaLike) -> RootClass:
    """Decide whether ``alpha >= 0`` is a real root, an imaginary root or neither.

    Reflection descent: reflect at the first loop-free vertex (declared
    order) where ``(alpha, e_i) > 0`` until ``alpha`` is a loop-free simple
    root (real), lands in the fundamental region (imaginary), or picks up a
    negative coordinate (not a root).
    """
    Q = underlying_quiver(G)
    if not isinstance(alpha, dict):
        alpha = list(alpha)
        if any(int(x) < 0 for x in alpha):
            raise DomainError(f"negative entry in dimension vector {alpha}")
    elif any(int(x) < 0 for x in alpha.values()):
        raise DomainError(f"negative entry in dimension vector {dict(alpha)}")
    a = Q.dimvector(alpha)
    if not support_connected(Q, a):
        return RootClass(RootTag.NOT_ROOT)
    loop_free = [v for v in Q.vertices if not Q.loops_at(v)]
    witness: list[str] = []
    while True:
        for i in loop_free:
            if a[i] == 1 and all(a[v] == 0 for v in Q.vertices if v != i):
                return RootClass(RootTag.REAL, tuple(witness))
        for i in loop_free:
            if _pairing(Q, a, i) > 0:
                break
        else:
            if support_connected(Q, a):
                return RootClass(RootTag.IMAGINARY, tuple(witness))
            return RootClass(RootTag.NOT_ROOT, tuple(witness))
        a = reflect(Q, a, i)
        witness.append(i)
        if a[i] < 0:
            return RootClass(RootTag.NOT_ROOT, tuple(witness))


def replay_witness(G, alpha: AlphaLike, witness) -> DimVector:
    Q = underlying_quiver(G)
    a = Q.dimvector(alpha)
    for i in witness:
        a = reflect(Q, a, i)
    return a


def enumerate_positive_roots(G, height_bound: int) -> list[tuple[DimVector, RootClass]]:
    """All positive roots of height at most ``height_bound``.

    Ordered by height, then lexicographically descending in vertex order.
    """
    if height_bound < 1:
        raise DomainError("height_bound must be at least 1")
    Q = underlying_quiver(G)
    n = len(Q.vertices)
    out = []
    for h in range(1, height_bound + 1):
        for comp in sorted(_compositions(h, n), reverse=True):
            rc = classify_root(Q, comp)
            if rc.is_root:
                out.append((Q.dimvector(comp), rc))
    return out


def _compositions(total: int, parts: int):
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for c in cut:
            comp.append(c - prev - 1)
            prev = c
        comp.append(total + parts - 1 - prev - 1)
        yield tuple(comp)


__all__ = [
    "RootTag",
    "RootClass",
    "reflect",
    "classify_root",
    "replay_witness",
    "enumerate_positive_roots",
    "quadratic_form",
    "bilinear_form",
]
