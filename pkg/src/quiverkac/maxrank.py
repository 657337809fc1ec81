"""Counting polynomials for representations with maximal-rank arrows.

``A^M_{Q,alpha}`` is computed by stratifying one arrow ``a`` of ``M`` by
rank: maps of rank ``d`` factor as surjection-then-injection through a new
vertex of dimension ``d``, so

    A^M = A^{M - a} - sum_{d < m} A^{(M - a) + {b, c}}_{Q', alpha_d}

on the quiver ``Q'`` where ``a`` is replaced by ``b: t(a) -> v`` and
``c: v -> h(a)``.  The recursion bottoms out at ``M = ∅`` (Kac polynomial).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import ConsistencyError, DomainError, NotChoiceInvariant, NotOrientationInvariant, WrongDegree
from .kac import PolynomialCache, check_monic, kac_polynomial
from .oracle import DEFAULT_BUDGET, Budget
from .polynomial import IntPolynomial
from .quiver import AlphaLike, Arrow, Quiver, orientations, quadratic_form
from .roots import classify_root


@dataclass(frozen=True)
class SplitResult:
    new_quiver: Quiver
    new_vertex: str
    arrow_b: str
    arrow_c: str


def split_arrow(Q: Quiver, a: str) -> SplitResult:
    """Replace arrow ``a`` by ``t(a) -> v -> h(a)`` through a fresh vertex ``v``.

    Names: ``v#k`` with the smallest unused ``k``; ``<a>.b`` and ``<a>.c``.
    The new arrows take the place of ``a`` in the arrow order.
    """
    arrow = Q.arrow(a)
    k = 0
    while f"v#{k}" in Q.vertices:
        k += 1
    v = f"v#{k}"
    b, c = f"{a}.b", f"{a}.c"
    taken = set(Q.arrow_ids)
    if b in taken or c in taken:
        raise DomainError(f"cannot split {a!r}: arrow id {b!r} or {c!r} already in use")
    arrows = []
    for x in Q.arrows:
        if x.id == a:
            arrows += [Arrow(b, arrow.tail, v), Arrow(c, v, arrow.head)]
        else:
            arrows.append(x)
    return SplitResult(Quiver(Q.vertices + (v,), tuple(arrows)), v, b, c)


def _min_dim(Q: Quiver, alpha: dict, a: str) -> int:
    ar = Q.arrow(a)
    return min(alpha[ar.tail], alpha[ar.head])


def induction_measure(Q: Quiver, M: Iterable[str], alpha: AlphaLike) -> tuple[int, int]:
    """``(m, count)``: the largest ``min(alpha_t, alpha_h)`` over ``M`` and
    how many arrows of ``M`` attain it."""
    M = list(M)
    if not M:
        raise DomainError("induction measure needs a nonempty arrow subset")
    a = Q.dimvector(alpha)
    mins = [_min_dim(Q, a, x) for x in M]
    m = max(mins)
    return m, mins.count(m)


def _ordered(Q: Quiver, M) -> tuple[str, ...]:
    M = set(M)
    for a in M:
        Q.arrow(a)
    return tuple(a for a in Q.arrow_ids if a in M)


class MaxRankSolver:
    """Memoised evaluation of the rank-stratification recursion.

    ``choice`` picks among the arrows attaining ``m``: ``"first"`` or
    ``"last"`` in declared order.
    """

    def __init__(
        self,
        budget: Budget = DEFAULT_BUDGET,
        cache: Optional[PolynomialCache] = None,
        choice: str = "first",
    ):
        if choice not in ("first", "last"):
            raise ValueError(f"unknown choice rule {choice!r}")
        self.budget = budget
        self.cache = cache
        self.choice = choice
        self.memo: dict[str, IntPolynomial] = {}

    def solve(self, Q: Quiver, M: Iterable[str], alpha: AlphaLike) -> IntPolynomial:
        a = Q.dimvector(alpha)
        M = _ordered(Q, M)
        key = json.dumps([Q.key(), M, [a[v] for v in Q.vertices]])
        if key in self.memo:
            return self.memo[key]
        if not M:
            result = kac_polynomial(Q, a, self.budget, self.cache)
        else:
            result = self._step(Q, M, a)
        self.memo[key] = result
        return result

    def _step(self, Q: Quiver, M: tuple[str, ...], a: dict) -> IntPolynomial:
        m, _ = induction_measure(Q, M, a)
        eligible = [x for x in M if _min_dim(Q, a, x) == m]
        arrow = eligible[0] if self.choice == "first" else eligible[-1]
        rest = tuple(x for x in M if x != arrow)
        result = self.solve(Q, rest, a)
        is_root = classify_root(Q, a).is_root
        D = 1 - quadratic_form(Q, a)
        if m:
            split = split_arrow(Q, arrow)
            for d in range(m):
                ad = dict(a)
                ad[split.new_vertex] = d
                term = self.solve(split.new_quiver, rest + (split.arrow_b, split.arrow_c), ad)
                if is_root and not term.is_zero() and term.degree >= D:
                    raise WrongDegree(
                        f"subtracted term {term} (d={d}) reaches degree {term.degree} >= {D}"
                    )
                result = result - term
        if is_root:
            check_monic(result, D, "maximal-rank polynomial")
        elif not result.is_zero():
            raise ConsistencyError(f"nonzero polynomial {result} off the positive roots (alpha={a})")
        return result


def maxrank_polynomial(
    Q: Quiver,
    M: Iterable[str],
    alpha: AlphaLike,
    budget: Budget = DEFAULT_BUDGET,
    cache: Optional[PolynomialCache] = None,
    choice: str = "first",
    verify: bool = False,
    solver: Optional[MaxRankSolver] = None,
) -> IntPolynomial:
    """``A^M_{Q,alpha}(q)``.

    With ``verify=True`` the result is recomputed with the other arrow
    choice rule and on every reorientation of ``Q``; any disagreement
    raises.
    """
    solver = solver or MaxRankSolver(budget, cache, choice)
    M = _ordered(Q, M)
    result = solver.solve(Q, M, alpha)
    if verify:
        other = MaxRankSolver(budget, cache, "last" if solver.choice == "first" else "first")
        if other.solve(Q, M, alpha) != result:
            raise NotChoiceInvariant(f"arrow choice changes the result for M={list(M)}")
        for Qo in orientations(Q):
            got = solver.solve(Qo, M, alpha)
            if got != result:
                raise NotOrientationInvariant(f"orientation {Qo.key()} gives {got}, expected {result}")
    return result
