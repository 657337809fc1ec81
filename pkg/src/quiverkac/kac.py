"""Kac polynomials from oracle counts plus exact interpolation."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from typing import Optional

from .errors import NotMonic, ResourceError, WrongDegree
from .gf import GF
from .oracle import DEFAULT_BUDGET, Budget, count_abs_indec_quiver
from .polynomial import IntPolynomial, interpolate
from .quiver import AlphaLike, Quiver, quadratic_form
from .roots import classify_root

log = logging.getLogger(__name__)

# primes first; prime powers only when more points are needed
EVALUATION_ORDER = (2, 3, 5, 7, 4, 8, 9)

_memo: dict[str, IntPolynomial] = {}


def cache_key(Q: Quiver, alpha: dict) -> str:
    return json.dumps([json.loads(Q.key()), [alpha[v] for v in Q.vertices]], separators=(",", ":"))


class PolynomialCache:
    """JSON file mapping key strings to coefficient arrays.

    Writes go to a temporary file in the same directory followed by
    ``os.replace``, so readers never see a half-written file.  A corrupt
    file is ignored with a warning.
    """

    def __init__(self, path):
        self.path = os.fspath(path)
        self.entries: dict[str, list[int]] = load_cache(self.path)

    def get(self, key: str) -> Optional[IntPolynomial]:
        cs = self.entries.get(key)
        return None if cs is None else IntPolynomial(cs)

    def put(self, key: str, poly: IntPolynomial) -> None:
        self.entries[key] = list(poly.coeffs)
        store_cache(self.path, self.entries)


def load_cache(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        return {}
    except (OSError, ValueError) as exc:
        log.warning("ignoring unreadable cache %s: %s", path, exc)
        return {}
    if not isinstance(doc, dict) or not all(
        isinstance(v, list) and all(isinstance(c, int) for c in v) for v in doc.values()
    ):
        log.warning("ignoring malformed cache %s", path)
        return {}
    return doc


def store_cache(path, entries: dict) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".quiverkac-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entries, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def check_monic(poly: IntPolynomial, degree: int, what: str = "polynomial") -> None:
    if poly.degree != degree:
        raise WrongDegree(f"{what} {poly} has degree {poly.degree}, expected {degree}")
    if not poly.is_monic():
        raise NotMonic(f"{what} {poly} is not monic")


def kac_polynomial(
    Q: Quiver,
    alpha: AlphaLike,
    budget: Budget = DEFAULT_BUDGET,
    cache: Optional[PolynomialCache] = None,
) -> IntPolynomial:
    """``A_{Q,alpha}(q)``.

    Zero off the positive roots.  Otherwise the oracle is evaluated at
    ``D + 2`` field sizes, where ``D = 1 - q_Q(alpha)``; ``D + 1`` of them
    determine the interpolant and the last one must agree with it.
    """
    a = Q.dimvector(alpha)
    if not classify_root(Q, a).is_root:
        return IntPolynomial()
    key = cache_key(Q, a)
    if key in _memo:
        return _memo[key]
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            _memo[key] = hit
            return hit
    D = 1 - quadratic_form(Q, a)
    if D + 2 > len(EVALUATION_ORDER):
        raise ResourceError("interpolation points", D + 2, len(EVALUATION_ORDER))
    points = []
    for q in EVALUATION_ORDER[: D + 2]:
        points.append((q, count_abs_indec_quiver(Q, a, (), GF(q), budget)))
    log.debug("kac %s alpha=%s points=%s", Q.key(), a, points)
    poly = interpolate(points, D)
    check_monic(poly, D, "Kac polynomial")
    _memo[key] = poly
    if cache is not None:
        cache.put(key, poly)
    return poly


def clear_memo() -> None:
    _memo.clear()
