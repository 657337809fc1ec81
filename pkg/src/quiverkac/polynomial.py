"""Integer polynomials in ``q`` and exact interpolation."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonIntegerCoefficients, SurplusMismatch


class IntPolynomial:
    """Polynomial in ``q`` with integer coefficients, ascending degree.

    Stored canonically without trailing zeros; the zero polynomial has no
    coefficients and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls([c])

    @classmethod
    def q(cls) -> "IntPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, q: int) -> int:
        return eval_poly(self, q)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return pretty(self)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, doc) -> "IntPolynomial":
        return cls(doc["coeffs"])


def eval_poly(p: IntPolynomial, q: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * q + c
    return acc


def pretty(p: IntPolynomial) -> str:
    """Human form, highest degree first, e.g. ``q^2+3q+1`` or ``q-1``."""
    if p.is_zero():
        return "0"
    parts = []
    for deg in range(p.degree, -1, -1):
        c = p.coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            mono = "q" if deg == 1 else f"q^{deg}"
            body = mono if mag == 1 else f"{mag}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def interpolate(points: Sequence[tuple[int, int]], degree_bound: int) -> IntPolynomial:
    """Lagrange interpolation through the first ``degree_bound + 1`` points.

    Surplus points are checked exactly.  Raises
    :class:`NonIntegerCoefficients` or :class:`SurplusMismatch`.
    """
    points = [(int(x), int(y)) for x, y in points]
    need = degree_bound + 1
    if len(points) < need:
        raise ValueError(f"need {need} points for degree bound {degree_bound}, got {len(points)}")
    if len({x for x, _ in points}) != len(points):
        raise ValueError("interpolation points must have distinct abscissae")
    base, surplus = points[:need], points[need:]
    coeffs = [Fraction(0)] * need
    for i, (xi, yi) in enumerate(base):
        # basis polynomial prod_{j != i} (q - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(base):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegerCoefficients(f"interpolant has non-integer coefficients {[str(c) for c in coeffs]}")
    poly = IntPolynomial(int(c) for c in coeffs)
    for x, y in surplus:
        if poly(x) != y:
            raise SurplusMismatch(f"{pretty(poly)} gives {poly(x)} at q={x}, expected {y}")
    return poly
