"""Bivariate polynomials with integer coefficients."""
from __future__ import annotations

from typing import Iterable, Mapping


class BiPoly:
    """Sparse polynomial in x and y; ``coeffs`` maps (xdeg, ydeg) to int.

    >>> x, y = BiPoly.x(), BiPoly.y()
    >>> str((1 + x) * (1 - y))
    '1 + x - y - x*y'
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self.coeffs = {k: int(v) for k, v in (coeffs or {}).items() if v}
        if any(i < 0 or j < 0 for i, j in self.coeffs):
            raise ValueError("negative exponent")

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BiPoly":
        return cls({(i, j): c})

    @staticmethod
    def _lift(other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPoly.const(other)
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.coeffs.get(key, 0)

    def __call__(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self.coeffs.items())

    def total_degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=0)

    def terms(self) -> list[tuple[int, int, int]]:
        """(xdeg, ydeg, coeff) in graded order."""
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), -t[0][0]))]

    def to_json(self) -> list:
        return [[i, j, str(c)] for i, j, c in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable) -> "BiPoly":
        return cls({(int(i), int(j)): int(c) for i, j, c in data})

    @classmethod
    def from_univariate_y(cls, coeffs: Iterable[int]) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(coeffs)})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, j, c in self.terms():
            mono = "*".join(s for s in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
            ) if s)
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"BiPoly({self})"
