"""Finite polynomials in z and conj(z), with exact Wirtinger differentiation.

A :class:`TestFunction` stores ``{(alpha, beta): c}`` for the sum of
c * z^alpha * conj(z)^beta. The text form used by the CLI is::

    c * z1^a1 * z2^a2 * w1^b1 * w2^b2 + ...

where ``wj`` stands for conj(zj) and ``c`` is a complex literal such as
``2``, ``-0.5i``, ``1+2i`` or ``(1-3i)``. Inside a bare literal the sign
joining real and imaginary parts must not be surrounded by spaces; use
parentheses or spaces to separate a constant term from the next term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

Key = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class TestFunction:
    n: int
    terms: dict = field(default_factory=dict)

    __test__ = False  # not a pytest class

    def __post_init__(self):
        clean = {}
        for (a, b), c in self.terms.items():
            a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
            if len(a) != self.n or len(b) != self.n or min(a + b) < 0:
                raise ValueError(f"bad multi-index pair {(a, b)} for n={self.n}")
            c = complex(c)
            if c != 0:
                clean[(a, b)] = clean.get((a, b), 0) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v != 0})

    # constructors
    @classmethod
    def constant(cls, n: int, c: complex = 1.0) -> "TestFunction":
        return cls(n, {((0,) * n, (0,) * n): c})

    @classmethod
    def monomial(cls, alpha: Iterable[int], beta: Iterable[int] | None = None, c: complex = 1.0) -> "TestFunction":
        alpha = tuple(alpha)
        beta = tuple(beta) if beta is not None else (0,) * len(alpha)
        return cls(len(alpha), {(alpha, beta): c})

    @classmethod
    def coordinate(cls, n: int, k: int, conjugate: bool = False) -> "TestFunction":
        e = tuple(1 if j == k else 0 for j in range(n))
        zero = (0,) * n
        return cls.monomial(zero, e) if conjugate else cls.monomial(e, zero)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TestFunction":
        return parse_polynomial(text, n)

    # algebra
    def __add__(self, other):
        if not isinstance(other, TestFunction):
            other = TestFunction.constant(self.n, other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return TestFunction(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TestFunction):
            terms: dict = {}
            for (a1, b1), c1 in self.terms.items():
                for (a2, b2), c2 in other.terms.items():
                    k = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
                    terms[k] = terms.get(k, 0) + c1 * c2
            return TestFunction(self.n, terms)
        return TestFunction(self.n, {k: v * other for k, v in self.terms.items()})

    __rmul__ = __mul__

    def conj(self) -> "TestFunction":
        return TestFunction(self.n, {(b, a): np.conj(c) for (a, b), c in self.terms.items()})

    def real_part(self) -> "TestFunction":
        return (self + self.conj()) * 0.5

    def imag_part(self) -> "TestFunction":
        return (self - self.conj()) * (-0.5j)

    # predicates
    def is_holomorphic(self) -> bool:
        return all(sum(b) == 0 for (_, b) in self.terms)

    def is_pluriharmonic(self) -> bool:
        return all(sum(a) == 0 or sum(b) == 0 for (a, b) in self.terms)

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self.terms), default=0)

    def bidegree(self) -> tuple[int, int]:
        return (
            max((sum(a) for a, _ in self.terms), default=0),
            max((sum(b) for _, b in self.terms), default=0),
        )

    # calculus
    def d_z(self, k: int) -> "TestFunction":
        terms = {}
        for (a, b), c in self.terms.items():
            if a[k]:
                a2 = a[:k] + (a[k] - 1,) + a[k + 1 :]
                terms[(a2, b)] = terms.get((a2, b), 0) + c * a[k]
        return TestFunction(self.n, terms)

    def d_zbar(self, k: int) -> "TestFunction":
        terms = {}
        for (a, b), c in self.terms.items():
            if b[k]:
                b2 = b[:k] + (b[k] - 1,) + b[k + 1 :]
                terms[(a, b2)] = terms.get((a, b2), 0) + c * b[k]
        return TestFunction(self.n, terms)

    # evaluation
    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self.n:
            raise ValueError(f"expected dimension {self.n}, got {z.shape[-1]}")
        lead = z.shape[:-1]
        if not self.terms:
            out = np.zeros(lead, dtype=complex)
            return out[()] if out.ndim == 0 else out
        zb = np.conj(z)
        cache: dict = {}

        def power(arr, tag, j, p):
            key = (tag, j, p)
            if key not in cache:
                cache[key] = arr[..., j] ** p
            return cache[key]

        out = np.zeros(lead, dtype=complex)
        for (a, b), c in self.terms.items():
            term = None
            for j in range(self.n):
                for arr, tag, p in ((z, "z", a[j]), (zb, "w", b[j])):
                    if p:
                        f = power(arr, tag, j, p)
                        term = f if term is None else term * f
            if term is None:
                out += c
            elif c == 1:
                out += term
            else:
                out += c * term
        return out[()] if out.ndim == 0 else out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            factors = [f"({c.real:.17g}{c.imag:+.17g}i)"]
            factors += [f"z{j + 1}^{p}" for j, p in enumerate(a) if p]
            factors += [f"w{j + 1}^{p}" for j, p in enumerate(b) if p]
            parts.append(" * ".join(factors))
        return " + ".join(parts)


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"""\(\s*(?P<pin>[+-]?\s*{_NUM}\s*(?:[+-]\s*(?:{_NUM})?\s*[ij])?|[+-]?\s*(?:{_NUM})?\s*[ij])\s*\)
       |(?P<bare>[+-]?{_NUM}[+-](?:{_NUM})?[ij]|[+-]?(?:{_NUM})?[ij]|[+-]?{_NUM})""",
    re.VERBOSE,
)
_FACTOR = re.compile(r"(?P<var>[zw])(?P<idx>\d+)(?:\s*\^\s*(?P<exp>\d+))?")


def _complex_literal(s: str) -> complex:
    s = s.replace(" ", "").replace("i", "j")
    if s.endswith("j") and (s[:-1] in ("", "+", "-") or s[-2] in "+-"):
        s = s[:-1] + "1j"
    return complex(s)


def parse_polynomial(text: str, n: int | None = None) -> TestFunction:
    """Parse the '+'-separated term grammar described in the module docstring."""
    pos = 0
    raw_terms: list[tuple[complex, dict, dict]] = []
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    sign = 1.0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        coeff = 1.0 + 0j
        m = _COMPLEX.match(text, pos)
        have_factor = False
        if m and not _FACTOR.match(text, pos):
            lit = m.group("pin") or m.group("bare")
            coeff = _complex_literal(lit)
            pos = m.end()
            have_factor = True
        zs: dict[int, int] = {}
        ws: dict[int, int] = {}
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if have_factor:
                if pos < len(text) and text[pos] == "*":
                    pos += 1
                    while pos < len(text) and text[pos].isspace():
                        pos += 1
                else:
                    break
            f = _FACTOR.match(text, pos)
            if not f:
                if have_factor:
                    raise ValueError(f"expected a factor at position {pos} in {text!r}")
                raise ValueError(f"cannot parse term at position {pos} in {text!r}")
            idx = int(f.group("idx"))
            if idx < 1:
                raise ValueError("variable indices start at 1")
            exp = int(f.group("exp") or 1)
            target = zs if f.group("var") == "z" else ws
            target[idx] = target.get(idx, 0) + exp
            pos = f.end()
            have_factor = True
        raw_terms.append((sign * coeff, zs, ws))
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos < len(text):
            if text[pos] == "+":
                sign = 1.0
            elif text[pos] == "-":
                sign = -1.0
            else:
                raise ValueError(f"expected '+' at position {pos} in {text!r}")
            pos += 1
    dim = max([max(list(zs) + list(ws), default=0) for _, zs, ws in raw_terms] + [1])
    if n is None:
        n = dim
    elif dim > n:
        raise ValueError(f"polynomial uses z{dim} but dimension is {n}")
    terms: dict = {}
    for c, zs, ws in raw_terms:
        a = tuple(zs.get(j + 1, 0) for j in range(n))
        b = tuple(ws.get(j + 1, 0) for j in range(n))
        terms[(a, b)] = terms.get((a, b), 0) + c
    return TestFunction(n, terms)
