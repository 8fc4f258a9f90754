"""Arithmetic in the Cayley-Dickson algebras A_n.

An element of A_n is stored as its 2^n real coordinates over the standard
basis: e_0 = 1, e_k = (e_k, 0) for k < 2^(n-1) and e_{2^(n-1)+k} = (0, e_k).
In particular i_n = e_{2^(n-1)}, and A_3 gets the basis order
1, i, j, k, t, it, jt, kt.
"""
from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass
from numbers import Real

import numpy as np

import config
from errors import IndexOutOfRangeError, LevelError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

# Names for the standard basis of A_3
ALIASES = {"1": 0, "i": 1, "j": 2, "k": 3, "t": 4, "it": 5, "jt": 6, "kt": 7}


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CDElement:
    """An element of A_n as 2^n coefficients over the standard basis."""

    level: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 0 <= self.level <= config.MAX_LEVEL:
            raise LevelError(f"level {self.level} is outside 0..{config.MAX_LEVEL}")
        coeffs = _frozen_array(self.coeffs)
        if coeffs.shape != (1 << self.level,):
            raise LevelError(
                f"level {self.level} needs {1 << self.level} coefficients, got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise PreconditionError("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, values) -> "CDElement":
        arr = np.asarray(values, dtype=float)
        size = arr.shape[0] if arr.ndim == 1 else 0
        if size == 0 or size & (size - 1):
            raise LevelError(f"coefficient count {size} is not a power of two")
        return cls(size.bit_length() - 1, arr)

    @classmethod
    def zero(cls, level: int) -> "CDElement":
        return cls(level, np.zeros(1 << level))

    @classmethod
    def one(cls, level: int) -> "CDElement":
        return basis_element(level, 0)

    @property
    def dim(self) -> int:
        return 1 << self.level

    def is_zero(self, tol: float = 0.0) -> bool:
        return float(np.max(np.abs(self.coeffs))) <= tol

    def allclose(self, other: "CDElement", atol: float = 1e-9) -> bool:
        _same_level(self, other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0.0, atol=atol))

    def __add__(self, other: "CDElement") -> "CDElement":
        _same_level(self, other)
        return CDElement(self.level, self.coeffs + other.coeffs)

    def __sub__(self, other: "CDElement") -> "CDElement":
        _same_level(self, other)
        return CDElement(self.level, self.coeffs - other.coeffs)

    def __neg__(self) -> "CDElement":
        return CDElement(self.level, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, CDElement):
            return multiply(self, other)
        if isinstance(other, Real):
            return CDElement(self.level, float(other) * self.coeffs)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return CDElement(self.level, float(other) * self.coeffs)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return CDElement(self.level, self.coeffs / float(other))
        return NotImplemented

    def as_dict(self) -> dict:
        return {"level": self.level, "coeffs": [float(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_json(cls, payload) -> "CDElement":
        data = json.loads(payload) if isinstance(payload, str) else payload
        return cls(int(data["level"]), data["coeffs"])

    def __repr__(self) -> str:
        return f"CDElement(level={self.level}, {format_element(self)!r})"


@dataclass(frozen=True)
class ComplexScalar:
    """re + im * i_n, an element of the complex subalgebra C_n."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise PreconditionError("complex scalar must be finite")

    def conj(self) -> "ComplexScalar":
        return ComplexScalar(self.re, -self.im)

    def __add__(self, other: "ComplexScalar") -> "ComplexScalar":
        return ComplexScalar(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        # C_n is a field: i_n^2 = -1
        if isinstance(other, ComplexScalar):
            return ComplexScalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, Real):
            return ComplexScalar(self.re * other, self.im * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return ComplexScalar(self.re * other, self.im * other)
        return NotImplemented

    def norm(self) -> float:
        return math.hypot(self.re, self.im)

    def cross(self, other: "ComplexScalar") -> float:
        """i_n coefficient of Im(self * other^*)."""
        return self.im * other.re - self.re * other.im

    def to_element(self, level: int) -> CDElement:
        if level < 1:
            raise LevelError("C_n needs level >= 1")
        coeffs = np.zeros(1 << level)
        coeffs[0] = self.re
        coeffs[1 << (level - 1)] = self.im
        return CDElement(level, coeffs)

    @classmethod
    def from_element(cls, x: CDElement, tol: float = 1e-9) -> "ComplexScalar":
        if x.level < 1:
            raise LevelError("C_n needs level >= 1")
        beta = cls(float(x.coeffs[0]), float(x.coeffs[x.dim // 2]))
        rest = x - beta.to_element(x.level)
        if norm(rest) > tol * max(1.0, norm(x)):
            raise PreconditionError("element is not in the complex subalgebra C_n")
        return beta


@dataclass(frozen=True)
class ComplexDecomposition:
    """x = beta + perp, and x = scale * (unit_perp cos(theta) + unit_beta sin(theta))."""

    beta: ComplexScalar
    perp: CDElement
    scale: float
    theta: float | None
    unit_perp: CDElement | None
    unit_beta: ComplexScalar | None


def _same_level(*elements: CDElement) -> None:
    levels = {x.level for x in elements}
    if len(levels) > 1:
        raise LevelError(f"level mismatch: {sorted(levels)}")


# =========================
# Doubling formula on arrays
# =========================

def _conj_array(x: np.ndarray) -> np.ndarray:
    # (a, b)* = (a*, -b) over the last axis
    if x.shape[-1] == 1:
        return x.copy()
    h = x.shape[-1] // 2
    return np.concatenate([_conj_array(x[..., :h]), -x[..., h:]], axis=-1)


def _double_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # (a, b)(c, d) = (ac - d*b, da + bc*); the four half-size products of a
    # level are stacked and evaluated in one recursive call
    if x.shape[-1] == 1:
        return x * y
    h = x.shape[-1] // 2
    a, b = x[..., :h], x[..., h:]
    c, d = y[..., :h], y[..., h:]
    left = np.stack([a, _conj_array(d), d, b])
    right = np.stack([c, b, a, _conj_array(c)])
    ac, db, da, bc = _double_product(left, right)
    return np.concatenate([ac - db, da + bc], axis=-1)


def product_rows(lefts: np.ndarray, rights: np.ndarray) -> np.ndarray:
    """Row-wise products of two (m, 2^n) arrays (either side may be a single row)."""
    lefts, rights = np.broadcast_arrays(np.atleast_2d(lefts), np.atleast_2d(rights))
    out = np.empty(lefts.shape, dtype=float)
    step = config.PRODUCT_CHUNK
    for start in range(0, lefts.shape[0], step):
        stop = start + step
        out[start:stop] = _double_product(lefts[start:stop], rights[start:stop])
    return out


# =========================
# Operations
# =========================

def basis_element(n: int, k: int) -> CDElement:
    if not 0 <= k < (1 << n):
        raise IndexOutOfRangeError(f"basis index {k} is outside 0..{(1 << n) - 1}")
    coeffs = np.zeros(1 << n)
    coeffs[k] = 1.0
    return CDElement(n, coeffs)


def unit_imaginary(n: int) -> CDElement:
    """i_n = (0, 1)."""
    if n < 1:
        raise LevelError("i_n needs level >= 1")
    return basis_element(n, 1 << (n - 1))


def multiply(x: CDElement, y: CDElement) -> CDElement:
    _same_level(x, y)
    return CDElement(x.level, _double_product(x.coeffs, y.coeffs))


def conjugate(x: CDElement) -> CDElement:
    return CDElement(x.level, _conj_array(x.coeffs))


def real_part(x: CDElement) -> CDElement:
    return 0.5 * (x + conjugate(x))


def imag_part(x: CDElement) -> CDElement:
    return 0.5 * (x - conjugate(x))


def inner_real(x: CDElement, y: CDElement) -> float:
    """<x, y>_R = Re(x y^*)."""
    _same_level(x, y)
    return float(multiply(x, conjugate(y)).coeffs[0])


def inner_hermitian(x: CDElement, y: CDElement) -> ComplexScalar:
    """Orthogonal projection of x y^* onto C_n."""
    _same_level(x, y)
    if x.level < 1:
        raise LevelError("the hermitian inner product needs level >= 1")
    p = multiply(x, conjugate(y)).coeffs
    return ComplexScalar(float(p[0]), float(p[x.dim // 2]))


def norm(x: CDElement) -> float:
    return math.sqrt(max(inner_real(x, x), 0.0))


def cross(x: CDElement, y: CDElement) -> CDElement:
    """x × y, the imaginary part of x y^*."""
    return imag_part(multiply(x, conjugate(y)))


def split(x: CDElement) -> tuple[CDElement, CDElement]:
    if x.level < 1:
        raise LevelError("cannot split an element of A_0")
    h = x.dim // 2
    return CDElement(x.level - 1, x.coeffs[:h]), CDElement(x.level - 1, x.coeffs[h:])


def join(b: CDElement, c: CDElement) -> CDElement:
    _same_level(b, c)
    return CDElement(b.level + 1, np.concatenate([b.coeffs, c.coeffs]))


def complex_action(alpha: ComplexScalar, x: CDElement) -> CDElement:
    """alpha * x for alpha in C_n."""
    return multiply(alpha.to_element(x.level), x)


def project_complex(x: CDElement) -> ComplexDecomposition:
    if x.level < 1:
        raise LevelError("C_n needs level >= 1")
    beta = ComplexScalar(float(x.coeffs[0]), float(x.coeffs[x.dim // 2]))
    perp = x - beta.to_element(x.level)
    perp_norm, beta_norm = norm(perp), beta.norm()
    scale = math.hypot(perp_norm, beta_norm)
    if scale == 0.0:
        return ComplexDecomposition(beta, perp, 0.0, None, None, None)

    theta = math.atan2(beta_norm, perp_norm)
    if perp_norm > 0.0:
        unit_perp = perp / perp_norm
    elif x.level >= 2:
        # vanishing part: canonical unit vector of C_n^⊥
        unit_perp = basis_element(x.level, 1)
    else:
        unit_perp = None
    unit_beta = beta * (1.0 / beta_norm) if beta_norm > 0.0 else ComplexScalar(1.0, 0.0)
    return ComplexDecomposition(beta, perp, scale, theta, unit_perp, unit_beta)


def is_alternative(a: CDElement, tol: float = 1e-9) -> bool:
    """a(ax) = a^2 x for every basis vector x (enough by linearity)."""
    eye = np.eye(a.dim)
    ax = product_rows(a.coeffs, eye)
    a_ax = product_rows(a.coeffs, ax)
    a2x = product_rows(multiply(a, a).coeffs, eye)
    worst = float(np.max(np.linalg.norm(a_ax - a2x, axis=1)))
    return worst <= tol * norm(a) ** 2


# =========================
# Element expressions
# =========================

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]\d+)?)
  | (?P<name>[a-z]+\d*)
  | (?P<op>[-+*(),−])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tok_text = m.group()
            if tok_text == "−":
                tok_text = "-"
            tokens.append(_Token(kind, tok_text, pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _ElementParser:
    """Recursive descent over the element grammar, evaluating as it goes.

    expr := ['+'|'-'] term (('+'|'-') term)*
    term := REAL ['*'] atom | REAL | atom
    atom := '(' expr ',' expr ')' | 'e' UINT | 'i' UINT | 1 | i | j | k | t | it | jt | kt
    """

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _next(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def _expect(self, text: str) -> None:
        tok = self._next()
        if tok.text != text or tok.kind != "op":
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)

    def parse(self, level: int) -> np.ndarray:
        value = self._expr(level)
        tok = self._peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return value

    def _expr(self, level: int) -> np.ndarray:
        sign = 1.0
        tok = self._peek()
        if tok.kind == "op" and tok.text in "+-":
            self._next()
            sign = -1.0 if tok.text == "-" else 1.0
        total = sign * self._term(level)
        while True:
            tok = self._peek()
            if tok.kind != "op" or tok.text not in "+-":
                return total
            self._next()
            term = self._term(level)
            total = total - term if tok.text == "-" else total + term

    def _starts_atom(self, tok: _Token, after_star: bool) -> bool:
        if tok.kind == "name" or (tok.kind == "op" and tok.text == "("):
            return True
        return after_star and tok.kind == "num" and tok.text == "1"

    def _term(self, level: int) -> np.ndarray:
        tok = self._peek()
        if tok.kind != "num":
            return self._atom(level)
        self._next()
        coef = float(tok.text)
        star = False
        if self._peek().kind == "op" and self._peek().text == "*":
            self._next()
            star = True
        if self._starts_atom(self._peek(), star):
            return coef * self._atom(level)
        if star:
            nxt = self._peek()
            raise ParseError("expected an element after '*'", nxt.pos)
        return coef * self._unit(level)

    def _unit(self, level: int) -> np.ndarray:
        out = np.zeros(1 << level)
        out[0] = 1.0
        return out

    def _basis(self, level: int, index: int, needed: int, tok: _Token) -> np.ndarray:
        if needed > level:
            raise ParseError(
                f"{tok.text!r} needs level {needed} but the element is at level {level}", tok.pos
            )
        out = np.zeros(1 << level)
        out[index] = 1.0
        return out

    def _atom(self, level: int) -> np.ndarray:
        tok = self._next()
        if tok.kind == "op" and tok.text == "(":
            if level < 1:
                raise ParseError("pair syntax needs level >= 1", tok.pos)
            first = self._expr(level - 1)
            self._expect(",")
            second = self._expr(level - 1)
            self._expect(")")
            return np.concatenate([first, second])
        if tok.kind == "num" and tok.text == "1":
            return self._unit(level)
        if tok.kind == "name":
            if tok.text in ALIASES:
                index = ALIASES[tok.text]
                return self._basis(level, index, index.bit_length(), tok)
            m = re.fullmatch(r"([ei])(\d+)", tok.text)
            if m and m.group(1) == "e":
                index = int(m.group(2))
                return self._basis(level, index, index.bit_length(), tok)
            if m and m.group(1) == "i":
                order = int(m.group(2))
                if order < 1:
                    raise ParseError("i<m> needs m >= 1", tok.pos)
                return self._basis(level, 1 << (order - 1), order, tok)
            raise ParseError(f"unknown name {tok.text!r}", tok.pos)
        raise ParseError(f"expected an element, found {tok.text or 'end of input'!r}", tok.pos)


def parse_element(text: str, n: int) -> CDElement:
    if not 0 <= n <= config.MAX_LEVEL:
        raise LevelError(f"level {n} is outside 0..{config.MAX_LEVEL}")
    coeffs = _ElementParser(text).parse(n)
    return CDElement(n, coeffs)


def format_element(x: CDElement) -> str:
    """Expression text that parses back to exactly the same coefficients."""
    parts = []
    for k, c in enumerate(x.coeffs):
        if c == 0.0:
            continue
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{abs(float(c))!r}*e{k}"))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
