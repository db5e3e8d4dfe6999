"""Square classes in rational function fields k(t), k = Q, Q(i) or Q(sqrt m).

k[t] is a unique factorisation domain, so k(t)*/k(t)*^2 is the direct sum of
k*/k*^2 and one F2 for every monic irreducible polynomial.  A rational
function's class is read off from the parity of its factor exponents.
Factorisation handles degree <= 4: roots in k come from the rational norm
polynomial, quartics without roots are split by the resolvent-cubic ansatz.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt, lcm
from typing import Iterable, Sequence

import mpmath

from .exactfield import MultiquadField, QElement, as_fraction, factorize, is_square, sqrt_exact
from .exactfield.rational import square_class_labels
from .sqclass import (
    SquareClassSpace,
    SquareClassVector,
    intersection_trivial,
    membership,
)

MAX_FACTOR_DEGREE = 4


# --------------------------------------------------------------------------- constants
class ConstantField:
    """Q (m=None), Q(i) (m=-1) or Q(sqrt m) with exact arithmetic."""

    def __init__(self, m: int | None = None):
        self.m = m
        self.field = MultiquadField([] if m is None else [m])
        self.symbol = None if m is None else ("i" if m == -1 else f"sqrt({m})")

    @classmethod
    def parse(cls, text: str) -> ConstantField:
        text = text.replace(" ", "")
        if text in ("Q", "QQ"):
            return cls()
        if text in ("Q(i)", "Q(sqrt(-1))", "Q(sqrt-1)"):
            return cls(-1)
        mt = re.fullmatch(r"Q\(sqrt\(?(-?\d+)\)?\)", text)
        if mt:
            return cls(int(mt.group(1)))
        raise ValueError(f"unknown constant field {text!r}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConstantField) and self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    def __str__(self) -> str:
        return "Q" if self.m is None else f"Q({self.symbol})"

    __repr__ = __str__

    def __call__(self, value) -> QElement:
        return self.field.coerce(value)

    @property
    def root(self) -> QElement:
        return self.field.gen()

    def conjugate(self, x: QElement) -> QElement:
        return x if self.m is None else x.conjugate()

    def fmt(self, x: QElement) -> str:
        a = x.coords[0]
        b = x.coords[1] if self.m is not None else Fraction(0)
        parts = []
        if a != 0:
            parts.append(str(a))
        if b != 0:
            coef = "" if b == 1 else "-" if b == -1 else f"{b}*"
            parts.append(f"{coef}{self.symbol}")
        if not parts:
            return "0"
        s = "+".join(parts)
        return s.replace("+-", "-")

    def constant_labels(self, c: QElement) -> frozenset[str]:
        """Labels of the class of ``c`` in k*/k*^2.

        Q: one label per prime and one for the sign.  Q(i): one label per
        Gaussian prime (first-quadrant associate) and one for the unit i.
        Q(sqrt m), m != -1: a single label naming the element, exact only for
        constants whose classes are not related (documented limitation).
        """
        if c.is_zero():
            raise ValueError("zero constant")
        if self.m is None:
            return frozenset("const:" + lab for lab in square_class_labels(c.coords[0]))
        if is_square(c):
            return frozenset()
        if self.m == -1:
            return frozenset("const:" + lab for lab in _gaussian_class_labels(c))
        return frozenset({"const:alg:" + self.fmt(c)})


def _gaussian_divmod(a: int, b: int, c: int, d: int) -> tuple[int, int] | None:
    """(a+bi)/(c+di) when it lies in Z[i]."""
    n = c * c + d * d
    re_, im = a * c + b * d, b * c - a * d
    if re_ % n or im % n:
        return None
    return re_ // n, im // n


def _first_quadrant(x: int, y: int) -> tuple[int, int]:
    for _ in range(4):
        if x > 0 and y >= 0:
            return x, y
        x, y = -y, x
    raise ValueError("zero")


def _gaussian_primes_over(p: int) -> list[tuple[int, int]]:
    if p == 2:
        return [(1, 1)]
    if p % 4 == 3:
        return [(p, 0)]
    for x in range(1, isqrt(p) + 1):
        y2 = p - x * x
        y = isqrt(y2)
        if y * y == y2:
            return sorted({_first_quadrant(x, y), _first_quadrant(x, -y)})
    raise ArithmeticError(f"{p} is not a sum of two squares")


def _gaussian_class_labels(c: QElement) -> set[str]:
    x, y = c.coords
    D = lcm(x.denominator, y.denominator)
    a, b = int(x * D * D), int(y * D * D)
    labels: set[str] = set()
    for p in factorize(a * a + b * b):
        for pi in _gaussian_primes_over(p):
            e = 0
            while (q := _gaussian_divmod(a, b, *pi)) is not None:
                a, b = q
                e += 1
            if e % 2:
                labels.add(f"gp:{pi[0]}+{pi[1]}i")
    # what is left is a unit i^k; -1 = i^2 is a square
    if (a, b) in ((0, 1), (0, -1)):
        labels.add("unit:i")
    return labels


# --------------------------------------------------------------------------- polynomials
@dataclass(frozen=True)
class Poly:
    """A polynomial over a constant field, coefficients low -> high, no trailing zeros."""

    k: ConstantField
    coeffs: tuple

    @classmethod
    def make(cls, k: ConstantField, coeffs: Iterable) -> Poly:
        cs = [k(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        return cls(k, tuple(cs))

    @classmethod
    def t(cls, k: ConstantField) -> Poly:
        return cls.make(k, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> QElement:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, o: Poly) -> Poly:
        o = self._p(o)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.k(0)
        return Poly.make(self.k, [(self.coeffs[i] if i < len(self.coeffs) else z) + (o.coeffs[i] if i < len(o.coeffs) else z) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.k, tuple(-c for c in self.coeffs))

    def __sub__(self, o: Poly) -> Poly:
        return self + (-self._p(o))

    def __rsub__(self, o) -> Poly:
        return (-self) + o

    def __mul__(self, o) -> Poly:
        o = self._p(o)
        if self.is_zero() or o.is_zero():
            return Poly(self.k, ())
        out = [self.k(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly.make(self.k, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.make(self.k, [1])
        for _ in range(n):
            out = out * self
        return out

    def _p(self, o) -> Poly:
        if isinstance(o, Poly):
            return o
        return Poly.make(self.k, [o])

    def divmod(self, d: Poly) -> tuple[Poly, Poly]:
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        q = [self.k(0)] * max(0, len(r) - d.degree)
        inv = d.lead.inverse()
        while len(r) - 1 >= d.degree and r:
            coef = r[-1] * inv
            shift = len(r) - 1 - d.degree
            q[shift] = coef
            for i, c in enumerate(d.coeffs):
                r[shift + i] = r[shift + i] - coef * c
            while r and r[-1].is_zero():
                r.pop()
        return Poly.make(self.k, q), Poly.make(self.k, r)

    def monic(self) -> Poly:
        inv = self.lead.inverse()
        return Poly.make(self.k, [c * inv for c in self.coeffs])

    def __call__(self, x) -> QElement:
        acc = self.k(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def conjugate(self) -> Poly:
        return Poly(self.k, tuple(self.k.conjugate(c) for c in self.coeffs))

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            cs = self.k.fmt(c)
            mon = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            if not mon:
                terms.append(cs)
            elif cs == "1":
                terms.append(mon)
            elif cs == "-1":
                terms.append("-" + mon)
            elif c.coords[0] == 0 or c.is_rational():
                terms.append(f"{cs}*{mon}")
            else:
                terms.append(f"({cs})*{mon}")
        s = "+".join(terms)
        return s.replace("+-", "-")

    __repr__ = __str__


def parse_poly(text: str, k: ConstantField) -> Poly:
    """Parse e.g. ``"t^2+2*t+2"`` or ``"(t-i)^2*(t+2*i)"`` over ``k``."""
    tokens = re.findall(r"\d+(?:/\d+)?|sqrt\(-?\d+\)|[a-z]+|[()+\-*^/]", text.replace(" ", ""))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def atom() -> Poly:
        tok = take()
        if tok == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if tok == "t":
            return Poly.t(k)
        if tok == "i" or tok.startswith("sqrt("):
            if k.symbol is None or (tok == "i" and k.m != -1) or (tok != "i" and tok != k.symbol and not (k.m == -1 and tok == "sqrt(-1)")):
                raise ValueError(f"{tok} is not in {k}")
            return Poly.make(k, [k.root])
        if re.fullmatch(r"\d+(/\d+)?", tok):
            return Poly.make(k, [Fraction(tok)])
        raise ValueError(f"unexpected token {tok!r}")

    def power() -> Poly:
        base = atom()
        if peek() == "^":
            take()
            return base ** int(take())
        return base

    def term() -> Poly:
        v = power()
        while peek() in ("*", "/"):
            op = take()
            rhs = power()
            if op == "*":
                v = v * rhs
            else:
                if rhs.degree != 0:
                    raise ValueError("division only by constants")
                v = v * rhs.coeffs[0].inverse()
        return v

    def expr() -> Poly:
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        v = term() if sign == 1 else -term()
        while peek() in ("+", "-"):
            op = take()
            v = v + term() if op == "+" else v - term()
        return v

    out = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


# --------------------------------------------------------------------------- roots in k
def derivative(f: Poly) -> Poly:
    return Poly.make(f.k, [c * j for j, c in enumerate(f.coeffs)][1:])


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over k (Euclid)."""
    while not g.is_zero():
        f, g = g, f.divmod(g)[1]
    return f.monic() if not f.is_zero() else f


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of f (characteristic 0)."""
    g = poly_gcd(f, derivative(f))
    return f.divmod(g)[0].monic()


def _embeddings(k: ConstantField, prec: int) -> list:
    """Images of sqrt m under the embeddings of k into C."""
    if k.m is None:
        return [None]
    with mpmath.workprec(prec):
        r = mpmath.sqrt(mpmath.mpf(k.m)) if k.m > 0 else mpmath.mpc(0, mpmath.sqrt(-k.m))
    return [r, -r] if k.m > 0 else [r]


def _numeric(x: QElement, root) -> mpmath.mpc:
    a = mpmath.mpf(x.coords[0].numerator) / x.coords[0].denominator
    if root is None:
        return mpmath.mpc(a)
    b = mpmath.mpf(x.coords[1].numerator) / x.coords[1].denominator
    return a + b * root


def roots_in_k(g: Poly) -> list[QElement]:
    """Distinct roots of ``g`` lying in its constant field.

    Degrees 1 and 2 are solved exactly (quadratic formula with an exact
    square root in k).  Higher degrees: approximate complex roots of the
    squarefree part propose candidates, which are rounded and verified by
    exact evaluation, so a wrong root is never returned.  Rounding is safe
    because for monic g with coefficient denominators dividing D, D*alpha is
    an algebraic integer and the coordinates of alpha lie in (1/2D)Z.
    """
    k = g.k
    if g.degree < 1:
        return []
    h = squarefree_part(g)
    if h.degree == 1:
        return [-h.coeffs[0]]
    if h.degree == 2:
        c, b = h.coeffs[0], h.coeffs[1]
        r = sqrt_exact(b * b - 4 * c) if not (b * b - 4 * c).is_zero() else k(0)
        if r is None:
            return []
        return [(-b + r) * Fraction(1, 2), (-b - r) * Fraction(1, 2)]
    den = lcm(*(x.denominator for c in h.coeffs for x in c.coords))
    size = max(abs(x.numerator) for c in h.coeffs for x in c.coords)
    prec = 128 + 8 * (den.bit_length() + size.bit_length())
    scale = 2 * den
    images = []
    with mpmath.workprec(prec):
        for root in _embeddings(k, prec):
            coeffs = [_numeric(c, root) for c in reversed(h.coeffs)]
            images.append(mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec))

        def near(z) -> Fraction:
            return Fraction(int(mpmath.nint(z * scale)), scale)

        candidates: list[QElement] = []
        if k.m is None:
            candidates = [k(near(mpmath.re(z))) for z in images[0]]
        elif k.m < 0:
            s = mpmath.sqrt(-k.m)
            candidates = [k([near(mpmath.re(z)), near(mpmath.im(z) / s)]) for z in images[0]]
        else:
            s = mpmath.sqrt(k.m)
            for z1 in images[0]:
                for z2 in images[1]:
                    x, y = mpmath.re(z1 + z2) / 2, mpmath.re(z1 - z2) / (2 * s)
                    candidates.append(k([near(x), near(y)]))
    out: list[QElement] = []
    for a in candidates:
        if a not in out and h(a).is_zero():
            out.append(a)
    return out


# --------------------------------------------------------------------------- factoring
@dataclass(frozen=True)
class FactoredRatFunc:
    """``constant * prod f_j^{e_j}`` with monic irreducible distinct f_j and nonzero e_j."""

    k: ConstantField
    constant: QElement
    factors: tuple  # tuple[tuple[Poly, int], ...], sorted by str

    @classmethod
    def build(cls, k: ConstantField, constant, factors: Iterable[tuple[Poly, int]]) -> FactoredRatFunc:
        acc: dict[str, list] = {}
        for f, e in factors:
            key = str(f)
            if key in acc:
                acc[key][1] += e
            else:
                acc[key] = [f, e]
        fs = tuple(sorted(((f, e) for f, e in acc.values() if e != 0), key=lambda fe: str(fe[0])))
        c = k(constant)
        if c.is_zero():
            raise ValueError("zero rational function")
        return cls(k, c, fs)

    def __mul__(self, other: FactoredRatFunc) -> FactoredRatFunc:
        return FactoredRatFunc.build(self.k, self.constant * other.constant, self.factors + other.factors)

    def __pow__(self, n: int) -> FactoredRatFunc:
        return FactoredRatFunc.build(self.k, self.constant**n, [(f, e * n) for f, e in self.factors])

    def inverse(self) -> FactoredRatFunc:
        return self ** -1

    def exponent(self, f: Poly | str) -> int:
        key = str(f)
        return next((e for g, e in self.factors if str(g) == key), 0)

    def expand(self) -> Poly:
        if any(e < 0 for _, e in self.factors):
            raise ValueError("not a polynomial")
        out = Poly.make(self.k, [self.constant])
        for f, e in self.factors:
            out = out * f**e
        return out

    def __str__(self) -> str:
        parts = [] if self.constant == 1 else [self.k.fmt(self.constant)]
        for f, e in self.factors:
            parts.append(f"({f})" + ("" if e == 1 else f"^{e}"))
        return "*".join(parts) or "1"


def _split_quartic(h: Poly) -> tuple[Poly, Poly] | None:
    """Split a monic quartic without roots in k into two quadratics over k."""
    k = h.k
    shift = h.coeffs[3] * Fraction(1, 4)
    # depressed quartic in u = t + p/4
    t = Poly.t(k)
    dep = h_at(h, t - Poly.make(k, [shift]))
    padded = list(dep.coeffs) + [k(0)] * (5 - len(dep.coeffs))
    S, R, Q = padded[0], padded[1], padded[2]
    pairs: list[tuple[QElement, QElement, QElement]] = []
    resolvent = Poly.make(k, [-(R * R), Q * Q - 4 * S, 2 * Q, 1])
    for z in roots_in_k(resolvent):
        if z.is_zero() or not is_square(z):
            continue
        beta = sqrt_exact(z)
        gam = (Q + z - R / beta) * Fraction(1, 2)
        dlt = (Q + z + R / beta) * Fraction(1, 2)
        pairs.append((beta, gam, dlt))
    if R.is_zero():
        for gam in roots_in_k(Poly.make(k, [S, -Q, 1])):
            pairs.append((k(0), gam, Q - gam))
    for beta, gam, dlt in pairs:
        a = Poly.make(k, [gam, beta, 1])
        b = Poly.make(k, [dlt, -beta, 1])
        back = t + Poly.make(k, [shift])
        fa, fb = h_at(a, back), h_at(b, back)
        if fa * fb == h:
            return fa, fb
    return None


def h_at(f: Poly, x: Poly) -> Poly:
    """Composition ``f(x)``."""
    acc = Poly.make(f.k, [])
    for c in reversed(f.coeffs):
        acc = acc * x + Poly.make(f.k, [c])
    return acc


def factor(f: Poly) -> FactoredRatFunc:
    """Irreducible factorisation over k of a nonzero polynomial of degree <= 4."""
    if f.is_zero():
        raise ValueError("cannot factor 0")
    if f.degree > MAX_FACTOR_DEGREE:
        raise ValueError(f"degree {f.degree} > {MAX_FACTOR_DEGREE} not supported")
    k = f.k
    const = f.lead
    h = f.monic()
    out: list[tuple[Poly, int]] = []
    for a in roots_in_k(h):
        lin = Poly.make(k, [-a, 1])
        while True:
            qt, rm = h.divmod(lin)
            if not rm.is_zero():
                break
            h = qt
            out.append((lin, 1))
    if h.degree == 4:
        split = _split_quartic(h)
        if split is not None:
            out.extend((g, 1) for g in split)
            h = Poly.make(k, [1])
    if h.degree >= 1:
        out.append((h, 1))
    return FactoredRatFunc.build(k, const, out)


def factor_rational_function(num: Poly, den: Poly | None = None) -> FactoredRatFunc:
    f = factor(num)
    return f if den is None else f * factor(den).inverse()


# --------------------------------------------------------------------------- square classes
@dataclass(frozen=True)
class FFSquareClass:
    vector: SquareClassVector
    polys: dict = field(default_factory=dict, compare=False, hash=False)  # label -> Poly
    k: ConstantField | None = field(default=None, compare=False, hash=False)

    @property
    def support(self) -> frozenset[str]:
        return self.vector.support

    def __add__(self, other: FFSquareClass) -> FFSquareClass:
        return FFSquareClass(self.vector + other.vector, {**self.polys, **other.polys}, self.k)

    def conjugate(self) -> FFSquareClass:
        """Image under the nontrivial automorphism of k (i -> -i over Q(i)).

        Only classes without a constant part are supported.
        """
        if any(not lab.startswith("irr:") for lab in self.support):
            raise ValueError("conjugation of constant labels not supported")
        polys = {}
        for lab in self.support:
            g = self.polys[lab].conjugate()
            polys[irr_label(g)] = g
        return FFSquareClass(SquareClassVector(polys), polys, self.k)

    def __str__(self) -> str:
        return str(self.vector)


def irr_label(f: Poly) -> str:
    return f"irr:{f}"


def square_class_of(f: FactoredRatFunc | Poly) -> FFSquareClass:
    if isinstance(f, Poly):
        f = factor(f)
    polys = {irr_label(g): g for g, e in f.factors if e % 2}
    labels = set(polys) | set(f.k.constant_labels(f.constant))
    return FFSquareClass(SquareClassVector(labels), polys, f.k)


# --------------------------------------------------------------------------- example over C(t)
GAUSSIAN = ConstantField(-1)

DEFAULT_R = (Fraction(0), Fraction(1), Fraction(-2))
DEFAULT_BC = ((Fraction(0), Fraction(1)), (Fraction(2), Fraction(2)), (Fraction(-2), Fraction(5)))


def stress_grid() -> tuple[list[Fraction], list[tuple[Fraction, Fraction]]]:
    """13 linear and 18 quadratic samples (31 V-generators)."""
    rs = [Fraction(r) for r in range(-6, 7)]
    bcs = [(Fraction(b), Fraction(c)) for b, c in product(range(-2, 3), range(1, 6)) if b * b - 4 * c < 0]
    return rs, bcs[:18]


def w_space(k: ConstantField = GAUSSIAN) -> SquareClassSpace:
    """span{[t-i], [t+2i]}."""
    t = Poly.t(k)
    i = k.root
    return SquareClassSpace.span([square_class_of(t - i).vector, square_class_of(t + 2 * i).vector])


def v_generators(
    samples_r: Iterable, samples_bc: Iterable, k: ConstantField = GAUSSIAN
) -> list[tuple[str, FFSquareClass]]:
    t = Poly.t(k)
    gens = []
    for r in samples_r:
        f = t + as_fraction(r)
        gens.append((str(f), square_class_of(f)))
    for b, c in samples_bc:
        b, c = as_fraction(b), as_fraction(c)
        if b * b - 4 * c >= 0:
            raise ValueError(f"sample (b, c) = ({b}, {c}) violates b^2 - 4c < 0")
        f = t * t + t * b + c
        gens.append((str(f), square_class_of(f)))
    return gens


def v_space(samples_r: Iterable, samples_bc: Iterable, k: ConstantField = GAUSSIAN) -> SquareClassSpace:
    return SquareClassSpace.span(g.vector for _, g in v_generators(samples_r, samples_bc, k))


def claim1_check(
    samples_r: Iterable = DEFAULT_R, samples_bc: Iterable = DEFAULT_BC, k: ConstantField = GAUSSIAN
) -> bool | SquareClassVector:
    """Whether span{[t-i],[t+2i]} meets the span of the sampled real-parameter
    classes [t+r], [t^2+bt+c] (b^2 < 4c) only in [1]; else a common class."""
    samples_r, samples_bc = list(samples_r), list(samples_bc)
    V = v_space(samples_r, samples_bc, k)
    return intersection_trivial(w_space(k), V)


@dataclass
class ParityTrace:
    query: SquareClassVector
    steps: list  # (generator label, class added, residual after)
    residual: SquareClassVector
    member: bool

    def lines(self) -> list[str]:
        out = [f"query {self.query}"]
        for name, added, res in self.steps:
            out.append(f"  + [{name}] = {added}  ->  residual {res}")
        out.append(f"residual {self.residual}: " + ("in span" if self.member else "odd exponents remain, not in span"))
        return out


def parity_trace(generators: Sequence[tuple[str, FFSquareClass]], query: SquareClassVector) -> ParityTrace:
    """Try to cancel ``query`` with the generators, one label at a time.

    Each step picks the first residual label that some unused generator
    contains and adds that generator.  When no unused generator touches the
    residual, the labels left have odd exponent on one side only.  Exact
    membership is decided separately in the echelon span.
    """
    space = SquareClassSpace.span(g.vector for _, g in generators)
    rest = query
    used: set[int] = set()
    steps = []
    while True:
        pick = None
        for label in sorted(rest.support):
            for j, (name, g) in enumerate(generators):
                if j not in used and label in g.support:
                    pick = j
                    break
            if pick is not None:
                break
        if pick is None:
            break
        used.add(pick)
        name, g = generators[pick]
        rest = rest + g.vector
        steps.append((name, g.vector, rest))
        if rest.is_identity:
            break
    return ParityTrace(query, steps, rest, membership(space, query))