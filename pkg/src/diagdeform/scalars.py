"""Exact scalar tower: rationals, tagged polynomials, rational functions,
truncated power series.

Every computation in this package bottoms out here.  The tower is

    Fraction  <  UniPoly (one tagged variable)  <  RatFunc  <  TruncSeries

with three variable tags in play: "lambda" for the moving puncture, "q" for
the quantum parameter, "hbar" for the formal deformation parameter.  Tags are
kept apart on purpose; adding a q-polynomial to a lambda-polynomial is a bug
in the caller, so it raises TagMismatch instead of guessing.

TruncSeries is generic over its coefficient ring through the small ring
adapters at the bottom of this module, so the same container later carries
rational coefficients, rational-function coefficients, or whole algebra
elements.  All equality is structural and exact; nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction


LAMBDA = "lambda"
QVAR = "q"
HBAR = "hbar"


class ScalarError(ArithmeticError):
    pass


class TagMismatch(ScalarError):
    """Arithmetic tried to mix two distinct variable tags."""


class PoleAtZero(ScalarError):
    """A series expansion was requested for a function with a pole at 0."""


class PoleAtPoint(ScalarError):
    """Evaluation hit a zero of the denominator."""


class ValuationMismatch(ScalarError):
    """Series division needs numerator and denominator of equal valuation."""


class NonInvertibleLeadingCoefficient(ScalarError):
    pass


def _fr(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot coerce {v!r} to a rational")


def _check_tags(a: str, b: str) -> None:
    if a != b:
        raise TagMismatch(f"cannot mix variables {a!r} and {b!r}")


class UniPoly:
    """Dense univariate polynomial over Fraction with a variable tag.

    Coefficients are stored lowest degree first and trimmed, so the zero
    polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs):
        cs = [_fr(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.var = var
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, var: str, value) -> "UniPoly":
        return cls(var, [_fr(value)])

    @classmethod
    def zero(cls, var: str) -> "UniPoly":
        return cls(var, [])

    @classmethod
    def one(cls, var: str) -> "UniPoly":
        return cls(var, [1])

    @classmethod
    def gen(cls, var: str) -> "UniPoly":
        return cls(var, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        _check_tags(self.var, other.var)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.var, [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        _check_tags(self.var, other.var)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(self.var, other)

    def __divmod__(self, other):
        other = self._coerce(other)
        _check_tags(self.var, other.var)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading()
        if len(rem) - 1 < dq:
            return UniPoly.zero(self.var), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            if rem[i]:
                c = rem[i] / lead
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return UniPoly(self.var, quot), UniPoly(self.var, rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return UniPoly(self.var, [c / lead for c in self.coeffs])

    def evaluate(self, value) -> Fraction:
        value = _fr(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def valuation(self):
        """Index of the lowest nonzero coefficient, or None for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def shift_down(self, v: int) -> "UniPoly":
        """Divide by var**v, assuming the valuation allows it."""
        if v == 0:
            return self
        assert all(c == 0 for c in self.coeffs[:v])
        return UniPoly(self.var, self.coeffs[v:])

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                pw = self.var if k == 1 else f"{self.var}^{k}"
                term = mag + pw
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.var!r}, {list(self.coeffs)!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    _check_tags(a.var, b.var)
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


class RatFunc:
    """Quotient of tagged polynomials in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        _check_tags(num.var, den.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = UniPoly.one(num.var)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lead = den.leading()
            if lead != 1:
                num = num * UniPoly.const(num.var, 1 / lead)
                den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatFunc":
        return cls(p, UniPoly.one(p.var))

    @classmethod
    def const(cls, var: str, value) -> "RatFunc":
        return cls(UniPoly.const(var, value), UniPoly.one(var))

    @classmethod
    def zero(cls, var: str) -> "RatFunc":
        return cls.const(var, 0)

    @classmethod
    def one(cls, var: str) -> "RatFunc":
        return cls.const(var, 1)

    @classmethod
    def gen(cls, var: str) -> "RatFunc":
        return cls(UniPoly.gen(var), UniPoly.one(var))

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc.from_poly(other)
        return RatFunc.const(self.var, other)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(self.var, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.var == other.var and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        _check_tags(self.var, other.var)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        _check_tags(self.var, other.var)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, UniPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def evaluate(self, value) -> Fraction:
        value = _fr(value)
        d = self.den.evaluate(value)
        if d == 0:
            raise PoleAtPoint(f"denominator {self.den} vanishes at {value}")
        return self.num.evaluate(value) / d

    def to_json(self):
        if self.is_const():
            return str(self.const_value())
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"


def specialize(f, value) -> Fraction:
    """Evaluate a UniPoly or RatFunc at an exact rational point."""
    if isinstance(f, UniPoly):
        return f.evaluate(value)
    if isinstance(f, RatFunc):
        return f.evaluate(value)
    return _fr(f)


# ---------------------------------------------------------------------------
# coefficient-ring adapters


class RationalRing:
    """The rationals, as a coefficient ring for TruncSeries and friends."""

    tag = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_rational(self, c) -> Fraction:
        return _fr(c)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a == 0:
            raise NonInvertibleLeadingCoefficient("division by zero rational")
        return 1 / _fr(a)

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return "QQ"


QQ = RationalRing()


class RatFuncRing:
    """The field of rational functions in one tagged variable."""

    def __init__(self, var: str):
        self.var = var
        self.zero = RatFunc.zero(var)
        self.one = RatFunc.one(var)

    def from_int(self, n: int) -> RatFunc:
        return RatFunc.const(self.var, n)

    def from_rational(self, c) -> RatFunc:
        return RatFunc.const(self.var, c)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def inv(self, a):
        if a.is_zero():
            raise NonInvertibleLeadingCoefficient("division by zero rational function")
        return a.inverse()

    def __eq__(self, other):
        return isinstance(other, RatFuncRing) and self.var == other.var

    def __hash__(self):
        return hash(("RatFuncRing", self.var))

    def __repr__(self):
        return f"QQ({self.var})"


class TruncSeries:
    """Truncated power series in hbar over a declared coefficient ring.

    A value of order N represents an element of R[[hbar]]/(hbar^(N+1)); the
    coefficient tuple always has length N+1.  Binary operations between
    series of different orders truncate to the smaller order, which is the
    only sound option once high coefficients have been discarded.
    """

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, order: int, coeffs):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = list(coeffs)
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        while len(cs) < order + 1:
            cs.append(ring.zero)
        self.ring = ring
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, ring, order: int, value) -> "TruncSeries":
        return cls(ring, order, [value])

    @classmethod
    def zero(cls, ring, order: int) -> "TruncSeries":
        return cls(ring, order, [])

    @classmethod
    def one(cls, ring, order: int) -> "TruncSeries":
        return cls(ring, order, [ring.one])

    @classmethod
    def hbar(cls, ring, order: int) -> "TruncSeries":
        return cls(ring, order, [ring.zero, ring.one])

    def coefficient(self, k: int):
        if 0 <= k <= self.order:
            return self.coeffs[k]
        raise IndexError(f"coefficient {k} beyond truncation order {self.order}")

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or None if all vanish."""
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return None

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.ring, order, self.coeffs[: order + 1])

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.const(self.ring, self.order, self.ring.from_rational(other))

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __neg__(self):
        return TruncSeries(self.ring, self.order, [-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, (TruncSeries, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        n = min(self.order, other.order)
        return TruncSeries(
            self.ring, n, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (TruncSeries, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (TruncSeries, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        n = min(self.order, other.order)
        out = [self.ring.zero for _ in range(n + 1)]
        for i in range(n + 1):
            a = self.coeffs[i]
            if self.ring.is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not self.ring.is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ring, n, out)

    __rmul__ = __mul__

    def scale(self, scalar) -> "TruncSeries":
        return TruncSeries(self.ring, self.order, [scalar * c for c in self.coeffs])

    def map_coeffs(self, fn, ring=None) -> "TruncSeries":
        return TruncSeries(ring or self.ring, self.order, [fn(c) for c in self.coeffs])

    def to_json(self):
        def enc(c):
            return c.to_json() if hasattr(c, "to_json") else str(c)

        return {"order": self.order, "coefficients": [enc(c) for c in self.coeffs]}

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"({c})*hbar")
            else:
                terms.append(f"({c})*hbar^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(hbar^{self.order + 1})"

    __repr__ = __str__


class SeriesRing:
    """Ring adapter whose elements are TruncSeries over a base ring."""

    def __init__(self, base, order: int):
        self.base = base
        self.order = order
        self.zero = TruncSeries.zero(base, order)
        self.one = TruncSeries.one(base, order)

    def from_int(self, n: int) -> TruncSeries:
        return TruncSeries.const(self.base, self.order, self.base.from_int(n))

    def from_rational(self, c) -> TruncSeries:
        return TruncSeries.const(self.base, self.order, self.base.from_rational(c))

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def inv(self, a: TruncSeries) -> TruncSeries:
        """Multiplicative inverse, defined when the constant term is a unit."""
        c0 = a.coeffs[0]
        if self.base.is_zero(c0):
            raise NonInvertibleLeadingCoefficient("series with zero constant term")
        c0i = self.base.inv(c0)
        out = [c0i]
        for n in range(1, self.order + 1):
            acc = self.base.zero
            for k in range(n):
                acc = acc + out[k] * a.coeffs[n - k]
            out.append(-(c0i * acc))
        return TruncSeries(self.base, self.order, out)

    def __eq__(self, other):
        return (
            isinstance(other, SeriesRing)
            and self.base == other.base
            and self.order == other.order
        )

    def __hash__(self):
        return hash(("SeriesRing", self.base, self.order))

    def __repr__(self):
        return f"{self.base!r}[[hbar]]/(hbar^{self.order + 1})"


def series_expand(f: RatFunc, order: int) -> TruncSeries:
    """Taylor coefficients of a rational function of hbar at hbar = 0.

    Raises PoleAtZero when the function genuinely has a pole there, i.e.
    when the hbar-adic valuation of the numerator is smaller than that of
    the denominator.
    """
    if not isinstance(f, RatFunc):
        f = RatFunc.from_poly(f) if isinstance(f, UniPoly) else RatFunc.const(HBAR, f)
    if f.is_zero():
        return TruncSeries.zero(QQ, order)
    vn = f.num.valuation()
    vd = f.den.valuation()
    if vd and vn < vd:
        raise PoleAtZero(f"{f} has a pole of order {vd - vn} at {f.var} = 0")
    num = f.num.shift_down(vd) if vd else f.num
    den = f.den.shift_down(vd) if vd else f.den
    b0 = den.coefficient(0)
    out = []
    for n in range(order + 1):
        acc = num.coefficient(n)
        for k in range(n):
            acc -= out[k] * den.coefficient(n - k)
        out.append(acc / b0)
    return TruncSeries(QQ, order, out)


def series_div_valuation(num: TruncSeries, den: TruncSeries) -> TruncSeries:
    """Divide two series of equal hbar-valuation v, returning a series of
    order (min order - v) whose product with den reproduces num to that order.

    The denominator may live over a scalar subring of the numerator's ring;
    its coefficients are embedded before dividing.
    """
    if den.ring != num.ring:
        den = den.map_coeffs(num.ring.from_rational, ring=num.ring)
    vn = num.valuation()
    vd = den.valuation()
    if vd is None:
        raise ZeroDivisionError("series division by zero")
    if vn != vd:
        raise ValuationMismatch(f"valuations differ: {vn} vs {vd}")
    n = min(num.order, den.order) - vd
    a = num.coeffs[vd:]
    b = den.coeffs[vd:]
    ring = num.ring
    b0i = ring.inv(b[0])
    out = []
    for k in range(n + 1):
        acc = a[k]
        for j in range(k):
            acc = acc - out[j] * b[k - j]
        out.append(b0i * acc)
    return TruncSeries(ring, n, out)


def one_plus_hbar(order: int) -> TruncSeries:
    """The series 1 + hbar, the standard value of q along the deformation."""
    return TruncSeries(QQ, order, [Fraction(1), Fraction(1)])


def exp_hbar(order: int, scale=1) -> TruncSeries:
    """exp(scale * hbar) truncated at the given order."""
    scale = _fr(scale)
    coeffs = []
    acc = Fraction(1)
    for n in range(order + 1):
        coeffs.append(acc)
        acc = acc * scale / (n + 1)
    return TruncSeries(QQ, order, coeffs)
