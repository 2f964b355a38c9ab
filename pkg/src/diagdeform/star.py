"""Star products on the polynomial plane from commuting derivation pairs.

Given derivations phi_1, psi_1, ..., phi_m, psi_m of k[x,y] that all commute
with one another, the prescription

    a * b = mu . exp(hbar * sum_i phi_i (x) psi_i) (a (x) b)

deforms the commutative product (mu is plain multiplication, (x) the tensor
product).  Three specs are built in:

    normal  dx (x) dy                  a*b = ab + hbar dx(a) dy(b) + ...
    moyal   (dx ^ dy) = (dx (x) dy - dy (x) dx)/2
    qplane  x dx (x) y dy              the quantum-plane deformation

and custom lists of derivation pairs are accepted after a symbolic check
that they pairwise commute (it is the commuting that makes the exponential
associative).

On polynomials the normal and Moyal series terminate, because each step
lowers degree on one side of the tensor.  The qplane operator preserves
degree and need not terminate, so star always returns a truncated series
together with an exactness flag saying whether the operator had annihilated
the tensor by the requested order.

Degrees here are graded with deg x = +1, deg y = -1; all three built-in
specs preserve that grading, which grading_check exercises on random
homogeneous inputs.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .scalars import TruncSeries, exp_hbar


class NonCommutingDerivations(ValueError):
    """A custom spec listed derivations that fail to commute."""


def _fr(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly2:
    """Commutative polynomials in x and y with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        clean = {}
        for (i, j), c in dict(terms).items():
            c = _fr(c)
            if c:
                clean[(i, j)] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "Poly2":
        return cls({})

    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "Poly2":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Poly2":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return Poly2(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return Poly2(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly2":
        c = _fr(c)
        return Poly2({k: c * v for k, v in self.terms.items()})

    def dx(self) -> "Poly2":
        return Poly2({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def dy(self) -> "Poly2":
        return Poly2({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def degrees(self):
        """Set of graded degrees i - j present (deg x = 1, deg y = -1)."""
        return {i - j for (i, j) in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def to_json(self):
        return [[i, j, str(c)] for (i, j), c in sorted(self.terms.items())]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mon = ("x" + (f"^{i}" if i > 1 else "")) * (i > 0) + (
                "y" + (f"^{j}" if j > 1 else "")
            ) * (j > 0)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)

    __repr__ = __str__


class Poly2Ring:
    """Ring adapter so TruncSeries can hold Poly2 coefficients."""

    zero = Poly2.zero()
    one = Poly2.const(1)

    def from_int(self, n: int) -> Poly2:
        return Poly2.const(n)

    def from_rational(self, c) -> Poly2:
        return Poly2.const(c)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def inv(self, a: Poly2) -> Poly2:
        c = a.terms.get((0, 0))
        if c is None or len(a.terms) > 1:
            raise ZeroDivisionError("only nonzero constants invert in k[x,y]")
        return Poly2.const(1 / c)

    def __eq__(self, other):
        return isinstance(other, Poly2Ring)

    def __hash__(self):
        return hash("Poly2Ring")

    def __repr__(self):
        return "QQ[x,y]"


P2 = Poly2Ring()


class Derivation:
    """A derivation of k[x,y], determined by its values on x and y."""

    __slots__ = ("px", "py")

    def __init__(self, px, py):
        self.px = px if isinstance(px, Poly2) else Poly2.const(px)
        self.py = py if isinstance(py, Poly2) else Poly2.const(py)

    def __call__(self, p: Poly2) -> Poly2:
        return self.px * p.dx() + self.py * p.dy()

    def commutes_with(self, other: "Derivation") -> bool:
        """Whether [self, other] = 0, checked on the generators.

        The bracket of two derivations is again a derivation, so vanishing
        on x and y is vanishing everywhere.
        """
        on_x = self(other.px) - other(self.px)
        on_y = self(other.py) - other(self.py)
        return on_x.is_zero() and on_y.is_zero()

    def __repr__(self):
        return f"({self.px})*dx + ({self.py})*dy"


class StarSpec:
    """A named list of derivation pairs defining the exponential product."""

    __slots__ = ("kind", "pairs")

    def __init__(self, kind: str, pairs):
        self.kind = kind
        self.pairs = tuple(pairs)

    @classmethod
    def normal(cls) -> "StarSpec":
        return cls("normal", [(Derivation(1, 0), Derivation(0, 1))])

    @classmethod
    def moyal(cls) -> "StarSpec":
        half = Fraction(1, 2)
        return cls("moyal", [
            (Derivation(half, 0), Derivation(0, 1)),
            (Derivation(0, -half), Derivation(1, 0)),
        ])

    @classmethod
    def qplane(cls) -> "StarSpec":
        return cls("qplane", [(Derivation(Poly2.x(), 0), Derivation(0, Poly2.y()))])

    @classmethod
    def custom(cls, pairs) -> "StarSpec":
        flat = [d for pair in pairs for d in pair]
        for a in range(len(flat)):
            for b in range(a + 1, len(flat)):
                if not flat[a].commutes_with(flat[b]):
                    raise NonCommutingDerivations(
                        f"derivations {flat[a]} and {flat[b]} do not commute"
                    )
        return cls("custom", pairs)

    @classmethod
    def named(cls, kind: str) -> "StarSpec":
        try:
            return {"normal": cls.normal, "moyal": cls.moyal, "qplane": cls.qplane}[kind]()
        except KeyError:
            raise ValueError(f"unknown star spec {kind!r}") from None

    def __repr__(self):
        return f"StarSpec({self.kind})"


def star(a: Poly2, b: Poly2, spec: StarSpec, order: int):
    """The truncated star product, as (series over Poly2, exact flag).

    The k-th coefficient is (1/k!) mu[(sum phi_i (x) psi_i)^k (a (x) b)].
    The flag is True when the operator power annihilates a (x) b at or
    before the requested order, so every discarded coefficient is known to
    vanish; False means the truncation is a genuine truncation.
    """
    if order < 0:
        raise ValueError("negative truncation order")
    coeffs = [a * b]
    cur = [(a, b)]
    factorial = 1
    for k in range(1, order + 1):
        nxt = []
        for (u, v) in cur:
            for phi, psi in spec.pairs:
                pu, pv = phi(u), psi(v)
                if not pu.is_zero() and not pv.is_zero():
                    nxt.append((pu, pv))
        cur = nxt
        if not cur:
            break
        factorial *= k
        term = Poly2.zero()
        for (u, v) in cur:
            term = term + u * v
        coeffs.append(term.scale(Fraction(1, factorial)))
    exact = not cur
    if not exact:
        probe = []
        for (u, v) in cur:
            for phi, psi in spec.pairs:
                pu, pv = phi(u), psi(v)
                if not pu.is_zero() and not pv.is_zero():
                    probe.append((pu, pv))
                    break
            if probe:
                break
        exact = not probe
    return TruncSeries(P2, order, coeffs), exact


def star_commutator(a: Poly2, b: Poly2, spec: StarSpec, order: int) -> TruncSeries:
    return star(a, b, spec, order)[0] - star(b, a, spec, order)[0]


def star_series(A: TruncSeries, B: TruncSeries, spec: StarSpec, order: int) -> TruncSeries:
    """Extend star bilinearly to truncated series with Poly2 coefficients."""
    out = [Poly2.zero() for _ in range(order + 1)]
    for m in range(min(A.order, order) + 1):
        u = A.coeffs[m]
        if u.is_zero():
            continue
        for n in range(min(B.order, order - m) + 1):
            v = B.coeffs[n]
            if v.is_zero():
                continue
            partial, _ = star(u, v, spec, order - m - n)
            for l, t in enumerate(partial.coeffs):
                if not t.is_zero():
                    out[m + n + l] = out[m + n + l] + t
    return TruncSeries(P2, order, out)


def embed(a: Poly2, order: int) -> TruncSeries:
    return TruncSeries.const(P2, order, a)


# ------------------------------------------------------------------ checks


def _random_poly(rng: random.Random, maxdeg: int = 3) -> Poly2:
    terms = {}
    for i in range(maxdeg + 1):
        for j in range(maxdeg + 1 - i):
            if rng.random() < 0.5:
                c = rng.randint(-3, 3)
                if c:
                    terms[(i, j)] = Fraction(c)
    return Poly2(terms)


def _random_homogeneous(rng: random.Random, degree: int) -> Poly2:
    slots = [(i, j) for i in range(5) for j in range(5) if i - j == degree]
    terms = {}
    for key in slots:
        if rng.random() < 0.6:
            c = rng.randint(-3, 3)
            if c:
                terms[key] = Fraction(c)
    if not terms:
        terms[slots[0]] = Fraction(1)
    return Poly2(terms)


def _trial_rng(seed: int, index: int) -> random.Random:
    # split scheme: each trial draws from its own generator, so trials can
    # run in any order (or concurrently) without changing the stream
    return random.Random(seed * 1_000_003 + index)


def associativity_check(spec: StarSpec, order: int, trials: int, seed: int) -> dict:
    """Residuals of (a*b)*c - a*(b*c) modulo hbar^(order+1) on random triples."""
    if trials < 1:
        raise ValueError("need at least one trial")
    failures = []
    for t in range(trials):
        rng = _trial_rng(seed, t)
        a, b, c = (_random_poly(rng) for _ in range(3))
        left = star_series(star(a, b, spec, order)[0], embed(c, order), spec, order)
        right = star_series(embed(a, order), star(b, c, spec, order)[0], spec, order)
        if not (left - right).is_zero():
            failures.append(t)
    return {
        "kind": spec.kind,
        "order": order,
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "ok": not failures,
    }


def grading_check(spec: StarSpec, trials: int, seed: int, order: int = 4) -> dict:
    """Star products of homogeneous inputs stay homogeneous, order by order."""
    if trials < 1:
        raise ValueError("need at least one trial")
    failures = []
    for t in range(trials):
        rng = _trial_rng(seed, t)
        d1 = rng.randint(-2, 2)
        d2 = rng.randint(-2, 2)
        a = _random_homogeneous(rng, d1)
        b = _random_homogeneous(rng, d2)
        series, _ = star(a, b, spec, order)
        for coeff in series.coeffs:
            if coeff.is_zero():
                continue
            if not coeff.is_homogeneous() or coeff.degrees() != {d1 + d2}:
                failures.append(t)
                break
    return {
        "kind": spec.kind,
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "ok": not failures,
    }


def qplane_relation_check(order: int) -> dict:
    """star(x,y) = e^hbar * star(y,x) for the quantum-plane product."""
    spec = StarSpec.qplane()
    x, y = Poly2.x(), Poly2.y()
    xy, _ = star(x, y, spec, order)
    yx, _ = star(y, x, spec, order)
    e = exp_hbar(order).map_coeffs(P2.from_rational, ring=P2)
    residual = xy - e * yx
    return {"order": order, "ok": residual.is_zero(), "residual": residual}
