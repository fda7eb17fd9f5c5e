"""Exact scalars, λ-polynomials and the Grassmann variables χ^i, η^i.

Rational numbers are ``int`` or :data:`Q` (gmpy2's ``mpq`` when available,
otherwise ``fractions.Fraction``; plain Fractions are accepted everywhere).
Anything that involves a formal parameter or the imaginary unit is a
:class:`Scalar`, stored as ``re + i*im`` with ``re`` and ``im`` rational
functions over QQ.  Arithmetic on Scalars collapses back to a rational
whenever the result is a constant, so the fast path stays on rationals.
"""

from fractions import Fraction
from math import comb
from numbers import Rational
import re as _re

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

from sympy import QQ
from sympy.polys.fields import field as _sympy_field
from sympy.polys.orderings import grlex

__all__ = [
    "Scalar", "Q", "I", "param", "declare_params", "declared_params", "to_scalar",
    "is_scalar", "render_scalar", "scalar_from_string", "conj",
    "LambdaPoly", "GrassmannLambdaValue", "chi_normalize", "mono_mul",
    "substitute_minus_nabla", "integrate_gamma", "integrate_Gamma",
    "RESERVED",
]

RESERVED = frozenset({"d", "l", "i", "x1", "x2", "x3", "D"})
_NAME = _re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


class _Registry:
    """The global parameter field.  It only ever grows."""

    def __init__(self):
        self.names = ()
        self._rebuild(("_",))

    def _rebuild(self, names):
        self.all = tuple(names)
        self.field = _sympy_field(",".join(self.all), QQ, order=grlex)[0]
        self.zero = self.field.zero

    def declare(self, names):
        new = [n for n in names if n not in self.all]
        for n in new:
            if not _NAME.match(n) or n in RESERVED:
                raise ValueError(f"invalid parameter name {n!r}")
        if new:
            merged = sorted(set(self.all) | set(new) - {"_"})
            self._rebuild(("_",) + tuple(merged))
            self.names = tuple(merged)

    def lift(self, f):
        return f if f.field is self.field else f.set_field(self.field)

    def const(self, q):
        if isinstance(q, int):
            return self.field(q)
        return self.field(QQ(int(q.numerator), int(q.denominator)))


_reg = _Registry()


def declare_params(*names):
    """Declare formal parameters (idempotent)."""
    _reg.declare(names)


def declared_params():
    return _reg.names


def _ground(f):
    """Return f as a Fraction if it is a constant, else None."""
    n, d = f.numer, f.denom
    if not n:
        return Q(0)
    if n.is_ground and d.is_ground:
        zm = n.ring.zero_monom
        a, b = n.get(zm, 0), d.get(zm, 0)
        return Q(int(a.numerator), int(a.denominator)) / Q(
            int(b.numerator), int(b.denominator))
    return None


def _make(re, im):
    if not im:
        g = _ground(re)
        if g is not None:
            return g if g.denominator != 1 else int(g)
    s = object.__new__(Scalar)
    s.re = re
    s.im = im
    return s


def _parts(x):
    if isinstance(x, Scalar):
        return _reg.lift(x.re), _reg.lift(x.im)
    if isinstance(x, Rational):
        return _reg.const(x), _reg.zero
    raise TypeError(f"not a scalar: {x!r}")


class Scalar:
    """A non-rational exact scalar ``re + i*im`` over Q(params)."""

    __slots__ = ("re", "im")

    def __init__(self, *args):
        raise TypeError("build Scalars with param(), I and arithmetic")

    def __add__(self, other):
        if not is_scalar(other):
            return NotImplemented
        a, b = _parts(self)
        c, d = _parts(other)
        return _make(a + c, b + d)

    __radd__ = __add__

    def __neg__(self):
        a, b = _parts(self)
        return _make(-a, -b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not is_scalar(other):
            return NotImplemented
        a, b = _parts(self)
        c, d = _parts(other)
        return _make(a - c, b - d)

    def __rsub__(self, other):
        if not is_scalar(other):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if not is_scalar(other):
            return NotImplemented
        a, b = _parts(self)
        c, d = _parts(other)
        return _make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        a, b = _parts(self)
        n = a * a + b * b
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return _make(a / n, -b / n)

    def __truediv__(self, other):
        if not is_scalar(other):
            return NotImplemented
        return self * _inv(other)

    def __rtruediv__(self, other):
        if not is_scalar(other):
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = 1, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return True  # zero is always collapsed to Fraction(0)

    def __eq__(self, other):
        if not is_scalar(other):
            return NotImplemented
        return not (self - other)

    def __hash__(self):
        return hash(render_scalar(self))

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)

    def free_params(self):
        a, b = _parts(self)
        used = set()
        for f in (a, b):
            for p in (f.numer, f.denom):
                for mon in p.keys():
                    used.update(n for n, e in zip(_reg.all, mon) if e)
        return used


I = _make(_reg.zero, _reg.field.one)


def is_scalar(x):
    return isinstance(x, (Rational, Scalar)) and not isinstance(x, bool)


def _inv(x):
    if isinstance(x, Scalar):
        return x.inverse()
    if not x:
        raise ZeroDivisionError("division by zero scalar")
    return Q(1) / x


def param(name):
    """The formal parameter ``name`` as a Scalar (declaring it if needed)."""
    _reg.declare([name])
    f = _reg.field
    return _make(f(f.ring.gens[_reg.all.index(name)]), _reg.zero)


def to_scalar(x):
    """Coerce int/Fraction/str/Scalar to the canonical scalar type."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return Q(x) if x.denominator != 1 else int(x)
    if isinstance(x, str):
        return scalar_from_string(x)
    raise TypeError(f"cannot convert {x!r} to a scalar")


def conj(x):
    """Complex conjugation (parameters are treated as real)."""
    if isinstance(x, Scalar):
        a, b = _parts(x)
        return _make(a, -b)
    return x


# -- rendering ---------------------------------------------------------------

def _order_key(mon):
    return (sum(mon), mon)


def _fmt_q(q):
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_mon(mon):
    parts = []
    for name, e in zip(_reg.all, mon):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _fmt_poly(p, scale=Fraction(1)):
    terms = sorted(p.terms(), key=lambda t: _order_key(t[0]), reverse=True)
    out = []
    for mon, c in terms:
        q = Fraction(int(c.numerator), int(c.denominator)) * scale
        m = _fmt_mon(mon)
        neg = q < 0
        q = abs(q)
        if m:
            body = m if q == 1 else f"{_fmt_q(q)}*{m}"
        else:
            body = _fmt_q(q)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) or "0"


def _fmt_ratfunc(f):
    n, d = f.numer, f.denom
    lead = max(d.terms(), key=lambda t: _order_key(t[0]))[1]
    s = 1 / Fraction(int(lead.numerator), int(lead.denominator))
    num = _fmt_poly(n, s)
    if d.is_ground:
        return num, False
    den = _fmt_poly(d, s)
    nn = num if len(n) == 1 and not num.startswith("-") else f"({num})"
    dd = den if len(d) == 1 and "*" not in den else f"({den})"
    return f"{nn}/{dd}", True


def render_scalar(x):
    """Canonical text for a scalar, parseable by the expression language."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Rational):
        return _fmt_q(x)
    a, b = _parts(x)
    pieces = []
    if a:
        s, _ = _fmt_ratfunc(a)
        pieces.append(s)
    if b:
        g = _ground(b)
        if g == 1:
            s = "i"
        elif g == -1:
            s = "-i"
        elif g is not None:
            s = f"{_fmt_q(g)}*i"
        else:
            t = _fmt_ratfunc(b)[0]
            s = f"{t}*i" if " " not in t else f"({t})*i"
        if pieces:
            pieces.append(" - " + s[1:] if s.startswith("-") else " + " + s)
        else:
            pieces.append(s)
    return "".join(pieces)


def scalar_from_string(text):
    """Parse a scalar written in the expression language (no generators)."""
    from .parse import parse_scalar_expr
    return parse_scalar_expr(text)


# -- Grassmann variables -----------------------------------------------------
#
# Odd variables are small ints: χ^i is i (1..3) and η^i is 10+i.  A monomial
# is a strictly increasing tuple of them.  χ^iχ^i = −λ and η^iη^i = −γ.

def _var_square(v):
    return (1, 0) if v < 10 else (0, 1)


def mono_mul(m1, m2):
    """Product of two normalized monomials.

    Returns (sign, monomial, λ-exponent, γ-exponent).
    """
    word = list(m1) + list(m2)
    sign, lam, gam = 1, 0, 0
    # insertion sort with contraction
    out = []
    for v in word:
        out.append(v)
        j = len(out) - 1
        while j > 0 and out[j - 1] >= out[j]:
            if out[j - 1] == out[j]:
                dl, dg = _var_square(v)
                sign = -sign
                lam += dl
                gam += dg
                del out[j - 1:j + 1]
                # the pair was adjacent; the rest stays sorted
                break
            out[j - 1], out[j] = out[j], out[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(out), lam, gam


def chi_normalize(word, sign=1, n=3):
    """Normalize a product of χ-variables given by an index sequence.

    Adjacent distinct indices anticommute and χ^iχ^i = −λ.  The result is a
    GrassmannLambdaValue with scalar coefficients.
    """
    for i in word:
        if not isinstance(i, int) or not 1 <= i <= n:
            raise ValueError(f"χ index {i!r} outside 1..{n}")
    s, m, lam, _ = mono_mul((), tuple(word))
    return GrassmannLambdaValue({(m, lam, 0): s * sign})


class LambdaPoly:
    """A polynomial in one variable (λ by default) with arbitrary coefficients.

    Coefficients may be scalars or elements of a vertex algebra; they only
    need ``+``, ``-``, scalar ``*`` and truthiness.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, LambdaPoly):
            terms = terms.terms
        self.terms = {n: c for n, c in (terms or {}).items() if c}

    @classmethod
    def from_list(cls, pairs):
        out = {}
        for n, c in pairs:
            out[n] = out[n] + c if n in out else c
        return cls(out)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def degree(self):
        return max(self.terms) if self.terms else -1

    def __getitem__(self, n):
        return self.terms.get(n, 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LambdaPoly):
            return self.terms == other.terms
        if not self.terms:
            return not other
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def __add__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out[n] + c if n in out else c
        return LambdaPoly(out)

    def __neg__(self):
        return LambdaPoly({n: -c for n, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return LambdaPoly({n: c * s for n, c in self.terms.items()})

    def __rmul__(self, s):
        return LambdaPoly({n: s * c for n, c in self.terms.items()})

    def shift(self, k):
        """Multiply by λ^k."""
        return LambdaPoly({n + k: c for n, c in self.terms.items()})

    def map(self, f):
        return LambdaPoly({n: f(c) for n, c in self.terms.items()})

    def derivative(self):
        return LambdaPoly({n - 1: c * n for n, c in self.terms.items() if n})

    def __repr__(self):
        return "LambdaPoly(%r)" % dict(self.items())

    def __str__(self):
        parts = []
        for n, c in self.items():
            lam = "" if n == 0 else ("l" if n == 1 else f"l^{n}")
            cs = render_scalar(c) if is_scalar(c) else str(c)
            if not lam:
                parts.append(cs)
            else:
                parts.append(f"{lam}*({cs})")
        return " + ".join(parts) or "0"


def _dpow(d, c, k):
    for _ in range(k):
        if not c:
            break
        c = d(c)
    return c


def _scalar_d(c):
    return 0 if is_scalar(c) else c.d()


def substitute_minus_nabla(value, d=_scalar_d):
    """Replace λ by −∂−λ, with ∂ acting on the coefficients from the left.

    ``d`` is the derivation on coefficients (scalars are killed by ∂).
    """
    out = {}
    for n, c in value.terms.items():
        for j in range(n + 1):
            dc = _dpow(d, c, j)
            if not dc:
                continue
            coef = (-1) ** n * comb(n, j)
            k = n - j
            out[k] = out[k] + dc * coef if k in out else dc * coef
    return LambdaPoly(out)


def integrate_gamma(value, bounds="0..l", d=_scalar_d, left=None, product=None):
    """Integrate a polynomial in γ.

    ``0..l``: γ^m ↦ λ^{m+1}/(m+1), returns a LambdaPoly.
    ``-d..0``: γ^m ↦ −(−∂)^{m+1}/(m+1) on the coefficient.
    ``0..d``: γ^m ↦ (∂^{m+1} left)/(m+1) multiplied with the coefficient via
    ``product(left_derivative, coefficient)``.
    """
    if bounds == "0..l":
        return LambdaPoly({m + 1: c * Q(1, m + 1)
                           for m, c in value.terms.items()})
    if bounds == "-d..0":
        acc = 0
        for m, c in value.terms.items():
            t = _dpow(d, c, m + 1)
            if t:
                acc = acc + t * Q((-1) ** m, m + 1)
        return acc
    if bounds == "0..d":
        if left is None or product is None:
            raise ValueError("0..d needs a left factor and a product")
        acc = 0
        for m, c in value.terms.items():
            t = product(_dpow(d, left, m + 1), c)
            if t:
                acc = acc + t * Q(1, m + 1)
        return acc
    raise ValueError(f"unknown bounds {bounds!r}")


class GrassmannLambdaValue:
    """Coefficients indexed by (χ/η monomial, λ-exponent, γ-exponent)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GrassmannLambdaValue):
            return self.terms == other.terms
        if not self.terms:
            return not other
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda t: t[0])))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return GrassmannLambdaValue(out)

    def __neg__(self):
        return GrassmannLambdaValue({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return GrassmannLambdaValue({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def times_mono(self, mono, lam=0, gam=0, sign=1):
        """Left multiply by ±λ^lam γ^gam · mono."""
        out = {}
        for (m, a, b), c in self.terms.items():
            s, m2, da, db = mono_mul(mono, m)
            key = (m2, a + lam + da, b + gam + db)
            v = c * (s * sign)
            out[key] = out[key] + v if key in out else v
        return GrassmannLambdaValue(out)

    def component(self, mono=()):
        """The λ-polynomial multiplying ``mono`` (γ-free part only)."""
        return LambdaPoly({a: c for (m, a, b), c in self.terms.items()
                           if m == tuple(mono) and b == 0})

    def monomials(self):
        return sorted({m for (m, _, _) in self.terms})

    def map(self, f):
        return GrassmannLambdaValue({k: f(c) for k, c in self.terms.items()})

    @classmethod
    def from_components(cls, comps):
        """Build from {mono: LambdaPoly}."""
        out = {}
        for m, p in comps.items():
            for a, c in p.terms.items():
                out[(tuple(m), a, 0)] = c
        return cls(out)

    def __repr__(self):
        return f"GrassmannLambdaValue({self.terms!r})"

    def __str__(self):
        parts = []
        for (m, a, b), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][2], len(t[0][0]), t[0][0])):
            fac = [("x%d" % v) if v < 10 else ("y%d" % (v - 10)) for v in m]
            if a:
                fac.append("l" if a == 1 else f"l^{a}")
            if b:
                fac.append("g" if b == 1 else f"g^{b}")
            cs = render_scalar(c) if is_scalar(c) else str(c)
            parts.append("*".join(fac + [f"({cs})"]) if fac else cs)
        return " + ".join(parts) or "0"


def integrate_Gamma(value, n):
    """∂_{η¹}…∂_{ηⁿ} (left derivatives) followed by ∫₀^λ dγ."""
    full = tuple(10 + i for i in range(1, n + 1))
    out = {}
    for (m, a, b), c in value.terms.items():
        etas = tuple(v for v in m if v >= 10)
        if etas != full:
            continue
        chis = tuple(v for v in m if v < 10)
        sign = (-1) ** (n * len(chis) + n * (n - 1) // 2)
        key = (chis, a + b + 1, 0)
        v = c * Q(sign, b + 1)
        out[key] = out[key] + v if key in out else v
    return GrassmannLambdaValue(out)
