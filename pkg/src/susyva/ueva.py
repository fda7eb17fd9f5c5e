"""The universal enveloping vertex algebra V(R) of a Lie conformal algebra.

Elements are finite sums of PBW words.  A letter is ``(g, k)``, meaning
∂^k of generator number ``g``; a word is a non-decreasing tuple of letters
(no repeated odd letter) read as the right-nested product a1(a2(...al)).
The empty word is the vacuum.

Internally everything is plain dicts:

* vec:   {word: coefficient}
* lpoly: {λ-degree: vec}, with ordinary polynomial coefficients so that
  x_(n)y = n! * lpoly[n].

All the rewriting rules are memoized per algebra.
"""

from .coeff import Q as _q
from math import comb, factorial
import sys

from .coeff import LambdaPoly, is_scalar, render_scalar, to_scalar

__all__ = [
    "VertexAlgebra", "VElement", "Derivation", "nop", "lambda_bracket",
    "nth_product", "apply_derivation", "specialize_central", "normal_form",
]

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


# -- raw dict helpers ---------------------------------------------------------

def _add(acc, vec, coef=1):
    for w, c in vec.items():
        x = acc.get(w, 0) + coef * c
        if x:
            acc[w] = x
        else:
            acc.pop(w, None)
    return acc


def _add_l(acc, lp, coef=1, shift=0):
    for n, vec in lp.items():
        slot = acc.setdefault(n + shift, {})
        _add(slot, vec, coef)
        if not slot:
            del acc[n + shift]
    return acc


def _scale(vec, c):
    if c == 1:
        return vec
    return {w: v * c for w, v in vec.items()} if c else {}


class VertexAlgebra:
    """V(R) for a presentation R (see :class:`susyva.lca.LcaPresentation`)."""

    def __init__(self, pres):
        self.pres = pres
        self.names = [g.name for g in pres.gens]
        self.parity = [g.parity for g in pres.gens]
        self.central = [g.central for g in pres.gens]
        self._index = {n: i for i, n in enumerate(self.names)}
        self._table = {}
        self._m_basic = {}
        self._m_comm = {}
        self._m_nl = {}
        self._m_nw = {}
        self._m_br = {}
        self._m_d = {}
        self._m_der = {}
        self._m_dp = {}

    # -- letters and words ----------------------------------------------------

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"undeclared generator {name!r}") from None

    def lpar(self, a):
        return self.parity[a[0]]

    def wpar(self, w):
        return sum(self.parity[g] for g, _ in w) & 1

    def vpar(self, vec):
        for w in vec:
            return self.wpar(w)
        return 0

    def _gen_bracket(self, i, j):
        key = (i, j)
        if key in self._table:
            return self._table[key]
        tab = self.pres.table
        if key in tab:
            val = tab[key]
        elif (j, i) in tab:
            s = -1 if (self.parity[i] * self.parity[j]) % 2 == 0 else 1
            val = self._skew(tab[(j, i)], s)
        else:
            val = {}
        self._table[key] = val
        return val

    def _basic(self, a, b):
        key = (a, b)
        memo = self._m_basic
        if key in memo:
            return memo[key]
        (i, k), (j, l) = a, b
        res = {}
        if not (self.central[i] or self.central[j]):
            for n, vec in self._gen_bracket(i, j).items():
                for t in range(l + 1):
                    dv = self._dpow(vec, t)
                    if dv:
                        slot = res.setdefault(n + k + l - t, {})
                        _add(slot, dv, comb(l, t) * (-1) ** k)
            res = {n: v for n, v in res.items() if v}
        memo[key] = res
        return res

    def _dletter(self, a):
        return None if self.central[a[0]] else (a[0], a[1] + 1)

    def _d_word(self, w):
        memo = self._m_d
        if w in memo:
            return memo[w]
        res = {}
        if w:
            a, rest = w[0], w[1:]
            da = self._dletter(a)
            if da is not None:
                _add(res, self._nop_letter(da, rest))
            if rest:
                for t, c in self._d_word(rest).items():
                    _add(res, self._nop_letter(a, t), c)
        memo[w] = res
        return res

    def _d_vec(self, vec):
        res = {}
        for w, c in vec.items():
            _add(res, self._d_word(w), c)
        return res

    def _dword_pow(self, w, t):
        """∂^t of a single word (memoized)."""
        key = (w, t)
        memo = self._m_dp
        if key in memo:
            return memo[key]
        res = self._d_word(w) if t == 1 else self._d_vec(self._dword_pow(w, t - 1))
        memo[key] = res
        return res

    def _dpow(self, vec, t):
        if t == 0 or not vec:
            return vec
        if len(vec) == 1:
            (w, c), = vec.items()
            return _scale(self._dword_pow(w, t), c)
        res = {}
        for w, c in vec.items():
            _add(res, self._dword_pow(w, t), c)
        return res

    def _skew(self, lp, sign):
        """sign * (λ → −∂−λ) applied to lp."""
        res = {}
        for n, vec in lp.items():
            for j in range(n + 1):
                dv = self._dpow(vec, j)
                if dv:
                    slot = res.setdefault(n - j, {})
                    _add(slot, dv, sign * (-1) ** n * comb(n, j))
        return {n: v for n, v in res.items() if v}

    def _comm(self, a, b):
        """∫_{−∂}^0 [a_λ b] dλ for letters: :ab: − ±:ba:."""
        key = (a, b)
        memo = self._m_comm
        if key in memo:
            return memo[key]
        res = {}
        for n, vec in self._basic(a, b).items():
            _add(res, self._dpow(vec, n + 1), _q((-1) ** n, n + 1))
        memo[key] = res
        return res

    # -- normally ordered product ---------------------------------------------

    def _nop_letter(self, a, w):
        key = (a, w)
        memo = self._m_nl
        if key in memo:
            return memo[key]
        if not w:
            res = {(a,): 1}
        else:
            b = w[0]
            odd_a = self.parity[a[0]]
            if a < b or (a == b and not odd_a):
                res = {(a,) + w: 1}
            elif a == b:
                res = _scale(self._nop_vec_word(self._comm(a, a), w[1:]), _q(1, 2))
            else:
                s = -1 if odd_a and self.parity[b[0]] else 1
                res = {}
                for t, c in self._nop_letter(a, w[1:]).items():
                    _add(res, self._nop_letter(b, t), s * c)
                _add(res, self._nop_vec_word(self._comm(a, b), w[1:]))
        memo[key] = res
        return res

    def _nop_vec_word(self, vec, w):
        res = {}
        for u, c in vec.items():
            _add(res, self._nop_word(u, w), c)
        return res

    def _nop_word(self, u, w):
        if not u:
            return {w: 1}
        if len(u) == 1:
            return self._nop_letter(u[0], w)
        if not w:
            return {u: 1}
        key = (u, w)
        memo = self._m_nw
        if key in memo:
            return memo[key]
        a, r = u[0], u[1:]
        res = {}
        for t, c in self._nop_word(r, w).items():
            _add(res, self._nop_letter(a, t), c)
        if not self.central[a[0]]:
            for m, P in self._br_word(r, w).items():
                da = (a[0], a[1] + m + 1)
                q = _q(1, m + 1)
                for t, c in P.items():
                    _add(res, self._nop_letter(da, t), c * q)
        s = -1 if self.parity[a[0]] and self.wpar(r) else 1
        for m, P in self._br_word((a,), w).items():
            dr = self._dpow({r: 1}, m + 1)
            q = _q(s, m + 1)
            for t, c in P.items():
                for u2, c2 in dr.items():
                    _add(res, self._nop_word(u2, t), c * c2 * q)
        memo[key] = res
        return res

    def _nop_vec(self, x, y):
        res = {}
        for u, c in x.items():
            for w, c2 in y.items():
                _add(res, self._nop_word(u, w), c * c2)
        return res

    # -- λ-bracket ------------------------------------------------------------

    def _br_word(self, u, w):
        if not u or not w:
            return {}
        key = (u, w)
        memo = self._m_br
        if key in memo:
            return memo[key]
        if len(w) == 1:
            b = w[0]
            if len(u) == 1:
                res = self._basic(u[0], b)
            else:
                s = 1 if (self.wpar(u) * self.parity[b[0]]) % 2 else -1
                res = self._skew(self._br_word(w, u), s)
        else:
            b, c = w[:1], w[1:]
            res = {}
            for n, P in self._br_word(u, b).items():
                _add_l(res, {n: self._nop_vec_word(P, c)})
                for t, cf in P.items():
                    for m, Q in self._br_word(t, c).items():
                        _add_l(res, {n + m + 1: Q}, cf * _q(1, m + 1))
            s = -1 if self.wpar(u) and self.parity[b[0][0]] else 1
            for n, Q in self._br_word(u, c).items():
                vec = {}
                for t, cf in Q.items():
                    _add(vec, self._nop_letter(b[0], t), cf)
                _add_l(res, {n: vec}, s)
        memo[key] = res
        return res

    def _br_vec(self, x, y):
        res = {}
        for u, c in x.items():
            for w, c2 in y.items():
                _add_l(res, self._br_word(u, w), c * c2)
        return res

    # -- derivations ----------------------------------------------------------

    def _der_word(self, D, w):
        key = (D.key, w)
        memo = self._m_der
        if key in memo:
            return memo[key]
        res = {}
        if w:
            a, rest = w[0], w[1:]
            img = D.raw.get(a[0], {})
            if img:
                da = self._dpow(img, a[1])
                _add(res, self._nop_vec_word(da, rest))
            if rest:
                s = -1 if D.parity and self.parity[a[0]] else 1
                for t, c in self._der_word(D, rest).items():
                    _add(res, self._nop_letter(a, t), s * c)
        memo[key] = res
        return res

    def _der_vec(self, D, vec):
        res = {}
        for w, c in vec.items():
            _add(res, self._der_word(D, w), c)
        return res

    # -- public API -----------------------------------------------------------

    def element(self, vec):
        return VElement(self, {w: c for w, c in vec.items() if c})

    def gen(self, name, k=0):
        i = self.index(name)
        if k and self.central[i]:
            return self.zero
        return VElement(self, {((i, k),): 1})

    def gens(self):
        return [self.gen(n) for n in self.names]

    @property
    def one(self):
        return VElement(self, {(): 1})

    @property
    def zero(self):
        return VElement(self, {})

    def scalar(self, c):
        c = to_scalar(c)
        return VElement(self, {(): c} if c else {})

    def _coerce(self, x):
        if isinstance(x, VElement):
            if x.va is not self:
                raise ValueError("elements belong to different algebras")
            return x.terms
        if isinstance(x, str):
            return self.gen(x).terms
        if is_scalar(x):
            return {(): x} if x else {}
        raise TypeError(f"cannot use {x!r} as an element")

    def nop(self, x, y):
        return self.element(self._nop_vec(self._coerce(x), self._coerce(y)))

    def bracket(self, x, y):
        raw = self._br_vec(self._coerce(x), self._coerce(y))
        return LambdaPoly({n: self.element(v) for n, v in raw.items()})

    def bracket_raw(self, x, y):
        return self._br_vec(self._coerce(x), self._coerce(y))

    def nth_product(self, x, n, y):
        if n >= 0:
            raw = self._br_vec(self._coerce(x), self._coerce(y)).get(n, {})
            return self.element(_scale(raw, factorial(n)))
        m = -n - 1
        dx = self._dpow(self._coerce(x), m)
        return self.element(_scale(self._nop_vec(dx, self._coerce(y)), _q(1, factorial(m))))

    def d(self, x, k=1):
        return self.element(self._dpow(self._coerce(x), k))

    def apply_derivation(self, D, x):
        if D.va is not self:
            D = D.transport(self)
        return self.element(self._der_vec(D, self._coerce(x)))

    def derivation(self, images, parity=1, name="D", anchored=None):
        """A derivation given by its values on generators.

        ``images`` maps generator names to elements (missing names map to 0).
        """
        return Derivation(self, images, parity, name, anchored)

    def normal_form(self, expr):
        """Evaluate a formal expression tree to its PBW normal form.

        Trees are built from generator names, scalars, VElements and tuples
        ``("+", x, y)``, ``("-", x, y)``, ``("*", x, y)`` (normally ordered
        product, or scaling when one side is a scalar), ``("d", x)``.
        """
        if isinstance(expr, tuple):
            op = expr[0]
            if op == "d":
                return self.d(self.normal_form(expr[1]))
            x, y = self.normal_form(expr[1]), self.normal_form(expr[2])
            if op == "+":
                return x + y
            if op == "-":
                return x - y
            if op == "*":
                return self.nop(x, y)
            raise ValueError(f"unknown operator {op!r}")
        if isinstance(expr, VElement):
            return expr
        return self.element(self._coerce(expr))

    def specialize_central(self, assignments):
        """Quotient by ⟨C − value⟩ for central generators C."""
        from .lca import specialize_presentation
        return VertexAlgebra(specialize_presentation(self.pres, assignments))

    def jacobi_sides(self, x, y, z):
        """Both sides of [x_λ[y_γ z]] = [[x_λ y]_{λ+γ} z] + ±[y_γ[x_λ z]].

        Raw vecs in, dicts {(λ-exp, γ-exp): vec} out.
        """
        lhs, rhs = {}, {}
        for m, Q in self._br_vec(y, z).items():
            for n, R in self._br_vec(x, Q).items():
                _add(lhs.setdefault((n, m), {}), R)
        for n, P in self._br_vec(x, y).items():
            for j, R in self._br_vec(P, z).items():
                # λ^n (λ+γ)^j
                for t in range(j + 1):
                    _add(rhs.setdefault((n + t, j - t), {}), R, comb(j, t))
        s = -1 if self.vpar(x) and self.vpar(y) else 1
        for n, S in self._br_vec(x, z).items():
            for m, T in self._br_vec(y, S).items():
                _add(rhs.setdefault((n, m), {}), T, s)
        clean = lambda d: {k: v for k, v in d.items() if v}
        return clean(lhs), clean(rhs)

    # rendering

    def render_letter(self, a, alone=False):
        return render_letter(self.names, a, alone)

    def render_word(self, w):
        return render_word(self.names, w)

    def render_vec(self, vec):
        return render_vec(self.names, vec)


def render_letter(names, a, alone=False):
    g, k = a
    name = names[g]
    if k == 0:
        return name
    s = "d*" + name if k == 1 else f"d^{k}*{name}"
    return s if alone else f"({s})"


def render_word(names, w):
    if len(w) == 1:
        return render_letter(names, w[0], alone=True)
    return "*".join(render_letter(names, a) for a in w)


def render_vec(names, vec):
    if not vec:
        return "0"
    parts = []
    for w in sorted(vec, key=lambda w: (len(w), w)):
        parts.append(_term(render_scalar(vec[w]), render_word(names, w) if w else ""))
    return _join(parts)


def _lam(n, var="l"):
    return "" if n == 0 else (var if n == 1 else f"{var}^{n}")


def render_lpoly(names, lp, var="l"):
    """A raw λ-polynomial as text in the definition language."""
    parts = []
    for n in sorted(lp):
        vec = lp[n]
        if not vec:
            continue
        if n == 0:
            (w, c), = list(vec.items())[:1]
            parts.append(("+", render_vec(names, vec)) if len(vec) > 1
                         else _term(render_scalar(c), render_word(names, w) if w else ""))
            continue
        if len(vec) == 1:
            (w, c), = vec.items()
            body = _lam(n, var) + ("*" + render_word(names, w) if w else "")
            parts.append(_term(render_scalar(c), body))
        else:
            parts.append(("+", f"{_lam(n, var)}*({render_vec(names, vec)})"))
    return _join(parts) if parts else "0"


def render_lg(names, d):
    """A raw {(λ-exp, γ-exp): vec} map as text."""
    parts = []
    for (n, m) in sorted(d):
        mon = "*".join(x for x in (_lam(n), _lam(m, "g")) if x)
        body = render_vec(names, d[(n, m)])
        parts.append(("+", f"{mon}*({body})" if mon else f"({body})"))
    return _join(parts) if parts else "0"


def _term(cs, body):
    """Combine a coefficient string and a word into a signed term."""
    neg = cs.startswith("-") and not _has_top_level_sum(cs[1:])
    if neg:
        cs = cs[1:]
    if _has_top_level_sum(cs):
        cs = f"({cs})"
    if not body:
        t = cs
    elif cs == "1":
        t = body
    else:
        t = f"{cs}*{body}"
    return ("-" if neg else "+", t)


def _has_top_level_sum(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0:
            return True
        elif depth == 0 and ch == "/" :
            pass
    return False


def _join(parts):
    out = []
    for i, (sg, t) in enumerate(parts):
        if i == 0:
            out.append(("-" if sg == "-" else "") + t)
        else:
            out.append(f" {sg} {t}")
    return "".join(out)


class VElement:
    """An element of V(R): a finite map PBW word -> scalar."""

    __slots__ = ("va", "terms")

    def __init__(self, va, terms):
        self.va = va
        self.terms = terms

    def _other(self, o):
        return self.va._coerce(o)

    def __add__(self, o):
        if not (isinstance(o, VElement) or is_scalar(o)):
            return NotImplemented
        return VElement(self.va, _add(dict(self.terms), self._other(o)))

    __radd__ = __add__

    def __neg__(self):
        return VElement(self.va, {w: -c for w, c in self.terms.items()})

    def __sub__(self, o):
        if not (isinstance(o, VElement) or is_scalar(o)):
            return NotImplemented
        return VElement(self.va, _add(dict(self.terms), self._other(o), -1))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, VElement):
            return self.va.nop(self, o)
        if is_scalar(o):
            return VElement(self.va, _scale(dict(self.terms), o))
        return NotImplemented

    def __rmul__(self, o):
        if is_scalar(o):
            return VElement(self.va, _scale(dict(self.terms), o))
        return NotImplemented

    def __truediv__(self, o):
        if is_scalar(o):
            return self * (1 / to_scalar(o) if not isinstance(o, int) else _q(1, o))
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        if isinstance(o, VElement):
            return self.va is o.va and self.terms == o.terms
        if is_scalar(o):
            return self.terms == ({(): o} if o else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def d(self, k=1):
        return self.va.d(self, k)

    @property
    def parity(self):
        pars = {self.va.wpar(w) for w in self.terms}
        if len(pars) > 1:
            raise ValueError("element is not parity-homogeneous")
        return pars.pop() if pars else 0

    def coeff(self, word):
        return self.terms.get(word, 0)

    def scalar_part(self):
        return self.terms.get((), 0)

    def is_scalar(self):
        return all(w == () for w in self.terms)

    def __repr__(self):
        return f"VElement({self})"

    def __str__(self):
        return self.va.render_vec(self.terms)


class Derivation:
    """An even or odd derivation determined by its values on generators."""

    _counter = 0

    def __init__(self, va, images, parity=1, name="D", anchored=None):
        self.va = va
        self.parity = parity
        self.name = name
        self.images = {}
        raw = {}
        for g, img in images.items():
            i = va.index(g) if isinstance(g, str) else g
            vec = va._coerce(img)
            if vec:
                raw[i] = vec
                self.images[va.names[i]] = va.element(vec)
        self.raw = raw
        self.anchored = anchored
        Derivation._counter += 1
        self.key = Derivation._counter

    def __call__(self, x):
        return self.va.apply_derivation(self, x)

    def on(self, name):
        return self.images.get(name, self.va.zero)

    def transport(self, va):
        """The same derivation on another algebra with the same generators."""
        imgs = {n: _transport(e, va) for n, e in self.images.items()}
        return Derivation(va, imgs, self.parity, self.name, self.anchored)

    def combine(self, others_coeffs, name=None):
        """Σ c_i D_i for derivations of equal parity on the same algebra."""
        imgs = {}
        for D, c in others_coeffs:
            for n, e in D.images.items():
                imgs[n] = imgs.get(n, self.va.zero) + e * c
        return Derivation(self.va, imgs, self.parity, name or self.name)

    def __repr__(self):
        body = ", ".join(f"{n} -> {e}" for n, e in self.images.items())
        return f"Derivation({self.name}: {body})"


def _transport(e, va):
    if e.va is va:
        return e
    out = {}
    for w, c in e.terms.items():
        out[tuple((va.index(e.va.names[g]), k) for g, k in w)] = c
    return VElement(va, out)


def combine_derivations(pairs, name="D"):
    """Σ c_i D_i for derivations of one parity on one algebra."""
    D0 = pairs[0][0]
    return D0.combine(pairs, name)


# module-level mirrors of the methods

def nop(x, y):
    return x.va.nop(x, y) if isinstance(x, VElement) else y.va.nop(x, y)


def lambda_bracket(x, y):
    return (x.va if isinstance(x, VElement) else y.va).bracket(x, y)


def nth_product(x, n, y):
    return (x.va if isinstance(x, VElement) else y.va).nth_product(x, n, y)


def apply_derivation(D, x):
    return D.va.apply_derivation(D, x)


def specialize_central(algebra, assignments):
    return algebra.specialize_central(assignments)


def normal_form(algebra, expr):
    return algebra.normal_form(expr)


# -- randomized engine checks -------------------------------------------------

def random_word(va, rng, max_len=3, max_der=2, parity=None):
    """A random PBW word over the non-central generators (may be empty)."""
    live = [i for i in range(len(va.names)) if not va.central[i]]
    for _ in range(100):
        n = rng.randint(1, max_len)
        letters = [(rng.choice(live), rng.randint(0, max_der)) for _ in range(n)]
        vec = {(): 1}
        for a in reversed(letters):
            vec = va._nop_vec({(a,): 1}, vec)
        w = max(vec, key=lambda w: (len(w), w), default=None)
        if w is None:
            continue
        if parity is None or va.wpar(w) == parity:
            return w
    return None


def random_element(va, rng, max_len=3, max_der=2, terms=2):
    """A random parity-homogeneous element with small integer coefficients."""
    p = rng.randint(0, 1)
    vec = {}
    for _ in range(terms):
        w = random_word(va, rng, max_len, max_der, p)
        if w is None:
            w = random_word(va, rng, max_len, max_der, 1 - p)
            if w is None:
                continue
            vec = {}
            p = 1 - p
        _add(vec, {w: rng.choice([-2, -1, 1, 2, 3])})
    return vec


def check_engine(va, seed=0, pairs=200, triples=200, max_len=3, max_der=2,
                 triple_budget=6, report=None):
    """Randomized skew-symmetry and Jacobi checks of the λ-bracket.

    Skew-symmetry runs on two-term elements; Jacobi on single PBW words
    whose lengths add up to at most ``triple_budget`` (the cost of a Jacobi
    check grows quickly with the total length).
    """
    import random
    from .report import Report
    rng = random.Random(seed)
    rep = report or Report("vertex algebra engine")
    for t in range(pairs):
        x = random_element(va, rng, max_len, max_der)
        y = random_element(va, rng, max_len, max_der)
        lhs = va._br_vec(y, x)
        s = 1 if va.vpar(x) and va.vpar(y) else -1
        rhs = va._skew(va._br_vec(x, y), s)
        ok = lhs == rhs
        rep.add(f"skew #{t}", ok, **({} if ok else {
            "x": va.render_vec(x), "y": va.render_vec(y),
            "lhs": render_lpoly(va.names, lhs), "rhs": render_lpoly(va.names, rhs)}))
    for t in range(triples):
        while True:
            ws = [random_word(va, rng, max_len, max_der) for _ in range(3)]
            if sum(len(w) for w in ws) <= triple_budget:
                break
        x, y, z = ({w: 1} for w in ws)
        lhs, rhs = va.jacobi_sides(x, y, z)
        ok = lhs == rhs
        rep.add(f"jacobi #{t}", ok, **({} if ok else {
            "x": va.render_vec(x), "y": va.render_vec(y), "z": va.render_vec(z),
            "lhs": render_lg(va.names, lhs), "rhs": render_lg(va.names, rhs)}))
    return rep
