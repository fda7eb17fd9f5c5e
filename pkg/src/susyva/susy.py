"""Supersymmetric structures on vertex algebras.

An N=n structure is an n-tuple of odd derivations D^1..D^n with
[D^i, D^j] = 2δ_ij ∂, each a derivation of the λ-bracket.  The Λ-bracket
for N=1 and N=2 is assembled from λ-brackets:

    N=1:  [a_Λ b] = [Da_λ b] + χ[a_λ b]
    N=2:  [a_Λ b] = [D²D¹a_λ b] − χ¹[D²a_λ b] + χ²[D¹a_λ b] − χ¹χ²[a_λ b]

Grassmann-valued results are raw dicts {(monomial, λ-exp, γ-exp): vec}
where χ^i is i and η^i is 10+i (see :mod:`susyva.coeff`).
"""

import random
from math import comb

from .coeff import GrassmannLambdaValue, mono_mul, to_scalar, integrate_Gamma
from .lca import LcaPresentation, GeneratorDecl
from .report import Report
from .ueva import (Derivation, _add, _add_l, render_lpoly,
                   render_vec, random_word)
from . import linalg

__all__ = [
    "SusyStructure", "check_susy_structure", "check_sef", "Lambda_bracket",
    "check_susy_lca_axioms", "extend_N1", "extend_N2", "extend_N3",
    "orthogonal_act", "render_glv", "delta_ansatz",
]


class SusyStructure:
    """Odd derivations D^1..D^n on one vertex algebra."""

    def __init__(self, va, derivations):
        derivations = list(derivations)
        if not 1 <= len(derivations) <= 4:
            raise ValueError("N must be between 1 and 4")
        for D in derivations:
            if D.va is not va:
                raise ValueError("derivations live on a different algebra")
        self.va = va
        self.D = derivations
        self.n = len(derivations)

    @classmethod
    def from_presentation(cls, pres, names=None):
        names = names or sorted(pres.derivations)
        return cls(pres.algebra(), [pres.derivation(n) for n in names])

    def __repr__(self):
        return f"SusyStructure(N={self.n}, {[D.name for D in self.D]})"


# -- raw helpers --------------------------------------------------------------

def _der_lp(va, D, lp):
    out = {}
    for n, vec in lp.items():
        dv = va._der_vec(D, vec)
        if dv:
            out[n] = dv
    return out


def _clean(lp):
    return {n: v for n, v in lp.items() if v}


def _sub_lp(a, b):
    return _clean(_add_l({n: dict(v) for n, v in a.items()}, b, -1))


def _gadd(acc, key, vec, c=1):
    slot = acc.setdefault(key, {})
    _add(slot, vec, c)
    if not slot:
        del acc[key]


def _gclean(g):
    return {k: v for k, v in g.items() if v}


def render_glv(va, g):
    """Text for a raw Grassmann value."""
    if not g:
        return "0"
    parts = []
    for (m, a, b) in sorted(g, key=lambda k: (k[1], k[2], len(k[0]), k[0])):
        fac = [("x%d" % v) if v < 10 else ("y%d" % (v - 10)) for v in m]
        if a:
            fac.append("l" if a == 1 else f"l^{a}")
        if b:
            fac.append("g" if b == 1 else f"g^{b}")
        body = render_vec(va.names, g[(m, a, b)])
        parts.append("*".join(fac) + f"*({body})" if fac else f"({body})")
    return " + ".join(parts)


def _to_glv(va, g):
    return GrassmannLambdaValue({k: va.element(v) for k, v in g.items()})


# -- structure checks ---------------------------------------------------------

def _vec_of(va, name):
    return {((va.index(name), 0),): 1}


def check_susy_structure(S, sample=10, seed=0, max_len=2, max_der=1):
    """Anticommutators, derivation of the λ-bracket (on generator pairs and a
    random sample) and Leibniz for the product on the sample."""
    va = S.va
    rep = Report(f"N={S.n} SUSY structure")
    gens = [((i, 0),) for i in range(len(va.names))]
    for i, D in enumerate(S.D):
        rep.add(f"{D.name} odd", D.parity == 1)
    for i in range(S.n):
        for j in range(i, S.n):
            Di, Dj = S.D[i], S.D[j]
            for w in gens:
                x = {w: 1}
                lhs = va._der_vec(Di, va._der_vec(Dj, x))
                _add(lhs, va._der_vec(Dj, va._der_vec(Di, x)))
                rhs = va._dpow(x, 1) if i == j else {}
                rhs = {k: 2 * v for k, v in rhs.items()}
                ok = lhs == rhs
                rep.add(f"[{Di.name},{Dj.name}] on {va.names[w[0][0]]}", ok,
                        **({} if ok else {"lhs": render_vec(va.names, lhs),
                                          "rhs": render_vec(va.names, rhs)}))
    rng = random.Random(seed)
    pairs = [(f"({va.names[a[0][0]]}, {va.names[b[0][0]]})", {a: 1}, {b: 1})
             for a in gens for b in gens]
    for t in range(sample):
        x = random_word(va, rng, max_len, max_der)
        y = random_word(va, rng, max_len, max_der)
        if x is not None and y is not None:
            pairs.append((f"sample #{t}", {x: 1}, {y: 1}))
    for D in S.D:
        for label, x, y in pairs:
            px = va.vpar(x)
            lhs = _der_lp(va, D, va._br_vec(x, y))
            rhs = _add_l(va._br_vec(va._der_vec(D, x), y),
                         va._br_vec(x, va._der_vec(D, y)), (-1) ** px)
            rhs = _clean(rhs)
            ok = lhs == rhs
            rep.add(f"{D.name} derivation of bracket {label}", ok,
                    **({} if ok else {"lhs": render_lpoly(va.names, lhs),
                                      "rhs": render_lpoly(va.names, rhs)}))
            if label.startswith("sample"):
                lhs = va._der_vec(D, va._nop_vec(x, y))
                rhs = va._nop_vec(va._der_vec(D, x), y)
                _add(rhs, va._nop_vec(x, va._der_vec(D, y)), (-1) ** px)
                ok = lhs == rhs
                rep.add(f"{D.name} Leibniz {label}", ok,
                        **({} if ok else {"lhs": render_vec(va.names, lhs),
                                          "rhs": render_vec(va.names, rhs)}))
    return rep


# -- SEF ----------------------------------------------------------------------

def _sef_sides(va, D, a, b):
    """(SEF1 lhs, rhs, SEF2 lhs, rhs) for barred elements a, b (raw vecs)."""
    Da, Db = va._der_vec(D, a), va._der_vec(D, b)
    s = (-1) ** (va.vpar(a) + 1)
    A = va._br_vec(Da, b)
    B = va._br_vec(a, b)
    l1 = va._br_vec(Da, Db)
    r1 = _add_l(_der_lp(va, D, A), B, 1, shift=1)
    r1 = _clean({n: {w: s * c for w, c in v.items()} for n, v in r1.items()})
    l2 = va._br_vec(a, Db)
    r2 = _add_l({n: dict(v) for n, v in A.items()}, _der_lp(va, D, B), -1)
    r2 = _clean({n: {w: s * c for w, c in v.items()} for n, v in r2.items()})
    return _clean(l1), r1, _clean(l2), r2


def check_sef(pres, names=None, dname=None, solve=True):
    """Check (SEF1) and (SEF2) for all ordered pairs of designated generators.

    ``pres`` is a presentation carrying a derivation ``dname`` and a
    designated set (``pres.sef[dname]`` unless ``names`` is given).  When a
    check fails and ``solve`` is set, brackets that the table leaves
    unspecified are treated as unknowns and (SEF1) is solved for them; pairs
    with no solution are reported as inconsistent.
    """
    if dname is None:
        if len(pres.sef) != 1 and names is None:
            raise ValueError("several designated sets; name the derivation")
        dname = next(iter(pres.sef)) if pres.sef else next(iter(pres.derivations))
    if names is None:
        names = pres.sef.get(dname, [])
    va = pres.algebra()
    D = pres.derivation(dname)
    rep = Report(f"SUSY extension formulas ({dname})")
    for an in names:
        for bn in names:
            a, b = _vec_of(va, an), _vec_of(va, bn)
            l1, r1, l2, r2 = _sef_sides(va, D, a, b)
            for tag, l, r in (("SEF1", l1, r1), ("SEF2", l2, r2)):
                ok = l == r
                rep.add(f"{tag} ({an}, {bn})", ok,
                        **({} if ok else {"lhs": render_lpoly(va.names, l),
                                          "rhs": render_lpoly(va.names, r)}))
    if not rep.passed and solve:
        for msg in _solve_sef(pres, names, dname):
            rep.add(msg, False)
    return rep


def _linear(vec):
    for w in vec:
        if len(w) > 1:
            raise ValueError("SEF solving needs linear bracket values")
    return vec


class _Ansatz:
    """Linear algebra over unknown generator brackets.

    Values are {(λ-exp, letter-or-None): {var: coeff}} with the key ``None``
    in the inner dict standing for the constant part; letter None is the
    vacuum.
    """

    def __init__(self, pres, D, unknown, deg):
        self.pres, self.D = pres, D
        self.va = pres.algebra()
        self.nvars = 0
        self.vars = {}
        n = len(pres.gens)
        for (i, j) in unknown:
            par = (pres.parity[i] + pres.parity[j]) % 2
            for lam in range(deg + 1):
                for g in range(n):
                    if pres.parity[g] != par:
                        continue
                    for k in range(1 if pres.central[g] else deg + 2):
                        self.vars[(i, j, lam, (g, k))] = self.nvars
                        self.nvars += 1
        self.unknown = set(unknown)

    @staticmethod
    def _acc(out, key, form, c=1):
        slot = out.setdefault(key, {})
        for v, x in form.items():
            y = slot.get(v, 0) + c * x
            if y:
                slot[v] = y
            else:
                slot.pop(v, None)
        if not slot:
            del out[key]

    def const(self, lp):
        out = {}
        for n, vec in lp.items():
            for w, c in _linear(vec).items():
                self._acc(out, (n, w[0] if w else None), {None: c})
        return out

    def gen_bracket(self, i, j):
        if (i, j) in self.unknown:
            out = {}
            for (a, b, lam, letter), v in self.vars.items():
                if (a, b) == (i, j):
                    out[(lam, letter)] = {v: 1}
            return out
        if (j, i) in self.unknown:
            s = -1 if (self.pres.parity[i] * self.pres.parity[j]) % 2 == 0 else 1
            return self.skew(self.gen_bracket(j, i), s)
        return self.const(self.va._gen_bracket(i, j))

    def d(self, val):
        out = {}
        for (n, letter), form in val.items():
            if letter is None or self.pres.central[letter[0]]:
                continue
            self._acc(out, (n, (letter[0], letter[1] + 1)), form)
        return out

    def dpow(self, val, t):
        for _ in range(t):
            val = self.d(val)
        return val

    def skew(self, val, sign):
        out = {}
        for (n, letter), form in val.items():
            for j in range(n + 1):
                for (m, l2), f2 in self.dpow({(n, letter): form}, j).items():
                    self._acc(out, (n - j, l2), f2, sign * (-1) ** n * comb(n, j))
        return out

    def basic(self, a, b):
        (i, k), (j, l) = a, b
        if self.pres.central[i] or self.pres.central[j]:
            return {}
        out = {}
        base = self.gen_bracket(i, j)
        for t in range(l + 1):
            for (n, letter), form in self.dpow(base, t).items():
                self._acc(out, (n + k + l - t, letter), form, comb(l, t) * (-1) ** k)
        return out

    def bracket(self, x, y):
        out = {}
        for w1, c1 in _linear(x).items():
            for w2, c2 in _linear(y).items():
                if not w1 or not w2:
                    continue
                for key, form in self.basic(w1[0], w2[0]).items():
                    self._acc(out, key, form, c1 * c2)
        return out

    def apply_D(self, val):
        out = {}
        for (n, letter), form in val.items():
            if letter is None:
                continue
            img = self.va._der_vec(self.D, {(letter,): 1})
            for w, c in _linear(img).items():
                self._acc(out, (n, w[0] if w else None), form, c)
        return out

    def shift(self, val, k=1):
        return {(n + k, l): f for (n, l), f in val.items()}

    def combine(self, *terms):
        out = {}
        for val, c in terms:
            for key, form in val.items():
                self._acc(out, key, form, c)
        return out

    def solvable(self, equations):
        rows = []
        for val in equations:
            for form in val.values():
                row = {self.nvars if v is None else v: (-x if v is None else x)
                       for v, x in form.items()}
                rows.append(row)
        return linalg.solve(rows, self.nvars) is not None


def _solve_sef(pres, names, dname):
    va = pres.algebra()
    D = pres.derivation(dname)
    idx = [pres.index(n) for n in names]
    involved = set(idx)
    for i in idx:
        for w in D.raw.get(i, {}):
            involved.update(g for g, _ in w)
    table = pres.table
    unknown = []
    for i in sorted(involved):
        for j in sorted(involved):
            if pres.central[i] or pres.central[j]:
                continue
            if (i, j) in table or (j, i) in table:
                continue
            if (j, i) in unknown:
                continue
            if i in idx or j in idx:
                unknown.append((i, j))
    if not unknown:
        return []
    deg = max([n for lp in table.values() for n in lp] + [0]) + 2
    A = _Ansatz(pres, D, unknown, deg)
    msgs = []
    for an, i in zip(names, idx):
        for bn, j in zip(names, idx):
            a, b = _vec_of(va, an), _vec_of(va, bn)
            Da, Db = va._der_vec(D, a), va._der_vec(D, b)
            s = (-1) ** (va.vpar(a) + 1)
            lhs = A.bracket(Da, Db)
            rhs = A.combine((A.apply_D(A.bracket(Da, b)), s),
                            (A.shift(A.bracket(a, b)), s))
            if not A.solvable([A.combine((lhs, 1), (rhs, -1))]):
                msgs.append(f"inconsistent: no bracket assignment satisfies SEF1 for ({an}, {bn})")
    return msgs


# -- Λ-brackets ---------------------------------------------------------------

def _components(S, x, y):
    """{χ-monomial: raw lpoly} for [x_Λ y] (N = 1, 2)."""
    va = S.va
    if S.n == 1:
        D, = S.D
        return {(): va._br_vec(va._der_vec(D, x), y), (1,): va._br_vec(x, y)}
    if S.n == 2:
        D1, D2 = S.D
        neg = lambda lp: {n: {w: -c for w, c in v.items()} for n, v in lp.items()}
        return {
            (): va._br_vec(va._der_vec(D2, va._der_vec(D1, x)), y),
            (1,): neg(va._br_vec(va._der_vec(D2, x), y)),
            (2,): va._br_vec(va._der_vec(D1, x), y),
            (1, 2): neg(va._br_vec(x, y)),
        }
    raise ValueError("Λ-brackets are available for N = 1 and N = 2 only")


def _raw_Lambda(S, x, y, offset=0):
    """Raw Grassmann value of [x_Λ y]; offset 10 writes η, γ instead of χ, λ."""
    out = {}
    for m, lp in _components(S, x, y).items():
        mono = tuple(v + offset for v in m)
        for n, vec in lp.items():
            if vec:
                key = (mono, 0, n) if offset else (mono, n, 0)
                _gadd(out, key, vec)
    return out


def Lambda_bracket(S, x, y):
    """[x_Λ y] as a GrassmannLambdaValue with VElement coefficients."""
    va = S.va
    return _to_glv(va, _raw_Lambda(S, va._coerce(x), va._coerce(y)))


def _times(mono, lam, gam, sign, g):
    """±λ^lam γ^gam · mono · g."""
    out = {}
    for (m, a, b), vec in g.items():
        s, m2, da, db = mono_mul(mono, m)
        _gadd(out, (m2, a + lam + da, b + gam + db), vec, s * sign)
    return out


def _gsum(*pairs):
    out = {}
    for g, c in pairs:
        for k, v in g.items():
            _gadd(out, k, v, c)
    return out


def _apply_D_glv(va, D, i, g):
    """D^i acting on a raw Grassmann value (moving past χ's)."""
    out = {}
    for (m, a, b), vec in g.items():
        for t, v in enumerate(m):
            if v == i:
                rest = m[:t] + m[t + 1:]
                _gadd(out, (rest, a + 1, b), vec, 2 * (-1) ** t)
        dv = va._der_vec(D, vec)
        if dv:
            _gadd(out, (m, a, b), dv, (-1) ** len(m))
    return out


def _minus_nabla(S, g):
    """Substitute Λ → −∇−Λ in a raw value with only χ, λ."""
    va = S.va
    out = {}
    for (m, n, _), vec in g.items():
        # (−∂−λ)^n vec
        cur = {}
        for j in range(n + 1):
            dv = va._dpow(vec, j)
            if dv:
                _gadd(cur, ((), n - j, 0), dv, (-1) ** n * comb(n, j))
        for i in reversed(m):
            D = S.D[i - 1]
            cur = _gsum((_apply_D_glv(va, D, i, cur), -1), (_times((i,), 0, 0, 1, cur), -1))
        for k, v in cur.items():
            _gadd(out, k, v)
    return out


def _expand_theta(S, x, y):
    """[x_{Λ+Γ} y] with θ = λ+γ and ζ^i = χ^i + η^i expanded."""
    out = {}
    for m, lp in _components(S, x, y).items():
        # ζ-monomial as a sum of χ/η monomials
        zs = {((), 0, 0): 1}
        for i in m:
            new = {}
            for (mm, a, b), c in zs.items():
                for v in (i, 10 + i):
                    s, m2, da, db = mono_mul(mm, (v,))
                    key = (m2, a + da, b + db)
                    new[key] = new.get(key, 0) + s * c
            zs = {k: c for k, c in new.items() if c}
        for n, vec in lp.items():
            for t in range(n + 1):
                for (mm, a, b), c in zs.items():
                    _gadd(out, (mm, a + t, b + n - t), vec, c * comb(n, t))
    return out


def _split_homog(va, vec):
    out = {}
    for w, c in vec.items():
        out.setdefault(va.wpar(w), {})[w] = c
    return out.values()


def _jacobi(S, a, b, c):
    va = S.va
    n = S.n
    pa, pb = va.vpar(a), va.vpar(b)
    lhs = {}
    for (mJ, _, gm), e in _raw_Lambda(S, b, c, offset=10).items():
        s = (-1) ** ((pa + n) * len(mJ))
        inner = _raw_Lambda(S, a, e)
        # η^J γ^m [a_Λ e]
        for k, v in _times(mJ, 0, gm, s, inner).items():
            _gadd(lhs, k, v)
    rhs = {}
    for (mI, lm, _), e in _raw_Lambda(S, a, b).items():
        for pe in _split_homog(va, e):
            s = (-1) ** ((pa + 1) * n) * (-1) ** (n * len(mI))
            inner = _expand_theta(S, pe, c)
            for k, v in _times(mI, lm, 0, s, inner).items():
                _gadd(rhs, k, v)
    s0 = (-1) ** ((pa + n) * (pb + n))
    for (mI, lm, _), e in _raw_Lambda(S, a, c).items():
        s = s0 * (-1) ** ((pb + n) * len(mI))
        inner = _raw_Lambda(S, b, e, offset=10)
        for k, v in _times(mI, lm, 0, s, inner).items():
            _gadd(rhs, k, v)
    return _gclean(lhs), _gclean(rhs)


def _wick(S, a, b, c):
    va = S.va
    n = S.n
    pa, pb = va.vpar(a), va.vpar(b)
    lhs = _raw_Lambda(S, a, va._nop_vec(b, c))
    rhs = {}
    for (mI, lm, _), e in _raw_Lambda(S, a, b).items():
        _gadd(rhs, (mI, lm, 0), va._nop_vec(e, c))
    s0 = (-1) ** ((pa + n) * pb)
    for (mI, lm, _), e in _raw_Lambda(S, a, c).items():
        _gadd(rhs, (mI, lm, 0), va._nop_vec(b, e), s0 * (-1) ** (pb * len(mI)))
    integrand = {}
    for (mI, lm, _), e in _raw_Lambda(S, a, b).items():
        for pe in _split_homog(va, e):
            s = (-1) ** (n * len(mI))
            inner = _raw_Lambda(S, pe, c, offset=10)
            for k, v in _times(mI, lm, 0, s, inner).items():
                _gadd(integrand, k, v)
    for k, e in integrate_Gamma(_to_glv(va, integrand), n).terms.items():
        _gadd(rhs, k, e.terms)
    return _gclean(lhs), _gclean(rhs)


def check_susy_lca_axioms(S, sample=0, seed=0, max_len=2, max_der=1, wick=True):
    """Sesquilinearity, skew-symmetry, Jacobi and the Wick formula of the
    Λ-bracket on all generators plus ``sample`` random PBW words."""
    va = S.va
    n = S.n
    rep = Report(f"N={n} SUSY Lie conformal axioms")
    live = [i for i in range(len(va.names)) if not va.central[i]]
    elems = [(va.names[i], {((i, 0),): 1}) for i in live]
    rng = random.Random(seed)
    for t in range(sample):
        w = random_word(va, rng, max_len, max_der)
        if w is not None:
            elems.append((va.render_word(w), {w: 1}))

    def record(name, lhs, rhs):
        ok = lhs == rhs
        rep.add(name, ok, **({} if ok else {"lhs": render_glv(va, lhs),
                                            "rhs": render_glv(va, rhs)}))

    for an, a in elems:
        pa = va.vpar(a)
        for bn, b in elems:
            pb = va.vpar(b)
            ab = _raw_Lambda(S, a, b)
            for i, D in enumerate(S.D, 1):
                lhs = _raw_Lambda(S, va._der_vec(D, a), b)
                rhs = _times((i,), 0, 0, (-1) ** (n + 1), ab)
                record(f"sesquilinearity {D.name} left ({an}, {bn})", lhs, rhs)
                lhs = _raw_Lambda(S, a, va._der_vec(D, b))
                rhs = _gsum((_apply_D_glv(va, D, i, ab), 1), (_times((i,), 0, 0, 1, ab), 1))
                rhs = {k: {w: (-1) ** (pa + n) * c for w, c in v.items()} for k, v in rhs.items()}
                record(f"sesquilinearity {D.name} right ({an}, {bn})", lhs, _gclean(rhs))
            lhs = _raw_Lambda(S, b, a)
            rhs = _minus_nabla(S, ab)
            s = (-1) ** (pa * pb + n + 1)
            rhs = _gclean({k: {w: s * c for w, c in v.items()} for k, v in rhs.items()})
            record(f"skew ({bn}, {an})", lhs, rhs)
    for an, a in elems:
        for bn, b in elems:
            for cn, c in elems:
                record(f"jacobi ({an}, {bn}, {cn})", *_jacobi(S, a, b, c))
                if wick:
                    record(f"wick ({an}, {bn}, {cn})", *_wick(S, a, b, c))
    return rep


# -- extensions ---------------------------------------------------------------

SUFFIX = {1: "_bar", 2: "_circ", 3: "_dag"}


def _copy_vec(vec, cmap):
    out = {}
    for w, c in vec.items():
        if not w:
            raise ValueError("extension needs central generators, not scalar brackets")
        if len(w) != 1:
            raise ValueError("extension needs a linear bracket table")
        (g, k), = w
        if g not in cmap:
            continue
        key = ((cmap[g], k),)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _copy_lp(lp, cmap, sign=1):
    out = {}
    for n, vec in lp.items():
        v = _copy_vec(vec, cmap)
        if v:
            out[n] = {w: sign * c for w, c in v.items()}
    return out


def _extend(pres, suffix, derivs, new_name):
    """R ⊕ R' with R' the parity-reversed copy (names + suffix).

    ``derivs``: list of (name, {gen index: raw vec}) odd derivations on R,
    extended by D(w') = (−D w)'.  The new derivation maps w' ↦ w and
    w ↦ ∂w'.  Returns (presentation, list of derivation names).
    """
    n = len(pres.gens)
    for lp in pres.table.values():
        for vec in lp.values():
            for w in vec:
                if len(w) > 1:
                    raise ValueError("extension needs a linear bracket table")
    gens = list(pres.gens)
    cmap = {}
    for i, g in enumerate(pres.gens):
        name = g.name + suffix
        if name in pres.names:
            raise ValueError(f"name clash: {name}")
        cmap[i] = len(gens)
        gens.append(GeneratorDecl(name, 1 - g.parity, g.central))
    table = {}
    for (i, j), lp in pres.table.items():
        table[(i, j)] = lp
    for i in range(n):
        for j in range(n):
            if pres.central[i] or pres.central[j]:
                continue
            va = pres.algebra()
            lp = va._gen_bracket(i, j)
            if not lp:
                continue
            # [w'_λ x] = [w_λ x]',  [w_λ x'] = (−1)^{p(w)} [w_λ x]'
            table[(cmap[i], j)] = _copy_lp(lp, cmap)
            table[(i, cmap[j])] = _copy_lp(lp, cmap, (-1) ** pres.parity[i])
    ders = {}
    names = []
    for dn, imgs in derivs:
        new = {}
        for i, vec in imgs.items():
            new[i] = vec
            cv = _copy_vec(vec, cmap)
            if cv:
                new[cmap[i]] = {w: -c for w, c in cv.items()}
        ders[dn] = (1, new)
        names.append(dn)
    newd = {}
    for i in range(n):
        newd[cmap[i]] = {((i, 0),): 1}
        if not pres.central[i]:
            newd[i] = {((cmap[i], 1),): 1}
    ders[new_name] = (1, newd)
    names.append(new_name)
    out = LcaPresentation(gens, table, ders, name=(pres.name or "R") + suffix)
    return out, names, cmap


def extend_N1(pres):
    """The N=1 extension R ⊕ R̄ with D(ū) = u, D(u) = ∂ū, D(C̄) = C.

    Returns (presentation, Derivation D); the barred generators are
    designated as the SUSY generator.
    """
    base = LcaPresentation(pres.gens, pres.table, name=pres.name)
    out, names, cmap = _extend(base, SUFFIX[1], [], "D")
    out.sef["D"] = [out.names[cmap[i]] for i in range(len(pres.gens)) if not pres.central[i]]
    return out, out.derivation("D")


def _check_shape(pres, dname, sef):
    """Extension hypotheses: {Dū_i, ū_i} independent, D kills centrals."""
    par, imgs = pres.derivations[dname]
    S = [pres.index(n) for n in sef]
    images = set()
    for i in S:
        vec = imgs.get(i, {})
        if len(vec) != 1:
            raise ValueError(f"hypothesis violation: D({pres.names[i]}) is not a multiple of a generator")
        (w, c), = vec.items()
        if len(w) != 1 or w[0][1] != 0 or w[0][0] in S or w[0][0] in images:
            raise ValueError("hypothesis violation: the set {D(u_bar_i), u_bar_i} is not linearly independent")
        images.add(w[0][0])
    for i, g in enumerate(pres.gens):
        if g.central and imgs.get(i):
            raise ValueError("hypothesis violation: D does not vanish on the central part")
        if not g.central and i not in images and i not in S:
            raise ValueError(f"hypothesis violation: {g.name} is neither designated nor a D-image")


def extend_N2(pres, dname=None):
    """N=2 extension of an N=1 presentation with a designated SUSY generator.

    Returns (presentation with derivations D1, D2, SusyStructure).
    """
    dname = dname or next(iter(pres.sef))
    sef = pres.sef[dname]
    _check_shape(pres, dname, sef)
    _, imgs = pres.derivations[dname]
    out, names, cmap = _extend(pres, SUFFIX[2], [("D1", imgs)], "D2")
    S = [pres.index(x) for x in sef]
    live = [i for i in range(len(pres.gens)) if not pres.central[i]]
    out.sef["D1"] = [out.names[i] for i in S] + [out.names[cmap[i]] for i in S]
    out.sef["D2"] = [out.names[cmap[i]] for i in live]
    return out, SusyStructure.from_presentation(out, ["D1", "D2"])


def extend_N3(pres):
    """N=3 extension of an N=2 presentation with derivations D1, D2."""
    for d in ("D1", "D2"):
        if d not in pres.derivations or d not in pres.sef:
            raise ValueError("shape violation: need derivations D1, D2 with designated sets")
    derivs = [(d, pres.derivations[d][1]) for d in ("D1", "D2")]
    out, names, cmap = _extend(pres, SUFFIX[3], derivs, "D3")
    live = [i for i in range(len(pres.gens)) if not pres.central[i]]
    for d in ("D1", "D2"):
        S = [pres.index(x) for x in pres.sef[d]]
        out.sef[d] = [out.names[i] for i in S] + [out.names[cmap[i]] for i in S]
    out.sef["D3"] = [out.names[cmap[i]] for i in live]
    return out, SusyStructure.from_presentation(out, ["D1", "D2", "D3"])


# -- orthogonal group ---------------------------------------------------------

def orthogonal_act(A, S):
    """(Σ_i A_{1i} D^i, …, Σ_i A_{ni} D^i) for an orthogonal matrix A."""
    A = [[to_scalar(x) for x in row] for row in A]
    n = S.n
    if len(A) != n or any(len(r) != n for r in A):
        raise ValueError("matrix size does not match N")
    if linalg.matmul(A, linalg.transpose(A)) != linalg.identity(n):
        raise ValueError("matrix is not orthogonal")
    va = S.va
    out = []
    for r in range(n):
        raw = {}
        for i, D in enumerate(S.D):
            c = A[r][i]
            if not c:
                continue
            for g, vec in D.raw.items():
                _add(raw.setdefault(g, {}), vec, c)
        out.append(Derivation(va, {g: va.element(v) for g, v in raw.items() if v}, 1, f"D{r + 1}'"))
    return SusyStructure(va, out)


# -- small ansatz families ----------------------------------------------------

def delta_ansatz(delta):
    """L and a primary odd L_bar of weight Δ with D(L_bar) = L.

    (SEF1) forces [L_bar_λ L_bar] = (2 − Δ)L; Jacobi then holds only for
    Δ = 3/2 and Δ = 2.
    """
    from .coeff import render_scalar
    dl = render_scalar(to_scalar(delta))
    text = f"""
even L;
odd L_bar;
bracket L L = (d + 2*l)*L;
bracket L L_bar = (d + ({dl})*l)*L_bar;
bracket L_bar L_bar = (2 - ({dl}))*L;
derive D L_bar = L;
derive D L = d*L_bar;
sef D L_bar;
"""
    return LcaPresentation.from_text(text)
