"""Superconformal vectors: certificates, shifts and the named constructions.

Relations are checked against the builtin super-Virasoro tables: the
candidate's vectors (and the currents derived from them by n-th products)
are substituted for the table's generators, with the central generator C
replaced by 12 times the λ³ coefficient of [L_λ L].
"""

from math import factorial

from .coeff import I, Q, render_scalar, to_scalar
from .lca import (BUILTINS, LcaPresentation, cur_presentation, direct_sum,
                  charged_ff_presentation, specialize_presentation,
                  susy_affine_presentation)
from .report import Report
from .susy import SusyStructure, _raw_Lambda, extend_N1, extend_N2, render_glv
from .ueva import Derivation, VElement, _add, render_lpoly, render_vec

__all__ = [
    "SconfCandidate", "SconfCertificate", "verify_superconformal",
    "conformal_weight", "shift_superconformal", "kac_todorov",
    "kac_todorov_charge", "susy_affine_algebra", "charged_data",
    "tau_charged", "brst_tau", "brst_charge", "current_superconformal",
    "derivations_from_sconf", "zero_mode",
]

HALF = Q(1, 2)

# odd vectors supplied by the user, per mode
SHAPES = {
    "N1": ("G",),
    "N2": ("Gp", "Gm"),
    "N3": ("Gp", "Gm", "G0", "Phi"),
}
TEMPLATES = {"N1": "svir", "N2": "svir_n2", "N3": "svir_n3"}


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Q(a, b)
    return a / b


def _scale(vec, c):
    return {w: v * c for w, v in vec.items()} if c else {}


def _comb(*terms):
    out = {}
    for vec, c in terms:
        _add(out, vec, c)
    return out


def _nth(va, x, n, y):
    return _scale(va._br_vec(x, y).get(n, {}), factorial(n))


class SconfCandidate:
    """Odd vectors G (N1), G⁺, G⁻ (N2) or G⁺, G⁻, G⁰, Φ (N3) in one algebra."""

    def __init__(self, mode, **vectors):
        mode = mode.upper()
        if mode not in SHAPES:
            raise ValueError(f"unknown mode {mode!r}")
        if set(vectors) != set(SHAPES[mode]):
            raise ValueError(f"{mode} needs vectors {', '.join(SHAPES[mode])}")
        vas = {v.va for v in vectors.values()}
        if len(vas) != 1:
            raise ValueError("candidate vectors live in different algebras")
        self.mode = mode
        self.vectors = vectors
        self.va = vas.pop()
        for n, v in vectors.items():
            if v and v.parity != 1:
                raise ValueError(f"{n} must be odd")

    def __getitem__(self, name):
        return self.vectors[name]


class SconfCertificate:
    """Outcome of :func:`verify_superconformal`."""

    def __init__(self, mode, currents, charge, report, weights):
        self.mode = mode
        self.currents = currents
        self.charge = charge
        self.report = report
        self.weights = weights
        self.extra = {}

    @property
    def passed(self):
        return self.report.passed

    @property
    def L(self):
        return self.currents["L"]

    @property
    def J(self):
        return self.currents.get("J")

    def charge_str(self):
        c = self.charge
        return render_scalar(c) if not isinstance(c, VElement) else str(c)

    def to_dict(self):
        return {
            "mode": self.mode,
            "passed": self.passed,
            "charge": self.charge_str() if self.charge is not None else None,
            "currents": {n: str(v) for n, v in self.currents.items()},
            "weights": {n: [render_scalar(d), p] for n, (d, p) in self.weights.items()},
            "extra": {k: (render_scalar(v) if not isinstance(v, (str, bool)) else v)
                      for k, v in self.extra.items()},
            "report": self.report.to_dict(),
        }


def _derive_currents(mode, va, vec):
    """Raw vecs of every template generator from the odd vectors."""
    cur = dict(vec)
    if mode == "N1":
        cur["L"] = _scale(_nth(va, vec["G"], 0, vec["G"]), HALF)
    elif mode == "N2":
        Gp, Gm = vec["Gp"], vec["Gm"]
        cur["L"] = _scale(_comb((_nth(va, Gp, 0, Gm), 1), (_nth(va, Gm, 0, Gp), 1)), HALF)
        cur["J"] = _nth(va, Gp, 1, Gm)
    else:
        Gp, Gm, G0 = vec["Gp"], vec["Gm"], vec["G0"]
        cur["L"] = _nth(va, G0, 0, G0)
        cur["J0"] = _nth(va, Gp, 1, Gm)
        cur["Jp"] = _nth(va, Gp, 1, G0)
        cur["Jm"] = _scale(_nth(va, Gm, 1, G0), -1)
    return cur


def conformal_weight(L, a):
    """(Δ, primary) for [L_λ a] = (∂ + Δλ)a + O(λ²)."""
    va = L.va
    x, y = va._coerce(L), va._coerce(a)
    return _weight(va, x, y)


def _weight(va, x, y):
    if not y:
        raise ValueError("the zero vector has no conformal weight")
    lp = va._br_vec(x, y)
    if lp.get(0, {}) != va._dpow(y, 1):
        raise ValueError("L_(0) does not act as the translation")
    one = lp.get(1, {})
    w = next(iter(y))
    delta = to_scalar(_div(one.get(w, 0), y[w]))
    if one != _scale(y, delta):
        raise ValueError("not an eigenvector of L_(1)")
    primary = all(not v for n, v in lp.items() if n >= 2)
    return delta, primary


def verify_superconformal(cand, generators=None):
    """Derive L (and J, …), check every super-Virasoro relation exactly,
    read the central charge off [L_λ L] and compute the conformal weights of
    the declared generators (``generators``: names, default all
    non-central)."""
    va = cand.va
    mode = cand.mode
    rep = Report(f"{mode} superconformal certificate")
    vec = {n: va._coerce(v) for n, v in cand.vectors.items()}
    cur = _derive_currents(mode, va, vec)
    LL = va._br_vec(cur["L"], cur["L"])
    c3 = LL.get(3, {})
    cvec = _scale(c3, 12)
    central = all(all(va.central[g] for g, _ in w) for w in cvec)
    rep.add("λ³ coefficient of [L_λ L] is central", central,
            **({} if central else {"value": render_vec(va.names, c3)}))
    tmpl = LcaPresentation.from_text(BUILTINS[TEMPLATES[mode]])
    tva = tmpl.algebra()
    imgs = {}
    for i, name in enumerate(tmpl.names):
        imgs[i] = cvec if tmpl.central[i] else cur[name]

    def subst(lp):
        out = {}
        for n, tv in lp.items():
            acc = {}
            for w, c in tv.items():
                if not w:
                    _add(acc, {(): 1}, c)
                    continue
                (g, k), = w
                _add(acc, va._dpow(imgs[g], k), c)
            if acc:
                out[n] = acc
        return out

    live = [i for i in range(len(tmpl.names)) if not tmpl.central[i]]
    for i in live:
        for j in live:
            want = subst(tva._gen_bracket(i, j))
            got = {n: v for n, v in va._br_vec(imgs[i], imgs[j]).items() if v}
            ok = got == want
            rep.add(f"[{tmpl.names[i]}_λ {tmpl.names[j]}]", ok,
                    **({} if ok else {"lhs": render_lpoly(va.names, got),
                                      "rhs": render_lpoly(va.names, want)}))
    if not cvec:
        charge = 0
    elif set(cvec) == {()}:
        charge = cvec[()]
    else:
        charge = va.element(cvec)
    weights = {}
    names = generators if generators is not None else \
        [n for i, n in enumerate(va.names) if not va.central[i]]
    for n in names:
        try:
            weights[n] = _weight(va, cur["L"], va._coerce(n))
            rep.add(f"L_(1) eigenvector {n}", True)
        except ValueError as e:
            rep.add(f"L_(1) eigenvector {n}", False, reason=str(e))
    currents = {n: va.element(v) for n, v in cur.items()}
    return SconfCertificate(mode, currents, charge, rep, weights)


def zero_mode(x, name=None):
    """The derivation x_(0), given by its values on the generators."""
    va = x.va
    xv = va._coerce(x)
    imgs = {}
    for i in range(len(va.names)):
        if va.central[i]:
            continue
        v = va._br_vec(xv, {((i, 0),): 1}).get(0, {})
        if v:
            imgs[i] = va.element(v)
    return Derivation(va, imgs, x.parity, name or "D")


def _scalar_of(vec, what):
    if not vec:
        return 0
    if set(vec) != {()}:
        raise ValueError(f"hypothesis violation: {what} is not a scalar")
    return vec[()]


def shift_superconformal(G, v, cert=None):
    """G + ∂v with charge c + 6c₁ − 3c₂ (see the hypotheses in the docs)."""
    va = G.va
    cert = cert or verify_superconformal(SconfCandidate("N1", G=G))
    if not cert.passed:
        raise ValueError("G is not superconformal")
    L = va._coerce(cert.L)
    g, x = va._coerce(G), va._coerce(v)
    if x and va.vpar(x) != 1:
        raise ValueError("hypothesis violation: v must be odd")
    Lv = {n: w for n, w in va._br_vec(L, x).items() if w}
    want = {n: w for n, w in {0: va._dpow(x, 1), 1: _scale(x, HALF)}.items() if w}
    if Lv != want:
        raise ValueError("hypothesis violation: [L_λ v] is not (∂ + λ/2)v")
    Gv = va._br_vec(g, x)
    if any(w for n, w in Gv.items() if n >= 2):
        raise ValueError("hypothesis violation: [G_λ v] has λ² or higher terms")
    c1 = _scalar_of(Gv.get(1, {}), "the λ coefficient of [G_λ v]")
    vv = va._br_vec(x, x)
    if any(w for n, w in vv.items() if n >= 1):
        raise ValueError("hypothesis violation: [v_λ v] depends on λ")
    c2 = _scalar_of(vv.get(0, {}), "[v_λ v]")
    G2 = va.element(_comb((g, 1), (va._dpow(x, 1), 1)))
    new = verify_superconformal(SconfCandidate("N1", G=G2))
    new.extra.update(c1=c1, c2=c2)
    expect_L = _comb((L, 1), (_scale(va._dpow(Gv.get(0, {}), 1), HALF), 1))
    new.report.add("L' = L + ½∂G_(0)v", va._coerce(new.L) == expect_L)
    if not isinstance(cert.charge, VElement) and not isinstance(new.charge, VElement):
        want_c = cert.charge + 6 * c1 - 3 * c2
        new.extra["closed_form"] = want_c
        new.report.add("charge = c + 6c₁ − 3c₂", new.charge == want_c,
                       got=render_scalar(new.charge), want=render_scalar(want_c))
    return G2, new


# -- N=1 SUSY affine and Kac–Todorov -------------------------------------------

def susy_affine_algebra(g, k):
    """V^k_{N=1}(g) as a presentation with K specialized to k."""
    if not to_scalar(k):
        raise ValueError("level k must be nonzero")
    return specialize_presentation(susy_affine_presentation(g), {"K": k})


def _bar_vec(va, g, x):
    return {((va.index(g.bar(a)), 0),): c for a, c in x.items()}


def kac_todorov(g, k, pres=None):
    """τ = (1/k)(Σ(−1)^{p(aⁱ)}(Dāⁱ)b̄ⁱ + (1/3k)Σ(−1)^{p(aʲ)}([aⁱ,aʲ]|aʳ)b̄ⁱb̄ʲb̄ʳ).

    ``b`` is the dual basis with (aⁱ|bʲ) = δ.  The sign on the cubic term is
    invisible for Lie algebras; for odd basis elements it is needed for τ to
    be superconformal (checked on osp(1|2)).
    """
    k = to_scalar(k)
    if not k:
        raise ValueError("level k must be nonzero")
    pres = pres or susy_affine_algebra(g, k)
    va = pres.algebra()
    dual = g.dual_basis()
    out = {}
    for a in g.basis:
        Da = {((va.index(a), 0),): 1}
        _add(out, va._nop_vec(Da, _bar_vec(va, g, dual[a])), (-1) ** g.parity[a])
    inv3k = _div(1, 3 * k)
    for a in g.basis:
        for b in g.basis:
            br = g.br(a, b)
            if not br:
                continue
            for r in g.basis:
                f = g.bil_vec(br, {r: 1})
                if not f:
                    continue
                tail = va._nop_vec(_bar_vec(va, g, dual[b]), _bar_vec(va, g, dual[r]))
                _add(out, va._nop_vec(_bar_vec(va, g, dual[a]), tail),
                     (-1) ** g.parity[b] * f * inv3k)
    return va.element(_scale(out, _div(1, k)))


def kac_todorov_charge(g, k):
    k = to_scalar(k)
    s = g.sdim()
    return _div((k - g.dual_coxeter()) * s, k) + Q(s, 2)


# -- charged free fermions and the BRST complex ---------------------------------

def charged_data(g, grading):
    """(positive, dual) for n = ⊕_{i>0} g(i) with (u^α|u_β) = δ."""
    grading = {a: to_scalar(i) for a, i in grading.items()}
    pos = [a for a in g.basis if grading.get(a, 0) > 0]
    neg = [a for a in g.basis if grading.get(a, 0) < 0]
    dual = {}
    for a in pos:
        partners = [b for b in neg if g.bil(b, a)]
        if len(partners) != 1 or g.bil(partners[0], a) != 1:
            raise ValueError(f"no normalized dual partner for {a} in n_-")
        dual[a] = partners[0]
    return pos, dual


def _phi(va, a, k=0):
    return {((va.index(f"phi_{a}"), k),): 1}


def _phib(va, a, k=0):
    return {((va.index(f"phib_{a}"), k),): 1}


def _Dphi(va, a):
    return {((va.index(f"Dphi_{a}"), 0),): 1}


def _Dphib(va, a):
    return {((va.index(f"Dphib_{a}"), 0),): 1}


def _tau_ch_vec(va, g, positive, m):
    out = {}
    for a in positive:
        if g.parity[a] == 0:
            _add(out, va._nop_vec(_phi(va, a, 1), _phib(va, a)))
        else:
            _add(out, va._nop_vec(_phi(va, a), _phib(va, a, 1)))
        _add(out, va._nop_vec(_Dphi(va, a), _Dphib(va, a)))
    shift = _shift_ch(va, positive, m)
    _add(out, va._dpow(shift, 1))
    return out


def _shift_ch(va, positive, m):
    v = {}
    for a in positive:
        c = to_scalar((m or {}).get(a, 0))
        if c:
            _add(v, va._nop_vec(_phi(va, a), _phib(va, a)), c)
    return v


def tau_charged(g, grading, m=None, pres=None):
    """τ^ch + ∂(Σ m_α φ_α φ^ᾱ) in F^ch; returns the vector."""
    positive, dual = charged_data(g, grading)
    pres = pres or charged_ff_presentation(g, positive, dual)
    va = pres.algebra()
    return va.element(_tau_ch_vec(va, g, positive, m))


def charged_charge(m, positive):
    return sum((6 * to_scalar((m or {}).get(a, 0)) + 3 for a in positive), 0)


def brst_charge(g, k, h, m, positive):
    k = to_scalar(k)
    s = g.sdim()
    hh = g.bil_vec(h, h)
    return (_div((3 * k - 2 * g.dual_coxeter()) * s, 2 * k) - 3 * k * hh
            + charged_charge(m, positive))


def brst_tau(g, grading, k, h, m=None):
    """τ^C_{h,m} = τ^g + ∂h̄ + τ^ch_m in V^k_{N=1}(g) ⊗ F^ch.

    ``grading``: {basis element: i}; ``h``: Cartan element {basis: coeff}
    with [h/2, a] = i·a.  Returns (vector, certificate); the certificate
    also carries the corollary brackets of τ with every generator.
    """
    k = to_scalar(k)
    grading = {a: to_scalar(grading.get(a, 0)) for a in g.basis}
    for a in g.basis:
        if g.br_vec({x: HALF * c for x, c in h.items()}, {a: 1}) != \
                ({a: grading[a]} if grading[a] else {}):
            raise ValueError(f"ad(h/2) does not reproduce the grading on {a}")
    positive, dual = charged_data(g, grading)
    aff = susy_affine_algebra(g, k)
    ch = charged_ff_presentation(g, positive, dual)
    pres = direct_sum(aff, ch, name=f"brst({g.name})")
    va = pres.algebra()
    tau = va._coerce(kac_todorov(g, k, pres))
    _add(tau, va._dpow(_bar_vec(va, g, h), 1))
    _add(tau, _tau_ch_vec(va, g, positive, m))
    G = va.element(tau)
    cert = verify_superconformal(SconfCandidate("N1", G=G))
    want = brst_charge(g, k, h, m, positive)
    cert.extra["closed_form"] = want
    cert.report.add("charge = closed form", cert.charge == want,
                    got=cert.charge_str(), want=render_scalar(want))
    S = SusyStructure.from_presentation(pres, ["D"])
    D = S.D[0]
    DG = zero_mode(G)
    for i, n in enumerate(va.names):
        ok = D.raw.get(i, {}) == DG.raw.get(i, {})
        cert.report.add(f"τ_(0) = D on {n}", ok)
    _check_corollary(S, tau, g, grading, k, h, m, positive, cert.report)
    return G, cert


def _check_corollary(S, tau, g, grading, k, h, m, positive, rep):
    va = S.va
    D = S.D[0]

    def expected(x, lam_coef, lc_scalar=0):
        out = {}
        for key, vec in (
            (((), 0, 0), _scale(va._dpow(x, 1), 2)),
            (((), 1, 0), _scale(x, lam_coef)),
            (((1,), 0, 0), va._der_vec(D, x)),
            (((1,), 1, 0), {(): lc_scalar} if lc_scalar else {}),
        ):
            if vec:
                out[key] = vec
        return out

    for a in g.basis:
        i = grading[a]
        x = {((va.index(g.bar(a)), 0),): 1}
        want = expected(x, 1 - 2 * i, -k * g.bil_vec(h, {a: 1}))
        got = _raw_Lambda(S, tau, x)
        ok = got == want
        rep.add(f"[τ_Λ {g.bar(a)}]", ok, **({} if ok else {
            "lhs": render_glv(va, got), "rhs": render_glv(va, want)}))
    for a in positive:
        p = g.parity[a]
        ma = to_scalar((m or {}).get(a, 0))
        for x, sgn, nm in ((_phi(va, a), (-1) ** (p + 1), f"phi_{a}"),
                           (_phib(va, a), (-1) ** p, f"phib_{a}")):
            want = expected(x, HALF * (sgn * (2 * ma + 1) + 1))
            got = _raw_Lambda(S, tau, x)
            ok = got == want
            rep.add(f"[τ_Λ {nm}]", ok, **({} if ok else {
                "lhs": render_glv(va, got), "rhs": render_glv(va, want)}))


# -- superconformal current algebras -------------------------------------------

def _lp(pres, *terms):
    """Raw λ-polynomial from (λ-power, coeff, name, ∂-order) terms."""
    out = {}
    for n, c, name, k in terms:
        c = to_scalar(c)
        if not c:
            continue
        w = ((pres.index(name), k),)
        slot = out.setdefault(n, {})
        _add(slot, {w: c})
        if not slot:
            del out[n]
    return out


def _deltas(g, omega):
    omega = {a: to_scalar(omega.get(a, 0)) for a in g.basis}
    delta = {a: 1 - omega[a] for a in g.basis}
    for a in g.basis:
        for b in g.basis:
            for c in g.br(a, b):
                if delta[c] != delta[a] + delta[b] - 1:
                    raise ValueError(f"grading inconsistency: Δ of {c} is not Δ_{a} + Δ_{b} − 1")
    return delta


def current_superconformal(g, omega=None, mode="N1", c=None):
    """SVir ⊕ Cur g_{N=1} (mode N1) or SVir_{N=2} ⊕ Cur g_{N=2} (mode N2).

    ``omega``: {basis: ω}, Δ_a = 1 − ω_a.  Returns (presentation,
    candidate, SusyStructure); in N2 mode the structure is
    D¹ = (G⁺+G⁻)_(0), D² = −i(G⁺−G⁻)_(0).
    """
    mode = mode.upper()
    delta = _deltas(g, omega or {})
    base = cur_presentation(g, central=False)
    cur1, _ = extend_N1(base)
    B = g.bar
    if mode == "N1":
        sv = LcaPresentation.from_text(BUILTINS["svir"])
        pres = direct_sum(sv, cur1, name=f"svir+cur({g.name})")
        for a in g.basis:
            d = delta[a]
            ia, ib = pres.index(a), pres.index(B(a))
            iL, iG = pres.index("L"), pres.index("G")
            pres.table[(iL, ia)] = _lp(pres, (0, 1, a, 1), (1, d, a, 0))
            pres.table[(iL, ib)] = _lp(pres, (0, 1, B(a), 1), (1, d - HALF, B(a), 0))
            pres.table[(iG, ia)] = _lp(pres, (0, 1, B(a), 1), (1, 2 * d - 1, B(a), 0))
            pres.table[(iG, ib)] = _lp(pres, (0, 1, a, 0))
        if c is not None:
            pres = specialize_presentation(pres, {"C": c})
        va = pres.algebra()
        cand = SconfCandidate("N1", G=va.gen("G"))
        return pres, cand, SusyStructure.from_presentation(pres, ["D"])
    if mode != "N2":
        raise ValueError("mode must be N1 or N2")
    cur2, _ = extend_N2(cur1)
    sv = LcaPresentation.from_text(BUILTINS["svir_n2"])
    pres = direct_sum(sv, cur2, name=f"svir_n2+cur({g.name})")
    pres.derivations = {}
    pres.sef = {}
    C_ = lambda a: a + "_circ"
    BC = lambda a: B(a) + "_circ"
    for a in g.basis:
        d = delta[a]
        A, Ab, Ac, Abc = a, B(a), C_(a), BC(a)
        # [G⁺ + G⁻ _λ x] and [G⁺ − G⁻ _λ x]
        S = {
            A: [(0, 1, Ab, 1), (1, 2 * d - 1, Ab, 0)],
            Ab: [(0, 1, A, 0)],
            Ac: [(0, -1, Abc, 1), (1, -(2 * d - 2), Abc, 0)],
            Abc: [(0, -1, Ac, 0)],
        }
        T = {
            A: [(0, I, Ac, 1), (1, I * (2 * d - 1), Ac, 0)],
            Ac: [(0, I, A, 0)],
            Ab: [(0, I, Abc, 1), (1, I * (2 * d - 2), Abc, 0)],
            Abc: [(0, I, Ab, 0)],
        }
        Jt = {
            A: [(1, I * (2 * d - 2), Abc, 0)],
            Ab: [(0, I, Ac, 0)],
            Ac: [(0, -I, Ab, 0)],
            Abc: [],
        }
        Lt = {
            A: [(0, 1, A, 1), (1, d, A, 0)],
            Ab: [(0, 1, Ab, 1), (1, d - HALF, Ab, 0)],
            Ac: [(0, 1, Ac, 1), (1, d - HALF, Ac, 0)],
            Abc: [(0, 1, Abc, 1), (1, d - 1, Abc, 0)],
        }
        for x in (A, Ab, Ac, Abc):
            ix = pres.index(x)
            sx = [(n, cf * HALF, nm, k) for n, cf, nm, k in S[x]]
            tx = [(n, cf * HALF, nm, k) for n, cf, nm, k in T[x]]
            pres.table[(pres.index("Gp"), ix)] = _lp(pres, *_merge(sx, tx, 1))
            pres.table[(pres.index("Gm"), ix)] = _lp(pres, *_merge(sx, tx, -1))
            pres.table[(pres.index("J"), ix)] = _lp(pres, *Jt[x])
            pres.table[(pres.index("L"), ix)] = _lp(pres, *Lt[x])
        for key in list(pres.table):
            if not pres.table[key]:
                del pres.table[key]
    if c is not None:
        pres = specialize_presentation(pres, {"C": c})
    va = pres.algebra()
    Gp, Gm = va.gen("Gp"), va.gen("Gm")
    D1 = zero_mode(Gp + Gm, "D1")
    D2 = zero_mode((Gp - Gm) * (-I), "D2")
    pres.derivations = {"D1": (1, {i: v.terms for i, v in _raw_imgs(D1).items()}),
                        "D2": (1, {i: v.terms for i, v in _raw_imgs(D2).items()})}
    pres._ders = {"D1": D1, "D2": D2}
    cand = SconfCandidate("N2", Gp=Gp, Gm=Gm)
    return pres, cand, SusyStructure(va, [D1, D2])


def _merge(s, t, sign):
    out = list(s)
    for n, c, nm, k in t:
        out.append((n, sign * c, nm, k))
    return out


def _raw_imgs(D):
    return {i: D.va.element(v) for i, v in D.raw.items()}


# -- SUSY structures from superconformal vectors -------------------------------

def derivations_from_sconf(cand, mu=1, nu=1):
    """Odd derivations induced by an N=2 (or N=4) superconformal family.

    N2: D¹ = (μG⁺ + μ⁻¹G⁻)_(0), D² = i(μG⁺ − μ⁻¹G⁻)_(0), after checking
    (G^±_(0)G^±)_(0) = 0 on the generators.  An N=4 family is passed as
    ``("N4", {"Gp", "Gbm", "Gm", "Gbp"})`` through a dict candidate.
    """
    mu, nu = to_scalar(mu), to_scalar(nu)
    if not mu or not nu:
        raise ValueError("μ and ν must be invertible")
    if isinstance(cand, dict):
        vecs, mode = cand, "N4"
    else:
        vecs, mode = cand.vectors, cand.mode
    if mode == "N3":
        raise ValueError("N3 needs √2, which is outside the exact scalar field")
    if mode == "N1":
        G = vecs["G"]
        return SusyStructure(G.va, [zero_mode(G, "D")])
    pairs = [("Gp", "Gm", mu)] if mode == "N2" else [("Gp", "Gbm", mu), ("Gm", "Gbp", nu)]
    ders = []
    for p, q, s in pairs:
        P, M = vecs[p], vecs[q]
        va = P.va
        for X in (P, M):
            sq = va.element(_nth(va, va._coerce(X), 0, va._coerce(X)))
            z = zero_mode(sq)
            if z.raw:
                raise ValueError(f"precondition violated: (G_(0)G)_(0) ≠ 0 for {p if X is P else q}")
        n = len(ders)
        ders.append(zero_mode(P * s + M * _div(1, s), f"D{n + 1}"))
        ders.append(zero_mode((P * s - M * _div(1, s)) * I, f"D{n + 2}"))
    return SusyStructure(ders[0].va, ders)
