"""Presentations of Lie conformal algebras and the named examples.

A presentation lists generators (name, parity, central flag) and a bracket
table on generator pairs.  Table values are raw λ-polynomials whose
coefficients are combinations of PBW words (``{n: {word: coeff}}``); for a
Lie conformal algebra the words have length at most one.  A pair missing
from the table is recovered from the opposite orientation by
skew-symmetry, or is zero when both are missing.
"""

from .coeff import Q as _q
from typing import NamedTuple

from .coeff import LambdaPoly, render_scalar, to_scalar
from .parse import Evaluator, ParseError, parse_algebra
from .report import Report
from . import linalg

__all__ = [
    "GeneratorDecl", "LcaPresentation", "LieSuperalgebraData",
    "bracket_basic", "check_lca_axioms", "validate_lie_superalgebra",
    "build_named", "specialize_presentation", "sl2", "abelian",
    "n1_presentation", "BUILTINS",
]


class GeneratorDecl(NamedTuple):
    name: str
    parity: int = 0
    central: bool = False


class LcaPresentation:
    """Generators, bracket table and optional attached data.

    ``derivations`` maps a derivation name to ``(parity, {gen index: vec})``;
    ``sef`` maps a derivation name to the designated generator names;
    ``lets`` maps names to raw vecs.
    """

    def __init__(self, gens, table=None, derivations=None, sef=None, lets=None,
                 gradings=None, name=None):
        self.gens = tuple(GeneratorDecl(*g) for g in gens)
        self.names = [g.name for g in self.gens]
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.parity = [g.parity for g in self.gens]
        self.central = [g.central for g in self.gens]
        self._index = {n: i for i, n in enumerate(self.names)}
        self.table = {k: v for k, v in (table or {}).items() if v}
        self.derivations = dict(derivations or {})
        self.sef = dict(sef or {})
        self.lets = dict(lets or {})
        self.gradings = dict(gradings or {})
        self.name = name
        self._va = None

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"undeclared generator {name!r}") from None

    def algebra(self):
        """The universal enveloping vertex algebra (cached)."""
        if self._va is None:
            from .ueva import VertexAlgebra
            self._va = VertexAlgebra(self)
        return self._va

    def derivation(self, name):
        from .ueva import Derivation
        va = self.algebra()
        cache = self.__dict__.setdefault("_ders", {})
        if name not in cache:
            parity, imgs = self.derivations[name]
            cache[name] = Derivation(va, {i: va.element(v) for i, v in imgs.items()},
                                     parity, name)
        return cache[name]

    def derivation_names(self):
        return list(self.derivations)

    def let(self, name):
        return self.algebra().element(self.lets[name])

    def params(self):
        used = set()
        def scan(vec):
            for c in vec.values():
                if hasattr(c, "free_params"):
                    used.update(c.free_params())
        for lp in self.table.values():
            for vec in lp.values():
                scan(vec)
        for _, imgs in self.derivations.values():
            for vec in imgs.values():
                scan(vec)
        for vec in self.lets.values():
            scan(vec)
        return sorted(used)

    def explicit_bracket(self, a, b):
        return self.table.get((self.index(a), self.index(b)))

    # -- text format ------------------------------------------------------

    @classmethod
    def from_text(cls, text, subs=None):
        return presentation_from_file(parse_algebra(text), subs)

    def render(self):
        """Text in the definition language; parses back to the same data."""
        from .ueva import render_lpoly, render_vec
        out = []
        ps = self.params()
        if ps:
            out.append("param " + ", ".join(ps) + ";")
        for g in self.gens:
            if g.central:
                out.append(f"central {'odd ' if g.parity else ''}{g.name};")
            else:
                out.append(f"{'odd' if g.parity else 'even'} {g.name};")
        for (i, j) in sorted(self.table):
            out.append(f"bracket {self.names[i]} {self.names[j]} = "
                       f"{render_lpoly(self.names, self.table[(i, j)])};")
        for D, (parity, imgs) in self.derivations.items():
            if parity != 1:
                out.append(f"derivation {D} even;")
            for i in sorted(imgs):
                out.append(f"derive {D} {self.names[i]} = {render_vec(self.names, imgs[i])};")
        for D, names in self.sef.items():
            out.append(f"sef {D} " + ", ".join(names) + ";")
        for n, vec in self.lets.items():
            out.append(f"let {n} = {render_vec(self.names, vec)};")
        for n, v in self.gradings.items():
            out.append(f"grading {n} = {render_scalar(v)};")
        return "\n".join(out) + "\n"

    def __eq__(self, other):
        return (isinstance(other, LcaPresentation) and self.gens == other.gens
                and self.table == other.table and self.derivations == other.derivations
                and self.sef == other.sef and self.lets == other.lets
                and self.gradings == other.gradings)

    def __repr__(self):
        return f"<LcaPresentation {self.name or ''} gens={self.names}>"


class _LinearCtx:
    """Just enough of an algebra to evaluate linear expressions."""

    def __init__(self, names, parity, central):
        self.names, self.parity, self.central = names, parity, central


def presentation_from_file(af, subs=None):
    subs = {k: to_scalar(v) for k, v in (subs or {}).items()}
    names = [g[0] for g in af.gens]
    parity = [g[1] for g in af.gens]
    central = [g[2] for g in af.gens]
    ev = Evaluator(_LinearCtx(names, parity, central), subs=subs, linear=True)
    index = {n: i for i, n in enumerate(names)}
    table = {}
    for a, b, tree in af.brackets:
        for tok in (a, b):
            if tok[1] not in index:
                raise ParseError(f"undeclared generator {tok[1]!r}", tok[2], tok[3])
        i, j = index[a[1]], index[b[1]]
        if (i, j) in table:
            raise ParseError(f"duplicate bracket for ({a[1]}, {b[1]})", a[2], a[3])
        val = ev.lambda_value(tree)
        want = (parity[i] + parity[j]) % 2
        for vec in val.values():
            for w in vec:
                if sum(parity[g] for g, _ in w) % 2 != want:
                    raise ParseError(f"parity mismatch in bracket ({a[1]}, {b[1]})", a[2], a[3])
        table[(i, j)] = {n: v for n, v in val.items() if v}
    pres = LcaPresentation(af.gens, table)
    va = pres.algebra()
    ev2 = Evaluator(va, subs=subs)
    for name, tree in af.lets:
        val = ev2.element(tree)
        pres.lets[name] = val
        ev2.lets[name] = {(0, 0, ()): val}
    for D, items in af.derives.items():
        imgs = {}
        par = af.derivation_parity.get(D, 1)
        for tok, tree in items:
            if tok[1] not in index:
                raise ParseError(f"undeclared generator {tok[1]!r}", tok[2], tok[3])
            i = index[tok[1]]
            vec = ev2.element(tree)
            for w in vec:
                if (va.wpar(w) + parity[i] + par) % 2:
                    raise ParseError(f"parity mismatch in derive {D} {tok[1]}", tok[2], tok[3])
            if vec:
                imgs[i] = vec
        pres.derivations[D] = (par, imgs)
    for D in af.derivation_parity:
        pres.derivations.setdefault(D, (af.derivation_parity[D], {}))
    for D, toks in af.sef.items():
        for tok in toks:
            if tok[1] not in index:
                raise ParseError(f"undeclared generator {tok[1]!r}", tok[2], tok[3])
        pres.sef[D] = [tok[1] for tok in toks]
    for tok, tree in af.gradings:
        g = ev2.element(tree)
        if set(g) - {()}:
            raise ParseError("grading must be a scalar", tok[2], tok[3])
        pres.gradings[tok[1]] = g.get((), 0)
    return pres


def specialize_presentation(pres, assignments):
    """Replace central generators by scalars."""
    assign = {}
    for name, v in assignments.items():
        i = pres.index(name)
        if not pres.central[i]:
            raise ValueError(f"{name!r} is not central")
        assign[i] = to_scalar(v)
    keep = [i for i in range(len(pres.gens)) if i not in assign]
    newidx = {i: n for n, i in enumerate(keep)}

    def conv(vec):
        out = {}
        for w, c in vec.items():
            coef = c
            word = []
            for g, k in w:
                if g in assign:
                    coef = coef * assign[g]
                else:
                    word.append((newidx[g], k))
            if coef:
                key = tuple(word)
                x = out.get(key, 0) + coef
                if x:
                    out[key] = x
                else:
                    out.pop(key, None)
        return out

    table = {}
    for (i, j), lp in pres.table.items():
        if i in assign or j in assign:
            continue
        new = {n: conv(v) for n, v in lp.items()}
        table[(newidx[i], newidx[j])] = {n: v for n, v in new.items() if v}
    ders = {}
    for D, (par, imgs) in pres.derivations.items():
        ders[D] = (par, {newidx[i]: conv(v) for i, v in imgs.items() if i in newidx and conv(v)})
    lets = {n: conv(v) for n, v in pres.lets.items()}
    sef = {D: [n for n in ns if pres.index(n) in newidx] for D, ns in pres.sef.items()}
    return LcaPresentation([pres.gens[i] for i in keep], table, ders, sef, lets,
                           pres.gradings, pres.name)


# -- checks -----------------------------------------------------------------

def _letter(pres, x):
    if isinstance(x, str):
        return (pres.index(x), 0)
    name, k = x
    return (pres.index(name), k)


def bracket_basic(x, y, pres):
    """[∂^k a _λ ∂^l b] for generators a, b; x and y are names or (name, k)."""
    va = pres.algebra()
    a, b = _letter(pres, x), _letter(pres, y)
    if pres.central[a[0]] and a[1] or pres.central[b[0]] and b[1]:
        return LambdaPoly()
    raw = va._basic(a, b)
    return LambdaPoly({n: va.element(v) for n, v in raw.items()})


def check_lca_axioms(pres, jacobi=True):
    """Skew-symmetry on all generator pairs and Jacobi on all triples."""
    from .ueva import render_lg, render_lpoly
    va = pres.algebra()
    rep = Report("lca axioms")
    n = len(pres.gens)
    for (i, j), lp in pres.table.items():
        want = (pres.parity[i] + pres.parity[j]) % 2
        ok = all(va.wpar(w) == want for vec in lp.values() for w in vec)
        rep.add(f"parity ({pres.names[i]}, {pres.names[j]})", ok)
        if pres.central[i] or pres.central[j]:
            rep.add(f"central ({pres.names[i]}, {pres.names[j]})", False,
                    value=render_lpoly(pres.names, lp))
    for i in range(n):
        for j in range(i, n):
            if pres.central[i] or pres.central[j]:
                continue
            lhs = va._gen_bracket(j, i)
            s = -1 if (pres.parity[i] * pres.parity[j]) % 2 == 0 else 1
            rhs = va._skew(va._gen_bracket(i, j), s)
            ok = lhs == rhs
            rep.add(f"skew ({pres.names[j]}, {pres.names[i]})", ok,
                    **({} if ok else {"lhs": render_lpoly(pres.names, lhs),
                                      "rhs": render_lpoly(pres.names, rhs)}))
    if jacobi:
        live = [i for i in range(n) if not pres.central[i]]
        for i in live:
            for j in live:
                for k in live:
                    x, y, z = ({((i, 0),): 1}, {((j, 0),): 1}, {((k, 0),): 1})
                    lhs, rhs = va.jacobi_sides(x, y, z)
                    ok = lhs == rhs
                    names = (pres.names[i], pres.names[j], pres.names[k])
                    rep.add(f"jacobi {names}", ok,
                            **({} if ok else {"lhs": render_lg(pres.names, lhs),
                                              "rhs": render_lg(pres.names, rhs)}))
    return rep


# -- Lie superalgebras ------------------------------------------------------

class LieSuperalgebraData:
    """A finite-dimensional Lie superalgebra with an even bilinear form.

    ``brackets`` maps (a, b) to {c: coeff}; pairs not given are taken from
    the opposite orientation by super skew-symmetry, or are zero.  ``form``
    maps (a, b) to a scalar and is read the same way using supersymmetry.
    """

    def __init__(self, basis, brackets, form, grading=None, name=None):
        self.basis = [b for b, _ in basis]
        self.parity = {b: p for b, p in basis}
        self.brackets = {k: {c: to_scalar(v) for c, v in d.items() if v}
                         for k, d in brackets.items()}
        self.form = {k: to_scalar(v) for k, v in form.items()}
        self.grading = {k: to_scalar(v) for k, v in (grading or {}).items()}
        self.name = name

    def br(self, a, b):
        if (a, b) in self.brackets:
            return dict(self.brackets[(a, b)])
        if (b, a) in self.brackets:
            s = 1 if self.parity[a] * self.parity[b] else -1
            return {c: s * v for c, v in self.brackets[(b, a)].items()}
        return {}

    def br_vec(self, x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.br(a, b).items():
                    t = out.get(c, 0) + ca * cb * v
                    if t:
                        out[c] = t
                    else:
                        out.pop(c, None)
        return out

    def bil(self, a, b):
        if (a, b) in self.form:
            return self.form[(a, b)]
        if (b, a) in self.form:
            s = -1 if self.parity[a] * self.parity[b] else 1
            return s * self.form[(b, a)]
        return 0

    def bil_vec(self, x, y):
        return sum((ca * cb * self.bil(a, b) for a, ca in x.items() for b, cb in y.items()), 0)

    def gram(self):
        return [[self.bil(a, b) for b in self.basis] for a in self.basis]

    def dual_basis(self):
        """{a: b^a} with (a | b^c) = δ_{a,c}, each b^a as {basis: coeff}."""
        inv = linalg.inverse(self.gram())
        n = len(self.basis)
        # (a_i | Σ_k M_jk a_k) = δ_ij  =>  M^T = G^{-1}
        return {self.basis[j]: {self.basis[k]: inv[k][j] for k in range(n) if inv[k][j]}
                for j in range(n)}

    def sdim(self):
        return sum(1 if self.parity[b] == 0 else -1 for b in self.basis)

    def casimir(self, x):
        """Σ_i (−1)^{p(a_i)} [a_i, [b^i, x]] for the dual bases."""
        dual = self.dual_basis()
        out = {}
        for a in self.basis:
            inner = self.br_vec(dual[a], {x: 1})
            s = (-1) ** self.parity[a]
            for c, v in self.br_vec({a: 1}, inner).items():
                t = out.get(c, 0) + s * v
                if t:
                    out[c] = t
                else:
                    out.pop(c, None)
        return out

    def dual_coxeter(self):
        """h^∨ from the Casimir eigenvalue 2h^∨ on the adjoint representation."""
        vals = set()
        for x in self.basis:
            cas = self.casimir(x)
            if set(cas) - {x}:
                raise ValueError("Casimir does not act by a scalar on the adjoint")
            vals.add(cas.get(x, 0))
        if len(vals) != 1:
            raise ValueError("Casimir does not act by a scalar on the adjoint")
        return vals.pop() * _q(1, 2)

    def bar(self, a):
        return a + "_bar"


def validate_lie_superalgebra(g):
    rep = Report(f"lie superalgebra {g.name or ''}".strip())
    B = g.basis
    for (a, b), d in g.brackets.items():
        for c in d:
            ok = (g.parity[a] + g.parity[b] - g.parity[c]) % 2 == 0
            rep.add(f"bracket parity [{a},{b}]", ok)
        if (b, a) in g.brackets and a != b:
            s = 1 if g.parity[a] * g.parity[b] else -1
            other = {c: s * v for c, v in g.brackets[(b, a)].items()}
            rep.add(f"skew [{a},{b}]", other == d)
        if a == b and not g.parity[a]:
            rep.add(f"skew [{a},{a}]", not d)
    for (a, b), v in g.form.items():
        if v and (g.parity[a] + g.parity[b]) % 2:
            rep.add(f"form even ({a}|{b})", False)
        if (b, a) in g.form:
            s = -1 if g.parity[a] * g.parity[b] else 1
            rep.add(f"form supersymmetric ({a}|{b})", g.form[(b, a)] == s * v)
    for a in B:
        for b in B:
            for c in B:
                pa, pb = g.parity[a], g.parity[b]
                lhs = g.br_vec({a: 1}, g.br_vec({b: 1}, {c: 1}))
                r1 = g.br_vec(g.br_vec({a: 1}, {b: 1}), {c: 1})
                r2 = g.br_vec({b: 1}, g.br_vec({a: 1}, {c: 1}))
                s = -1 if pa * pb else 1
                rhs = dict(r1)
                for k, v in r2.items():
                    t = rhs.get(k, 0) + s * v
                    if t:
                        rhs[k] = t
                    else:
                        rhs.pop(k, None)
                rep.add(f"jacobi ({a},{b},{c})", lhs == rhs)
                inv_l = g.bil_vec(g.br_vec({a: 1}, {b: 1}), {c: 1})
                inv_r = g.bil_vec({a: 1}, g.br_vec({b: 1}, {c: 1}))
                rep.add(f"invariance ({a},{b},{c})", inv_l == inv_r)
    return rep


def sl2():
    """sl2 with (e|f) = 1, (h|h) = 2."""
    return LieSuperalgebraData(
        [("e", 0), ("f", 0), ("h", 0)],
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
        {("e", "f"): 1, ("h", "h"): 2},
        name="sl2")


def abelian(n=1, parity=0):
    names = [f"a{i + 1}" if n > 1 else "a" for i in range(n)]
    return LieSuperalgebraData([(a, parity) for a in names], {},
                               {(a, a): 1 for a in names}, name="abelian")


def osp12():
    """osp(1|2): even e, f, h and odd x, y.  (e|f) = 1, (h|h) = 2, (x|y) = 2."""
    return LieSuperalgebraData(
        [("e", 0), ("f", 0), ("h", 0), ("x", 1), ("y", 1)],
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2},
         ("h", "x"): {"x": 1}, ("h", "y"): {"y": -1},
         ("x", "x"): {"e": 2}, ("y", "y"): {"f": -2}, ("x", "y"): {"h": 1},
         ("e", "y"): {"x": -1}, ("f", "x"): {"y": -1}},
        {("e", "f"): 1, ("h", "h"): 2, ("x", "y"): 2},
        name="osp(1|2)")


# -- builders ---------------------------------------------------------------

VIR = """
even L;
central C;
bracket L L = (d + 2*l)*L + C/12*l^3;
"""

SVIR = """
even L;
odd G;
central C;
bracket L L = (d + 2*l)*L + C/12*l^3;
bracket L G = (d + 3/2*l)*G;
bracket G G = 2*L + C/3*l^2;
derive D G = 2*L;
derive D L = 1/2*d*G;
sef D G;
"""

SVIR_N2 = """
even L, J;
odd Gp, Gm;
central C;
bracket L L = (d + 2*l)*L + C/12*l^3;
bracket L Gp = (d + 3/2*l)*Gp;
bracket L Gm = (d + 3/2*l)*Gm;
bracket Gp Gp = 0;
bracket Gm Gm = 0;
bracket Gp Gm = L + (1/2*d + l)*J + C/6*l^2;
bracket L J = (d + l)*J;
bracket Gp J = -Gp;
bracket Gm J = Gm;
bracket J J = C/3*l;
"""

SVIR_N3 = """
even L, Jp, Jm, J0;
odd Gp, Gm, G0, Phi;
central C;
bracket L L = (d + 2*l)*L + C/12*l^3;
bracket L Jp = (d + l)*Jp;
bracket L Jm = (d + l)*Jm;
bracket L J0 = (d + l)*J0;
bracket L Gp = (d + 3/2*l)*Gp;
bracket L Gm = (d + 3/2*l)*Gm;
bracket L G0 = (d + 3/2*l)*G0;
bracket L Phi = (d + 1/2*l)*Phi;
bracket Gp Gm = L + (1/2*d + l)*J0 + C/6*l^2;
bracket Gp G0 = (1/2*d + l)*Jp;
bracket Gm G0 = -(1/2*d + l)*Jm;
bracket G0 G0 = L + C/6*l^2;
bracket Jp Jm = J0 + C/3*l;
bracket Jp J0 = -Jp;
bracket Jm J0 = Jm;
bracket J0 J0 = C/3*l;
bracket Gp Jm = -G0 + (d + l)*Phi;
bracket Gm Jp = G0 + (d + l)*Phi;
bracket Gp J0 = -Gp;
bracket Gm J0 = Gm;
bracket G0 Jp = -Gp;
bracket G0 Jm = Gm;
bracket G0 J0 = -(d + l)*Phi;
bracket Gp Phi = 1/2*Jp;
bracket Gm Phi = 1/2*Jm;
bracket G0 Phi = -1/2*J0;
bracket Phi Phi = C/6;
"""

BETAGAMMA = """
even beta, gamma;
central C;
bracket beta gamma = C;
bracket gamma beta = -C;
"""

BC_BETAGAMMA = """
even beta, gamma;
odd b, c;
central C;
bracket beta gamma = C;
bracket gamma beta = -C;
bracket b c = C;
bracket c b = C;
derive D b = beta;
derive D c = d*gamma;
derive D beta = d*b;
derive D gamma = c;
sef D b, gamma;
"""

# the odd generator d of the extended system is spelled dd (d is ∂)
EXT_BC_BETAGAMMA = """
even alpha, beta, gamma, delta;
odd a, b, c, dd;
central C;
bracket beta gamma = C;
bracket gamma beta = -C;
bracket b c = C;
bracket c b = C;
bracket delta alpha = -C;
bracket alpha delta = C;
bracket dd a = -C;
bracket a dd = -C;
derive D1 b = beta;
derive D1 dd = delta;
derive D1 alpha = a;
derive D1 gamma = c;
derive D1 beta = d*b;
derive D1 delta = d*dd;
derive D1 a = d*alpha;
derive D1 c = d*gamma;
derive D2 alpha = b;
derive D2 gamma = dd;
derive D2 a = -beta;
derive D2 c = -delta;
derive D2 b = d*alpha;
derive D2 dd = d*gamma;
derive D2 beta = -d*a;
derive D2 delta = -d*c;
sef D1 b, dd, alpha, gamma;
sef D2 a, c, alpha, gamma;
"""

BUILTINS = {
    "vir": VIR, "svir": SVIR, "svir_n2": SVIR_N2, "svir_n3": SVIR_N3,
    "betagamma": BETAGAMMA, "bc_betagamma": BC_BETAGAMMA,
    "ext_bc_betagamma": EXT_BC_BETAGAMMA,
}


def cur_presentation(g, central=True):
    """Cur g: [a_λ b] = [a, b] + Kλ(a|b)."""
    gens = [(a, g.parity[a], False) for a in g.basis]
    if central:
        gens.append(("K", 0, True))
    idx = {a: i for i, a in enumerate(g.basis)}
    K = len(g.basis)
    table = {}
    for a in g.basis:
        for b in g.basis:
            val = {}
            br = {((idx[c], 0),): v for c, v in g.br(a, b).items()}
            if br:
                val[0] = br
            f = g.bil(a, b)
            if f and central:
                val[1] = {((K, 0),): f}
            if val:
                table[(idx[a], idx[b])] = val
    return LcaPresentation(gens, table, name=f"cur({g.name})")


def n1_presentation(superfields, lam_table, central=(), name=None, dname="D"):
    """Vertex-algebra presentation of an N=1 SUSY Lie conformal algebra.

    ``superfields``: list of (name, parity, Dname).  ``lam_table`` maps a
    pair of superfield names to (A, B) with [x_Λ y] = A + χB, where A and B
    are raw λ-polynomials over the letters of the returned presentation
    (build them with the ``letter`` helper below).  Central generators are
    killed by D.  The components are

        [x_λ y] = B,  [Dx_λ y] = A,  [x_λ Dy] = (−1)^{p(x)}(DB − A),
        [Dx_λ Dy] = (−1)^{p(x)+1}(DA + λB).
    """
    gens = []
    for n, p, Dn in superfields:
        gens.append((n, p, False))
    for n, p, Dn in superfields:
        gens.append((Dn, 1 - p, False))
    for c in central:
        gens.append((c, 0, True))
    idx = {g[0]: i for i, g in enumerate(gens)}
    nsf = len(superfields)
    dmap = {}
    for i, (n, p, Dn) in enumerate(superfields):
        dmap[i] = ((nsf + i, 0), 1)
        dmap[nsf + i] = ((i, 1), 1)

    def Dvec(vec):
        out = {}
        for w, c in vec.items():
            if not w:
                continue
            (g, k), = w
            if g not in dmap:
                continue
            (h, k2), s = dmap[g]
            key = ((h, k + k2),)
            out[key] = out.get(key, 0) + s * c
        return {k: v for k, v in out.items() if v}

    def Dlp(lp):
        return {n: Dvec(v) for n, v in lp.items() if Dvec(v)}

    def add(acc, lp, s=1, shift=0):
        for n, v in lp.items():
            slot = acc.setdefault(n + shift, {})
            for w, c in v.items():
                t = slot.get(w, 0) + s * c
                if t:
                    slot[w] = t
                else:
                    slot.pop(w, None)
            if not slot:
                del acc[n + shift]
        return acc

    table = {}
    parity = {n: p for n, p, _ in superfields}
    dname_of = {n: Dn for n, _, Dn in superfields}
    for (x, y), (A, B) in lam_table.items():
        px = parity[x]
        ix, iy = idx[x], idx[y]
        jx, jy = idx[dname_of[x]], idx[dname_of[y]]
        table[(ix, iy)] = dict(B)
        table[(jx, iy)] = dict(A)
        s = (-1) ** px
        table[(ix, jy)] = add(add({}, Dlp(B), s), A, -s)
        table[(jx, jy)] = add(add({}, Dlp(A), -s), B, -s, shift=1)
    ders = {dname: (1, {i: {((h, k),): s} for i, ((h, k), s) in dmap.items()})}
    pres = LcaPresentation(gens, table, ders, {dname: [n for n, _, _ in superfields]},
                           name=name)
    return pres


def direct_sum(*parts, name=None):
    """Disjoint union of presentations (derivations of equal name merge)."""
    gens, table, ders, sef = [], {}, {}, {}
    for p in parts:
        off = len(gens)
        shift = lambda vec: {tuple((g + off, k) for g, k in w): c for w, c in vec.items()}
        gens.extend(p.gens)
        for (i, j), lp in p.table.items():
            table[(i + off, j + off)] = {n: shift(v) for n, v in lp.items()}
        for D, (par, imgs) in p.derivations.items():
            old = ders.setdefault(D, (par, {}))
            if old[0] != par:
                raise ValueError(f"derivation {D} has mixed parity")
            old[1].update({i + off: shift(v) for i, v in imgs.items()})
        for D, names in p.sef.items():
            sef.setdefault(D, []).extend(names)
    return LcaPresentation(gens, table, ders, sef, name=name)


def letter(pres_names, name, k=0):
    return ((pres_names.index(name), k),)


def susy_affine_presentation(g, central=True):
    """V_{N=1}(g) as a vertex algebra: generators a (= Dā) and ā.

    [ā_Λ b̄] = (−1)^{p(a)}(\\overline{[a,b]} + Kχ(a|b)).
    """
    sf = [(g.bar(a), 1 - g.parity[a], a) for a in g.basis]
    names = [n for n, _, _ in sf] + [a for a in g.basis] + (["K"] if central else [])
    table = {}
    for a in g.basis:
        for b in g.basis:
            s = (-1) ** g.parity[a]
            A = {}
            br = {((names.index(g.bar(c)), 0),): s * v for c, v in g.br(a, b).items()}
            if br:
                A[0] = br
            B = {}
            f = g.bil(a, b)
            if f and central:
                B[0] = {((names.index("K"), 0),): s * f}
            if A or B:
                table[(g.bar(a), g.bar(b))] = (A, B)
    pres = n1_presentation(sf, table, ["K"] if central else [],
                           name=f"susy_affine({g.name})")
    # put generators in the order a..., ā..., K for readable PBW words
    return reorder(pres, list(g.basis) + [g.bar(a) for a in g.basis] + (["K"] if central else []))


def reorder(pres, order):
    """The same presentation with generators declared in ``order``."""
    perm = {pres.index(n): i for i, n in enumerate(order)}

    def cv(vec):
        return {tuple(sorted((perm[g], k) for g, k in w)) if len(w) <= 1 else
                tuple((perm[g], k) for g, k in w): c for w, c in vec.items()}

    if any(len(w) > 1 for lp in pres.table.values() for v in lp.values() for w in v):
        raise ValueError("reorder only supports linear tables")
    table = {(perm[i], perm[j]): {n: cv(v) for n, v in lp.items()}
             for (i, j), lp in pres.table.items()}
    ders = {D: (p, {perm[i]: cv(v) for i, v in imgs.items()})
            for D, (p, imgs) in pres.derivations.items()}
    gens = [pres.gens[pres.index(n)] for n in order]
    return LcaPresentation(gens, table, ders, pres.sef, {}, pres.gradings, pres.name)


def charged_ff_presentation(g, positive, dual, name=None):
    """SUSY charged free fermions F^ch for 𝔫 = span(positive).

    ``positive``: basis names u_α of 𝔫; ``dual``: {α: u^α} names in 𝔫_−
    with (u^α|u_β) = δ.  Generators phi_α (parity p(u_α)), phib_α (parity
    p(u^α)+1) and their D-images Dphi_α, Dphib_α.
    """
    sf = []
    for a in positive:
        sf.append((f"phi_{a}", g.parity[a], f"Dphi_{a}"))
    for a in positive:
        sf.append((f"phib_{a}", 1 - g.parity[dual[a]], f"Dphib_{a}"))
    table = {}
    for a in positive:
        for b in positive:
            v = g.bil(dual[b], a)
            if v:
                table[(f"phi_{a}", f"phib_{b}")] = ({0: {(): v}}, {})
    pres = n1_presentation(sf, table, [], name=name or "charged_ff")
    return pres


def build_named(name, g=None, **kw):
    """Named presentations: vir, svir, svir_n2, svir_n3, betagamma,
    bc_betagamma, ext_bc_betagamma, cur, susy_affine, charged_ff."""
    if name in BUILTINS:
        p = LcaPresentation.from_text(BUILTINS[name])
        p.name = name
        return p
    if name == "cur":
        if g is None:
            raise ValueError("cur needs Lie superalgebra data")
        return cur_presentation(g, kw.get("central", True))
    if name == "susy_affine":
        if g is None:
            raise ValueError("susy_affine needs Lie superalgebra data")
        return susy_affine_presentation(g, kw.get("central", True))
    if name == "charged_ff":
        if g is None or "positive" not in kw or "dual" not in kw:
            raise ValueError("charged_ff needs g, positive and dual")
        return charged_ff_presentation(g, kw["positive"], kw["dual"])
    raise ValueError(f"unknown builtin {name!r}")
