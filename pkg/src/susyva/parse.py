"""The algebra-definition language and the expression language.

File grammar (statements end with ``;``, ``#`` starts a comment)::

    file      := { stmt ";" }
    stmt      := "param" idlist
               | ("even" | "odd") idlist
               | "central" ["odd"] idlist
               | "bracket" id id "=" expr
               | "derive" id id "=" expr
               | "derivation" id ("even" | "odd")
               | "sef" id idlist
               | "let" id "=" expr
               | "grading" id "=" expr
    idlist    := id { [","] id }
    expr      := ["-"] term { ("+" | "-") term }
    term      := power { ("*" | "/") power }
    power     := atom [ "^" integer ]
    atom      := integer | id | "(" expr ")" | "-" atom

Products are right-nested: ``a*b*c`` is a(bc).  ``/`` divides the factor
on its left by a scalar.  Reserved names: ``d`` (∂), ``l`` (λ), ``i``
(√−1), ``x1 x2 x3`` (χ^1..χ^3).
"""

from .coeff import Q as _q
import re

from .coeff import mono_mul, param, I, declare_params, RESERVED

__all__ = ["ParseError", "AlgebraFile", "parse_algebra", "tokenize",
           "Evaluator", "parse_expr", "parse_scalar_expr"]


class ParseError(ValueError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"line {line}, column {col}: {msg}" if line else msg)
        self.msg, self.line, self.col = msg, line, col


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>\d+) | (?P<id>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()=;,:])
""", re.X)


def tokenize(text):
    toks = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append((kind, m.group(), line, pos - start + 1))
        pos = m.end()
    toks.append(("eof", "", line, pos - start + 1))
    return toks


# -- expression trees ---------------------------------------------------------

class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], tok[3])

    def expect(self, value):
        t = self.peek()
        if t[1] != value or t[0] == "id" and value not in ("=",):
            if t[1] != value:
                raise self.error(f"expected {value!r}, found {t[1] or 'end of input'!r}")
        return self.next()

    def ident(self, what="identifier"):
        t = self.peek()
        if t[0] != "id":
            raise self.error(f"expected {what}, found {t[1] or 'end of input'!r}")
        return self.next()

    def expr(self):
        neg = False
        if self.peek()[1] == "-":
            self.next()
            neg = True
        node = self.term()
        if neg:
            node = ("neg", node)
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        factors = [self.power()]
        while self.peek()[1] in ("*", "/"):
            op = self.next()[1]
            f = self.power()
            if op == "/":
                factors[-1] = ("/", factors[-1], f)
            else:
                factors.append(f)
        node = factors[-1]
        for f in reversed(factors[:-1]):
            node = ("*", f, node)
        return node

    def power(self):
        node = self.atom()
        if self.peek()[1] == "^":
            self.next()
            t = self.peek()
            if t[0] != "num":
                raise self.error("exponent must be a non-negative integer")
            self.next()
            node = ("^", node, int(t[1]))
        return node

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.next()
            return ("num", int(t[1]))
        if t[0] == "id":
            self.next()
            return ("id", t[1], t[2], t[3])
        if t[1] == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if t[1] == "-":
            self.next()
            return ("neg", self.power())
        raise self.error(f"unexpected {t[1] or 'end of input'!r} in expression")


def parse_expr(text):
    """Parse an expression into a tree (no evaluation)."""
    p = _Parser(tokenize(text))
    node = p.expr()
    if p.peek()[0] != "eof":
        raise p.error(f"unexpected {p.peek()[1]!r} after expression")
    return node


def parse_scalar_expr(text):
    """Evaluate a scalar expression; unknown names become parameters."""
    tree = parse_expr(text)

    def names(node):
        if node[0] == "id":
            yield node
        else:
            for x in node[1:]:
                if isinstance(x, tuple):
                    yield from names(x)

    for tok in names(tree):
        if tok[1] in ("d", "l", "x1", "x2", "x3"):
            raise ParseError(f"{tok[1]!r} is not allowed in a scalar", tok[2], tok[3])
        if tok[1] != "i":
            declare_params(tok[1])
    ev = Evaluator(_NoGens(), linear=True)
    val = ev.eval(tree)
    return ev._as_scalar(val, tree) if val else 0


class _NoGens:
    names, parity, central = [], [], []


# -- evaluation ---------------------------------------------------------------
#
# A value is a dict {(λ-exponent, pending ∂-exponent, χ-monomial): vec}
# where vec is a raw {word: coefficient} map.  Pending ∂ is resolved as soon
# as something is multiplied on its right.

class Evaluator:
    """Evaluate expression trees against generator names.

    ``ctx`` must provide ``names``, ``parity`` and the raw ``_d_vec``; for
    products of two elements it must provide ``_nop_vec`` (a VertexAlgebra).
    """

    def __init__(self, ctx, lets=None, subs=None, linear=False):
        self.ctx = ctx
        self.index = {n: i for i, n in enumerate(ctx.names)}
        self.lets = lets or {}
        self.subs = subs or {}
        self.linear = linear

    def _scalar_val(self, c):
        return {(0, 0, ()): {(): c}} if c else {}

    def eval(self, node):
        kind = node[0]
        if kind == "num":
            return self._scalar_val(node[1])
        if kind == "id":
            return self._ident(node)
        if kind == "neg":
            return self._scale(self.eval(node[1]), -1)
        if kind in ("+", "-"):
            a, b = self.eval(node[1]), self.eval(node[2])
            return self._add(a, b, 1 if kind == "+" else -1)
        if kind == "/":
            a, b = self.eval(node[1]), self.eval(node[2])
            c = self._as_scalar(b, node[2])
            if not c:
                raise ParseError("division by zero", *self._pos(node[2]))
            return self._scale(a, 1 / c if not isinstance(c, int) else _q(1, c))
        if kind == "*":
            return self._mul(self.eval(node[1]), self.eval(node[2]))
        if kind == "^":
            base = self.eval(node[1])
            out = self._scalar_val(1)
            for _ in range(node[2]):
                out = self._mul(base, out)
            return out
        raise ValueError(kind)

    def _pos(self, node):
        while node[0] not in ("id",) and len(node) > 1 and isinstance(node[1], tuple):
            node = node[1]
        return (node[2], node[3]) if node[0] == "id" else (0, 0)

    def _ident(self, node):
        _, name, line, col = node
        if name in self.subs:
            return self._scalar_val(self.subs[name])
        if name == "d":
            return {(0, 1, ()): {(): 1}}
        if name == "l":
            return {(1, 0, ()): {(): 1}}
        if name == "i":
            return self._scalar_val(I)
        if name in ("x1", "x2", "x3"):
            return {(0, 0, (int(name[1]),)): {(): 1}}
        if name in self.lets:
            return self.lets[name]
        if name in self.index:
            return {(0, 0, ()): {((self.index[name], 0),): 1}}
        from .coeff import declared_params
        if name in declared_params():
            return self._scalar_val(param(name))
        raise ParseError(f"unknown identifier {name!r}", line, col)

    def _as_scalar(self, val, node):
        if not val:
            return 0
        if len(val) == 1:
            (key, vec), = val.items()
            if key == (0, 0, ()) and set(vec) == {()}:
                return vec[()]
        raise ParseError("can only divide by a scalar", *self._pos(node))

    @staticmethod
    def _add(a, b, sign=1):
        out = {k: dict(v) for k, v in a.items()}
        for k, vec in b.items():
            slot = out.setdefault(k, {})
            for w, c in vec.items():
                x = slot.get(w, 0) + sign * c
                if x:
                    slot[w] = x
                else:
                    slot.pop(w, None)
            if not slot:
                del out[k]
        return out

    @staticmethod
    def _scale(a, s):
        return {k: {w: c * s for w, c in v.items()} for k, v in a.items()} if s else {}

    def _dpow(self, vec, k):
        for _ in range(k):
            if not vec:
                break
            if self.linear:
                vec = _linear_d(self.ctx, vec)
            else:
                vec = self.ctx._d_vec(vec)
        return vec

    def _wpar(self, w):
        return sum(self.ctx.parity[g] for g, _ in w) & 1

    def _nop(self, x, y):
        if set(x) == {()}:
            c = x[()]
            return {w: c * v for w, v in y.items()}
        if set(y) == {()}:
            c = y[()]
            return {w: v * c for w, v in x.items()}
        if self.linear:
            raise ParseError("products of generators are not allowed here")
        return self.ctx._nop_vec(x, y)

    def _mul(self, a, b):
        out = {}
        for (l1, d1, m1), v1 in a.items():
            scalar_left = set(v1) == {()}
            for (l2, d2, m2), v2 in b.items():
                if scalar_left:
                    # operator (or scalar) on the left acts on the right factor
                    key = (l1 + l2, d1 + d2, None)
                    prod = {w: v1[()] * c for w, c in v2.items()}
                    left_par = 0
                else:
                    x = self._dpow(v1, d1)
                    y = self._dpow(v2, d2)
                    if not x or not y:
                        continue
                    prod = self._nop(x, y)
                    key = (l1 + l2, 0, None)
                    left_par = self._vpar(x)
                s, m, dl, _ = mono_mul(m1, m2)
                if left_par and len(m2) % 2:
                    s = -s
                key = (key[0] + dl, key[1], m)
                self._acc(out, key, prod, s)
        return out

    def _vpar(self, vec):
        for w in vec:
            return self._wpar(w)
        return 0

    @staticmethod
    def _acc(out, key, vec, s):
        slot = out.setdefault(key, {})
        for w, c in vec.items():
            x = slot.get(w, 0) + s * c
            if x:
                slot[w] = x
            else:
                slot.pop(w, None)
        if not slot:
            del out[key]

    def resolve(self, val):
        """Apply pending ∂ and return {(λ-exp, χ-mono): vec}."""
        out = {}
        for (l, d, m), vec in val.items():
            # ∂ kills scalars
            v = self._dpow({w: c for w, c in vec.items() if w}, d) if d else vec
            self._acc(out, (l, m), v, 1)
        return out

    def element(self, node):
        """Evaluate to a raw vec; λ and χ are not allowed."""
        res = self.resolve(self.eval(node))
        for (l, m) in res:
            if l or m:
                raise ParseError("λ or χ not allowed in an element", *self._pos(node))
        return res.get((0, ()), {})

    def lambda_value(self, node):
        """Evaluate to a raw lpoly {n: vec}; χ not allowed."""
        res = self.resolve(self.eval(node))
        out = {}
        for (l, m), vec in res.items():
            if m:
                raise ParseError("χ not allowed here", *self._pos(node))
            out[l] = vec
        return out

    def grassmann_value(self, node):
        return self.resolve(self.eval(node))


def _linear_d(ctx, vec):
    out = {}
    for w, c in vec.items():
        if not w:
            continue
        if len(w) > 1:
            raise ParseError("products of generators are not allowed here")
        (g, k), = w
        if ctx.central[g]:
            continue
        key = ((g, k + 1),)
        x = out.get(key, 0) + c
        if x:
            out[key] = x
        else:
            out.pop(key, None)
    return out


# -- files --------------------------------------------------------------------

class AlgebraFile:
    """A parsed definition file.

    ``gens``: list of (name, parity, central); ``brackets``: list of
    (a, b, tree); ``derives``: {D: [(gen, tree)]}; ``derivation_parity``;
    ``sef``: {D: [names]}; ``lets``: [(name, tree)]; ``gradings``.
    """

    def __init__(self):
        self.params = []
        self.gens = []
        self.brackets = []
        self.derives = {}
        self.derivation_parity = {}
        self.sef = {}
        self.lets = []
        self.gradings = []


_KEYWORDS = {"param", "even", "odd", "central", "bracket", "derive",
             "derivation", "sef", "let", "grading"}


def parse_algebra(text):
    """Parse a definition file (syntax only plus declaration checks)."""
    p = _Parser(tokenize(text))
    f = AlgebraFile()
    seen = set()

    def idlist():
        names = [p.ident()]
        while p.peek()[1] != ";":
            if p.peek()[1] == ",":
                p.next()
            names.append(p.ident())
        return names

    def declare(tok, kind):
        name = tok[1]
        if name in RESERVED or name in _KEYWORDS:
            raise ParseError(f"{name!r} is reserved", tok[2], tok[3])
        if name in seen:
            raise ParseError(f"duplicate declaration of {name!r}", tok[2], tok[3])
        seen.add(name)

    while p.peek()[0] != "eof":
        kw = p.ident("statement keyword")
        k = kw[1]
        if k == "param":
            toks = [p.ident()]
            while p.peek()[1] != ";":
                if p.peek()[1] == ",":
                    p.next()
                toks.append(p.ident())
            for t in toks:
                declare(t, "param")
            names = [t[1] for t in toks]
            f.params.extend(names)
            declare_params(*names)
        elif k in ("even", "odd", "central"):
            parity = 1 if k == "odd" else 0
            if k == "central" and p.peek()[1] in ("odd", "even"):
                parity = 1 if p.next()[1] == "odd" else 0
            toks = [p.ident()]
            while p.peek()[1] != ";":
                if p.peek()[1] == ",":
                    p.next()
                toks.append(p.ident())
            for t in toks:
                declare(t, k)
                f.gens.append((t[1], parity, k == "central"))
        elif k == "bracket":
            a = p.ident("generator")
            if p.peek()[0] != "id":
                raise p.error("expected second generator")
            b = p.ident("generator")
            p.expect("=")
            f.brackets.append((a, b, p.expr()))
        elif k == "derive":
            D = p.ident("derivation name")
            a = p.ident("generator")
            p.expect("=")
            f.derives.setdefault(D[1], []).append((a, p.expr()))
        elif k == "derivation":
            D = p.ident("derivation name")
            par = p.ident("parity")
            if par[1] not in ("even", "odd"):
                raise ParseError("parity must be even or odd", par[2], par[3])
            f.derivation_parity[D[1]] = 1 if par[1] == "odd" else 0
        elif k == "sef":
            D = p.ident("derivation name")
            f.sef[D[1]] = idlist()
        elif k == "let":
            name = p.ident()
            declare(name, "let")
            p.expect("=")
            f.lets.append((name[1], p.expr()))
        elif k == "grading":
            name = p.ident("generator")
            p.expect("=")
            f.gradings.append((name, p.expr()))
        else:
            raise ParseError(f"unknown statement {k!r}", kw[2], kw[3])
        p.expect(";")
    return f
