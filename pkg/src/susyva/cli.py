"""Command line driver.

Every command returns an exit code and a :class:`Report`: 0 when all checks
pass, 1 when a check fails, 2 on usage or parse errors.  With ``--json`` the
report is printed as one JSON object (schema ``susyva-report``, version
``JSON_SCHEMA_VERSION``)::

    {"schema": "susyva-report", "version": 1,
     "command": [argv...], "exit_code": 0 | 1 | 2,
     "report": {"title", "passed", "checks": [{"name", "passed", "detail"?}],
                "info"?: {key: string}},
     "result": {key: string | object}}

Scalars are always exact strings (``3/2``, ``(9/2*k - 6)/k``), never floats.
"""

import argparse
import json
import sys

from .coeff import param, render_scalar
from .lca import (LcaPresentation, abelian, build_named, check_lca_axioms,
                  osp12, sl2)
from .parse import Evaluator, ParseError, parse_expr, parse_scalar_expr
from .report import Report
from .ueva import check_engine, render_lpoly, render_vec
from . import sconf, susy

JSON_SCHEMA_VERSION = 1

LIE = {"sl2": sl2, "osp12": osp12, "abelian": abelian}

COMMANDS = ["check-lca", "check-va", "bracket", "lbracket", "check-sef",
            "check-susy", "extend", "check-sconf", "shift-sconf", "kac-todorov",
            "tau-charged", "brst", "weights", "ortho-act"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser():
    common = _Parser(add_help=False)
    common.add_argument("--algebra", metavar="FILE")
    common.add_argument("--builtin", metavar="NAME")
    common.add_argument("--json", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-len", type=int, default=None)
    common.add_argument("--max-der", type=int, default=None)
    common.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    common.add_argument("--verbose", "-v", action="store_true")

    p = _Parser(prog="susyva", description="Exact λ- and Λ-bracket calculus.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    mk = lambda name, help: sub.add_parser(name, parents=[common], help=help)

    mk("check-lca", "skew-symmetry and Jacobi on generators")
    s = mk("check-va", "randomized engine suite on PBW elements")
    s.add_argument("--pairs", type=int, default=200)
    s.add_argument("--triples", type=int, default=200)
    for name, h in (("bracket", "λ-bracket of two elements"),
                    ("lbracket", "Λ-bracket of two elements")):
        s = mk(name, h)
        s.add_argument("x")
        s.add_argument("y")
        if name == "lbracket":
            s.add_argument("--derivations", metavar="D1,D2")
    s = mk("check-sef", "supersymmetric extension formulas")
    s.add_argument("--derivation", metavar="D")
    s = mk("check-susy", "SUSY structure and Λ-bracket axioms")
    s.add_argument("--derivations", metavar="D1,D2")
    s.add_argument("--sample", type=int, default=0)
    s = mk("extend", "N=1, 2, 3 extension of a presentation")
    s.add_argument("--n", type=int, choices=(1, 2, 3), required=True)
    s.add_argument("--derivation", metavar="D")
    s.add_argument("--output", "-o", metavar="FILE")
    s = mk("check-sconf", "certify a superconformal family")
    s.add_argument("--mode", choices=("n1", "n2", "n3"), default="n1")
    s.add_argument("--vector", action="append", default=[], metavar="NAME=EXPR")
    s = mk("shift-sconf", "shift a superconformal vector by ∂v")
    s.add_argument("--vector", required=True, metavar="G=EXPR")
    s.add_argument("--by", required=True, metavar="EXPR")
    s = mk("weights", "conformal weights of the generators")
    s.add_argument("--vector", required=True, metavar="L=EXPR")
    s.add_argument("gens", nargs="*")
    for name, h in (("kac-todorov", "Kac-Todorov vector of a SUSY affine algebra"),
                    ("tau-charged", "superconformal vector of charged fermions"),
                    ("brst", "superconformal vector of the BRST complex")):
        s = mk(name, h)
        s.add_argument("--lie", choices=sorted(LIE), default="sl2")
        if name != "kac-todorov":
            s.add_argument("--grading", required=True, metavar="a=i,...")
            s.add_argument("--m", metavar="a=EXPR,...")
        if name == "brst":
            s.add_argument("--h", required=True, metavar="a=c,...")
    s = mk("ortho-act", "act on a SUSY structure by an orthogonal matrix")
    s.add_argument("--matrix", required=True, metavar="a,b;c,d")
    s.add_argument("--derivations", metavar="D1,D2")
    return p


# -- helpers ----------------------------------------------------------------

def _params(args):
    out = {}
    for item in args.param:
        if "=" not in item:
            raise UsageError(f"--param expects NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_scalar_expr(v)
    return out


def _load(args):
    if bool(args.algebra) == bool(args.builtin):
        raise UsageError("give exactly one of --algebra FILE or --builtin NAME")
    subs = _params(args)
    if args.builtin:
        try:
            pres = build_named(args.builtin)
        except ValueError as e:
            raise UsageError(str(e)) from None
        return LcaPresentation.from_text(pres.render(), subs) if subs else pres
    try:
        with open(args.algebra, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {args.algebra}: {e.strerror}") from None
    try:
        return LcaPresentation.from_text(text, subs)
    except ParseError as e:
        raise ParseError(f"{args.algebra}: {e.msg}", e.line, e.col) from None


def _elem(va, text):
    return va.element(Evaluator(va).element(parse_expr(text)))


def _assign(text, what):
    out = {}
    for item in filter(None, (s.strip() for s in (text or "").split(","))):
        if "=" not in item:
            raise UsageError(f"{what} expects NAME=VALUE pairs, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_scalar_expr(v)
    return out


def _names(text):
    return [s.strip() for s in text.split(",")] if text else None


def _caps(args, len_default, der_default):
    return (len_default if args.max_len is None else args.max_len,
            der_default if args.max_der is None else args.max_der)


def _structure(pres, names):
    if not pres.derivations:
        raise UsageError("the algebra declares no derivations")
    for n in names or ():
        if n not in pres.derivations:
            raise UsageError(f"unknown derivation {n!r}")
    return susy.SusyStructure.from_presentation(pres, names)


def _cert_result(cert):
    return cert.to_dict()


# -- commands -----------------------------------------------------------------

def cmd_check_lca(args):
    return check_lca_axioms(_load(args)), {}


def cmd_check_va(args):
    va = _load(args).algebra()
    ml, md = _caps(args, 3, 2)
    rep = check_engine(va, seed=args.seed, pairs=args.pairs, triples=args.triples,
                       max_len=ml, max_der=md)
    return rep, {}


def cmd_bracket(args):
    va = _load(args).algebra()
    x, y = _elem(va, args.x), _elem(va, args.y)
    lp = va._br_vec(va._coerce(x), va._coerce(y))
    rep = Report(f"[{args.x} _l {args.y}]")
    rep.info["value"] = render_lpoly(va.names, lp)
    return rep, {"value": rep.info["value"]}


def cmd_lbracket(args):
    pres = _load(args)
    S = _structure(pres, _names(args.derivations))
    va = S.va
    raw = susy._raw_Lambda(S, va._coerce(_elem(va, args.x)), va._coerce(_elem(va, args.y)))
    rep = Report(f"[{args.x} _L {args.y}] (N={S.n})")
    rep.info["value"] = susy.render_glv(va, raw)
    return rep, {"value": rep.info["value"]}


def cmd_check_sef(args):
    pres = _load(args)
    if args.derivation and args.derivation not in pres.derivations:
        raise UsageError(f"unknown derivation {args.derivation!r}")
    if not pres.sef:
        raise UsageError("the algebra designates no generators (use a sef statement)")
    names = [args.derivation] if args.derivation else list(pres.sef)
    rep = Report("supersymmetric extension formulas")
    for d in names:
        rep.extend(susy.check_sef(pres, dname=d), prefix=f"{d}: " if len(names) > 1 else "")
    return rep, {}


def cmd_check_susy(args):
    pres = _load(args)
    S = _structure(pres, _names(args.derivations))
    ml, md = _caps(args, 2, 1)
    rep = Report(f"N={S.n} SUSY vertex algebra")
    rep.extend(susy.check_susy_structure(S, seed=args.seed, max_len=ml, max_der=md))
    rep.extend(susy.check_susy_lca_axioms(S, sample=args.sample, seed=args.seed,
                                          max_len=ml, max_der=md))
    return rep, {}


def cmd_extend(args):
    pres = _load(args)
    if args.n > 1 and not pres.sef:
        raise UsageError(f"an N={args.n} extension needs designated generators (sef)")
    rep = Report(f"N={args.n} extension")
    try:
        if args.n == 1:
            out, D = susy.extend_N1(pres)
            S = susy.SusyStructure(out.algebra(), [D])
        elif args.n == 2:
            if args.derivation and args.derivation not in pres.sef:
                raise UsageError(f"no designated set for {args.derivation!r}")
            out, S = susy.extend_N2(pres, args.derivation)
        else:
            out, S = susy.extend_N3(pres)
    except ValueError as e:
        rep.add("hypotheses", False, reason=e)
        return rep, {}
    rep.add("hypotheses", True)
    for d in out.sef:
        rep.extend(susy.check_sef(out, dname=d, solve=False), prefix=f"{d}: ")
    rep.extend(susy.check_susy_structure(S, seed=args.seed))
    text = out.render()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return rep, {"presentation": text}


def cmd_check_sconf(args):
    va = _load(args).algebra()
    vecs = {}
    for item in args.vector:
        if "=" not in item:
            raise UsageError(f"--vector expects NAME=EXPR, got {item!r}")
        k, v = item.split("=", 1)
        vecs[k.strip()] = _elem(va, v)
    try:
        cand = sconf.SconfCandidate(args.mode, **vecs)
    except ValueError as e:
        raise UsageError(str(e)) from None
    cert = sconf.verify_superconformal(cand)
    return _with_cert(cert), _cert_result(cert)


def _with_cert(cert):
    rep = cert.report
    if cert.charge is not None:
        rep.info["central charge"] = cert.charge_str()
    for n, v in cert.currents.items():
        rep.info[n] = v
    for n, (d, p) in cert.weights.items():
        rep.info[f"weight {n}"] = render_scalar(d) + ("" if p else " (not primary)")
    return rep


def cmd_shift_sconf(args):
    va = _load(args).algebra()
    name, _, expr = args.vector.partition("=")
    if not expr:
        raise UsageError("--vector expects G=EXPR")
    G, v = _elem(va, expr), _elem(va, args.by)
    try:
        G2, cert = sconf.shift_superconformal(G, v)
    except ValueError as e:
        rep = Report("shifted superconformal vector")
        rep.add("hypotheses", False, reason=e)
        return rep, {}
    rep = _with_cert(cert)
    rep.info["shifted vector"] = G2
    return rep, {"vector": str(G2), **_cert_result(cert)}


def cmd_weights(args):
    va = _load(args).algebra()
    name, _, expr = args.vector.partition("=")
    if not expr:
        raise UsageError("--vector expects L=EXPR")
    L = _elem(va, expr)
    gens = args.gens or [n for i, n in enumerate(va.names) if not va.central[i]]
    rep = Report("conformal weights")
    out = {}
    for g in gens:
        if g not in va.names:
            raise UsageError(f"unknown generator {g!r}")
        try:
            d, p = sconf.conformal_weight(L, va.gen(g))
        except ValueError as e:
            rep.add(g, False, reason=e)
            continue
        rep.add(g, True)
        out[g] = {"weight": render_scalar(d), "primary": p}
        rep.info[f"weight {g}"] = render_scalar(d) + ("" if p else " (not primary)")
    return rep, {"weights": out}


def _level(args):
    ps = _params(args)
    return ps.get("k", param("k")), ps


def cmd_kac_todorov(args):
    g = LIE[args.lie]()
    k, _ = _level(args)
    tau = sconf.kac_todorov(g, k)
    cert = sconf.verify_superconformal(sconf.SconfCandidate("N1", G=tau))
    rep = _with_cert(cert)
    want = sconf.kac_todorov_charge(g, k)
    rep.add("charge = (k - h)sdim/k + sdim/2", cert.charge == want,
            expected=render_scalar(want))
    return rep, {"vector": str(tau), **_cert_result(cert)}


def cmd_tau_charged(args):
    g = LIE[args.lie]()
    grading = _assign(args.grading, "--grading")
    m = _assign(args.m, "--m") or None
    try:
        positive, _ = sconf.charged_data(g, grading)
    except ValueError as e:
        raise UsageError(str(e)) from None
    tau = sconf.tau_charged(g, grading, m)
    cert = sconf.verify_superconformal(sconf.SconfCandidate("N1", G=tau))
    rep = _with_cert(cert)
    want = sconf.charged_charge(m, positive)
    rep.add("charge = sum(6 m_a + 3)", cert.charge == want, expected=render_scalar(want))
    return rep, {"vector": str(tau), **_cert_result(cert)}


def cmd_brst(args):
    g = LIE[args.lie]()
    k, _ = _level(args)
    grading = _assign(args.grading, "--grading")
    m = _assign(args.m, "--m") or None
    h = _assign(args.h, "--h")
    try:
        tau, cert = sconf.brst_tau(g, grading, k, h, m)
    except ValueError as e:
        rep = Report("BRST superconformal vector")
        rep.add("hypotheses", False, reason=e)
        return rep, {}
    return _with_cert(cert), {"vector": str(tau), **_cert_result(cert)}


def cmd_ortho_act(args):
    pres = _load(args)
    S = _structure(pres, _names(args.derivations))
    try:
        A = [[parse_scalar_expr(x) for x in row.split(",")] for row in args.matrix.split(";")]
    except ParseError as e:
        raise UsageError(f"bad matrix: {e}") from None
    rep = Report("orthogonal action")
    try:
        T = susy.orthogonal_act(A, S)
    except ValueError as e:
        rep.add("matrix", False, reason=e)
        return rep, {}
    rep.add("matrix", True)
    rep.extend(susy.check_susy_structure(T, seed=args.seed))
    ders = {}
    for D in T.D:
        ders[D.name] = {n: render_vec(S.va.names, S.va._coerce(D.on(n)))
                        for n in S.va.names if D.on(n)}
    return rep, {"derivations": ders}


HANDLERS = {c: globals()["cmd_" + c.replace("-", "_")] for c in COMMANDS}


# -- entry points ---------------------------------------------------------------

def run(argv):
    """Run a command; returns (exit code, Report, result dict)."""
    argv = list(argv)
    try:
        args = _parser().parse_args(argv)
        rep, result = HANDLERS[args.command](args)
    except UsageError as e:
        rep = Report("usage error")
        rep.add("arguments", False, reason=e)
        return 2, rep, {}
    except ParseError as e:
        rep = Report("parse error")
        rep.add("input", False, reason=e)
        return 2, rep, {}
    return (0 if rep.passed else 1), rep, result


def _render(x):
    if isinstance(x, dict):
        return {k: _render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_render(v) for v in x]
    if x is None or isinstance(x, (str, bool)):
        return x
    if isinstance(x, int):
        return str(x)
    return render_scalar(x) if not hasattr(x, "va") else str(x)


def to_json(argv, code, rep, result):
    return json.dumps({"schema": "susyva-report", "version": JSON_SCHEMA_VERSION,
                       "command": list(argv), "exit_code": code,
                       "report": rep.to_dict(), "result": _render(result)},
                      ensure_ascii=False, indent=2)


def run_command(argv, out=None):
    """Run and print; returns (exit code, Report)."""
    out = out or sys.stdout
    argv = list(argv)
    code, rep, result = run(argv)
    if "--json" in argv:
        print(to_json(argv, code, rep, result), file=out)
        return code, rep
    print(" ".join(["susyva"] + argv), file=out)
    verbose = "-v" in argv or "--verbose" in argv
    for line in rep.lines(verbose):
        print(line, file=out)
    if "presentation" in result:
        print(result["presentation"], end="", file=out)
    if "value" in result:
        print(result["value"], file=out)
    if code == 2:
        print(_parser().format_usage().rstrip(), file=out)
    return code, rep


def main(argv=None):
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
