"""Acceptance suite: twelve end-to-end criteria, all compared exactly.

Each test records PASS/FAIL for its criterion; the summary is printed at the
end of the run (see conftest.py) and also on stdout of the test itself.
"""

import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from susyva.coeff import I, Q, param
from susyva.lca import (LcaPresentation, abelian, build_named, check_lca_axioms,
                        cur_presentation, sl2, specialize_presentation)
from susyva.sconf import (SconfCandidate, brst_tau, current_superconformal,
                          derivations_from_sconf, kac_todorov, shift_superconformal,
                          tau_charged, verify_superconformal)
from susyva.susy import (SusyStructure, _raw_Lambda, check_sef, check_susy_lca_axioms,
                         check_susy_structure, delta_ansatz, extend_N1, extend_N2,
                         extend_N3, orthogonal_act)
from susyva.ueva import check_engine

DATA = Path(__file__).resolve().parent.parent / "data"
RESULTS = {}


class Criterion:
    """Context manager: times the block and records PASS/FAIL."""

    def __init__(self, n, title, budget):
        self.n, self.title, self.budget = n, title, budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and dt < self.budget
        line = f"criterion {self.n:2d} {'PASS' if ok else 'FAIL'}  {self.title} ({dt:.1f}s)"
        RESULTS[self.n] = line
        print(line)
        if exc_type is None:
            assert dt < self.budget, f"{self.title}: {dt:.1f}s over the {self.budget}s budget"
        return False


# -- raw-value builders for the oracles --------------------------------------

def word(va, name, k=0):
    return ((va.index(name), k),)


def lpoly(va, *terms):
    """{λ-power: vec} from (power, generator, ∂-order, coefficient)."""
    out = {}
    for n, name, k, c in terms:
        vec = out.setdefault(n, {})
        w = word(va, name, k)
        vec[w] = vec.get(w, 0) + c
    return {n: {w: c for w, c in v.items() if c} for n, v in out.items()}



def glv(*terms):
    """Raw Grassmann value from (χ-monomial, λ-power, raw vec)."""
    out = {}
    for m, a, v in terms:
        v = {w: c for w, c in v.items() if c}
        if v:
            out[(m, a, 0)] = v
    return out


def check_table(va, expected):
    """Every listed bracket matches; every unlisted pair whose opposite
    orientation is unlisted too vanishes."""
    for (a, b), want in expected.items():
        got = va.bracket_raw(va.gen(a), va.gen(b))
        assert got == want, f"[{a} _l {b}]"
    live = [n for i, n in enumerate(va.names) if not va.central[i]]
    for a in live:
        for b in live:
            if (a, b) not in expected and (b, a) not in expected:
                assert not va.bracket_raw(va.gen(a), va.gen(b)), f"[{a} _l {b}] != 0"


# -- 1 ------------------------------------------------------------------------

def test_criterion_01_bracket_tables():
    with Criterion(1, "bracket tables of the classical examples", 5):
        # current algebra of sl2: [a_l b] = [a,b] + K l (a|b)
        va = cur_presentation(sl2()).algebra()
        check_table(va, {
            ("e", "f"): lpoly(va, (0, "h", 0, 1), (1, "K", 0, 1)),
            ("h", "e"): lpoly(va, (0, "e", 0, 2)),
            ("h", "f"): lpoly(va, (0, "f", 0, -2)),
            ("h", "h"): lpoly(va, (1, "K", 0, 2)),
            ("e", "e"): {}, ("f", "f"): {},
        })
        va = build_named("betagamma").algebra()
        check_table(va, {("beta", "gamma"): lpoly(va, (0, "C", 0, 1)),
                         ("gamma", "beta"): lpoly(va, (0, "C", 0, -1))})
        va = build_named("bc_betagamma").algebra()
        check_table(va, {("beta", "gamma"): lpoly(va, (0, "C", 0, 1)),
                         ("gamma", "beta"): lpoly(va, (0, "C", 0, -1)),
                         ("b", "c"): lpoly(va, (0, "C", 0, 1)),
                         ("c", "b"): lpoly(va, (0, "C", 0, 1))})
        va = build_named("vir").algebra()
        LL = lpoly(va, (0, "L", 1, 1), (1, "L", 0, 2), (3, "C", 0, Q(1, 12)))
        check_table(va, {("L", "L"): LL})
        va = build_named("svir").algebra()
        check_table(va, {
            ("L", "L"): lpoly(va, (0, "L", 1, 1), (1, "L", 0, 2), (3, "C", 0, Q(1, 12))),
            ("L", "G"): lpoly(va, (0, "G", 1, 1), (1, "G", 0, Q(3, 2))),
            ("G", "G"): lpoly(va, (0, "L", 0, 2), (2, "C", 0, Q(1, 3))),
        })
        va = build_named("svir_n2").algebra()
        w = lambda x, n: lpoly(va, (0, x, 1, 1), (1, x, 0, n))
        check_table(va, {
            ("L", "L"): lpoly(va, (0, "L", 1, 1), (1, "L", 0, 2), (3, "C", 0, Q(1, 12))),
            ("L", "Gp"): w("Gp", Q(3, 2)), ("L", "Gm"): w("Gm", Q(3, 2)),
            ("Gp", "Gp"): {}, ("Gm", "Gm"): {},
            ("Gp", "Gm"): lpoly(va, (0, "L", 0, 1), (0, "J", 1, Q(1, 2)), (1, "J", 0, 1),
                                (2, "C", 0, Q(1, 6))),
            ("L", "J"): w("J", 1),
            ("Gp", "J"): lpoly(va, (0, "Gp", 0, -1)),
            ("Gm", "J"): lpoly(va, (0, "Gm", 0, 1)),
            ("J", "J"): lpoly(va, (1, "C", 0, Q(1, 3))),
        })
        va = build_named("svir_n3").algebra()
        w = lambda x, n: lpoly(va, (0, x, 1, 1), (1, x, 0, n))
        half_d_l = lambda x, s: lpoly(va, (0, x, 1, Q(s, 2)), (1, x, 0, s))
        check_table(va, {
            ("L", "L"): lpoly(va, (0, "L", 1, 1), (1, "L", 0, 2), (3, "C", 0, Q(1, 12))),
            ("L", "Jp"): w("Jp", 1), ("L", "Jm"): w("Jm", 1), ("L", "J0"): w("J0", 1),
            ("L", "Gp"): w("Gp", Q(3, 2)), ("L", "Gm"): w("Gm", Q(3, 2)),
            ("L", "G0"): w("G0", Q(3, 2)), ("L", "Phi"): w("Phi", Q(1, 2)),
            ("Gp", "Gm"): lpoly(va, (0, "L", 0, 1), (0, "J0", 1, Q(1, 2)), (1, "J0", 0, 1),
                                (2, "C", 0, Q(1, 6))),
            ("Gp", "G0"): half_d_l("Jp", 1),
            ("Gm", "G0"): half_d_l("Jm", -1),
            ("G0", "G0"): lpoly(va, (0, "L", 0, 1), (2, "C", 0, Q(1, 6))),
            ("Jp", "Jm"): lpoly(va, (0, "J0", 0, 1), (1, "C", 0, Q(1, 3))),
            ("Jp", "J0"): lpoly(va, (0, "Jp", 0, -1)),
            ("Jm", "J0"): lpoly(va, (0, "Jm", 0, 1)),
            ("J0", "J0"): lpoly(va, (1, "C", 0, Q(1, 3))),
            ("Gp", "Jm"): lpoly(va, (0, "G0", 0, -1), (0, "Phi", 1, 1), (1, "Phi", 0, 1)),
            ("Gm", "Jp"): lpoly(va, (0, "G0", 0, 1), (0, "Phi", 1, 1), (1, "Phi", 0, 1)),
            ("Gp", "J0"): lpoly(va, (0, "Gp", 0, -1)),
            ("Gm", "J0"): lpoly(va, (0, "Gm", 0, 1)),
            ("G0", "Jp"): lpoly(va, (0, "Gp", 0, -1)),
            ("G0", "Jm"): lpoly(va, (0, "Gm", 0, 1)),
            ("G0", "J0"): lpoly(va, (0, "Phi", 1, -1), (1, "Phi", 0, -1)),
            ("Gp", "Phi"): lpoly(va, (0, "Jp", 0, Q(1, 2))),
            ("Gm", "Phi"): lpoly(va, (0, "Jm", 0, Q(1, 2))),
            ("G0", "Phi"): lpoly(va, (0, "J0", 0, Q(-1, 2))),
            ("Phi", "Phi"): lpoly(va, (0, "C", 0, Q(1, 6))),
            ("Gp", "Gp"): {}, ("Gm", "Gm"): {}, ("Jp", "Jp"): {}, ("Jm", "Jm"): {},
        })


# -- 2 ------------------------------------------------------------------------

def test_criterion_02_engine_soundness():
    with Criterion(2, "randomized skew-symmetry and Jacobi suites", 60):
        for name in ("vir", "betagamma", "bc_betagamma", "cur"):
            pres = build_named(name, sl2()) if name == "cur" else build_named(name)
            rep = check_engine(pres.algebra(), seed=2024, pairs=200, triples=200,
                               max_len=3, max_der=2)
            skew = [e for e in rep.entries if e[0].startswith("skew")]
            jac = [e for e in rep.entries if e[0].startswith("jacobi")]
            assert len(skew) >= 200 and len(jac) >= 200
            assert rep.passed, (name, rep.first_failure())


# -- 3 ------------------------------------------------------------------------

def test_criterion_03_n1_extension():
    with Criterion(3, "N=1 extensions of beta-gamma and centerless Virasoro", 10):
        pres, D = extend_N1(build_named("betagamma"))
        va = pres.algebra()
        Cb = lpoly(va, (0, "C_bar", 0, 1))
        assert va.bracket_raw(va.gen("beta"), va.gen("gamma_bar")) == Cb
        assert va.bracket_raw(va.gen("beta_bar"), va.gen("gamma")) == Cb
        for check in (check_lca_axioms(pres), check_sef(pres),
                      check_susy_structure(SusyStructure(va, [D]))):
            assert check.passed, check.first_failure()

        vir0 = LcaPresentation.from_text("even L; bracket L L = (d + 2*l)*L;")
        pres, D = extend_N1(vir0)
        va = pres.algebra()
        assert va.bracket_raw(va.gen("L"), va.gen("L_bar")) == \
            lpoly(va, (0, "L_bar", 1, 1), (1, "L_bar", 0, 2))
        assert va.bracket_raw(va.gen("L_bar"), va.gen("L_bar")) == {}
        for check in (check_lca_axioms(pres), check_sef(pres),
                      check_susy_structure(SusyStructure(va, [D]))):
            assert check.passed, check.first_failure()


# -- 4 ------------------------------------------------------------------------

def test_criterion_04_bc_betagamma_superconformal():
    with Criterion(4, "superconformal vector of the bc-beta-gamma system", 5):
        va = specialize_presentation(build_named("bc_betagamma"), {"C": 1}).algebra()
        b, c, beta, gamma = (va.gen(n) for n in ("b", "c", "beta", "gamma"))
        G = va.nop(gamma.d(), b) + va.nop(c, beta)
        cert = verify_superconformal(SconfCandidate("N1", G=G))
        assert cert.passed, cert.report.first_failure()
        L = (va.nop(c, b.d()) * -1 + va.nop(c.d(), b) + va.nop(gamma.d(), beta) * 2) * Q(1, 2)
        assert cert.L == L
        assert cert.charge == 3


# -- 5 ------------------------------------------------------------------------

def test_criterion_05_shift_law():
    with Criterion(5, "shift law on one even charged pair", 10):
        m = param("m")
        grading = {"e": 1, "h": 0, "f": -1}
        tau0 = tau_charged(sl2(), grading)
        va = tau0.va
        cert0 = verify_superconformal(SconfCandidate("N1", G=tau0))
        assert cert0.passed and cert0.charge == 3
        v = va.nop(va.gen("phi_e"), va.gen("phib_e")) * m
        G2, cert = shift_superconformal(tau0, v, cert0)
        assert cert.passed, cert.report.first_failure()
        assert cert.extra["c1"] == m and cert.extra["c2"] == 0
        assert cert.charge == 6 * m + 3
        assert cert.charge == cert0.charge + 6 * cert.extra["c1"] - 3 * cert.extra["c2"]
        direct = tau_charged(sl2(), grading, {"e": m})
        assert dict(G2.terms) == dict(direct.terms)


# -- 6 ------------------------------------------------------------------------

def test_criterion_06_kac_todorov():
    with Criterion(6, "Kac-Todorov vector of sl2 at symbolic level", 120):
        k = param("k")
        tau = kac_todorov(sl2(), k)
        va = tau.va
        D = va.pres.derivation("D")
        S = SusyStructure(va, [D])
        t = va._coerce(tau)
        c = 3 * (k - 2) / k + Q(3, 2)
        want = glv(((), 0, {w: 2 * x for w, x in va._dpow(t, 1).items()}),
                   ((), 1, {w: 3 * x for w, x in t.items()}),
                   ((1,), 0, va._der_vec(D, t)),
                   ((1,), 2, {(): c / 3}))
        assert _raw_Lambda(S, t, t) == want
        cert = verify_superconformal(SconfCandidate("N1", G=tau))
        assert cert.passed and cert.charge == c


# -- 7 ------------------------------------------------------------------------

def test_criterion_07_brst_charge():
    with Criterion(7, "BRST superconformal vector and charge", 120):
        k = param("k")
        g = sl2()
        grading = {"e": 1, "h": 0, "f": -1}
        h = {"h": 1}
        tau, cert = brst_tau(g, grading, k, h)
        assert cert.passed, cert.report.first_failure()
        hh = 2
        assert cert.charge == (3 * k - 4) * 3 / (2 * k) - 3 * k * hh + 3
        va = tau.va
        S = SusyStructure(va, [va.pres.derivation("D")])
        t = va._coerce(tau)
        bil_h = {"e": 0, "f": 0, "h": 2}
        for a, i in grading.items():
            ab = {word(va, a + "_bar"): 1}
            want = glv(((), 0, {word(va, a + "_bar", 1): 2}),
                       ((), 1, {w: (1 - 2 * i) * x for w, x in ab.items()}),
                       ((1,), 0, va._der_vec(S.D[0], ab)),
                       ((1,), 1, {(): -k * bil_h[a]}))
            assert _raw_Lambda(S, t, ab) == want, a


# -- 8 ------------------------------------------------------------------------

def test_criterion_08_extended_bc_betagamma():
    with Criterion(8, "extended bc-beta-gamma: N=2 axioms, certificate, derivations", 30):
        pres = build_named("ext_bc_betagamma")
        S = SusyStructure.from_presentation(pres, ["D1", "D2"])
        for check in (check_susy_structure(S), check_susy_lca_axioms(S)):
            assert check.passed, check.first_failure()
        va = pres.algebra()
        assert _raw_Lambda(S, {word(va, "alpha"): 1}, {word(va, "gamma"): 1}) == \
            glv(((), 0, {word(va, "C"): -1}))

        va = specialize_presentation(pres, {"C": 1}).algebra()
        g = {n: va.gen(n) for n in va.names}
        nop = va.nop
        Gp = (nop(g["c"], g["beta"]) - nop(g["a"], g["delta"])) * I
        Gm = (nop(g["gamma"].d(), g["b"]) * -1 + nop(g["alpha"].d(), g["dd"])) * I
        cert = verify_superconformal(SconfCandidate("N2", Gp=Gp, Gm=Gm))
        assert cert.passed, cert.report.first_failure()
        assert cert.charge == 6
        assert cert.J == nop(g["c"], g["b"]) - nop(g["a"], g["dd"])
        Lh = (nop(g["c"], g["b"].d()) * -1 + nop(g["c"].d(), g["b"])
              + nop(g["gamma"].d(), g["beta"]) * 2 + nop(g["a"], g["dd"].d())
              - nop(g["a"].d(), g["dd"]) - nop(g["alpha"].d(), g["delta"]) * 2) * Q(1, 2)
        assert cert.L == Lh

        Sh = derivations_from_sconf(SconfCandidate("N2", Gp=Gp, Gm=Gm), 1)
        D1, D2 = Sh.D
        table = {  # x: (D1 x, D2 x), read off the diagram
            "b": (g["beta"] * I, -g["beta"]),
            "beta": (g["b"].d() * -I, -g["b"].d()),
            "gamma": (g["c"] * I, -g["c"]),
            "c": (g["gamma"].d() * -I, -g["gamma"].d()),
            "alpha": (g["a"] * I, -g["a"]),
            "a": (g["alpha"].d() * -I, -g["alpha"].d()),
            "dd": (g["delta"] * I, -g["delta"]),
            "delta": (g["dd"].d() * -I, -g["dd"].d()),
        }
        for x, (w1, w2) in table.items():
            assert D1(g[x]) == w1, ("D1", x)
            assert D2(g[x]) == w2, ("D2", x)


# -- 9 ------------------------------------------------------------------------

def test_criterion_09_negative_controls():
    with Criterion(9, "negative controls: SEF inconsistency and weight rigidity", 10):
        out = subprocess.run(
            [sys.executable, "-m", "susyva", "check-sef",
             "--algebra", str(DATA / "betagamma_case2.alg")],
            capture_output=True, text=True)
        assert out.returncode == 1, out.stdout + out.stderr
        assert ("inconsistent: no bracket assignment satisfies SEF1 for (beta_bar, gamma_bar)"
                in out.stdout)
        verdict = {}
        for delta in (1, Q(3, 2), 2, 3):
            verdict[delta] = check_lca_axioms(delta_ansatz(delta)).passed
        assert verdict == {1: False, Q(3, 2): True, 2: True, 3: False}


# -- 10 -----------------------------------------------------------------------

def _matmul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def test_criterion_10_orthogonal_action():
    with Criterion(10, "orthogonal group action on the N=2 structure", 10):
        pres = build_named("ext_bc_betagamma")
        S = SusyStructure.from_presentation(pres, ["D1", "D2"])
        F = Fraction
        A = [[F(3, 5), F(4, 5)], [F(-4, 5), F(3, 5)]]
        B = [[F(5, 13), F(12, 13)], [F(12, 13), F(-5, 13)]]
        SA = orthogonal_act(A, S)
        rep = check_susy_structure(SA)
        assert rep.passed, rep.first_failure()
        AB = orthogonal_act(_matmul(A, B), S)
        A_B = orthogonal_act(A, orthogonal_act(B, S))
        va = S.va
        for r in range(2):
            for n in va.names:
                assert AB.D[r](va.gen(n)) == A_B.D[r](va.gen(n)), (r, n)
        with pytest.raises(ValueError):
            orthogonal_act([[1, 1], [0, 1]], S)


# -- 11 -----------------------------------------------------------------------

def test_criterion_11_n2_n3_extensions():
    with Criterion(11, "N=2 and N=3 extensions", 30):
        svir0 = specialize_presentation(build_named("svir"), {"C": 0})
        pres, S = extend_N2(svir0)
        va = pres.algebra()
        Gc = {word(va, "G_circ"): 1}
        assert _raw_Lambda(S, Gc, Gc) == glv(
            ((), 0, {word(va, "G_circ", 1): -2}), ((), 1, {word(va, "G_circ"): -3}),
            ((1,), 0, {word(va, "L_circ"): 2}))

        vir0 = LcaPresentation.from_text("even L; bracket L L = (d + 2*l)*L;")
        pres, S = extend_N2(extend_N1(vir0)[0])
        va = pres.algebra()
        x = {word(va, "L_bar_circ"): 1}
        assert _raw_Lambda(S, x, x) == glv(
            ((), 0, {word(va, "L_bar_circ", 1): -1}), ((), 1, {word(va, "L_bar_circ"): -2}))

        base, _ = extend_N2(extend_N1(cur_presentation(abelian(2), central=False))[0])
        pres3, S3 = extend_N3(base)
        assert sorted(pres3.sef) == ["D1", "D2", "D3"]
        for d in ("D1", "D2", "D3"):
            rep = check_sef(pres3, dname=d, solve=False)
            assert rep.passed, (d, rep.first_failure())
        rep = check_susy_structure(S3)
        assert rep.passed, rep.first_failure()


# -- 12 -----------------------------------------------------------------------

def test_criterion_12_n2_affine_embedding():
    with Criterion(12, "N=2 superconformal embedding of the sl2 current algebra", 60):
        pres, cand, S = current_superconformal(sl2(), None, "N2")
        rep = check_lca_axioms(pres)
        assert rep.passed, rep.first_failure()
        cert = verify_superconformal(cand)
        assert cert.passed, cert.report.first_failure()
        va = pres.algebra()
        Gp, Gm = va.gen("Gp"), va.gen("Gm")

        def zero_mode(G, x):
            return va.element(va.bracket_raw(G, x).get(0, {}))

        for a in ("e", "h", "f"):
            x, xb, xc, xbc = (va.gen(a + s) for s in ("", "_bar", "_circ", "_bar_circ"))
            D1 = lambda y: zero_mode(Gp + Gm, y)
            D2 = lambda y: zero_mode(Gp - Gm, y) * -I
            assert D1(x) == xb.d() and D1(xb) == x
            assert D1(xc) == -xbc.d() and D1(xbc) == -xc
            assert D2(x) == xc.d() and D2(xc) == x
            assert D2(xb) == xbc.d() and D2(xbc) == xb
            for y in (x, xb, xc, xbc):
                assert S.D[0](y) == D1(y) and S.D[1](y) == D2(y)
