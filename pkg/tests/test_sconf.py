import pytest

from susyva.coeff import Q, param
from susyva.lca import abelian, build_named, osp12, sl2, specialize_presentation
from susyva.sconf import (SconfCandidate, brst_tau, charged_data, current_superconformal,
                          derivations_from_sconf, kac_todorov, kac_todorov_charge,
                          shift_superconformal, tau_charged, verify_superconformal,
                          zero_mode)
from susyva.susy import check_susy_structure


def bc():
    return specialize_presentation(build_named("bc_betagamma"), {"C": 1}).algebra()


def bc_G(va):
    return va.nop(va.gen("gamma").d(), va.gen("b")) + va.nop(va.gen("c"), va.gen("beta"))


def test_candidate_validation():
    va = bc()
    G = bc_G(va)
    with pytest.raises(ValueError, match="unknown mode"):
        SconfCandidate("N5", G=G)
    with pytest.raises(ValueError, match="needs"):
        SconfCandidate("N2", G=G)
    with pytest.raises(ValueError, match="odd"):
        SconfCandidate("N1", G=va.gen("beta"))
    with pytest.raises(ValueError, match="different"):
        SconfCandidate("N2", Gp=G, Gm=bc_G(bc()))


def test_non_superconformal_vector_fails():
    va = bc()
    assert not verify_superconformal(SconfCandidate("N1", G=va.gen("b"))).passed


def test_zero_mode_of_G_is_a_susy_structure():
    va = bc()
    S = derivations_from_sconf(SconfCandidate("N1", G=bc_G(va)))
    assert check_susy_structure(S).passed
    D = zero_mode(bc_G(va))
    assert D(va.gen("b")) == S.D[0](va.gen("b"))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kac_todorov_abelian(n):
    cert = verify_superconformal(SconfCandidate("N1", G=kac_todorov(abelian(n), 1)))
    assert cert.passed and cert.charge == Q(3 * n, 2)


def test_kac_todorov_sl2_at_level_three():
    cert = verify_superconformal(SconfCandidate("N1", G=kac_todorov(sl2(), 3)))
    assert cert.passed and cert.charge == Q(5, 2)


def test_kac_todorov_osp12():
    k = param("k")
    cert = verify_superconformal(SconfCandidate("N1", G=kac_todorov(osp12(), k)))
    assert cert.passed
    # sdim = 1, dual Coxeter 3/2
    assert cert.charge == (k - Q(3, 2)) / k + Q(1, 2) == kac_todorov_charge(osp12(), k)


def test_level_zero_is_rejected():
    with pytest.raises(ValueError):
        kac_todorov(sl2(), 0)


def test_tau_charged_and_its_charge():
    tau = tau_charged(sl2(), {"e": 1, "h": 0, "f": -1}, {"e": 2})
    cert = verify_superconformal(SconfCandidate("N1", G=tau))
    assert cert.passed and cert.charge == 6 * 2 + 3


def test_charged_data_needs_normalized_partners():
    assert charged_data(sl2(), {"e": 1, "f": -1}) == (["e"], {"e": "f"})
    with pytest.raises(ValueError, match="partner"):
        charged_data(osp12(), {"e": 1, "x": Q(1, 2), "y": Q(-1, 2), "f": -1})


def test_brst_rejects_a_wrong_cartan_element():
    with pytest.raises(ValueError):
        brst_tau(sl2(), {"e": 1, "h": 0, "f": -1}, 1, {"h": 2})


def test_shift_requires_odd_v():
    grading = {"e": 1, "h": 0, "f": -1}
    tau = tau_charged(sl2(), grading)
    va = tau.va
    with pytest.raises(ValueError, match="odd"):
        shift_superconformal(tau, va.gen("phi_e"))
    _, cert = shift_superconformal(tau, va.nop(va.gen("phi_e"), va.gen("phib_e")) * 5)
    assert cert.passed and cert.charge == 33


def test_current_superconformal_weights():
    _, cand, _ = current_superconformal(abelian(1), {"a": Q(1, 2)})
    cert = verify_superconformal(cand)
    assert cert.passed
    assert cert.weights["a"][0] == Q(1, 2) and cert.weights["a_bar"][0] == 0
    assert cert.weights["G"][0] == Q(3, 2)


def test_current_superconformal_N2():
    pres, cand, S = current_superconformal(sl2(), None, "N2")
    assert verify_superconformal(cand).passed
    assert check_susy_structure(S).passed


def test_derivations_from_sconf():
    pres = specialize_presentation(build_named("svir_n3"), {"C": 1})
    va = pres.algebra()
    cand = SconfCandidate("N3", **{n: va.gen(n) for n in ("Gp", "Gm", "G0", "Phi")})
    with pytest.raises(ValueError, match="√2"):
        derivations_from_sconf(cand)
    _, cand2, _ = current_superconformal(abelian(1), None, "N2")
    S = derivations_from_sconf(cand2, mu=2)
    assert S.n == 2 and check_susy_structure(S).passed
    with pytest.raises(ValueError):
        derivations_from_sconf(cand2, mu=0)
