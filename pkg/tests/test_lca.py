import pytest

from susyva.coeff import Q
from susyva.lca import (BUILTINS, LcaPresentation, abelian, build_named,
                        check_lca_axioms, cur_presentation, direct_sum, osp12,
                        reorder, sl2, specialize_presentation,
                        validate_lie_superalgebra)
from susyva.susy import delta_ansatz


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_satisfy_the_axioms(name):
    rep = check_lca_axioms(build_named(name))
    assert rep.passed, rep.first_failure()


def test_broken_jacobi_is_reported():
    rep = check_lca_axioms(delta_ansatz(1))
    assert not rep.passed
    assert any(name.startswith("jacobi") for name, _ in rep.failures())


def test_broken_skew_symmetry_is_reported():
    pres = LcaPresentation.from_text("even a, b; bracket a b = a; bracket b a = a;")
    assert not check_lca_axioms(pres).passed


@pytest.mark.parametrize("g", [sl2(), osp12(), abelian(2)],
                         ids=["sl2", "osp12", "abelian2"])
def test_lie_superalgebra_data(g):
    assert validate_lie_superalgebra(g).passed
    dual = g.dual_basis()
    for a in g.basis:
        for c in g.basis:
            assert g.bil_vec({a: 1}, dual[c]) == (1 if a == c else 0)


def test_symmetric_form_on_an_odd_line_is_rejected():
    assert not validate_lie_superalgebra(abelian(1, 1)).passed


def test_invariants_of_sl2_and_osp12():
    assert (sl2().sdim(), sl2().dual_coxeter()) == (3, 2)
    assert (osp12().sdim(), osp12().dual_coxeter()) == (1, Q(3, 2))


def test_current_algebra_is_level_times_form():
    va = cur_presentation(sl2()).algebra()
    K = va.index("K")
    assert va.bracket_raw(va.gen("h"), va.gen("h")) == {1: {((K, 0),): 2}}
    centerless = cur_presentation(sl2(), central=False)
    assert "K" not in centerless.names


def test_specialize_replaces_central_generator():
    p = specialize_presentation(build_named("vir"), {"C": 6})
    assert p.names == ["L"]
    va = p.algebra()
    assert va.bracket_raw(va.gen("L"), va.gen("L"))[3] == {(): Q(1, 2)}
    with pytest.raises(ValueError):
        specialize_presentation(build_named("vir"), {"L": 1})


def test_direct_sum_keeps_parts_commuting():
    vir = build_named("vir")
    p = direct_sum(vir, cur_presentation(sl2(), central=False))
    assert p.names == ["L", "C", "e", "f", "h"]
    va = p.algebra()
    assert va.bracket_raw(va.gen("L"), va.gen("e")) == {}
    assert va.bracket_raw(va.gen("L"), va.gen("L"))[3] == {((va.index("C"), 0),): Q(1, 12)}
    with pytest.raises(ValueError):
        direct_sum(vir, vir)


def test_direct_sum_rejects_mixed_parity_derivations():
    a = LcaPresentation.from_text("odd x; even z; derive D x = z;")
    b = LcaPresentation.from_text("odd y; derivation D even; derive D y = y;")
    with pytest.raises(ValueError):
        direct_sum(a, b)


def test_reorder_is_the_same_algebra():
    p = cur_presentation(sl2())
    q = reorder(p, ["K", "h", "f", "e"])
    va, vb = p.algebra(), q.algebra()
    for x in "efh":
        for y in "efh":
            assert str(va.element(va.bracket_raw(va.gen(x), va.gen(y)).get(0, {}))) == \
                str(vb.element(vb.bracket_raw(vb.gen(x), vb.gen(y)).get(0, {})))


def test_unknown_builtin():
    with pytest.raises(ValueError):
        build_named("nope")
