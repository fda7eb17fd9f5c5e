import random

import pytest
from hypothesis import given, settings, strategies as st

from susyva.coeff import Q
from susyva.lca import build_named, sl2
from susyva.ueva import _add, check_engine, random_word

ALGEBRAS = {n: (build_named("cur", sl2()) if n == "cur" else build_named(n)).algebra()
            for n in ("vir", "betagamma", "bc_betagamma", "cur", "svir")}

names = st.sampled_from(sorted(ALGEBRAS))
seeds = st.integers(0, 10 ** 6)


def words(va, seed, n, max_len=2):
    rng = random.Random(seed)
    return [{random_word(va, rng, max_len, 1): 1} for _ in range(n)]


def test_vacuum_and_derivative():
    va = ALGEBRAS["vir"]
    L = va.gen("L")
    assert va.nop(va.one, L) == L == va.nop(L, va.one)
    assert va.one.d() == va.zero
    assert not va.bracket_raw(va.one, L)


def test_virasoro_bracket_with_a_product():
    va = ALGEBRAS["vir"]
    L = va.gen("L")
    got = va.bracket_raw(L, va.nop(L, L))
    # integral term: (C/12) * int_0^l (2l - m) m^3 dm = C/40 l^5
    assert got[5] == {((va.index("C"), 0),): Q(1, 40)}
    assert got[0] == va._coerce(va.nop(L, L.d()) * 2 - L.d(3) * Q(1, 6))


@settings(max_examples=25, deadline=None)
@given(names, seeds)
def test_d_is_a_derivation_of_the_product(name, seed):
    va = ALGEBRAS[name]
    x, y = (va.element(w) for w in words(va, seed, 2, 3))
    assert va.nop(x, y).d() == va.nop(x.d(), y) + va.nop(x, y.d())


@settings(max_examples=25, deadline=None)
@given(names, seeds)
def test_sesquilinearity(name, seed):
    va = ALGEBRAS[name]
    x, y = words(va, seed, 2)
    br = va._br_vec(x, y)
    left = va._br_vec(va._dpow(x, 1), y)
    assert left == {n + 1: {w: -c for w, c in v.items()} for n, v in br.items()}
    right = va._br_vec(x, va._dpow(y, 1))
    want = {}
    for n, v in br.items():
        for m, u in ((n, va._dpow(v, 1)), (n + 1, v)):
            if u:
                _add(want.setdefault(m, {}), u)
    assert right == {n: v for n, v in want.items() if v}


@settings(max_examples=15, deadline=None)
@given(names, seeds)
def test_nth_products_are_lambda_coefficients(name, seed):
    va = ALGEBRAS[name]
    x, y = (va.element(w) for w in words(va, seed, 2))
    br = va.bracket_raw(x, y)
    fact = 1
    for n in range(5):
        fact *= max(n, 1)
        assert va.nth_product(x, n, y) == va.element({w: c * fact for w, c in br.get(n, {}).items()})


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_leibniz_for_the_odd_derivation(seed):
    va = ALGEBRAS["bc_betagamma"]
    D = va.pres.derivation("D")
    x, y = (va.element(w) for w in words(va, seed, 2, 3))
    sign = -1 if x.parity else 1
    assert D(va.nop(x, y)) == va.nop(D(x), y) + va.nop(x, D(y)) * sign


def test_engine_suite_small():
    for name in ("betagamma", "bc_betagamma"):
        rep = check_engine(ALGEBRAS[name], seed=5, pairs=20, triples=20)
        assert rep.passed and len(rep.entries) == 40


def test_engine_suite_is_seed_deterministic():
    va = ALGEBRAS["vir"]
    a = check_engine(va, seed=9, pairs=5, triples=3).to_dict()
    b = check_engine(va, seed=9, pairs=5, triples=3).to_dict()
    assert a == b


def test_specialize_central():
    va = ALGEBRAS["vir"].specialize_central({"C": 1})
    assert va.bracket_raw(va.gen("L"), va.gen("L"))[3] == {(): Q(1, 12)}


def test_unknown_generator():
    with pytest.raises(KeyError):
        ALGEBRAS["vir"].gen("G")
