"""Lambda-brackets in the universal enveloping vertex algebra.

Run with ``python3 demos/01_lambda_brackets.py``.
"""
from susyva.lca import build_named, check_lca_axioms, cur_presentation, sl2

# %% The Virasoro conformal algebra, read from its builtin presentation.
vir = build_named("vir")
print(vir.render())
print("axioms:", "PASS" if check_lca_axioms(vir).passed else "FAIL")

va = vir.algebra()
L = va.gen("L")

# %% Brackets with normally ordered products go through the Wick formula.
LL = va.nop(L, L)
print("[L_l LL] =", va.bracket(L, LL))

# n-th products are the lambda coefficients times n!
for n in range(4):
    print(f"L_({n})L =", va.nth_product(L, n, L))

# %% Current algebra of sl2 with its central element K.
cur = cur_presentation(sl2()).algebra()
e, f, h = (cur.gen(x) for x in "efh")
print("[e_l f] =", cur.bracket(e, f))
print("[h_l h] =", cur.bracket(h, h))
print("[e_l :fh:] =", cur.bracket(e, cur.nop(f, h)))
