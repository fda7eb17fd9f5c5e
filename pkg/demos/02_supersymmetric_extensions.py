"""From a Lie conformal algebra to its N=1, N=2, N=3 extensions."""
from pathlib import Path

from susyva.lca import LcaPresentation, build_named
from susyva.susy import (Lambda_bracket, SusyStructure, check_sef, check_susy_structure,
                         extend_N1, extend_N2, extend_N3)

DATA = Path(__file__).resolve().parent.parent / "data"

# %% Centerless Virasoro gets a parity-reversed partner L_bar with D(L_bar) = L.
vir0 = LcaPresentation.from_text((DATA / "vir_centerless.alg").read_text())
v1, D = extend_N1(vir0)
print(v1.render())
print(check_sef(v1))

# The result is an N=1 SUSY LCA; its Lambda-bracket packs two lambda-brackets.
S1 = SusyStructure(v1.algebra(), [D])
va = S1.va
print("[L_bar_L L_bar] =", Lambda_bracket(S1, va.gen("L_bar"), va.gen("L_bar")))

# %% Going up: each step doubles the generators and adds one derivation.
v2, S2 = extend_N2(v1)
print("N=2 generators:", v2.names, check_susy_structure(S2).passed)
v3, S3 = extend_N3(v2)
print("N=3 generators:", len(v3.names), check_susy_structure(S3).passed)

# %% Not every designated set extends.  Here no choice of the missing
# brackets satisfies the first extension formula.
bad = LcaPresentation.from_text((DATA / "betagamma_case2.alg").read_text())
print(check_sef(bad))

# %% The extended bc-beta-gamma system ships with two derivations.
ext = build_named("ext_bc_betagamma")
S = SusyStructure.from_presentation(ext, ["D1", "D2"])
print(S, check_susy_structure(S).passed)
