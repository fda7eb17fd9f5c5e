"""Superconformal vectors: free fields, Kac-Todorov, shifts and BRST."""
from susyva.coeff import param, render_scalar
from susyva.lca import build_named, sl2, specialize_presentation
from susyva.sconf import (SconfCandidate, brst_tau, kac_todorov, shift_superconformal,
                          tau_charged, verify_superconformal)

# %% bc-beta-gamma at C = 1: G = (d gamma) b + c beta has central charge 3.
va = specialize_presentation(build_named("bc_betagamma"), {"C": 1}).algebra()
b, c, beta, gamma = (va.gen(n) for n in ("b", "c", "beta", "gamma"))
cert = verify_superconformal(SconfCandidate("N1", G=va.nop(gamma.d(), b) + va.nop(c, beta)))
print("L =", cert.L)
print("charge:", cert.charge_str())

# %% Kac-Todorov vector of sl2 at a symbolic level k.
k = param("k")
tau = kac_todorov(sl2(), k)
cert = verify_superconformal(SconfCandidate("N1", G=tau))
print("tau =", tau)
print("charge:", cert.charge_str(), cert.passed)

# %% Charged free fermions and the shift law c -> c + 6 c1 - 3 c2.
m = param("m")
grading = {"e": 1, "h": 0, "f": -1}
tau0 = tau_charged(sl2(), grading)
fva = tau0.va
v = fva.nop(fva.gen("phi_e"), fva.gen("phib_e")) * m
_, shifted = shift_superconformal(tau0, v)
print("shifted charge:", shifted.charge_str(),
      "c1 =", render_scalar(shifted.extra["c1"]), "c2 =", render_scalar(shifted.extra["c2"]))

# %% The BRST complex for the principal grading.
tau, cert = brst_tau(sl2(), grading, k, {"h": 1})
print("BRST charge:", cert.charge_str(), cert.passed)
