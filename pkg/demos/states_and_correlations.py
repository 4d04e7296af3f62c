"""
Polarization-entangled states and their correlation tensors.

Every two-photon polarization state here is a 4-vector ordered HH, HV, VH,
VV.  All CHSH physics flows through the 3x3 correlation tensor
T_ij = Tr[rho sigma_i (x) sigma_j], with H on the north pole, D on +x and
L on +y of the Poincare-Bloch sphere.  For measurement directions a and b
the correlation is simply <AB> = a.T.b.

The script prints T for the three Bell-type states used throughout,
checks the tabulated closed-form correlations against the tensor route,
and reports the Horodecki bound S_max = 2 sqrt(l1 + l2) from the two
largest eigenvalues of T^T T, including for a noisy and a product state.

=== EXAMPLE OUTPUT ===
phi+: T =
[[ 1.  0.  0.]
 [ 0. -1.  0.]
 [ 0.  0.  1.]]
  Horodecki S_max = 2.828427
phi'+: T =
[[0. 1. 0.]
 [1. 0. 0.]
 [0. 0. 1.]]
  Horodecki S_max = 2.828427
chi: T =
[[ 0.  0. -1.]
 [ 1.  0.  0.]
 [ 0.  1.  0.]]
  Horodecki S_max = 2.828427

closed forms vs a.T.b on a 25x25 grid:
  phi+   hd-hd: max deviation 4.5e-16
  phi'+  hd-hd: max deviation 2.2e-16
  chi    hd-hd: max deviation 0.0e+00
  phi+   hr-hr: max deviation 9.4e-16
  phi'+  hr-hr: max deviation 2.2e-16
  chi    hr-hr: max deviation 0.0e+00
  phi+   dr-dr: max deviation 9.4e-16
  phi'+  dr-dr: max deviation 9.4e-16
  chi    dr-dr: max deviation 0.0e+00
  phi'+  hd-hr: max deviation 4.5e-16
  chi    hd-hr: max deviation 3.3e-16
  phi+   hd-hr: max deviation 2.2e-16

phi+ with 30% white noise: S_max = 1.979899 (0.7 * 2 sqrt 2 = 1.979899)
|HH>: S_max = 2.000000
"""
import numpy as np

from poincare_chsh import chsh, correlations, states
from poincare_chsh.bases import DR, HD, HR

np.set_printoptions(precision=4, suppress=True)
CIRCLES = {"hd": HD, "hr": HR, "dr": DR}

for tag in ("phi+", "phi'+", "chi"):
    rho = states.density_matrix(states.make_named_state(tag))
    print(f"{tag}: T =")
    print(correlations.correlation_matrix(rho))
    print(f"  Horodecki S_max = {chsh.horodecki_smax(rho):.6f}")

print("\nclosed forms vs a.T.b on a 25x25 grid:")
for kind, pair in correlations.CLOSED_FORM_TABLE:
    ca, cb = (CIRCLES[c] for c in pair.split("-"))
    T = correlations.correlation_matrix(states.make_named_state(kind))
    xa, xb = np.linspace(0, ca.period, 25), np.linspace(0, cb.period, 25)
    dev = np.abs(ca.bloch_native(xa) @ T @ cb.bloch_native(xb).T
                 - correlations.closed_form_expectation(states.NamedState(kind), pair, xa[:, None], xb))
    print(f"  {kind:6s} {pair}: max deviation {dev.max():.1e}")

noisy = states.mix_with_white_noise(states.make_named_state("phi+"), 0.3)
print(f"\nphi+ with 30% white noise: S_max = {chsh.horodecki_smax(noisy):.6f}"
      f" (0.7 * 2 sqrt 2 = {0.7 * 2 * np.sqrt(2):.6f})")
print(f"|HH>: S_max = {chsh.horodecki_smax(states.TwoQubitState([1, 0, 0, 0])):.6f}")
