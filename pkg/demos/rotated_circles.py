"""
Beyond the three standard circles: rotated great circles.

A rotz(phi) circle is the hd circle turned about the H-V axis; phi = pi/2
gives hr.  A rotx(beta) circle is hd turned about the D-A axis; beta = pi/2
gives dr as a set.  For each pair of rotation angles the maximum |S| over
the four measurement angles is found numerically and cross-checked against
the closed form 2 ||M||_F, with M the 2x2 block of T seen by the two
circle planes.

For phi+ in the zz panel the Tsirelson ridge lies on phi_B = -phi_A
(mod pi): mirror-image circles, which includes hd-hd and hr-hr.  For
random maximally entangled states a search over the rotated family still
reaches the Horodecki bound.

=== EXAMPLE OUTPUT ===
phi+ panel zz, rotation angles 0, pi/4, pi/2, 3pi/4, pi:
[[2.828 2.449 2.    2.449 2.828]
 [2.449 2.    2.449 2.828 2.449]
 [2.    2.449 2.828 2.449 2.   ]
 [2.449 2.828 2.449 2.    2.449]
 [2.828 2.449 2.    2.449 2.828]]
chi panel zz, rotation angles 0, pi/4, pi/2, 3pi/4, pi:
[[2.    2.449 2.828 2.449 2.   ]
 [2.    2.236 2.449 2.236 2.   ]
 [2.    2.    2.    2.    2.   ]
 [2.    2.236 2.449 2.236 2.   ]
 [2.    2.449 2.828 2.449 2.   ]]
phi+ panel zx, rotation angles 0, pi/4, pi/2, 3pi/4, pi:
[[2.828 2.449 2.    2.449 2.828]
 [2.449 2.236 2.    2.236 2.449]
 [2.    2.    2.    2.    2.   ]
 [2.449 2.236 2.    2.236 2.449]
 [2.828 2.449 2.    2.449 2.828]]

numerical search vs closed form, 50 random cases: max difference 8.9e-16
random local-unitary phi+: best pair rotz:0.5683830408 / rotz:2.615011423 gives |S| = 2.82842712, Horodecki 2.82842712
"""
import numpy as np

from poincare_chsh import chsh, states

np.set_printoptions(precision=3, suppress=True, linewidth=120)

for tag, panel in [("phi+", "zz"), ("chi", "zz"), ("phi+", "zx")]:
    rho = states.density_matrix(states.make_named_state(tag))
    scan = chsh.circle_pair_scan(rho, panel, resolution=5, state=tag)
    print(f"{tag} panel {panel}, rotation angles 0, pi/4, pi/2, 3pi/4, pi:")
    print(scan.s_max)

rng = np.random.default_rng(7)
worst = 0.0
for _ in range(50):
    rho = states.density_matrix(states.random_pure_state(rng))
    ca, cb = (chsh.GreatCircle(k, rng.uniform(0, np.pi)) for k in rng.choice(["rotz", "rotx"], 2))
    worst = max(worst, abs(chsh.max_s_over_angles(rho, ca, cb).s_max - chsh.circle_pair_smax(rho, ca, cb)))
print(f"\nnumerical search vs closed form, 50 random cases: max difference {worst:.1e}")

psi = states.apply_local_unitaries(states.make_named_state("phi+"),
                                   states.random_unitary(rng), states.random_unitary(rng))
s, ca, cb = chsh.best_circle_pair(psi)
print(f"random local-unitary phi+: best pair {ca.label()} / {cb.label()} gives |S| = {s:.8f},"
      f" Horodecki {chsh.horodecki_smax(psi):.8f}")
