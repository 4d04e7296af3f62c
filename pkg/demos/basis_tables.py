"""
Which pairs of measurement circles can violate the CHSH inequality?

Each photon is measured with two settings drawn from one great circle of
the Poincare sphere: hd (linear polarizations), hr (H, R, V, L) or
dr (D, R, A, L).  For each ordered pair of circles the script maximizes
|S| over all four angles (a coarse grid followed by exact sinusoidal
coordinate ascent) and prints the 3x3 table.

Only two values ever appear: 2 sqrt 2 (Tsirelson bound) where the
correlation tensor maps one circle's plane onto the other, and 2 where
it does not.  For chi the order of the photons matters: (hd, hr) violates
while (hr, hd) does not.

=== EXAMPLE OUTPUT ===
phi+          hd        hr        dr
    hd  2.828427  2.000000  2.000000
    hr  2.000000  2.828427  2.000000
    dr  2.000000  2.000000  2.828427

phi'+         hd        hr        dr
    hd  2.000000  2.828427  2.000000
    hr  2.828427  2.000000  2.000000
    dr  2.000000  2.000000  2.828427

chi           hd        hr        dr
    hd  2.000000  2.828427  2.000000
    hr  2.000000  2.000000  2.828427
    dr  2.828427  2.000000  2.000000

chi (hd, hr) optimum, native angles (alpha_a, alpha_a', theta_b, theta_b'):
  0.000000, 0.785398, 2.356194, 3.926991 -> |S| = 2.828427
"""
from poincare_chsh import chsh, states
from poincare_chsh.bases import DR, HD, HR

CIRCLES = (HD, HR, DR)

for tag in ("phi+", "phi'+", "chi"):
    rho = states.density_matrix(states.make_named_state(tag))
    print(f"{tag:6s}" + "".join(f"{c.kind:>10}" for c in CIRCLES))
    for ca in CIRCLES:
        row = [chsh.max_s_over_angles(rho, ca, cb).s_max for cb in CIRCLES]
        print(f"{ca.kind:>6s}" + "".join(f"{s:10.6f}" for s in row))
    print()

r = chsh.max_s_over_angles(states.make_named_state("chi"), HD, HR)
print("chi (hd, hr) optimum, native angles (alpha_a, alpha_a', theta_b, theta_b'):")
print("  " + ", ".join(f"{x:.6f}" for x in r.setting.params), f"-> |S| = {r.s_max:.6f}")
