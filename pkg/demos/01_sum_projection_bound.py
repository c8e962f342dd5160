"""Demonstrate the sum-projection entropy bound h(sum X_i / sqrt n) >= h(X)/n.

The bound holds for any random vector whose density is invariant under
coordinate sign flips, dependent coordinates included.  Gaussian laws meet
it with equality; non-Gaussian symmetric laws in n >= 3 are strictly above.
"""

import numpy as np

import symentropy as se

budget = se.Budget(samples=100_000, seed=0)

print("=" * 70)
print("Sum-projection bound on three symmetric laws")
print("=" * 70)

laws = {
    "i.i.d. standard normal, n=3": se.gaussian_iid(3),
    "product of bimodal coordinates, n=3": se.bimodal_product(3),
    "rotated i.i.d. bimodal pair, n=2": se.rotated_bimodal(),
}

for name, law in laws.items():
    report = se.verify_main(law, budget)
    print(f"\n{name}")
    print(f"  h(sum/sqrt n) = {report.lhs.value:.5f}  (quadrature)")
    print(f"  h(X)/n        = {report.rhs:.5f}  (Monte Carlo, {report.budget} samples)")
    print(f"  gap = {report.gap:+.5f} +/- {report.sigma:.5f}  ->  {report.verdict}")

print("\n" + "=" * 70)
print("Directional version: h(a.X) >= h(X)/n + log(n^{n/2} prod |a_i|)")
print("=" * 70)

law = se.gaussian_iid(2)
for theta_deg in (15, 30, 45, 60):
    theta = np.radians(theta_deg)
    a = np.array([np.cos(theta), np.sin(theta)])
    report = se.verify_directional(law, a, budget)
    print(
        f"  theta={theta_deg:3d} deg: h(a.X)={report.lhs.value:.5f}, "
        f"bound={report.rhs:.5f}, margin={report.gap:+.5f} -> {report.verdict}"
    )
print("\nThe bound is tight exactly at the diagonal direction (45 deg).")

print("\n" + "=" * 70)
print("Symmetry is necessary: a correlated Gaussian violates the bound")
print("=" * 70)

report = se.asymmetric_counterexample()
print(f"  rho=-0.9: gap = {report.gap:.6f} (closed form) -> {report.verdict}")
report = se.asymmetric_counterexample(rho=0.9)
print(f"  rho=+0.9: gap = {report.gap:.6f} -> {report.verdict} (asymmetry permits,")
print("            but does not force, a violation)")
