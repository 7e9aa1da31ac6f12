"""From [p]-series Newton polygons to Kummer images and the rank of CH_0(E1 x E2)/p.

    python3 demos/curves_and_ranks.py
"""

from __future__ import annotations

from psl.elliptic import CurveModel, classify_reduction, kummer_image, p_series_newton, t0_invariant
from psl.padic import PadicField
from psl.reports import chow_rank, gm_e_rank

SUPERSINGULAR = (0, 0, 0, 1, 0)  # y^2 = x^3 + x
ORDINARY = (0, -1, 1, 0, 0)      # y^2 + y = x^3 - x^2
SPLIT = (0, 1, 0, 0, 3)          # y^2 = x^3 + x^2 + 3


def polygon(E: CurveModel) -> str:
    return ", ".join(f"{s.slope} x{s.multiplicity}" for s in p_series_newton(E))


def main() -> None:
    q3 = PadicField(3, name="Q3")
    # Q3(zeta3) with a fourth root of its uniformizer adjoined: e = 8, e0 = 4
    k8 = PadicField(3, eisenstein=(3, 0, 0, 0, 3, 0, 0, 0, 1), name="K8")

    for a, label in ((SUPERSINGULAR, "y^2=x^3+x"), (ORDINARY, "y^2+y=x^3-x^2")):
        E = CurveModel(q3, a)
        print(f"{label} over Q3: {classify_reduction(E)}, [p]-series slopes {polygon(E)}")

    E = CurveModel(k8, SUPERSINGULAR)
    print(f"\nover K8 the supersingular slopes are {polygon(E)}, so t0 = {t0_invariant(E)}")

    curves = {
        "ordinary": CurveModel(k8, ORDINARY),
        "supersingular": CurveModel(k8, SUPERSINGULAR),
        "split": CurveModel(k8, SPLIT),
    }
    print("\nKummer images (filtration levels of the two coordinates):")
    for name, E in curves.items():
        desc = kummer_image(E)
        print(f"   {name:13s} {desc.levels}, dimension {desc.dimension}, K(K; G_m, E)/p rank {gm_e_rank(E)}")

    print(f"\nrank of CH_0(E1 x E2)/p over K8 ([K:Q3] = {k8.degree}):")
    for n1 in ("ordinary", "split"):
        for n2 in curves:
            rep = chow_rank(curves[n1], curves[n2], samples=10)
            print(f"   {n1:9s} x {n2:13s}: {rep.total}  {rep.breakdown}")


if __name__ == "__main__":
    main()
