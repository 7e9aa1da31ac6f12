"""A walk through K^x/(K^x)^p and its Hilbert pairing over Q3(zeta3) and Q3(zeta9).

    python3 demos/hilbert_tour.py
"""

from __future__ import annotations

from psl.filtration import basis_levels, dimension, graded_dimensions, working_field
from psl.hilbert import bloch_kato_check, exponent, image_order, pairing_matrix, sigma_kernel_cokernel_dims
from psl.padic import PadicField, cyclotomic_eisenstein


def show_field(K: PadicField) -> None:
    print(f"== {K.name}: [K:Q_p] = {K.degree}, e = {K.e}, p*e0 = {K.pe0}")
    print(f"   K^x/(K^x)^p has dimension {dimension(K)} with basis levels {basis_levels(K)}")
    print(f"   graded pieces U^m/U^(m+1), m = 0..{K.pe0 + 2}: {graded_dimensions(K, K.pe0 + 2)}")
    pm = pairing_matrix(K)
    print(f"   pairing matrix (skew: {pm.is_skew()}, rank {pm.rank()}):")
    for row in pm.rows():
        print("     " + " ".join(str(x) for x in row))


def main() -> None:
    q3z3 = PadicField(3, eisenstein=cyclotomic_eisenstein(3), name="Q3(zeta3)")
    q3z9 = PadicField(3, eisenstein=cyclotomic_eisenstein(3, 2), name="Q3(zeta9)")
    for K in (q3z3, q3z9):
        show_field(K)

    # The pairing of U^m with U^n dies once m + n passes p*e0; when both are
    # multiples of p the boundary cell itself dies too.
    print("\nimage order of U^3 x U^3:")
    print(f"   over Q3(zeta3) (p*e0 = 3): {image_order(q3z3, 3, 3)}")
    print(f"   over Q3(zeta9) (p*e0 = 9): {image_order(q3z9, 3, 3)}")

    W = working_field(q3z3)
    a, b = W.one + W.pi, W.one + W.pi**2
    print(f"\n(1+pi, 1+pi^2) = zeta^{exponent(a, b, W)},  (1+pi^2, 1+pi) = zeta^{exponent(b, a, W)}")

    # The chain relation between level pe0 - n and the top level. The sign
    # printed here is the one the pairing actually produces.
    print("\nexponent(1 + x pi^(pe0-n), 1 + pi^n) against n * exponent(1 + x pi^pe0, pi):")
    for x in W.residue.elements():
        for n in (1, 2):
            lhs, minus_n = bloch_kato_check(q3z3, x, n)
            plus_n = (-minus_n) % 3
            print(f"   x = {x[0]}, n = {n}: {lhs} vs {plus_n}")
    print(f"\nsigma(x) = x^p + a x has kernel/cokernel dimensions {sigma_kernel_cokernel_dims(q3z3)}")


if __name__ == "__main__":
    main()
