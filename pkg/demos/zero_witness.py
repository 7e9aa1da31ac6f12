"""Show that symbols with trivial pairing vanish, by explicit norms and the projection formula.

    python3 demos/zero_witness.py
"""

from __future__ import annotations

from psl.filtration import working_field
from psl.mackey import certify_block, evaluate_h, make_symbol, replay_witness, trivial_symbols, zero_witness
from psl.padic import PadicField, cyclotomic_eisenstein


def main() -> None:
    K = PadicField(3, eisenstein=cyclotomic_eisenstein(3), name="Q3(zeta3)")
    W = working_field(K)

    # A unit against an element of level p*e0: K(b^(1/p)) is unramified and
    # every unit is a norm from it.
    t = make_symbol(W, W.one + W.pi, W.one + W.pi**3)
    print(f"symbol {t.describe()}, pairing exponent {evaluate_h(t)}")
    trace = zero_witness(t)
    print(trace.render())
    print(f"replayed: {replay_witness(trace) == []}\n")

    # A pair of units with trivial pairing, lifted through a ramified Kummer extension.
    t = trivial_symbols(K, "norm-of-unit", 1, seed=7)[0]
    trace = zero_witness(t)
    print(trace.render())
    print(f"replayed: {replay_witness(trace) == []}\n")

    # The same machinery certifies a zero block of the product.
    cert = certify_block(K, 0, 3, samples=30, witnesses=3)
    print(f"U^0 (x) U^3: dimension {cert.dimension} by '{cert.rule}'; {cert.evidence}")
    cert = certify_block(K, "full", 3)
    print(f"full (x) U^3: dimension {cert.dimension}; {cert.evidence}")


if __name__ == "__main__":
    main()
