"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (the lines are printed in the terminal summary) or directly:
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import K8, Q3, Q3Z3, Q3Z9, Q5Z5, Q9Z3  # noqa: E402
from psl.elliptic import (  # noqa: E402
    GOOD_ORDINARY,
    GOOD_SUPERSINGULAR,
    SPLIT_MULTIPLICATIVE,
    CurveModel,
    NewtonSegment,
    classify_reduction,
    descriptor_dimension,
    kummer_image,
    kummer_levels,
    p_series_newton,
    t0_invariant,
)
from psl.filtration import graded_dimensions, predicted_graded_dim, working_field  # noqa: E402
from psl.hilbert import (  # noqa: E402
    bloch_kato_check,
    exponent,
    image_order,
    image_order_table,
    pairing_matrix,
    sigma_kernel_check,
    sigma_kernel_cokernel_dims,
    symbol_trivial,
)
from psl.mackey import dims_grid, replay_witness, trivial_symbols, zero_witness  # noqa: E402
from psl.padic import PadicField, cyclotomic_eisenstein  # noqa: E402
from psl.reports import chow_rank, gm_e_rank  # noqa: E402

SEED = 20240601
GRADED_FIELDS = [Q3Z3, Q3Z9, Q5Z5, Q9Z3]
TEST_FIELDS = [Q3Z3, Q3Z9, Q5Z5, Q9Z3, K8]
Q3Z27 = PadicField(3, eisenstein=cyclotomic_eisenstein(3, 3), name="Q3(zeta27)")

RESULTS: dict[int, tuple[str, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = ("PASS" if ok else "FAIL", detail)


def summary_lines() -> list[str]:
    return [f"criterion {n:2d}: {RESULTS[n][0]}  {RESULTS[n][1]}" for n in sorted(RESULTS)]


# -- 1 --------------------------------------------------------------------------------------
def check_graded_pieces():
    start = time.perf_counter()
    bad = []
    for K in GRADED_FIELDS:
        top = K.pe0 + 2
        got = graded_dimensions(K, top)
        want = [predicted_graded_dim(K, m) for m in range(top + 1)]
        if got != want:
            bad.append((K.name, got, want))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record(1, ok, f"graded dims match on {len(GRADED_FIELDS)} fields, m in [0, pe0+2]; {elapsed:.1f}s; mismatches {bad}")
    return ok


# -- 2 --------------------------------------------------------------------------------------
def check_image_orders():
    start = time.perf_counter()
    bad = []
    cells = 0
    for K in (Q3Z3, Q3Z9):
        tab = image_order_table(K, K.pe0 + 1)
        cells += len(tab)
        bad += [(K.name, c["m"], c["n"]) for c in tab if not c["match"]]
    strict = (image_order(Q3Z3, 3, 3), image_order(Q3Z9, 3, 3))
    elapsed = time.perf_counter() - start
    ok = not bad and strict == (1, 3) and elapsed < 60
    record(2, ok, f"{cells} cells, mismatches {bad}; cell (3,3): order {strict[0]} vs {strict[1]}; {elapsed:.1f}s")
    return ok


# -- 3 --------------------------------------------------------------------------------------
def _sample(W, rng):
    while True:
        x = W.element([rng.randrange(W.modulus) for _ in range(W.e * W.f)])
        if x.is_unit():
            return x * W.pi ** rng.randrange(W.p)


def check_pairing_properties(samples: int = 200):
    failures = []
    for K in TEST_FIELDS:
        W = working_field(K)
        p = W.p
        pm = pairing_matrix(K)
        if not (pm.is_skew() and pm.rank() == K.degree + 2):
            failures.append((K.name, "matrix"))
        rng = random.Random(f"{SEED}:{K.name}")
        for _ in range(samples):
            a, b, c = _sample(W, rng), _sample(W, rng), _sample(W, rng)
            if exponent(a * b, c, W) != (exponent(a, c, W) + exponent(b, c, W)) % p:
                failures.append((K.name, "bilinear"))
            if exponent(a, b, W) != (-exponent(b, a, W)) % p:
                failures.append((K.name, "skew"))
            one_minus = W.one - a
            if not one_minus.is_zero() and not symbol_trivial(a, one_minus, W):
                failures.append((K.name, "steinberg"))
            if exponent(a, -a, W) != 0:
                failures.append((K.name, "steinberg(-a)"))
    ok = not failures
    record(3, ok, f"{samples} samples x {len(TEST_FIELDS)} fields; full-rank skew matrices; failures {failures[:5]}")
    return ok


# -- 4 --------------------------------------------------------------------------------------
def identity_data():
    K = Q3Z3
    W = working_field(K)
    p = W.p
    rows = [(x, n, *bloch_kato_check(K, x, n)) for x in W.residue.elements() for n in range(1, W.pe0) if n % p]
    literal_fail = [(x, n) for x, n, lhs, rhs in rows if lhs != rhs]
    corrected_fail = [(x, n) for x, n, lhs, rhs in rows if (lhs + rhs) % p]
    sigma_fail = [x for x in W.residue.elements() if sigma_kernel_check(K, x)]
    dims = sigma_kernel_cokernel_dims(K)
    return rows, literal_fail, corrected_fail, sigma_fail, dims


def check_identities():
    rows, literal_fail, corrected_fail, sigma_fail, dims = identity_data()
    ok = not literal_fail and not sigma_fail and dims == (1, 1)
    record(
        4,
        ok,
        f"literal chain with -n fails on {len(literal_fail)}/{len(rows)} (x, n) pairs {literal_fail}; "
        f"with +n it fails on {len(corrected_fail)}; sigma-image pairs trivially with pi for all x "
        f"({'ok' if not sigma_fail else sigma_fail}); dim ker/coker = {dims}. See the decisions ledger.",
    )
    return ok


# -- 5 --------------------------------------------------------------------------------------
def check_witnesses(count: int = 50):
    stats = {}
    for pattern in ("unramified", "norm-of-unit"):
        done = total = 0
        for K in GRADED_FIELDS:
            for t in trivial_symbols(K, pattern, count, seed=SEED):
                total += 1
                trace = zero_witness(t)
                if trace.pattern == pattern and not trace.final and not replay_witness(trace):
                    done += 1
        stats[pattern] = (done, total)
    ok = all(d == t and t >= count for d, t in stats.values())
    record(5, ok, "; ".join(f"{k}: {d}/{t} replayed to zero" for k, (d, t) in stats.items()))
    return ok


# -- 6 --------------------------------------------------------------------------------------
def check_grid(samples: int = 40, witnesses: int = 2):
    bad = []
    classified = nonzero = unclassified = 0
    for K in TEST_FIELDS:
        for cert in dims_grid(K, samples=samples, witnesses=witnesses, seed=SEED):
            if cert.dimension is None:
                unclassified += 1
                continue
            classified += 1
            if cert.dimension == 1:
                nonzero += 1
                if not cert.evidence.startswith("h("):
                    bad.append((K.name, cert.blocks))
            if not cert.ok:
                bad.append((K.name, cert.blocks))
    ok = not bad
    record(6, ok, f"{classified} classified cells on {len(TEST_FIELDS)} fields ({nonzero} nonzero, each with a "
                  f"nontrivial symbol); {unclassified} cells have no structure rule; failures {bad}")
    return ok


# -- 7 --------------------------------------------------------------------------------------
def check_newton():
    start = time.perf_counter()
    ss = CurveModel(Q3, (0, 0, 0, 1, 0))
    ordinary = CurveModel(Q3, (0, -1, 1, 0, 0))
    got_ss = p_series_newton(ss)
    got_ord = p_series_newton(ordinary)
    t0 = t0_invariant(ss.base_change(K8))
    products = []
    for K in (Q3, Q3Z3, Q3Z9, K8):
        for a in ((0, 0, 0, 1, 0), (0, -1, 1, 0, 0)):
            segs = p_series_newton(CurveModel(K, a))
            products.append(sum(s.slope * s.multiplicity for s in segs) == K.e)
    elapsed = time.perf_counter() - start
    ok = (
        got_ss == [NewtonSegment(Fraction(1, 8), 8)]
        and got_ord == [NewtonSegment(Fraction(1, 2), 2)]
        and t0 == 1 and 0 < t0 < K8.e0
        and all(products)
        and elapsed < 30
    )
    record(7, ok, f"supersingular {[(str(s.slope), s.multiplicity) for s in got_ss]}, "
                  f"ordinary {[(str(s.slope), s.multiplicity) for s in got_ord]}, t0 = {t0} over e = 8; "
                  f"slope*mult = v(p) on {sum(products)}/{len(products)} curves; {elapsed:.1f}s")
    return ok


# -- 8 --------------------------------------------------------------------------------------
def check_descriptors():
    checked = bad = 0
    for K in TEST_FIELDS + [Q3Z27]:
        want = K.degree + 2
        options = [kummer_levels(K, GOOD_ORDINARY), kummer_levels(K, SPLIT_MULTIPLICATIVE)]
        options += [kummer_levels(K, GOOD_SUPERSINGULAR, t0) for t0 in range(1, int(K.e0))]
        for levels in options:
            checked += 1
            bad += descriptor_dimension(K, levels) != want
    ok = bad == 0
    record(8, ok, f"{checked} descriptors (all integral t0 in (0, e0)) on {len(TEST_FIELDS) + 1} fields, {bad} off")
    return ok


# -- 9 --------------------------------------------------------------------------------------
def check_ranks():
    ordinary = CurveModel(K8, (0, -1, 1, 0, 0), "ordinary")
    ss = CurveModel(K8, (0, 0, 0, 1, 0), "supersingular")
    split = CurveModel(K8, (0, 1, 0, 0, 3), "split")
    assert [classify_reduction(E) for E in (ordinary, ss, split)] == [
        GOOD_ORDINARY, GOOD_SUPERSINGULAR, SPLIT_MULTIPLICATIVE]
    deg = K8.degree
    rows = []
    ok = True
    for E1 in (ordinary, split):
        for E2 in (ordinary, ss, split):
            rep = chow_rank(E1, E2, samples=20, seed=SEED)
            want = 2 * deg + (6 if classify_reduction(E1) == classify_reduction(E2) else 7)
            good = rep.total == want and rep.match and bool(rep.blocks) and all(b["ok"] for b in rep.blocks)
            ok = ok and good
            rows.append(f"{E1.name}/{E2.name}={rep.total}")
    gm = (gm_e_rank(split), gm_e_rank(ordinary), gm_e_rank(ss))
    ok = ok and gm == (1, 2, 2)
    record(9, ok, f"[K:Q3] = {deg}: {', '.join(rows)}; gm_e_rank mult/ord/ss = {gm}")
    return ok


# -- 10 -------------------------------------------------------------------------------------
def check_determinism():
    cmd = [sys.executable, "-m", "psl.cli", "report", "--seed", str(SEED)]
    outs, times, codes = [], [], []
    for _ in range(2):
        start = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, text=True)
        times.append(time.perf_counter() - start)
        outs.append(proc.stdout)
        codes.append(proc.returncode)
    same = outs[0] == outs[1] and bool(outs[0])
    ok = same and codes == [0, 0] and max(times) < 300
    record(10, ok, f"two runs byte-identical: {same}; exit codes {codes}; "
                   f"runtime {max(times):.1f}s (limit 300s); {outs[0].strip().splitlines()[-1] if outs[0] else ''}")
    return ok


# -- pytest entry points --------------------------------------------------------------------
def test_criterion_01_graded_pieces():
    assert check_graded_pieces()


def test_criterion_02_image_orders():
    assert check_image_orders()


def test_criterion_03_pairing_properties():
    assert check_pairing_properties()


def test_criterion_04_identities():
    check_identities()
    _, _, corrected_fail, sigma_fail, dims = identity_data()
    # what does hold: the chain with +n, the sigma identity and the dimensions
    assert not corrected_fail and not sigma_fail and dims == (1, 1)


@pytest.mark.xfail(strict=True, reason="the chain identity as stated (with -n) is false; see the ledger")
def test_criterion_04_literal_chain():
    _, literal_fail, _, _, _ = identity_data()
    assert not literal_fail


def test_criterion_05_witnesses():
    assert check_witnesses()


def test_criterion_06_grid():
    assert check_grid()


def test_criterion_07_newton():
    assert check_newton()


def test_criterion_08_descriptors():
    assert check_descriptors()


def test_criterion_09_ranks():
    assert check_ranks()


def test_criterion_10_determinism():
    assert check_determinism()


CHECKS = [check_graded_pieces, check_image_orders, check_pairing_properties, check_identities,
          check_witnesses, check_grid, check_newton, check_descriptors, check_ranks, check_determinism]


if __name__ == "__main__":
    for fn in CHECKS:
        fn()
        n = max(RESULTS)
        print(f"criterion {n:2d}: {RESULTS[n][0]}  {RESULTS[n][1]}", flush=True)
    sys.exit(0 if all(status == "PASS" for status, _ in RESULTS.values()) else 1)
