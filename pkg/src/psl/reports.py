"""Rank calculators, session configuration and the verification report."""

from __future__ import annotations

import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from .elliptic import (
    GOOD_ORDINARY,
    GOOD_SUPERSINGULAR,
    SPLIT_MULTIPLICATIVE,
    CurveModel,
    analyze,
    classify_reduction,
    kummer_image,
)
from .errors import ConfigParse, HypothesisNotAsserted, PSLError, SupersingularFirstArgument
from .filtration import graded_dimensions, predicted_graded_dim, working_field
from .hilbert import (
    bloch_kato_check,
    exponent,
    image_order_table,
    pairing_matrix,
    sigma_kernel_check,
    sigma_kernel_cokernel_dims,
    symbol_trivial,
)
from .mackey import certify_block, curve_pair_blocks, dims_grid
from .padic import PadicField

SUITES = ("graded-pieces", "image-orders", "product-grid", "symbols-identities", "curves", "chow")
ADMISSIBLE = (GOOD_ORDINARY, GOOD_SUPERSINGULAR, SPLIT_MULTIPLICATIVE)


# -- ranks ---------------------------------------------------------------------------
@dataclass
class RankReport:
    total: int
    breakdown: dict
    blocks: list[dict]
    expected: int
    labels: tuple[str, str]
    interpretation: str = (
        "'same reduction type' read as equality of the labels ordinary / "
        "supersingular / split-multiplicative"
    )

    @property
    def match(self) -> bool:
        return self.total == self.expected and sum(self.breakdown.values()) == self.total


def _require_torsion(E: CurveModel, asserted: bool) -> None:
    if not asserted:
        raise HypothesisNotAsserted(f"E[p^n] in E(K) not asserted for {E.name or E.a}")


def chow_rank(E1: CurveModel, E2: CurveModel, n: int = 1, torsion_asserted: bool = True,
              samples: int = 20, seed: int = 0) -> RankReport:
    """Rank of CH_0(E1 x E2)/p^n as Z/p^n-module, assembled from its four parts."""
    if n < 1:
        raise ValueError("n must be positive")
    _require_torsion(E1, torsion_asserted)
    _require_torsion(E2, torsion_asserted)
    l1, l2 = classify_reduction(E1), classify_reduction(E2)
    if l1 == GOOD_SUPERSINGULAR:
        raise SupersingularFirstArgument("the first curve must not be supersingular")
    K = E1.field
    d = K.degree + 2
    pair = curve_pair_blocks(E1, E2, samples=samples, seed=seed)
    breakdown = {"degree": 1, "E1(K)/p^n": d, "E2(K)/p^n": d, "K(K;E1,E2)/p^n": pair.total_dimension}
    total = sum(breakdown.values())
    expected = 2 * K.degree + (6 if l1 == l2 else 7)
    return RankReport(total, breakdown, pair.blocks, expected, (l1, l2))


def gm_e_rank(E: CurveModel, n: int = 1, torsion_asserted: bool = True) -> int:
    """Rank of K(K; G_m, E)/p^n: nonzero blocks full (x) (Kummer image levels)."""
    _require_torsion(E, torsion_asserted)
    desc = kummer_image(E)
    total = 0
    for lv in desc.levels:
        cert = certify_block(E.field, "full", lv, samples=0)
        total += cert.dimension or 0
    return total


# -- configuration -------------------------------------------------------------------
@dataclass
class SessionConfig:
    fields: dict[str, PadicField]
    curves: dict[str, CurveModel]
    torsion: dict[str, bool]
    suites: list[str]
    seed: int = 0
    samples: int = 200
    witnesses: int = 5
    format: str = "md"

    @classmethod
    def from_json(cls, doc: dict) -> "SessionConfig":
        try:
            overrides = doc.get("precision_overrides", {})
            fields: dict[str, PadicField] = {}
            for fd in doc.get("fields", []):
                name = fd["name"]
                try:
                    K = PadicField.from_json(fd, name)
                    if name in overrides:
                        K = K.with_precision(int(overrides[name]))
                except PSLError as exc:
                    raise ConfigParse(f"field {name!r}: {exc}") from exc
                fields[name] = K
            curves: dict[str, CurveModel] = {}
            torsion: dict[str, bool] = {}
            for cd in doc.get("curves", []):
                name = cd["name"]
                try:
                    curves[name] = CurveModel.from_json(cd, fields)
                except (KeyError, PSLError, ValueError) as exc:
                    raise ConfigParse(f"curve {name!r}: {exc}") from exc
                torsion[name] = bool(cd.get("torsion_asserted", True))
            suites = list(doc.get("suites", []))
            unknown = [s for s in suites if s not in SUITES]
            if unknown:
                raise ConfigParse(f"unknown suites {unknown}")
            fmt = doc.get("format", "md")
            if fmt not in ("md", "csv", "json"):
                raise ConfigParse(f"unknown format {fmt!r}")
            return cls(fields, curves, torsion, suites, int(doc.get("seed", 0)),
                       int(doc.get("samples", 200)), int(doc.get("witnesses", 5)), fmt)
        except (KeyError, TypeError) as exc:
            raise ConfigParse(f"malformed config: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path | None = None) -> "SessionConfig":
        try:
            if path is None:
                text = resources.files("psl.data").joinpath("default_config.json").read_text()
            else:
                text = Path(path).read_text()
            doc = json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigParse(str(exc)) from exc
        return cls.from_json(doc)


def default_config() -> SessionConfig:
    return SessionConfig.load(None)


# -- report ---------------------------------------------------------------------------
@dataclass
class Check:
    suite: str
    name: str
    status: str  # PASS | FAIL | INFO
    detail: str = ""


@dataclass
class Report:
    seed: int
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(c.status == "FAIL" for c in self.checks)

    def render(self, fmt: str = "md") -> str:
        if fmt == "json":
            doc = {
                "seed": self.seed,
                "status": "FAIL" if self.failed else "PASS",
                "checks": [c.__dict__ for c in self.checks],
            }
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["suite", "check", "status", "detail"])
            for c in self.checks:
                w.writerow([c.suite, c.name, c.status, c.detail])
            return buf.getvalue()
        lines = ["# psl verification report", "", f"seed: {self.seed}", ""]
        suites: list[str] = []
        for c in self.checks:
            if c.suite not in suites:
                suites.append(c.suite)
        for s in suites:
            lines += [f"## {s}", "", "| check | status | detail |", "|---|---|---|"]
            for c in self.checks:
                if c.suite == s:
                    detail = c.detail.replace("|", "/")
                    lines.append(f"| {c.name} | {c.status} | {detail} |")
            lines.append("")
        n_fail = sum(c.status == "FAIL" for c in self.checks)
        lines.append(f"overall: {'FAIL' if self.failed else 'PASS'} ({len(self.checks)} checks, {n_fail} failed)")
        return "\n".join(lines) + "\n"


def _mu_fields(cfg: SessionConfig) -> list[tuple[str, PadicField]]:
    return [(n, K) for n, K in cfg.fields.items() if K.has_integral_e0]


def _suite_graded(cfg: SessionConfig, add: Callable) -> None:
    for name, K in _mu_fields(cfg):
        top = K.pe0 + 2
        got = graded_dimensions(K, top)
        want = [predicted_graded_dim(K, m) for m in range(top + 1)]
        add(name, got == want, f"graded dims m=0..{top}: {got}")


def _suite_orders(cfg: SessionConfig, add: Callable) -> None:
    for name, K in _mu_fields(cfg):
        tab = image_order_table(K)
        bad = [(c["m"], c["n"]) for c in tab if not c["match"]]
        add(name, not bad, f"{len(tab)} cells, mismatches {bad}")


def _suite_grid(cfg: SessionConfig, add: Callable) -> None:
    for name, K in _mu_fields(cfg):
        grid = dims_grid(K, samples=cfg.samples, witnesses=cfg.witnesses, seed=cfg.seed)
        bad = [c.blocks for c in grid if not c.ok]
        classified = [c for c in grid if c.dimension is not None]
        unclassified = [c for c in grid if c.dimension is None]
        nonzero = sum(1 for c in classified if c.dimension == 1)
        add(name, not bad,
            f"{len(classified)} classified cells ({nonzero} nonzero, each with a nontrivial symbol), "
            f"{len(unclassified)} outside the structure rules; failures {bad}")


def _suite_identities(cfg: SessionConfig, add: Callable) -> None:
    for name, K in _mu_fields(cfg):
        W = working_field(K)
        pm = pairing_matrix(K)
        add(f"{name}: pairing", pm.is_skew() and pm.rank() == pm.size,
            f"skew, rank {pm.rank()} of {pm.size}")
        F = W.residue
        bk = [bloch_kato_check(K, x, n) for x in F.elements() for n in range(1, W.pe0) if n % W.p]
        ok = all((l + r) % W.p == 0 for l, r in bk)
        add(f"{name}: chain exponent(1+x pi^(pe0-n), 1+pi^n) = n exponent(1+x pi^pe0, pi)", ok,
            f"{len(bk)} (x, n) pairs")
        sig = [sigma_kernel_check(K, x) for x in F.elements()]
        add(f"{name}: sigma-image pairs trivially with pi", not any(sig), f"{len(sig)} residues")
        ker, coker = sigma_kernel_cokernel_dims(K)
        add(f"{name}: dim ker/coker sigma", (ker, coker) == (1, 1), f"({ker}, {coker})")
        rng = random.Random(f"{cfg.seed}:{name}:steinberg")
        bad = 0
        count = min(cfg.samples, 50)
        for _ in range(count):
            a = W.element([rng.randrange(W.modulus) for _ in range(W.e * W.f)]) * W.pi ** rng.randrange(3)
            if a.is_zero() or (W.one - a).is_zero():
                continue
            if not symbol_trivial(a, W.one - a, W) or exponent(a, -a, W) != 0:
                bad += 1
        add(f"{name}: Steinberg", bad == 0, f"{count} samples, {bad} failures")


def _suite_curves(cfg: SessionConfig, add: Callable) -> None:
    for name, E in cfg.curves.items():
        info = analyze(E)
        detail = ", ".join(f"{k}={v}" for k, v in info.items())
        ok = True
        if "polygon" in info:
            ok = all(Fraction(s) * m == E.field.e for s, m in info["polygon"])
        if info.get("image") is not None:
            ok = ok and info["image_dim"] == E.field.degree + 2
        add(name, ok, detail)


def _suite_chow(cfg: SessionConfig, add: Callable) -> None:
    names = list(cfg.curves)
    for n1 in names:
        E1 = cfg.curves[n1]
        try:
            kummer_image(E1)
            add(f"gm_e_rank {n1}", True, f"{gm_e_rank(E1, torsion_asserted=cfg.torsion[n1])}")
        except PSLError as exc:
            add(f"gm_e_rank {n1}", None, f"skipped: {type(exc).__name__}")
        for n2 in names:
            E2 = cfg.curves[n2]
            if E1.field.shape != E2.field.shape:
                continue
            label = f"chow {n1} x {n2}"
            try:
                rep = chow_rank(E1, E2, torsion_asserted=cfg.torsion[n1] and cfg.torsion[n2],
                                samples=min(cfg.samples, 20), seed=cfg.seed)
            except PSLError as exc:
                add(label, None, f"skipped: {type(exc).__name__}: {exc}")
                continue
            add(label, rep.match,
                f"total {rep.total} = {rep.breakdown}, expected {rep.expected} ({rep.labels[0]}/{rep.labels[1]})")


_RUNNERS = {
    "graded-pieces": _suite_graded,
    "image-orders": _suite_orders,
    "product-grid": _suite_grid,
    "symbols-identities": _suite_identities,
    "curves": _suite_curves,
    "chow": _suite_chow,
}


def run_report(cfg: SessionConfig, seed: int | None = None, timing: bool = False) -> Report:
    """Run the selected suites in a fixed order; failures become FAIL lines."""
    if seed is not None:
        cfg.seed = seed
    report = Report(cfg.seed)
    for suite in SUITES:
        if suite not in cfg.suites:
            continue

        def add(name: str, ok: bool | None, detail: str = "", _suite=suite) -> None:
            status = "INFO" if ok is None else ("PASS" if ok else "FAIL")
            report.checks.append(Check(_suite, name, status, detail))

        start = time.perf_counter()
        try:
            _RUNNERS[suite](cfg, add)
        except Exception as exc:  # reported, not raised
            add("suite aborted", False, f"{type(exc).__name__}: {exc}")
        report.timings[suite] = time.perf_counter() - start
        if timing:
            print(f"[timing] {suite}: {report.timings[suite]:.2f}s", file=sys.stderr)
    return report
