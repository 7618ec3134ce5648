"""Randomized verification suites with deterministic per-trial substreams.

Each check appends one record; failures are recorded, never raised, so a
full run always yields the whole pass/fail matrix.  Every random draw
comes from a Philox substream keyed by (config seed, stream tag), where
the tag encodes suite, dimension, variant, and trial index.  Two runs
with the same config therefore produce identical records; wall time is
kept in a single summary field so reports can be compared byte for byte
with that field set aside.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

import numpy as np

from .analysis import (
    PurityTag,
    classify,
    cr_frame,
    nullity,
    xi_vector,
)
from .clifford import (
    Spinor,
    apply_generator,
    apply_vector,
    dense_generator_matrix,
    inner,
    make_space,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .constructors import (
    SeededSampler,
    admissible_nullities,
    construct_with_nullity,
    psi_pure,
    psi_totally_impure,
    random_chiral_spinor,
    random_spinor,
    tensor_spinor,
)
from .errors import (
    ConfigError,
    InternalVerificationError,
    SpinorlabError,
    UnreachableNullityError,
)
from .kaehler import kaehler_spectrum, project_sigma_r, raising_defect, standard_j

SUITE_NAMES = (
    "lemma22",
    "prop36",
    "prop37",
    "strictness",
    "kaehler",
    "clifford",
    "constructors",
)
REPORT_FORMAT = "spinorlab-report/1"
TIMING_FIELD = "wall_time_s"


@dataclass(frozen=True)
class SuiteConfig:
    """Run parameters; tolerances default to the package-wide values."""

    n_min: int = 2
    n_max: int = 12
    trials: int = 50
    seed: int = 42
    tolerances: Tolerances = DEFAULT_TOLERANCES
    suites: tuple = SUITE_NAMES


@dataclass
class CheckRecord:
    suite: str
    params: dict
    status: str
    metrics: dict
    seed_used: int | None


@dataclass
class CheckReport:
    format_version: str
    config: dict
    records: list
    summary: dict

    def to_json(self) -> str:
        doc = {
            "format": self.format_version,
            "config": self.config,
            "records": [
                {
                    "suite": r.suite,
                    "params": r.params,
                    "status": r.status,
                    "metrics": r.metrics,
                    "seed_used": r.seed_used,
                }
                for r in self.records
            ],
            "summary": self.summary,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @property
    def all_passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)


def validate_config(config: SuiteConfig) -> None:
    if not 2 <= config.n_min <= config.n_max <= 14:
        raise ConfigError(
            f"need 2 <= n_min <= n_max <= 14, got [{config.n_min}, {config.n_max}]"
        )
    if config.trials < 1:
        raise ConfigError(f"trials must be >= 1, got {config.trials}")
    unknown = [s for s in config.suites if s not in SUITE_NAMES]
    if unknown:
        raise ConfigError(f"unknown suites {unknown}; valid: {list(SUITE_NAMES)}")
    if not isinstance(config.seed, int) or isinstance(config.seed, bool):
        raise ConfigError(f"seed must be an integer, got {config.seed!r}")


def _finite_or_none(x: float):
    """Infinite gaps serialize as null so reports stay strict JSON."""
    return x if math.isfinite(x) else None


def _stream_tag(suite: str, n: int, variant: int, trial: int) -> int:
    sidx = SUITE_NAMES.index(suite)
    return (((sidx << 8) | n) << 40) | (variant << 32) | trial


def _sampler(config: SuiteConfig, tag: int) -> SeededSampler:
    return SeededSampler(seed=config.seed, stream=tag)


class _Recorder:
    def __init__(self) -> None:
        self.records: list = []

    def add(self, suite, params, ok, metrics, seed_used=None) -> None:
        self.records.append(
            CheckRecord(
                suite=suite,
                params=params,
                status="pass" if ok else "fail",
                metrics=metrics,
                seed_used=seed_used,
            )
        )

    def error(self, suite, params, exc, seed_used=None) -> None:
        self.records.append(
            CheckRecord(
                suite=suite,
                params=params,
                status="error",
                metrics={"error": f"{type(exc).__name__}: {exc}"},
                seed_used=seed_used,
            )
        )


def _dims(config: SuiteConfig, wanted=None):
    for n in range(config.n_min, config.n_max + 1):
        if wanted is None or n in wanted:
            yield n


def _suite_lemma22(config: SuiteConfig, rec: _Recorder, tol: Tolerances) -> None:
    for n in _dims(config):
        rep = nullity(psi_pure(n), tol)
        rec.add(
            "lemma22",
            {"check": "psi1", "n": n},
            rep.nullity == n // 2 and rep.rank_gap >= tol.rank_gap_min,
            {
                "nullity": rep.nullity,
                "expected": n // 2,
                "rank_gap": _finite_or_none(rep.rank_gap),
            },
        )
        if n not in (3, 4, 5):
            rep2 = nullity(psi_totally_impure(n), tol)
            rec.add(
                "lemma22",
                {"check": "psi2", "n": n},
                rep2.nullity == 0,
                {
                    "nullity": rep2.nullity,
                    "expected": 0,
                    "rank_gap": _finite_or_none(rep2.rank_gap),
                },
            )
    for n in _dims(config, wanted={3, 4, 5}):
        space = make_space(n)
        expected_min = {3: 1, 4: 1, 5: 2}[n]
        for trial in range(config.trials):
            tag = _stream_tag("lemma22", n, 1, trial)
            params = {"check": "sampling", "n": n, "trial": trial}
            try:
                psi = random_spinor(space, _sampler(config, tag), tol)
                rep = nullity(psi, tol)
                exact = n != 4
                ok = rep.nullity == expected_min if exact else rep.nullity >= 1
                rec.add(
                    "lemma22",
                    params,
                    ok,
                    {"nullity": rep.nullity, "rank_gap": _finite_or_none(rep.rank_gap)},
                    tag,
                )
            except SpinorlabError as exc:
                rec.error("lemma22", params, exc, tag)


def _suite_prop36(config: SuiteConfig, rec: _Recorder, tol: Tolerances) -> None:
    for n in _dims(config, wanted={4, 6}):
        space = make_space(n)
        for variant, sign in enumerate((1, -1)):
            for trial in range(config.trials):
                tag = _stream_tag("prop36", n, variant, trial)
                params = {"n": n, "sign": sign, "trial": trial}
                try:
                    psi = random_chiral_spinor(space, _sampler(config, tag), sign, tol)
                    rep = nullity(psi, tol)
                    rec.add(
                        "prop36",
                        params,
                        rep.nullity == n // 2,
                        {"nullity": rep.nullity, "expected": n // 2},
                        tag,
                    )
                except SpinorlabError as exc:
                    rec.error("prop36", params, exc, tag)


def _suite_prop37(config: SuiteConfig, rec: _Recorder, tol: Tolerances) -> None:
    for n in _dims(config, wanted={3, 5}):
        space = make_space(n)
        expected_rank = (n - 1) // 2
        for trial in range(config.trials):
            tag = _stream_tag("prop37", n, 0, trial)
            params = {"n": n, "trial": trial}
            try:
                psi = random_spinor(space, _sampler(config, tag), tol)
                cls = classify(psi, tol)
                xi = xi_vector(psi, tol)
                xi_norm = float(np.linalg.norm(xi))
                resid = apply_vector(space, xi.astype(complex), psi)
                xi_defect = float(
                    np.linalg.norm(resid.coeffs + 1j * psi.coeffs)
                )
                ok = (
                    cls.tag is PurityTag.STRICTLY_PARTIALLY_PURE
                    and cls.rank == expected_rank
                    and abs(xi_norm - 1.0) <= tol.residual
                    and xi_defect <= tol.residual
                )
                rec.add(
                    "prop37",
                    params,
                    ok,
                    {
                        "tag": cls.tag.value,
                        "rank": cls.rank,
                        "xi_norm_err": abs(xi_norm - 1.0),
                        "xi_defect": xi_defect,
                    },
                    tag,
                )
            except SpinorlabError as exc:
                rec.error("prop37", params, exc, tag)


def _frame_defects(frame, tol: Tolerances) -> dict:
    jm = frame.j_matrix
    dim2 = jm.shape[0]
    eye = np.eye(dim2)
    d = frame.d_basis
    metrics = {
        "j_square": float(np.abs(jm @ jm + eye).max(initial=0.0)),
        "j_orthogonal": float(np.abs(jm.T @ jm - eye).max(initial=0.0)),
        "g_x_jx": float(np.abs(np.diag(d.T @ (d @ jm))).max(initial=0.0)),
        "d_perp": float(
            np.abs(d.T @ frame.dperp_basis).max(initial=0.0)
            if frame.dperp_basis.size
            else 0.0
        ),
        "xi_in_dperp": float(np.abs(d.T @ frame.xi).max(initial=0.0)),
    }
    metrics["max_defect"] = max(metrics.values())
    return metrics


def _suite_strictness(config: SuiteConfig, rec: _Recorder, tol: Tolerances) -> None:
    for n in _dims(config):
        space = make_space(n)
        for trial in range(config.trials):
            tag = _stream_tag("strictness", n, 0, trial)
            params = {"n": n, "trial": trial}
            try:
                psi = random_spinor(space, _sampler(config, tag), tol)
                rep = nullity(psi, tol)
                if rep.nullity == 0:
                    rec.add(
                        "strictness",
                        params,
                        True,
                        {"nullity": 0, "dim_d": 0},
                        tag,
                    )
                    continue
                frame = cr_frame(psi, tol)
                dim_d = frame.d_basis.shape[1]
                metrics = _frame_defects(frame, tol)
                metrics["nullity"] = rep.nullity
                metrics["dim_d"] = dim_d
                ok = dim_d == 2 * rep.nullity and metrics["max_defect"] <= tol.residual
                rec.add("strictness", params, ok, metrics, tag)
            except SpinorlabError as exc:
                rec.error("strictness", params, exc, tag)


def _suite_kaehler(config: SuiteConfig, rec: _Recorder, tol: Tolerances) -> None:
    m_lo = max(1, (config.n_min + 1) // 2)
    m_hi = config.n_max // 2
    for m in range(m_lo, m_hi + 1):
        params = {"check": "spectrum", "m": m}
        try:
            spec = kaehler_spectrum(standard_j(m), tol)
            rec.add(
                "kaehler",
                params,
                True,
                {"levels": [[lv.r, lv.multiplicity] for lv in spec.levels]},
            )
        except SpinorlabError as exc:
            rec.error("kaehler", params, exc)
            continue
        if m > 4:
            continue
        jmat = standard_j(m)
        for trial in range(config.trials):
            tag = _stream_tag("kaehler", 2 * m, 1, trial)
            params = {"check": "raising", "m": m, "trial": trial}
            try:
                sampler = _sampler(config, tag)
                psi = random_spinor(spec.space, sampler, tol)
                r = sampler.integers(0, m + 1)
                level_part = project_sigma_r(spec, psi, r)
                while level_part.norm() < tol.resample_norm:
                    r = sampler.integers(0, m + 1)
                    level_part = project_sigma_r(spec, psi, r)
                psi_r = level_part.normalized()
                x = sampler.complex_normal(2 * m).real
                defect = raising_defect(spec, jmat, x, psi_r, tol)
                params_out = dict(params)
                params_out["r"] = r
                rec.add(
                    "kaehler",
                    params_out,
                    defect <= tol.residual,
                    {"raising_defect": defect},
                    tag,
                )
            except SpinorlabError as exc:
                rec.error("kaehler", params, exc, tag)


def _suite_clifford(config: SuiteConfig, rec: _Recorder, tol: Tolerances) -> None:
    for n in _dims(config):
        space = make_space(n)
        dense = [dense_generator_matrix(space, j).matrix for j in range(1, n + 1)]
        for trial in range(config.trials):
            tag = _stream_tag("clifford", n, 0, trial)
            params = {"n": n, "trial": trial}
            try:
                sampler = _sampler(config, tag)
                psi = random_spinor(space, sampler, tol)
                phi = random_spinor(space, sampler, tol)
                v = sampler.complex_normal(n).real
                anti = 0.0
                for j in range(1, n + 1):
                    ej = apply_generator(space, j, psi)
                    for l in range(j, n + 1):
                        lhs = apply_generator(space, l, ej) + apply_generator(
                            space, j, apply_generator(space, l, psi)
                        )
                        if j == l:
                            lhs = lhs + 2.0 * psi
                        anti = max(anti, lhs.norm())
                iso = max(
                    abs(apply_generator(space, j, psi).norm() - 1.0)
                    for j in range(1, n + 1)
                )
                skew = abs(
                    inner(apply_vector(space, v, phi), psi)
                    + inner(phi, apply_vector(space, v, psi))
                )
                oracle = 0.0
                for j in range(1, n + 1):
                    diff = dense[j - 1] @ psi.coeffs - apply_generator(
                        space, j, psi
                    ).coeffs
                    oracle = max(oracle, float(np.linalg.norm(diff)))
                worst = max(anti, iso, oracle)
                metrics = {
                    "anticommutation": anti,
                    "isometry": iso,
                    "skew_adjoint": skew,
                    "oracle": oracle,
                }
                scale = 1.0 + float(np.linalg.norm(v))
                ok = worst <= 1e-13 and skew <= 1e-12 * scale
                rec.add("clifford", params, ok, metrics, tag)
            except SpinorlabError as exc:
                rec.error("clifford", params, exc, tag)


def _suite_constructors(config: SuiteConfig, rec: _Recorder, tol: Tolerances) -> None:
    for n in _dims(config):
        for N in admissible_nullities(n):
            params = {"check": "admissible", "n": n, "N": N}
            try:
                construct_with_nullity(n, N, tol)
                rec.add("constructors", params, True, {"nullity": N})
            except SpinorlabError as exc:
                rec.error("constructors", params, exc)
    for n, N in ((9, 3), (10, 3), (11, 4)):
        if not config.n_min <= n <= config.n_max:
            continue
        params = {"check": "unreachable", "n": n, "N": N}
        try:
            construct_with_nullity(n, N, tol)
            rec.add(
                "constructors",
                params,
                False,
                {"error": "construction unexpectedly succeeded"},
            )
        except UnreachableNullityError:
            rec.add("constructors", params, True, {})
        except SpinorlabError as exc:
            rec.error("constructors", params, exc)
    # tensor additivity for a pure first factor, sampled second factor
    for n_b in range(2, max(2, config.n_max - 2) + 1):
        for p in range(1, (config.n_max - n_b) // 2 + 1):
            space_b = make_space(n_b)
            tag = _stream_tag("constructors", n_b, p, 0)
            params = {"check": "additivity", "p": p, "n_b": n_b}
            try:
                phi = random_spinor(space_b, _sampler(config, tag), tol)
                n_phi = nullity(phi, tol).nullity
                prod = tensor_spinor(psi_pure(2 * p), phi)
                n_prod = nullity(prod, tol).nullity
                rec.add(
                    "constructors",
                    params,
                    n_prod == p + n_phi,
                    {"factor_nullity": n_phi, "product_nullity": n_prod},
                    tag,
                )
            except SpinorlabError as exc:
                rec.error("constructors", params, exc, tag)


_SUITE_FUNCS = {
    "lemma22": _suite_lemma22,
    "prop36": _suite_prop36,
    "prop37": _suite_prop37,
    "strictness": _suite_strictness,
    "kaehler": _suite_kaehler,
    "clifford": _suite_clifford,
    "constructors": _suite_constructors,
}


def run_suite(config: SuiteConfig) -> CheckReport:
    """Execute the selected suites and assemble the audited report."""
    validate_config(config)
    start = time.perf_counter()
    rec = _Recorder()
    for suite in config.suites:
        _SUITE_FUNCS[suite](config, rec, config.tolerances)
    wall = time.perf_counter() - start
    counts = {"pass": 0, "fail": 0, "error": 0}
    for r in rec.records:
        counts[r.status] += 1
    if sum(counts.values()) != len(rec.records):
        raise InternalVerificationError("summary counts disagree with records")
    config_doc = {
        "n_min": config.n_min,
        "n_max": config.n_max,
        "trials": config.trials,
        "seed": config.seed,
        "suites": list(config.suites),
        "tolerances": {
            "rank_rel": config.tolerances.rank_rel,
            "rank_gap_min": config.tolerances.rank_gap_min,
            "residual": config.tolerances.residual,
            "xi_imag": config.tolerances.xi_imag,
            "spectrum": config.tolerances.spectrum,
            "perp_defect": config.tolerances.perp_defect,
            "resample_norm": config.tolerances.resample_norm,
        },
    }
    summary = {
        "counts": counts,
        "total": len(rec.records),
        TIMING_FIELD: wall,
    }
    return CheckReport(
        format_version=REPORT_FORMAT,
        config=config_doc,
        records=rec.records,
        summary=summary,
    )


def normalized_report_json(text: str) -> str:
    """Report JSON with the timing field cleared, for byte comparison."""
    doc = json.loads(text)
    if isinstance(doc, dict) and isinstance(doc.get("summary"), dict):
        doc["summary"].pop(TIMING_FIELD, None)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
