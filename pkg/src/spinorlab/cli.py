"""Command line front end: classify, verify, spectrum, construct.

Exit codes: 0 on success with all checks passing, 1 when a verification
check fails, 2 on operational errors (bad input, ambiguous rank, missing
file).  The default seed comes from SPINORLAB_SEED when set; an explicit
--seed flag wins over the environment.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np

from .analysis import classify, cr_frame, nullity
from .clifford import make_space
from .config import DEFAULT_TOLERANCES, Tolerances
from .constructors import (
    SeededSampler,
    construct_with_nullity,
    psi_pure,
    psi_totally_impure,
    random_spinor,
)
from .errors import ConfigError, EmptyDistributionError, SpinorlabError
from .kaehler import kaehler_spectrum, standard_j
from .spinor_io import load_spinor, save_spinor, spinor_to_json
from .suites import SUITE_NAMES, SuiteConfig, run_suite

SEED_ENV = "SPINORLAB_SEED"
DEFAULT_SEED = 42


def _resolve_seed(flag_value) -> int:
    if flag_value is not None:
        return int(flag_value)
    raw = os.getenv(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc


def _resolve_tolerances(args) -> Tolerances:
    tol = DEFAULT_TOLERANCES
    if getattr(args, "tol_rank", None) is not None:
        if args.tol_rank <= 0:
            raise ConfigError(f"--tol-rank must be positive, got {args.tol_rank}")
        tol = replace(tol, rank_rel=args.tol_rank)
    return tol


def _builtin_spinor(name: str, n, seed: int, tol: Tolerances):
    if n is None:
        raise ConfigError("--builtin requires --n")
    if name == "psi1":
        return psi_pure(int(n))
    if name == "psi2":
        return psi_totally_impure(int(n))
    if name == "random":
        return random_spinor(make_space(int(n)), SeededSampler(seed), tol)
    raise ConfigError(f"unknown builtin {name!r}; valid: psi1, psi2, random")


def _cmd_classify(args) -> int:
    tol = _resolve_tolerances(args)
    if (args.file is None) == (args.builtin is None):
        raise ConfigError("classify needs exactly one of --file or --builtin")
    if args.file is not None:
        psi = load_spinor(args.file)
    else:
        psi = _builtin_spinor(args.builtin, args.n, _resolve_seed(args.seed), tol)
    cls = classify(psi, tol)
    report = cls.report
    doc = {
        "tag": cls.tag.value,
        "rank": cls.rank,
        "nullity": report.nullity,
        "n": psi.space.n,
        "rank_gap": None if report.rank_gap == float("inf") else report.rank_gap,
    }
    try:
        frame = cr_frame(psi, tol)
        doc["dim_d"] = frame.d_basis.shape[1]
        doc["codim"] = psi.space.n - frame.d_basis.shape[1]
        doc["xi_norm"] = float(np.linalg.norm(frame.xi))
    except EmptyDistributionError:
        doc["dim_d"] = 0
        doc["codim"] = psi.space.n
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"{cls.tag.value}, rank {cls.rank} (n={psi.space.n}, nullity {report.nullity})")
        print(f"dim D = {doc['dim_d']}, codim = {doc['codim']}")
        if "xi_norm" in doc:
            print(f"|xi| = {doc['xi_norm']:.12f}")
    return 0


def _parse_suites(raw) -> tuple:
    if raw is None:
        return SUITE_NAMES
    names = []
    for chunk in raw:
        names.extend(s.strip() for s in chunk.split(",") if s.strip())
    if names == ["all"]:
        return SUITE_NAMES
    return tuple(names)


def _cmd_verify(args) -> int:
    tol = _resolve_tolerances(args)
    config = SuiteConfig(
        n_min=2,
        n_max=args.nmax,
        trials=args.trials,
        seed=_resolve_seed(args.seed),
        tolerances=tol,
        suites=_parse_suites(args.suite),
    )
    report = run_suite(config)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        counts = report.summary["counts"]
        for suite in config.suites:
            stats = {"pass": 0, "fail": 0, "error": 0}
            for r in report.records:
                if r.suite == suite:
                    stats[r.status] += 1
            total = sum(stats.values())
            print(
                f"{suite:<13s} {stats['pass']:>5d}/{total:<5d} pass"
                + (f"  ({stats['fail']} fail, {stats['error']} error)"
                   if stats["fail"] or stats["error"] else "")
            )
        print(
            f"total: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['error']} error in {report.summary['wall_time_s']:.2f}s"
        )
    return 0 if report.all_passed else 1


def _cmd_spectrum(args) -> int:
    tol = _resolve_tolerances(args)
    n = int(args.n)
    if n % 2:
        raise ConfigError(f"spectrum needs an even ambient dimension, got {n}")
    spec = kaehler_spectrum(standard_j(n // 2), tol)
    if args.json:
        doc = {
            "m": spec.m,
            "levels": [
                {
                    "r": lv.r,
                    "eigenvalue": [lv.eigenvalue.real, lv.eigenvalue.imag],
                    "multiplicity": lv.multiplicity,
                }
                for lv in spec.levels
            ],
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"m = {spec.m}, spinor dimension {spec.space.dim}")
        for lv in spec.levels:
            ev = lv.eigenvalue
            print(f"  r={lv.r}: eigenvalue {ev.imag:+g}i, multiplicity {lv.multiplicity}")
    return 0


def _cmd_construct(args) -> int:
    tol = _resolve_tolerances(args)
    if args.n is None or args.nullity is None:
        raise ConfigError("construct needs --n and --nullity")
    psi = construct_with_nullity(int(args.n), int(args.nullity), tol)
    if args.out:
        save_spinor(psi, args.out)
    if args.json:
        sys.stdout.write(spinor_to_json(psi))
    elif not args.out:
        rep = nullity(psi, tol)
        print(f"constructed spinor: n={psi.space.n}, nullity {rep.nullity}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinorlab",
        description="Clifford algebra spinor engine: classification and checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify a spinor from file or builtin")
    p_classify.add_argument("--file", help="spinor JSON file")
    p_classify.add_argument("--builtin", help="psi1, psi2, or random")
    p_classify.add_argument("--n", type=int, help="ambient dimension for --builtin")
    p_classify.add_argument("--seed", type=int, default=None, help="seed for --builtin random")
    p_classify.add_argument("--tol-rank", type=float, default=None, help="relative rank threshold")
    p_classify.add_argument("--json", action="store_true", help="print a machine block")
    p_classify.set_defaults(func=_cmd_classify)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", action="append", default=None,
                          help="suite name, comma list, or 'all' (repeatable)")
    p_verify.add_argument("--nmax", type=int, default=12, help="largest ambient dimension")
    p_verify.add_argument("--trials", type=int, default=50, help="trials per (suite, n)")
    p_verify.add_argument("--seed", type=int, default=None, help="suite seed")
    p_verify.add_argument("--out", help="write the JSON report here")
    p_verify.add_argument("--tol-rank", type=float, default=None, help="relative rank threshold")
    p_verify.add_argument("--json", action="store_true", help="print the JSON report")
    p_verify.set_defaults(func=_cmd_verify)

    p_spectrum = sub.add_parser("spectrum", help="Kaehler form eigenlevels for even n")
    p_spectrum.add_argument("--n", type=int, required=True, help="even ambient dimension")
    p_spectrum.add_argument("--tol-rank", type=float, default=None, help="relative rank threshold")
    p_spectrum.add_argument("--json", action="store_true", help="print a machine block")
    p_spectrum.set_defaults(func=_cmd_spectrum)

    p_construct = sub.add_parser("construct", help="build a spinor of prescribed nullity")
    p_construct.add_argument("--n", type=int, help="ambient dimension")
    p_construct.add_argument("--nullity", type=int, help="target nullity")
    p_construct.add_argument("--out", help="write the spinor JSON here")
    p_construct.add_argument("--tol-rank", type=float, default=None, help="relative rank threshold")
    p_construct.add_argument("--json", action="store_true", help="print the spinor JSON")
    p_construct.set_defaults(func=_cmd_construct)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpinorlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
