"""Batch command-line front end.

Subcommands run the verification suites on a builtin or file-based law and
write JSON/CSV reports.  Exit status: 0 when every produced verdict is in
the expected class for the command, 1 on a verdict failure, 2 on a
configuration or parse error.  Identical invocations produce byte-identical
reports; every report embeds the seed, the sample budget, and the law
fingerprint.
"""

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass

from .bases import balanced_projection
from .errors import SymentropyError
from .estimators import entropy_knn, entropy_mc, entropy_quadrature_1d, fisher_mc
from .fixtures import builtin_law, gaussian_iid
from .harness import (
    HOLDS,
    HOLDS_WITH_EQUALITY,
    VIOLATED,
    Budget,
    asymmetric_counterexample,
    direction_scan,
    equality_demo_n2,
    gaussianity_probe,
    verify_kdim,
    verify_main,
)
from .heat_flow import entropy_via_debruijn
from .mixtures import law_fingerprint, mixture_from_json

_PASSING = (HOLDS, HOLDS_WITH_EQUALITY)

_COMMANDS = (
    "verify",
    "equality-demo",
    "probe",
    "kdim",
    "debruijn",
    "scan",
    "counterexample",
    "calibrate",
)


@dataclass(frozen=True)
class RunConfig:
    """Validated batch-run configuration."""

    command: str
    law_path: str | None = None
    seed: int = 0
    samples: int = 200_000
    tol_sigma: float = 3.0
    out_format: str = "json"
    out_path: str | None = None
    resolution: int = 90
    k: int | None = None
    n: int | None = None
    method: str = "hadamard"
    nodes: int = 48

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise ConfigError(f"command: expected one of {_COMMANDS} (got {self.command!r})")
        if self.samples < 100:
            raise ConfigError(f"samples: must be >= 100 (got {self.samples})")
        if self.tol_sigma <= 0:
            raise ConfigError(f"tol-sigma: must be > 0 (got {self.tol_sigma})")
        if self.out_format not in ("json", "csv"):
            raise ConfigError(f"format: expected 'json' or 'csv' (got {self.out_format!r})")
        if self.resolution < 1:
            raise ConfigError(f"resolution: must be >= 1 (got {self.resolution})")
        if self.nodes < 16:
            raise ConfigError(f"nodes: must be >= 16 (got {self.nodes})")


class ConfigError(SymentropyError):
    """Invalid CLI configuration; maps to exit status 2."""


def _load_law(source):
    if source is None:
        raise ConfigError("law: required; use builtin:NAME or a mixture JSON path")
    if source.startswith("builtin:"):
        try:
            return builtin_law(source[len("builtin:"):])
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from exc
    if not os.path.exists(source):
        raise ConfigError(f"law: file not found: {source}")
    with open(source, "r", encoding="ascii") as fh:
        try:
            return mixture_from_json(fh.read())
        except (SymentropyError, KeyError, ValueError) as exc:
            raise ConfigError(f"law: cannot parse mixture file {source}: {exc}") from exc


def _canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".symentropy-")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(config, text):
    if config.out_path:
        try:
            _write_atomic(config.out_path, text)
        except OSError as exc:
            raise ConfigError(f"out: cannot write {config.out_path}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _budget(config):
    return Budget(samples=config.samples, seed=config.seed, tol_sigma=config.tol_sigma)


def _gaussian_battery(samples, seed, nodes):
    """Closed-form Gaussian calibration entries across the estimator stack."""
    entries = []

    def add(estimator, n, var, value, stderr, truth):
        z = abs(value - truth) / stderr if stderr > 0 else math.inf
        entries.append(
            {
                "estimator": estimator,
                "n": n,
                "var": var,
                "value": value,
                "truth": truth,
                "stderr": stderr,
                "z": z,
            }
        )

    for n in (1, 2):
        for var in (1.0, 4.0):
            law = gaussian_iid(n, var)
            h_truth = 0.5 * n * math.log(2.0 * math.pi * math.e * var)
            i_truth = n / var
            est = entropy_mc(law, samples, seed)
            add("entropy_mc", n, var, est.value, est.stderr, h_truth)
            if n == 1:
                est = entropy_quadrature_1d(law)
                add("entropy_quadrature_1d", n, var, est.value, est.stderr, h_truth)
            est = entropy_knn(law.sample(samples, seed + 1))
            add("entropy_knn", n, var, est.value, est.stderr, h_truth)
            fe = fisher_mc(law, samples, seed)
            add("fisher_mc", n, var, fe.value, fe.stderr, i_truth)
            est = entropy_via_debruijn(law, nodes=max(16, nodes // 2), count=samples, seed=seed)
            add("entropy_via_debruijn", n, var, est.value, est.stderr, h_truth)
    return entries


def calibrate(config):
    """Run the Gaussian calibration battery; exit 0 iff max |z| <= tol_sigma."""
    entries = _gaussian_battery(config.samples, config.seed, config.nodes)
    max_z = max(e["z"] for e in entries)
    report = {
        "command": "calibrate",
        "seed": config.seed,
        "budget": config.samples,
        "tol_sigma": config.tol_sigma,
        "entries": entries,
        "max_abs_z": max_z,
        "verdict": "pass" if max_z <= config.tol_sigma else "fail",
    }
    _emit(config, _canonical_json(report))
    return 0 if max_z <= config.tol_sigma else 1


def run(config):
    """Execute one batch command; returns the process exit status."""
    budget = _budget(config)

    if config.command == "calibrate":
        return calibrate(config)

    if config.command == "counterexample":
        report = asymmetric_counterexample()
        payload = report.to_json_dict()
        payload["command"] = "counterexample"
        _emit(config, _canonical_json(payload))
        return 0 if report.verdict == VIOLATED else 1

    law = _load_law(config.law_path)

    if config.command == "verify":
        report = verify_main(law, budget)
        payload = report.to_json_dict()
        payload["command"] = "verify"
        _emit(config, _canonical_json(payload))
        return 0 if report.verdict in _PASSING else 1

    if config.command == "equality-demo":
        if law.dim != 1:
            raise ConfigError(f"law: equality-demo needs a 1-D base law (got dim {law.dim})")
        report = equality_demo_n2(law, budget)
        payload = {
            "command": "equality-demo",
            "gap": report.gap,
            "sigma": report.sigma,
            "verdict": report.verdict,
            "independence_ok": report.independence.verdict,
            "coordinate_symmetry_ok": report.coordinate_symmetry.verdict,
            "law_fingerprint": report.law_fingerprint,
            "seed": report.seed,
            "budget": report.budget,
        }
        _emit(config, _canonical_json(payload))
        ok = (
            report.verdict == HOLDS_WITH_EQUALITY
            and report.independence.verdict
            and report.coordinate_symmetry.verdict
        )
        return 0 if ok else 1

    if config.command == "probe":
        report = gaussianity_probe(law, budget)
        payload = {
            "command": "probe",
            "main": report.main.to_json_dict(),
            "independence_failures": list(report.independence_failures),
            "evidence": [
                {
                    "basis_index": e.basis_index,
                    "mixed_partial_max": e.mixed_partial.max_abs,
                    "mixed_partial_ok": e.mixed_partial.verdict,
                    "max_cross_z": e.max_cross_z,
                }
                for e in report.evidence
            ],
        }
        _emit(config, _canonical_json(payload))
        return 0 if report.main.verdict in _PASSING else 1

    if config.command == "kdim":
        if config.k is None or config.n is None:
            raise ConfigError("k/n: kdim requires --k and --n (1 <= k <= n)")
        if law.dim != config.n:
            raise ConfigError(
                f"n: law has dimension {law.dim}, projection expects n={config.n}"
            )
        try:
            projection = balanced_projection(config.k, config.n, config.method)
        except SymentropyError as exc:
            raise ConfigError(str(exc)) from exc
        report = verify_kdim(law, projection, budget)
        payload = report.to_json_dict()
        payload["command"] = "kdim"
        payload["method"] = config.method
        _emit(config, _canonical_json(payload))
        return 0 if report.verdict in _PASSING else 1

    if config.command == "debruijn":
        est = entropy_via_debruijn(law, nodes=config.nodes, count=config.samples, seed=config.seed)
        payload = {
            "command": "debruijn",
            "estimate": est.to_json_dict(),
            "law_fingerprint": law_fingerprint(law),
            "seed": config.seed,
            "budget": config.samples,
            "nodes": config.nodes,
        }
        status = 0
        if law.dim == 1:
            reference = entropy_quadrature_1d(law)
            z_den = math.hypot(est.stderr, reference.stderr)
            z = abs(est.value - reference.value) / z_den if z_den > 0 else math.inf
            payload["reference_quadrature"] = reference.to_json_dict()
            payload["z"] = z
            status = 0 if z <= config.tol_sigma else 1
        _emit(config, _canonical_json(payload))
        return status

    if config.command == "scan":
        report = direction_scan(law, resolution=config.resolution, budget=budget)
        if config.out_format == "csv":
            _emit(config, report.to_csv())
        else:
            payload = {
                "command": "scan",
                "rows": [
                    {
                        "direction": list(r.direction),
                        "entropy": r.entropy,
                        "stderr": r.stderr,
                        "bound": r.bound,
                        "margin": r.margin,
                    }
                    for r in report.rows
                ],
                "argmax_direction": list(report.argmax_direction),
                "law_fingerprint": report.law_fingerprint,
                "seed": report.seed,
                "budget": config.samples,
            }
            _emit(config, _canonical_json(payload))
        ok = all(r.margin >= -config.tol_sigma * r.stderr for r in report.rows)
        return 0 if ok else 1

    raise ConfigError(f"command: unhandled command {config.command!r}")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="symentropy",
        description="Verify entropy lower bounds for symmetric random vectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--law", default=None, help="builtin:NAME or mixture JSON path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=200_000)
        p.add_argument("--tol-sigma", type=float, default=3.0)
        p.add_argument("--out", default=None, help="report file (atomic write)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--resolution", type=int, default=90)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--method", choices=("hadamard", "frequency_pairs"), default="hadamard")
        p.add_argument("--nodes", type=int, default=48)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            law_path=args.law,
            seed=args.seed,
            samples=args.samples,
            tol_sigma=args.tol_sigma,
            out_format=args.format,
            out_path=args.out,
            resolution=args.resolution,
            k=args.k,
            n=args.n,
            method=args.method,
            nodes=args.nodes,
        )
        status = run(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SymentropyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
