"""Command-line surface.

Subcommands: ``verify`` (property suites), ``scan`` (parameter families to
CSV), ``demo`` (named scenarios), ``chain`` (indirect-model comparison).
Exit codes: 0 all checks pass, 1 a property was violated, 2 usage or I/O
error.  Every report embeds a run manifest for reproducibility.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import __version__
from .generate import GenConfig, RNG_ALGORITHM, random_observable, random_state
from .indirect import chain_check, cnot_model
from .measurement import noisy_projective, projective_from, unsharp_qubit
from .relations import evaluate_relation, schroedinger_reduction
from .serialize import (
    CSV_HEADER,
    format_float,
    json_text,
    load_observable,
    load_povm,
    load_state,
    relation_csv_row,
)
from .states import (
    DensityOperator,
    HermitianObservable,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    qubit_state,
)
from .suites import run_verify, sign_flipped_imag_part, suite_ozawa_chain
from .tolerances import DEFAULT_TOL, Tolerances
from .transport import LocalContext

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

_DEMOS = ("naive-violation", "kr-reduction", "ozawa-chain")
_FAMILIES = ("unsharp", "noisy-projective", "custom")


@dataclass(frozen=True)
class RunManifest:
    """Provenance block embedded in every report."""

    spec_version: str
    subcommand: str
    seed: int
    dims: tuple[int, ...]
    instances: int
    rng_algorithm: str
    tolerances: Tolerances
    checks_passed: int
    checks_failed: int
    wall_time_s: float

    def as_dict(self) -> dict:
        return {
            "spec_version": self.spec_version,
            "subcommand": self.subcommand,
            "seed": self.seed,
            "dims": list(self.dims),
            "instances": self.instances,
            "rng_algorithm": self.rng_algorithm,
            "tolerances": asdict(self.tolerances),
            "checks_passed": self.checks_passed,
            "checks_failed": self.checks_failed,
            "wall_time_s": self.wall_time_s,
        }


def _parse_dims(text: str, low: int = 2, high: int = 8) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from exc
    if not dims or any(d < low or d > high for d in dims):
        raise argparse.ArgumentTypeError(f"dimensions must lie in {low}..{high}")
    return dims


def _parse_grid(text: str) -> tuple[float, ...]:
    """Accept 'a,b,c' or 'start:stop:step' (stop inclusive up to roundoff)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("grid range must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise argparse.ArgumentTypeError("grid step must be positive")
        count = int(round((stop - start) / step)) + 1
        return tuple(start + k * step for k in range(count))
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc


def _tolerances(args) -> Tolerances:
    if args.tolerance is None:
        return DEFAULT_TOL
    if args.tolerance <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return replace(DEFAULT_TOL, identity=args.tolerance)


def _manifest(args, subcommand: str, passed: int, failed: int, started: float, dims=()) -> RunManifest:
    return RunManifest(
        spec_version=__version__,
        subcommand=subcommand,
        seed=getattr(args, "seed", 0),
        dims=tuple(dims),
        instances=getattr(args, "n", 0),
        rng_algorithm=RNG_ALGORITHM,
        tolerances=_tolerances(args),
        checks_passed=passed,
        checks_failed=failed,
        wall_time_s=time.perf_counter() - started,
    )


def _emit_json(args, payload: dict) -> None:
    text = json_text(payload, sig=17)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    started = time.perf_counter()
    tol = _tolerances(args)
    imag_fn = sign_flipped_imag_part if args.self_test_sign_flip else None
    results = run_verify(args.dims, args.n, args.seed, tol, imag_part_fn=imag_fn)
    passed = sum(r.checks - r.failures for r in results)
    failed = sum(r.failures for r in results)
    for r in results:
        status = "ok" if r.passed else "FAIL"
        print(f"{status:4s} {r.name}: {r.checks} checks, {r.failures} failures, worst {r.worst:.3e}")
        for msg in r.messages:
            print(f"     {msg}")
    manifest = _manifest(args, "verify", passed, failed, started, dims=args.dims)
    payload = {
        "manifest": manifest.as_dict(),
        "suites": {r.name: r.as_dict() for r in results},
    }
    _emit_json(args, payload)
    if failed:
        failing = ", ".join(r.name for r in results if not r.passed)
        print(f"FAILED suites: {failing}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _scan_default_state(args, tol: Tolerances) -> DensityOperator:
    if args.state:
        return load_state(args.state, tol=tol)
    return DensityOperator.maximally_mixed(2)


def _scan_observables(args, tol: Tolerances) -> tuple[HermitianObservable, HermitianObservable]:
    a = load_observable(args.obs_a, tol=tol) if args.obs_a else HermitianObservable(PAULI_Z)
    b = load_observable(args.obs_b, tol=tol) if args.obs_b else HermitianObservable(PAULI_X)
    return a, b


def cmd_scan(args) -> int:
    started = time.perf_counter()
    tol = _tolerances(args)
    if args.family not in _FAMILIES:
        print(f"unknown family {args.family!r}; choose from {_FAMILIES}", file=sys.stderr)
        return EXIT_USAGE
    rho = _scan_default_state(args, tol)
    obs_a, obs_b = _scan_observables(args, tol)

    rows = []
    if args.family == "custom":
        if not args.povm:
            print("family 'custom' needs --povm FILE", file=sys.stderr)
            return EXIT_USAGE
        povm = load_povm(args.povm, tol=tol)
        ctx = LocalContext(povm, rho, tol=tol)
        rows.append((None, evaluate_relation(ctx, obs_a, obs_b, tol=tol)))
    else:
        grid = args.grid if args.grid else tuple(k / 10.0 for k in range(11))
        for param in grid:
            if args.family == "unsharp":
                povm = unsharp_qubit((0.0, 0.0, 1.0), param, tol=tol)
            else:
                povm = noisy_projective(obs_a, param, tol=tol)
            ctx = LocalContext(povm, rho, tol=tol)
            rows.append((param, evaluate_relation(ctx, obs_a, obs_b, tol=tol)))

    lines = [CSV_HEADER] + [relation_csv_row(rep, param) for param, rep in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")

    failed = sum(
        1
        for _, rep in rows
        if rep.slack < -tol.identity * (1.0 + abs(rep.eps_a * rep.eps_b))
    )
    manifest = _manifest(args, "scan", len(rows) - failed, failed, started, dims=(rho.dim,))
    payload = {"manifest": manifest.as_dict(), "rows": len(rows), "family": args.family}
    if args.json:
        _emit_json(args, payload)
    return EXIT_VIOLATION if failed else EXIT_OK


def _demo_naive_violation(tol: Tolerances) -> tuple[list[str], int]:
    rho = qubit_state(y=0.8)
    ctx = LocalContext(projective_from(HermitianObservable(PAULI_Z), tol=tol), rho, tol=tol)
    report = evaluate_relation(ctx, HermitianObservable(PAULI_X), HermitianObservable(PAULI_Z), tol=tol)
    ok = report.naive_violated and report.slack >= -tol.identity
    lines = [
        "scenario: sharp Z readout on the qubit state (I + 0.8 Y)/2, observables X and Z",
        f"error product  = {format_float(report.eps_a * report.eps_b, 12)}",
        f"bound sqrt(R^2+I^2) = {format_float(report.bound, 12)}",
        f"bare commutator bound = {format_float(report.naive_bound, 12)}",
        f"commutator bound undercut: {report.naive_violated} (relation itself holds: {report.slack >= -tol.identity})",
    ]
    return lines, 0 if ok else EXIT_VIOLATION


def _demo_kr_reduction(tol: Tolerances) -> tuple[list[str], int]:
    rho = DensityOperator.pure([1.0, 0.0])
    report = schroedinger_reduction(
        rho, HermitianObservable(PAULI_X), HermitianObservable(PAULI_Y), tol=tol
    )
    ok = (
        abs(report.product - report.bound) <= tol.expectation
        and report.kr_bound <= report.bound + 1e-12
        and max(report.eps_sigma_residual_a, report.eps_sigma_residual_b) <= tol.expectation
    )
    lines = [
        "scenario: non-informative measurement on |0><0|, observables X and Y",
        f"sigma(X) sigma(Y) = {format_float(report.product, 12)}",
        f"standard-deviation bound = {format_float(report.bound, 12)} (saturated)",
        f"commutator-only bound = {format_float(report.kr_bound, 12)}",
        f"error equals standard deviation within {format_float(max(report.eps_sigma_residual_a, report.eps_sigma_residual_b), 3)}",
    ]
    return lines, 0 if ok else EXIT_VIOLATION


def _demo_ozawa_chain(tol: Tolerances) -> tuple[list[str], int]:
    model = cnot_model()
    rho = qubit_state(y=0.8)
    report = chain_check(
        model, rho, HermitianObservable(PAULI_X), HermitianObservable(PAULI_Z), tol=tol
    )
    names = (
        "rms product",
        "error product",
        "bound",
        "|I|",
        "rms-based lower bound",
    )
    lines = ["scenario: controlled-flip probe on (I + 0.8 Y)/2, observables X and Z"]
    lines += [f"{name} = {format_float(val, 12)}" for name, val in zip(names, report.values)]
    lines += [
        f"chain holds: {report.all_hold}",
        f"rms(X) = {format_float(report.rms_a, 12)}, intrinsic error(X) = {format_float(report.eps_a, 12)}, error(Z) = {format_float(report.eps_b, 12)}",
    ]
    return lines, 0 if report.all_hold else EXIT_VIOLATION


def cmd_demo(args) -> int:
    started = time.perf_counter()
    tol = _tolerances(args)
    if args.name not in _DEMOS:
        print(f"unknown demo {args.name!r}; choose from {_DEMOS}", file=sys.stderr)
        return EXIT_USAGE
    runner = {
        "naive-violation": _demo_naive_violation,
        "kr-reduction": _demo_kr_reduction,
        "ozawa-chain": _demo_ozawa_chain,
    }[args.name]
    lines, code = runner(tol)
    for line in lines:
        print(line)
    manifest = _manifest(args, f"demo:{args.name}", int(code == 0), int(code != 0), started)
    print("manifest: " + json_text(manifest.as_dict(), sig=17).replace("\n", " "))
    if args.json:
        _emit_json(args, {"manifest": manifest.as_dict(), "lines": lines})
    return code


def cmd_chain(args) -> int:
    started = time.perf_counter()
    tol = _tolerances(args)
    checks_failed = 0
    checks_passed = 0

    if args.model:
        from .serialize import load_model

        model = load_model(args.model, tol=tol)
        rng = np.random.default_rng(args.seed)
        cfg = GenConfig(seed=args.seed, dim=model.system_dim)
        rho = random_state(cfg, rng)
        a = random_observable(cfg, rng)
        b = random_observable(cfg, rng)
        report = chain_check(model, rho, a, b, tol=tol)
        print(f"custom model chain values: {[format_float(v, 12) for v in report.values]}")
        print(f"chain holds: {report.all_hold}")
        checks_passed += int(report.all_hold)
        checks_failed += int(not report.all_hold)
    else:
        demo_lines, demo_code = _demo_ozawa_chain(tol)
        for line in demo_lines:
            print(line)
        checks_passed += int(demo_code == 0)
        checks_failed += int(demo_code != 0)

        pairs = tuple((d, args.ancilla) for d in args.dims)
        result = suite_ozawa_chain(pairs, args.n, args.seed, tol)
        status = "ok" if result.passed else "FAIL"
        print(f"{status:4s} {result.name}: {result.checks} checks, {result.failures} failures, worst {result.worst:.3e}")
        for msg in result.messages:
            print(f"     {msg}")
        checks_passed += result.checks - result.failures
        checks_failed += result.failures

    manifest = _manifest(args, "chain", checks_passed, checks_failed, started, dims=getattr(args, "dims", ()))
    if args.json:
        _emit_json(args, {"manifest": manifest.as_dict()})
    return EXIT_VIOLATION if checks_failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="measerr",
        description="Numerical laboratory for measurement-error geometry and its uncertainty bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base RNG seed")
    common.add_argument("--tolerance", type=float, default=None, help="override the identity/slack tolerance")
    common.add_argument("--json", type=str, default=None, help="write the JSON report to this path")

    p_verify = sub.add_parser("verify", parents=[common], help="run every property suite")
    p_verify.add_argument("--dims", type=_parse_dims, default=(2, 3), help="comma-separated dimensions in 2..8")
    p_verify.add_argument("--n", type=int, default=200, help="instances per dimension per suite")
    p_verify.add_argument(
        "--self-test-sign-flip",
        action="store_true",
        help="corrupt a commutator sign on purpose to prove the harness can fail",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_scan = sub.add_parser("scan", parents=[common], help="parameter-family scan to CSV")
    p_scan.add_argument("--family", type=str, required=True, help=f"one of {_FAMILIES}")
    p_scan.add_argument("--grid", type=_parse_grid, default=None, help="comma list or start:stop:step")
    p_scan.add_argument("--state", type=str, default=None, help="JSON density matrix (default: maximally mixed qubit)")
    p_scan.add_argument("--obs-a", type=str, default=None, help="JSON observable A (default: qubit Z)")
    p_scan.add_argument("--obs-b", type=str, default=None, help="JSON observable B (default: qubit X)")
    p_scan.add_argument("--povm", type=str, default=None, help="JSON POVM (family 'custom' only)")
    p_scan.add_argument("--out", type=str, default=None, help="CSV output path (default: stdout)")
    p_scan.set_defaults(func=cmd_scan)

    p_demo = sub.add_parser("demo", parents=[common], help="named deterministic scenarios")
    p_demo.add_argument("name", type=str, help=f"one of {_DEMOS}")
    p_demo.set_defaults(func=cmd_demo)

    p_chain = sub.add_parser("chain", parents=[common], help="indirect-model error comparison chain")
    p_chain.add_argument("--dims", type=_parse_dims, default=(2, 3), help="system dimensions")
    p_chain.add_argument("--ancilla", type=int, default=2, help="ancilla dimension for random models")
    p_chain.add_argument("--n", type=int, default=50, help="random models per dimension")
    p_chain.add_argument("--model", type=str, default=None, help="JSON indirect model to check instead")
    p_chain.set_defaults(func=cmd_chain)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
