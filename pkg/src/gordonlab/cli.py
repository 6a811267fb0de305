"""Reproducible experiment runner.

Every library operation sits behind a subcommand that emits a versioned
header (schema, code version, config echo, seed) followed by rows, as CSV
(``#``-prefixed header lines, then RFC-4180 rows) or as one JSON object with
the same rows.  A config file plus the code version determines every output
byte; execution-only knobs (thread count, output path) are kept out of the
echo so re-runs merge byte-identically regardless of parallelism.

Exit codes: 0 success, 1 runtime/domain error, 2 config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .arithmetic import (
    ALPHA_PRESETS,
    FixedPointFrac,
    PrecisionExhausted,
    cf_expand,
    classify_badly_approximable,
)
from .dynamics import (
    Iet,
    OutOfDomainError,
    Permutation,
    Shift,
    SkewProduct,
    SkewShift,
    TorusPoint,
    UnsupportedSystemError,
    orbit,
    system_dim,
)
from .potentials import (
    BourgainQuadratic,
    Cosine,
    DimensionMismatchError,
    PiecewiseConstant,
    WindowTooSmallError,
    gordon_profile,
    sample_potential,
)
from .repetition import (
    ConstructiveNotAvailable,
    InconsistentCertificateError,
    RepetitionNotFound,
    TowerNotFound,
    badly_approximable_obstruction,
    estimate_prp_fraction,
    find_repetition_time,
    skewshift_constructive_q,
    veech_tower_search,
    verify_certificate_against_definition,
)
from .spectral import (
    ConvergenceFailureError,
    MissingVectorsError,
    gordon_three_block_check,
    localization_diagnostics,
    truncated_spectrum,
)

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid command-line or config-file parameter (exit code 2)."""


# ---------------------------------------------------------------------------
# parameter parsing
# ---------------------------------------------------------------------------


def parse_alpha(text: str) -> FixedPointFrac:
    """Preset name, or an exact decimal/rational literal ('0.05', '3/10')."""
    key = text.strip().lower()
    if key in ALPHA_PRESETS:
        return ALPHA_PRESETS[key]
    try:
        frac = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(
            f"alpha: {text!r} is not a preset ({', '.join(sorted(ALPHA_PRESETS))}) "
            "or a decimal/rational literal"
        ) from exc
    return FixedPointFrac.from_fraction(frac.numerator, frac.denominator)


def _parse_coord_list(text: str, field: str) -> tuple[FixedPointFrac, ...]:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ConfigError(f"{field}: empty list")
    return tuple(parse_alpha(p) for p in parts)


def _parse_float_list(text: str, field: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ConfigError(f"{field}: empty list")
    try:
        return tuple(float(Fraction(p.strip())) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{field}: {text!r} is not a comma-separated number list") from exc


def _parse_int_list(text: str, field: str) -> tuple[int, ...]:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ConfigError(f"{field}: empty list")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"{field}: {text!r} is not a comma-separated integer list") from exc


def build_system(args: argparse.Namespace):
    name = args.system
    if name == "shift":
        alphas = _parse_coord_list(args.alpha, "alpha")
        return Shift(alphas)
    if name == "skewshift":
        alphas = _parse_coord_list(args.alpha, "alpha")
        if len(alphas) != 1:
            raise ConfigError("alpha: skewshift takes a single frequency")
        return SkewShift(alphas[0])
    if name == "skewproduct":
        alphas = _parse_coord_list(args.alpha, "alpha")
        if len(alphas) != 1:
            raise ConfigError("alpha: skewproduct takes a single frequency")
        if args.dim is None:
            raise ConfigError("dim: required for skewproduct")
        return SkewProduct(args.dim, alphas[0])
    if name == "iet":
        if not args.lengths or not args.perm:
            raise ConfigError("lengths/perm: required for iet")
        lengths = _parse_float_list(args.lengths, "lengths")
        images = _parse_int_list(args.perm, "perm")
        try:
            return Iet(lengths, Permutation(images))
        except ValueError as exc:
            raise ConfigError(f"iet: {exc}") from exc
    raise ConfigError(f"system: unknown variant {name!r}")


def build_omega(args: argparse.Namespace, system):
    dim = system_dim(system)
    if isinstance(system, Iet):
        if args.omega is None:
            return 0.0
        try:
            x = float(Fraction(args.omega))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"omega: {args.omega!r} is not a number") from exc
        if not 0.0 <= x < sum(system.lengths):
            raise ConfigError("omega: outside the interval")
        return x
    if args.omega is None:
        return TorusPoint((FixedPointFrac(0),) * dim)
    coords = _parse_coord_list(args.omega, "omega")
    if len(coords) != dim:
        raise ConfigError(f"omega: expected {dim} coordinates, got {len(coords)}")
    return TorusPoint(coords)


def build_function(args: argparse.Namespace):
    name = getattr(args, "function", "cosine")
    if name == "cosine":
        freq = _parse_int_list(args.freq, "freq") if args.freq else (1,)
        phase = float(args.phase) if args.phase is not None else 0.0
        return Cosine(frequency=freq, phase=phase)
    if name == "bourgain":
        return BourgainQuadratic()
    if name == "coding":
        if not args.breakpoints or not args.levels:
            raise ConfigError("breakpoints/levels: required for coding")
        breaks = _parse_float_list(args.breakpoints, "breakpoints")
        levels = _parse_float_list(args.levels, "levels")
        try:
            return PiecewiseConstant(breaks, levels)
        except ValueError as exc:
            raise ConfigError(f"coding: {exc}") from exc
    raise ConfigError(f"function: unknown variant {name!r}")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _render(value) -> str:
    if isinstance(value, float):
        # repr of the plain float: shortest round-trip digits, and numpy
        # scalars (float subclasses) would otherwise print their type name
        return repr(float(value))
    return str(value)


def emit(
    args: argparse.Namespace,
    schema: str,
    config: dict,
    columns: list[str],
    rows: list[tuple],
    seed: int | None = None,
) -> None:
    """Write the header block and rows in the selected format."""
    header = {
        "schema": f"{schema}/v{SCHEMA_VERSION}",
        "version": f"gordonlab {__version__}",
        "config": config,
    }
    if seed is not None:
        header["seed"] = seed
    fmt = args.format
    if fmt == "json":
        payload = dict(header)
        payload["columns"] = columns
        payload["rows"] = [[_render(v) for v in row] for row in rows]
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# schema: {header['schema']}\n")
        buf.write(f"# version: {header['version']}\n")
        buf.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
        if seed is not None:
            buf.write(f"# seed: {seed}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_render(v) for v in row])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_echo(args: argparse.Namespace, fields: list[str]) -> dict:
    """Echo only the scientific parameters, as the raw strings given."""
    out = {}
    for field in fields:
        value = getattr(args, field, None)
        if value is not None:
            out[field] = value if isinstance(value, (int, float, str)) else str(value)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_cf(args) -> list[tuple]:
    alpha = parse_alpha(args.alpha)
    cf = cf_expand(alpha, args.depth)
    rows = []
    for k, (a_k, (p, q)) in enumerate(zip(cf.partial_quotients, cf.convergents)):
        rows.append((k, a_k, p, q))
    args._extra = {"exhausted_at": cf.exhausted_at}
    return rows


def cmd_classify(args) -> list[tuple]:
    alpha = parse_alpha(args.alpha)
    try:
        c = Fraction(args.c)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"c: {args.c!r} is not a number") from exc
    verdict = classify_badly_approximable(alpha, c, args.qmax, method=args.method)
    return [
        (
            verdict.verdict,
            "" if verdict.witness_q is None else verdict.witness_q,
            "" if verdict.witness_dist is None else verdict.witness_dist,
        )
    ]


def cmd_orbit(args) -> list[tuple]:
    system = build_system(args)
    omega = build_omega(args, system)
    if args.nmin > args.nmax:
        raise ConfigError("nmin: must be <= nmax")
    points = orbit(system, omega, args.nmin, args.nmax)
    rows = []
    for n, p in zip(range(args.nmin, args.nmax + 1), points):
        if isinstance(p, TorusPoint):
            rows.append((n, *(c.to_float() for c in p.coords)))
        else:
            rows.append((n, p))
    return rows


def cmd_repeat(args) -> list[tuple]:
    system = build_system(args)
    omega = build_omega(args, system)
    result = find_repetition_time(system, omega, args.eps, args.r, args.qmax)
    if isinstance(result, RepetitionNotFound):
        return [
            (
                "not_found",
                "",
                "",
                "" if result.best_q is None else result.best_q,
                result.best_dist,
            )
        ]
    return [("found", result.q, result.k_max, result.q, result.max_dist)]


def cmd_construct_q(args) -> list[tuple]:
    alpha = parse_alpha(args.alpha)
    omega1 = parse_alpha(args.omega1) if args.omega1 else FixedPointFrac(0)
    cf = cf_expand(alpha, 64)
    rep = skewshift_constructive_q(
        alpha, omega1, args.eps, cf, r=args.r, max_base_q=args.max_base_q
    )
    if isinstance(rep, ConstructiveNotAvailable):
        args._extra = {"reason": rep.reason}
        return [("not_available", "", "", "", "", 0)]
    verified = verify_certificate_against_definition(rep.certificate, SkewShift(alpha))
    return [("found", rep.q, rep.m, rep.base_q, rep.reported_epsilon, int(verified))]


def cmd_prp_measure(args) -> list[tuple]:
    system = build_system(args)
    est = estimate_prp_fraction(
        system,
        args.eps,
        args.r,
        args.qmax,
        args.samples,
        seed=args.seed,
        threads=args.threads,
    )
    return [
        (
            est.n_samples,
            est.n_hits,
            est.fraction,
            est.wilson_ci[0],
            est.wilson_ci[1],
        )
    ]


def cmd_veech(args) -> list[tuple]:
    system = build_system(args)
    if not isinstance(system, Iet):
        raise ConfigError("system: veech requires --system iet")
    tower = veech_tower_search(system, args.eps, args.qmax)
    if isinstance(tower, TowerNotFound):
        return [
            (
                "not_found",
                "",
                "",
                "",
                tower.best_coverage,
                tower.best_overlap_fraction,
            )
        ]
    lo, hi = tower.interval
    return [
        ("found", tower.q, float(lo), float(hi - lo), tower.coverage, tower.return_overlap)
    ]


def cmd_gordon(args) -> list[tuple]:
    system = build_system(args)
    omega = build_omega(args, system)
    f = build_function(args)
    q_list = _parse_int_list(args.q_list, "q-list")
    c_list = _parse_float_list(args.c_list, "c-list") if args.c_list else (2.0,)
    try:
        profile = gordon_profile(system, f, args.lam, omega, q_list, c_list)
    except ValueError as exc:
        raise ConfigError(f"q-list/c-list: {exc}") from exc
    args._extra = {"verdict": profile.verdict, "c_max": profile.c_max}
    return [(q, g) for q, g in profile.entries]


def cmd_transfer(args) -> list[tuple]:
    system = build_system(args)
    omega = build_omega(args, system)
    f = build_function(args)
    q = args.q
    window = sample_potential(system, f, args.lam, omega, 1 - q, 2 * q)
    u0 = _parse_float_list(args.u0, "u0") if args.u0 else (1.0, 0.0)
    if len(u0) != 2:
        raise ConfigError("u0: expected two components")
    report = gordon_three_block_check(window, args.energy, q, u0)
    return [
        (
            report.q,
            report.energy,
            report.norm_plus,
            report.norm_plus2,
            report.norm_minus,
            report.min_ratio,
            report.gamma,
            report.det_drift,
        )
    ]


def cmd_spectrum(args) -> list[tuple]:
    system = build_system(args)
    omega = build_omega(args, system)
    f = build_function(args)
    if args.sites < 1:
        raise ConfigError("sites: must be >= 1")
    window = sample_potential(system, f, args.lam, omega, 1, args.sites)
    report = truncated_spectrum(window, args.sites, report_vectors=args.vectors)
    if args.vectors:
        summary = localization_diagnostics(report)
        args._extra = {
            "median_ipr": summary.median_ipr,
            "max_edge_mass": summary.max_edge_mass,
        }
        return [
            (k, float(e), float(i), float(m))
            for k, (e, i, m) in enumerate(
                zip(report.eigenvalues, report.ipr, report.edge_mass)
            )
        ]
    return [(k, float(e)) for k, e in enumerate(report.eigenvalues)]


_SUBCOMMANDS = {
    "cf": (cmd_cf, ["k", "a_k", "p_k", "q_k"], ["alpha", "depth"]),
    "classify": (
        cmd_classify,
        ["verdict", "witness_q", "witness_dist"],
        ["alpha", "c", "qmax", "method"],
    ),
    "orbit": (
        cmd_orbit,
        None,  # depends on dimension; filled at runtime
        ["system", "alpha", "dim", "lengths", "perm", "omega", "nmin", "nmax"],
    ),
    "repeat": (
        cmd_repeat,
        ["status", "q", "k_max", "best_q", "max_dist"],
        ["system", "alpha", "dim", "lengths", "perm", "omega", "eps", "r", "qmax"],
    ),
    "construct-q": (
        cmd_construct_q,
        ["status", "q", "m", "base_q", "epsilon_rep", "verified"],
        ["alpha", "omega1", "eps", "r", "max_base_q"],
    ),
    "prp-measure": (
        cmd_prp_measure,
        ["n_samples", "n_hits", "fraction", "wilson_lo", "wilson_hi"],
        ["system", "alpha", "dim", "lengths", "perm", "eps", "r", "qmax", "samples"],
    ),
    "veech": (
        cmd_veech,
        ["status", "q", "interval_lo", "interval_len", "coverage", "return_overlap"],
        ["system", "lengths", "perm", "eps", "qmax"],
    ),
    "gordon": (
        cmd_gordon,
        ["q", "gamma"],
        [
            "system",
            "alpha",
            "dim",
            "lengths",
            "perm",
            "omega",
            "function",
            "freq",
            "phase",
            "breakpoints",
            "levels",
            "lam",
            "q_list",
            "c_list",
        ],
    ),
    "transfer": (
        cmd_transfer,
        [
            "q",
            "energy",
            "norm_plus",
            "norm_plus2",
            "norm_minus",
            "min_ratio",
            "gamma",
            "det_drift",
        ],
        [
            "system",
            "alpha",
            "dim",
            "omega",
            "function",
            "freq",
            "phase",
            "breakpoints",
            "levels",
            "lam",
            "q",
            "energy",
            "u0",
        ],
    ),
    "spectrum": (
        cmd_spectrum,
        None,
        [
            "system",
            "alpha",
            "dim",
            "omega",
            "function",
            "freq",
            "phase",
            "breakpoints",
            "levels",
            "lam",
            "sites",
            "vectors",
        ],
    ),
}


def _spectrum_columns(args) -> list[str]:
    if args.vectors:
        return ["k", "energy", "ipr", "edge_mass"]
    return ["k", "energy"]


def _orbit_columns(args, rows) -> list[str]:
    if rows and len(rows[0]) == 2:
        return ["n", "x"]
    width = len(rows[0]) - 1 if rows else 1
    return ["n"] + [f"w{i + 1}" for i in range(width)]


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_system_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--system", default="shift", choices=["shift", "skewshift", "skewproduct", "iet"])
    p.add_argument("--alpha", help="preset name, decimal, or p/q (comma-separated for multi-dim shifts)")
    p.add_argument("--dim", type=int, help="dimension (skewproduct)")
    p.add_argument("--lengths", help="comma-separated IET lengths")
    p.add_argument("--perm", help="comma-separated IET permutation images (1-based)")


def _add_function_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", default="cosine", choices=["cosine", "bourgain", "coding"])
    p.add_argument("--freq", help="comma-separated integer frequency vector (cosine)")
    p.add_argument("--phase", type=float, help="phase offset in turns (cosine)")
    p.add_argument("--breakpoints", help="comma-separated breakpoints in [0,1) (coding)")
    p.add_argument("--levels", help="comma-separated values per piece (coding)")


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="gordonlab",
        description="Repetition-time, defect, and transfer-matrix experiments.",
    )
    root.add_argument("--version", action="version", version=f"gordonlab {__version__}")
    sub = root.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", default="csv", choices=["csv", "json"])
        p.add_argument("--output", help="output path (default: stdout)")

    p = sub.add_parser("cf", help="continued-fraction expansion and convergents")
    p.add_argument("--alpha", required=True)
    p.add_argument("--depth", type=int, default=32)
    common(p)

    p = sub.add_parser("classify", help="badly-approximable scan up to a horizon")
    p.add_argument("--alpha", required=True)
    p.add_argument("--c", required=True, help="constant c in q<q alpha> >= c")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--method", default="auto", choices=["auto", "scan", "convergents"])
    common(p)

    p = sub.add_parser("orbit", help="orbit coordinates over a site range")
    _add_system_flags(p)
    p.add_argument("--omega", help="start point (comma-separated; default origin)")
    p.add_argument("--nmin", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    common(p)

    p = sub.add_parser("repeat", help="search for a repetition certificate")
    _add_system_flags(p)
    p.add_argument("--omega")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--qmax", type=int, required=True)
    common(p)

    p = sub.add_parser("construct-q", help="constructive skew-shift repetition times")
    p.add_argument("--alpha", required=True)
    p.add_argument("--omega1")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--max-base-q", type=int, dest="max_base_q")
    common(p)

    p = sub.add_parser("prp-measure", help="Monte Carlo repetition-fraction estimate")
    _add_system_flags(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("GORDONLAB_THREADS", "1")),
    )
    common(p)

    p = sub.add_parser("veech", help="tower search for an interval exchange")
    _add_system_flags(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--qmax", type=int, required=True)
    common(p)

    p = sub.add_parser("gordon", help="defect profile gamma(q) and decay verdict")
    _add_system_flags(p)
    _add_function_flags(p)
    p.add_argument("--omega")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--q-list", dest="q_list", required=True)
    p.add_argument("--c-list", dest="c_list")
    common(p)

    p = sub.add_parser("transfer", help="three-block norms for a period block")
    _add_system_flags(p)
    _add_function_flags(p)
    p.add_argument("--omega")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--u0", help="two comma-separated components (default 1,0)")
    common(p)

    p = sub.add_parser("spectrum", help="truncated spectrum with localization stats")
    _add_system_flags(p)
    _add_function_flags(p)
    p.add_argument("--omega")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--vectors", action="store_true")
    common(p)

    p = sub.add_parser("run", help="run a subcommand from a JSON config file")
    p.add_argument("config", help="path to a JSON config file")
    return root


def _args_from_config(path: str) -> list[str]:
    """Translate a JSON config into the equivalent flag list."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict) or "subcommand" not in raw:
        raise ConfigError("config: top-level object with a 'subcommand' field required")
    sub_name = raw.pop("subcommand")
    if sub_name not in _SUBCOMMANDS:
        raise ConfigError(f"config: subcommand {sub_name!r} unknown")
    argv = [sub_name]
    for key, value in raw.items():
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        else:
            argv.extend([flag, str(value)])
    return argv


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            args = parser.parse_args(_args_from_config(args.config))
        handler, columns, echo_fields = _SUBCOMMANDS[args.command]
        args._extra = {}
        rows = handler(args)
        if args.command == "spectrum":
            columns = _spectrum_columns(args)
        elif args.command == "orbit":
            columns = _orbit_columns(args, rows)
        config = _config_echo(args, echo_fields)
        if getattr(args, "_extra", None):
            config.update({k: _render(v) if isinstance(v, float) else v for k, v in args._extra.items()})
        emit(
            args,
            args.command,
            config,
            columns,
            rows,
            seed=getattr(args, "seed", None),
        )
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (
        ValueError,
        OutOfDomainError,
        UnsupportedSystemError,
        DimensionMismatchError,
        WindowTooSmallError,
        InconsistentCertificateError,
        PrecisionExhausted,
        ConvergenceFailureError,
        MissingVectorsError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
