"""Command line front end for the sweep driver.

Configuration comes from an optional flat `key = value` file plus flags;
flags override file entries, both override the built-in defaults (mu = 4,
alpha in {1, 2, 5}, window [-1, 9] x [-6, 6], N = 599, 5 states).  The only
repeated-key convention in the file is `alpha`, listed once per value:

    mu = 4
    alpha = 1
    alpha = 2.5
    domain = -1 9
    outputs = spectrum observables probability contours
    out = results

Exit status: 0 on full success, 1 if any sweep point failed, 2 on a
configuration problem.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigurationError
from .sweep import DEFAULT_OUTPUTS, OUTPUT_KINDS, SweepConfig, SweepPointError, run_sweep

__all__ = ["main", "build_parser", "parse_config_file", "config_from_args"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snwell-sweep",
        description="Sweep the well-depth parameter alpha at fixed mu and write "
        "spectra, observables, Wigner grids, nonreactive probabilities, and "
        "classical contours as reproducible data files.",
    )
    parser.add_argument("--config", type=Path, metavar="FILE",
                        help="flat 'key = value' config file; flags override it")
    parser.add_argument("--mu", type=float, help="equilibrium-separation parameter (default 4)")
    parser.add_argument("--alpha", type=float, action="append", metavar="A",
                        help="well-depth parameter, repeatable (default 1 2 5)")
    parser.add_argument("--alpha-range", nargs=3, type=float, metavar=("START", "STOP", "COUNT"),
                        help="evenly spaced alpha values, inclusive endpoints")
    parser.add_argument("--domain", nargs=2, type=float, metavar=("A", "B"),
                        help="spatial window (default -1 9)")
    parser.add_argument("--pdomain", nargs=2, type=float, metavar=("C", "D"),
                        help="momentum window (default -6 6)")
    parser.add_argument("--n-points", type=int, metavar="N",
                        help="grid points per axis, endpoints included (default 599)")
    parser.add_argument("--n-states", type=int, metavar="K",
                        help="number of lowest eigenstates (default 5)")
    parser.add_argument("--hbar", type=float, help="reduced Planck constant (default 1)")
    parser.add_argument("--mass", type=float, help="particle mass (default 1)")
    parser.add_argument("--outputs", metavar="LIST",
                        help=f"comma or space separated subset of {OUTPUT_KINDS} "
                        f"(default: {' '.join(sorted(DEFAULT_OUTPUTS))})")
    parser.add_argument("--out", type=Path, metavar="DIR", help="output directory")
    parser.add_argument("--fail-fast", action="store_true", default=None,
                        help="abort on the first failing sweep point")
    parser.add_argument("--threads", type=int, metavar="T",
                        help="worker pool size (default: available parallelism)")
    return parser


def parse_config_file(path: Path) -> dict[str, list[str]]:
    """Read a flat key = value file; repeated keys accumulate in order."""
    entries: dict[str, list[str]] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        entries.setdefault(key.strip().replace("-", "_"), []).append(value.strip())
    return entries


def _scalar(entries: dict[str, list[str]], key: str) -> str | None:
    values = entries.get(key)
    if values is None:
        return None
    if len(values) > 1:
        raise ConfigurationError(f"config key '{key}' appears {len(values)} times")
    return values[0]


def _floats(text: str, key: str, count: int) -> tuple[float, ...]:
    parts = text.split()
    if len(parts) != count:
        raise ConfigurationError(f"'{key}' needs {count} numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ConfigurationError(f"'{key}': {exc}") from exc


def _alpha_list(start: float, stop: float, count: float) -> tuple[float, ...]:
    if count != int(count) or int(count) < 1:
        raise ConfigurationError(f"alpha range count must be a positive integer, got {count}")
    return tuple(float(a) for a in np.linspace(start, stop, int(count)))


def _resolve_alphas(args, entries) -> tuple[float, ...] | None:
    if args.alpha is not None and args.alpha_range is not None:
        raise ConfigurationError("--alpha and --alpha-range are mutually exclusive")
    if args.alpha is not None:
        return tuple(args.alpha)
    if args.alpha_range is not None:
        return _alpha_list(*args.alpha_range)
    file_alphas = entries.get("alpha")
    file_range = _scalar(entries, "alpha_range")
    if file_alphas is not None and file_range is not None:
        raise ConfigurationError("config sets both 'alpha' and 'alpha_range'")
    if file_alphas is not None:
        try:
            return tuple(float(a) for a in file_alphas)
        except ValueError as exc:
            raise ConfigurationError(f"'alpha': {exc}") from exc
    if file_range is not None:
        return _alpha_list(*_floats(file_range, "alpha_range", 3))
    return None


def _parse_bool(text: str, key: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigurationError(f"'{key}' must be a boolean, got {text!r}")


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    """Merge CLI flags over config-file entries over the defaults."""
    entries = parse_config_file(args.config) if args.config else {}
    known = {"mu", "alpha", "alpha_range", "domain", "pdomain", "n_points", "n_states",
             "hbar", "mass", "outputs", "out", "fail_fast", "threads"}
    unknown = set(entries) - known
    if unknown:
        raise ConfigurationError(f"unknown config keys {sorted(unknown)}")

    defaults = SweepConfig()
    kwargs = {}

    def pick(flag_value, key, convert, default):
        if flag_value is not None:
            return flag_value
        raw = _scalar(entries, key)
        if raw is not None:
            try:
                return convert(raw)
            except ConfigurationError:
                raise
            except ValueError as exc:
                raise ConfigurationError(f"'{key}': {exc}") from exc
        return default

    kwargs["mu"] = pick(args.mu, "mu", float, defaults.mu)
    kwargs["hbar"] = pick(args.hbar, "hbar", float, defaults.hbar)
    kwargs["mass"] = pick(args.mass, "mass", float, defaults.mass)
    kwargs["n_points"] = pick(args.n_points, "n_points", int, defaults.n_points)
    kwargs["n_states"] = pick(args.n_states, "n_states", int, defaults.n_states)
    kwargs["threads"] = pick(args.threads, "threads", int, defaults.threads)
    kwargs["domain"] = tuple(
        pick(args.domain, "domain", lambda t: _floats(t, "domain", 2), defaults.domain)
    )
    kwargs["momentum_domain"] = tuple(
        pick(args.pdomain, "pdomain", lambda t: _floats(t, "pdomain", 2),
             defaults.momentum_domain)
    )
    kwargs["output_dir"] = Path(pick(args.out, "out", Path, defaults.output_dir))
    kwargs["fail_fast"] = pick(
        args.fail_fast, "fail_fast", lambda t: _parse_bool(t, "fail_fast"), defaults.fail_fast
    )
    outputs = pick(args.outputs, "outputs", str, None)
    if outputs is None:
        kwargs["outputs"] = defaults.outputs
    else:
        kwargs["outputs"] = frozenset(outputs.replace(",", " ").split())
    alphas = _resolve_alphas(args, entries)
    kwargs["alpha_values"] = defaults.alpha_values if alphas is None else alphas
    return SweepConfig(**kwargs)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        records = run_sweep(cfg)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except SweepPointError as exc:
        for failure in exc.failures:
            print(
                f"sweep point alpha={failure.alpha} n={failure.state_index} failed: "
                f"{failure.message}",
                file=sys.stderr,
            )
        return 1
    print(
        f"wrote {len(records)} records for {len(cfg.alpha_values)} alpha value(s) "
        f"to {cfg.output_dir}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
