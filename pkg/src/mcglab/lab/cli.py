"""Command line entry point.

    mcglab <scan> --surface {s11|s04|s05} --seed N --samples N [--radius N]
           [--threshold N] [--word-length N] [--window N] --out PATH
           [--profile PATH] [--workers N] [--config FILE] [--no-figures]

Exit status: 0 when every assertion of the scan holds, 1 when one fails,
2 on a configuration error.  For ``calibrate`` the profile is written to
--profile (default: next to --out with suffix .profile.json).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..markings import RadiusCapExceeded
from .config import SCANS, ConfigError, build_config, load_file
from .report import emit


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcglab", description="Run a reproducible projection scan.")
    p.add_argument("scan", choices=SCANS)
    p.add_argument("--surface")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--radius", type=int)
    p.add_argument("--threshold", type=int)
    p.add_argument("--word-length", dest="word_length", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--out", dest="output")
    p.add_argument("--profile")
    p.add_argument("--workers", type=int)
    p.add_argument("--config")
    p.add_argument("--no-figures", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("config", "no_figures")}
    try:
        file_values = load_file(args.config) if args.config else {}
        cfg = build_config(file_values, flags)
    except ConfigError as exc:
        print(f"mcglab: {exc}", file=sys.stderr)
        return 2

    from .scans import run_scan

    try:
        report, profile = run_scan(cfg)
    except (ConfigError, RadiusCapExceeded) as exc:
        print(f"mcglab: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"mcglab: {exc}", file=sys.stderr)
        return 2
    paths = emit(report, cfg.scan, cfg.output, figures=not args.no_figures)
    if profile is not None:
        dest = Path(cfg.profile) if cfg.profile else Path(cfg.output).with_suffix(".profile.json")
        profile.save(dest)
        paths["profile"] = str(dest)
    status = "pass" if report.passed else "FAIL"
    print(f"{cfg.scan} [{cfg.surface}] {status}: " + ", ".join(f"{k}={v}" for k, v in paths.items()))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
