"""Command-line front end: figure data for squeezing, P(n), W and f, plus the oracle battery.

Sweeps use ``START:STOP:STEPS`` with both endpoints included and STEPS counting
points; a bare number or a comma-separated list is also accepted.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import warnings
from typing import Sequence

import numpy as np

from catdecay.cat_states import DegenerateNormError, new_cat
from catdecay.dynamics import decay
from catdecay.observables import (
    DEFAULT_EPSILON,
    decoherence_threshold_alpha,
    interference_decay_factor,
    photon_number_distribution,
    squeezing_factors,
)
from catdecay.truncation import TruncationWarning
from catdecay.verify import GROUPS, run_battery
from catdecay.wigner import GridSpec, grid_integral, mixture_peaks, negativity_volume, wigner_grid

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NO_THRESHOLD = 4

NAMED_PHASES = {"ecs": 0.0, "ocs": math.pi, "yss": 0.5 * math.pi}


class ConfigError(ValueError):
    pass


def fmt(x: float) -> str:
    return f"{x:.17g}"


def tag(x: float) -> str:
    """Shortest round-tripping text for a value used in a column or file name."""
    return repr(float(x)).removesuffix(".0")


def parse_alpha(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"--alpha expects RE or RE,IM, got {text!r}")


def parse_sweep(text: str, name: str = "--tau") -> np.ndarray:
    try:
        if ":" in text:
            start, stop, steps = text.split(":")
            start, stop, steps = float(start), float(stop), int(steps)
            if steps == 1 and start == stop:
                return np.array([start])
            if steps < 2 or not stop > start:
                raise ConfigError(f"{name} sweep needs STEPS >= 2 and STOP > START, got {text!r}")
            return np.linspace(start, stop, steps)
        return np.array([float(v) for v in text.split(",")])
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{name}: cannot parse {text!r}") from None


def parse_grid(text: str) -> GridSpec:
    def axis(part):
        lo, hi, n = part.split(":")
        return float(lo), float(hi), int(n)

    try:
        parts = text.split(",")
        if len(parts) not in (1, 2):
            raise ValueError
        x = axis(parts[0])
        y = axis(parts[1]) if len(parts) == 2 else x
        return GridSpec(x[0], x[1], x[2], y[0], y[1], y[2])
    except ValueError as exc:
        raise ConfigError(f"--grid expects XMIN:XMAX:NX[,YMIN:YMAX:NY], got {text!r} ({exc})") from None


def resolve_phi(args) -> float:
    if args.state == "custom":
        if args.phi is None:
            raise ConfigError("--state custom requires --phi")
        return args.phi
    if args.phi is not None:
        raise ConfigError("--phi is only valid with --state custom")
    return NAMED_PHASES[args.state]


def make_cat(alpha: complex, phi: float):
    try:
        return new_cat(alpha, phi)
    except DegenerateNormError as exc:
        raise ConfigError(str(exc)) from None


def render_table(columns: Sequence[str], rows, fmt_name: str) -> str:
    if fmt_name == "json":
        body = ",".join("[" + ",".join(fmt(v) for v in row) + "]" for row in rows)
        return '{"columns": ' + json.dumps(list(columns)) + ', "data": [' + body + "]}\n"
    lines = [",".join(columns)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_output(text: str, path: str | None) -> None:
    """Write to ``path`` atomically, or to stdout when no path is given."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".catdecay-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _suffixed(path: str, alpha: complex) -> str:
    root, ext = os.path.splitext(path)
    tag_ = tag(alpha.real) if alpha.imag == 0 else f"{tag(alpha.real)}_{tag(alpha.imag)}"
    return f"{root}_alpha{tag_}{ext}"


def _alpha_tag(alpha: complex) -> str:
    return tag(alpha.real) if alpha.imag == 0 else f"{tag(alpha.real)}{'+' if alpha.imag >= 0 else '-'}{tag(abs(alpha.imag))}j"


def cmd_squeeze(args) -> int:
    phi = resolve_phi(args)
    alphas = [parse_alpha(a) for a in (args.alpha or ["1"])]
    taus = parse_sweep(args.tau or "0:3:301")
    cats = [make_cat(a, phi) for a in alphas]
    tables = []
    for cat in cats:
        rows = []
        for tau in taus:
            sf = squeezing_factors(decay(cat, tau))
            rows.append((tau, sf.s1, sf.s2))
        tables.append(rows)
    if len(alphas) == 1:
        write_output(render_table(["tau", "s1", "s2"], tables[0], args.format), args.out)
    elif args.wide or args.out is None:
        cols = ["tau"]
        for a in alphas:
            cols += [f"s1_alpha{_alpha_tag(a)}", f"s2_alpha{_alpha_tag(a)}"]
        rows = [[t] + [v for tab in tables for v in tab[i][1:]] for i, t in enumerate(taus)]
        write_output(render_table(cols, rows, args.format), args.out)
    else:
        for a, tab in zip(alphas, tables):
            write_output(render_table(["tau", "s1", "s2"], tab, args.format), _suffixed(args.out, a))
    return EXIT_OK


def cmd_pnd(args) -> int:
    phi = resolve_phi(args)
    alpha = parse_alpha(args.alpha[0] if args.alpha else "1")
    taus = parse_sweep(args.tau or "0")
    if np.any(taus < 0):
        raise ConfigError("--tau must be >= 0")
    cat = make_cat(alpha, phi)
    n_max = args.nmax
    dists = [photon_number_distribution(decay(cat, t), n_max) for t in taus]
    if len(taus) == 1:
        cols = ["n", "p"]
    else:
        cols = ["n"] + [f"p_tau{tag(t)}" for t in taus]
    rows = [[n] + [d.probs[n] for d in dists] for n in range(len(dists[0]))]
    write_output(render_table(cols, rows, args.format), args.out)
    return EXIT_OK


def cmd_wigner(args) -> int:
    phi = resolve_phi(args)
    alpha = parse_alpha(args.alpha[0] if args.alpha else "1")
    taus = parse_sweep(args.tau or "0")
    if len(taus) != 1 or taus[0] < 0:
        raise ConfigError("wigner takes a single --tau >= 0")
    spec = parse_grid(args.grid) if args.grid else GridSpec()
    dc = decay(make_cat(alpha, phi), taus[0])
    grid = wigner_grid(dc, spec)
    text = grid.to_json() + "\n" if args.format == "json" else grid.to_csv()
    write_output(text, args.out)
    left, right = mixture_peaks(grid)
    summary = (
        f"integral={fmt(grid_integral(grid))} min={fmt(float(grid.values.min()))} "
        f"max={fmt(float(grid.values.max()))} negativity={fmt(negativity_volume(grid))} "
        f"peaks=({fmt(left[0])},{fmt(left[1])});({fmt(right[0])},{fmt(right[1])})"
    )
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_falpha(args) -> int:
    alphas = parse_sweep(args.alpha[0] if args.alpha else "0:6:121", "--alpha")
    taus = parse_sweep(args.tau or "0.1,0.3,0.8,1.2")
    if np.any(alphas < 0) or np.any(taus < 0):
        raise ConfigError("falpha needs alpha >= 0 and tau >= 0")
    cols = ["alpha", "f"] if len(taus) == 1 else ["alpha"] + [f"f_tau{tag(t)}" for t in taus]
    rows = [[a] + [interference_decay_factor(a, t) for t in taus] for a in alphas]
    write_output(render_table(cols, rows, args.format), args.out)
    return EXIT_OK


def cmd_threshold(args) -> int:
    taus = parse_sweep(args.tau or "0.3")
    if len(taus) != 1 or not taus[0] > 0:
        raise ConfigError("threshold takes a single --tau > 0")
    if not 0.0 < args.epsilon < 1.0:
        raise ConfigError(f"--epsilon must lie in (0, 1), got {args.epsilon}")
    if args.alpha_max < args.alpha_min:
        raise ConfigError("--alpha-max must be >= --alpha-min")
    grid = np.arange(args.alpha_min, args.alpha_max + 0.5 * args.alpha_step, args.alpha_step)
    tau = float(taus[0])
    alpha = decoherence_threshold_alpha(tau, args.epsilon, grid)
    if args.format == "json":
        payload = {"tau": tau, "epsilon": args.epsilon, "alpha": alpha}
        write_output(json.dumps(payload) + "\n", args.out)
    elif alpha is not None:
        write_output(fmt(alpha) + "\n", args.out)
    if alpha is None:
        print(f"no alpha in [{args.alpha_min}, {args.alpha_max}] reaches f <= {args.epsilon} at tau={tau}", file=sys.stderr)
        return EXIT_NO_THRESHOLD
    return EXIT_OK


def cmd_verify(args) -> int:
    only = []
    for item in args.only or []:
        only.extend(s for s in item.split(",") if s)
    bad = set(only) - set(GROUPS)
    if bad:
        raise ConfigError(f"--only accepts {', '.join(GROUPS)}; got {', '.join(sorted(bad))}")
    results = run_battery(only or None, n_max=args.nmax)
    ok = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "passed": ok,
            "checks": [
                {"group": r.group, "name": r.name, "passed": r.passed, "worst": r.worst, "tolerance": r.tolerance, "notes": r.notes}
                for r in results
            ],
        }
        write_output(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [r.line() for r in results]
        lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
        write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catdecay", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, state=True, tau_help="START:STOP:STEPS, a value, or a comma list"):
        if state:
            p.add_argument("--state", choices=["ecs", "ocs", "yss", "custom"], default="ecs")
            p.add_argument("--phi", type=float, help="relative phase in radians (with --state custom)")
        p.add_argument("--tau", help=tau_help)
        p.add_argument("--out", help="output file (written atomically); stdout if omitted")
        p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("squeeze", help="squeezing factors S1, S2 against tau")
    common(p, tau_help="tau sweep (default 0:3:301)")
    p.add_argument("--alpha", action="append", help="RE[,IM]; repeat for several amplitudes")
    p.add_argument("--wide", action="store_true", help="one file with suffixed columns per alpha")
    p.set_defaults(func=cmd_squeeze)

    p = sub.add_parser("pnd", help="photon-number distribution P(n)")
    common(p, tau_help="tau value or list (default 0)")
    p.add_argument("--alpha", action="append", help="RE[,IM]")
    p.add_argument("--nmax", type=int, help="Fock cutoff (default: truncation rule)")
    p.set_defaults(func=cmd_pnd)

    p = sub.add_parser("wigner", help="Wigner function on a grid")
    common(p, tau_help="single tau (default 0)")
    p.add_argument("--alpha", action="append", help="RE[,IM]")
    p.add_argument("--grid", help="XMIN:XMAX:NX[,YMIN:YMAX:NY] (default -4:4:129)")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("falpha", help="interference decay factor f against alpha")
    common(p, state=False, tau_help="tau value or list (default 0.1,0.3,0.8,1.2)")
    p.add_argument("--alpha", action="append", help="alpha sweep START:STOP:STEPS (default 0:6:121)")
    p.set_defaults(func=cmd_falpha)

    p = sub.add_parser("threshold", help="smallest grid alpha with f <= epsilon")
    common(p, state=False, tau_help="single tau > 0")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--alpha-min", type=float, default=1.0)
    p.add_argument("--alpha-max", type=float, default=10.0)
    p.add_argument("--alpha-step", type=float, default=1.0)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("verify", help="run the oracle battery")
    p.add_argument("--only", action="append", help=f"comma list of groups: {','.join(GROUPS)}")
    p.add_argument("--nmax", type=int, help="force one Fock cutoff for every matrix")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv", help="csv gives a text report")
    p.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = ("--grid", "--tau", "--alpha", "--phi")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--grid -4:4:129`` into ``--grid=-4:4:129`` so argparse does not read it as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] == "."):
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", TruncationWarning)
            return args.func(args)
    except ConfigError as exc:
        print(f"catdecay {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"catdecay {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
