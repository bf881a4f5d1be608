"""Command-line front end: theorem suites, CLT sweeps, parameter solving.

Exit codes: 0 = all checks pass, 1 = a theorem check failed, 2 = usage
or configuration error.  Identical configuration + seed produces
byte-identical CSV/JSON; reports embed the tolerance configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import channels as chn
from . import convolution as cv
from . import entropy as ent
from .config import config as tolconf, snapshot
from . import io as qio
from . import mean_magic as mm
from . import states as st
from . import verify
from .errors import QpsError

_ALPHAS = (0.5, 1.0, 2.0, math.inf)


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_text(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj, out_path) -> None:
    _write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", out_path)


def _parse_pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 's,t', got {text!r}")
    return int(parts[0]), int(parts[1])


def _parse_g(text: str):
    vals = [int(v) for v in text.split(",")]
    if len(vals) != 4:
        raise UsageError(f"expected 'g00,g01,g10,g11', got {text!r}")
    return [[vals[0], vals[1]], [vals[2], vals[3]]]


def _parse_alphas(text: str):
    out = []
    for token in text.split(","):
        token = token.strip()
        out.append(math.inf if token in ("inf", "+inf") else float(token))
    return tuple(out)


def _resolve_params(args, d: int):
    """Pick the convolution parameters from --st / --g / --family."""
    chosen = [k for k in ("st", "g", "family") if getattr(args, k, None)]
    if len(chosen) > 1:
        raise UsageError("give only one of --st, --g, --family")
    if getattr(args, "st", None):
        s, t = _parse_pair(args.st)
        return cv.beam_splitter_params(s, t, d)
    if getattr(args, "g", None):
        return cv.classify(_parse_g(args.g), d)
    family = getattr(args, "family", None) or "beam-splitter"
    if family == "beam-splitter":
        classes = cv.solve_params(d, "circle")
        if not classes:
            raise UsageError(f"no (s,t) classes for d={d}")
        s, t = classes[0].representative
        return cv.beam_splitter_params(s, t, d)
    if family == "amplifier":
        classes = cv.solve_params(d, "hyperbola")
        if not classes:
            raise UsageError(f"no (l,m) classes for d={d}")
        l, m = classes[0].representative
        return cv.amplifier_params(l, m, d)
    if family == "hadamard":
        return cv.hadamard_params(d)
    raise UsageError(f"unknown family {family!r}")


def cmd_clt(args) -> int:
    d, n = args.d, args.n
    params = _resolve_params(args, d)
    rho = st.random_state(n, d, seed=args.seed)
    _, rho = mm.zero_mean_shift(rho)
    rep = mm.mean_state(rho)
    mg = mm.magic_gap(rho).gap
    base = float(np.linalg.norm(rho.mat - rep.mean.mat))
    lines = ["N,l2_distance,paper_bound," + ",".join(f"H_{a}" for a in _ALPHAS)]
    ok = True
    current = rho
    for step in range(args.N + 1):
        dist = float(np.linalg.norm(current.mat - rep.mean.mat))
        bound = (1 - mg) ** step * base
        ok = ok and dist <= bound + 1e-9
        hs = [ent.renyi_entropy(current, a) for a in _ALPHAS]
        lines.append(
            ",".join([str(step), _fmt(dist), _fmt(bound)] + [_fmt(h) for h in hs])
        )
        if step < args.N:
            current = cv.convolve(current, rho, params)
    _write_text("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_channel_clt(args) -> int:
    channel = qio.read_channel(args.channel)
    if args.st:
        s, t = _parse_pair(args.st)
    else:
        classes = cv.solve_params(channel.d, "circle")
        if not classes:
            raise UsageError(f"no (s,t) classes for d={channel.d}")
        s, t = classes[0].representative
    rep = chn.channel_clt(channel, (s, t), args.N)
    label = rep.shift_label
    sp = ".".join(str(v) for v in label.point.p) if rep.shifted else ""
    sq = ".".join(str(v) for v in label.point.q) if rep.shifted else ""
    lines = ["N,choi_l2_distance,paper_bound,diamond_bound,shifted,shift_p,shift_q"]
    for row in rep.rows:
        lines.append(
            ",".join(
                [
                    str(row.step),
                    _fmt(row.distance),
                    _fmt(row.bound),
                    _fmt(row.diamond_bound),
                    "1" if rep.shifted else "0",
                    sp,
                    sq,
                ]
            )
        )
    _write_text("\n".join(lines) + "\n", args.out)
    return 0 if rep.ok else 1


def cmd_params(args) -> int:
    d = args.d
    report = {"d": d, "tolerances": snapshot()}
    for family, formula in (("circle", (d + 1) // 8), ("hyperbola", (d - 3) // 4 if d >= 3 else 0)):
        classes = cv.solve_params(d, family)
        report[family] = {
            "count": len(classes),
            "formula": max(formula, 0),
            "classes": [
                {"representative": list(c.representative), "members": [list(m) for m in c.members]}
                for c in classes
            ],
        }
    if d == 2:
        report["note"] = "no positive invertible G exists for d=2"
    _json_dump(report, args.out)
    return 0


def cmd_gap(args) -> int:
    state = qio.read_state(args.state)
    gap = mm.magic_gap(state)
    rep = mm.mean_state(state)
    out = {
        "d": state.d,
        "n": state.n,
        "gap": gap.gap,
        "log_gap": gap.log_gap,
        "second_max": gap.second_max,
        "support_size": gap.support_size,
        "group_size": rep.group.size,
        "mean_value_vector": [int(k) for k in rep.phases],
        "zero_mean": mm.is_zero_mean(state),
        "tolerances": snapshot(),
    }
    _json_dump(out, args.out)
    return 0


def cmd_entropy_sweep(args) -> int:
    d, n = args.d, args.n
    params = _resolve_params(args, d)
    alphas = _parse_alphas(args.alphas)
    rho = st.random_state(n, d, seed=args.seed)
    rep = ent.check_second_law(rho, params, args.N, alphas)
    lines = ["N," + ",".join(f"H_{a}" for a in alphas)]
    for step, row in enumerate(rep.table):
        lines.append(",".join([str(step)] + [_fmt(v) for v in row]))
    _write_text("\n".join(lines) + "\n", args.out)
    return 0 if rep.ok else 1


def cmd_conv(args) -> int:
    rho = qio.read_state(args.rho)
    sigma = qio.read_state(args.sigma)
    params = _resolve_params(args, rho.d)
    out = cv.convolve(rho, sigma, params)
    if args.out:
        qio.write_state(out, args.out, form=args.form)
    else:
        _json_dump(qio.state_to_json(out, form=args.form), None)
    return 0


def cmd_verify(args) -> int:
    suite = args.suite
    if suite != "all" and suite not in verify.SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {('all',) + verify.SUITES}")
    checks = verify.run_suite(suite, args.d, args.n, args.seeds, args.jobs)
    passed = all(c.passed for c in checks)
    report = {
        "suite": suite,
        "config": {
            "d": args.d,
            "n": args.n,
            "seeds": args.seeds,
            "jobs": args.jobs,
            "tolerances": snapshot(),
        },
        "checks": [c.to_json() for c in checks],
        "pass": passed,
    }
    _json_dump(report, args.out)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qps",
        description="Qudit phase-space toolkit: convolution, magic gap, theorem checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_default=1):
        p.add_argument("--d", type=int, default=3, help="prime local dimension")
        p.add_argument("--n", type=int, default=n_default, help="number of qudits")
        p.add_argument("--seed", type=int, default=0, help="RNG seed (mandatory for randomized runs)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--jobs", type=int, default=1, help="parallel fan-out over seeds")
        p.add_argument("--tol-one", type=float, default=None, help="override |Xi|=1 threshold")
        p.add_argument("--tol-supp", type=float, default=None, help="override support threshold")

    def conv_flags(p):
        p.add_argument("--st", default=None, help="beam-splitter pair 's,t'")
        p.add_argument("--g", default=None, help="explicit G as 'g00,g01,g10,g11'")
        p.add_argument("--family", default=None,
                       choices=("beam-splitter", "amplifier", "hadamard"))

    p = sub.add_parser("clt", help="state central-limit trajectory and magic-gap bound")
    common(p)
    conv_flags(p)
    p.add_argument("--N", type=int, default=20)
    p.set_defaults(fn=cmd_clt)

    p = sub.add_parser("channel-clt", help="channel CLT trajectory from a Choi file")
    common(p)
    p.add_argument("channel", help="channel JSON file")
    p.add_argument("--st", default=None, help="beam-splitter pair 's,t'")
    p.add_argument("--N", type=int, default=12)
    p.set_defaults(fn=cmd_channel_clt)

    p = sub.add_parser("params", help="(s,t) and (l,m) class counts for a prime d")
    common(p)
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("gap", help="magic-gap report for a state file")
    common(p)
    p.add_argument("state", help="state JSON file")
    p.set_defaults(fn=cmd_gap)

    p = sub.add_parser("entropy-sweep", help="Renyi entropies along iterated convolution")
    common(p)
    conv_flags(p)
    p.add_argument("--N", type=int, default=15)
    p.add_argument("--alphas", default="0.5,1,2,inf")
    p.set_defaults(fn=cmd_entropy_sweep)

    p = sub.add_parser("conv", help="convolve two state files")
    common(p)
    conv_flags(p)
    p.add_argument("rho")
    p.add_argument("sigma")
    p.add_argument("--form", default="dense", choices=("dense", "char"))
    p.set_defaults(fn=cmd_conv)

    p = sub.add_parser("verify", help="run a theorem-check suite")
    common(p)
    p.add_argument("--suite", default="all")
    p.add_argument("--seeds", type=int, default=10)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol_one", None):
        tolconf.tol_one = args.tol_one
    if getattr(args, "tol_supp", None):
        tolconf.tol_supp = args.tol_supp
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return 2
    except (QpsError, OSError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
