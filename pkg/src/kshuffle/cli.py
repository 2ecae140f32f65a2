"""Command line: sample, enumerate, verify, render.

Exit codes: 0 ok, 2 usage or configuration error, 3 invariant violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import secrets
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import checks, oracle, render, shuffle
from .dynamics import DynamicsError
from .tiling import WeightConfig, dumps, loads, total_interactions

log = logging.getLogger("kshuffle")

DEFAULT_SEED = 1


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    rank: int = 2
    colors: int = 2
    t: str = "1"
    c: str = "uniform"
    b: str = "uniform"
    seed: int | None = None
    entropy: bool = False
    out: str | None = None

    def weights(self, exact: bool = False) -> WeightConfig:
        return WeightConfig(parse_weights(self.c, self.rank, exact),
                            parse_weights(self.b, self.rank, exact), parse_number(self.t, exact))

    def resolved_seed(self) -> int:
        if self.seed is not None:
            return self.seed
        if self.entropy:
            s = secrets.randbits(64)
            log.info("entropy seed %d", s)
            return s
        env = os.environ.get("AZTEC_SEED")
        if env is not None:
            try:
                return int(env, 0)
            except ValueError:
                raise ConfigError(f"AZTEC_SEED is not an integer: {env!r}")
        return DEFAULT_SEED


def parse_number(s, exact: bool):
    s = str(s).strip()
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError):
        if s.lower() in ("inf", "infinity") and not exact:
            return float("inf")
        raise ConfigError(f"not a number: {s!r}")
    return x if exact else float(x)


def parse_weights(s, N: int, exact: bool) -> tuple:
    if isinstance(s, (list, tuple)):
        vals = [parse_number(x, exact) for x in s]
    elif str(s).strip() == "uniform":
        vals = [parse_number("1", exact)] * N
    else:
        vals = [parse_number(x, exact) for x in str(s).split(",") if x.strip()]
        if len(vals) == 1:
            vals = vals * max(N, 1)   # one value means constant weights
    if len(vals) < N:
        raise ConfigError(f"need {N} weights, got {len(vals)}")
    return tuple(vals)


def load_config(args) -> RunConfig:
    """flags > config file > defaults"""
    cfg = RunConfig()
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config: {e}")
        for key, val in doc.items():
            if not hasattr(cfg, key):
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, key, val)
    for key in asdict(cfg):
        val = getattr(args, key, None)
        if val is not None and val is not False:
            setattr(cfg, key, val)
    if cfg.rank < 0 or cfg.colors < 1:
        raise ConfigError("need rank >= 0 and colors >= 1")
    return cfg


def _emit(text: str, path: str | None):
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_sample(args) -> int:
    cfg = load_config(args)
    w = cfg.weights()
    t_inf = w.t == float("inf")
    if t_inf:
        w = WeightConfig(w.c, w.b, 1.0)
    seed = cfg.resolved_seed()
    t0 = time.time()
    last = [t0]

    def tick(n):
        now = time.time()
        log.debug("step %d: %.4fs", n, now - last[0])
        last[0] = now

    KT = shuffle.sample_stepwise(cfg.rank, cfg.colors, w, seed, t_inf=t_inf, on_step=tick)
    log.info("rank %d, %d colors, seed %d: %.2fs", cfg.rank, cfg.colors, seed, time.time() - t0)
    if args.count_interactions:
        log.info("interactions: %d", total_interactions(KT))
    _emit(dumps(KT), cfg.out)
    if args.svg:
        opts = render.RenderOptions(layout=args.layout, cell_px=args.cell_px, compass=True,
                                    checkerboard=False)
        _emit(render.to_svg(KT, opts), args.svg)
    return 0


def cmd_enumerate(args) -> int:
    cfg = load_config(args)
    w = cfg.weights(exact=True)
    try:
        dist = oracle.exact_distribution(cfg.rank, cfg.colors, w)
    except oracle.CapExceeded as e:
        raise ConfigError(str(e))
    _emit(json.dumps(oracle.distribution_to_dict(dist)), cfg.out)
    return 0


SUITES = ("product-formula", "sampler", "coupling", "spider", "bijection")


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in suites:
        if name == "product-formula":
            colors = (args.colors,) if args.colors else (1, 2)
            reports.append(checks.product_formula_suite(args.max_rank or 3, colors))
            reports.append(checks.convention_suite())
        elif name == "sampler":
            reports.append(checks.sampler_suite(rank=args.rank or 2, colors=args.colors or 2,
                                                samples=args.samples or 100_000, seed=seed,
                                                threads=args.threads or os.cpu_count() or 1))
        elif name == "coupling":
            colors = (args.colors,) if args.colors else (1, 2, 3)
            reports.append(checks.coupling_suite(args.steps or args.rank or 10, colors,
                                                 seeds=args.trials or 50, seed=seed))
        elif name == "spider":
            reports.append(checks.spider_suite(trials=args.trials or 100, seed=seed))
        elif name == "bijection":
            reports.append(checks.bijection_suite(max_rank=args.max_rank or 3, seed=seed))
            reports.append(checks.interaction_suite(args.max_rank or 3))
    ok = all(r["ok"] for r in reports)
    print(json.dumps({"ok": ok, "reports": reports}, indent=1, default=str))
    return 0 if ok else 3


def cmd_render(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            KT = loads(fh.read())
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"cannot read tiling dump: {e}")
    opts = render.RenderOptions(layout=args.layout, cell_px=args.cell_px,
                                show_particles=args.show_particles, compass=args.compass)
    _emit(render.to_svg(KT, opts), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="kshuffle", description=__doc__)
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def weights_args(sp):
        sp.add_argument("--config")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--colors", type=int)
        sp.add_argument("--t", help="decimal or rational, e.g. 0.2 or 1/3; 'inf' when sampling")
        sp.add_argument("--c", help="comma-separated c weights or 'uniform'")
        sp.add_argument("--b", help="comma-separated b weights or 'uniform'")
        sp.add_argument("--out")

    sp = sub.add_parser("sample", parents=[common], help="exact sample of a k-tiling")
    weights_args(sp)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--entropy", action="store_true", help="seed from the OS instead of the default")
    sp.add_argument("--svg", help="also write a compass-colored SVG")
    sp.add_argument("--layout", choices=("panels", "overlay"), default="panels")
    sp.add_argument("--cell-px", type=int, default=2)
    sp.add_argument("--count-interactions", action="store_true")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("enumerate", parents=[common], help="exact law as dist.json")
    weights_args(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("--max-rank", type=int)
    sp.add_argument("--rank", type=int)
    sp.add_argument("--colors", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--threads", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", parents=[common], help="SVG from a tiling dump")
    sp.add_argument("input", metavar="in")
    sp.add_argument("--out")
    sp.add_argument("--layout", choices=("panels", "overlay"), default="panels")
    sp.add_argument("--cell-px", type=int, default=12)
    sp.add_argument("--show-particles", action="store_true")
    sp.add_argument("--compass", action="store_true", help="fill dominoes by N/S/E/W type")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (shuffle.ShuffleError, DynamicsError, AssertionError) as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
