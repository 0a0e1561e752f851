"""Command-line interface.

Subcommands::

    count       --n N
    enumerate   --n N --what {posets|covers|walks}
    sample      --n N --samples S --seed SEED [--method dp|decomposed]
    experiment  {window|height|avgwindow|errscaling} --n N --samples S --seed SEED
    verify      {bijection|uniform|symmetry|area|errbound|firstreturn|factors} [--n N]

Exit status: 0 on success or a passing check, 1 on a failing verification or
experiment, 2 on usage errors.  Sampling commands require an explicit seed;
for a fixed seed the output is byte-identical regardless of --threads.  JSON
output never contains timestamps.  A relative --output path is resolved
against $POSETWALKS_OUTDIR when that variable is set.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass

from . import experiments, oracle
from .counting import DEFAULT_DP_CAP, count
from .cover import cover_to_json
from .poset import poset_to_json
from .sampling import DecomposedSampler, DPSampler, stream_rng
from .walks import walk_to_json, walk_to_text

__all__ = ["main", "RunConfig", "run"]

_VERIFY_DEFAULT_N = {
    "bijection": 6,
    "uniform": 4,
    "symmetry": 8,
    "area": 8,
    "errbound": 8,
    "firstreturn": 8,
    "factors": 5,
}


@dataclass
class RunConfig:
    """Everything a run depends on; equal configs give identical output."""

    command: str
    subcommand: str | None = None
    n: int | None = None
    n_list: tuple[int, ...] | None = None
    what: str | None = None
    samples: int | None = None
    seed: int | None = None
    method: str = "auto"
    threads: int = 1
    fmt: str = "text"
    output: str | None = None
    dp_cap: int = DEFAULT_DP_CAP
    ks_tol: float | None = None
    mean_rtol: float | None = None


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="posetwalks",
        description="counting, sampling, verification and experiments for "
        "uniform width-2 posets via non-hitting walk pairs",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, needs_seed=False):
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default="text")
        p.add_argument("--output", default=None, help="write result here instead of stdout")
        p.add_argument("--dp-cap", type=int, default=DEFAULT_DP_CAP,
                       help="largest n allowed for the exact count-table sampler")
        if needs_seed:
            p.add_argument("--samples", type=int, required=True)
            p.add_argument("--seed", type=int, required=True,
                           help="mandatory; no silent entropy")

    p = sub.add_parser("count", help="exact size of the walk space")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("enumerate", help="list small objects exhaustively")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--what", choices=["posets", "covers", "walks"], required=True)
    common(p)

    p = sub.add_parser("sample", help="draw uniform walk pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["dp", "decomposed", "auto"], default="auto")
    common(p, needs_seed=True)

    p = sub.add_parser("experiment", help="Monte Carlo limit-law experiments")
    p.add_argument("kind", choices=["window", "height", "avgwindow", "errscaling"])
    p.add_argument("--n", type=int)
    p.add_argument("--n-list", type=str, default=None,
                   help="comma-separated sizes for errscaling")
    p.add_argument("--method", choices=["dp", "decomposed", "auto"], default="auto")
    p.add_argument("--ks-tol", type=float, default=None)
    p.add_argument("--mean-rtol", type=float, default=None)
    common(p, needs_seed=True)

    p = sub.add_parser("verify", help="exact verification suites")
    p.add_argument(
        "kind",
        choices=["bijection", "uniform", "symmetry", "area", "errbound", "firstreturn", "factors"],
    )
    p.add_argument("--n", type=int, default=None)
    common(p)
    return top


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        path = cfg.output
        outdir = os.environ.get("POSETWALKS_OUTDIR")
        if outdir and not os.path.isabs(path):
            path = os.path.join(outdir, path)
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_count(cfg: RunConfig) -> int:
    value = count(cfg.n)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"n": cfg.n, "count": str(value)}))
    else:
        _emit(cfg, str(value))
    return 0


def _cmd_enumerate(cfg: RunConfig) -> int:
    n = cfg.n
    if cfg.what == "posets":
        lines = [poset_to_json(p) for p in oracle.iter_posets(n, "all")]
    elif cfg.what == "covers":
        lines = [cover_to_json(c) for c in oracle.enumerate_covers(n)]
    else:
        if cfg.fmt == "text":
            lines = [walk_to_text(w) + "\n" for w in oracle.iter_walk_pairs(n)]
        else:
            lines = [walk_to_json(w) for w in oracle.iter_walk_pairs(n)]
    _emit(cfg, "\n".join(lines))
    return 0


def _cmd_sample(cfg: RunConfig) -> int:
    method = cfg.method
    if method == "auto":
        method = "dp" if cfg.n <= min(cfg.dp_cap, 512) else "decomposed"
    sampler = DPSampler(cfg.n, cap=cfg.dp_cap) if method == "dp" else DecomposedSampler(cfg.n)
    out = []
    for i in range(cfg.samples):
        rng = stream_rng(cfg.seed, i, salt=_SAMPLE_SALT)
        pair = sampler.draw(rng)
        out.append(walk_to_json(pair) if cfg.fmt == "json" else walk_to_text(pair) + "\n")
    _emit(cfg, "\n".join(out))
    return 0


_SAMPLE_SALT = 99


def _cmd_experiment(cfg: RunConfig) -> int:
    kw = dict(seed=cfg.seed, threads=cfg.threads, method=cfg.method, dp_cap=cfg.dp_cap)
    tol = {}
    if cfg.ks_tol is not None:
        tol["ks_tol"] = cfg.ks_tol
    if cfg.mean_rtol is not None:
        tol["mean_rtol"] = cfg.mean_rtol
    if cfg.subcommand == "errscaling":
        n_list = cfg.n_list or ((cfg.n,) if cfg.n else None)
        if not n_list:
            raise SystemExit(_usage("errscaling needs --n or --n-list"))
        report = experiments.experiment_err_scaling(n_list, cfg.samples, **kw)
        _emit(cfg, report.to_json() if cfg.fmt == "json" else report.summary())
        return 0 if report.passed else 1
    if cfg.n is None:
        raise SystemExit(_usage("experiment needs --n"))
    fn = {
        "window": experiments.experiment_window,
        "height": experiments.experiment_height,
        "avgwindow": experiments.experiment_avg_window,
    }[cfg.subcommand]
    result = fn(cfg.n, cfg.samples, **kw, **tol)
    if cfg.fmt == "csv":
        if cfg.output:
            result.write_csv(_resolve_output(cfg))
        else:
            _emit(cfg, "statistic\n" + "\n".join(repr(float(v)) for v in result.statistic))
    elif cfg.fmt == "json":
        _emit(cfg, result.to_json())
    else:
        _emit(cfg, result.summary())
    return 0 if result.passed else 1


def _resolve_output(cfg: RunConfig) -> str:
    path = cfg.output
    outdir = os.environ.get("POSETWALKS_OUTDIR")
    if outdir and not os.path.isabs(path):
        path = os.path.join(outdir, path)
    return path


def _cmd_verify(cfg: RunConfig) -> int:
    kind = cfg.subcommand
    n = cfg.n if cfg.n is not None else _VERIFY_DEFAULT_N[kind]
    fn = {
        "bijection": oracle.verify_bijection,
        "uniform": oracle.verify_uniform_cover_measure,
        "symmetry": oracle.verify_symmetrization,
        "area": oracle.verify_area_identity,
        "errbound": oracle.verify_err_inequality,
        "firstreturn": oracle.verify_first_return,
        "factors": oracle.verify_factor_dominance,
    }[kind]
    report = fn(n)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(dataclasses.asdict(report)))
    else:
        _emit(cfg, str(report))
    return 0 if report.passed else 1


def _usage(msg: str) -> str:
    return f"usage error: {msg}"


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        # argparse signals usage problems with status 2 already
        return int(e.code) if e.code else 0
    n_list = None
    if getattr(ns, "n_list", None):
        try:
            n_list = tuple(int(x) for x in ns.n_list.split(",") if x.strip())
        except ValueError:
            sys.stderr.write("usage error: --n-list wants comma-separated integers\n")
            return 2
    cfg = RunConfig(
        command=ns.command,
        subcommand=getattr(ns, "kind", None),
        n=getattr(ns, "n", None),
        n_list=n_list,
        what=getattr(ns, "what", None),
        samples=getattr(ns, "samples", None),
        seed=getattr(ns, "seed", None),
        method=getattr(ns, "method", "auto"),
        threads=ns.threads,
        fmt=ns.fmt,
        output=ns.output,
        dp_cap=getattr(ns, "dp_cap", DEFAULT_DP_CAP),
        ks_tol=getattr(ns, "ks_tol", None),
        mean_rtol=getattr(ns, "mean_rtol", None),
    )
    try:
        if cfg.command == "count":
            return _cmd_count(cfg)
        if cfg.command == "enumerate":
            return _cmd_enumerate(cfg)
        if cfg.command == "sample":
            return _cmd_sample(cfg)
        if cfg.command == "experiment":
            return _cmd_experiment(cfg)
        if cfg.command == "verify":
            return _cmd_verify(cfg)
    except ValueError as e:
        sys.stderr.write(f"usage error: {e}; adjust the offending flag\n")
        return 2
    return 2


def main() -> None:
    sys.exit(run())
if __name__ == "__main__":
    main()
