"""Batch command line front end.

Each subcommand reads events (``*.jsonl`` in the ingestion format) or a saved
artifact (``*.json`` written by ``filter``/``build``), runs one analysis and
writes its tables into ``--out``.  Several ``--input`` files are analysed as
separate sample groups, labelled by ``--label`` or by the file stem.

Exit status: 0 success, 1 usage error, 2 data error.  Diagnostics go to
stderr only.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, Sequence

from egocircles import report, store
from egocircles.dynamics import (
    WindowMode,
    correspondence,
    ego_turnover,
    make_windows,
    mean_correspondence,
    turnover_report,
    window_networks,
)
from egocircles.errors import EgoCirclesError
from egocircles.hashtags import ego_hashtag_stats, growth_series, layer_hashtag_report
from egocircles.ingestion import FilterPolicy, build_timelines, filter_accounts, parse_events
from egocircles.layering import build_ego_network
from egocircles.model import N_RINGS, ChannelSelector, group_ties
from egocircles.regression import ring_regressions, tie_observations
from egocircles.static import population_summary, usage_stats
from egocircles.synthgen import SynthConfig, generate, write_jsonl, write_truth

log = logging.getLogger("egocircles")

SUBCOMMANDS = ("filter", "build", "static-report", "dynamics-report", "correspond", "hashtags-report", "regress",
               "synth")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    inputs: list[Path] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    out: Path = Path(".")
    channel: ChannelSelector = ChannelSelector.ALL_DIRECT
    window_months: int = 12
    step_months: int | None = None
    k: int = N_RINGS
    confidence: float = 0.95
    agg: str = "macro"
    fmt: str = "csv"
    jobs: int = 1
    seed: int = 0
    n_egos: int = 10
    duration_months: int = 60

    def validate(self, command: str):
        def bad(name, msg):
            raise UsageError(f"--{name}: {msg}")

        if command != "synth" and not self.inputs:
            bad("input", "at least one input file is required")
        if self.labels and len(self.labels) != len(self.inputs):
            bad("label", "give one label per --input")
        if self.window_months < 1:
            bad("window-months", "must be >= 1")
        if self.step_months is not None and self.step_months < 1:
            bad("step-months", "must be >= 1")
        if not 1 <= self.k <= N_RINGS:
            bad("k", f"must lie in 1..{N_RINGS}")
        if not 0 < self.confidence < 1:
            bad("confidence", "must lie in (0, 1)")
        if self.jobs < 1:
            bad("jobs", "must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            bad("seed", "must be a 64-bit unsigned integer")

    def sample_label(self, i: int) -> str:
        return self.labels[i] if self.labels else self.inputs[i].stem


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _guard(fn, tl, *args):
    try:
        return fn(tl, *args), None
    except EgoCirclesError as exc:
        where = "" if exc.ego_id is not None else f"[ego {tl.ego_id}] "
        return None, f"{where}{type(exc).__name__}: {exc}"


def _collect(results, what: str) -> list:
    out = []
    for value, err in results:
        if err is not None:
            log.warning("%s skipped: %s", what, err)
        else:
            out.append(value)
    return out


# --- input loading ---------------------------------------------------------------

def _read_events(path: Path):
    with open(path, "rb") as fh:
        events, diags = parse_events(fh)
    for d in diags:
        log.warning("%s:%d: %s", path, d.line, d.reason)
    return events


def _load(path: Path, policy: FilterPolicy = FilterPolicy()) -> tuple[str, list]:
    if path.suffix == ".jsonl":
        kept, rejected = filter_accounts(build_timelines(_read_events(path)), policy)
        for ego, reason in rejected:
            log.info("%s: ego %s filtered out (%s)", path, ego, reason.value)
        return "timelines", kept
    return store.load_document(path)


def _timelines(path: Path) -> list:
    kind, items = _load(path)
    if kind != "timelines":
        raise UsageError(f"--input {path}: this subcommand needs events or filtered timelines, got {kind}")
    return items


# --- per-ego tasks (top level so they pickle) ---------------------------------------

def _static_net(tl, channel, k):
    return build_ego_network(tl, channel, k=k)


def _dynamics(tl, window, step, k):
    series = make_windows(tl, window, WindowMode.DISJOINT, step)
    return ego_turnover(window_networks(tl, series, k))


def _correspond(tl, window, step, k):
    static = build_ego_network(tl, ChannelSelector.ALL_DIRECT, k=k)
    series = make_windows(tl, window, WindowMode.OVERLAPPING, step)
    return correspondence(static, window_networks(tl, series, k))


def _hashtags(tl, k):
    net = build_ego_network(tl, ChannelSelector.ALL_DIRECT, k=k)
    stats = ego_hashtag_stats(group_ties(tl.events, ChannelSelector.ALL_DIRECT))
    return net, stats, growth_series(tl)


def _per_ego(cfg: RunConfig, fn, timelines, *args) -> list:
    return _collect(_pmap(partial(_run_guarded, fn, args), timelines, cfg.jobs), fn.__name__.strip("_"))


def _run_guarded(fn, args, tl):
    return _guard(fn, tl, *args)


# --- subcommands --------------------------------------------------------------------

def cmd_filter(cfg: RunConfig) -> list[Path]:
    if len(cfg.inputs) != 1 or cfg.inputs[0].suffix != ".jsonl":
        raise UsageError("--input: filter takes exactly one events .jsonl file")
    timelines = build_timelines(_read_events(cfg.inputs[0]))
    kept, rejected = filter_accounts(timelines)
    path = cfg.out / "timelines.json"
    store.save_timelines(kept, path)
    rows = [{"ego_id": e, "reason": r.value} for e, r in sorted(rejected)]
    return [path, report.write_table(rows, ("ego_id", "reason"), cfg.out / "rejected", cfg.fmt)]


def cmd_build(cfg: RunConfig) -> list[Path]:
    written = []
    for i, path in enumerate(cfg.inputs):
        nets = _per_ego(cfg, _static_net, _timelines(path), cfg.channel, cfg.k)
        suffix = "" if len(cfg.inputs) == 1 else f"_{cfg.sample_label(i)}"
        target = cfg.out / f"networks{suffix}.json"
        store.save_networks(nets, target)
        written.append(target)
    return written


def cmd_static(cfg: RunConfig) -> list[Path]:
    usage, circles, population = [], [], []
    for i, path in enumerate(cfg.inputs):
        label = cfg.sample_label(i)
        kind, items = _load(path)
        if kind == "timelines":
            usage += report.usage_rows(label, _collect([_guard(usage_stats, tl) for tl in items], "usage"))
            nets = _per_ego(cfg, _static_net, items, cfg.channel, cfg.k)
        else:
            nets = [n for n in items if n.channel is cfg.channel]
        circles += report.circle_rows(label, nets)
        try:
            population += report.population_rows(label, population_summary(nets, cfg.confidence))
        except EgoCirclesError as exc:
            log.warning("sample %s: no population summary (%s)", label, exc)
    out = [report.write_table(circles, report.CIRCLE_COLUMNS, cfg.out / "circles", cfg.fmt),
           report.write_table(population, report.POPULATION_COLUMNS, cfg.out / "population", cfg.fmt)]
    if usage:
        out.append(report.write_table(usage, report.USAGE_COLUMNS, cfg.out / "usage", cfg.fmt,
                                      pct_columns=report.USAGE_PCT))
    return out


def cmd_dynamics(cfg: RunConfig) -> list[Path]:
    rows = []
    for i, path in enumerate(cfg.inputs):
        egos = _per_ego(cfg, _dynamics, _timelines(path), cfg.window_months, cfg.step_months, cfg.k)
        rows += report.turnover_rows(cfg.sample_label(i), turnover_report(egos, cfg.agg))
    return [report.write_table(rows, report.TURNOVER_COLUMNS, cfg.out / "turnover", cfg.fmt)]


def cmd_correspond(cfg: RunConfig) -> list[Path]:
    rows = []
    for i, path in enumerate(cfg.inputs):
        mats = _per_ego(cfg, _correspond, _timelines(path), cfg.window_months, cfg.step_months, cfg.k)
        rows += report.correspondence_rows(cfg.sample_label(i), mean_correspondence(mats))
    return [report.write_table(rows, report.CORRESPONDENCE_COLUMNS, cfg.out / "correspondence", cfg.fmt)]


def _hashtag_inputs(cfg: RunConfig):
    for i, path in enumerate(cfg.inputs):
        results = _per_ego(cfg, _hashtags, _timelines(path), cfg.k)
        nets = [r[0] for r in results]
        stats = [s for r in results for s in r[1]]
        yield cfg.sample_label(i), nets, stats, [r[2] for r in results]


def cmd_hashtags(cfg: RunConfig) -> list[Path]:
    layer, growth = [], []
    for label, nets, stats, series in _hashtag_inputs(cfg):
        layer += report.hashtag_rows(layer_hashtag_report(nets, stats, label))
        growth += report.growth_rows(label, series)
    return [report.write_table(layer, report.HASHTAG_COLUMNS, cfg.out / "hashtags", cfg.fmt),
            report.write_table(growth, report.GROWTH_COLUMNS, cfg.out / "growth", cfg.fmt)]


def cmd_regress(cfg: RunConfig) -> list[Path]:
    obs = []
    for label, nets, stats, _ in _hashtag_inputs(cfg):
        obs += tie_observations(nets, stats, label)
    table = ring_regressions(obs)
    return [report.write_table(report.table3_rows(table), report.TABLE3_COLUMNS, cfg.out / "table3", cfg.fmt),
            report.write_table(report.sign_rows(table), report.SIGN_COLUMNS, cfg.out / "table3_signs", cfg.fmt)]


def cmd_synth(cfg: RunConfig) -> list[Path]:
    try:
        synth = SynthConfig(n_egos=cfg.n_egos, duration_months=cfg.duration_months,
                            window_months=cfg.window_months, seed=cfg.seed)
    except EgoCirclesError as exc:
        raise UsageError(str(exc)) from None
    events, truth = generate(synth)
    events_path, truth_path = cfg.out / "events.jsonl", cfg.out / "ground_truth.json"
    with open(events_path, "w", encoding="utf-8", newline="\n") as fh:
        write_jsonl(events, fh)
    with open(truth_path, "w", encoding="utf-8", newline="\n") as fh:
        write_truth(truth, fh)
    return [events_path, truth_path]


COMMANDS = {
    "filter": cmd_filter,
    "build": cmd_build,
    "static-report": cmd_static,
    "dynamics-report": cmd_dynamics,
    "correspond": cmd_correspond,
    "hashtags-report": cmd_hashtags,
    "regress": cmd_regress,
    "synth": cmd_synth,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", type=Path, default=[], help="events .jsonl or artifact .json")
    common.add_argument("--label", action="append", default=[], help="sample label for the matching --input")
    common.add_argument("--out", type=Path, required=True, help="output directory")
    common.add_argument("--channel", choices=[c.value for c in ChannelSelector], default="all")
    common.add_argument("--window-months", type=int, default=12)
    common.add_argument("--step-months", type=int, default=None)
    common.add_argument("--k", type=int, default=N_RINGS)
    common.add_argument("--confidence", type=float, default=0.95)
    common.add_argument("--agg", choices=("macro", "micro"), default="macro")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="egocircles", description="Ego network analysis of directed interaction logs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "synth":
            p.add_argument("--n-egos", type=int, default=10)
            p.add_argument("--duration-months", type=int, default=60)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    cfg = RunConfig(inputs=args.input, labels=args.label, out=args.out, channel=ChannelSelector(args.channel),
                    window_months=args.window_months, step_months=args.step_months, k=args.k,
                    confidence=args.confidence, agg=args.agg, fmt=args.format, jobs=args.jobs, seed=args.seed,
                    n_egos=getattr(args, "n_egos", 10), duration_months=getattr(args, "duration_months", 60))
    try:
        cfg.validate(args.command)
        cfg.out.mkdir(parents=True, exist_ok=True)
        for path in COMMANDS[args.command](cfg):
            log.info("wrote %s", path)
    except UsageError as exc:
        print(f"egocircles {args.command}: {exc}", file=sys.stderr)
        return 1
    except (EgoCirclesError, OSError) as exc:
        print(f"egocircles {args.command}: data error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
