"""
Command-line entry point.

    python -m InfluenceMax generate --gn --nodes 128 --communities 4 --degree 16 --seed 1
    python -m InfluenceMax run --network net.txt --algo mtefim --k 30 --seed 7
    python -m InfluenceMax evaluate --network net.txt --seeds seeds.txt
    python -m InfluenceMax experiment --suite suite.yaml

A ``--config`` file (JSON or YAML) supplies defaults; flags override it.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from .core.config import settings
from .core.exceptions import (
    ConfigurationError,
    InfluenceMaxBaseException,
    OutputWriteError,
    SuiteConfigError,
    UnknownMethodError,
)
from .core.logging import configure_logging
from .graph import Network, generate_from_spec, load_edge_list, read_seed_labels, write_communities, write_edge_list
from .models.configs import CliConfig, GeneratorSpec, SuiteConfig
from .services import baselines
from .services.bench import SOLVERS, run_experiment
from .services.diffusion import estimate_spread
from .services.mtefim import run_named
from .utils.serializers import ResultWriter, run_summary, seeds_summary
from .utils.validators import SeedSetValidator

logger = logging.getLogger(__name__)

HEURISTIC_ALGOS = ("degree", "sdd", "pagerank", "celf", "greedy")

# Fields that change how a run is executed but never what it computes.
EXECUTION_ONLY = {"workers", "out", "subcommand"}


def _csv_floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _csv_names(text: str) -> List[str]:
    return [x.strip().lower() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="InfluenceMax",
        description="Multi-transformation evolutionary influence maximization",
    )
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON or YAML file with default values")
    common.add_argument("--seed", type=int, help="master seed")
    common.add_argument("--workers", type=int, help="worker threads")
    common.add_argument("--out", help="output directory")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--network", help="edge-list file")
    source.add_argument("--directed", action="store_true", default=None)
    source.add_argument("--weighted", action="store_true", default=None, help="read the third column as p(u,v)")
    source.add_argument("--p", type=float, dest="default_p", help="uniform propagation probability")
    source.add_argument("--gn", action="store_true", default=None, help="generate a GN benchmark network")
    source.add_argument("--nodes", type=int)
    source.add_argument("--communities", type=int)
    source.add_argument("--degree", type=int)
    source.add_argument("--mu", type=float, help="fraction of stubs leaving the community")
    source.add_argument("--out-links", type=int, dest="out_links", help="external stubs per node (legacy mode)")

    sub.add_parser("generate", parents=[common, source], help="write a GN network and its communities")

    run_parser = sub.add_parser("run", parents=[common, source], help="select a seed set")
    run_parser.add_argument("--algo", help="mtefim, mtefim-nk, edvea, tisea, degree, sdd, pagerank, celf, greedy")
    run_parser.add_argument("--transformations", type=_csv_names, help="e.g. edv,tis")
    run_parser.add_argument("--k", type=int)
    run_parser.add_argument("--pop", type=int, dest="population_size")
    run_parser.add_argument("--mfe", type=int, dest="max_function_evaluations")
    run_parser.add_argument("--pc", type=float)
    run_parser.add_argument("--pm", type=float)
    run_parser.add_argument("--prefs", type=_csv_floats, dest="preferences")
    run_parser.add_argument("--no-transfer", action="store_false", dest="transfer_enabled", default=None)
    run_parser.add_argument("--output-policy", choices=["soss", "mcss"], dest="output_policy")
    run_parser.add_argument("--replicas", type=int)

    evaluate = sub.add_parser("evaluate", parents=[common, source], help="Monte Carlo spread of a seed set")
    evaluate.add_argument("--seeds", dest="seeds_file", help="one node label per line")
    evaluate.add_argument("--replicas", type=int)

    experiment = sub.add_parser("experiment", parents=[common], help="run an experiment suite")
    experiment.add_argument("--suite", help="suite file (JSON or YAML)")
    experiment.add_argument("--replicas", type=int)

    return parser


def _read_structured(path: str, error: type) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise error(f"cannot read {path}", e)
    try:
        if path.endswith((".yaml", ".yml")):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise error(f"cannot parse {path}", e)
    if not isinstance(data, dict):
        raise error(f"{path} must hold a mapping")
    return data


GN_FIELDS = ("nodes", "communities", "degree", "mu", "out_links")


def resolve_config(args: argparse.Namespace) -> CliConfig:
    """Merge the ``--config`` file with the flags that were actually given."""
    values: Dict[str, Any] = {}
    if getattr(args, "config", None):
        values.update(_read_structured(args.config, ConfigurationError))

    flags = {
        key: value for key, value in vars(args).items()
        if value is not None and key not in ("config", "log_level", "gn", *GN_FIELDS)
    }
    values.update(flags)
    values["subcommand"] = args.subcommand

    gn_flags = {key: getattr(args, key, None) for key in GN_FIELDS}
    gn_flags = {key: value for key, value in gn_flags.items() if value is not None}
    if getattr(args, "gn", None) or gn_flags or isinstance(values.get("gn"), dict):
        gn = dict(values.get("gn") or {})
        gn.update(gn_flags)
        if "default_p" in values:
            gn.setdefault("p", values["default_p"])
        if "seed" in values:
            gn.setdefault("seed", values["seed"])
        values["gn"] = gn

    try:
        return CliConfig(**values)
    except ValidationError as e:
        raise ConfigurationError("invalid parameters", e)


def load_network(cfg: CliConfig) -> Network:
    if cfg.network:
        path = Path(cfg.network)
        try:
            with path.open(encoding="utf-8") as handle:
                return load_edge_list(
                    handle,
                    directed=cfg.directed,
                    default_p=cfg.default_p,
                    weighted=cfg.weighted,
                    name=path.stem,
                )
        except OSError as e:
            raise ConfigurationError(f"cannot read network {path}", e)
    if cfg.gn is not None:
        return generate_from_spec(cfg.gn).network
    raise ConfigurationError("give --network or --gn")


def cmd_generate(cfg: CliConfig) -> int:
    """Write network.txt and communities.txt for a GN benchmark."""
    spec = cfg.gn or GeneratorSpec(p=cfg.default_p, seed=cfg.seed)
    graph = generate_from_spec(spec)
    writer = ResultWriter(cfg.out)
    network_path = writer.path("network.txt")
    communities_path = writer.path("communities.txt")
    try:
        with network_path.open("w", encoding="utf-8", newline="\n") as handle:
            write_edge_list(graph.network, handle)
        with communities_path.open("w", encoding="utf-8", newline="\n") as handle:
            write_communities(graph.network, graph.communities, handle)
    except OSError as e:
        raise OutputWriteError(str(network_path), e)

    print(json.dumps({
        "network": str(network_path),
        "communities": str(communities_path),
        "nodes": graph.network.node_count,
        "edges": graph.network.edge_count,
        "cut_edges": graph.cut_edges(),
        "residual_deviation": graph.residual_deviation,
    }, sort_keys=True))
    return 0


def _solver_names(cfg: CliConfig) -> Optional[List[str]]:
    algo = cfg.algo.lower()
    if algo == "mtefim":
        return list(cfg.transformations)
    if algo in SOLVERS:
        return list(SOLVERS[algo][0])
    return None


def cmd_run(cfg: CliConfig) -> int:
    """Run one algorithm, score its seed set by simulation, write result.json (and trace.csv)."""
    algo = cfg.algo.lower()
    if algo not in SOLVERS and algo not in HEURISTIC_ALGOS:
        raise UnknownMethodError(cfg.algo, list(SOLVERS) + list(HEURISTIC_ALGOS))

    net = load_network(cfg)
    diffusion = cfg.diffusion_config()
    writer = ResultWriter(cfg.out)
    settings_dump = cfg.model_dump(mode="json", exclude=EXECUTION_ONLY)

    names = _solver_names(cfg)
    if names is not None:
        try:
            solver = cfg.solver_config()
        except ValidationError as e:
            raise ConfigurationError("invalid solver parameters", e)
        if algo == "mtefim-nk":
            solver = solver.model_copy(update={"transfer_enabled": False})
        result = run_named(net, names, solver)
        spread = estimate_spread(net, result.chosen_seeds, diffusion)
        summary = run_summary(net, result, algo, spread, settings_dump)
        writer.write_trace(result.trace)
    else:
        if algo == "degree":
            chosen = baselines.degree_select(net, cfg.k)
        elif algo == "sdd":
            chosen = baselines.degree_discount_select(net, cfg.k)
        elif algo == "pagerank":
            chosen = baselines.pagerank_select(net, cfg.k)
        elif algo == "celf":
            chosen = baselines.celf_select(net, cfg.k, diffusion)
        else:
            chosen = baselines.naive_greedy_select(net, cfg.k, diffusion)
        spread = estimate_spread(net, chosen.seeds, diffusion)
        summary = seeds_summary(net, algo, chosen.seeds, spread, chosen.scores, settings_dump)

    writer.write_json("result.json", summary)
    print(" ".join(summary["chosen_seeds"]))
    print(f"spread {spread.mean:.4f} +/- {spread.std_error:.4f} ({spread.replicas} replicas)")
    return 0


def cmd_evaluate(cfg: CliConfig) -> int:
    """Monte Carlo spread of the seed set in ``--seeds``."""
    if not cfg.seeds_file:
        raise ConfigurationError("give --seeds")
    net = load_network(cfg)
    try:
        with open(cfg.seeds_file, encoding="utf-8") as handle:
            labels = read_seed_labels(handle)
    except OSError as e:
        raise ConfigurationError(f"cannot read seed file {cfg.seeds_file}", e)

    seeds = SeedSetValidator.validate([net.index(label) for label in labels], net.node_count)
    spread = estimate_spread(net, seeds, cfg.diffusion_config())
    summary = seeds_summary(net, "evaluate", seeds, spread, config=cfg.model_dump(mode="json", exclude=EXECUTION_ONLY))
    ResultWriter(cfg.out).write_json("result.json", summary)
    print(json.dumps(spread.model_dump(), sort_keys=True))
    return 0


def cmd_experiment(cfg: CliConfig) -> int:
    """Run a suite file and write report.json plus the CSV tables."""
    if not cfg.suite:
        raise SuiteConfigError("give --suite")
    values = _read_structured(cfg.suite, SuiteConfigError)
    overrides = {"master_seed": "seed", "workers": "workers", "replicas": "replicas"}
    explicit = cfg.model_fields_set
    for field, flag in overrides.items():
        if flag in explicit:
            values[field] = getattr(cfg, flag)
    try:
        suite = SuiteConfig(**values)
    except ValidationError as e:
        raise SuiteConfigError("invalid suite", e)

    if suite.network:
        net = load_network(CliConfig(
            subcommand="run",
            network=suite.network,
            directed=suite.directed,
            weighted=suite.weighted,
            default_p=suite.default_p,
        ))
    else:
        net = generate_from_spec(suite.gn).network

    report = run_experiment(net, suite)
    paths = ResultWriter(cfg.out).write_report(report)
    for path in paths:
        print(path)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "run": cmd_run,
    "evaluate": cmd_evaluate,
    "experiment": cmd_experiment,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        cfg = resolve_config(args)
        return COMMANDS[cfg.subcommand](cfg)
    except InfluenceMaxBaseException as e:
        logger.error(e.message)
        print(json.dumps(e.to_dict(), default=str), file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception("Unexpected error")
        print(json.dumps({
            "error": "InternalError",
            "message": "An unexpected error occurred",
            "details": {"error_type": type(e).__name__},
        }), file=sys.stderr)
        return 1
