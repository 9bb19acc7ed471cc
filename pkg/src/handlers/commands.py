"""
Command Handlers

One handler per CLI subcommand. Each takes a validated RunConfig, writes its
output file, prints a short summary to stdout and returns the exit code.
"""

import argparse
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from config import EXIT_OK, config
from errors import DomainError, UsageError
from expansion.profile import sse_profile, sse_profile_heuristic
from graphs.core import Family, FamilySpec, Graph, generate
from graphs.edgelist import read_graph_file, write_edge_list
from rounding.sweep import round_witness, sweep_high, sweep_low
from spectral.norms import is_hypercontractive, two_to_inf_norm
from spectral.operators import random_symmetric, top_eigenspace
from spectral.search import pq_norm_lower
from theorems.battery import run_battery
from theorems.report import (
    Report, overall_exit_code, reports_to_csv, reports_to_json, to_jsonable,
)
from theorems.verifiers import (
    spectrum_of, verify_duality, verify_easy_direction, verify_high_expansion,
    verify_lemma_inner_product, verify_local_cheeger, verify_main, verify_one_to_two,
    verify_projector_orthogonal, verify_projector_subspace,
)
from utils.parsing import format_exponent

logger = logging.getLogger(__name__)

# Type alias for command handler functions
Handler = Callable[["RunConfig"], int]

GRAPH_COMMANDS = {"gen", "analyze", "norm", "profile", "round", "verify"}
REPORT_COMMANDS = {"verify", "sweep"}


@dataclass
class RunConfig:
    """Validated arguments of one CLI invocation"""
    subcommand: str
    claim: Optional[str] = None
    graph_path: Optional[str] = None
    family: Optional[FamilySpec] = None
    deltas: list[float] = field(default_factory=list)
    epsilons: list[float] = field(default_factory=list)
    lambdas: list[float] = field(default_factory=list)
    pairs: list[tuple[float, float]] = field(default_factory=list)
    seed: int = 0
    restarts: Optional[int] = None
    budget: Optional[int] = None
    trials: int = 1000
    constant: Optional[float] = None
    out: Optional[str] = None
    fmt: Optional[str] = None
    threads: Optional[int] = None
    include_timing: bool = True
    regime: str = "pipeline"
    witness_path: Optional[str] = None
    matrix_path: Optional[str] = None
    random_size: Optional[int] = None
    heuristic: bool = False
    norm_bound: Optional[float] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        get = lambda name, default=None: getattr(args, name, default)  # noqa: E731

        family = None
        if get("family"):
            seed = get("graph_seed")
            if seed is None and get("family") == Family.RANDOM_REGULAR.value:
                seed = get("seed")
            family = FamilySpec(Family(get("family")), n=get("n"), k=get("k"), m=get("m"),
                                d=get("d"), seed=seed)

        rc = cls(
            subcommand=args.command,
            claim=get("claim"),
            graph_path=get("graph"),
            family=family,
            deltas=get("delta") or [],
            epsilons=get("eps") or [],
            lambdas=get("lam") or [],
            pairs=get("pairs") or [],
            seed=config.default_seed if get("seed") is None else get("seed"),
            restarts=get("restarts"),
            budget=get("budget"),
            trials=get("trials") or 1000,
            constant=get("constant"),
            out=get("out"),
            fmt=get("format"),
            threads=get("threads"),
            include_timing=not get("no_timing", False),
            regime=get("regime") or "pipeline",
            witness_path=get("witness"),
            matrix_path=get("matrix"),
            random_size=get("random_size"),
            heuristic=bool(get("heuristic", False)),
            norm_bound=get("bound"),
        )
        rc.validate()
        return rc

    @property
    def needs_graph(self) -> bool:
        if self.subcommand == "verify" and self.claim == "duality":
            return self.matrix_path is None and self.random_size is None
        return self.subcommand in GRAPH_COMMANDS

    @property
    def output_format(self) -> str:
        if self.fmt:
            return self.fmt
        if self.out and Path(self.out).suffix.lower() == ".csv":
            return "csv"
        return "json"

    def validate(self) -> None:
        """Raise UsageError on the first problem; nothing runs before this passes"""
        sources = sum(x is not None for x in (self.graph_path, self.family))
        if self.needs_graph and sources != 1:
            raise UsageError("exactly one graph source is required: --graph PATH or --family NAME")
        if not self.needs_graph and sources:
            raise UsageError(f"'{self.subcommand}' does not take a graph source")
        if self.subcommand == "verify" and self.claim == "duality":
            alternatives = sum(x is not None for x in (self.matrix_path, self.random_size,
                                                       self.graph_path or self.family))
            if alternatives != 1:
                raise UsageError("duality needs exactly one of --matrix, --random-size, --graph/--family")

        for d in self.deltas:
            if not 0 < d <= 1:
                raise UsageError(f"--delta must lie in (0, 1], got {d}")
        for e in self.epsilons:
            if not 0 < e <= 1:
                raise UsageError(f"--eps must lie in (0, 1], got {e}")
        for lam in self.lambdas:
            if not -1 <= lam <= 1:
                raise UsageError(f"--lambda must lie in [-1, 1], got {lam}")
        if self.seed < 0:
            raise UsageError("--seed must be non-negative")
        for name in ("restarts", "budget", "random_size"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        if self.threads is not None and self.threads < 0:
            raise UsageError("--threads must be >= 0")
        if self.constant is not None and self.constant <= 0:
            raise UsageError("--constant must be positive")
        if self.output_format == "csv" and self.subcommand not in REPORT_COMMANDS:
            raise UsageError("csv output is only available for verify and sweep")

    def require(self, name: str, flag: str) -> list:
        values = getattr(self, name)
        if not values:
            raise UsageError(f"{flag} is required for '{self.claim or self.subcommand}'")
        return values


# =============================================================================
# Shared helpers
# =============================================================================

def load_graph(rc: RunConfig) -> tuple[Graph, str]:
    """The graph and a stable label for reports"""
    if rc.graph_path is not None:
        path = rc.graph_path[5:] if rc.graph_path.startswith("file:") else rc.graph_path
        return read_graph_file(path), f"file:{path}"
    return generate(rc.family), rc.family.label()


def _read_json(path: str) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _read_vector(path: str, n: int) -> np.ndarray:
    data = _read_json(path)
    if isinstance(data, dict):
        data = data.get("witness", data.get("witness_vector"))
    try:
        v = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as e:
        raise DomainError(f"witness in {path} is not a numeric vector: {e}") from e
    if v.shape != (n,):
        raise DomainError(f"witness in {path} has shape {v.shape}, graph has n={n}")
    return v


def _write(rc: RunConfig, text: str) -> None:
    if rc.out:
        Path(rc.out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {rc.out}")


def _write_json(rc: RunConfig, payload: Any) -> None:
    _write(rc, json.dumps(to_jsonable(payload), indent=2, ensure_ascii=False) + "\n")


def _emit_reports(rc: RunConfig, reports: list[Report]) -> int:
    if rc.output_format == "csv":
        _write(rc, reports_to_csv(reports, rc.include_timing))
    else:
        _write(rc, reports_to_json(reports, rc.include_timing))
    for report in reports:
        print(report.summary())
    code = overall_exit_code(reports)
    logger.info(f"{len(reports)} report(s), exit code {code}")
    return code


def _num(value: Any) -> str:
    """Summary rendering that matches the JSON value"""
    value = to_jsonable(value)
    return f"{value:.6g}" if isinstance(value, float) else str(value)


# =============================================================================
# Graph commands
# =============================================================================

def cmd_gen(rc: RunConfig) -> int:
    """Generate a family graph and write it as an edge list"""
    if rc.family is None:
        raise UsageError("gen needs --family")
    G, label = load_graph(rc)
    text = write_edge_list(G)
    if rc.out:
        _write(rc, text)
        print(f"{label}: n={G.n} d={G.d} m={G.m} components={len(G.components())}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_analyze(rc: RunConfig) -> int:
    """Spectrum and projector facts"""
    G, label = load_graph(rc)
    spec = spectrum_of(G)
    result: dict[str, Any] = {
        "graph": label,
        "n": G.n,
        "d": G.d,
        "m": G.m,
        "components": len(G.components()),
        "eigenvalues": [[value, mult] for value, mult in spec.distinct()],
        "residual": spec.residual,
        "projectors": [],
    }
    print(f"{label}: n={G.n} d={G.d} m={G.m} components={result['components']}")

    for lam in rc.lambdas:
        P = top_eigenspace(spec, lam)
        entry = {
            "lambda": lam,
            "dimension": P.dimension,
            "two_to_inf": two_to_inf_norm(P) if P.dimension else 0.0,
            "deviations": P.deviations(),
        }
        result["projectors"].append(entry)
        print(f"  lambda={_num(lam)}: dim(V_lambda)={P.dimension} "
              f"two_to_inf={_num(entry['two_to_inf'])}")

    _write_json(rc, result)
    return EXIT_OK


def cmd_norm(rc: RunConfig) -> int:
    """Certified p->q bracket for each projector and pair"""
    G, label = load_graph(rc)
    spec = spectrum_of(G)
    rows = []
    for lam in rc.require("lambdas", "--lambda"):
        P = top_eigenspace(spec, lam)
        for p, q in rc.require("pairs", "--pairs"):
            est = pq_norm_lower(P, p, q, restarts=rc.restarts, seed=rc.seed, threads=rc.threads)
            row = {"lambda": lam, "dimension": P.dimension, **est.to_dict()}
            line = (f"lambda={_num(lam)} {format_exponent(p)}->{format_exponent(q)}: "
                    f"lower={_num(est.lower)} upper={_num(est.upper)}")
            if rc.norm_bound is not None:
                row["bound"] = rc.norm_bound
                row["hypercontractive"] = is_hypercontractive(P, p, q, rc.norm_bound, est.lower)
                line += f" hypercontractive={row['hypercontractive']}"
            rows.append(row)
            print(line)
    _write_json(rc, {"graph": label, "seed": rc.seed, "estimates": rows})
    return EXIT_OK


def cmd_profile(rc: RunConfig) -> int:
    """Exact or sampled δ-expansion profile"""
    G, label = load_graph(rc)
    rows = []
    for delta in rc.require("deltas", "--delta"):
        if rc.heuristic:
            prof = sse_profile_heuristic(G, delta, rc.budget, rc.seed)
        else:
            prof = sse_profile(G, delta, rc.budget)
        rows.append(prof.to_dict())
        print(f"delta={_num(delta)}: phi={_num(prof.value)} ({prof.mode.value}) "
              f"witness={prof.witness.to_list()}")
    _write_json(rc, {"graph": label, "profiles": rows})
    return EXIT_OK


def cmd_round(rc: RunConfig) -> int:
    """Level-set rounding of a witness vector"""
    G, label = load_graph(rc)
    if rc.witness_path is None:
        raise UsageError("round needs --witness FILE")
    w = _read_vector(rc.witness_path, G.n)
    delta = rc.require("deltas", "--delta")[0]

    if rc.regime == "low":
        result = sweep_low(G, w, delta)
    elif rc.regime == "high":
        result = sweep_high(G, w, delta, rc.constant)
    else:
        epsilon = rc.require("epsilons", "--eps")[0]
        result = round_witness(G, w, delta, epsilon)

    if result.found:
        print(f"S = {result.vertex_set.to_list()}, phi={_num(result.phi)}, mu={_num(result.mu)}"
              + ("" if result.certified is None else f", certified={result.certified}"))
    else:
        print(f"no level set with density <= {_num(delta)}")
    _write_json(rc, {"graph": label, **result.to_dict()})
    return EXIT_OK


# =============================================================================
# Verification
# =============================================================================

def _verify_easy(rc: RunConfig, G: Graph, label: str) -> list[Report]:
    return [
        verify_easy_direction(G, eps, p, q, label=label)
        for eps in rc.require("epsilons", "--eps")
        for p, q in (rc.pairs or config.default_pairs)
    ]


def _verify_main(rc: RunConfig, G: Graph, label: str) -> list[Report]:
    return [
        verify_main(G, delta, eps, rc.pairs or None, restarts=rc.restarts, seed=rc.seed,
                    label=label, budget=rc.budget, threads=rc.threads)
        for delta in rc.require("deltas", "--delta")
        for eps in rc.require("epsilons", "--eps")
    ]


def _verify_high(rc: RunConfig, G: Graph, label: str) -> list[Report]:
    return [
        verify_high_expansion(G, delta, eps, rc.pairs or None, constant=rc.constant,
                              restarts=rc.restarts, seed=rc.seed, label=label,
                              budget=rc.budget, threads=rc.threads)
        for delta in rc.require("deltas", "--delta")
        for eps in rc.require("epsilons", "--eps")
    ]


ONE_TO_TWO_PAIRS = [(1.0, 2.0), (4 / 3, 2.0)]


def _verify_one_to_two(rc: RunConfig, G: Graph, label: str) -> list[Report]:
    return [
        verify_one_to_two(G, delta, eps, rc.pairs or ONE_TO_TWO_PAIRS, restarts=rc.restarts,
                          seed=rc.seed, label=label, budget=rc.budget, threads=rc.threads)
        for delta in rc.require("deltas", "--delta")
        for eps in rc.require("epsilons", "--eps")
    ]


def _verify_lemmas(rc: RunConfig, G: Graph, label: str) -> list[Report]:
    reports = []
    for lam in rc.require("lambdas", "--lambda"):
        reports.append(verify_projector_orthogonal(G, lam, label=label))
        reports.append(verify_lemma_inner_product(G, lam, rc.trials, rc.seed, label=label))
        for p, q in rc.pairs or config.default_pairs:
            reports.append(verify_projector_subspace(G, lam, p, q, rc.trials, rc.seed,
                                                     restarts=rc.restarts, label=label))
    for eps in rc.epsilons:
        for delta in rc.deltas:
            reports.append(verify_local_cheeger(G, eps, delta, rc.trials, rc.seed, label=label))
    return reports


DUALITY_PAIRS = [(4 / 3, 2.0), (1.0, 2.0), (2.0, 4.0)]
DUALITY_RESTARTS = 200


def _verify_duality(rc: RunConfig) -> list[Report]:
    restarts = rc.restarts or DUALITY_RESTARTS
    pairs = rc.pairs or DUALITY_PAIRS
    if rc.matrix_path is not None:
        matrices = [(np.asarray(_read_json(rc.matrix_path), dtype=float), f"file:{rc.matrix_path}")]
    elif rc.random_size is not None:
        matrices = [(random_symmetric(rc.random_size, rc.seed),
                     f"random_symmetric(n={rc.random_size},seed={rc.seed})")]
    else:
        G, label = load_graph(rc)
        spec = spectrum_of(G)
        matrices = [(top_eigenspace(spec, lam), f"{label}|P(lambda={lam})")
                    for lam in rc.require("lambdas", "--lambda")]
    return [
        verify_duality(M, p, q, restarts=restarts, seed=rc.seed, label=name, threads=rc.threads)
        for M, name in matrices
        for p, q in pairs
    ]


VERIFY_CLAIMS: dict[str, Callable[..., list[Report]]] = {
    "easy": _verify_easy,
    "main": _verify_main,
    "high": _verify_high,
    "one-to-two": _verify_one_to_two,
    "lemmas": _verify_lemmas,
}


def cmd_verify(rc: RunConfig) -> int:
    """Run one claim verifier over the requested parameter grid"""
    if rc.claim == "duality":
        return _emit_reports(rc, _verify_duality(rc))
    G, label = load_graph(rc)
    return _emit_reports(rc, VERIFY_CLAIMS[rc.claim](rc, G, label))


def cmd_sweep(rc: RunConfig) -> int:
    """Main-theorem battery over the built-in families"""
    reports = run_battery(threads=rc.threads, restarts=rc.restarts, seed=rc.seed,
                          pairs=rc.pairs or None)
    return _emit_reports(rc, reports)

