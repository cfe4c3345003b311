"""Batch command-line front end.

    germinv COMMAND PROBLEM [--seed N] [--step-budget N] [--time-budget S]
                            [--json-out PATH] [--verbose] [--timing]

PROBLEM is a problem-file path or ``fixture:NAME`` for a bundled fixture.
Exit codes: 0 success, 2 usage or input error, 3 budget exhausted,
4 genericity certification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from . import invariants as inv
from .difftools import GenericityError, OneFormCollection
from .engine import Budget, BudgetExceeded
from .logarithmic import cohen_macaulay_report, lcv_minus_ideal, tangent_module
from .problem import ProblemError, ProblemFile, load_problem_file, parse_problem

SCHEMA = "germinv.report/1"
COMMANDS = (
    "milnor",
    "milnor-restricted",
    "tjurina",
    "br",
    "br-rel",
    "chern-index",
    "chern",
    "cusps",
    "lcv-cm",
    "identities",
    "suspension-check",
)
EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CERT = 0, 2, 3, 4
DEFAULT_SEED = 0

log = logging.getLogger("germinv")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    step_budget: int | None = None
    time_budget: float | None = None
    verbosity: int = 0
    commands: list[str] = field(default_factory=list)
    timing: bool = False

    def __post_init__(self):
        if not -(2**63) <= self.seed < 2**64:
            raise UsageError("seed must fit in 64 bits")
        if self.step_budget is not None and self.step_budget <= 0:
            raise UsageError("step budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise UsageError("time budget must be positive")
        for c in self.commands:
            if c not in COMMANDS:
                raise UsageError(f"unknown command {c!r}")

    def budget(self) -> Budget:
        return Budget(self.step_budget, self.time_budget)


def fixture_names() -> list[str]:
    root = resources.files("germinv") / "fixtures"
    return sorted(p.name[: -len(".problem")] for p in root.iterdir() if p.name.endswith(".problem"))


def fixture_text(name: str) -> str:
    path = resources.files("germinv") / "fixtures" / f"{name}.problem"
    if not path.is_file():
        raise UsageError(f"no fixture {name!r} (available: {', '.join(fixture_names())})")
    return path.read_text(encoding="utf-8")


def load(source: str) -> ProblemFile:
    if source.startswith("fixture:"):
        name = source[len("fixture:") :]
        return parse_problem(fixture_text(name), source)
    if not Path(source).is_file():
        raise UsageError(f"cannot read problem file {source!r}")
    return load_problem_file(source)


# ---------------------------------------------------------------------------
# commands


def _report(name, value, route, digest, assumptions=(), **metadata) -> dict:
    return inv.InvariantReport(name, value, route, digest, list(assumptions), metadata).as_dict()


def _need_map(problem: ProblemFile, components: int | None = None):
    if problem.map is None:
        raise UsageError("this command needs a 'map:' line")
    if components is not None and len(problem.map) != components:
        raise UsageError(f"this command needs a map with {components} components")


def _collections(problem: ProblemFile) -> list[tuple[str, OneFormCollection]]:
    X = problem.variety
    out = []
    if problem.linear is not None:
        C = OneFormCollection.of_differentials(X.ring, problem.linear, X.expected_dimension())
        out.append(("linear", C))
    if problem.map is not None and len(problem.map) == 2 and X.expected_dimension() == 2:
        eta1, eta2, _ = inv.eta_collections(X, problem.map)
        out += [("eta1", eta1), ("eta2", eta2)]
    return out


ICIS = "variety is an ICIS (not verified)"


def run(command: str, problem: ProblemFile, cfg: RunConfig) -> dict:
    """Execute one command; raises BudgetExceeded / GenericityError / UsageError."""
    budget = cfg.budget()
    X = problem.variety
    out: dict = {}
    digest = problem.digest

    if command == "milnor":
        if X.generators:
            v = inv.milnor_icis(X, budget)
            route = "telescoped Le-Greuel colengths along the defining equations"
            assumptions = [ICIS, "each partial intersection is an ICIS (not verified)"] if X.k > 1 else []
            out["results"] = [_report("milnor_number", v, route, digest, assumptions)]
        else:
            _need_map(problem)
            v = inv.milnor_hypersurface(problem.f1, budget)
            out["results"] = [_report("milnor_number", v, "dim O/J(f1)", digest)]
    elif command == "milnor-restricted":
        _need_map(problem)
        out["results"] = [
            _report(f"milnor_restricted_f{i + 1}", inv.milnor_restricted(X, f, budget),
                    "dim O/(I_X + maximal minors of J(phi, f))", digest, [ICIS] if X.generators else [])
            for i, f in enumerate(problem.map)
        ]
    elif command == "tjurina":
        v = inv.tjurina_icis(X, budget)
        out["results"] = [_report("tjurina_number", v, "dim O^k/(d(phi) O^n + I_X O^k)", digest, [ICIS] if X.generators else [])]
    elif command in ("br", "br-rel"):
        _need_map(problem)
        W = problem.working_variety()
        rel = command == "br-rel"
        v = inv.bruce_roberts(problem.f1, W, rel, budget)
        where = "X cap {f2=0}" if problem.f2 is not None else "X"
        results = [
            _report(
                "relative_bruce_roberts" if rel else "bruce_roberts",
                v,
                f"dim O/(df1(Theta) + I) on {where}" if rel else f"dim O/df1(Theta) on {where}",
                digest,
            )
        ]
        if rel and W.generators:
            results.append(
                _report(
                    "relative_bruce_roberts_formula",
                    inv.br_minus_via_formula(W, problem.f1, budget),
                    "mu(W cap f1=0) + mu(W) - tau(W) from Le-Greuel and Tjurina colengths",
                    digest,
                    [f"{where} and its intersection with f1=0 are ICIS (not verified)"],
                )
            )
        out["results"] = results
    elif command in ("chern-index", "chern"):
        colls = _collections(problem)
        if not colls:
            raise UsageError("need a 'linear:' collection or a 2-component map on a surface")
        results = []
        for label, C in colls:
            ind = inv.chern_index(X, C, budget)
            if command == "chern-index":
                results.append(_report(f"index_{label}", ind, "dim O/(I_X + sum of maximal minors of [d phi; omega])", digest,
                                       [ICIS] if X.generators else [], shape=[C.d, list(C.ks)]))
                continue
            gen = inv.generic_linear_index(X, C.ks, cfg.seed, inv.DEFAULT_TRIALS, budget)
            value = ind - gen.value if ind != inv.INFINITE else inv.INFINITE
            results.append(_report(
                f"chern_{label}", value, "ind{omega} - ind{generic linear collection}", digest,
                ([ICIS] if X.generators else []) + [gen.note()],
                index=inv.json_value(ind), generic_index=gen.value, generic_functions=[list(s) for s in gen.functions],
                shape=[C.d, list(C.ks)], sign_convention=inv.EU_CH_SIGN_NOTE,
            ))
        if command == "chern" and problem.f2 is not None and X.expected_dimension() >= 2:
            results.append(inv.euler_obstruction_function(X, problem.f1, problem.f2, cfg.seed, budget=budget).as_dict())
        out["results"] = results
    elif command == "cusps":
        _need_map(problem, 2)
        v = inv.cusps_count(X, problem.map, budget)
        out["results"] = [_report("cusps", v, "dim O/(I_X + beta minors of J(phi, f, Delta))", digest,
                                  ([ICIS] if X.generators else []) + ["f is A-finite (not verified)"])]
    elif command == "lcv-cm":
        W = problem.working_variety()
        T = tangent_module(W, budget)
        L = lcv_minus_ideal(W, T)
        cm = cohen_macaulay_report(L, budget)
        out["theta_generators"] = [[str(c) for c in v] for v in T.generators]
        out["lcv_minus_generators"] = [str(g) for g in L.generators]
        out["cotangent_variables"] = list(L.cotangent_ring.variables)
        out["cohen_macaulay"] = cm.as_dict()
    elif command == "identities":
        _need_map(problem, 2)
        out["identities"] = [c.as_dict() for c in inv.identity_report(X, problem.map, cfg.seed, budget=budget)]
    elif command == "suspension-check":
        _need_map(problem, 1)
        if problem.suspension is None:
            raise UsageError("this command needs a 'suspension:' line")
        _, h = problem.suspension
        out["identities"] = [inv.suspension_check(X, problem.f1, h, budget).as_dict()]
    else:
        raise UsageError(f"unknown command {command!r}")
    return out


def _identity_failures(out: dict) -> tuple[bool, bool]:
    budget = cert = False
    for c in out.get("identities", []):
        err = c.get("error")
        if err:
            if "budget" in err:
                budget = True
            else:
                cert = True
    return budget, cert


def execute(command: str, problem: ProblemFile, cfg: RunConfig) -> tuple[dict, int]:
    doc = {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "problem": {"name": problem.name, "digest": problem.digest, "ring": list(problem.ring.variables)},
        "seed": cfg.seed,
        "budgets": {"steps": cfg.step_budget, "seconds": cfg.time_budget},
    }
    start = time.perf_counter()
    code = EXIT_OK
    try:
        doc.update(run(command, problem, cfg))
        doc["status"] = "ok"
        budget_hit, cert_hit = _identity_failures(doc)
        if budget_hit:
            doc["status"], code = "budget_exhausted", EXIT_BUDGET
        elif cert_hit:
            doc["status"], code = "certification_failed", EXIT_CERT
    except BudgetExceeded as exc:
        doc["status"], doc["error"], code = "budget_exhausted", str(exc), EXIT_BUDGET
    except GenericityError as exc:
        doc["status"], doc["error"], code = "certification_failed", str(exc), EXIT_CERT
    if cfg.timing:
        doc["seconds"] = round(time.perf_counter() - start, 3)
    return doc, code


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="germinv", description="Singularity invariants of germs on varieties.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem", help="problem file, or fixture:NAME")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for generic linear data (default 0)")
    ap.add_argument("--step-budget", type=int, default=None, help="maximum reduction steps")
    ap.add_argument("--time-budget", type=float, default=None, help="maximum seconds")
    ap.add_argument("--json-out", default=None, help="write the report here instead of stdout")
    ap.add_argument("--verbose", "-v", action="count", default=0)
    ap.add_argument("--timing", action="store_true", help="include elapsed seconds (breaks byte-identical output)")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig(args.seed, args.step_budget, args.time_budget, args.verbose, [args.command], args.timing)
        problem = load(args.problem)
        doc, code = execute(args.command, problem, cfg)
    except (UsageError, ProblemError) as exc:
        print(f"germinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # shape or ring errors raised while building the requested objects
        print(f"germinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dumps(doc)
    if args.json_out:
        Path(args.json_out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    log.info("status %s", doc["status"])
    return code


if __name__ == "__main__":
    sys.exit(main())
