# -*- coding: utf-8 -*-
"""
scikit-perc command-line utilities
"""
import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    BOUND_COLUMNS,
    K_CAP,
    VARIANTS,
    bound_table,
    intermediate_params,
    verify_appendix,
    verify_uniform_split,
)
from .io import CheckResult, RunManifest, VerificationReport, dumps_csv, dumps_json
from .monotonicity import DEFAULT_N_MAX, check_monotone_at, empirical_onset, expected_infected
from .montecarlo import DEFAULT_DEPTH, FUNCTIONALS, SimConfig, estimate
from .patterns import LayerGraph, cylinder_chain, is_noncrossing, pattern_chain
from .qsd import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    compute_qsd,
    onset_bound,
    qsd_floor,
    qsd_floor_check,
    verify_convergence_bound,
)
from .saw import (
    DEFAULT_CENSUS_BUDGET,
    WalkCensus,
    c2_consistency,
    census,
    small_counts,
    theorem3,
    verify_recursions,
)
from .saw.series import THEOREM_P
from .utils import CPU_COUNT, as_fraction

log = logging.getLogger(__name__)

EXIT_SUCCESS, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

parser = argparse.ArgumentParser(
    prog="skperc", description=f"scikit-perc {__version__} command-line utilities."
)
parser.add_argument("--version", action="version", version=f"scikit-perc {__version__}")

common = argparse.ArgumentParser(add_help=False)
common.add_argument("--output", type=Path, default=None, help="Write results to this file, plus a manifest beside it.")
common.add_argument("--threads", type=int, default=1, help=f"Number of worker processes (at most {CPU_COUNT}).")
common.add_argument("--verbose", action="store_true", help="Log progress to stderr.")

subparsers = parser.add_subparsers(title="command", dest="command", required=True)

patterns_parser = subparsers.add_parser(
    "patterns", parents=[common], description="List the patterns of a layer, flagging attainable ones."
)
patterns_parser.add_argument("--k", type=int, required=True, help="Number of vertices per layer.")
patterns_parser.add_argument("--graph", choices=("cycle", "line"), default="cycle")
patterns_parser.add_argument("--origin", type=int, default=0)
patterns_parser.add_argument("--attainable", action="store_true", help="Only list attainable infected patterns.")
patterns_format = patterns_parser.add_mutually_exclusive_group()
patterns_format.add_argument("--json", action="store_true", help="JSON output (default).")
patterns_format.add_argument("--csv", action="store_true", help="CSV output.")

kernel_parser = subparsers.add_parser(
    "kernel", parents=[common], description="Transition counts of the pattern chain, or its matrix at --p."
)
kernel_parser.add_argument("--k", type=int, required=True)
kernel_parser.add_argument("--p", type=float, default=None, help="Evaluate transition probabilities at p.")
kernel_parser.add_argument("--origin", type=int, default=0)
kernel_parser.add_argument("--format", choices=("csv", "json"), default="csv")

qsd_parser = subparsers.add_parser(
    "qsd", parents=[common], description="Quasi-stationary distribution and convergence certificate."
)
qsd_parser.add_argument("--k", type=int, required=True)
qsd_parser.add_argument("--p", type=float, required=True)
qsd_parser.add_argument("--origin", type=int, default=0)
qsd_parser.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
qsd_parser.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
qsd_parser.add_argument("--variant", choices=VARIANTS, default="c", help="Certificate constants.")
qsd_parser.add_argument("--horizon", type=int, default=200, help="Layers over which convergence is checked.")

onset_parser = subparsers.add_parser(
    "onset", parents=[common], description="Empirical onset of monotonicity of the pattern chain."
)
onset_parser.add_argument("--k", type=int, required=True)
onset_parser.add_argument("--p", type=float, required=True)
onset_parser.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
onset_parser.add_argument("--origin", type=int, default=0)
onset_parser.add_argument("--exact", action="store_true", help="Compare exact rational probabilities.")
onset_parser.add_argument("--json", action="store_true", help="JSON output (default).")

bounds_parser = subparsers.add_parser(
    "bounds", parents=[common], description="Uniform onset bound over circumferences, or a table of formulas."
)
bounds_parser.add_argument("--k-min", type=int, default=3)
bounds_parser.add_argument("--k-max", type=int, default=200)
bounds_parser.add_argument("--density", type=int, default=1000, help="Grid points per piece of (0, 1).")
bounds_parser.add_argument("--table", action="store_true", help="CSV table of every formula instead.")
bounds_parser.add_argument(
    "--p-values", type=float, nargs="+", default=None, help="Percolation parameters of the table."
)

appendix_parser = subparsers.add_parser(
    "verify-appendix", parents=[common], description="Check the analytic inequalities behind the bounds."
)
appendix_parser.add_argument("--density", type=int, default=10_000)
appendix_parser.add_argument("--k-max", type=int, default=1000)
appendix_parser.add_argument("--m-max", type=int, default=200)

saw_parser = subparsers.add_parser(
    "saw", parents=[common], description="Self-avoiding walk census of the half-plane and the plane."
)
saw_parser.add_argument("--max-a", type=int, default=16)
saw_parser.add_argument("--max-b", type=int, default=16)
saw_parser.add_argument("--max-c", type=int, default=16)
saw_parser.add_argument("--max-d", type=int, default=16)
saw_parser.add_argument("--budget", type=int, default=DEFAULT_CENSUS_BUDGET, help="Largest number of walks.")
saw_parser.add_argument("--small", action="store_true", help="Also count first-passage and return walks.")
saw_parser.add_argument("--csv", action="store_true", help="CSV table l,a,b,c,d instead of JSON.")

theorem3_parser = subparsers.add_parser(
    "theorem3", parents=[common], description="Series bound on the cluster of the origin in layer 0."
)
theorem3_parser.add_argument("--p", type=float, default=THEOREM_P)
theorem3_parser.add_argument("--deep", action="store_true", help="Recompute the walk census instead of reading it.")

mc_parser = subparsers.add_parser("mc", parents=[common], description="Monte Carlo estimate of a functional.")
mc_parser.add_argument("--k", type=int, required=True)
mc_parser.add_argument("--p", type=float, required=True)
mc_parser.add_argument("--functional", choices=FUNCTIONALS, default="W")
mc_parser.add_argument("--n", type=int, default=None, help="Layer of the functional.")
mc_parser.add_argument("--v", type=int, default=None, help="Vertex of the connection functional.")
mc_parser.add_argument("--x", type=str, default=None, help="Pattern of the marginal functional, e.g. {{*,0},{1,2}}.")
mc_parser.add_argument("--samples", type=int, default=10_000)
mc_parser.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
mc_parser.add_argument("--origin", type=int, default=0)
mc_parser.add_argument("--strip", action="store_true", help="Simulate a strip of Z x Z instead of a cylinder.")
mc_parser.add_argument("--seed", type=int, default=0)

verify_parser = subparsers.add_parser("verify-all", parents=[common], description="Run every verification.")
verify_depth = verify_parser.add_mutually_exclusive_group()
verify_depth.add_argument("--quick", action="store_true", help="Reduced grids and census.")
verify_depth.add_argument("--deep", action="store_true", help="Full census and circumferences up to the cap.")


class Outcome:
    """
    Result of one subcommand.

    Parameters
    ----------
    payload : object
        JSON-serializable result.
    rows : list of dict or None, optional
        Tabular form of the result, written when CSV output is requested.
    columns : sequence of str or None, optional
    passed : bool, optional
        Whether every verification passed.
    seeds : sequence of int, optional
    summary : str or None, optional
        One line logged for humans.
    """

    def __init__(self, payload, rows=None, columns=None, passed=True, seeds=tuple(), summary=None):
        self.payload = payload
        self.rows = rows
        self.columns = columns
        self.passed = passed
        self.seeds = seeds
        self.summary = summary


def main(args=None):
    """
    Run the command-line utilities.

    Parameters
    ----------
    args : list of str or None, optional
        Command-line arguments. Defaults to ``sys.argv[1:]``.

    Returns
    -------
    code : int
        0 if every check passed, 1 if a verification failed, 2 for invalid parameters.
    """
    try:
        args = parser.parse_args(args)
    except SystemExit as exc:
        return EXIT_SUCCESS if exc.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    if not 1 <= args.threads <= CPU_COUNT:
        log.error(f"--threads must lie between 1 and {CPU_COUNT}, but got {args.threads}")
        return EXIT_USAGE

    try:
        outcome = COMMANDS[args.command](args)
    except ValueError as exc:
        log.error(str(exc))
        return EXIT_USAGE
    except RuntimeError as exc:
        log.error(str(exc))
        return EXIT_FAILURE

    parameters = {key: value for key, value in vars(args).items() if key not in ("output", "verbose")}
    wants_csv = outcome.rows is not None and (getattr(args, "csv", False) or getattr(args, "format", None) == "csv")
    text = dumps_csv(outcome.rows, outcome.columns) if wants_csv else dumps_json(outcome.payload) + "\n"

    if args.output is None:
        sys.stdout.write(text)
        manifest = RunManifest.create(args.command, parameters, seeds=outcome.seeds)
        log.info(dumps_json(manifest))
    else:
        args.output.write_text(text)
        manifest = RunManifest.create(args.command, parameters, seeds=outcome.seeds, outputs=[args.output])
        manifest.write(args.output)

    if outcome.summary:
        log.log(logging.INFO if outcome.passed else logging.WARNING, outcome.summary)
    return EXIT_SUCCESS if outcome.passed else EXIT_FAILURE


def main_patterns(args):
    graph = LayerGraph.cycle(args.k) if args.graph == "cycle" else LayerGraph.line(args.k)
    chain = pattern_chain(graph, origin=args.origin, processes=args.threads)
    attainable = set(chain.attainable.tolist())
    rows = list()
    for index, x in enumerate(chain.space):
        if args.attainable and index not in attainable:
            continue
        rows.append(
            {
                "index": index,
                "pattern": str(x),
                "infected": x.is_infected,
                "noncrossing": is_noncrossing(x, graph),
                "attainable": index in attainable,
            }
        )
    payload = {"k": args.k, "graph": args.graph, "origin": args.origin, "n_attainable": len(attainable)}
    payload["patterns"] = [dict(row, pattern=chain.space[row["index"]].to_json()) for row in rows]
    return Outcome(payload, rows=rows, summary=f"{len(rows)} patterns, {len(attainable)} attainable")


def main_kernel(args):
    chain = cylinder_chain(args.k, origin=args.origin, processes=args.threads)
    space, kernel = chain.space, chain.kernel
    if args.p is None:
        columns = ("y", "x", "j", "count")
        rows = [dict(zip(columns, row)) for row in kernel.rows()]
    else:
        columns = ("y", "x", "probability")
        matrix = chain.transition_matrix(args.p).tocoo()
        states = kernel.states
        rows = [
            {"y": int(states[i]), "x": int(states[j]), "probability": float(value)}
            for i, j, value in zip(matrix.row, matrix.col, matrix.data)
        ]
    payload = {
        "k": args.k,
        "p": args.p,
        "patterns": [str(space[int(i)]) for i in kernel.states],
        "n_edges": kernel.n_edges,
        "entries": rows,
    }
    return Outcome(payload, rows=rows, columns=columns)


def main_qsd(args):
    chain = cylinder_chain(args.k, origin=args.origin, processes=args.threads)
    absorbing = chain.absorbing_chain(args.p)
    result = compute_qsd(absorbing, tolerance=args.tolerance, max_iterations=args.max_iterations)
    params = intermediate_params(args.k, args.p, variant=args.variant)
    convergence = verify_convergence_bound(
        absorbing, params, chain.initial_distribution(args.p), args.horizon, qsd=result
    )
    floor = qsd_floor_check(result, args.k, args.p)
    payload = {
        "k": args.k,
        "p": args.p,
        "states": [str(x) for x in chain.states],
        **result.to_dict(),
        "floor_holds": floor,
        "certificate": params.to_dict(),
        "onset_bound": onset_bound(params),
        "convergence": convergence.to_dict(),
    }
    rows = [{"pattern": str(x), "alpha": float(a)} for x, a in zip(chain.states, result.alpha)]
    passed = floor and convergence.passed
    return Outcome(payload, rows=rows, passed=passed, summary=f"lambda = {result.eigenvalue:.12g}")


def main_onset(args):
    p = args.p
    if args.exact:
        p = as_fraction(p)
    onset = empirical_onset(args.k, p, n_max=args.n_max, origin=args.origin, exact=args.exact)
    payload = {"k": args.k, "p": args.p, "n_max": args.n_max, "exact": args.exact, "onset": onset}
    if onset is not None:
        payload["monotone_at_onset"] = check_monotone_at(args.k, p, onset, origin=args.origin, exact=args.exact)
    return Outcome(
        payload,
        rows=[payload],
        passed=onset is not None,
        summary=f"onset = {onset}" if onset is not None else f"no onset up to n = {args.n_max}",
    )


def main_bounds(args):
    ks = range(args.k_min, args.k_max + 1)
    if args.table:
        ps = args.p_values or np.round(np.arange(0.05, 0.96, 0.05), 2).tolist()
        rows = bound_table(ks, ps)
        return Outcome(rows, rows=rows, columns=BOUND_COLUMNS)
    report = verify_uniform_split(ks, density=args.density, processes=args.threads)
    return _report_outcome(report)


def main_verify_appendix(args):
    return _report_outcome(verify_appendix(grid_density=args.density, k_max=args.k_max, m_max=args.m_max))


def main_saw(args):
    walks = census(
        max_a=args.max_a,
        max_b=args.max_b,
        max_c=args.max_c,
        max_d=args.max_d,
        processes=args.threads,
        budget=args.budget,
        small=args.small,
    )
    return Outcome(walks.to_dict(), rows=walks.rows(), columns=("l", "a", "b", "c", "d"), passed=walks.complete)


def main_theorem3(args):
    walks = census(processes=args.threads) if args.deep else WalkCensus.reference()
    bound = theorem3(args.p, walks)
    return Outcome(
        bound.to_dict(),
        rows=[bound.to_dict()],
        passed=bound.passed,
        summary=f"p * w0_bound(p) = {bound.product:.6f} at p = {bound.p}",
    )


def main_mc(args):
    config = SimConfig(
        k=args.k,
        p=args.p,
        depth=args.depth,
        horizon=args.n or 0,
        samples=args.samples,
        seed=args.seed,
        origin=args.origin,
        strip=args.strip,
    )
    params = {key: getattr(args, key) for key in ("n", "v", "x") if getattr(args, key) is not None}
    result = estimate(config, args.functional, processes=args.threads, **params)
    return Outcome(
        result.to_dict(),
        rows=[{"mean": result.mean, "std_error": result.std_error}],
        seeds=[args.seed],
        summary=f"{args.functional} = {result.mean:.6g} +/- {result.std_error:.2g}",
    )


def _report_outcome(report):
    failures = len(report.violations)
    return Outcome(
        report,
        rows=report.violations,
        passed=report.passed,
        summary=f"{report.title}: {'passed' if report.passed else f'{failures} violation(s)'}",
    )


def _attainability_report(ks):
    """Attainable infected patterns are exactly the noncrossing infected patterns."""
    margins = list()
    for k in ks:
        chain = cylinder_chain(k)
        attainable = set(chain.attainable.tolist())
        graph = LayerGraph.cycle(k)
        expected = {i for i in chain.space.star.tolist() if is_noncrossing(chain.space[i], graph)}
        margins.append(-len(attainable ^ expected))
    check = CheckResult.from_arrays("attainable = noncrossing infected", margins, k=np.array(ks))
    return VerificationReport(title="attainable patterns", checks=(check,), parameters={"k": list(ks)})


def _qsd_report(ks, ps):
    residuals, floors = list(), list()
    for k in ks:
        chain = cylinder_chain(k)
        for p in ps:
            result = compute_qsd(chain.absorbing_chain(p))
            residuals.append(1e-12 - result.residual_l1)
            floors.append(float(np.min(result.alpha) - qsd_floor(k, p)))
    grid_k, grid_p = np.meshgrid(ks, ps, indexing="ij")
    return VerificationReport(
        title="quasi-stationary distributions",
        checks=(
            CheckResult.from_arrays("residual <= 1e-12", residuals, k=grid_k.ravel(), p=grid_p.ravel()),
            CheckResult.from_arrays("alpha >= floor", floors, atol=1e-12, k=grid_k.ravel(), p=grid_p.ravel()),
        ),
        parameters={"k": list(ks), "p": list(ps)},
    )


def _onset_report(ps, limits):
    checks = list()
    for k, limit in limits.items():
        onsets = [empirical_onset(k, p) for p in ps]
        margins = [limit - (np.inf if onset is None else onset) for onset in onsets]
        checks.append(CheckResult.from_arrays(f"onset(k={k}) <= {limit}", margins, p=np.array(ps)))
    return VerificationReport(title="onset of monotonicity", checks=tuple(checks), parameters={"p": list(ps)})


def _expectation_report(ks, ps, horizon):
    checks = list()
    for k in ks:
        margins = list()
        for p in ps:
            values = np.array([expected_infected(k, p, n) for n in range(horizon + 1)])
            margins.append(float(np.min(values[:-1] - values[1:] + 1e-12 * values[:-1])))
        checks.append(CheckResult.from_arrays(f"E(W_n+1) <= E(W_n), k={k}", margins, p=np.array(ps)))
    return VerificationReport(
        title="expected infected vertices", checks=tuple(checks), parameters={"k": list(ks), "horizon": horizon}
    )


def main_verify_all(args):
    if args.quick:
        density, k_max, appendix_k, walks = 200, 40, 200, census(12, 12, 12, 12, processes=args.threads)
    elif args.deep:
        density, k_max, appendix_k, walks = 1000, K_CAP, 1000, census(processes=args.threads)
    else:
        density, k_max, appendix_k, walks = 1000, 200, 1000, WalkCensus.reference()

    reference = WalkCensus.reference()
    agreement = [
        CheckResult.from_arrays(
            f"{name}_l = pinned",
            [-abs(x - y) for x, y in zip(getattr(walks, name), getattr(reference, name))],
            l=np.arange(len(getattr(walks, name))),
        )
        for name in "abcd"
    ]
    n, k = small_counts()
    mismatches = int(tuple(n) != tuple(reference.n)) + int(tuple(k) != tuple(reference.k))
    agreement.append(CheckResult.from_arrays("n_l and k_i = pinned", -mismatches))

    grid = np.round(np.arange(0.1, 0.91, 0.1), 2).tolist()
    reports = [
        VerificationReport(title="walk census", checks=tuple(agreement), parameters=walks.lengths),
        _attainability_report([3, 4, 5, 6]),
        _qsd_report([3, 4, 5], grid),
        _onset_report(np.round(np.arange(0.05, 0.96, 0.05), 2).tolist(), {3: 2, 4: 4}),
        _expectation_report([3, 4, 5], np.round(np.arange(0.05, 0.36, 0.05), 2).tolist(), 50),
        verify_appendix(grid_density=density * 10 if not args.quick else density, k_max=appendix_k),
        verify_uniform_split(range(3, k_max + 1), density=density, processes=args.threads),
        verify_recursions(),
        c2_consistency(0.2, samples=0),
    ]
    bound = theorem3()
    reports.append(
        VerificationReport(
            title="series bound",
            checks=(CheckResult.from_arrays("p w0_bound(p) <= 1", 1 - bound.product, p=bound.p),),
            parameters={"p": bound.p},
        )
    )
    for report in reports:
        log.info(f"{report.title}: {'passed' if report.passed else 'FAILED'}")

    passed = all(report.passed for report in reports)
    rows = [
        {"title": report.title, "check": check.name, "passed": check.passed, "worst_margin": check.worst_margin}
        for report in reports
        for check in report.checks
    ]
    return Outcome(
        {"passed": passed, "reports": reports},
        rows=rows,
        passed=passed,
        summary="every verification passed" if passed else "some verifications failed",
    )


COMMANDS = {
    "patterns": main_patterns,
    "kernel": main_kernel,
    "qsd": main_qsd,
    "onset": main_onset,
    "bounds": main_bounds,
    "verify-appendix": main_verify_appendix,
    "saw": main_saw,
    "theorem3": main_theorem3,
    "mc": main_mc,
    "verify-all": main_verify_all,
}


if __name__ == "__main__":
    sys.exit(main())
