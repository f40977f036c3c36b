"""Batch command line interface.

Subcommands: measures, roof, verify, distill, sample, pipeline. All
structured output is JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .channels import PropertyReport
from .distill import distill_exact, distill_simulate
from .measures import (
    MeasureId,
    c_l1,
    c_rel_ent,
    coherence_concurrence_qubit,
    r_pure,
    r_qubit_analytic,
)
from .rng import pipeline_compare, sample_measurement
from .roof import RoofConfig, optimize_roof
from .stateio import load_state, pure_to_dict, save_stream
from .states import DensityMatrix, PureState, pure_state
from .verify import DEFAULT_MEASURES, run_property_suite


def _emit(data) -> None:
    json.dump(data, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _as_density(state) -> DensityMatrix:
    return state.projector() if isinstance(state, PureState) else state


def _cmd_measures(args) -> int:
    state = load_state(args.state, tol=args.tol)
    rho = _as_density(state)
    out = {
        "dim": rho.dim,
        "rel_ent": c_rel_ent(rho).value,
        "l1": c_l1(rho).value,
    }
    if isinstance(state, PureState):
        out["r_pure"] = r_pure(state).value
    if rho.dim == 2:
        out["concurrence"] = coherence_concurrence_qubit(rho)
        out["qubit_analytic"] = r_qubit_analytic(rho).value
    _emit(out)
    return 0


def _cmd_roof(args) -> int:
    rho = _as_density(load_state(args.state))
    config = RoofConfig(
        ensemble_size=args.ensemble_size,
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        tolerance=args.tolerance,
        seed=args.seed,
    )
    result = optimize_roof(rho, config)
    _emit(
        {
            "value": result.value,
            "converged": result.converged,
            "restarts_used": result.restarts_used,
            "decomposition": [
                {"p": p, "state": pure_to_dict(psi)}
                for p, psi in result.best_decomposition.elements
            ],
        }
    )
    return 0


def _report_dict(report: PropertyReport) -> dict:
    return {
        "property": report.property_id.value,
        "passed": report.passed,
        "worst_slack": report.worst_slack,
        "witness": repr(report.witness) if report.witness is not None else None,
    }


def _cmd_verify(args) -> int:
    measures = tuple(MeasureId(m) for m in args.measures) if args.measures else DEFAULT_MEASURES
    reports = run_property_suite(
        measures=measures, samples=args.samples, seed=args.seed, max_dim=args.max_dim
    )
    _emit([_report_dict(r) for r in reports])
    return 0 if all(r.passed for r in reports) else 1


def _cmd_distill(args) -> int:
    alpha = math.sqrt(args.alpha_sq)
    beta = math.sqrt(1.0 - args.alpha_sq)
    psi = pure_state([alpha, beta])
    if args.exact:
        run = distill_exact(psi, args.n)
        _emit(
            {
                "mode": "exact",
                "n_copies": run.n_copies,
                "probabilities": list(run.probabilities),
                "subspace_dims": [len(idx) for idx in run.subspace_indices],
            }
        )
        return 0
    report = distill_simulate(psi, args.n, args.m, args.seed)
    counts = np.bincount(report.sampled_k, minlength=args.n + 1)
    _emit(
        {
            "mode": "simulate",
            "n_copies": report.n_copies,
            "n_groups": report.n_groups,
            "outcome_counts": {str(k): int(c) for k, c in enumerate(counts) if c},
            "total_log2_dim": report.total_log2_dim,
            "r": report.r,
            "yield": report.yield_rate,
            "input_randomness": report.input_randomness,
            "loss_actual": report.loss_actual,
            "loss_bound": report.loss_bound,
        }
    )
    return 0


def _cmd_sample(args) -> int:
    state = load_state(args.state)
    if not isinstance(state, PureState):
        raise SystemExit("sample needs a pure state file (amplitudes)")
    stream = sample_measurement(state, args.n, args.seed)
    if args.out:
        save_stream(stream, args.out)
    else:
        sys.stdout.write(f"# dim={stream.source_dim} seed={stream.seed}\n")
        sys.stdout.write("\n".join(str(int(s)) for s in stream.symbols) + "\n")
    return 0


def _cmd_pipeline(args) -> int:
    state = load_state(args.state)
    if not isinstance(state, PureState):
        raise SystemExit("pipeline needs a pure state file (amplitudes)")
    cmp = pipeline_compare(
        state,
        n_groups=args.groups,
        group_n=args.group_n,
        seed=args.seed,
        margin=args.margin,
        entropy_mode=args.entropy,
    )
    _emit(
        {
            "path_a_bits": cmp.path_a_bits,
            "path_b_bits": cmp.path_b_bits,
            "path_a_monobit_z": cmp.path_a_monobit_z,
            "path_b_monobit_z": cmp.path_b_monobit_z,
            "relative_difference": cmp.relative_difference,
            "lengths_agree": cmp.lengths_agree,
            "target_rate": cmp.target_rate,
            "distill_yield": cmp.distill_yield,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cohrand")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="print all applicable coherence measures for a state")
    p.add_argument("state")
    p.add_argument("--tol", type=float, default=1e-10, help="validation tolerance")
    p.set_defaults(func=_cmd_measures)

    p = sub.add_parser("roof", help="optimize the convex-roof randomness measure")
    p.add_argument("state")
    p.add_argument("--ensemble-size", type=int, default=None)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_roof)

    p = sub.add_parser("verify", help="run the coherence-measure property suite")
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--measures",
        nargs="+",
        choices=[m.value for m in MeasureId],
        default=None,
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("distill", help="simulate the coherence distillation protocol")
    p.add_argument("--alpha-sq", type=float, required=True)
    p.add_argument("--n", type=int, required=True, help="copies per group")
    p.add_argument("--m", type=int, default=1, help="number of groups")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="state-vector mode (n <= 20)")
    p.set_defaults(func=_cmd_distill)

    p = sub.add_parser("sample", help="sample measurement outcomes of a pure state")
    p.add_argument("state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("pipeline", help="compare extract-after-measure with distill-then-measure")
    p.add_argument("state")
    p.add_argument("--groups", type=int, default=200)
    p.add_argument("--group-n", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--margin", type=float, default=0.02)
    p.add_argument("--entropy", choices=["shannon", "min"], default="shannon")
    p.set_defaults(func=_cmd_pipeline)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
