"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
failure, 4 vacuous guarantee.  Reports are wrapped in a versioned JSON
envelope; histogram CSV uses ``bin_low,bin_high,count`` rows.  Values are
in nats unless stated otherwise.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import analytics, experiments
from .errors import (
    InvalidArgumentError,
    InvalidDimensionError,
    InvalidEpsilonError,
    UnsupportedDimensionError,
    VacuousGuaranteeError,
)

SCHEMA_VERSION = "1"


def _envelope(command: str, payload: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "timestamp_utc": datetime.now(timezone.utc).isoformat(),
        "payload": payload,
    }


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        print(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _resolve_threads(flag: int | None) -> int:
    if flag is not None:
        value = flag
    else:
        raw = os.environ.get("COHLAB_THREADS", "1")
        try:
            value = int(raw)
        except ValueError as exc:
            raise InvalidArgumentError(f"COHLAB_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InvalidArgumentError(f"thread count must be >= 1, got {value}")
    return value


def _parse_eps_list(raw: str | None) -> tuple[float, ...]:
    if not raw:
        return ()
    try:
        values = tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise InvalidArgumentError(f"could not parse epsilon list {raw!r}") from exc
    return tuple(sorted(values))


def _text_table(rows: list[tuple[str, object]]) -> str:
    width = max(len(name) for name, _ in rows)
    lines = []
    for name, value in rows:
        if isinstance(value, float):
            lines.append(f"{name:<{width}}  {value:.10g}")
        else:
            lines.append(f"{name:<{width}}  {value}")
    return "\n".join(lines)


def cmd_expect(args: argparse.Namespace) -> int:
    d = args.dim
    if d < 2:
        raise InvalidDimensionError(f"expect needs dim >= 2, got {d}")
    log_d = math.log(d)
    ecr = analytics.expected_cr(d)
    unit = "bits" if args.bits else "nats"
    scale = math.log(2.0) if args.bits else 1.0
    payload = {
        "dim": d,
        "unit": unit,
        "log_dim": log_d / scale,
        "expected_cr": ecr / scale,
        "expected_cr_scaled": ecr / log_d,
        "expected_classical_purity": analytics.expected_classical_purity(d),
        "expected_trace_distance": analytics.expected_trace_distance(d),
        "trace_distance_limit": 2.0 / math.e,
        "typical_l1_upper": analytics.typical_l1_upper(d),
        "l1_trivial_bound": float(d - 1),
        "fannes_asymptote": analytics.fannes_asymptote(),
    }
    if args.format == "json":
        _emit(_dump_json(_envelope("expect", payload)), args.out)
    else:
        _emit(_text_table(sorted(payload.items())), args.out)
    return 0


def cmd_concentrate(args: argparse.Namespace) -> int:
    config = experiments.ExperimentConfig(
        dim=args.dim,
        trials=args.trials,
        master_seed=args.seed,
        epsilons=_parse_eps_list(args.eps),
        histogram_bins=args.bins,
        measure_kind=args.measure,
    )
    report = experiments.run_concentration(config, threads=_resolve_threads(args.threads))
    for eps, freq, eff in report.tail_bound_flags():
        print(
            f"warning: tail frequency {freq:.6g} exceeds Levy bound {eff:.6g} "
            f"at eps={eps:.6g}",
            file=sys.stderr,
        )
    if args.format == "csv":
        lines = ["bin_low,bin_high,count"]
        lines += [f"{lo!r},{hi!r},{count}" for lo, hi, count in report.histogram]
        _emit("\n".join(lines), args.out)
    else:
        _emit(_dump_json(_envelope("concentrate", report.to_dict())), args.out)
    return 0


def cmd_subspace(args: argparse.Namespace) -> int:
    if not 0.0 < args.eps_frac < 1.0:
        raise InvalidEpsilonError(f"--eps-frac must lie in (0, 1), got {args.eps_frac}")
    eps = args.eps_frac * math.log(args.dim)
    report = experiments.run_subspace_floor(
        args.dim,
        eps,
        args.states,
        args.seed,
        threads=_resolve_threads(args.threads),
    )
    payload = report.to_dict()
    payload["eps_frac"] = args.eps_frac
    if args.format == "json":
        _emit(_dump_json(_envelope("subspace", payload)), args.out)
    else:
        _emit(_text_table(sorted(payload.items())), args.out)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    d, eps = args.dim, args.eps
    entries = []

    def add(theorem: str, bound: analytics.BoundValue, eta: float) -> None:
        entries.append(
            {
                "theorem": theorem,
                "dim": d,
                "eps": eps,
                "eta": eta,
                "raw": bound.raw,
                "effective": bound.effective,
                "log_raw": bound.log_raw,
            }
        )

    wanted = args.theorem
    if wanted in (None, "1"):
        if wanted == "1" and d < 3:
            raise UnsupportedDimensionError("theorem 1 needs dim >= 3")
        if d >= 3:
            add("1", analytics.levy_bound_cr(d, eps), analytics.lipschitz_cr(d))
    if wanted in (None, "3"):
        add("3", analytics.levy_bound_purity(d, eps), 2.0)
    if wanted in (None, "4"):
        add("4", analytics.levy_bound_trdist(d, eps), 2.0)
    if wanted == "generic" or (wanted is None and args.eta is not None):
        if args.eta is None:
            raise InvalidArgumentError("--theorem generic requires --eta")
        params = analytics.LevyParams(
            sphere_dim_k=2 * d - 1, epsilon=eps, lipschitz_eta=args.eta
        )
        add("generic", analytics.levy_generic(params), args.eta)

    payload = {"bounds": entries}
    if args.format == "json":
        _emit(_dump_json(_envelope("bounds", payload)), args.out)
    else:
        lines = []
        for e in entries:
            lines.append(
                f"theorem {e['theorem']:>7}: raw {e['raw']:.6e}  "
                f"effective {e['effective']:.6e}  log_raw {e['log_raw']:.6f}"
            )
        _emit("\n".join(lines), args.out)
    return 0


_SUITES = {
    "integral": lambda seed: experiments.verify_integral(),
    "matrix": experiments.verify_matrix,
    "inequalities": experiments.verify_inequalities,
    "moments": experiments.verify_moments,
}


def cmd_verify(args: argparse.Namespace) -> int:
    results = _SUITES[args.suite](args.seed)
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"[{tag}] {res.name}: {res.detail}")
    failed = sum(1 for res in results if not res.passed)
    print(f"suite {args.suite}: {len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohlab",
        description="Coherence typicality of Haar-random pure states: "
        "closed forms, bounds, and reproducible Monte Carlo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expect = sub.add_parser("expect", help="analytic table of closed forms for one dimension")
    p_expect.add_argument("--dim", type=int, required=True)
    p_expect.add_argument("--format", choices=("json", "text"), default="json")
    p_expect.add_argument("--bits", action="store_true", help="display entropies in bits (display only)")
    p_expect.add_argument("--out", default=None, help="write output to a file instead of stdout")
    p_expect.set_defaults(func=cmd_expect)

    p_conc = sub.add_parser("concentrate", help="run a concentration campaign")
    p_conc.add_argument("--measure", choices=experiments.MEASURE_KINDS, required=True)
    p_conc.add_argument("--dim", type=int, required=True)
    p_conc.add_argument("--trials", type=int, required=True)
    p_conc.add_argument("--seed", type=int, default=0)
    p_conc.add_argument("--eps", default=None, help="comma-separated deviations for tail frequencies")
    p_conc.add_argument("--bins", type=int, default=50)
    p_conc.add_argument("--format", choices=("json", "csv"), default="json")
    p_conc.add_argument("--threads", type=int, default=None, help="worker threads (COHLAB_THREADS fallback); never affects results")
    p_conc.add_argument("--out", default=None)
    p_conc.set_defaults(func=cmd_concentrate)

    p_sub = sub.add_parser("subspace", help="sampled check of the coherent-subspace floor")
    p_sub.add_argument("--dim", type=int, required=True)
    p_sub.add_argument("--eps-frac", type=float, required=True, help="eps as a fraction of ln d, in (0, 1)")
    p_sub.add_argument("--states", type=int, required=True)
    p_sub.add_argument("--seed", type=int, default=0)
    p_sub.add_argument("--format", choices=("json", "text"), default="json")
    p_sub.add_argument("--threads", type=int, default=None)
    p_sub.add_argument("--out", default=None)
    p_sub.set_defaults(func=cmd_subspace)

    p_bounds = sub.add_parser("bounds", help="evaluate concentration bounds")
    p_bounds.add_argument("--dim", type=int, required=True)
    p_bounds.add_argument("--eps", type=float, required=True)
    p_bounds.add_argument("--eta", type=float, default=None, help="Lipschitz constant for the generic bound")
    p_bounds.add_argument("--theorem", choices=("1", "3", "4", "generic"), default=None)
    p_bounds.add_argument("--format", choices=("json", "text"), default="json")
    p_bounds.add_argument("--out", default=None)
    p_bounds.set_defaults(func=cmd_bounds)

    p_verify = sub.add_parser("verify", help="run a self-verification suite")
    p_verify.add_argument("--suite", choices=tuple(_SUITES), required=True)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VacuousGuaranteeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (
        InvalidDimensionError,
        UnsupportedDimensionError,
        InvalidEpsilonError,
        InvalidArgumentError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
