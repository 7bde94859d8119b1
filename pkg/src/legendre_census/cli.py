"""Command-line front end: censuses, interval searches, form tools, verification.

Exit codes: 0 success, 1 validation error, 2 verification-suite failure,
3 the requested result was cap-inconclusive only.  Identical invocations
(including --seed) produce byte-identical output; --workers never changes
the bytes, only the wall time.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from dataclasses import dataclass, field

from .arith import INT_LIMIT
from .errors import CapExceededError, ContractError
from .forms import almost_square_from_representation, least_discriminant, represent
from .leastnumbers import (
    DEFAULT_CAP,
    Status,
    classify,
    compute_g,
    compute_n_q,
    exceptional_census,
)
from .serialize import (
    bits_key,
    cap_marker,
    census_record_to_dict,
    census_to_csv,
    census_to_jsonl,
    representation_to_dict,
    scaling_table_to_csv,
    witness_map,
)
from .signspace import MOD8_CLASS, SquarefreeModulus
from .smooth import SmoothSetSpec, count_smooth, enumerate_smooth, smoothness_scaling_table
from .verify import SUITE_NAMES, run_suite
from .windows import interval_search, omega_stats, rough_count

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SUITE_FAILURE = 2
EXIT_INCONCLUSIVE = 3

WORKERS_ENV = "LEGENDRE_CENSUS_WORKERS"


class CliValidationError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """One validated invocation: the command plus every knob that affects output."""

    command: str
    params: dict = field(default_factory=dict)  # command-specific values
    cap: int = DEFAULT_CAP
    workers: int = 1
    fmt: str = "text"
    out: str | None = None
    mod8: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.cap < 1:
            raise CliValidationError(f"--cap must be >= 1, got {self.cap}")
        if self.workers < 1:
            raise CliValidationError(f"--workers must be >= 1, got {self.workers}")
        for name, value in self.params.items():
            if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= INT_LIMIT:
                raise CliValidationError(f"{name}={value} is outside the supported 64-bit range")

    @property
    def residue_class(self) -> tuple[int, int] | None:
        return MOD8_CLASS if self.mod8 else None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliValidationError(message)


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="legendre-census",
        description="Least numbers with prescribed Legendre symbols: censuses, spans, and quadratic forms.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **kwargs):
        p = sub.add_parser(name, help=help_text, formatter_class=argparse.ArgumentDefaultsHelpFormatter, **kwargs)
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")
        return p

    def add_cap(p):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="search budget; exceeding it is reported, not guessed")

    def add_mod8(p):
        p.add_argument("--no-mod8", action="store_true", help="drop the n = 1 mod 8 congruence on admissible integers")

    def add_fmt(p, choices=("text", "json")):
        p.add_argument("--format", dest="fmt", choices=choices, default=choices[0], help="output format")

    p = add("nq", "least bound realizing all sign patterns at q's primes")
    p.add_argument("q", type=int)
    add_cap(p), add_mod8(p), add_fmt(p)

    p = add("gq", "least bound whose sign vectors span GF(2)^k (optionally extra coprimality)")
    p.add_argument("q", type=int)
    p.add_argument("--extra", type=int, default=1, help="demand coprimality to this extra modulus as well")
    add_cap(p), add_mod8(p), add_fmt(p)

    p = add("classify", "good / exceptional / ineligible at threshold y")
    p.add_argument("q", type=int)
    p.add_argument("--y", type=int, required=True, help="eligibility threshold")
    add_cap(p), add_mod8(p), add_fmt(p)

    p = add("census", "classify every odd square-free q in [lo, hi] at y = floor((ln q)^a)")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--a", type=float, default=3.0, help="threshold exponent")
    p.add_argument("--workers", type=int, default=_default_workers(), help=f"worker processes (env {WORKERS_ENV})")
    add_cap(p), add_mod8(p), add_fmt(p, ("csv", "json"))

    p = add("interval-search", "odd q in [Q, Q+Q^eps] whose radical r has g_r <= floor((ln r)^a)")
    p.add_argument("q_start", type=int, metavar="Q")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--a", type=float, default=5.0, help="threshold exponent on the radical")
    add_cap(p), add_fmt(p, ("csv", "json"))

    p = add("smooth", "elements of the restricted smooth set S_q(x, y)")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.add_argument("--q", type=int, default=1, help="extra coprimality modulus")
    p.add_argument("--count-only", action="store_true", help="emit the count without materializing")
    add_fmt(p)

    p = add("scaling-table", "observed smooth-count exponents against the 1 - 1/a scale")
    p.add_argument("--x", required=True, help="comma-separated x values, e.g. 100,1000,10000")
    p.add_argument("--a", required=True, help="comma-separated exponents, e.g. 2,3")

    p = add("discriminant", "least d with q representable at discriminant -d, plus the recipe witness")
    p.add_argument("q", type=int)
    p.add_argument("--bound", type=int, default=1000, help="largest d tried by the direct scan")
    add_cap(p), add_fmt(p)

    p = add("represent", "a proper representation of q by the reduced form of discriminant -d")
    p.add_argument("q", type=int)
    p.add_argument("d", type=int)
    add_fmt(p)

    p = add("almost-square", "integers u, v, X, Y with u*q = X^2 + v*Y^2 from the reduced representation")
    p.add_argument("q", type=int)
    p.add_argument("d", type=int)
    add_fmt(p)

    p = add("omega-stats", "count of window integers with at least `threshold` prime factors")
    p.add_argument("q_start", type=int, metavar="Q")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--threshold", type=int, required=True)
    p.add_argument("--K", dest="big_k", type=int, default=1, help="exponent in the comparison quantity")
    add_fmt(p)

    p = add("rough-count", "window integers with no prime factor below z, against the Mertens product")
    p.add_argument("q_start", type=int, metavar="Q")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--a", type=float, default=3.0, help="exponent bounding the stated z range")
    add_fmt(p)

    p = add("verify", "run a verification suite; exit 2 on any counterexample")
    p.add_argument("suite", choices=SUITE_NAMES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=None, help="override the suite's default range")
    p.add_argument("--workers", type=int, default=_default_workers(), help=f"worker processes (env {WORKERS_ENV})")
    add_cap(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    shared = {"command", "cap", "workers", "fmt", "out", "no_mod8", "seed"}
    params = {k: v for k, v in vars(args).items() if k not in shared}
    return RunConfig(
        command=args.command,
        params=params,
        cap=getattr(args, "cap", DEFAULT_CAP),
        workers=getattr(args, "workers", 1),
        fmt=getattr(args, "fmt", "text"),
        out=getattr(args, "out", None),
        mod8=not getattr(args, "no_mod8", False),
        seed=getattr(args, "seed", 0),
    )


@contextlib.contextmanager
def _out_stream(cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as handle:
            yield handle
    else:
        yield sys.stdout


def _emit(cfg: RunConfig, text_lines: list[str], payload: dict) -> None:
    with _out_stream(cfg) as stream:
        if cfg.fmt == "json":
            stream.write(json.dumps(payload, indent=2) + "\n")
        else:
            stream.write("\n".join(text_lines) + "\n")


def _modulus(value: int) -> SquarefreeModulus:
    return SquarefreeModulus.from_int(value)


def _cmd_nq(cfg: RunConfig) -> int:
    modulus = _modulus(cfg.params["q"])
    result = compute_n_q(modulus, cfg.cap, residue_class=cfg.residue_class)
    witnesses = witness_map(result.witnesses, modulus.k)
    lines = [f"n_q({modulus.value}) = {cap_marker(result.value, cfg.cap)}"]
    lines.extend(f"  pattern {pattern} first realized by {n}" for pattern, n in witnesses.items())
    payload = {
        "command": "nq",
        "q": modulus.value,
        "omega": modulus.k,
        "cap": cfg.cap,
        "value": result.value,
        "witnesses": witnesses,
    }
    _emit(cfg, lines, payload)
    return EXIT_INCONCLUSIVE if result.value is None else EXIT_OK


def _cmd_gq(cfg: RunConfig) -> int:
    modulus = _modulus(cfg.params["q"])
    extra = cfg.params["extra"]
    result = compute_g(modulus, extra, cfg.cap, cfg.residue_class)
    label = f"g({modulus.value})" if extra == 1 else f"g({modulus.value}, extra={extra})"
    lines = [f"{label} = {cap_marker(result.value, cfg.cap)}"]
    lines.append("  basis formed by: " + (" ".join(str(n) for n in result.witnesses) or "(empty)"))
    payload = {
        "command": "gq",
        "q": modulus.value,
        "extra": extra,
        "omega": modulus.k,
        "cap": cfg.cap,
        "value": result.value,
        "witnesses": list(result.witnesses),
    }
    _emit(cfg, lines, payload)
    return EXIT_INCONCLUSIVE if result.value is None else EXIT_OK


def _cmd_classify(cfg: RunConfig) -> int:
    modulus = _modulus(cfg.params["q"])
    y = cfg.params["y"]
    st = classify(modulus, y, cfg.cap, cfg.residue_class)
    lines = [f"q = {modulus.value} at y = {y}: {st.status.value}"]
    lines.append(f"  g_q = {cap_marker(st.g_q, cfg.cap)}")
    for d, g in st.divisor_g.items():
        lines.append(f"  g({d}, extra={modulus.value}) = {cap_marker(g, cfg.cap)}")
    if st.worst_divisor is not None:
        lines.append(f"  worst divisor {st.worst_divisor} with g = {cap_marker(st.worst_divisor_g, cfg.cap)}")
    payload = {
        "command": "classify",
        "q": modulus.value,
        "y": y,
        "cap": cfg.cap,
        "status": st.status.value,
        "g_q": st.g_q,
        "g_witnesses": list(st.g_witnesses),
        "divisor_g": {str(d): g for d, g in st.divisor_g.items()},
        "worst_divisor": st.worst_divisor,
        "worst_divisor_g": st.worst_divisor_g,
    }
    _emit(cfg, lines, payload)
    return EXIT_INCONCLUSIVE if st.status is Status.INCONCLUSIVE else EXIT_OK


def _cmd_census(cfg: RunConfig) -> int:
    result = exceptional_census(
        cfg.params["lo"],
        cfg.params["hi"],
        cfg.params["a"],
        cap=cfg.cap,
        workers=cfg.workers,
        residue_class=cfg.residue_class,
    )
    with _out_stream(cfg) as stream:
        if cfg.fmt == "json":
            census_to_jsonl(result, stream)
        else:
            census_to_csv(result, stream)
    if result.records and all(r.status.status is Status.INCONCLUSIVE for r in result.records):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_interval_search(cfg: RunConfig) -> int:
    result = interval_search(
        cfg.params["q_start"], cfg.params["epsilon"], cfg.params["a"], cfg.cap
    )
    if cfg.fmt == "json":
        payload = {
            "command": "interval-search",
            "lo": result.lo,
            "hi": result.hi,
            "a": result.a,
            "cap": result.cap,
            "hits": [
                {"q": h.q, "radical": h.radical, "g_radical": h.g_radical, "threshold": h.threshold}
                for h in result.hits
            ],
            "inconclusive": list(result.inconclusive),
            "skipped_even": result.skipped_even,
        }
        _emit(cfg, [], payload)
    else:
        with _out_stream(cfg) as stream:
            stream.write("# schema: legendre-census interval-search v1\n")
            stream.write("q,radical,g_radical,threshold\n")
            for h in result.hits:
                stream.write(f"{h.q},{h.radical},{h.g_radical},{h.threshold}\n")
            stream.write(
                f"# window [{result.lo}, {result.hi}], hits={len(result.hits)}"
                f" inconclusive={len(result.inconclusive)} skipped_even={result.skipped_even}\n"
            )
            if result.inconclusive:
                stream.write("# inconclusive: " + " ".join(map(str, result.inconclusive)) + "\n")
    if not result.hits and result.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_smooth(cfg: RunConfig) -> int:
    spec = SmoothSetSpec(x=cfg.params["x"], y=cfg.params["y"], q=cfg.params["q"])
    if cfg.params["count_only"]:
        count = count_smooth(spec)
        _emit(cfg, [str(count)], {"command": "smooth", "x": spec.x, "y": spec.y, "q": spec.q, "count": count})
        return EXIT_OK
    elements = enumerate_smooth(spec)
    payload = {
        "command": "smooth",
        "x": spec.x,
        "y": spec.y,
        "q": spec.q,
        "count": len(elements),
        "elements": elements,
    }
    _emit(cfg, [str(n) for n in elements], payload)
    return EXIT_OK


def _cmd_scaling_table(cfg: RunConfig) -> int:
    try:
        x_values = [int(v) for v in str(cfg.params["x"]).split(",") if v]
        a_values = [float(v) for v in str(cfg.params["a"]).split(",") if v]
    except ValueError as exc:
        raise CliValidationError(f"bad --x/--a list: {exc}") from exc
    rows = smoothness_scaling_table(x_values, a_values)
    with _out_stream(cfg) as stream:
        scaling_table_to_csv(rows, stream)
    return EXIT_OK


def _cmd_discriminant(cfg: RunConfig) -> int:
    result = least_discriminant(cfg.params["q"], cfg.params["bound"], cfg.cap)
    lines = [f"q = {result.q}: least d = {result.d if result.d is not None else f'>{result.bound}'}"]
    if result.root is not None:
        lines.append(f"  witness root b = {result.root} with b^2 = -d (mod {4 * result.q})")
    if result.constructive:
        c = result.constructive
        lines.append(f"  constructive d = {c.d} = d0 * p0 = {c.d0} * {c.p0}")
    elif result.constructive_failure:
        lines.append(f"  constructive recipe inapplicable: {result.constructive_failure}")
    payload = {
        "command": "discriminant",
        "q": result.q,
        "bound": result.bound,
        "d": result.d,
        "root": result.root,
        "constructive": (
            {
                "d": result.constructive.d,
                "d0": result.constructive.d0,
                "p0": result.constructive.p0,
                "prescribed": {str(p): s for p, s in result.constructive.prescribed.items()},
            }
            if result.constructive
            else None
        ),
        "constructive_failure": result.constructive_failure,
    }
    _emit(cfg, lines, payload)
    return EXIT_INCONCLUSIVE if result.d is None else EXIT_OK


def _represent_payload(q: int, d: int) -> tuple[list[str], dict]:
    rep = represent(q, d)
    almost = almost_square_from_representation(rep, d)
    form = rep.form
    lines = [
        f"{q} = ({form.a})x^2 + ({form.b})xy + ({form.c})y^2 at (x, y) = ({rep.x}, {rep.y})",
        f"  discriminant {form.discriminant}",
        f"  almost-square: {almost.u} * {q} = {almost.X}^2 + {almost.v} * {almost.Y}^2",
    ]
    return lines, representation_to_dict(rep, d, almost)


def _cmd_represent(cfg: RunConfig) -> int:
    lines, payload = _represent_payload(cfg.params["q"], cfg.params["d"])
    _emit(cfg, lines, payload)
    return EXIT_OK


def _cmd_almost_square(cfg: RunConfig) -> int:
    lines, payload = _represent_payload(cfg.params["q"], cfg.params["d"])
    _emit(cfg, lines, payload)
    return EXIT_OK


def _cmd_omega_stats(cfg: RunConfig) -> int:
    result = omega_stats(
        cfg.params["q_start"], cfg.params["epsilon"], cfg.params["threshold"], cfg.params["big_k"]
    )
    lines = [
        f"window [{result.lo}, {result.hi}]: {result.count} of {result.window_size} integers"
        f" have at least {result.threshold} prime factors (fraction {result.fraction:.6f})",
        f"  comparison Q^eps * (ln ln Q)^-{result.big_k} = {result.comparison:.3f}",
        f"  factor-count cutoff (ln ln Q)^{result.big_k + 1} = {result.lemma_omega_cutoff:.3f}",
    ]
    payload = {
        "command": "omega-stats",
        "lo": result.lo,
        "hi": result.hi,
        "threshold": result.threshold,
        "count": result.count,
        "window_size": result.window_size,
        "fraction": result.fraction,
        "K": result.big_k,
        "comparison": result.comparison,
        "omega_cutoff": result.lemma_omega_cutoff,
    }
    _emit(cfg, lines, payload)
    return EXIT_OK


def _cmd_rough_count(cfg: RunConfig) -> int:
    result = rough_count(cfg.params["q_start"], cfg.params["epsilon"], cfg.params["z"], cfg.params["a"])
    if result.z_outside_range:
        print(f"warning: z = {result.z} is above (ln Q)^a; the asymptotic is not stated there", file=sys.stderr)
    lines = [
        f"window [{result.lo}, {result.hi}]: {result.count} integers with no prime factor < {result.z}",
        f"  V({result.z}) = {result.mertens} = {float(result.mertens):.6f}",
        f"  expected window * V(z) = {result.expected:.3f}, ratio = {result.ratio:.4f}",
    ]
    payload = {
        "command": "rough-count",
        "lo": result.lo,
        "hi": result.hi,
        "z": result.z,
        "count": result.count,
        "window_size": result.window_size,
        "mertens_exact": f"{result.mertens.numerator}/{result.mertens.denominator}",
        "mertens": float(result.mertens),
        "expected": result.expected,
        "ratio": result.ratio,
        "z_outside_range": result.z_outside_range,
    }
    _emit(cfg, lines, payload)
    return EXIT_OK


# what the generic --limit flag means for each suite
_SUITE_LIMIT_KNOB = {
    "generation": "limit",
    "subspace": "limit",
    "descent": "limit",
    "forms": "n_forms",
    "oracle-equivalence": "q_max",
}


def _cmd_verify(cfg: RunConfig) -> int:
    suite = cfg.params["suite"]
    overrides = {}
    if cfg.params.get("limit") is not None:
        overrides[_SUITE_LIMIT_KNOB[suite]] = cfg.params["limit"]
    if suite in ("generation", "descent", "forms"):
        overrides["cap"] = cfg.cap
    if suite == "subspace":
        overrides["cap"] = cfg.cap
        overrides["workers"] = cfg.workers
    report = run_suite(suite, seed=cfg.seed, **overrides)
    with _out_stream(cfg) as stream:
        stream.write("\n".join(report.render()) + "\n")
    return EXIT_OK if report.passed else EXIT_SUITE_FAILURE


_HANDLERS = {
    "nq": _cmd_nq,
    "gq": _cmd_gq,
    "classify": _cmd_classify,
    "census": _cmd_census,
    "interval-search": _cmd_interval_search,
    "smooth": _cmd_smooth,
    "scaling-table": _cmd_scaling_table,
    "discriminant": _cmd_discriminant,
    "represent": _cmd_represent,
    "almost-square": _cmd_almost_square,
    "omega-stats": _cmd_omega_stats,
    "rough-count": _cmd_rough_count,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        return _HANDLERS[cfg.command](cfg)
    except CliValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapExceededError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
