"""Command-line front end: every experiment as a reproducible subcommand.

All randomness is driven by the --seed flag, every number is emitted with
17 significant digits, and nothing time- or environment-dependent reaches
the output, so identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fekete, matrix, shift, wiener
from .algebra import neumann_inverse, power_norms, resolvent
from .errors import BudgetExceeded, NotConvergent, Singular, Unsupported
from .selftest import run_selftest

SEQUENCE_GENERATORS = "poly:c | geom:r | subadd:c,d"


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a run; equal configs give identical bytes."""

    subcommand: str
    gen: str | None = None
    input_path: str | None = None
    element: str | None = None
    weights: str | None = None
    weights_path: str | None = None
    n: int = 32
    max_power: int = 64
    prefix_len: int = 0
    lam: complex = 0j
    tol: float = 1e-10
    max_terms: int = 100_000
    norm_kind: str = "inf"
    grid: tuple[float, float, float, float, float] | None = None
    out_format: str = "csv"
    seed: int = 0
    out_path: str | None = None


def _parse_sequence_gen(spec: str, n: int) -> fekete.PrefixSequence:
    kind, _, args = spec.partition(":")
    try:
        if kind == "poly":
            return fekete.poly_sequence(float(args), n)
        if kind == "geom":
            return fekete.geometric_sequence(float(args), n)
        if kind == "subadd":
            c_text, d_text = args.split(",")
            return fekete.subadd_sequence(float(c_text), float(d_text), n)
    except ValueError as exc:
        raise ValueError("bad generator arguments %r: %s" % (spec, exc)) from exc
    raise ValueError("unknown sequence generator %r (use %s)" % (spec, SEQUENCE_GENERATORS))


def _parse_weights(spec: str, m: int) -> shift.WeightedShift:
    kind, _, args = spec.partition(":")
    if kind == "harmonic":
        a_text, b_text = args.split(",")
        return shift.harmonic_weights(float(a_text), float(b_text), m)
    raise ValueError("unknown weight generator %r (use harmonic:a,b)" % spec)


def _read_matrix(path: str):
    text = Path(path).read_text()
    if text.lstrip().startswith("["):
        return matrix.read_matrix_json(text)
    return matrix.read_matrix_csv(text)


def _load_sequence(config: RunConfig) -> fekete.PrefixSequence:
    if (config.gen is None) == (config.input_path is None):
        raise ValueError("provide exactly one of --gen or --input")
    if config.gen is not None:
        return _parse_sequence_gen(config.gen, config.n)
    return fekete.read_sequence_csv(Path(config.input_path).read_text())


def _emit(config: RunConfig, text: str) -> None:
    if config.out_path:
        Path(config.out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _report_text(config: RunConfig, report) -> str:
    return report.to_json() if config.out_format == "json" else report.to_csv()


def _matrix_text(config: RunConfig, m) -> str:
    if config.out_format == "json":
        return matrix.matrix_to_json(m)
    return matrix.matrix_to_csv(m)


def run(config: RunConfig) -> int:
    """Execute one subcommand; returns the process exit code."""
    if config.subcommand == "fekete":
        seq = _load_sequence(config)
        _emit(config, _report_text(config, fekete.root_report(seq)))
    elif config.subcommand == "convolve":
        if config.gen is None or config.element is None:
            raise ValueError("convolve needs --a and --b generators")
        a = _parse_sequence_gen(config.gen, config.n)
        b = _parse_sequence_gen(config.element, config.n)
        c = fekete.binomial_convolve(a, b, config.n)
        if config.out_format == "json":
            rows = ", ".join(
                '{"k": %d, "value": %s}' % (k, fekete.fmt17(v))
                for k, v in enumerate(c.values, start=1)
            )
            _emit(config, "[" + rows + "]\n")
        else:
            _emit(config, fekete.sequence_to_csv(c))
    elif config.subcommand == "power":
        a = _read_matrix(config.input_path)
        alg = matrix.MatrixAlgebra(a.shape[0], config.norm_kind)
        _emit(config, _report_text(config, power_norms(alg, a, config.n)))
    elif config.subcommand == "neumann":
        a = _read_matrix(config.input_path)
        alg = matrix.MatrixAlgebra(a.shape[0], config.norm_kind)
        inv = neumann_inverse(alg, a, tol=config.tol, max_terms=config.max_terms)
        _emit(config, _matrix_text(config, inv))
    elif config.subcommand == "resolvent":
        a = _read_matrix(config.input_path)
        alg = matrix.MatrixAlgebra(a.shape[0], config.norm_kind)
        res = resolvent(alg, a, config.lam, tol=config.tol)
        _emit(config, _matrix_text(config, res))
    elif config.subcommand == "spectrum":
        a = _read_matrix(config.input_path)
        spec = matrix.GridSpec(*config.grid)
        result = matrix.spectrum_scan(a, spec, norm_kind=config.norm_kind)
        _emit(config, result.to_csv())
    elif config.subcommand == "wiener":
        f = wiener.parse_inline(config.element)
        _emit(config, _report_text(config, wiener.wiener_spectral_radius(f, config.n)))
    elif config.subcommand == "shift":
        if config.weights_path:
            t = shift.read_weights_csv(Path(config.weights_path).read_text())
        elif config.weights:
            t = _parse_weights(config.weights, config.prefix_len or config.max_power)
        else:
            raise ValueError("shift needs --weights or --weights-file")
        _emit(config, _report_text(config, shift.shift_limit_experiment(t, config.max_power)))
    elif config.subcommand == "selftest":
        import io

        buffer = io.StringIO()
        ok = run_selftest(config.seed, buffer)
        _emit(config, buffer.getvalue())
        return 0 if ok else 1
    else:
        raise ValueError("unknown subcommand %r" % config.subcommand)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specrad",
        description="Convergence tables, certified spectral-radius bounds, and "
        "series inverses for matrices, Wiener-algebra elements, and weighted shifts.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")
    parser.add_argument("--out", default=None, help="write output to FILE instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("fekete", help="root/running-min table for a sequence prefix")
    p.add_argument("--gen", help="inline generator: %s" % SEQUENCE_GENERATORS)
    p.add_argument("--input", help="CSV file with header k,value")
    p.add_argument("--n", type=int, default=64, help="prefix length for --gen")

    p = sub.add_parser("convolve", help="binomial convolution of two generated prefixes")
    p.add_argument("--a", required=True, help="generator for the first sequence")
    p.add_argument("--b", required=True, help="generator for the second sequence")
    p.add_argument("--n", type=int, default=30)

    p = sub.add_parser("power", help="power-norm convergence table for a matrix")
    p.add_argument("--matrix", required=True, help="matrix file (CSV re+imj or JSON)")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--norm", choices=("inf", "one"), default="inf")

    p = sub.add_parser("neumann", help="geometric-series inverse of (I - X)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-terms", type=int, default=100_000)
    p.add_argument("--norm", choices=("inf", "one"), default="inf")

    p = sub.add_parser("resolvent", help="(lambda I - X)^(-1)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--lam", required=True, help="complex scalar, e.g. 2 or 1+0.5j")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--norm", choices=("inf", "one"), default="inf")

    p = sub.add_parser("spectrum", help="grid scan for noninvertible lambda I - X")
    p.add_argument("--matrix", required=True)
    p.add_argument("--re-min", type=float, required=True)
    p.add_argument("--re-max", type=float, required=True)
    p.add_argument("--im-min", type=float, required=True)
    p.add_argument("--im-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--norm", choices=("inf", "one"), default="inf")

    p = sub.add_parser("wiener", help="l1 power-norm roots of a Laurent element")
    p.add_argument("--f", required=True, help="deg:coeff pairs, e.g. '1:0.5,-1:0.5'")
    p.add_argument("--n", type=int, default=64)

    p = sub.add_parser("shift", help="weighted-shift power-norm root table")
    p.add_argument("--weights", help="weight generator harmonic:a,b")
    p.add_argument("--weights-file", help="CSV file with header j,alpha")
    p.add_argument("--m", type=int, default=0, help="weight prefix length (default: L)")
    p.add_argument("--l", type=int, default=64, help="maximum power")

    sub.add_parser("selftest", help="run the seeded invariant battery")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    def get(name, default=None):
        value = getattr(args, name, None)
        return default if value is None else value

    lam_text = get("lam")
    return RunConfig(
        subcommand=args.subcommand,
        gen=get("gen", get("a")),
        input_path=get("input", get("matrix")),
        element=get("f", get("b")),
        weights=get("weights"),
        weights_path=get("weights_file"),
        n=get("n", 32),
        max_power=get("l", 64),
        prefix_len=get("m", 0),
        lam=complex(lam_text.replace(" ", "")) if lam_text else 0j,
        tol=get("tol", 1e-10),
        max_terms=get("max_terms", 100_000),
        norm_kind=get("norm", "inf"),
        grid=(
            (args.re_min, args.re_max, args.im_min, args.im_max, args.step)
            if get("step") is not None
            else None
        ),
        out_format=args.format,
        seed=args.seed,
        out_path=args.out,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        return run(config)
    except (ValueError, Unsupported, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (NotConvergent, Singular, BudgetExceeded) as exc:
        print("%s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
