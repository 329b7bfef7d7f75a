"""Command-line front end.

Subcommands: amp, prob, table, weight, check, normalize. Output is
deterministic: decimals are fixed at six fractional digits (round-half-even)
and `check` draws its random transitions from a seeded generator. Exit codes:
0 success, 1 parse/validation failure (or an oracle deviation in `check`),
2 brute-force cap exceeded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from .circuit import (Circuit, CircuitParseError, classify_fourier_gates,
                      normalize_to_standard_form, parse_circuit,
                      serialize_circuit)
from .evaluator import amplitude, amplitude_table, balance_weight
from .oracle import (PATH_ENUM_CAP, CapExceeded, brute_force_path_sum,
                     dense_amplitude)
from .pathsum import (extract_phase_polynomial, label_circuit,
                      phase_polynomial_direct, render_labels,
                      render_phase_polynomial)
from .quadform import diagonalize

DEVIATION_TOLERANCE = 1e-9


class CliError(Exception):
    """Invalid invocation; reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse normally exits 2 on bad usage; route through CliError so that
    # validation failures uniformly exit 1 (2 is reserved for cap trips)
    def error(self, message):
        raise CliError(f"{self.prog}: {message}")


def _fmt(x: float) -> str:
    v = round(x, 6) + 0.0  # +0.0 folds -0.0 into 0.0
    return f"{v:.6f}"


def _fmt_complex(z: complex) -> str:
    re = round(z.real, 6) + 0.0
    im = round(z.imag, 6) + 0.0
    return f"{re:.6f}{im:+.6f}i"


def _vec(v) -> str:
    return "[" + " ".join(str(int(x)) for x in v) + "]"


def _matrix_lines(M) -> list[str]:
    return [_vec(row) for row in M]


def _load_circuit(path: str) -> Circuit:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read circuit file {path}: {exc}")
    return parse_circuit(text)


def _parse_tuple(text: str, n: int, p: int, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise CliError(f"{flag}: expected comma-separated integers, got {text!r}")
    if len(values) != n:
        raise CliError(f"{flag}: expected {n} components, got {len(values)}")
    for v in values:
        if not 0 <= v < p:
            raise CliError(f"{flag}: component {v} not a residue in [0, {p})")
    return values


def _explain(cn: Circuit, a, b) -> list[str]:
    p = int(cn.modulus)
    lc = label_circuit(cn, a, b)
    q = extract_phase_polynomial(lc)
    res = diagonalize(q.theta, p, want_l=True, eta=q.eta)
    name = lambda i: f"x{i + 1}"
    groups = {"X": [], "Y": [], "Z": []}
    for i, (lam, mu) in enumerate(zip(res.diagonal, res.mu)):
        key = "X" if lam else ("Z" if mu else "Y")
        groups[key].append(name(i))
    lines = [f"standard form: p = {p}, n = {cn.n}, gates = {len(cn.gates)}, "
             f"alpha = {lc.alpha}"]
    lines += render_labels(lc)
    lines.append(render_phase_polynomial(q))
    lines.append("Theta =")
    lines += _matrix_lines(q.theta)
    lines.append(f"eta = {_vec(q.eta)}")
    lines.append(f"zeta = {q.zeta}")
    lines.append("L =")
    lines += _matrix_lines(res.L)
    lines.append(f"diagonal = {_vec(res.diagonal)}")
    lines.append("partition: " + ", ".join(
        f"{key} = {{{', '.join(members)}}}" for key, members in groups.items()))
    return lines


def _report_json(rep) -> str:
    amp = rep.amplitude
    return json.dumps({
        "amplitude": {"k": amp.sqrtp_exponent, "q": amp.quarter_turns,
                      "c": amp.p_phase.residue},
        "probability": {"num": rep.probability.numerator,
                        "den": rep.probability.denominator},
        "r": rep.rank, "alpha": rep.alpha, "z_size": rep.z_size,
    })


def _transition_args(args):
    c = _load_circuit(args.circuit)
    cn = normalize_to_standard_form(c)
    p = int(cn.modulus)
    a = _parse_tuple(args.a, cn.n, p, "-a")
    b = _parse_tuple(args.b, cn.n, p, "-b")
    return cn, a, b


def cmd_amp(args) -> int:
    cn, a, b = _transition_args(args)
    if args.explain:
        print("\n".join(_explain(cn, a, b)))
    rep = amplitude(cn, a, b)
    if args.json:
        print(_report_json(rep))
    else:
        print(rep.amplitude.render())
        print(_fmt_complex(rep.amplitude.to_complex()))
    return 0


def cmd_prob(args) -> int:
    cn, a, b = _transition_args(args)
    if args.explain:
        print("\n".join(_explain(cn, a, b)))
    rep = amplitude(cn, a, b)
    if args.json:
        print(_report_json(rep))
    else:
        print(rep.probability)
        print(_fmt(float(rep.probability)))
    return 0


def cmd_table(args) -> int:
    c = _load_circuit(args.circuit)
    cn = normalize_to_standard_form(c)
    p = int(cn.modulus)
    a = _parse_tuple(args.a, cn.n, p, "-a")
    reports = amplitude_table(cn, a)
    outcomes = itertools.product(range(p), repeat=cn.n)
    for b, rep in zip(outcomes, reports):
        label = ",".join(map(str, b))
        print(f"{label}\t{rep.amplitude.render()}\t{rep.probability}")
    return 0


def cmd_weight(args) -> int:
    c = _load_circuit(args.circuit)
    rep = balance_weight(c)
    p = int(c.modulus)
    k = rep.alpha - c.n - rep.rank
    print(f"weight = {p}^({k}/2) = {_fmt(rep.weight)}")
    print(f"r = {rep.rank}")
    print(f"alpha = {rep.alpha}")
    return 0


def cmd_check(args) -> int:
    c = _load_circuit(args.circuit)
    cn = normalize_to_standard_form(c)
    p = int(cn.modulus)
    n = cn.n
    _, alpha = classify_fourier_gates(cn)
    skip_path = p ** alpha > PATH_ENUM_CAP
    rng = np.random.default_rng(args.seed)
    max_dense = 0.0
    max_path = 0.0
    for _ in range(args.trials):
        a = tuple(int(v) for v in rng.integers(0, p, size=n))
        b = tuple(int(v) for v in rng.integers(0, p, size=n))
        closed = amplitude(cn, a, b).amplitude.to_complex()
        max_dense = max(max_dense, abs(closed - dense_amplitude(cn, a, b)))
        if not skip_path:
            q = phase_polynomial_direct(cn, a, b)
            max_path = max(max_path, abs(closed - brute_force_path_sum(q, n)))
    print(f"p = {p}, n = {n}, alpha = {alpha}, trials = {args.trials}, "
          f"seed = {args.seed}")
    ok = max_dense < DEVIATION_TOLERANCE
    rel = "<" if max_dense < DEVIATION_TOLERANCE else ">="
    print(f"max |closed_form - dense| = {max_dense:.2e} {rel} 1e-9")
    if skip_path:
        print(f"path_sum oracle skipped (p^alpha = {p ** alpha} > {PATH_ENUM_CAP})")
    else:
        ok = ok and max_path < DEVIATION_TOLERANCE
        rel = "<" if max_path < DEVIATION_TOLERANCE else ">="
        print(f"max |closed_form - path_sum| = {max_path:.2e} {rel} 1e-9")
    return 0 if ok else 1


def cmd_normalize(args) -> int:
    c = _load_circuit(args.circuit)
    sys.stdout.write(serialize_circuit(normalize_to_standard_form(c)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quopitsim",
                     description="Exact quopit Clifford circuit evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str, wants_a=False, wants_b=False,
            transition_flags=False):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("-c", "--circuit", required=True, metavar="FILE",
                        help="circuit file")
        if wants_a:
            sp.add_argument("-a", required=True, metavar="TUPLE",
                            help="input tuple, e.g. 0,1,2 (register 0 first)")
        if wants_b:
            sp.add_argument("-b", required=True, metavar="TUPLE",
                            help="outcome tuple")
        if transition_flags:
            sp.add_argument("--explain", action="store_true",
                            help="dump labels, S(x), Theta/eta/zeta, L, "
                                 "diagonal, and the X/Y/Z partition")
            sp.add_argument("--json", action="store_true",
                            help="machine-readable one-line output")
        sp.set_defaults(func=func)
        return sp

    add("amp", cmd_amp, "transition amplitude <b|U|a>",
        wants_a=True, wants_b=True, transition_flags=True)
    add("prob", cmd_prob, "outcome probability |<b|U|a>|^2",
        wants_a=True, wants_b=True, transition_flags=True)
    add("table", cmd_table, "amplitudes for every outcome b", wants_a=True)
    add("weight", cmd_weight, "balancedness weight and rank")
    sp = add("check", cmd_check, "compare against brute-force oracles")
    sp.add_argument("--trials", type=int, default=20, metavar="T",
                    help="random transitions to test (default 20)")
    sp.add_argument("--seed", type=int, default=0, metavar="S",
                    help="PRNG seed (default 0)")
    add("normalize", cmd_normalize, "print the standard-form circuit")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return 1
    except CircuitParseError as exc:
        print(f"circuit error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
