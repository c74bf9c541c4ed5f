"""``lagc`` command line.

Exit codes: 0 success, 1 verification failed, 2 input error,
3 algorithmic failure.
"""

import argparse
import json
import os
import sys

from .chart import chart_decode, chart_encode, make_chart, standard_chart
from .engine import ComplementConfig, family_complement, randomized_complement
from .errors import ContractError, LagcError, RefinementError, SamplingError
from .instances import MODES, generate_family, load_instance, save_instance, standard_instance
from .opmodel import unbounded_stress
from .serialization import certificate_to_json, dumps, lagrangian_to_json, operator_from_json, operator_to_json
from .verify import verify_certificate

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ALGO = 0, 1, 2, 3


class InputError(Exception):
    pass


def _default_seed():
    value = os.environ.get("LAGC_SEED")
    if value is None:
        return 0
    try:
        return int(value)
    except ValueError:
        raise InputError(f"LAGC_SEED must be an integer, got {value!r}") from None


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_instance(path):
    try:
        return load_instance(path)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read instance {path}: {exc}") from exc


def cmd_gen(args):
    seed = _default_seed() if args.seed is None else args.seed
    family = generate_family(args.dim, args.count, args.mode, seed)
    inst = standard_instance(family, {"seed": seed, "generator": args.mode})
    if args.out in (None, "-"):
        sys.stdout.write(dumps(inst.to_json()))
    else:
        save_instance(inst, args.out)
    return EXIT_OK


def _config(args):
    seed = _default_seed() if args.seed is None else args.seed
    margin = max(args.margin, args.tol)
    return ComplementConfig(tau=args.tol, margin=margin, epsilon=args.eps, seed=seed,
                            max_tries=args.max_tries)


def cmd_complement(args):
    inst = _load_instance(args.instance)
    config = _config(args)
    if args.algo == "random":
        cert = randomized_complement(inst.family, config.seed, config.max_tries, config)
    else:
        cert = family_complement(inst.family, config)
    _write(dumps(certificate_to_json(cert)), args.out)
    if not cert.ok:
        print(f"lagc: certificate below tolerance (min sigma {cert.min_sigma:.3e})", file=sys.stderr)
        return EXIT_ALGO
    return EXIT_OK


def cmd_verify(args):
    cert = _load_json(args.certificate)
    inst = _load_instance(args.instance)
    verdict = verify_certificate(cert, inst)
    if verdict.ok:
        print(f"PASS {len(verdict.sigmas)} members, min sigma_min {min(verdict.sigmas)!r}")
        return EXIT_OK
    print("FAIL")
    for reason in verdict.reasons:
        print(f"  {reason}")
    return EXIT_FAIL


def cmd_stress(args):
    rows = unbounded_stress(args.m, args.eps)
    _write(dumps(rows), args.out)
    return EXIT_OK


def _chart_for(inst, l0, l1):
    if l0 is None and l1 is None:
        return standard_chart(inst.std_space)
    if l0 is None or l1 is None:
        raise InputError("--l0 and --l1 must be given together")
    return make_chart(_member(inst, l0), _member(inst, l1))


def _member(inst, i):
    if not 0 <= i < len(inst.family):
        raise InputError(f"member index {i} out of range (instance has {len(inst.family)})")
    return inst.family[i]


def cmd_chart(args):
    inst = _load_instance(args.instance)
    chart = _chart_for(inst, args.l0, args.l1)
    if args.action == "encode":
        if args.member is None:
            raise InputError("encode needs --member")
        _write(dumps(operator_to_json(chart_encode(chart, _member(inst, args.member)))), args.out)
    else:
        if args.operator is None:
            raise InputError("decode needs --operator")
        op = operator_from_json(_load_json(args.operator))
        _write(dumps(lagrangian_to_json(chart_decode(chart, op))), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="lagc", description="Common complementary Lagrangians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--dim", type=int, required=True, help="half-dimension n of R^{2n}")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="random")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("complement", help="certify a common complement for an instance")
    p.add_argument("instance")
    p.add_argument("--eps", type=float, default=None, help="spectral-shift size (default max(1, ||A||/2))")
    p.add_argument("--tol", type=float, default=1e-8, help="certificate threshold tau")
    p.add_argument("--margin", type=float, default=1e-6, help="working margin of the refinement loop")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--algo", choices=("refine", "random"), default="refine")
    p.add_argument("--max-tries", type=int, default=1000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("verify", help="recompute a certificate from files")
    p.add_argument("certificate")
    p.add_argument("instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("opmodel-stress", help="multiplication-operator stress report")
    p.add_argument("--m", type=int, nargs="+", default=[8, 16, 32, 64, 128, 256, 512])
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stress)

    p = sub.add_parser("chart", help="encode/decode in a graph chart (debugging)")
    p.add_argument("action", choices=("encode", "decode"))
    p.add_argument("instance")
    p.add_argument("--l0", type=int, default=None, help="member index of the horizontal")
    p.add_argument("--l1", type=int, default=None, help="member index of the vertical")
    p.add_argument("--member", type=int, default=None)
    p.add_argument("--operator", default=None, help="SymmetricOperator JSON file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_chart)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (RefinementError, SamplingError) as exc:
        print(f"lagc: {exc}", file=sys.stderr)
        return EXIT_ALGO
    except (InputError, ContractError, LagcError, OSError) as exc:
        print(f"lagc: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
