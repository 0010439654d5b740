"""
``vrmat`` command line.

Every size flag is ``--order N``, the number of rows, so ``--order 4`` is the
matrix ``V_3``. Matrices travel between invocations as JSON files
(``--in``/``--out``); ``--out`` always writes JSON so the file can be fed
back in, whatever ``--format`` is used for standard output.

Exit codes: 0 success or check passed, 1 a requested check failed, 2 usage
error, 3 input or domain error.
"""

import argparse
import logging
import os
import sys

import salt.utils.color
import salt.utils.json
from salt.exceptions import CommandExecutionError
from salt.exceptions import SaltInvocationError

from saltext.vrmat import DEFAULTS
from saltext.vrmat import __version__
from saltext.vrmat.exceptions import VrmatInvocationError
from saltext.vrmat.utils import admissible as adm
from saltext.vrmat.utils import analysis
from saltext.vrmat.utils import lab
from saltext.vrmat.utils import ladder as ldr
from saltext.vrmat.utils import selftest as st
from saltext.vrmat.utils import vrm
from saltext.vrmat.utils.ltmatrix import FORMATS
from saltext.vrmat.utils.ltmatrix import first_column
from saltext.vrmat.utils.ltmatrix import lt_pow
from saltext.vrmat.utils.ltmatrix import lt_read
from saltext.vrmat.utils.ltmatrix import lt_render
from saltext.vrmat.utils.ltmatrix import lt_to_data
from saltext.vrmat.utils.ltmatrix import lt_write
from saltext.vrmat.utils.sequences import parse_int_list
from saltext.vrmat.utils.sequences import parse_seqspec

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

LOG_LEVELS = ("debug", "info", "warning", "error", "critical")


def _order(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid order '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"order must be at least 1, got {value}")
    return value


def _seqspec(text):
    # SeqSpecError is a usage error; argparse turns it into exit 2
    try:
        return parse_seqspec(text)
    except SaltInvocationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class Output:
    """
    Standard output in one of the supported formats, colored verdicts in
    pretty mode unless ``NO_COLOR`` is set.
    """

    def __init__(self, fmt, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        use_color = self.fmt == "pretty" and "NO_COLOR" not in os.environ
        self.colors = salt.utils.color.get_colors(use=use_color)

    def write(self, text):
        self.stream.write(text)
        if not text.endswith("\n"):
            self.stream.write("\n")

    def matrix(self, a):
        self.write(lt_render(a, self.fmt))

    def verdict(self, label, passed):
        color = self.colors["LIGHT_GREEN"] if passed else self.colors["LIGHT_RED"]
        word = "pass" if passed else "FAIL"
        self.write(f"{label}: {color}{word}{self.colors['ENDC']}")

    def data(self, data):
        """
        Reports: JSON in json mode, ``key: value`` lines otherwise.
        """
        if self.fmt == "json":
            self.write(salt.utils.json.dumps(data))
            return
        for key, value in data.items():
            if isinstance(value, (dict, list)):
                value = salt.utils.json.dumps(value)
            self.write(f"{key}: {value}")


def _general_or_strict(weights, column):
    if column is None:
        return vrm.VrmSpec.strict(weights)
    return vrm.VrmSpec.general(weights, parse_int_list(column))


def _input_matrix(args):
    if not args.infile:
        raise VrmatInvocationError("--in FILE is required")
    return lt_read(args.infile)


def _matrix_result(args, out, a):
    if args.outfile:
        lt_write(a, args.outfile, "json")
    out.matrix(a)
    return EXIT_OK


def cmd_build(args, out):
    spec = _general_or_strict(args.seq, args.column)
    return _matrix_result(args, out, vrm.build_vrm(spec, args.order - 1))


def cmd_toeplitz(args, out):
    n = args.order - 1
    if args.block is None:
        return _matrix_result(args, out, vrm.toeplitz(args.seq, n))
    return _matrix_result(args, out, vrm.toeplitz_block(args.seq, n, args.block))


def _emit_factors(out, factors):
    if out.fmt == "json":
        out.write(salt.utils.json.dumps({name: lt_to_data(f) for name, f in factors}))
        return
    for index, (name, f) in enumerate(factors):
        if index:
            out.write("")
        if out.fmt == "pretty":
            out.write(f"{name}:")
        out.matrix(f)


def cmd_factor(args, out):
    n = args.order - 1
    if args.chain:
        chain = vrm.decompose_chain(args.seq, n)
        _emit_factors(out, [(f"T({k})", f) for k, f in enumerate(chain)])
    else:
        left, right = vrm.decompose_step(args.seq, n, strict=not args.general)
        _emit_factors(out, [("toeplitz", left), ("lower", right)])
    return EXIT_OK


def cmd_inverse(args, out):
    return _matrix_result(args, out, vrm.vrm_inverse(args.seq, args.order - 1))


def cmd_power(args, out):
    if args.m < 1:
        raise VrmatInvocationError(f"--m must be positive, got {args.m}")
    if args.infile:
        base = lt_read(args.infile)
    elif args.seq is not None and args.order is not None:
        base = vrm.build_vrm(_general_or_strict(args.seq, args.column), args.order - 1)
    else:
        raise VrmatInvocationError("power needs --in FILE or --seq and --order")
    result = lt_pow(base, args.m)
    if args.outfile:
        lt_write(result, args.outfile, "json")
    report = analysis.infer_lambda(result, analysis.Mode.GENERAL)
    if out.fmt == "json":
        out.data(
            {
                "matrix": lt_to_data(result),
                "first_column": [str(v) for v in first_column(result)],
                "detection": report.to_dict(),
            }
        )
    elif out.fmt == "csv":
        out.matrix(result)
    else:
        out.matrix(result)
        out.write("first column: " + " ".join(str(v) for v in first_column(result)))
        out.write(f"detection: {report.verdict.value}")
        out.write("lambda: " + " ".join(str(v) for v in report.lambda_values))
    return EXIT_OK


def _detection_exit(out, report):
    if out.fmt == "json":
        out.data(report.to_dict())
    else:
        data = report.to_dict()
        out.write(f"mode: {data['mode']}")
        out.write("lambda: " + " ".join(data["lambda"]))
        if data["note"]:
            out.write(f"note: {data['note']}")
        if data["first_failure"]:
            cell = data["first_failure"]
            out.write(
                f"first failure: ({cell['n']},{cell['k']}) "
                f"expected {cell['expected']} found {cell['actual']}"
            )
        if report.verdict is analysis.Verdict.UNDERDETERMINED:
            out.write("verdict: underdetermined")
        else:
            out.verdict("verdict", report.passed)
    if report.verdict is analysis.Verdict.FAIL:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_detect(args, out):
    a = _input_matrix(args)
    if args.mode == "verify":
        if args.seq is None:
            raise VrmatInvocationError("--mode verify needs --seq")
        report = analysis.verify_lambda(a, args.seq, args.first_col_is_lambda)
    else:
        report = analysis.infer_lambda(a, analysis.Mode(args.mode))
    return _detection_exit(out, report)


def cmd_fit(args, out):
    report = analysis.fit_pascal_recurrence(_input_matrix(args))
    if out.fmt == "json":
        out.data(report.to_dict())
    else:
        data = report.to_dict()
        out.write(f"alpha: {data['alpha']}")
        out.write(f"beta: {data['beta']}")
        if data["first_failure"]:
            out.write(f"first failure: {salt.utils.json.dumps(data['first_failure'])}")
        if report.verdict is analysis.Verdict.UNDERDETERMINED:
            out.write("verdict: underdetermined")
        else:
            out.verdict("verdict", report.passed)
    return EXIT_CHECK_FAILED if report.verdict is analysis.Verdict.FAIL else EXIT_OK


def cmd_admissible(args, out):
    if args.action == "build":
        if args.seq is None or args.order is None:
            raise VrmatInvocationError("admissible build needs --seq and --order")
        return _matrix_result(args, out, adm.build_admissible(args.seq, args.order - 1))
    a = _input_matrix(args)
    if args.action == "check":
        report = adm.check_admissible(a)
        if out.fmt == "json":
            out.data(report.to_dict())
        else:
            if not report.passed:
                out.data(report.to_dict()["first_failure"])
            out.verdict("admissible", report.passed)
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED
    seq = adm.sequence_from_admissible(a)
    if out.fmt == "json":
        out.write(salt.utils.json.dumps([str(v) for v in seq]))
    else:
        out.write(",".join(str(v) for v in seq))
    return EXIT_OK


def _needs_order(args):
    if args.order is None:
        raise VrmatInvocationError(f"ladder {args.action} needs --order")
    return args.order - 1


def cmd_ladder(args, out):
    action = args.action
    if action == "identities":
        bound = args.max if args.max is not None else DEFAULTS["sweep_max"]
        reports = [ldr.identity13_check(bound), ldr.identity15_check(bound)]
        if out.fmt == "json":
            out.write(salt.utils.json.dumps([r.to_dict() for r in reports]))
        else:
            for report in reports:
                if report.first_failure:
                    out.write(f"{report.name} first failure: {report.first_failure}")
                out.verdict(f"{report.name} (n <= {bound})", report.passed)
        return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED
    n = _needs_order(args)
    if action == "polys":
        seq = ldr.transfer_polys(n)
        if out.fmt == "json":
            out.write(salt.utils.json.dumps(seq.to_json()))
        else:
            for k, poly in enumerate(seq.polys):
                out.write(f"T_{k} = {poly}")
        return EXIT_OK
    if action == "mnt":
        if args.variant:
            return _matrix_result(args, out, ldr.mnt_formula(n, args.variant))
        return _matrix_result(args, out, ldr.mnt(n))
    if action == "mnt2":
        return _matrix_result(args, out, ldr.mnt2(n))
    comparison = ldr.compare_mnt(n)
    if out.fmt == "json":
        out.data(comparison.to_dict())
    else:
        for variant in ldr.VARIANTS:
            first = comparison.first_mismatch(variant)
            if first:
                out.write(
                    f"C(n+k, {variant}) first mismatch at ({first['n']},{first['k']}): "
                    f"{first['formula']} vs {first['mnt']}"
                )
            out.verdict(f"C(n+k, {variant})", first is None)
    return EXIT_OK if comparison.matches else EXIT_CHECK_FAILED


def cmd_conjecture(args, out):
    if args.which == "1":
        n = (args.order or lab.DEFAULT_ORDERS["1"]) - 1
        report = lab.conjecture1_explore(args.alpha, args.seq or parse_seqspec("ones"), n)
    else:
        n = (args.order or lab.DEFAULT_ORDERS["2"]) - 1
        report = lab.conjecture2_explore(n)
    data = report.to_dict()
    if out.fmt == "json":
        out.data(data)
    else:
        for instance in data["instances"]:
            for mode, detection in instance["detection"].items():
                lam = " ".join(detection["lambda"])
                out.write(f"{instance['name']} [{mode}]: {detection['verdict']} lambda={lam}")
                if detection["first_failure"]:
                    cell = detection["first_failure"]
                    out.write(
                        f"  first failure ({cell['n']},{cell['k']}): "
                        f"expected {cell['expected']} found {cell['actual']}"
                    )
            for name, hit in instance["candidates"].items():
                out.write(f"  candidate {name}: {'fits' if hit else 'no fit'}")
        out.write(f"verdict: {data['verdict']}")
    return EXIT_CHECK_FAILED if report.verdict == "refuted" else EXIT_OK


def cmd_minpoly(args, out):
    if args.p is None:
        raise VrmatInvocationError("minpoly needs --p")
    if args.infile:
        a = lt_read(args.infile)
    elif args.order is not None:
        n = args.order - 1
        a = vrm.pascal(n) if args.seq is None else vrm.build_vrm(vrm.VrmSpec.strict(args.seq), n)
    else:
        raise VrmatInvocationError("minpoly needs --in FILE or --order")
    poly = lab.minpoly_mod_p(a, args.p)
    if out.fmt == "json":
        out.write(salt.utils.json.dumps(poly.to_json()))
    else:
        out.write(f"{poly}  (mod {args.p})")
    return EXIT_OK


def cmd_selftest(args, out):
    results = st.run_selftest(corrupt=args.corrupt, names=args.check)
    failed = [r for r in results if not r.passed]
    if out.fmt == "json":
        out.write(salt.utils.json.dumps([r.to_dict() for r in results]))
    else:
        for result in results:
            out.verdict(result.name, result.passed)
    for result in failed:
        sys.stderr.write(f"check failed: {result.name}: {result.detail}\n")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _add_common(parser, seq=False, order=False, infile=False, outfile=False):
    parser.add_argument("--format", choices=FORMATS, default="pretty", dest="fmt")
    if seq:
        parser.add_argument(
            "--seq",
            type=_seqspec,
            required=seq == "required",
            help="sequence spec: ones, nat, catalan, const:C, geom:R, binom:C, list:A,B,...",
        )
    if order:
        parser.add_argument(
            "--order",
            type=_order,
            required=order == "required",
            help="number of rows, i.e. n + 1",
        )
    if infile:
        parser.add_argument("--in", dest="infile", metavar="FILE", help="JSON matrix file")
    if outfile:
        parser.add_argument(
            "--out", dest="outfile", metavar="FILE", help="also write the result as JSON"
        )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vrmat",
        description="Exact-integer vertically-recurrent matrices.",
        epilog="Sizes are given as --order N (rows); library functions use n = N - 1.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-l", "--log-level", choices=LOG_LEVELS, default="warning")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("build", help="build V_n from a sequence")
    _add_common(p, seq="required", order="required", outfile=True)
    p.add_argument("--column", help="explicit column 0 for a general build, comma separated")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("toeplitz", help="Toeplitz matrix or Toeplitz block")
    _add_common(p, seq="required", order="required", outfile=True)
    p.add_argument("--block", type=int, help="block index k of I_k (+) T_(n-k)")
    p.set_defaults(func=cmd_toeplitz)

    p = sub.add_parser("factor", help="T_n * ([1] (+) V_(n-1)) or the full factor chain")
    _add_common(p, seq="required", order="required")
    p.add_argument("--chain", action="store_true", help="emit every Toeplitz block factor")
    p.add_argument("--general", action="store_true", help="accept any lambda_0")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("inverse", help="exact inverse through the factor chain")
    _add_common(p, seq="required", order="required", outfile=True)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("power", help="m-th power and its detected sequence")
    _add_common(p, seq=True, order=True, infile=True, outfile=True)
    p.add_argument("--column", help="explicit column 0 for a general build")
    p.add_argument("--m", type=int, default=2)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("detect", help="detect or verify the associated sequence")
    _add_common(p, seq=True, infile=True)
    p.add_argument("--mode", choices=("strict", "general", "verify"), default="strict")
    p.add_argument(
        "--first-col-is-lambda",
        action="store_true",
        help="in verify mode, column 0 must equal the sequence too",
    )
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("fit", help="fit the two-term Pascal recurrence")
    _add_common(p, infile=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("admissible", help="admissible matrices")
    p.add_argument("action", choices=("build", "check", "extract"))
    _add_common(p, seq=True, order=True, infile=True, outfile=True)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("ladder", help="ladder-network polynomials and triangles")
    p.add_argument("action", choices=("polys", "mnt", "mnt2", "compare", "identities"))
    _add_common(p, order=True, outfile=True)
    p.add_argument("--variant", choices=ldr.VARIANTS, help="closed-form candidate for mnt")
    p.add_argument("--max", type=int, help="sweep bound for identities")
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("conjecture", help="explore the conjectures")
    p.add_argument("which", choices=("1", "2"))
    _add_common(p, seq=True, order=True)
    p.add_argument("--alpha", type=int, default=1)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("minpoly", help="minimal polynomial over F_p")
    _add_common(p, seq=True, order=True, infile=True)
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_minpoly)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    _add_common(p)
    p.add_argument("--corrupt", metavar="NAME:i,j", help="bump one reference entry")
    p.add_argument(
        "--check", action="append", choices=sorted(st.CHECKS), help="run only this check"
    )
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None, stream=None):
    """
    Parse ``argv``, dispatch, and return the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper()),
        stream=sys.stderr,
        format="[%(levelname)-8s] %(message)s",
    )
    out = Output(args.fmt, stream)
    try:
        return args.func(args, out)
    except SaltInvocationError as exc:
        log.debug("Usage error", exc_info=True)
        sys.stderr.write(f"vrmat: error: {exc}\n")
        return EXIT_USAGE
    except CommandExecutionError as exc:
        log.debug("Domain error", exc_info=True)
        sys.stderr.write(f"vrmat: {exc}\n")
        return EXIT_DOMAIN


def main():
    sys.exit(run())
