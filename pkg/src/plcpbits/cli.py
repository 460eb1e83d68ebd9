"""Command-line pipeline: index, build, decode, verify, period.

``index`` turns a raw byte file into the BWT and sampled-ISA artifacts
(the reference in-memory pipeline), ``build`` produces the succinct PLCP
vector from those artifacts with a selectable strategy, ``decode`` and
``verify`` read it back, ``period`` reports the primitive root of a
circular artifact.

Exit codes: 0 success, 1 usage or input problem, 2 verification
failure, 3 malformed artifact.
"""

import argparse
import json
import sys

from . import formats
from .circular import build_circular_plcp, detect_period
from .emlayer import StreamFactory
from .errors import (AlphabetTooLarge, EmptyInput, FormatError,
                     HeaderMismatch, PlcpError, VerificationFailed)
from .hybrid import hybrid_pd
from .reorder import reconstruct_text, reorder_pd
from .rounds import run_rounds_external, run_rounds_internal
from .textcore import (Text, brute_period, build_bwt, build_suffix_array,
                       invert_sa, kasai_lcp, permute_lcp, sample_isa)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_FORMAT = 3


def _warn(msg):
    print("warning: %s" % msg, file=sys.stderr)


def ingest(raw, circular):
    """Map raw bytes to the dense rank alphabet.

    Non-circular inputs get a rank-0 terminator: the existing last byte
    if it is unique and strictly minimal, otherwise an appended one.
    Circular powers are reduced to their primitive root with a notice.
    Returns (Text, remap dict).
    """
    if not raw:
        raise EmptyInput("input file is empty")
    distinct = sorted(set(raw))
    if circular:
        p = brute_period(raw)
        if p < len(raw):
            _warn("circular input is a power (exponent %d); indexing the "
                  "primitive root" % (len(raw) // p))
            raw = raw[:p]
        ranks = {b: i for i, b in enumerate(distinct)}
        symbols = [ranks[b] for b in raw]
        remap = {"terminator_appended": False,
                 "alphabet": {str(i): b for b, i in ranks.items()}}
        return Text(symbols, len(distinct), circular=True), remap
    last = raw[-1]
    has_term = raw.count(last) == 1 and last == distinct[0]
    if has_term:
        ranks = {b: i for i, b in enumerate(distinct)}
        symbols = [ranks[b] for b in raw]
        remap = {"terminator_appended": False,
                 "alphabet": {str(i): b for b, i in ranks.items()}}
    else:
        if len(distinct) >= 256:
            raise AlphabetTooLarge(
                "no free byte value for an appended terminator"
            )
        ranks = {b: i + 1 for i, b in enumerate(distinct)}
        symbols = [ranks[b] for b in raw] + [0]
        remap = {"terminator_appended": True,
                 "alphabet": {str(i + 1): b for i, b in enumerate(distinct)}}
    return Text(symbols, len(ranks) + (0 if has_term else 1)), remap


def cmd_index(args):
    with open(args.text, "rb") as fh:
        raw = fh.read()
    text, remap = ingest(raw, args.circular)
    sa = build_suffix_array(text)
    isa = invert_sa(sa)
    bwt = build_bwt(text, sa)
    sisa = sample_isa(isa, args.rate)
    prefix = args.output or args.text
    formats.write_bwt(prefix + ".bwt", bwt)
    formats.write_sisa(prefix + ".sisa", sisa, text.sigma,
                       circular=args.circular)
    with open(prefix + ".remap.json", "w") as fh:
        json.dump(remap, fh, indent=1)
    print("indexed %d symbols (sigma %d) -> %s.bwt, %s.sisa"
          % (len(text), text.sigma, prefix, prefix))
    return EXIT_OK


def build_plcp(bwt, sisa, strategy, cutoff=None, kernel="direct",
               factory=None):
    """Strategy dispatch shared by the build command and the tests."""
    factory = factory or StreamFactory()
    if bwt.circular:
        return build_circular_plcp(bwt, sisa, factory=factory,
                                   strategy=strategy, cutoff=cutoff,
                                   kernel=kernel)
    if strategy == "internal":
        pd = run_rounds_internal(bwt).pd
    elif strategy == "external":
        pd = run_rounds_external(bwt, factory).pd
    elif strategy == "hybrid":
        if cutoff is None:
            cutoff = 3 * max(1, (bwt.n - 1).bit_length())
        pd, _ = hybrid_pd(bwt, sisa, cutoff, kernel=kernel, factory=factory)
    else:
        raise ValueError("unknown strategy %r" % strategy)
    return reorder_pd(pd, bwt, sisa, factory=factory)


def _verify_against_artifacts(bwt, sisa, plcp):
    """Recompute the PLCP from the reconstructed text and compare."""
    symbols = reconstruct_text(bwt, sisa)
    text = Text(symbols, bwt.sigma, circular=bwt.circular)
    sa = build_suffix_array(text)
    expected = permute_lcp(kasai_lcp(text, sa), invert_sa(sa))
    for i in range(len(text)):
        got = plcp.decode(i)
        if got != expected[i]:
            raise VerificationFailed(i, expected[i], got)


def cmd_build(args):
    bwt = formats.read_bwt(args.bwt)
    sisa, sigma, circ = formats.read_sisa(args.sisa)
    formats.check_same_text(bwt.n, bwt.circular, sisa.n, circ,
                            "%s vs %s" % (args.bwt, args.sisa))
    with StreamFactory.tempdir(keep_temp=args.keep_temp) as factory:
        if args.keep_temp:
            print("temporary streams in %s" % factory.directory)
        plcp = build_plcp(bwt, sisa, args.strategy, cutoff=args.cutoff,
                          kernel=args.kernel, factory=factory)
        out = args.output or args.bwt.rsplit(".bwt", 1)[0] + ".plcp"
        formats.write_plcp(out, plcp, bwt.sigma, circular=bwt.circular)
        if args.verify_after_build:
            _verify_against_artifacts(bwt, sisa, plcp)
            print("verified %d positions" % bwt.n)
    print("wrote %s (%d bits, shift %d)" % (out, 2 * plcp.n, plcp.shift))
    return EXIT_OK


def cmd_decode(args):
    plcp, _sigma, _circ = formats.read_plcp(args.plcp)
    if args.all:
        positions = range(plcp.n)
    else:
        positions = [int(p) for p in args.positions.split(",")]
    print(" ".join(str(plcp.decode(p)) for p in positions))
    return EXIT_OK


def cmd_verify(args):
    plcp, _sigma, circ = formats.read_plcp(args.plcp)
    with open(args.text, "rb") as fh:
        raw = fh.read()
    text, _ = ingest(raw, circ)
    if len(text) != plcp.n:
        raise HeaderMismatch(
            "text has %d symbols, artifact says %d" % (len(text), plcp.n)
        )
    sa = build_suffix_array(text)
    expected = permute_lcp(kasai_lcp(text, sa), invert_sa(sa))
    for i in range(len(text)):
        got = plcp.decode(i)
        if got != expected[i]:
            raise VerificationFailed(i, expected[i], got)
    print("verify: OK (%d positions)" % plcp.n)
    return EXIT_OK


def cmd_period(args):
    bwt = formats.read_bwt(args.bwt)
    if not bwt.circular:
        print("error: period detection needs a circular artifact",
              file=sys.stderr)
        return EXIT_USAGE
    report = detect_period(bwt)
    print("period %d exponent %d" % (report.period, report.exponent))
    return EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(
        prog="plcpbits",
        description="Succinct PLCP bit vectors from BWT artifacts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="raw text file -> .bwt + .sisa")
    p.add_argument("text")
    p.add_argument("--rate", type=int, default=4)
    p.add_argument("--circular", action="store_true")
    p.add_argument("--output", help="output prefix (default: input path)")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("build", help=".bwt + .sisa -> .plcp")
    p.add_argument("bwt")
    p.add_argument("sisa")
    p.add_argument("--output", "-o")
    p.add_argument("--strategy", default="external",
                   choices=["internal", "external", "hybrid"])
    p.add_argument("--cutoff", type=int, default=None,
                   help="hybrid round cutoff (default 3*ceil(log2 n))")
    p.add_argument("--kernel", default="direct", choices=["direct"])
    p.add_argument("--keep-temp", action="store_true")
    p.add_argument("--verify-after-build", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("decode", help="print PLCP values from a .plcp")
    p.add_argument("plcp")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--positions", help="comma-separated positions")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="check a .plcp against its text")
    p.add_argument("text")
    p.add_argument("plcp")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("period", help="primitive root of a circular .bwt")
    p.add_argument("bwt")
    p.set_defaults(func=cmd_period)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VERIFY
    except (FormatError, HeaderMismatch) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FORMAT
    except (PlcpError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
