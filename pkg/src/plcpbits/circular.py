"""Circular (terminator-free) PLCP construction.

For a primitive circular string the machinery of the linear case carries
over; the counts become purely differential, so the emitted bit vector
is rotated to start right after a position of PLCP zero and the rotation
offset is recorded as the decode shift.  Integer powers are rejected:
their rotations collide, but their BWT exposes the exponent through its
run lengths, so a power can be shrunk to its primitive root first.
"""

from dataclasses import dataclass
from math import gcd

from . import emlayer
from .errors import CircularPowerInput, NotAPower, OutOfRange
from .hybrid import hybrid_pd
from .reorder import reorder_pd
from .rounds import run_rounds_external, run_rounds_internal
from .succinct import lf_map
from .textcore import Bwt


@dataclass(frozen=True)
class PeriodReport:
    period: int
    exponent: int


def detect_period(bwt):
    """Exponent and primitive-root length from the BWT run lengths.

    The transform of u^e repeats each symbol of the transform of u
    exactly e times, so e is the greatest common divisor of the run
    lengths.  Scanning stops as soon as the running gcd hits one.
    """
    n = bwt.n
    g = 0
    prev = None
    run = 0
    for sym in bwt.stream().items():
        if sym == prev:
            run += 1
        else:
            if run:
                g = gcd(g, run)
                if g == 1:
                    return PeriodReport(period=n, exponent=1)
            prev, run = sym, 1
    g = gcd(g, run)
    return PeriodReport(period=n // g, exponent=g)


def shrink_bwt(bwt, exponent=None, factory=None):
    """Transform of the primitive root: every e-th symbol of the input."""
    factory = factory or emlayer.StreamFactory()
    e = detect_period(bwt).exponent if exponent is None else exponent
    if e == 1:
        raise NotAPower("input is already primitive")
    out = factory.stream("bwt")
    idx = 0
    for chunk in bwt.stream().chunks():
        out.append_chunk(chunk[(-idx) % e :: e])
        idx += len(chunk)
    return Bwt(out.finish(), bwt.sigma, circular=True, factory=factory)


def rank_to_position(bwt, sisa, rank):
    """Text position of a rank, walking LF until a sampled rank."""
    n = bwt.n
    if not 0 <= rank < n:
        raise OutOfRange("rank %d out of range" % rank)
    sampled = {r: pos for r, pos in sisa.pairs()}
    r = rank
    for steps in range(n + 1):
        if r in sampled:
            return (sampled[r] + steps) % n
        r = lf_map(bwt, r)
    raise OutOfRange("rank %d never reached a sample" % rank)


def build_circular_plcp(bwt, sisa, factory=None, strategy="external",
                        cutoff=None, kernel="direct", anchor_rank=None):
    """Rotated 2n-bit PLCP vector of a primitive circular string.

    The anchor rank must have LCP zero; rank 0 always qualifies and is
    the default.  The emitted vector starts at the text position right
    after the anchor's, recorded as the shift.
    """
    factory = factory or emlayer.StreamFactory()
    n = bwt.n
    if n <= 1:
        raise CircularPowerInput("circular input needs length above one")
    if detect_period(bwt).exponent != 1:
        raise CircularPowerInput(
            "circular input is a proper power; shrink it first"
        )
    r_hat = 0 if anchor_rank is None else anchor_rank
    p_hat = rank_to_position(bwt, sisa, r_hat)
    shift = (p_hat + 1) % n

    if strategy == "internal":
        pd = run_rounds_internal(bwt).pd
    elif strategy == "external":
        pd = run_rounds_external(bwt, factory).pd
    elif strategy == "hybrid":
        if cutoff is None:
            cutoff = max(1, n.bit_length())
        pd, _ = hybrid_pd(bwt, sisa, cutoff, kernel=kernel,
                          factory=factory, circular=True)
    else:
        raise OutOfRange("unknown strategy %r" % strategy)
    return reorder_pd(pd, bwt, sisa, factory=factory, shift=shift)
