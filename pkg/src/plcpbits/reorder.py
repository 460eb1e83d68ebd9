"""Turning the rank-ordered difference vector PD into the final K.

PD carries one unary count per suffix-array rank; K needs the same
counts in text order.  With only a sampled inverse suffix array
available, batches of cursors are walked backwards through the text via
the LF mapping, each cursor collecting the counts of the position window
between two consecutive samples.  Every pass is strictly sequential; the
per-round LF pass keeps one counter per alphabet symbol in memory and
nothing else.

The same walk, recording BWT symbols instead of counts, reconstructs the
text; that path is what the verification command uses.
"""

from math import ceil

from . import emlayer
from .emlayer import em_lsd_sort, em_stable_sort_by_symbol
from .errors import RateMismatch
from .succinct import PlcpBits


def _check_rate(bwt, sisa):
    n = bwt.n
    if sisa.n != n or len(sisa.ranks) != ceil(n / sisa.rate):
        raise RateMismatch(
            "sample count %d does not match length %d at rate %d"
            % (len(sisa.ranks), n, sisa.rate)
        )


def _seed_tuples(sisa, factory):
    """Cursors (rank, pos, active, values) sorted by rank."""
    n = sisa.n
    seeds = factory.stream("tuples")
    for rank, pos in sisa.pairs():
        seeds.append((rank, pos, True, ()))
    seeds.finish()
    key_bits = max(1, (n - 1).bit_length())
    out = em_lsd_sort(seeds, 0, key_bits, factory)
    if out is not seeds:
        factory.release(seeds)
    return out


def _lf_pass(bwt, tuples, factory, move_pos=True, record=None):
    """Advance every cursor one LF step, tagging it with its BWT symbol.

    Cursors arrive and leave in rank order relative to the tag symbol;
    a stable symbol sort of the output restores full rank order.  The
    symbol counter table is the only in-memory state, noted with the
    meter under ``lf_counters``.
    """
    n = bwt.n
    counters = list(bwt.d_array[: bwt.sigma])
    factory.meter.note("lf_counters", bwt.sigma)
    tagged = factory.stream("tagged")
    tit = tuples.rewind().items()
    head = next(tit, None)
    rank = 0
    for chunk in bwt.stream().chunks():
        for sym in chunk:
            lf = counters[sym]
            counters[sym] += 1
            while head is not None and head[0] == rank:
                r, pos, active, values = head
                if active:
                    new_pos = (pos + n - 1) % n if move_pos else pos
                    if record is not None:
                        record.append((new_pos, sym))
                else:
                    new_pos = pos
                tagged.append((sym, (lf, new_pos, active, values)))
                head = next(tit, None)
            rank += 1
    tagged.finish()
    sorted_tagged = em_stable_sort_by_symbol(tagged, bwt.sigma, factory)
    out = factory.stream("tuples")
    for chunk in sorted_tagged.chunks():
        out.append_chunk([payload for _, payload in chunk])
    factory.release(tagged, sorted_tagged)
    return out.finish()


def _copy_counts_pass(pd, tuples, rate, factory):
    """Prepend the PD count at each active cursor's rank to its values.

    A cursor retires once it has walked back to the sample position below
    its seed.
    """
    out = factory.stream("tuples")
    cit = pd.iter_counts()
    tit = tuples.rewind().items()
    head = next(tit, None)
    rank = 0
    for count in cit:
        while head is not None and head[0] == rank:
            r, pos, active, values = head
            if active:
                values = (count,) + values
                if pos % rate == 0:
                    active = False
            out.append((r, pos, active, values))
            head = next(tit, None)
        rank += 1
    return out.finish()


def position_counts(pd, bwt, sisa, factory=None):
    """PD counts permuted from rank order to text-position order.

    Returns a finished stream of n counts, count i belonging to text
    position i.
    """
    factory = factory or emlayer.StreamFactory()
    _check_rate(bwt, sisa)
    n = bwt.n
    rate = sisa.rate
    tuples = _seed_tuples(sisa, factory)
    for _ in range(rate):
        stepped = _lf_pass(bwt, tuples, factory)
        factory.release(tuples)
        tuples = _copy_counts_pass(pd, stepped, rate, factory)
        factory.release(stepped)
    key_bits = max(1, (n - 1).bit_length())
    by_pos = em_lsd_sort(tuples, 1, key_bits, factory)
    if by_pos is not tuples:
        factory.release(tuples)
    counts = factory.stream("counts")
    for chunk in by_pos.chunks():
        for _, _, active, values in chunk:
            assert not active, "cursor still collecting after full walk"
            counts.append_chunk(list(values))
    factory.release(by_pos)
    return counts.finish()


def emit_k(counts, n, shift=0, factory=None):
    """Unary-code a count stream into the 2n-bit K, rotated by ``shift``.

    The bit for text position ``shift`` comes first; a non-zero shift
    costs one extra rewind of the count stream.
    """
    factory = factory or emlayer.StreamFactory()
    bits = []
    shift %= n

    def emit_range(skip, take):
        it = counts.items()
        for _ in range(skip):
            next(it)
        for _ in range(take):
            c = next(it)
            bits.extend([0] * c)
            bits.append(1)

    counts.rewind()
    if shift == 0:
        emit_range(0, n)
    else:
        emit_range(shift, n - shift)
        counts.rewind()
        emit_range(0, shift)
    return PlcpBits(bits, n, shift=shift)


def reorder_pd(pd, bwt, sisa, factory=None, shift=0):
    """Full reorder: PD plus sampled ISA to the position-ordered K."""
    factory = factory or emlayer.StreamFactory()
    counts = position_counts(pd, bwt, sisa, factory)
    k = emit_k(counts, bwt.n, shift=shift, factory=factory)
    factory.release(counts)
    return k


def reconstruct_text(bwt, sisa, factory=None):
    """Recover the text symbols from the BWT with the same batched walk."""
    factory = factory or emlayer.StreamFactory()
    _check_rate(bwt, sisa)
    n = bwt.n
    rate = sisa.rate
    tuples = _seed_tuples(sisa, factory)
    pairs = factory.stream("textpairs")
    for _ in range(rate):
        stepped = _lf_pass(bwt, tuples, factory, record=pairs)
        factory.release(tuples)
        # retire cursors that reached the sample below their seed
        nxt = factory.stream("tuples")
        for chunk in stepped.chunks():
            nxt.append_chunk(
                [(r, p, a and p % rate != 0, v) for r, p, a, v in chunk]
            )
        factory.release(stepped)
        tuples = nxt.finish()
    factory.release(tuples)
    pairs.finish()
    key_bits = max(1, (n - 1).bit_length())
    by_pos = em_lsd_sort(pairs, 0, key_bits, factory)
    if by_pos is not pairs:
        factory.release(pairs)
    out = []
    for chunk in by_pos.chunks():
        out.extend(sym for _, sym in chunk)
    factory.release(by_pos)
    return out
