"""Hybrid builder: truncated rounds plus a sparse LCP kernel.

The round machinery is cheap while many ranks receive values per round
and wasteful afterwards.  The hybrid strategy stops it after a cutoff,
erases the partial counts of ranks still in flight, and computes the
missing counts directly: only missing *irreducible* ranks (rank 0 or a
BWT symbol change) need work, every other missing rank provably
contributes zero bits.  Positions for the sparse set are recovered by a
batched LF walk against the ISA samples, longest common prefixes by a
pluggable kernel over the reconstructed text.
"""

from . import emlayer
from .errors import ReducibleRankNeedsZeros
from .reorder import reconstruct_text, reorder_pd
from .rounds import PdBits, run_rounds_external
from .textcore import Text, naive_lcp_pair


def sparse_lcp_kernel_direct(text, p, q):
    """Symbol-by-symbol comparison of the suffixes at p and q."""
    return naive_lcp_pair(text, p, q)


KERNELS = {"direct": sparse_lcp_kernel_direct}


def irreducible_missing(bwt, set_marks, factory=None):
    """Ranks without a value whose count cannot be deduced as zero.

    Those are the unset ranks where the BWT changes symbol (or rank 0).
    Returns them as a sorted list.
    """
    out = []
    prev_sym = None
    rank = 0
    sit = set_marks.rewind().items() if hasattr(set_marks, "rewind") \
        else iter(set_marks)
    for sym in bwt.stream().items():
        if not next(sit) and (rank == 0 or sym != prev_sym):
            out.append(rank)
        prev_sym = sym
        rank += 1
    return out


def fill_reducible(bwt, set_marks, handled):
    """Check that every missing rank outside ``handled`` is reducible.

    Reducible ranks repeat the previous BWT symbol and need zero bits,
    so there is nothing to write; a non-reducible leftover means the
    sparse set was computed wrongly.
    """
    handled = set(handled)
    prev_sym = None
    rank = 0
    sit = set_marks.rewind().items() if hasattr(set_marks, "rewind") \
        else iter(set_marks)
    for sym in bwt.stream().items():
        if not next(sit) and rank not in handled:
            if rank == 0 or sym != prev_sym:
                raise ReducibleRankNeedsZeros(
                    "rank %d is irreducible but was not handled" % rank
                )
        prev_sym = sym
        rank += 1


def _lf_targets(bwt, ranks):
    """LF images of a sorted rank list, via one BWT scan."""
    wanted = set(ranks)
    counters = list(bwt.d_array[: bwt.sigma])
    out = {}
    rank = 0
    for sym in bwt.stream().items():
        if rank in wanted:
            out[rank] = counters[sym]
        counters[sym] += 1
        rank += 1
    return out


def annotate_positions(bwt, sisa, ranks, factory=None):
    """Text position of each rank in a sorted list, as a dict.

    Walks all cursors backwards together; each retires at the first
    sampled rank it meets, at most ``rate`` LF rounds in total.
    """
    factory = factory or emlayer.StreamFactory()
    n = bwt.n
    samples = sisa.pairs_by_rank()
    factory.meter.note("isa_samples", len(samples))
    out = {}
    tuples = factory.from_items(((r, r, 0) for r in ranks), "cursors")
    for _ in range(sisa.rate + 1):
        if not len(tuples):
            break
        # retire cursors sitting on a sampled rank
        survivors = factory.stream("cursors")
        si = 0
        for chunk in tuples.rewind().chunks():
            keep = []
            for rank, orig, steps in chunk:
                while si < len(samples) and samples[si][0] < rank:
                    si += 1
                if si < len(samples) and samples[si][0] == rank:
                    out[orig] = (samples[si][1] + steps) % n
                else:
                    keep.append((rank, orig, steps))
            survivors.append_chunk(keep)
        factory.release(tuples)
        tuples = survivors.finish()
        if not len(tuples):
            break
        # one LF step for the rest; order by new rank = stable symbol sort
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
                    tagged.append((sym, (lf, head[1], head[2] + 1)))
                    head = next(tit, None)
                rank += 1
        tagged.finish()
        stepped = emlayer.em_stable_sort_by_symbol(tagged, bwt.sigma, factory)
        nxt = factory.stream("cursors")
        for chunk in stepped.chunks():
            nxt.append_chunk([payload for _, payload in chunk])
        factory.release(tuples, tagged, stepped)
        tuples = nxt.finish()
    assert not len(tuples), "cursor failed to reach a sample"
    factory.release(tuples)
    return out


def _erase_active(pd, active, factory):
    """Drop the partial zero bits of ranks whose rounds were cut short."""
    out = factory.stream("pd")
    pd_it = pd.iter_bits()
    ait = active.rewind().items() if hasattr(active, "rewind") else iter(active)
    buf = []
    for m in ait:
        zeros = 0
        for b in pd_it:
            if b:
                break
            zeros += 1
        if not m:
            buf.extend([0] * zeros)
        buf.append(1)
        if len(buf) >= factory.capacity:
            out.append_chunk(buf)
            buf = []
    out.append_chunk(buf)
    return PdBits(out.finish(), pd.n)


def _merge_counts(pd, counts_by_rank, factory):
    """Write the kernel counts into PD at their (currently empty) ranks."""
    out = factory.stream("pd")
    pd_it = pd.iter_bits()
    buf = []
    for rank in range(pd.n):
        zeros = 0
        for b in pd_it:
            if b:
                break
            zeros += 1
        if rank in counts_by_rank:
            assert zeros == 0, "merging into a rank that already has bits"
            zeros = counts_by_rank[rank]
        buf.extend([0] * zeros)
        buf.append(1)
        if len(buf) >= factory.capacity:
            out.append_chunk(buf)
            buf = []
    out.append_chunk(buf)
    return PdBits(out.finish(), pd.n)


def hybrid_pd(bwt, sisa, cutoff_rounds, kernel="direct", factory=None,
              circular=False):
    """Complete rank-order count vector from truncated rounds plus kernel."""
    factory = factory or emlayer.StreamFactory()
    kernel_fn = KERNELS[kernel] if isinstance(kernel, str) else kernel
    n = bwt.n

    result = run_rounds_external(bwt, factory, max_rounds=cutoff_rounds)
    pd = _erase_active(result.pd, result.active_marks, factory)
    factory.release(result.pd._bits)

    missing = irreducible_missing(bwt, result.set_marks, factory)
    fill_reducible(bwt, result.set_marks, missing)
    if not missing:
        return pd, result

    # LCP values are needed at the missing ranks and at their LF images;
    # positions additionally at every predecessor rank.
    lf = _lf_targets(bwt, missing)
    need_lcp = sorted(set(missing) | set(lf.values()))
    need_pos = sorted(set(need_lcp) | {r - 1 for r in need_lcp if r > 0})
    factory.meter.note("hybrid_sparse", len(need_pos))

    positions = annotate_positions(bwt, sisa, need_pos, factory)
    symbols = reconstruct_text(bwt, sisa, factory)
    text = Text(symbols, bwt.sigma, circular=circular)

    lcp = {}
    for r in need_lcp:
        if r == 0:
            lcp[r] = 0
        else:
            lcp[r] = kernel_fn(text, positions[r], positions[r - 1])

    # counts come from neighbouring text positions of the computed values
    by_pos = sorted((positions[r], r) for r in need_lcp)
    pos_to_lcp = {p: lcp[r] for p, r in by_pos}
    counts = {}
    missing_set = set(missing)
    for p, r in by_pos:
        if r not in missing_set:
            continue
        prev = (p - 1) % n
        counts[r] = lcp[r] - pos_to_lcp[prev] + 1
        assert counts[r] >= 0
    pd = _merge_counts(pd, counts, factory)
    return pd, result


def run_hybrid(bwt, sisa, cutoff_rounds, kernel="direct", factory=None,
               circular=False, shift=0):
    """Hybrid end-to-end: truncated rounds, sparse kernel, reorder to K."""
    factory = factory or emlayer.StreamFactory()
    pd, _ = hybrid_pd(bwt, sisa, cutoff_rounds, kernel=kernel,
                      factory=factory, circular=circular)
    return reorder_pd(pd, bwt, sisa, factory=factory, shift=shift)
