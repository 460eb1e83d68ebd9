"""Round-based builders for the rank-order difference bit vector PD.

Both builders set LCP values in increasing rounds via backward search.
A rank is *active* from the round in which its LF image receives a value
until the round in which the rank itself does; each active round adds
one zero bit in front of the rank's one bit in PD.  The in-memory
strategy walks a pruned interval queue over a wavelet tree; the
sort-based strategy re-derives all extension intervals every round with
nothing but sequential passes and radix sorts.
"""

from dataclasses import dataclass
from itertools import islice

from . import emlayer
from .emlayer import (em_sort_symbols, em_stable_sort_by_symbol,
                      inverse_radix_sort, prepare_inverse_levels)
from .errors import NotIncreasing, OutOfRange
from .succinct import GammaStream, diff_gamma_encode


class IntervalList:
    """Sorted, non-overlapping rank intervals, gamma-differential coded.

    Lower and upper bounds each form a strictly increasing sequence and
    are stored as gap streams.
    """

    def __init__(self):
        self._low = GammaStream()
        self._high = GammaStream()
        self.count = 0
        self._last_low = -1
        self._last_high = -1
        self._tail = 0  # upper bound of the last interval, for appends

    @classmethod
    def single(cls, lo, hi):
        il = cls()
        il.append(lo, hi)
        return il

    @classmethod
    def from_pairs(cls, pairs):
        il = cls()
        for lo, hi in pairs:
            il.append(lo, hi)
        return il

    def append(self, lo, hi):
        if lo >= hi:
            raise OutOfRange("empty interval (%d, %d)" % (lo, hi))
        if lo <= self._last_low or hi <= self._last_high or lo < self._tail:
            raise NotIncreasing("intervals must be sorted and non-overlapping")
        self._low.put(lo - self._last_low - 1)
        self._high.put(hi - self._last_high - 1)
        self._last_low, self._last_high, self._tail = lo, hi, hi
        self.count += 1

    def __len__(self):
        return self.count

    def __iter__(self):
        low = self._low.reader()
        high = self._high.reader()
        lo = hi = -1
        for _ in range(self.count):
            lo += low.get() + 1
            hi += high.get() + 1
            yield lo, hi

    def pairs(self):
        return list(self)

    def total_bits(self):
        return self._low.total_bits + self._high.total_bits

    def is_partition(self, n):
        prev = 0
        for lo, hi in self:
            if lo != prev:
                return False
            prev = hi
        return prev == n


class PdBits:
    """Bit vector with one 1 bit per rank; zeros precede their rank's 1."""

    def __init__(self, bits, n):
        self._bits = bits  # EmStream or list of 0/1
        self.n = n

    @classmethod
    def from_counts(cls, counts):
        bits = []
        for c in counts:
            bits.extend([0] * c)
            bits.append(1)
        return cls(bits, len(counts))

    def iter_bits(self):
        if hasattr(self._bits, "rewind"):
            return self._bits.rewind().items()
        return iter(self._bits)

    def iter_chunks(self):
        if hasattr(self._bits, "rewind"):
            return self._bits.rewind().chunks()
        return iter([list(self._bits)])

    def counts(self):
        """Zero-bit count in front of each rank's one bit."""
        out = []
        c = 0
        for b in self.iter_bits():
            if b:
                out.append(c)
                c = 0
            else:
                c += 1
        return out

    def iter_counts(self):
        c = 0
        for b in self.iter_bits():
            if b:
                yield c
                c = 0
            else:
                c += 1

    def bit_string(self):
        return "".join(str(b) for b in self.iter_bits())

    def __len__(self):
        if hasattr(self._bits, "rewind"):
            return len(self._bits)
        return len(self._bits)


@dataclass
class RoundResult:
    pd: PdBits
    set_marks: object      # bit stream/list over ranks: value already set
    active_marks: object   # bit stream/list over ranks: still collecting
    rounds: int


def run_rounds_internal(bwt, max_rounds=None):
    """Wavelet-tree round builder, entirely in memory.

    Extends a pruned queue of rank intervals one symbol at a time; the
    lower bound of each fresh extension receives its value in the current
    round and activates its LF source.
    """
    n = bwt.n
    wt = bwt.wavelet()
    d = bwt.d_array
    s_set = bytearray(n)
    active = set()
    pd_counts = [0] * n
    queue = [(0, n)]
    set_count = 0
    rounds = 0
    while set_count < n and queue and rounds <= n:
        if max_rounds is not None and rounds >= max_rounds:
            break
        next_queue = []
        newly_set = []
        for lo, hi in queue:
            for sym, rank_at_lo, width in wt.interval_symbols(lo, hi):
                l2 = d[sym] + rank_at_lo
                if not s_set[l2]:
                    # LF source of l2: first sym occurrence in [lo, hi)
                    l2src = wt.select(sym, rank_at_lo)
                    newly_set.append(l2)
                    if not s_set[l2src]:
                        active.add(l2src)
                    next_queue.append((l2, l2 + width))
        for r in active:
            pd_counts[r] += 1
        for r in newly_set:
            active.discard(r)
            if not s_set[r]:
                s_set[r] = 1
                set_count += 1
        queue = next_queue
        rounds += 1
    pd = PdBits.from_counts(pd_counts)
    return RoundResult(pd, list(s_set), [1 if r in active else 0 for r in range(n)],
                       rounds)


def _emit_sorted_runs(sorted_symbols, sink):
    """Append (sym, count) then (sym, 0) fillers for each run."""
    prev = None
    run = 0
    pending = []
    for a in sorted_symbols:
        if a == prev:
            run += 1
            pending.append((a, 0))
        else:
            if run:
                sink.append((prev, run))
                sink.append_chunk(pending[1:])
            prev, run, pending = a, 1, [(a, 0)]
    if run:
        sink.append((prev, run))
        sink.append_chunk(pending[1:])


def _zsequence(bwt, queue, factory, meter, want_tags=False, n_total=None):
    """Interval-sorted symbol counts: the per-round Z stream.

    For each queue interval the BWT slice is sorted and each symbol run
    contributes its length at the first occurrence and zero elsewhere.
    Slices at most one buffer long are sorted in memory; larger ones go
    through the external radix sort.
    """
    z = factory.stream("z")
    src = bwt.stream()
    it = src.items()
    consumed = 0
    for lo, hi in queue:
        if lo > consumed:
            # gap in front of the interval: pad so stream indices stay ranks
            gap = lo - consumed
            if want_tags:
                _emit_gap(it, gap, z)
            else:
                for _ in range(gap):
                    next(it)
            consumed = lo
        width = hi - lo
        if width == 1:
            z.append((next(it), 1))
        elif width <= factory.capacity:
            buf = list(islice(it, width))
            if meter is not None:
                meter.note("slice_buffer", len(buf))
            buf.sort()
            _emit_sorted_runs(buf, z)
        else:
            part = factory.stream("slice")
            part.extend(islice(it, width))
            part.finish()
            sorted_part = em_sort_symbols(part, bwt.sigma, factory)
            _emit_sorted_runs(sorted_part.items(), z)
            factory.release(part, sorted_part)
        consumed = hi
    if n_total is not None and consumed < n_total:
        gap = n_total - consumed
        if want_tags:
            _emit_gap(it, gap, z)
        else:
            for _ in range(gap):
                next(it)
    return z.finish()


def _emit_gap(it, gap, z):
    # gap positions are treated as width-1 intervals tagged count -1
    for _ in range(gap):
        z.append((next(it), -1))


def backstep_all(bwt, intervals, factory=None):
    """All non-empty single-symbol left extensions of sorted intervals.

    The input need not partition the rank space; gaps are carried through
    tagged so only extensions of real intervals survive.
    """
    factory = factory or emlayer.StreamFactory()
    n = bwt.n
    queue = intervals if isinstance(intervals, IntervalList) else \
        IntervalList.from_pairs(intervals)
    z = _zsequence(bwt, queue, factory, None, want_tags=True, n_total=n)
    zs = em_stable_sort_by_symbol(z, bwt.sigma, factory)
    out = IntervalList()
    rank = 0
    for a, c in zs.items():
        if c > 0:
            out.append(rank, rank + c)
        rank += 1
    factory.release(z, zs)
    return out


def pd_increment(pd, active, factory=None):
    """Insert one zero bit in front of the one bit of each active rank."""
    factory = factory or emlayer.StreamFactory()
    out = factory.stream("pd")
    pd_it = pd.iter_bits()
    marks = active.rewind().items() if hasattr(active, "rewind") else iter(active)
    buf = []
    for m in marks:
        for b in pd_it:
            if b:
                break
            buf.append(0)
        if m:
            buf.append(0)
        buf.append(1)
        if len(buf) >= factory.capacity:
            out.append_chunk(buf)
            buf = []
    out.append_chunk(buf)
    return PdBits(out.finish(), pd.n)


def lf_map_marks(bwt, marks, factory=None):
    """Move rank marks through the LF permutation by a stable symbol sort."""
    factory = factory or emlayer.StreamFactory()
    src = bwt.stream()
    pairs = factory.stream("lfpairs")
    mit = marks.rewind().items() if hasattr(marks, "rewind") else iter(marks)
    for chunk in src.chunks():
        pairs.append_chunk([(c, next(mit)) for c in chunk])
    pairs.finish()
    sorted_pairs = em_stable_sort_by_symbol(pairs, bwt.sigma, factory)
    out = factory.stream("lfmarks")
    for chunk in sorted_pairs.chunks():
        out.append_chunk([m for _, m in chunk])
    factory.release(pairs, sorted_pairs)
    return out.finish()


def run_rounds_external(bwt, factory=None, max_rounds=None):
    """Sort-based round builder over sequential streams only.

    Per round: slice-sort the BWT along the current interval partition,
    symbol-sort the resulting count sequence so its index equals the
    target rank, derive the newly-set marks, map them back through
    inverse LF to find ranks to activate, grow PD, then read the next
    partition off the nonzero counts.
    """
    factory = factory or emlayer.StreamFactory()
    meter = factory.meter
    n = bwt.n
    sigma = bwt.sigma

    levels = prepare_inverse_levels(bwt.stream(), sigma, factory)
    s_marks = factory.zeros(n, "s")
    active = factory.zeros(n, "active")
    pd = PdBits(factory.from_items((1 for _ in range(n)), "pd"), n)
    queue = IntervalList.single(0, n)
    set_count = 0
    rounds = 0

    while set_count < n and rounds <= n:
        if max_rounds is not None and rounds >= max_rounds:
            break
        meter.note("round_state", 8)

        z = _zsequence(bwt, queue, factory, meter)
        zs = em_stable_sort_by_symbol(z, sigma, factory)

        # marks over target ranks: value becomes set in this round
        znew = factory.stream("znew")
        sit = s_marks.rewind().items()
        for chunk in zs.chunks():
            buf = []
            for _, c in chunk:
                sb = next(sit)
                buf.append(1 if c and not sb else 0)
            znew.append_chunk(buf)
        znew.finish()

        # same marks in source-rank order (inverse LF)
        zsrc = inverse_radix_sort(None, znew, sigma, factory, levels=levels)

        # activate source ranks whose LF image is newly set
        new_active = factory.stream("active")
        sit = s_marks.rewind().items()
        ait = active.rewind().items()
        for chunk in zsrc.chunks():
            buf = []
            for zb in chunk:
                ab = next(ait)
                sb = next(sit)
                buf.append(1 if ab or (zb and not sb) else 0)
            new_active.append_chunk(buf)
        new_active.finish()

        pd_next = pd_increment(pd, new_active, factory)
        factory.release(pd._bits)
        pd = pd_next

        # set new ranks, deactivate them, and read off the next partition
        next_queue = IntervalList()
        s_next = factory.stream("s")
        act_next = factory.stream("active")
        sit = s_marks.rewind().items()
        ait = new_active.rewind().items()
        rank = 0
        for chunk in zs.rewind().chunks():
            sbuf = []
            abuf = []
            for _, c in chunk:
                sb = next(sit)
                ab = next(ait)
                if c:
                    if not sb:
                        set_count += 1
                    sbuf.append(1)
                    abuf.append(0)
                    next_queue.append(rank, rank + c)
                else:
                    sbuf.append(sb)
                    abuf.append(ab)
                rank += 1
            s_next.append_chunk(sbuf)
            act_next.append_chunk(abuf)
        factory.release(s_marks, active, new_active, z, zs, znew, zsrc)
        s_marks = s_next.finish()
        active = act_next.finish()
        queue = next_queue
        rounds += 1

    factory.release(*levels)
    return RoundResult(pd, s_marks, active, rounds)
