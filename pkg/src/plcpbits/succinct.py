"""Succinct primitives.

Elias gamma coding (shifted so zero is encodable), a rank/select bit
vector, the 2n-bit PLCP codec and a level-ordered wavelet tree used by
the in-memory round builder.
"""

from bisect import bisect_right

from .errors import (DiffBoundViolation, NotIncreasing, OutOfRange,
                     TruncatedCode)

_WORD = 64
_WORD_MASK = (1 << _WORD) - 1


class GammaStream:
    """Append-only bit sequence of gamma codewords, MSB-first.

    A value v is stored as gamma(v+1): floor(log2(v+1)) zero bits
    followed by the binary digits of v+1.  The shift keeps zero
    encodable, which the round machinery needs for its count markers.
    """

    def __init__(self):
        self._bits = bytearray()
        self.count = 0

    @property
    def total_bits(self):
        return len(self._bits)

    def put(self, v):
        if v < 0:
            raise OutOfRange("gamma code is for non-negative values")
        x = v + 1
        width = x.bit_length()
        bits = self._bits
        bits.extend(b"\x00" * (width - 1))
        for shift in range(width - 1, -1, -1):
            bits.append((x >> shift) & 1)
        self.count += 1

    def put_all(self, values):
        for v in values:
            self.put(v)

    def bit_string(self):
        return "".join("1" if b else "0" for b in self._bits)

    def reader(self):
        return GammaReader(self)


class GammaReader:
    """Single-consumer cursor over a GammaStream."""

    def __init__(self, stream):
        self._bits = stream._bits
        self._pos = 0

    def get(self):
        bits = self._bits
        pos = self._pos
        end = len(bits)
        zeros = 0
        while pos < end and not bits[pos]:
            zeros += 1
            pos += 1
        if pos + zeros >= end:
            raise TruncatedCode("gamma decode past end of stream")
        x = 1
        pos += 1
        for _ in range(zeros):
            x = (x << 1) | bits[pos]
            pos += 1
        self._pos = pos
        return x - 1

    def get_many(self, count):
        return [self.get() for _ in range(count)]


def gamma_put(stream, v):
    stream.put(v)
    return stream


def gamma_get(reader):
    return reader.get()


def diff_gamma_encode(values, base=-1):
    """Gamma-code the gaps of a strictly increasing sequence.

    Gap i is values[i] - previous - 1 with the given base standing in for
    the element before the first.
    """
    stream = GammaStream()
    prev = base
    for v in values:
        if v <= prev:
            raise NotIncreasing("expected value above %d, got %d" % (prev, v))
        stream.put(v - prev - 1)
        prev = v
    return stream


def diff_gamma_decode(stream, base=-1, count=None):
    reader = stream.reader()
    if count is None:
        count = stream.count
    out = []
    prev = base
    for _ in range(count):
        prev = prev + reader.get() + 1
        out.append(prev)
    return out


class RsBitVector:
    """Plain bit vector with rank and select support.

    Rank uses per-word cumulative one counts; select binary-searches the
    cumulative table and scans one word.
    """

    def __init__(self, bits):
        words = []
        acc = 0
        fill = 0
        n = 0
        for b in bits:
            if b:
                acc |= 1 << fill
            fill += 1
            n += 1
            if fill == _WORD:
                words.append(acc)
                acc = 0
                fill = 0
        if fill:
            words.append(acc)
        self._words = words
        self.n = n
        ranks = [0] * (len(words) + 1)
        for i, w in enumerate(words):
            ranks[i + 1] = ranks[i] + w.bit_count()
        self._ranks = ranks
        self.ones = ranks[-1]

    def __len__(self):
        return self.n

    def get(self, i):
        if not 0 <= i < self.n:
            raise OutOfRange("bit index %d out of range" % i)
        return (self._words[i // _WORD] >> (i % _WORD)) & 1

    def rank1(self, i):
        """Number of one bits strictly before index i."""
        if not 0 <= i <= self.n:
            raise OutOfRange("rank index %d out of range" % i)
        w, r = divmod(i, _WORD)
        count = self._ranks[w]
        if r:
            count += (self._words[w] & ((1 << r) - 1)).bit_count()
        return count

    def rank0(self, i):
        return i - self.rank1(i)

    def select1(self, j):
        """Index of the (j+1)-th one bit (0-indexed)."""
        if not 0 <= j < self.ones:
            raise OutOfRange("select1 argument %d out of range" % j)
        w = bisect_right(self._ranks, j) - 1
        word = self._words[w]
        remaining = j - self._ranks[w]
        pos = w * _WORD
        while True:
            if word & 1:
                if remaining == 0:
                    return pos
                remaining -= 1
            word >>= 1
            pos += 1

    def select0(self, j):
        zeros = self.n - self.ones
        if not 0 <= j < zeros:
            raise OutOfRange("select0 argument %d out of range" % j)
        lo, hi = 0, len(self._words)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid * _WORD - self._ranks[mid] <= j:
                lo = mid + 1
            else:
                hi = mid
        w = lo - 1
        word = self._words[w]
        remaining = j - (w * _WORD - self._ranks[w])
        pos = w * _WORD
        while True:
            if not word & 1 and pos < self.n:
                if remaining == 0:
                    return pos
                remaining -= 1
            word >>= 1
            pos += 1

    def bit_string(self):
        return "".join(str(self.get(i)) for i in range(self.n))


class PlcpBits:
    """Succinct PLCP representation: unary-coded differences plus select.

    ``shift`` records the rotation start used for circular inputs; it is
    zero for terminated strings.
    """

    def __init__(self, bits, n, shift=0):
        self.k = bits if isinstance(bits, RsBitVector) else RsBitVector(bits)
        self.n = n
        self.shift = shift % n if n else 0

    def decode(self, i):
        if not 0 <= i < self.n:
            raise OutOfRange("position %d out of range" % i)
        j = (i - self.shift) % self.n
        return self.k.select1(j) - 2 * j - 1

    def __getitem__(self, i):
        return self.decode(i)

    def decode_all(self):
        return [self.decode(i) for i in range(self.n)]

    def bit_string(self):
        return self.k.bit_string()

    def __len__(self):
        return self.n


def plcp_encode(plcp):
    """Encode a PLCP array as the unary difference bit vector."""
    values = list(plcp.values if hasattr(plcp, "values") else plcp)
    bits = []
    prev = -1
    for v in values:
        d = v + 1 if prev < 0 else v - prev + 1
        if d < 0:
            raise DiffBoundViolation(
                "PLCP drops by more than one (%d after %d)" % (v, prev)
            )
        bits.extend([0] * d)
        bits.append(1)
        prev = v
    return PlcpBits(bits, len(values), shift=0)


def plcp_decode(k, i):
    return k.decode(i)


class WaveletTree:
    """Level-ordered wavelet tree over a symbol sequence."""

    def __init__(self, symbols, sigma):
        self.n = len(symbols)
        self.sigma = sigma
        self.nlevels = max(1, (sigma - 1).bit_length())
        cur = list(symbols)
        self.levels = []
        for lvl in range(self.nlevels):
            shift = self.nlevels - 1 - lvl
            self.levels.append(RsBitVector((c >> shift) & 1 for c in cur))
            if lvl + 1 < self.nlevels:
                # stable sort by the bit prefix keeps every node contiguous
                cur = sorted(cur, key=lambda c: c >> shift)

    def _descend(self, sym, a, b, i):
        """Track (node range, mapped index) for one symbol down all levels."""
        for lvl in range(self.nlevels):
            bits = self.levels[lvl]
            bit = (sym >> (self.nlevels - 1 - lvl)) & 1
            z_before = bits.rank0(a)
            z_in = bits.rank0(b) - z_before
            if bit:
                i = a + z_in + (bits.rank1(i) - bits.rank1(a))
                a = a + z_in
            else:
                i = a + (bits.rank0(i) - z_before)
                b = a + z_in
        return a, b, i

    def rank(self, sym, i):
        """Occurrences of sym strictly before index i."""
        if not 0 <= i <= self.n:
            raise OutOfRange("rank index %d out of range" % i)
        if not 0 <= sym < self.sigma:
            return 0
        a, _b, i = self._descend(sym, 0, self.n, i)
        return i - a

    def select(self, sym, j):
        """Index of the (j+1)-th occurrence of sym."""
        if not 0 <= sym < self.sigma:
            raise OutOfRange("symbol %d out of range" % sym)
        # record node ranges along the path, then walk back up
        ranges = []
        a, b = 0, self.n
        for lvl in range(self.nlevels):
            ranges.append((a, b))
            bits = self.levels[lvl]
            bit = (sym >> (self.nlevels - 1 - lvl)) & 1
            z_in = bits.rank0(b) - bits.rank0(a)
            if bit:
                a = a + z_in
            else:
                b = a + z_in
        if not 0 <= j < b - a:
            raise OutOfRange("select argument %d out of range" % j)
        pos = j
        for lvl in range(self.nlevels - 1, -1, -1):
            a, b = ranges[lvl]
            bits = self.levels[lvl]
            bit = (sym >> (self.nlevels - 1 - lvl)) & 1
            if bit:
                pos = bits.select1(bits.rank1(a) + pos) - a
            else:
                pos = bits.select0(bits.rank0(a) + pos) - a
        return pos

    def access(self, i):
        if not 0 <= i < self.n:
            raise OutOfRange("index %d out of range" % i)
        a, b = 0, self.n
        sym = 0
        for lvl in range(self.nlevels):
            bits = self.levels[lvl]
            bit = bits.get(i)
            sym = (sym << 1) | bit
            z_before = bits.rank0(a)
            z_in = bits.rank0(b) - z_before
            if bit:
                i = a + z_in + (bits.rank1(i) - bits.rank1(a))
                a = a + z_in
            else:
                i = a + (bits.rank0(i) - z_before)
                b = a + z_in
        return sym

    def interval_symbols(self, lo, hi):
        """Distinct symbols in [lo, hi) with rank at lo and interval count.

        Returns (sym, rank_at_lo, count) triples sorted by symbol; only
        nonempty child intervals are visited.
        """
        if not 0 <= lo <= hi <= self.n:
            raise OutOfRange("interval (%d, %d) out of range" % (lo, hi))
        out = []
        if lo == hi:
            return out

        def walk(lvl, a, b, l, r, prefix):
            if lvl == self.nlevels:
                out.append((prefix, l - a, r - l))
                return
            bits = self.levels[lvl]
            z_before = bits.rank0(a)
            z_in = bits.rank0(b) - z_before
            lz = bits.rank0(l) - z_before
            rz = bits.rank0(r) - z_before
            if rz > lz:
                walk(lvl + 1, a, a + z_in, a + lz, a + rz, prefix << 1)
            lo_ones = (l - a) - lz
            ro_ones = (r - a) - rz
            if ro_ones > lo_ones:
                walk(lvl + 1, a + z_in, b,
                     a + z_in + lo_ones, a + z_in + ro_ones, (prefix << 1) | 1)

        walk(0, 0, self.n, lo, hi, 0)
        return out


def wt_build(bwt):
    return WaveletTree(bwt.to_list(), bwt.sigma)


def wt_rank(wt, sym, i):
    return wt.rank(sym, i)


def wt_select(wt, sym, j):
    return wt.select(sym, j)


def wt_interval_symbols(wt, lo, hi):
    return wt.interval_symbols(lo, hi)


def backstep(bwt, sym, interval):
    """Backward-search step: rank interval of sym.w from that of w."""
    lo, hi = interval
    if not 0 <= lo <= hi <= bwt.n:
        raise OutOfRange("interval (%d, %d) out of range" % (lo, hi))
    wt = bwt.wavelet()
    d = bwt.d_array[sym]
    return (d + wt.rank(sym, lo), d + wt.rank(sym, hi))


def lf_map(bwt, r):
    """LF mapping of a single rank: backstep restricted to BWT[r]."""
    sym = bwt.wavelet().access(r)
    return backstep(bwt, sym, (r, r + 1))[0]
