"""Reference construction of suffix structures, linear and circular.

Everything here is brute force on purpose: these are the ground-truth
oracles that every other module is checked against.  Texts are over the
dense rank alphabet 0..sigma-1; a non-circular text ends in a unique
minimal terminator (rank 0).
"""

from dataclasses import dataclass, field

from .errors import CircularPowerInput, LengthMismatch, OutOfRange


@dataclass(frozen=True)
class Text:
    symbols: tuple
    sigma: int
    circular: bool = False

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        n = len(self.symbols)
        if n == 0:
            raise OutOfRange("empty text")
        if any(c < 0 or c >= self.sigma for c in self.symbols):
            raise OutOfRange("symbol outside alphabet 0..%d" % (self.sigma - 1))
        if not self.circular:
            if self.symbols[-1] != 0 or self.symbols.count(0) != 1:
                raise OutOfRange("non-circular text must end in a unique 0")

    def __len__(self):
        return len(self.symbols)

    def at(self, i):
        """Symbol at position i, read circularly when the text is circular."""
        if self.circular:
            return self.symbols[i % len(self.symbols)]
        return self.symbols[i]


@dataclass(frozen=True)
class SuffixArray:
    ranks_to_positions: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranks_to_positions",
                           tuple(self.ranks_to_positions))

    def __getitem__(self, i):
        return self.ranks_to_positions[i]

    def __len__(self):
        return len(self.ranks_to_positions)


@dataclass(frozen=True)
class InverseSuffixArray:
    positions_to_ranks: tuple

    def __post_init__(self):
        object.__setattr__(self, "positions_to_ranks",
                           tuple(self.positions_to_ranks))

    def __getitem__(self, i):
        return self.positions_to_ranks[i]

    def __len__(self):
        return len(self.positions_to_ranks)


@dataclass(frozen=True)
class LcpArray:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class PlcpArray:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


class Bwt:
    """Burrows-Wheeler transform plus occurrence counts C and prefix sums D.

    Symbols may live in a plain sequence or in a sequential stream from
    the emlayer; ``stream()`` exposes a uniform sequential view.
    """

    def __init__(self, symbols, sigma, circular=False, factory=None):
        self._factory = factory
        if hasattr(symbols, "chunks"):
            self._stream = symbols
            self._list = None
            self.n = len(symbols)
            counts = [0] * sigma
            symbols.rewind()
            for chunk in symbols.chunks():
                for c in chunk:
                    counts[c] += 1
        else:
            self._list = list(symbols)
            self._stream = None
            self.n = len(self._list)
            counts = [0] * sigma
            for c in self._list:
                counts[c] += 1
        self.sigma = sigma
        self.circular = circular
        self.c_array = counts
        self.d_array = [0] * (sigma + 1)
        for a in range(sigma):
            self.d_array[a + 1] = self.d_array[a] + counts[a]
        self._wavelet = None

    def stream(self):
        """Sequential view of the symbols, rewound to the start."""
        if self._stream is None:
            from .emlayer import StreamFactory
            if self._factory is None:
                self._factory = StreamFactory()
            self._stream = self._factory.wrap(self._list, name="bwt")
        return self._stream.rewind()

    def to_list(self):
        if self._list is None:
            self._list = list(self.stream().items())
        return self._list

    def wavelet(self):
        if self._wavelet is None:
            from .succinct import WaveletTree
            self._wavelet = WaveletTree(self.to_list(), self.sigma)
        return self._wavelet

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class SampledIsa:
    """ISA values at positions 0, rate, 2*rate, ..."""

    rate: int
    n: int
    ranks: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))

    def __len__(self):
        return len(self.ranks)

    def pairs(self):
        """(rank, position) pairs in position order."""
        return [(r, i * self.rate) for i, r in enumerate(self.ranks)]

    def pairs_by_rank(self):
        return sorted(self.pairs())


def brute_period(symbols):
    """Smallest p such that symbols = root^(n/p); checks every divisor."""
    n = len(symbols)
    symbols = tuple(symbols)
    for p in range(1, n + 1):
        if n % p == 0 and symbols == symbols[:p] * (n // p):
            return p
    return n


def _circular_key(text, i):
    n = len(text)
    doubled = text.symbols + text.symbols
    return (doubled[i : i + n], i)


def _suffix_array_doubling(text):
    """Prefix-doubling suffix sort; used above the direct-comparison size."""
    n = len(text)
    s = text.symbols
    rank = list(s)
    order = list(range(n))
    d = 1
    while d < n:
        if text.circular:
            key = lambda i: (rank[i], rank[(i + d) % n])
        else:
            key = lambda i: (rank[i], rank[i + d] if i + d < n else -1)
        order.sort(key=key)
        nrank = [0] * n
        for j in range(1, n):
            nrank[order[j]] = nrank[order[j - 1]] + (
                0 if key(order[j - 1]) == key(order[j]) else 1
            )
        nrank[order[0]] = 0
        rank = nrank
        if rank[order[-1]] == n - 1:
            break
        d *= 2
    if text.circular and d >= n:
        # ties after n compared symbols break by start index
        order.sort(key=lambda i: (rank[i], i))
    return order


_DIRECT_SORT_LIMIT = 4096


def build_suffix_array(text):
    """Sort all suffixes (rotations when circular) by direct comparison.

    Large inputs switch to prefix doubling; both paths produce the same
    unique order.
    """
    n = len(text)
    if text.circular and n > 1 and brute_period(text.symbols) < n:
        raise CircularPowerInput("circular text is a proper integer power")
    if n > _DIRECT_SORT_LIMIT:
        order = _suffix_array_doubling(text)
    elif text.circular:
        order = sorted(range(n), key=lambda i: _circular_key(text, i))
    else:
        order = sorted(range(n), key=lambda i: text.symbols[i:])
    return SuffixArray(order)


def invert_sa(sa):
    n = len(sa)
    inv = [0] * n
    for rank, pos in enumerate(sa.ranks_to_positions):
        inv[pos] = rank
    return InverseSuffixArray(inv)


def naive_lcp_pair(text, p, q):
    """Length of the longest common prefix of the suffixes at p and q.

    Circular texts compare periodic extensions, capped at n symbols.
    """
    n = len(text)
    if p == q:
        raise OutOfRange("positions must differ")
    length = 0
    if text.circular:
        while length < n and text.at(p + length) == text.at(q + length):
            length += 1
    else:
        while (p + length < n and q + length < n
               and text.symbols[p + length] == text.symbols[q + length]):
            length += 1
    return length


def kasai_lcp(text, sa):
    """LCP array of adjacent suffix-array ranks.

    Non-circular texts use the linear-time single-pass construction;
    circular texts fall back to capped pairwise comparison.
    """
    n = len(text)
    isa = invert_sa(sa)
    lcp = [0] * n
    if text.circular:
        for i in range(1, n):
            lcp[i] = naive_lcp_pair(text, sa[i - 1], sa[i])
        return LcpArray(lcp)
    s = text.symbols
    h = 0
    for pos in range(n):
        r = isa[pos]
        if r > 0:
            prev = sa[r - 1]
            while (pos + h < n and prev + h < n
                   and s[pos + h] == s[prev + h]):
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return LcpArray(lcp)


def permute_lcp(lcp, isa):
    if len(lcp) != len(isa):
        raise LengthMismatch("LCP and ISA lengths differ")
    return PlcpArray([lcp[isa[i]] for i in range(len(isa))])


def build_bwt(text, sa, factory=None):
    n = len(text)
    s = text.symbols
    symbols = [s[(sa[i] + n - 1) % n] for i in range(n)]
    return Bwt(symbols, text.sigma, circular=text.circular, factory=factory)


def sample_isa(isa, rate):
    if rate < 1:
        raise OutOfRange("sampling rate must be at least 1")
    n = len(isa)
    return SampledIsa(rate=rate, n=n,
                      ranks=[isa[i] for i in range(0, n, rate)])
