"""Simulated external memory.

Streams are append-once, read-sequentially containers of small records.
Tests run them over in-memory lists; the CLI runs them over temporary
files.  Either way the only operations offered are sequential, so a
compliant algorithm cannot accidentally perform random access: the one
escape hatch (``seek``) is counted and asserted zero after every run.
Rewinds between passes are counted separately.
"""

import os
import pickle
import shutil
import tempfile
from itertools import islice, repeat

from .errors import LengthMismatch

# Default stream buffer capacity, in items.  Buffers up to this size are
# considered I/O buffers and are excluded from resident-memory accounting.
STREAM_BUFFER_ITEMS = 65536


class MemoryMeter:
    """High-water marks of internal-memory container sizes, per owner."""

    def __init__(self):
        self.peaks = {}

    def note(self, owner, size):
        if size > self.peaks.get(owner, -1):
            self.peaks[owner] = size

    def peak(self, owner):
        return self.peaks.get(owner, 0)


class _MemoryBackend:
    def __init__(self, data=None):
        self.data = [] if data is None else data

    def append_chunk(self, chunk):
        self.data.extend(chunk)

    def finish_write(self):
        pass

    def chunks(self, start, capacity):
        data = self.data
        for i in range(start, len(data), capacity):
            yield data[i : i + capacity]

    def __len__(self):
        return len(self.data)

    def dispose(self):
        self.data = None


class _FileBackend:
    """Pickled chunk file.  Each chunk is one pickle frame."""

    def __init__(self, path):
        self.path = path
        self._fh = open(path, "wb")
        self._count = 0

    def append_chunk(self, chunk):
        pickle.dump(chunk, self._fh, protocol=pickle.HIGHEST_PROTOCOL)
        self._count += len(chunk)

    def finish_write(self):
        self._fh.close()
        self._fh = None

    def chunks(self, start, capacity):
        skip = start
        with open(self.path, "rb") as fh:
            while True:
                try:
                    chunk = pickle.load(fh)
                except EOFError:
                    return
                if skip:
                    if skip >= len(chunk):
                        skip -= len(chunk)
                        continue
                    chunk = chunk[skip:]
                    skip = 0
                yield chunk

    def __len__(self):
        return self._count

    def dispose(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None
        if os.path.exists(self.path):
            os.unlink(self.path)


class EmStream:
    """A write-once stream of records with sequential access only."""

    def __init__(self, backend, name="", capacity=STREAM_BUFFER_ITEMS):
        self._backend = backend
        self.name = name
        self.capacity = capacity
        self._writable = True
        self._buffer = []
        self._pos = 0
        self.rewinds = 0
        self.non_sequential = 0

    # -- writing ---------------------------------------------------------

    def append(self, item):
        buf = self._buffer
        buf.append(item)
        if len(buf) >= self.capacity:
            self._backend.append_chunk(buf)
            self._buffer = []

    def append_chunk(self, chunk):
        if len(self._buffer) + len(chunk) <= self.capacity:
            self._buffer.extend(chunk)
        else:
            if self._buffer:
                self._backend.append_chunk(self._buffer)
                self._buffer = []
            self._backend.append_chunk(chunk)

    def extend(self, items):
        it = iter(items)
        while True:
            chunk = list(islice(it, self.capacity))
            if not chunk:
                break
            self.append_chunk(chunk)

    def finish(self):
        """Seal the stream and position the read cursor at the start."""
        if self._writable:
            if self._buffer:
                self._backend.append_chunk(self._buffer)
                self._buffer = []
            self._backend.finish_write()
            self._writable = False
            self._pos = 0
        return self

    # -- reading ---------------------------------------------------------

    def rewind(self):
        assert not self._writable, "cannot rewind a stream still being written"
        self.rewinds += 1
        self._pos = 0
        return self

    def seek(self, pos):
        # Non-sequential access; compliant algorithms never call this.
        assert not self._writable
        self.non_sequential += 1
        self._pos = pos

    def chunks(self):
        """Yield buffered chunks from the cursor to the end."""
        assert not self._writable, "finish() the stream before reading"
        for chunk in self._backend.chunks(self._pos, self.capacity):
            self._pos += len(chunk)
            yield chunk

    def items(self):
        for chunk in self.chunks():
            yield from chunk

    def __iter__(self):
        return self.items()

    def __len__(self):
        return len(self._backend) + len(self._buffer)

    def dispose(self):
        self._backend.dispose()


class StreamFactory:
    """Creates streams over one backing store (memory or a temp dir)."""

    def __init__(self, directory=None, capacity=STREAM_BUFFER_ITEMS,
                 meter=None, keep_temp=False):
        self.directory = directory
        self.capacity = capacity
        self.meter = meter if meter is not None else MemoryMeter()
        self.keep_temp = keep_temp
        self.streams = []
        self._counter = 0
        self._owns_dir = False

    @classmethod
    def tempdir(cls, capacity=STREAM_BUFFER_ITEMS, meter=None, keep_temp=False,
                prefix="plcp-run-"):
        factory = cls(tempfile.mkdtemp(prefix=prefix), capacity, meter, keep_temp)
        factory._owns_dir = True
        return factory

    def stream(self, name="tmp"):
        self._counter += 1
        if self.directory is None:
            backend = _MemoryBackend()
        else:
            path = os.path.join(self.directory, "%s-%06d" % (name, self._counter))
            backend = _FileBackend(path)
        s = EmStream(backend, name=name, capacity=self.capacity)
        self.streams.append(s)
        return s

    def wrap(self, data, name="wrapped"):
        """Expose an existing in-memory sequence as a finished stream."""
        s = EmStream(_MemoryBackend(data), name=name, capacity=self.capacity)
        s._writable = False
        self.streams.append(s)
        return s

    def from_items(self, items, name="tmp"):
        s = self.stream(name)
        s.extend(items)
        return s.finish()

    def zeros(self, count, name="bits"):
        return self.from_items(repeat(0, count), name)

    # -- accounting ------------------------------------------------------

    def total_non_sequential(self):
        return sum(s.non_sequential for s in self.streams)

    def max_rewinds(self):
        return max((s.rewinds for s in self.streams), default=0)

    def release(self, *streams):
        for s in streams:
            if s in self.streams:
                self.streams.remove(s)
            s.dispose()

    def cleanup(self):
        if self._owns_dir and not self.keep_temp and self.directory:
            shutil.rmtree(self.directory, ignore_errors=True)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.cleanup()
        return False


def _key_bits(sigma):
    return max(1, (sigma - 1).bit_length())


def _binary_pass_pairs(src, bit, factory):
    """One stable binary bucket pass over (sym, payload) records."""
    out = factory.stream("sort0")
    ones = factory.stream("sort1")
    mask = 1 << bit
    for chunk in src.chunks():
        out.append_chunk([p for p in chunk if not p[0] & mask])
        ones.append_chunk([p for p in chunk if p[0] & mask])
    ones.finish()
    for chunk in ones.chunks():
        out.append_chunk(chunk)
    factory.release(ones)
    return out.finish()


def _binary_pass_ints(src, bit, factory):
    out = factory.stream("sort0")
    ones = factory.stream("sort1")
    mask = 1 << bit
    for chunk in src.chunks():
        out.append_chunk([v for v in chunk if not v & mask])
        ones.append_chunk([v for v in chunk if v & mask])
    ones.finish()
    for chunk in ones.chunks():
        out.append_chunk(chunk)
    factory.release(ones)
    return out.finish()


def em_stable_sort_by_symbol(pairs, sigma, factory):
    """Stable sort of a stream of (sym, payload) records, LSD over key bits.

    Every pass is one sequential read of the previous stream plus two
    sequential writes.
    """
    cur = pairs
    cur.rewind()
    first = True
    for bit in range(_key_bits(sigma)):
        nxt = _binary_pass_pairs(cur, bit, factory)
        if not first:
            factory.release(cur)
        cur, first = nxt, False
    return cur


def em_sort_symbols(stream, sigma, factory):
    """Like em_stable_sort_by_symbol for a stream of bare symbols."""
    cur = stream
    cur.rewind()
    first = True
    for bit in range(_key_bits(sigma)):
        nxt = _binary_pass_ints(cur, bit, factory)
        if not first:
            factory.release(cur)
        cur, first = nxt, False
    return cur


def em_lsd_sort(stream, key_index, key_bits, factory):
    """Stable LSD radix sort of tuple records by an integer component.

    Uses two-bit digits (four buckets per pass).
    """
    cur = stream
    cur.rewind()
    first = True
    for shift in range(0, max(1, key_bits), 2):
        buckets = [factory.stream("radix%d" % d) for d in range(4)]
        for chunk in cur.chunks():
            for d in range(4):
                buckets[d].append_chunk(
                    [t for t in chunk if (t[key_index] >> shift) & 3 == d]
                )
        if not first:
            factory.release(cur)
        out = buckets[0]
        for b in buckets[1:]:
            b.finish()
            for chunk in b.chunks():
                out.append_chunk(chunk)
        factory.release(*buckets[1:])
        cur, first = out.finish(), False
    return cur


def bin_un_bucket_sort(keys, sorted_data, factory):
    """Restore the pre-sort order of ``sorted_data`` from its binary keys.

    ``sorted_data`` must be the stable binary bucket sort of some original
    sequence, ``keys`` the key bits in original order.  Realized with two
    sequential passes over the keys: the sorted data is split into its zero
    prefix and one suffix, then consumed from the matching side while
    re-reading the keys.
    """
    if len(keys) != len(sorted_data):
        raise LengthMismatch(
            "keys has %d items, data has %d" % (len(keys), len(sorted_data))
        )
    keys.rewind()
    zero_count = 0
    for chunk in keys.chunks():
        zero_count += len(chunk) - sum(chunk)

    sorted_data.rewind()
    zeros = factory.stream("unsort0")
    ones = factory.stream("unsort1")
    taken = 0
    for chunk in sorted_data.chunks():
        if taken + len(chunk) <= zero_count:
            zeros.append_chunk(chunk)
        elif taken >= zero_count:
            ones.append_chunk(chunk)
        else:
            cut = zero_count - taken
            zeros.append_chunk(chunk[:cut])
            ones.append_chunk(chunk[cut:])
        taken += len(chunk)
    zeros.finish()
    ones.finish()

    keys.rewind()
    out = factory.stream("unsorted")
    zit = zeros.items()
    oit = ones.items()
    for chunk in keys.chunks():
        out.append_chunk([next(oit) if k else next(zit) for k in chunk])
    factory.release(zeros, ones)
    return out.finish()


def prepare_inverse_levels(keys, sigma, factory):
    """Per-bit key vectors needed to invert an LSD symbol sort.

    Level b holds bit b of the keys as they were ordered going *into*
    forward pass b, i.e. after sorting by bits 0..b-1.
    """
    levels = []
    cur = keys
    cur.rewind()
    first = True
    for bit in range(_key_bits(sigma)):
        mask = 1 << bit
        lvl = factory.stream("keylvl%d" % bit)
        for chunk in cur.chunks():
            lvl.append_chunk([1 if v & mask else 0 for v in chunk])
        levels.append(lvl.finish())
        if bit + 1 < _key_bits(sigma):
            cur.rewind()
            nxt = _binary_pass_ints(cur, bit, factory)
            if not first:
                factory.release(cur)
            cur, first = nxt, False
    if not first:
        factory.release(cur)
    return levels


def inverse_radix_sort(keys, sorted_data, sigma, factory, levels=None):
    """Inverse of em_stable_sort_by_symbol on the payload sequence.

    ``keys`` are the symbols in original order; ``sorted_data`` is any data
    stream ordered as if it had been carried through the forward sort.
    Precomputed ``levels`` (from prepare_inverse_levels) may be supplied
    when the same key sequence is inverted repeatedly.
    """
    owned = False
    if levels is None:
        if keys is None:
            raise LengthMismatch("either keys or levels must be given")
        if len(keys) != len(sorted_data):
            raise LengthMismatch(
                "keys has %d items, data has %d" % (len(keys), len(sorted_data))
            )
        levels = prepare_inverse_levels(keys, sigma, factory)
        owned = True
    data = sorted_data
    first = True
    for lvl in reversed(levels):
        nxt = bin_un_bucket_sort(lvl, data, factory)
        if not first:
            factory.release(data)
        data, first = nxt, False
    if owned:
        factory.release(*levels)
    return data
