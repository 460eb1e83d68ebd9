import pytest

from conftest import abbab, banana, make_fixture, random_text
from plcpbits import StreamFactory, reconstruct_text, reorder_pd
from plcpbits.errors import RateMismatch
from plcpbits.reorder import emit_k, position_counts
from plcpbits.rounds import run_rounds_external, run_rounds_internal
from plcpbits.textcore import SampledIsa


def test_banana_reorder():
    fx = banana()
    pd = run_rounds_internal(fx.bwt).pd
    k = reorder_pd(pd, fx.bwt, fx.sisa(3))
    assert k.bit_string() == "01000011110101"
    assert k.shift == 0


def test_reorder_rate_one():
    fx = banana()
    pd = run_rounds_internal(fx.bwt).pd
    assert reorder_pd(pd, fx.bwt, fx.sisa(1)).bit_string() == \
        "01000011110101"


def test_circular_position_counts():
    fx = abbab()
    pd = run_rounds_internal(fx.bwt).pd
    f = StreamFactory()
    counts = list(position_counts(pd, fx.bwt, fx.sisa(1), f).rewind().items())
    assert counts == [0, 0, 0, 1, 4]
    # rotation anchored right after a zero-PLCP position
    assert emit_k(f.wrap(counts), 5, shift=4).bit_string() == "0000111101"
    assert emit_k(f.wrap(counts), 5, shift=3).bit_string() == "0100001111"


def test_reorder_matches_oracle_across_rates(rng):
    for _ in range(25):
        n = rng.randrange(2, 120)
        sigma = rng.choice([2, 4, 16])
        fx = make_fixture(random_text(rng, n, sigma), sigma)
        f = StreamFactory()
        pd = run_rounds_external(fx.bwt, f).pd
        for rate in {1, 2, max(1, n.bit_length()), n}:
            k = reorder_pd(pd, fx.bwt, fx.sisa(rate), factory=f)
            assert k.bit_string() == fx.k_bits(), (n, sigma, rate)
        assert f.total_non_sequential() == 0


def test_rate_mismatch():
    fx = banana()
    pd = run_rounds_internal(fx.bwt).pd
    with pytest.raises(RateMismatch):
        reorder_pd(pd, fx.bwt, SampledIsa(rate=3, n=7, ranks=(4,)))


def test_reconstruct_banana():
    fx = banana()
    assert reconstruct_text(fx.bwt, fx.sisa(3)) == [2, 1, 3, 1, 3, 1, 0]
    # rate n: a single chain, plain BWT inversion
    assert reconstruct_text(fx.bwt, fx.sisa(7)) == [2, 1, 3, 1, 3, 1, 0]


def test_reconstruct_circular():
    fx = abbab()
    assert reconstruct_text(fx.bwt, fx.sisa(1)) == [0, 1, 1, 0, 1]


def test_reconstruct_random(rng):
    for _ in range(25):
        n = rng.randrange(2, 100)
        sigma = rng.choice([2, 4, 16])
        fx = make_fixture(random_text(rng, n, sigma), sigma)
        for rate in {1, 3, max(1, n.bit_length()), n}:
            got = reconstruct_text(fx.bwt, fx.sisa(rate))
            assert got == list(fx.text.symbols), (n, sigma, rate)
