import pytest
from pydantic import ValidationError

from vlsfbec import constants as const
from vlsfbec.channel import (
    ChannelParams,
    RandomStream,
    Symbol,
    draw_base_vector,
    transmit,
    trial_streams,
)


class TestSymbol:
    def test_from_bit(self):
        assert Symbol.from_bit(0) is Symbol.ZERO
        assert Symbol.from_bit(1) is Symbol.ONE
        assert Symbol.ONE.bit == 1
        assert str(Symbol.ERASED) == "?"

    def test_erased_has_no_bit(self):
        with pytest.raises(ValueError):
            Symbol.ERASED.bit


class TestChannelParams:
    def test_defaults(self):
        params = ChannelParams(p=0.1)
        assert params.seed == const.DEFAULT_SEED
        assert params.capacity == pytest.approx(0.9)

    @pytest.mark.parametrize("p", [-0.1, 1.5])
    def test_invalid_p(self, p):
        with pytest.raises(ValidationError):
            ChannelParams(p=p)

    def test_invalid_seed(self):
        with pytest.raises(ValidationError):
            ChannelParams(p=0.1, seed=2**64)
        with pytest.raises(ValidationError):
            ChannelParams(p=0.1, seed=-1)


class TestRandomStream:
    def test_same_seed_same_sequence(self):
        a, b = RandomStream(42), RandomStream(42)
        assert [a.word(13) for _ in range(300)] == [b.word(13) for _ in range(300)]
        assert [a.uniform() for _ in range(300)] == [b.uniform() for _ in range(300)]

    def test_word_width(self):
        s = RandomStream(1)
        words = [s.word(100) for _ in range(200)]
        assert all(0 <= w < 2**100 for w in words)
        assert max(words) >= 2**96

    def test_invalid_width(self):
        with pytest.raises(ValueError):
            RandomStream(1).word(0)

    def test_algorithm(self):
        assert RandomStream(1).algorithm == "PCG64"

    def test_bulk_uniforms_match_single_draws(self):
        a, b = RandomStream(9), RandomStream(9)
        single = [a.uniform() for _ in range(700)]
        bulk = b.uniforms(3).tolist() + [b.uniform()] + b.uniforms(696).tolist()
        assert bulk == single
        assert all(0.0 <= u < 1.0 for u in single)

    def test_raw_continues_after_buffered_draws(self):
        a, b = RandomStream(4), RandomStream(4)
        expected = [a.raw64() for _ in range(600)]
        head = [b.raw64() for _ in range(10)]
        assert head + b.raw(590).tolist() == expected

    @pytest.mark.parametrize("nbits", [1, 3, 64, 100])
    def test_nonzero_words_match_rejection(self, nbits):
        a, b = RandomStream(5), RandomStream(5)
        expected = []
        while len(expected) < 400:
            w = a.word(nbits)
            if w:
                expected.append(w)
        words = b.nonzero_words(400, nbits)
        assert len(words) >= 400
        assert words[:400] == expected
        assert all(0 < w < 2**nbits for w in words)

    def test_single_bit_words_skip_zeros(self):
        assert set(RandomStream(2).nonzero_words(50, 1)) == {1}


class TestTrialStreams:
    def test_reproducible(self):
        a, b = trial_streams(7, 3), trial_streams(7, 3)
        for name in ("erasure", "common", "message"):
            sa, sb = getattr(a, name), getattr(b, name)
            assert [sa.raw64() for _ in range(10)] == [sb.raw64() for _ in range(10)]

    def test_trials_and_tags_differ(self):
        a, b = trial_streams(7, 3), trial_streams(7, 4)
        assert a.common.raw64() != b.common.raw64()
        c = trial_streams(7, 3)
        assert c.erasure.raw64() != c.common.raw64()

    def test_encoder_and_decoder_share_common_stream(self):
        """two copies of the common stream give the same base vectors"""
        enc, dec = trial_streams(11, 0).common, trial_streams(11, 0).common
        assert [draw_base_vector(enc, 8) for _ in range(50)] == [
            draw_base_vector(dec, 8) for _ in range(50)
        ]


class TestTransmit:
    def test_noiseless(self, streams):
        params = ChannelParams(p=0.0)
        for x in (0, 1) * 500:
            assert transmit(params, streams.erasure, x) is Symbol.from_bit(x)

    def test_dead_channel(self, streams):
        params = ChannelParams(p=1.0)
        assert all(transmit(params, streams.erasure, 1) is Symbol.ERASED for _ in range(1000))

    def test_never_flips(self, streams, half_erasure):
        outputs = {transmit(half_erasure, streams.erasure, 1) for _ in range(1000)}
        assert outputs == {Symbol.ONE, Symbol.ERASED}

    def test_erasure_fraction(self, streams, half_erasure):
        n = 100_000
        erased = sum(transmit(half_erasure, streams.erasure, 0) is Symbol.ERASED for _ in range(n))
        # 4 standard deviations of a Binomial(n, 1/2) fraction
        assert abs(erased / n - 0.5) < 4 * 0.5 / n**0.5

    def test_invalid_input(self, streams, half_erasure):
        with pytest.raises(ValueError):
            transmit(half_erasure, streams.erasure, 2)


class TestDrawBaseVector:
    def test_single_bit(self, streams):
        assert all(draw_base_vector(streams.common, 1).bits == 1 for _ in range(100))

    def test_uniform_over_nonzero(self, streams):
        n = 30_000
        counts = {1: 0, 2: 0, 3: 0}
        for _ in range(n):
            counts[draw_base_vector(streams.common, 2).bits] += 1
        for c in counts.values():
            assert abs(c / n - 1 / 3) < 0.012

    def test_never_zero(self, streams):
        assert not any(draw_base_vector(streams.common, 8).is_zero() for _ in range(100_000))

    def test_invalid_k(self, streams):
        with pytest.raises(ValueError):
            draw_base_vector(streams.common, 0)
