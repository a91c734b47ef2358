from .model import (  # pragma: no cover  # noqa
    DecodeFailure,
    DecodingSchedule,
    EncodedSymbol,
    EncoderSpec,
    TrialOutcome,
)
from .vlsf import decode_at, encode_symbol, run_trial, run_trial_packed  # pragma: no cover  # noqa
