from .bec import (  # pragma: no cover  # noqa
    ChannelParams,
    RandomStream,
    Symbol,
    TrialStreams,
    draw_base_vector,
    transmit,
    trial_streams,
)
