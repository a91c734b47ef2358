from .config_file import ConfigFile  # pragma: no cover  # noqa
from .freezable_basemodel import FreezableBaseModel  # pragma: no cover  # noqa
from .vlsf import MessagePolicy, OutputFormat, Scheme, SolverMethod  # pragma: no cover  # noqa
