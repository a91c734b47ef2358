from typing import Any, Dict

from pydantic import ConfigDict, Field

from .freezable_basemodel import FreezableBaseModel


class ConfigFile(FreezableBaseModel):
    """
    This model is used to validate and deserialize the configuration file.
    """

    model_config = ConfigDict(extra="forbid")

    options: Dict[str, Any] = Field(
        {}, description="Option values by field name, overlaps with command line options"
    )
    description: str | None = Field(
        None, description="Free text describing the experiment the file reproduces."
    )
