from pydantic import BaseModel, PrivateAttr

from vlsfbec.exceptions import FrozenInstanceError


class FreezableBaseModel(BaseModel):
    """
    A model that accepts assignments until ``freeze`` is called, after which
    any assignment raises FrozenInstanceError. Options are resolved against the
    config file in place, then frozen for the rest of the command.
    """

    _is_frozen: bool = PrivateAttr(default=False)

    def __setattr__(self, name, value):
        if self._is_frozen and name != "_is_frozen":
            raise FrozenInstanceError(
                f"cannot set {name} on {self.__class__.__name__}, it is frozen"
            )
        super().__setattr__(name, value)

    @property
    def is_frozen(self) -> bool:
        return self._is_frozen

    def freeze(self):
        """Freeze this model and every FreezableBaseModel held in its fields."""
        object.__setattr__(self, "_is_frozen", True)
        for name in self.model_fields:
            value = getattr(self, name)
            if isinstance(value, FreezableBaseModel) and not value.is_frozen:
                value.freeze()
        return self
