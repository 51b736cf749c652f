"""Base helpers shared by all domain models."""

from collections.abc import Iterable

import numpy as np
from numpy.typing import ArrayLike, NDArray


def frozen_array(values: ArrayLike, ndim: int | None = None) -> NDArray[np.float64]:
    """Copy values into a read-only float64 array.

    Domain models are immutable after construction, so every array they hold
    is a private copy with the write flag cleared.
    """
    array = np.array(values, dtype=np.float64, copy=True)
    if ndim is not None and array.ndim != ndim:
        raise ValueError(f"Expected a {ndim}-dimensional array, got shape {array.shape}")
    array.setflags(write=False)
    return array


def format_vector(values: Iterable[float], digits: int = 4) -> str:
    """Compact textual form of a probability or utility vector."""
    return "(" + ", ".join(f"{float(v):.{digits}g}" for v in values) + ")"


class ReprMixin:
    """Mixin giving models a short representation built from `_repr_fields`."""

    _repr_fields: tuple[str, ...] = ()

    def __repr__(self) -> str:
        """String representation of the model."""
        parts = []
        for name in self._repr_fields:
            value = getattr(self, name)
            if isinstance(value, np.ndarray):
                value = format_vector(value.ravel())
            parts.append(f"{name}={value}")
        return f"<{self.__class__.__name__}({', '.join(parts)})>"
