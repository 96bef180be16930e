"""Runtime limits.

The dimension cap bounds the side length of any dense operator the package
will materialize (default 2**13, about 1 GiB of complex128 per matrix).
Override with the QCHIPLET_MAX_DIM environment variable or set_dimension_cap.
"""

import os

from .errors import ConfigError, DimensionLimitError

DEFAULT_DIMENSION_CAP = 2**13

_cap = None


def get_dimension_cap() -> int:
    global _cap
    if _cap is None:
        raw = os.environ.get("QCHIPLET_MAX_DIM")
        if raw is None:
            _cap = DEFAULT_DIMENSION_CAP
        else:
            try:
                _cap = int(raw)
            except ValueError:
                raise ConfigError(f"QCHIPLET_MAX_DIM must be an integer, got {raw!r}")
            if _cap < 2:
                raise ConfigError("QCHIPLET_MAX_DIM must be at least 2")
    return _cap


def set_dimension_cap(value: int) -> None:
    global _cap
    if value < 2:
        raise ConfigError("dimension cap must be at least 2")
    _cap = value


def check_dimension(dim: int) -> None:
    """Raise DimensionLimitError if a dim x dim dense operator is too large."""
    cap = get_dimension_cap()
    if dim > cap:
        raise DimensionLimitError(
            f"dense operator dimension {dim} exceeds cap {cap}; "
            "use state-update mode or raise QCHIPLET_MAX_DIM"
        )
