"""Exception types shared across the simulator."""


class ConfigurationError(ValueError):
    """Invalid scenario, scheme or parameter choice."""


class InputShapeError(ValueError):
    """Array lengths or shapes that do not fit the operation."""
