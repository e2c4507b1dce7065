"""Shared exception and warning types."""


class ConfigError(ValueError):
    """Invalid scenario or model configuration; message names the offending field."""


class FrequencyRangeWarning(UserWarning):
    """Carrier frequency outside the 0.5-100 GHz validity range of the path-loss models."""
