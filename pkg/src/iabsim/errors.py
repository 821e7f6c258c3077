class ConfigError(ValueError):
    """Invalid configuration value or document; message names the offending key."""
