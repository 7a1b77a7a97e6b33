"""Decision engine for first-order statements about automatic sequences."""

__version__ = "0.1.0"
