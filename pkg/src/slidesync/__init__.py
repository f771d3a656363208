"""Speech-to-slide alignment, evaluation and highlighting."""

__version__ = "0.1.0"
