"""News article quality indicators, expert reviews, and topic analytics."""

__version__ = "0.1.0"
