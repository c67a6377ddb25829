"""hypat: discriminative pattern mining over mixed symbolic/numeric tables."""

__version__ = "0.1.0"
