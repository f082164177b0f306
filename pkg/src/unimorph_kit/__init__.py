"""UniMorph Kit: tools for UniMorph 4.0 inflection and derivation data."""

__version__ = "0.1.0"
