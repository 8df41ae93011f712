"""Substitutability checker for choice functions induced by preference lists."""
__version__ = "1.0.0"

# Identifies which polarity of the sensitivity test the fast checker uses.
POLARITY_NOTE = "sens-polarity: witness requires Y insensitive to x"
