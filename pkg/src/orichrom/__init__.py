"""orichrom: desk-scale machinery for oriented chromatic numbers of random
directed graphs."""

from . import bounds, birkhoff, colouring, moments, product, randmodels, tournament

__all__ = [
    "bounds",
    "birkhoff",
    "colouring",
    "moments",
    "product",
    "randmodels",
    "tournament",
]

__version__ = "0.1.0"
