"""Transform calculus, Gaussian windows, modular-group trace sums and large-sieve skeletons."""

__version__ = "0.1.0"

from ._backend import BACKEND  # noqa: F401
