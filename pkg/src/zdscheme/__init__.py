"""zdscheme: exact invariants of finite point schemes in projective space.

Builds the homogeneous coordinate ring of a reduced zero-dimensional
subscheme of P^n over the rationals and computes, in exact arithmetic, its
Hilbert function, separators, complementary module, Dedekind and Kaehler
differents, conductor and trace ideal, together with the Cayley-Bacharach /
Gorenstein-type classification flags.
"""

__version__ = "0.1.0"

from .scheme import (ZeroDimScheme, build_scheme, load_scheme, parse_scheme,
                     scheme_from_rational_points)

__all__ = [
    "ZeroDimScheme",
    "build_scheme",
    "load_scheme",
    "parse_scheme",
    "scheme_from_rational_points",
    "__version__",
]
