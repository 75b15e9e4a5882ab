"""Exact computations for quantum symmetric pairs at odd roots of unity.

Cyclotomic q-arithmetic, star root data, rank-one iota-divided powers and the
quantum Frobenius morphism, checked at desk scale.
"""

from ifrob.exactring import (
    CycloElem,
    CyclotomicRing,
    GENERIC,
    LaurentPoly,
    cyclo_poly,
    qbinom,
    qbinom_squared,
    qfact,
    qint,
    reduce_mod,
)

__all__ = [
    "CycloElem",
    "CyclotomicRing",
    "GENERIC",
    "LaurentPoly",
    "cyclo_poly",
    "qbinom",
    "qbinom_squared",
    "qfact",
    "qint",
    "reduce_mod",
]

__version__ = "0.1.0"
