"""
This is the polynomial algebra package of NewtonLab. Here, you'll find the following:

- ``complexpoly.py`` - Contains the ``ComplexPoly`` class and polynomial arithmetic, evaluation and root finding.
- ``roots.py`` - The Aberth-Ehrlich solver, root clustering and polishing on raw coefficient arrays.
- ``ratmap.py`` - Contains the ``RatMap`` class: reduction, derivatives, the chart at infinity and Taylor expansions.

"""

from . import roots, complexpoly, ratmap
from .complexpoly import ComplexPoly
from .ratmap import RatMap

__all__ = ['roots', 'complexpoly', 'ratmap', 'ComplexPoly', 'RatMap', ]
