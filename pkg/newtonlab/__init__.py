"""
This is the main package for NewtonLab, a numerical laboratory for Newton maps of ``p(z)e^{q(z)}``.

- ``polyalg`` - dense complex polynomials and rational maps.
- ``newton`` - construction of the Newton map, its fixed points and critical points.
- ``orbits`` - orbit iteration, basin classification and postcritical checks.
- ``blaschke`` - the disk-model Blaschke products and Möbius factors.
- ``surgery`` - model map, dilatation estimates and the area condition.
- ``channel`` - Böttcher charts, internal rays and channel diagrams.
- ``frontend`` - rasters, image rendering and report serialisation.
- ``cli`` - the ``newtonlab`` command line.
- ``helpers`` - helpers shared by all of the above.
- ``errors`` - the exception hierarchy.

"""

from . import helpers
from . import errors

__version__ = '0.1.0'

__all__ = ['helpers', 'errors', ]
