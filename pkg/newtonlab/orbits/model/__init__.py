"""
This is the model of the orbits package. Here, you'll find the following:

- ``orbitrecord.py`` - Contains the ``Outcome``, ``OrbitRecord`` and ``CriticalOrbit`` classes.
- ``iteration.py`` - Contains the ``OrbitRules`` and ``PetalGeometry`` classes, orbit iteration and petal directions.
- ``grid.py`` - Contains the ``GridKernel`` class and row-parallel grid classification.
- ``basins.py`` - Immediate basin tests, entry times, postcritical orbits, relations and component centers.
- ``pcm.py`` - Contains the ``PCMReport`` class and the postcritically-minimal check.

"""

from . import orbitrecord, iteration, grid, basins, pcm

__all__ = ['orbitrecord', 'iteration', 'grid', 'basins', 'pcm', ]
