"""
This is the frontend package of NewtonLab. Here, you'll find the following:

- ``raster.py`` - Contains the ``Viewport``, ``BasinRaster`` and ``RunConfig`` classes.
- ``render.py`` - Colours rasters and writes PPM or PNG images with overlays.
- ``report.py`` - Serializes reports to JSON and parses them back.

"""

from . import raster
from . import render
from . import report

__all__ = ['raster', 'render', 'report', ]
