"""
This is the model of the surgery package. Here, you'll find the following:

- ``disk.py`` - Contains the ``DiskSurgeryModel`` class, the quasiregular model map on the unit disk.
- ``sector.py`` - Contains the ``SectorModel`` class, the coordinate at a repelling fixed point and its extension.
- ``dilatation.py`` - Numerical dilatation, sampled dilatation fields and the fit of their area tails.
- ``areacondition.py`` - The area condition at infinity over the preimages of the sector.
- ``pipeline.py`` - Reports that combine the disk models, the sector model and the area condition.

"""

from . import disk, sector, dilatation, areacondition, pipeline

__all__ = ['disk', 'sector', 'dilatation', 'areacondition', 'pipeline', ]
