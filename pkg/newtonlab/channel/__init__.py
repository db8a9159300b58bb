"""
This is the channel package of NewtonLab. Here, you'll find the following:

- ``model`` - Boettcher charts, fixed internal rays and channel diagrams.
- ``controller.py`` - Contains the ``ChannelController`` class.

"""

from . import model
from . import controller

__all__ = ['model', 'controller', ]
