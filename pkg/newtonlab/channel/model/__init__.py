"""
This is the model of the channel package. Here, you'll find the following:

- ``boettcher.py`` - Contains the ``BoettcherChart`` class, the local coordinate at a superattracting root.
- ``ray.py`` - Contains the ``Ray`` and ``ChannelDiagram`` classes, ray tracing, access counts and marking.

"""

from . import boettcher, ray

__all__ = ['boettcher', 'ray', ]
