"""
Rendering of basin rasters to PPM (P6) bytes, with optional overlays for fixed points, critical points, channel rays
and petal directions. PNG output goes through Pillow when it is installed.
"""

from __future__ import annotations

import colorsys
import io
import logging
from typing import List, Sequence, Tuple

import numpy as np

from newtonlab import helpers
from newtonlab.frontend.raster import CYCLE_LABEL, UNDECIDED_LABEL, BasinRaster, Viewport

SHADING: float = 0.02  #: Label colours are scaled by ``1 / (1 + SHADING * count)``.
DOT_RADIUS: float = 3.0  #: Radius in pixels of a fixed point dot, black ring included.
RING_WIDTH: float = 1.0
CROSS_SIZE: int = 2
BLACK: Tuple[int, int, int] = (0, 0, 0)
WHITE: Tuple[int, int, int] = (255, 255, 255)
CRITICAL_COLOR: Tuple[int, int, int] = (230, 30, 30)
RAY_COLOR: Tuple[int, int, int] = (255, 255, 255)
PETAL_COLOR: Tuple[int, int, int] = (255, 140, 0)


class Palette:
    """
    Label colours: evenly spaced hues for root basins, a band of yellows for petals, black for cycles and undecided
    pixels.
    """

    def __init__(self, root_count: int, petal_count: int, saturation: float = 0.7, value: float = 0.95):
        self.root_count: int = root_count
        self.petal_count: int = petal_count
        self.saturation: float = saturation
        self.value: float = value

    def root_color(self, index: int) -> np.ndarray:
        rgb = colorsys.hsv_to_rgb((index / max(self.root_count, 1) + 0.55) % 1.0, self.saturation, self.value)
        return np.array(rgb)

    def petal_color(self, index: int) -> np.ndarray:
        # hues 0.11 to 0.18 stay in the yellow band
        hue = 0.11 + 0.07 * (index / max(self.petal_count - 1, 1))
        return np.array(colorsys.hsv_to_rgb(hue, 0.85 - 0.15 * (index % 2), 1.0))

    def table(self) -> np.ndarray:
        """
        RGB rows in ``[0, 1]``: roots first, then petals, then cycles and undecided pixels.
        """
        rows = [self.root_color(i) for i in range(self.root_count)]
        rows += [self.petal_color(i) for i in range(self.petal_count)]
        rows += [np.zeros(3), np.zeros(3)]
        return np.array(rows, dtype=float).reshape(-1, 3)

    def colors(self, labels: np.ndarray) -> np.ndarray:
        index = np.where(labels == CYCLE_LABEL, self.root_count + self.petal_count, labels)
        index = np.where(labels == UNDECIDED_LABEL, self.root_count + self.petal_count + 1, index)
        return self.table()[index]


class Overlay:
    """
    Points and polylines drawn over a rendered raster.
    """

    def __init__(self,
                 fixed_points: Sequence[complex] = (),
                 critical_points: Sequence[complex] = (),
                 rays: Sequence[np.ndarray] = (),
                 petal_directions: Sequence[complex] = ()):
        """
        Create a new overlay.

        :param fixed_points: drawn as white dots with a black ring.
        :param critical_points: drawn as small crosses.
        :param rays: polylines, channel rays.
        :param petal_directions: attracting directions in the chart at infinity, drawn as axes.
        """
        self.fixed_points: List[complex] = list(fixed_points)
        self.critical_points: List[complex] = list(critical_points)
        self.rays: List[np.ndarray] = list(rays)
        self.petal_directions: List[complex] = list(petal_directions)

    def is_empty(self) -> bool:
        return not (self.fixed_points or self.critical_points or self.rays or self.petal_directions)


def _pixel_centre(viewport: Viewport, z: complex, width: int, height: int) -> Tuple[float, float]:
    col = (z.real - viewport.xmin) / (viewport.xmax - viewport.xmin) * width - 0.5
    row = (viewport.ymax - z.imag) / (viewport.ymax - viewport.ymin) * height - 0.5
    return row, col


def _draw_dot(image: np.ndarray, viewport: Viewport, z: complex):
    height, width = image.shape[:2]
    row, col = _pixel_centre(viewport, z, width, height)
    reach = int(np.ceil(DOT_RADIUS))
    rows = np.arange(max(0, int(row) - reach), min(height, int(row) + reach + 2))
    cols = np.arange(max(0, int(col) - reach), min(width, int(col) + reach + 2))
    if rows.size == 0 or cols.size == 0:
        return
    distance = np.hypot(rows[:, None] - row, cols[None, :] - col)
    window = image[rows[0]:rows[-1] + 1, cols[0]:cols[-1] + 1]
    window[distance <= DOT_RADIUS] = BLACK
    window[distance <= DOT_RADIUS - RING_WIDTH] = WHITE


def _draw_cross(image: np.ndarray, viewport: Viewport, z: complex, color: Tuple[int, int, int]):
    height, width = image.shape[:2]
    pixel = viewport.pixel_of(z, width, height)
    if pixel is None:
        return
    row, col = pixel
    image[row, max(0, col - CROSS_SIZE):col + CROSS_SIZE + 1] = color
    image[max(0, row - CROSS_SIZE):row + CROSS_SIZE + 1, col] = color


def _draw_polyline(image: np.ndarray, viewport: Viewport, points: np.ndarray, color: Tuple[int, int, int]):
    height, width = image.shape[:2]
    points = np.asarray(points, dtype=complex)
    points = points[np.isfinite(points)]
    if points.size == 0:
        return
    # half a pixel between samples so segments show no gaps
    pixel = min((viewport.xmax - viewport.xmin) / width, (viewport.ymax - viewport.ymin) / height)
    dense = [points[:1]]
    for start, stop in zip(points[:-1], points[1:]):
        count = int(min(np.ceil(abs(stop - start) / (pixel / 2)), 4 * (width + height)))
        dense.append(start + (stop - start) * np.arange(1, count + 1) / max(count, 1))
    dense = np.concatenate(dense)
    cols = np.floor((dense.real - viewport.xmin) / (viewport.xmax - viewport.xmin) * width).astype(np.int64)
    rows = np.floor((viewport.ymax - dense.imag) / (viewport.ymax - viewport.ymin) * height).astype(np.int64)
    inside = (cols >= 0) & (cols < width) & (rows >= 0) & (rows < height)
    image[rows[inside], cols[inside]] = color


def petal_axis(viewport: Viewport, direction: complex, samples: int = 256) -> np.ndarray:
    """
    Points of the z-plane along an attracting direction ``v`` of the chart ``w = 1/z``, from the viewport centre to
    beyond its corners.
    """
    centre = complex((viewport.xmin + viewport.xmax) / 2, (viewport.ymin + viewport.ymax) / 2)
    reach = abs(complex(viewport.xmax, viewport.ymax) - centre) + abs(centre)
    heading = np.conj(direction) / abs(direction)
    return centre + heading * np.linspace(0, reach, samples)


def image_array(raster: BasinRaster, palette: Palette | None = None, overlay: Overlay | None = None,
                shading: bool = True) -> np.ndarray:
    """
    Colour a raster.

    :param raster: the classified raster.
    :param palette: label colours, the default palette for the raster's label counts when omitted.
    :param overlay: marks drawn on top.
    :param shading: darken pixels by their iteration count.
    :return: a ``height x width x 3`` array of bytes.
    """
    palette = palette or Palette(raster.root_count, raster.petal_count)
    colors = palette.colors(raster.labels)
    if shading:
        colors = colors / (1.0 + SHADING * raster.iterations)[..., None]
    image = np.round(255 * colors).astype(np.uint8)
    if overlay is None or overlay.is_empty():
        return image
    for ray in overlay.rays:
        _draw_polyline(image, raster.viewport, ray, RAY_COLOR)
    for direction in overlay.petal_directions:
        _draw_polyline(image, raster.viewport, petal_axis(raster.viewport, direction), PETAL_COLOR)
    for z in overlay.critical_points:
        if not helpers.is_infinity(z):
            _draw_cross(image, raster.viewport, complex(z), CRITICAL_COLOR)
    for z in overlay.fixed_points:
        if not helpers.is_infinity(z):
            _draw_dot(image, raster.viewport, complex(z))
    return image


def ppm_bytes(image: np.ndarray) -> bytes:
    """
    Encode an RGB byte array as binary PPM.
    """
    height, width = image.shape[:2]
    header = 'P6\n{} {}\n255\n'.format(width, height).encode('ascii')
    return header + np.ascontiguousarray(image, dtype=np.uint8).tobytes()


def parse_ppm(data: bytes) -> np.ndarray:
    """
    Decode binary PPM written by :py:func:`ppm_bytes`.

    :param data: the file contents.
    :return: the ``height x width x 3`` array.
    :raises ValueError: if the data is not a P6 image with maxval 255 and exactly ``3 w h`` pixel bytes.
    """
    parts = data.split(b'\n', 3)
    if len(parts) != 4 or parts[0] != b'P6' or parts[2] != b'255':
        raise ValueError('Not a P6 image with maxval 255')
    try:
        width, height = (int(value) for value in parts[1].split(b' '))
    except ValueError:
        raise ValueError('Invalid PPM dimensions {!r}'.format(parts[1]))
    if len(parts[3]) != 3 * width * height:
        raise ValueError('Expected {} pixel bytes, got {}'.format(3 * width * height, len(parts[3])))
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(height, width, 3)


def png_bytes(image: np.ndarray) -> bytes:
    """
    Encode an RGB byte array as PNG.

    :raises ImportError: if Pillow is not installed.
    """
    try:
        from PIL import Image
    except ImportError:
        raise ImportError('PNG output needs Pillow, install newtonlab[png]')
    buffer = io.BytesIO()
    Image.fromarray(np.ascontiguousarray(image, dtype=np.uint8), 'RGB').save(buffer, format='PNG')
    return buffer.getvalue()


def render(raster: BasinRaster,
           palette: Palette | None = None,
           overlay: Overlay | None = None,
           image_format: str = 'ppm',
           shading: bool = True) -> bytes:
    """
    Render a raster to image bytes. The output depends only on the raster, so identical runs give identical bytes.

    :param raster: the classified raster.
    :param palette: label colours.
    :param overlay: marks drawn on top.
    :param image_format: ``ppm`` or ``png``.
    :param shading: darken pixels by their iteration count.
    :return: the encoded image.
    :raises ValueError: for an unknown format.
    """
    image = image_array(raster, palette, overlay, shading)
    if image_format == 'ppm':
        data = ppm_bytes(image)
    elif image_format == 'png':
        data = png_bytes(image)
    else:
        raise ValueError('Unknown image format {}'.format(image_format))
    logging.debug('Rendered {}x{} {} image, {} bytes'.format(raster.width, raster.height, image_format, len(data)))
    return data
