import numpy as np
import pytest
from decouple import config

from newtonlab.frontend.raster import CYCLE_LABEL, UNDECIDED_LABEL, BasinRaster, Viewport
from newtonlab.frontend.render import (Overlay, Palette, image_array, parse_ppm, petal_axis, png_bytes, ppm_bytes,
                                       render)
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.orbits.model.grid import GridKernel, classify_grid
from newtonlab.orbits.model.iteration import OrbitRules
from newtonlab.polyalg.complexpoly import ComplexPoly

TEST_ENV = config('TEST_ENV', default='quick')
SYMMETRY_SIDE = 512 if TEST_ENV == 'full' else 64


def constant_raster(label: int, side: int = 1, iterations: int = 0, root_count: int = 1, petal_count: int = 0):
    labels = np.full((side, side), label)
    steps = np.full((side, side), iterations)
    return BasinRaster(Viewport.square(1), labels, steps, root_count, petal_count)


class TestPPM:

    def test_single_pixel(self):
        data = render(constant_raster(0))
        assert len(data) == 14
        assert data.startswith(b'P6\n1 1\n255\n')
        assert data[11:] == ppm_bytes(image_array(constant_raster(0)))[11:]

    def test_header(self):
        data = ppm_bytes(np.zeros((1024, 1024, 3), dtype=np.uint8))
        assert data[:17] == b'P6\n1024 1024\n255\n'
        assert len(data) == 17 + 3 * 1024 * 1024

    def test_grammar(self):
        raster = BasinRaster(Viewport(-1, 1, -0.5, 0.5), np.array([[0, 1, 2, CYCLE_LABEL], [UNDECIDED_LABEL, 0, 1, 2]]),
                             np.zeros((2, 4), dtype=int), 2, 1)
        image = parse_ppm(render(raster))
        assert image.shape == (2, 4, 3)
        assert np.array_equal(image, image_array(raster))
        with pytest.raises(ValueError):
            parse_ppm(render(raster) + b'\x00')
        with pytest.raises(ValueError):
            parse_ppm(b'P3\n1 1\n255\n000')
        with pytest.raises(ValueError):
            render(raster, image_format='gif')

    def test_png(self):
        pytest.importorskip('PIL')
        data = png_bytes(image_array(constant_raster(0, 4)))
        assert data.startswith(b'\x89PNG')


class TestPalette:

    def test_colors(self):
        palette = Palette(3, 2)
        table = palette.table()
        assert table.shape == (7, 3)
        assert len({tuple(row) for row in table[:3]}) == 3
        for row in table[3:5]:
            red, green, blue = row
            assert red > 0.9 and green > 0.6 and blue < 0.4
        assert np.all(table[5:] == 0)

    def test_special_labels_are_black(self):
        for label in [CYCLE_LABEL, UNDECIDED_LABEL]:
            assert np.all(image_array(constant_raster(label, 2)) == 0)

    def test_shading(self):
        plain = image_array(constant_raster(0, iterations=0)).astype(float)
        shaded = image_array(constant_raster(0, iterations=50)).astype(float)
        assert np.allclose(shaded, np.round(plain / 2), atol=1)
        assert np.array_equal(image_array(constant_raster(0, iterations=50), shading=False), plain)


class TestOverlay:

    def test_fixed_point_dot(self):
        raster = constant_raster(CYCLE_LABEL, 21)
        image = image_array(raster, overlay=Overlay(fixed_points=[0j]))
        assert np.all(image[10, 10] == 255)
        assert np.all(image[10, 13] == 0)
        assert np.all(image[10, 12] == 255)
        assert np.all(image[0, 0] == 0)

    def test_rays_and_petals(self):
        raster = constant_raster(CYCLE_LABEL, 21)
        ray = np.array([0, 0.5, 2.0])
        image = image_array(raster, overlay=Overlay(rays=[ray]))
        assert np.all(image[10, 10:] == 255)
        assert np.all(image[:10] == 0)

        axis = petal_axis(raster.viewport, -1j)
        assert abs(axis[0]) < 1e-15
        assert axis[-1].imag > 1 and abs(axis[-1].real) < 1e-12
        image = image_array(raster, overlay=Overlay(petal_directions=[-1j]))
        assert np.any(image[:10, 10] != 0)
        assert np.all(image[11:, 10] == 0)

    def test_critical_cross(self):
        image = image_array(constant_raster(CYCLE_LABEL, 21), overlay=Overlay(critical_points=[0j, complex('inf')]))
        assert np.any(image[10, 10] != 0)
        assert np.any(image[10, 8] != 0)
        assert np.all(image[8, 8] == 0)


class TestBasinImages:

    @classmethod
    def setup_class(cls):
        cls.cubic = build_newton_map(ComplexPoly([-1, 0, 0, 1]), ComplexPoly())
        # p = z^7 - 1 and q = z^5 give d = 12 and 5 petals at infinity
        cls.petals = build_newton_map(ComplexPoly([-1, 0, 0, 0, 0, 0, 0, 1]), ComplexPoly([0, 0, 0, 0, 0, 1]))

    def test_rotational_symmetry(self):
        N = TestBasinImages.cubic
        viewport = Viewport.square(2)
        raster = classify_grid(N, viewport, (SYMMETRY_SIDE, SYMMETRY_SIDE), max_steps=200, workers=1)
        kernel = GridKernel(OrbitRules(N), None, 0, 0, 200)
        roots = np.array(N.root_points())
        rotation = np.exp(2j * np.pi / 3)
        rng = np.random.default_rng(7)
        for row, col in rng.integers(0, SYMMETRY_SIDE, size=(100, 2)):
            z = viewport.row_points(int(row), SYMMETRY_SIDE, SYMMETRY_SIDE)[col]
            label = raster.labels[row, col]
            rotated, _ = kernel.classify_points(np.array([rotation * z]))
            if label < 0:
                assert rotated[0] == label
            else:
                assert abs(roots[rotated[0]] - rotation * roots[label]) < 1e-9

    def test_petal_map(self):
        N = TestBasinImages.petals
        assert N.d == 12
        assert N.n == 5
        raster = classify_grid(N, Viewport.square(6), (128, 128), max_steps=300, workers=1)
        assert raster.root_count == 7
        assert raster.petal_count == 5
        border = np.concatenate([raster.labels[0], raster.labels[-1], raster.labels[:, 0], raster.labels[:, -1]])
        assert {int(label) for label in border if label >= 7} == {7, 8, 9, 10, 11}
        assert sorted(raster.petal_labels_present()) == [0, 1, 2, 3, 4]
        for index, root in enumerate(N.root_points()):
            assert raster.label_at(root) == index

    def test_worker_determinism(self):
        N = TestBasinImages.petals
        viewport = Viewport.square(6)
        single = render(classify_grid(N, viewport, (32, 24), max_steps=200, workers=1))
        pooled = render(classify_grid(N, viewport, (32, 24), max_steps=200, workers=2))
        assert single == pooled
        assert len(single) == len(b'P6\n32 24\n255\n') + 3 * 32 * 24
