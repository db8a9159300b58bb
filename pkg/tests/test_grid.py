import numpy as np

from newtonlab.frontend.raster import CYCLE_LABEL, UNDECIDED_LABEL, Viewport
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.orbits.model.grid import GridKernel, classify_grid
from newtonlab.orbits.model.iteration import OrbitRules, iterate
from newtonlab.polyalg.complexpoly import ComplexPoly


class TestClassifyGrid:

    @classmethod
    def setup_class(cls):
        cls.quadratic = build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly())
        cls.exponential = build_newton_map(ComplexPoly([0, 1]), ComplexPoly([0, 1]))

    def test_half_planes(self):
        raster = classify_grid(TestClassifyGrid.quadratic, Viewport.square(2), (16, 16), max_steps=200, workers=1)
        assert raster.labels.shape == (16, 16)
        assert np.all(raster.labels[:, :8] == 0)
        assert np.all(raster.labels[:, 8:] == 1)
        assert raster.root_count == 2
        assert raster.petal_count == 0
        assert raster.summary()['label_counts'] == {'root:0': 128, 'root:1': 128}

    def test_workers(self):
        viewport = Viewport(-3, 1, -2, 2)
        single = classify_grid(TestClassifyGrid.exponential, viewport, (12, 9), max_steps=300, workers=1)
        pooled = classify_grid(TestClassifyGrid.exponential, viewport, (12, 9), max_steps=300, workers=3)
        assert np.array_equal(single.labels, pooled.labels)
        assert np.array_equal(single.iterations, pooled.iterations)
        assert 0 in single.petal_labels_present()

    def test_single_pixel(self):
        for center in [-2.5 + 0.3j, 0.7 - 0.2j, -0.4 + 1.1j]:
            raster = classify_grid(TestClassifyGrid.exponential, Viewport.square(0.01, center), (1, 1),
                                   max_steps=500, workers=1)
            pixel = Viewport.square(0.01, center).row_points(0, 1, 1)[0]
            rules = OrbitRules(TestClassifyGrid.exponential)
            record = iterate(TestClassifyGrid.exponential, pixel, 500, rules=rules)
            assert raster.labels[0, 0] == rules.label_of(record.outcome)
            assert raster.iterations[0, 0] == record.steps

    def test_kernel_matches_iterate(self):
        rng = np.random.default_rng(3)
        points = rng.uniform(-3, 3, 40) + 1j * rng.uniform(-3, 3, 40)
        rules = OrbitRules(TestClassifyGrid.exponential)
        labels, steps = GridKernel(rules, None, 0, 0, 400).classify_points(points)
        for z, label, count in zip(points, labels, steps):
            record = iterate(TestClassifyGrid.exponential, z, 400, rules=rules)
            assert label == rules.label_of(record.outcome)
            assert count == record.steps

    def test_special_labels(self):
        cyclic = build_newton_map(ComplexPoly([2, -2, 0, 1]), ComplexPoly())
        rules = OrbitRules(cyclic)
        labels, steps = GridKernel(rules, None, 0, 0, 1).classify_points(np.array([0, 1, 10]))
        assert labels[0] == UNDECIDED_LABEL
        labels, steps = GridKernel(rules, None, 0, 0, 10).classify_points(np.array([0, rules.roots[0]]))
        assert labels[0] == CYCLE_LABEL
        assert steps[0] == 4
        assert labels[1] == CYCLE_LABEL
        assert steps[1] == 0
