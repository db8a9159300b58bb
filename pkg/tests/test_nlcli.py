import json
import os

import numpy as np
import pytest

from newtonlab.cli import nlcli
from newtonlab.cli.nlcli import run_cli
from newtonlab.frontend import render
from newtonlab.frontend.report import report_parse

Z_SQUARED_MINUS_ONE = "-1+0i,0+0i,1+0i"
CUBIC = "-1,0,0,1"


class TestNewtonLabCli:

    @staticmethod
    def report(capsys) -> dict:
        return report_parse(capsys.readouterr().out)

    def test_blaschke(self, capsys):
        code = run_cli(['blaschke', '--k', '2', '--target-multiplier', '0.5'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert list(data)[0] == 'version'
        assert data['b'] == pytest.approx(0.2, abs=1e-9)
        assert data['alpha'] == pytest.approx(2 - np.sqrt(3), abs=1e-9)
        assert data['triple_root_check']['passed'] is True
        assert data['warnings'] == []

        code = run_cli(['blaschke', '--k', '3'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['b'] == pytest.approx(0.5)
        assert data['alpha'] == 1.0

    def test_blaschke_failure(self, capsys):
        code = run_cli(['blaschke', '--k', '1'])
        assert code == 1
        data = TestNewtonLabCli.report(capsys)
        assert data['error']['stage'] == 'blaschke'
        assert 'at least 2' in data['error']['message']

    def test_build(self, capsys):
        code = run_cli(['build', '--p', Z_SQUARED_MINUS_ONE, '--q', '0+0i'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['degree'] == 2
        assert data['n'] == 0
        num = np.array(data['num'], dtype=complex)
        den = np.array(data['den'], dtype=complex)
        for z in (0.3 + 0.7j, -1.2 + 0.1j, 2.5j):
            value = np.polyval(num[::-1], z) / np.polyval(den[::-1], z)
            assert abs(value - (z ** 2 + 1) / (2 * z)) < 1e-12
        assert len(data['fixed_points']) == 3
        multipliers = [point['multiplier'] for point in data['fixed_points'] if point['m'] == 1]
        assert len(multipliers) == 2
        assert all(abs(m) < 1e-9 for m in multipliers)

    def test_usage_errors(self, capsys):
        # Missing p
        assert run_cli(['build']) == 2
        # No subcommand
        assert run_cli([]) == 2
        # Bad coefficients
        assert run_cli(['build', '--p', '1,x,2']) == 2
        # Resolution outside 1..4096
        assert run_cli(['build', '--p', CUBIC, '--resolution', '0']) == 2
        # Missing start point
        assert run_cli(['orbit', '--p', CUBIC]) == 2
        # Missing image
        assert run_cli(['render', '--p', CUBIC]) == 2
        # Bad marking
        assert run_cli(['channel', '--p', CUBIC, '--mark', '0-1']) == 2
        capsys.readouterr()

    def test_config(self, capsys, tmp_path):
        conf_file = tmp_path / 'conf.json'
        conf_file.write_text(json.dumps({'p': [-1, 0, 1], 'q': [[0, 0]], 'unknown': 1}))
        code = run_cli(['build', '--config', str(conf_file)])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['degree'] == 2

        # Command line wins over the file
        code = run_cli(['build', '--config', str(conf_file), '--p', CUBIC])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['degree'] == 3

        conf_file.write_text('{"p": [1, 0, ')
        code = run_cli(['build', '--config', str(conf_file)])
        assert code == 1
        data = TestNewtonLabCli.report(capsys)
        assert data['error']['stage'] == 'config'

        code = run_cli(['build', '--config', str(tmp_path / 'missing.json')])
        assert code == 1
        data = TestNewtonLabCli.report(capsys)
        assert data['error']['stage'] == 'config'

    def test_out(self, capsys, tmp_path):
        out = tmp_path / 'report.json'
        code = run_cli(['blaschke', '--k', '2', '--out', str(out)])
        assert code == 0
        assert capsys.readouterr().out == ''
        data = report_parse(out.read_text(encoding='utf-8'))
        assert data['b'] == pytest.approx(1 / 3)

    def test_log_dir(self, capsys, tmp_path):
        code = run_cli(['blaschke', '--k', '2', '--log-dir', str(tmp_path), '--log-level', 'debug'])
        assert code == 0
        capsys.readouterr()
        logs = [name for name in os.listdir(tmp_path) if name.startswith('NewtonLab_') and name.endswith('.log')]
        assert len(logs) == 1

        code = run_cli(['blaschke', '--k', '2', '--log-dir', str(tmp_path / 'missing')])
        assert code == 1
        capsys.readouterr()

    def test_orbit(self, capsys):
        code = run_cli(['orbit', '--p', Z_SQUARED_MINUS_ONE, '--z0', '1.2,0.1'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['orbit']['outcome']['kind'] == 'converged_to'
        assert data['orbit']['start'] == 1.2 + 0.1j
        assert abs(data['orbit']['points'][-1] - 1) < 1e-6

    def test_pcm_check(self, capsys):
        code = run_cli(['pcm-check', '--p', '0,1', '--q', '0,1'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['overall'] == 'pass'
        assert data['n'] == 1

        code = run_cli(['pcm-check', '--p', CUBIC])
        assert code == 1
        data = TestNewtonLabCli.report(capsys)
        assert data['error']['stage'] == 'pcm-check'

    def test_render(self, capsys, tmp_path):
        image = tmp_path / 'basins.ppm'
        code = run_cli(['render', '--p', CUBIC, '--resolution', '16', '--viewport', '-2,2,-2,2',
                        '--image', str(image), '--workers', '1', '--fixed-points', '--critical-points'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        content = image.read_bytes()
        assert content.startswith(b'P6\n16 16\n255\n')
        assert render.parse_ppm(content).shape == (16, 16, 3)
        assert data['image'] == {'path': str(image), 'format': 'ppm', 'bytes': len(content)}
        assert data['raster']['width'] == 16
        assert sum(data['raster']['label_counts'].values()) == 256

    def test_surgery_check(self, capsys):
        code = run_cli(['surgery-check', '--k', '2', '--mmax', '16', '--grid', '8'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['verdict'] == 'pass'

        code = run_cli(['surgery-check', '--k', '2', '--r', '0.1'])
        assert code == 1
        data = TestNewtonLabCli.report(capsys)
        assert data['error']['stage'] == 'surgery-check'

    def test_surgery_pipeline(self, capsys):
        code = run_cli(['surgery-pipeline', '--p', CUBIC, '--workers', '1'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['verdict'] == 'pass'

        code = run_cli(['surgery-pipeline', '--p', CUBIC, '--workers', '1', '--mark', '0:1,0:1'])
        assert code == 1
        data = TestNewtonLabCli.report(capsys)
        assert 'share a basin' in data['error']['message']

        # bare basin indices mark the first ray of each basin
        code = run_cli(['surgery-pipeline', '--p', CUBIC, '--workers', '1', '--mark', '0'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['markings'] == [{'basin': 0, 'j': 1}]
        assert len(data['basins']) == 1
        assert data['basins'][0]['k'] == 2
        assert data['basins'][0]['b'] == pytest.approx(0.2, abs=1e-10)
        assert data['model_conjugacy_max'] < 1e-12
        assert data['david_integration'] == 'not performed (out of scope)'
        assert data['verdict'] == 'pass'

        code = run_cli(['surgery-pipeline', '--p', CUBIC, '--workers', '1', '--mark', '0,1,2'])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert data['markings'] == [{'basin': basin, 'j': 1} for basin in range(3)]
        assert sorted(entry['basin'] for entry in data['basins']) == [0, 1, 2]

    def test_channel(self, capsys, tmp_path):
        rays = tmp_path / 'rays.csv'
        code = run_cli(['channel', '--p', CUBIC, '--workers', '1', '--mark', '0:1', '--csv', str(rays)])
        assert code == 0
        data = TestNewtonLabCli.report(capsys)
        assert len(data['rays']) == 3
        assert data['n_marked'] == 1
        lines = rays.read_text(encoding='utf-8').splitlines()
        assert lines[0] == 'basin,j,re,im'
        assert len(lines) == 1 + sum(ray['vertices'] for ray in data['rays'])

    def test_attach_values(self):
        argv = ['build', '--p', '-1+0i,0+0i,1+0i', '--q', '-2', '--log-level', 'debug']
        assert nlcli.attach_values(argv) == ['build', '--p=-1+0i,0+0i,1+0i', '--q=-2', '--log-level', 'debug']
        assert nlcli.attach_values(['build', '--p']) == ['build', '--p']

    def test_resolution(self):
        assert nlcli.resolution('64') == [64, 64]
        assert nlcli.resolution('32x16') == [32, 16]
        with pytest.raises(ValueError):
            nlcli.resolution('1x2x3')
