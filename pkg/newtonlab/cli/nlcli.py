"""
The NewtonLab command line. Every subcommand builds what it needs through the controllers, and writes a JSON report
to stdout (or ``--out``). Failed stages write an error report and exit with code 1; argument errors exit with code 2.
"""
from __future__ import annotations

import argparse
import copy
import json
import logging
import os
import pathlib
import sys
from datetime import datetime
from typing import Callable, List, Tuple

from newtonlab import helpers
from newtonlab.blaschke.controller import BlaschkeController
from newtonlab.channel.controller import ChannelController
from newtonlab.errors import NewtonLabError
from newtonlab.frontend import render, report
from newtonlab.frontend.raster import RunConfig, Viewport
from newtonlab.newton.controller import NewtonController
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.orbits.controller import OrbitController
from newtonlab.orbits.model import iteration
from newtonlab.surgery.controller import SurgeryController
from newtonlab.surgery.model import pipeline

EXIT_ERROR: int = 1  #: Exit code of a failed computation.
EXIT_USAGE: int = 2  #: Exit code of an argument error, as argparse uses.
LOG_FORMAT: str = '%(asctime)s %(levelname)s: %(message)s'
LOG_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'critical': logging.CRITICAL
}
#: Options whose values may start with ``-``, e.g. ``--p -1+0i,0+0i,1+0i``.
VALUE_FLAGS: Tuple[str, ...] = ('--p', '--q', '--z0', '--viewport')


class NewtonLabCli:
    """
    Defines the functionality of the NewtonLab CLI.
    """

    SETTINGS = {
        'p': None,
        'q': '0',
        'viewport': [-2.0, 2.0, -2.0, 2.0],
        'resolution': [512, 512],
        'max_steps': OrbitController.MAX_STEPS,
        'grid_steps': OrbitController.GRID_STEPS,
        'eps_conv': OrbitController.EPS_CONV,
        'petal_radius': OrbitController.PETAL_RADIUS,
        'max_resolution': 4096,
        'workers': None,
        'image_format': 'ppm',
        'shading': True,
        'k': 2,
        'target_multiplier': None,
        'r': None,
        'lam': 2.0,
        'theta': pipeline.THETA,
        'mmax': 40,
        'grid': 16,
        'multiplier': pipeline.TARGET_MULTIPLIER,
        'area_depth': 1
    }

    def __init__(self, args: argparse.Namespace, parser: argparse.ArgumentParser):
        self.args = args
        self.parser = parser
        self.settings: dict = copy.deepcopy(NewtonLabCli.SETTINGS)
        self.warnings: List[str] = []
        self.config: RunConfig | None = None
        self.file_handler: logging.Handler | None = None
        self.logger = self.setup_logging()
        try:
            self.apply_settings()
        except SystemExit:
            self.close()
            raise

    def __process_return(self, cb: Callable, stage: str):
        """
        Process the return value of one of the controller methods. If there is an error, an error report is written and
        the CLI exits.

        :param cb: The controller function to run.
        :param stage: The stage named in the error report.
        :return: the data returned by the controller.
        """
        success, data = cb()
        if not success:
            self.fail(stage, data)
        return data

    def fail(self, stage: str, message: str) -> None:
        """
        Log a fatal error, write the error report and exit with :py:data:`EXIT_ERROR`.
        """
        logging.critical(message)
        self.write_report(report.error_report(stage, message, self.warnings))
        sys.exit(EXIT_ERROR)

    def write_report(self, text: str) -> None:
        if 'out' in self.args:
            try:
                self.args.out.write_text(text + '\n', encoding='utf-8')
                return
            except OSError as e:
                logging.critical('Could not write report to {}: {}'.format(self.args.out, e))
        print(text)

    def run(self) -> None:
        """
        Run the selected subcommand and write its report, with the warnings logged along the way.
        """
        commands = {
            'build': self.command_build,
            'orbit': self.command_orbit,
            'pcm-check': self.command_pcm_check,
            'render': self.command_render,
            'blaschke': self.command_blaschke,
            'surgery-check': self.command_surgery_check,
            'surgery-pipeline': self.command_surgery_pipeline,
            'channel': self.command_channel
        }
        handler = helpers.FunctionHandler(self.warnings.append)
        handler.setLevel(logging.WARNING)
        handler.addFilter(lambda record: record.levelno == logging.WARNING)
        handler.setFormatter(logging.Formatter('%(message)s'))
        logging.getLogger().addHandler(handler)
        try:
            result = commands[self.args.command]()
        finally:
            logging.getLogger().removeHandler(handler)
        result['warnings'] = self.warnings
        self.write_report(report.report_serialize(result))
        logging.info('{} completed'.format(self.args.command))

    def close(self) -> None:
        if self.file_handler is not None:
            logging.getLogger().removeHandler(self.file_handler)
            self.file_handler.close()

    def run_config(self) -> RunConfig:
        """
        Build and validate the run configuration from the merged settings, and hand its budgets to the orbit controller.
        Missing or invalid values are argument errors.

        :return: the configuration.
        """
        settings = self.settings
        if settings['p'] is None:
            self.parser.error('--p is required for {} (or "p" in the configuration file)'.format(self.args.command))
        try:
            config = RunConfig(NewtonLabCli.coefficients(settings['p']),
                               NewtonLabCli.coefficients(settings['q']),
                               Viewport.create_from_list(settings['viewport']),
                               (int(settings['resolution'][0]), int(settings['resolution'][1])),
                               settings['max_steps'], settings['grid_steps'], settings['eps_conv'],
                               settings['petal_radius'], settings['max_resolution'])
        except (TypeError, ValueError, IndexError) as e:
            self.parser.error('Invalid run configuration: {}'.format(e))
        problems = config.problems()
        if problems:
            self.parser.error('Invalid run configuration: {}'.format('; '.join(problems)))
        OrbitController.MAX_STEPS = config.max_steps
        OrbitController.GRID_STEPS = config.grid_steps
        OrbitController.EPS_CONV = config.eps_conv
        OrbitController.PETAL_RADIUS = config.petal_radius
        self.config = config
        return config

    @staticmethod
    def coefficients(value) -> List[complex]:
        """
        Read a coefficient list given either as an ``re+imi`` string or, in a configuration file, as a JSON list of
        numbers, ``[re, im]`` pairs or ``{"re", "im"}`` objects.
        """
        if isinstance(value, str):
            return helpers.parse_coefficients(value)
        coeffs = []
        for item in value:
            if isinstance(item, dict):
                coeffs.append(complex(item['re'], item['im']))
            elif isinstance(item, (list, tuple)):
                coeffs.append(complex(*item))
            else:
                coeffs.append(complex(item))
        return coeffs

    def newton_map(self) -> NewtonMapSpec:
        config = self.run_config()
        return self.__process_return(lambda: NewtonController.build_map(config.p, config.q), 'build')

    def markings(self) -> List[Tuple[int, int]]:
        if 'mark' not in self.args:
            return []
        return [pair for group in self.args.mark for pair in group]

    @staticmethod
    def map_header(N: NewtonMapSpec) -> dict:
        return {'p': list(N.p.coeffs), 'q': list(N.q.coeffs), 'degree': N.d, 'n': N.n}

    def command_build(self) -> dict:
        logging.info('Building Newton map...')
        self.newton_map()
        logging.info('Finding fixed points...')
        self.__process_return(NewtonController.find_fixed_points, 'fixed-points')
        logging.info('Finding critical points...')
        self.__process_return(NewtonController.find_critical_points, 'critical-points')
        return NewtonController.build_report()

    def command_orbit(self) -> dict:
        if 'z0' not in self.args:
            self.parser.error('--z0 is required for orbit')
        N = self.newton_map()
        z0 = self.args.z0
        record = self.__process_return(lambda: OrbitController.run_orbit(N, z0), 'orbit')
        result = NewtonLabCli.map_header(N)
        result['orbit'] = record.to_dict(include_points=True)
        if 'center' in self.args:
            logging.info('Finding the center of the component of {}...'.format(z0))
            result['center'] = self.__process_return(lambda: OrbitController.find_center(N, z0), 'center')
        return result

    def command_pcm_check(self) -> dict:
        N = self.newton_map()
        logging.info('Checking critical orbits...')
        pcm = self.__process_return(lambda: OrbitController.check_pcm(N), 'pcm-check')
        result = NewtonLabCli.map_header(N)
        result.update(pcm.to_dict())
        return result

    def overlay(self, N: NewtonMapSpec) -> render.Overlay:
        """
        Collect the overlays requested with ``--fixed-points``, ``--critical-points``, ``--petals`` and ``--rays``.
        """
        fixed, critical, rays, petals = [], [], [], []
        if 'fixed_points' in self.args:
            infos = self.__process_return(NewtonController.find_fixed_points, 'fixed-points')
            fixed = [info.location for info in infos]
        if 'critical_points' in self.args:
            critical = [point for point, _ in self.__process_return(NewtonController.find_critical_points,
                                                                    'critical-points')]
        if 'petals' in self.args and N.n > 0:
            try:
                petals = iteration.petal_directions(N)
            except NewtonLabError as e:
                self.fail('petals', 'Failed to compute petal directions: {}'.format(e))
        if 'rays' in self.args:
            diagram = self.__process_return(
                lambda: ChannelController.build_diagram(N, self.markings(), self.settings['workers']), 'channel')
            rays = [ray.polyline for ray in diagram.rays]
        return render.Overlay(fixed, critical, rays, petals)

    def command_render(self) -> dict:
        if 'image' not in self.args:
            self.parser.error('--image is required for render')
        N = self.newton_map()
        config = self.config
        logging.info('Classifying {}x{} pixels...'.format(*config.resolution))
        raster = self.__process_return(
            lambda: OrbitController.classify(N, config.viewport, config.resolution, self.settings['workers']), 'classify')
        overlay = self.overlay(N)
        image_format = self.settings['image_format']
        try:
            data = render.render(raster, overlay=overlay, image_format=image_format, shading=self.settings['shading'])
            self.args.image.write_bytes(data)
        except (ImportError, ValueError, OSError) as e:
            self.fail('render', 'Failed to render {}: {}'.format(self.args.image, e))
        result = NewtonLabCli.map_header(N)
        result['raster'] = raster.summary()
        result['image'] = {'path': str(self.args.image), 'format': image_format, 'bytes': len(data)}
        return result

    def command_blaschke(self) -> dict:
        settings = self.settings
        self.__process_return(lambda: BlaschkeController.build_model(settings['k'], settings['target_multiplier']),
                              'blaschke')
        return BlaschkeController.build_report()

    def command_surgery_check(self) -> dict:
        s = self.settings
        return self.__process_return(
            lambda: SurgeryController.check_model(s['k'], s['r'], s['lam'], s['theta'], s['mmax'], s['grid']),
            'surgery-check')

    def command_surgery_pipeline(self) -> dict:
        N = self.newton_map()
        markings = self.markings()
        settings = self.settings
        data = self.__process_return(
            lambda: SurgeryController.run_pipeline(N, markings, settings['multiplier'], settings['area_depth'],
                                                   settings['workers']),
            'surgery-pipeline')
        result = NewtonLabCli.map_header(N)
        result.update(data)
        return result

    def command_channel(self) -> dict:
        N = self.newton_map()
        logging.info('Tracing channel rays...')
        diagram = self.__process_return(
            lambda: ChannelController.build_diagram(N, self.markings(), self.settings['workers']), 'channel')
        if 'csv' in self.args:
            lines = ['basin,j,re,im']
            for ray in diagram.rays:
                lines += ray.to_csv().splitlines()[1:]
            try:
                self.args.csv.write_text('\n'.join(lines) + '\n', encoding='utf-8')
            except OSError as e:
                self.fail('channel', 'Could not write rays to {}: {}'.format(self.args.csv, e))
        result = NewtonLabCli.map_header(N)
        result.update(diagram.to_dict())
        return result

    def apply_settings(self) -> None:
        """
        Load settings from the configuration file given with --config, if any. Any configuration options specified via
        command-line options will override the values in the configuration file.
        """
        if 'config' in self.args:
            if not os.path.exists(self.args.config):
                self.fail('config', 'Configuration file {} not found.'.format(self.args.config))
            self.logger.info('Using config file: {}'.format(self.args.config))
            self.merge_settings(self.args.config)

        # Override settings from command line arguments
        self.override_config()

        logging.debug('Settings in use: {}'.format(json.dumps(self.settings, indent=2)))

    def merge_settings(self, conf_file: pathlib.Path) -> None:
        """
        Override any of the default settings with the known keys found in a configuration file.
        """
        try:
            with open(conf_file) as fp:
                loaded_settings = json.loads(fp.read())
        except (OSError, UnicodeDecodeError) as e:
            self.fail('config', 'Your configuration file at {} could not be read: {}'.format(conf_file, e))
        except json.decoder.JSONDecodeError as e:
            self.fail('config', 'Your configuration file at {} is invalid. Please check syntax: {}'.format(conf_file, e))
        if not isinstance(loaded_settings, dict):
            self.fail('config', 'Your configuration file at {} must hold a JSON object.'.format(conf_file))
        for key in self.settings:
            if key in loaded_settings:
                self.settings[key] = loaded_settings[key]

    def override_config(self) -> None:
        """
        Override any settings (default or from configuration file) which have been specified as command-line options.
        """
        vargs = vars(self.args)
        for key in self.settings:
            if key in vargs:
                self.settings[key] = vargs[key]

    def setup_logging(self) -> logging.Logger:
        """
        Sets up the logging system. Log records go to stderr, stdout is kept for reports.

        :return: the logging helper for the CLI.
        """
        log_level = LOG_LEVELS[self.args.log_level]
        stream = logging.StreamHandler(sys.stderr)
        stream.setLevel(log_level)
        logging.basicConfig(level=log_level, format=LOG_FORMAT, handlers=[stream])
        logger = logging.getLogger()
        # warnings are collected into the report whatever the level shown on stderr
        logger.setLevel(min(log_level, logging.WARNING))

        if 'log_dir' in self.args:
            if not os.access(self.args.log_dir, os.W_OK | os.X_OK):
                print('Specified log directory {} is not accessible.'.format(self.args.log_dir), file=sys.stderr)
                sys.exit(EXIT_ERROR)
            log_file = datetime.now().strftime('NewtonLab_%Y%m%d-%H%M%S') + '.log'
            self.file_handler = logging.FileHandler(self.args.log_dir / log_file)
            self.file_handler.setLevel(log_level)
            self.file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            logger.addHandler(self.file_handler)
        return logger


def float_list(text: str) -> List[float]:
    return [float(value) for value in text.split(',')]


def resolution(text: str) -> List[int]:
    """
    Parse ``WIDTHxHEIGHT``, or a single side for a square raster.
    """
    sides = [int(value) for value in text.lower().split('x')]
    if len(sides) == 1:
        return sides * 2
    if len(sides) != 2:
        raise ValueError('Expected WIDTHxHEIGHT, got "{}"'.format(text))
    return sides


def attach_values(argv: List[str]) -> List[str]:
    """
    Join each of :py:data:`VALUE_FLAGS` with the token after it, so that values starting with ``-`` are not taken for
    options.
    """
    result = []
    pending = False
    for token in argv:
        if pending:
            result[-1] = '{}={}'.format(result[-1], token)
            pending = False
        else:
            result.append(token)
            pending = token in VALUE_FLAGS
    return result


def common_parser() -> argparse.ArgumentParser:
    """
    Options shared by every subcommand.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=pathlib.Path,
        default=argparse.SUPPRESS,
        help="use to provide a path to a JSON configuration file.")
    common.add_argument(
        "--out",
        type=pathlib.Path,
        default=argparse.SUPPRESS,
        help="write the JSON report to this file instead of stdout.")
    common.add_argument(
        "--log-dir",
        type=pathlib.Path,
        default=argparse.SUPPRESS,
        help="specify a directory to also write a log file to.")
    common.add_argument(
        "--log-level",
        type=str,
        choices=['debug', 'info', 'critical', 'warning'],
        default='warning',
        help="specify the logging level.")
    common.add_argument(
        "--workers",
        type=int,
        default=argparse.SUPPRESS,
        help="number of worker processes, NEWTONLAB_THREADS or the CPU count by default.")
    return common


def map_parser() -> argparse.ArgumentParser:
    """
    Options of the subcommands that work on a Newton map.
    """
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument(
        "--p",
        type=str,
        default=argparse.SUPPRESS,
        help='coefficients of p, lowest power first, e.g. "-1+0i,0+0i,1+0i" for z^2-1.')
    options.add_argument(
        "--q",
        type=str,
        default=argparse.SUPPRESS,
        help='coefficients of q, lowest power first; "0" by default.')
    options.add_argument(
        "--viewport",
        type=float_list,
        default=argparse.SUPPRESS,
        help="region as xmin,xmax,ymin,ymax.")
    options.add_argument(
        "--resolution",
        type=resolution,
        default=argparse.SUPPRESS,
        help="raster size as WIDTHxHEIGHT or a single side.")
    options.add_argument("--max-steps", dest='max_steps', type=int, default=argparse.SUPPRESS,
                         help="step budget for single orbits.")
    options.add_argument("--grid-steps", dest='grid_steps', type=int, default=argparse.SUPPRESS,
                         help="step budget per pixel.")
    options.add_argument("--eps-conv", dest='eps_conv', type=float, default=argparse.SUPPRESS,
                         help="spherical distance to a root that counts as converged.")
    options.add_argument("--petal-radius", dest='petal_radius', type=float, default=argparse.SUPPRESS,
                         help="radius of the petal sectors in the chart at infinity.")
    return options


def add_mark(parser: argparse.ArgumentParser, text: str, parse=helpers.parse_markings) -> None:
    parser.add_argument(
        "--mark",
        type=parse,
        action='append',
        default=argparse.SUPPRESS,
        help=text)


def build_parser() -> argparse.ArgumentParser:
    """
    Defines arguments accepted by the CLI.
    """
    parser = argparse.ArgumentParser(
        prog="newtonlab",
        description="Newton maps of p(z) e^q(z): fixed points, orbits, basins, disk models, surgery checks and rays.",
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    common = common_parser()
    with_map = [common, map_parser()]

    subparsers.add_parser('build', parents=with_map, help="build the map and list fixed and critical points.")

    orbit = subparsers.add_parser('orbit', parents=with_map, help="follow one orbit.")
    orbit.add_argument("--z0", type=helpers.parse_point, default=argparse.SUPPRESS, help="start point as re,im.")
    orbit.add_argument("--center", action='store_true', default=argparse.SUPPRESS,
                       help="also find the center of the component of z0.")

    subparsers.add_parser('pcm-check', parents=with_map, help="check that the map is postcritically minimal.")

    render_ = subparsers.add_parser('render', parents=with_map, help="render the basins to an image.")
    render_.add_argument("--image", type=pathlib.Path, default=argparse.SUPPRESS, help="image file to write.")
    render_.add_argument("--image-format", dest='image_format', choices=['ppm', 'png'], default=argparse.SUPPRESS,
                         help="ppm (default) or png, which needs Pillow.")
    render_.add_argument("--no-shading", dest='shading', action='store_false', default=argparse.SUPPRESS,
                         help="do not darken pixels by iteration count.")
    for flag, text in (('--fixed-points', 'draw fixed points.'), ('--critical-points', 'draw critical points.'),
                       ('--petals', 'draw the attracting directions at infinity.'), ('--rays', 'draw channel rays.')):
        render_.add_argument(flag, action='store_true', default=argparse.SUPPRESS, help=text)
    add_mark(render_, "marked rays as basin:j, repeatable.")

    blaschke = subparsers.add_parser('blaschke', parents=[common], help="build a Blaschke disk model.")
    blaschke.add_argument("--k", type=int, default=argparse.SUPPRESS, help="the degree.")
    blaschke.add_argument("--target-multiplier", dest='target_multiplier', type=float, default=argparse.SUPPRESS,
                          help="multiplier of the attracting fixed point; the parabolic model when omitted.")

    check = subparsers.add_parser('surgery-check', parents=[common], help="check the surgery models.")
    check.add_argument("--k", type=int, default=argparse.SUPPRESS, help="the disk degree.")
    check.add_argument("--r", type=float, default=argparse.SUPPRESS, help="the gluing radius.")
    check.add_argument("--lambda", dest='lam', type=float, default=argparse.SUPPRESS, help="the sector multiplier.")
    check.add_argument("--theta", type=float, default=argparse.SUPPRESS, help="the sector gap.")
    check.add_argument("--mmax", type=int, default=argparse.SUPPRESS, help="the last quadrilateral.")
    check.add_argument("--grid", type=int, default=argparse.SUPPRESS, help="radial cells per quadrilateral.")

    surgery = subparsers.add_parser('surgery-pipeline', parents=with_map, help="run the surgery checks on a map.")
    add_mark(surgery, "marked basins as i[,j...], each on its first ray, or basin:j to pick the ray; repeatable.",
             helpers.parse_basin_marks)
    surgery.add_argument("--multiplier", type=float, default=argparse.SUPPRESS,
                         help="multiplier of the attracting disk models.")
    surgery.add_argument("--area-depth", dest='area_depth', type=int, default=argparse.SUPPRESS,
                         help="preimage depth of the area condition.")

    channel = subparsers.add_parser('channel', parents=with_map, help="trace the channel diagram.")
    add_mark(channel, "marked rays as basin:j, repeatable.")
    channel.add_argument("--csv", type=pathlib.Path, default=argparse.SUPPRESS, help="also write the rays as CSV.")
    return parser


def run_cli(argv: List[str] | None = None) -> int:
    """
    Run the CLI.

    :param argv: the arguments, ``sys.argv[1:]`` when omitted.
    :return: the exit code.
    """
    parser = build_parser()
    cli = None
    try:
        args = parser.parse_args(attach_values(sys.argv[1:] if argv is None else list(argv)))
        cli = NewtonLabCli(args, parser)
        cli.run()
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    finally:
        if cli is not None:
            cli.close()
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
