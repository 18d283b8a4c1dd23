"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This Python module contains the main functions that link together all functionality,
including the command line entry point.
"""
import os
import sys
import json
import argparse

from darboux_helix.api.scene import SceneConfig, list_builtins, parse_grid, parse_constant, parse_families
from darboux_helix.api.pipeline import Pipeline
from darboux_helix.core.errors import DarbouxError, ConfigError
from darboux_helix.config.helpers import get_config, get_config_path, get_version


# load configuration
config = get_config()

# last pipeline stage of each subcommand
COMMAND_STAGES = {'validate': 'validate', 'frames': 'frames', 'classify': 'classify', 'associate': 'associate',
                  'verify': 'verify', 'export': 'export', 'run': 'export'}


def update_config(file_name='', settings=None):
    """Update the configuration using a file and/or a dictionary.

    First loads the file, then updates settings, so both could be used simultaneously.
    This alters the state of the current configuration, not the configuration file.

    Parameters
    ----------
    file_name: str, optional
        Path to the yaml configuration file.
    settings: dict, optional
        Dictionary to update specific configuration settings.

    Returns
    -------
    None
    """
    # load from file
    if file_name != '':
        config.update_from_file(file_name)

    # update individual settings
    if settings is not None:
        invalid = config.update_from_dict(settings)
        if invalid:
            raise ConfigError(f"invalid configuration settings: {invalid}")

    return None


def save_config(file_name=''):
    """Save the configuration to a file."""
    # if no file name is supplied, overwrite it in the default place
    if file_name == '':
        file_name = get_config_path()

    config.save_to_file(file_name)

    return None


def run_scene(scene, until='export', save_dir='', report_only=False, sweep=False):
    """Run a scene through the pipeline stages.

    Parameters
    ----------
    scene: SceneConfig
        The scene.
    until: str, optional
        Last stage to run.
    save_dir: str, optional
        Directory for exports.
    report_only: bool, optional
        Do not raise on failed verdicts.
    sweep: bool, optional
        Add the equivalence sweep to the exports.

    Returns
    -------
    Result
        Instance of the Result class containing the outcome.
    """
    pipeline = Pipeline(scene, save_dir=save_dir, report_only=report_only, sweep=sweep)

    return pipeline.run(until=until)


def _build_parser():
    parser = argparse.ArgumentParser(prog='darboux-helix',
                                     description='Darboux frames, special surface curves and their '
                                                 'associated helices.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {get_version()}')
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser('list-builtins', help='list the built-in scenes')

    for name in COMMAND_STAGES:
        sub = commands.add_parser(name, help=f'run the pipeline up to {COMMAND_STAGES[name]}')
        sub.add_argument('--scene', required=True, help='built-in scene name or path to a scene file')
        sub.add_argument('--family', default=None, help='comma separated family tags, or all')
        sub.add_argument('--const', action='append', default=[], help='family constant name=value, repeatable')
        sub.add_argument('--grid', default=None, help='grid as s0:s1:n')
        sub.add_argument('--tol', type=float, default=None, help='relative tolerance of the constancy tests')
        sub.add_argument('--out', default='', help='output directory')
        sub.add_argument('--format', choices=['csv', 'obj', 'json'], default=None, help='only write this format')
        sub.add_argument('--report-only', action='store_true', help='exit 0 on failed verdicts')

    return parser


def _scene_from_args(args):
    scene = SceneConfig.load(args.scene)

    families = parse_families(args.family) if args.family is not None else None
    constants = dict(parse_constant(text) for text in args.const)
    grid = parse_grid(args.grid) if args.grid is not None else None
    scene = scene.with_overrides(families=families, constants=constants, grid=grid)

    if args.format is not None:
        scene.exports = [args.format]

    return scene


def _print_summary(result):
    """Short json summary on stdout."""
    summary = {'scene': result.scene_name}
    if result.validation is not None:
        summary['validation'] = result.validation.as_dict()
    if result.classification is not None:
        summary['classification'] = result.classification.as_dict()
    if len(result.associated) > 0:
        summary['families'] = {tag: assoc.track.case_tag for tag, assoc in result.associated.items()}
    if len(result.helix_reports) > 0:
        summary['helix'] = {tag: report.verdict for tag, report in result.helix_reports.items()}
        summary['verdict'] = result.verdict

    print(json.dumps(summary, indent=2, sort_keys=True))

    return None


def main(argv=None):
    """Command line entry point.

    Parameters
    ----------
    argv: list[str], optional
        Arguments, taken from sys.argv if not given.

    Returns
    -------
    int
        Exit status: 0 success, 1 configuration error, 2 kernel error, 3 failed verification.
    """
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == 'list-builtins':
        for name, description in list_builtins():
            print(f"{name}: {description}")
        return 0

    # settings changed for this run are restored afterwards
    saved_settings = config.as_dict()
    try:
        scene = _scene_from_args(args)
        settings = dict(scene.tolerances)
        if args.tol is not None:
            settings['rel_tol'] = args.tol
        update_config(settings=settings)

        save_dir = args.out
        if save_dir == '' and args.command in ('export', 'run'):
            save_dir = config.save_dir or os.getcwd()

        result = run_scene(scene, until=COMMAND_STAGES[args.command], save_dir=save_dir,
                           report_only=args.report_only, sweep=(args.command == 'run' and scene.sweep))
        # partial runs still save what they have when asked to
        if args.command not in ('export', 'run') and save_dir != '':
            result.save(save_dir, formats=scene.exports)
        _print_summary(result)

    except DarbouxError as e:
        print(f"darboux-helix: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code

    finally:
        config.update_from_dict(saved_settings)

    return 0


if __name__ == '__main__':
    sys.exit(main())
