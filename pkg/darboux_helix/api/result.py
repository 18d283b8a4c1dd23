"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This Python module contains the result class for handling the outcome of a scene run.
"""
import os

from darboux_helix.core import io
from darboux_helix.config.helpers import get_config, get_version


# load configuration
config = get_config()


class Result:
    """A class to handle the results of a scene.

    Attributes
    ----------
    scene_name: str
        Name of the scene.
    scene: dict
        Scene settings as used.
    validation: ValidationReport, None
        Unit speed and normality check of the input.
    frame: DarbouxFrame, None
        Darboux frame of the base curve.
    classification: Classification, None
        Verdicts on the base curve.
    associated: dict
        Family tag to AssociatedCurve.
    helix_reports: dict
        Family tag to HelixReport.
    residuals: dict
        Family tag to OdeResidual.
    oracle_deviation: dict
        Family tag to max |closed form - Runge-Kutta| over the coefficients.
    sweep: pandas.DataFrame, None
        Equivalence sweep of the scene's curve.
    """

    def __init__(self, scene_name=''):
        """Initialises the Result object."""
        self.scene_name = scene_name
        self.scene = {}

        self.validation = None
        self.frame = None
        self.classification = None

        self.associated = {}
        self.helix_reports = {}
        self.residuals = {}
        self.oracle_deviation = {}

        self.sweep = None

        return

    def __repr__(self):
        return f"Result(scene_name={self.scene_name!r}, families={list(self.associated)!r})"

    @property
    def verdict(self):
        """True if the input validated and every helix report passed."""
        if self.validation is not None and not self.validation.passed:
            return False

        return all(report.verdict for report in self.helix_reports.values())

    def get_dict(self):
        """Make a dictionary of the results.

        Primarily for saving to file; holds no timestamps so identical runs give identical reports.

        Returns
        -------
        dict
            Nested dictionary of the results.
        """
        result_dict = dict()
        result_dict['scene'] = self.scene
        result_dict['version'] = get_version()

        if self.validation is not None:
            result_dict['validation'] = self.validation.as_dict()
        if self.classification is not None:
            result_dict['classification'] = self.classification.as_dict()

        families = {}
        for tag, assoc in self.associated.items():
            family_dict = {'case': assoc.track.case_tag, 'constants': dict(sorted(assoc.track.constants.items()))}
            if tag in self.helix_reports:
                family_dict['helix'] = self.helix_reports[tag].as_dict()
            if tag in self.residuals:
                family_dict['ode_residual'] = self.residuals[tag].as_dict()
            if tag in self.oracle_deviation:
                family_dict['rk4_deviation'] = self.oracle_deviation[tag]
            families[tag] = family_dict
        result_dict['families'] = families

        if len(self.helix_reports) > 0 or self.validation is not None:
            result_dict['verdict'] = self.verdict

        return result_dict

    def save(self, save_dir, formats=('csv', 'obj', 'json'), logger=None):
        """Write the exports to a directory.

        Files: frames.csv and <family>.csv (csv), curves.obj (obj), report.json (json)
        and sweep.csv when a sweep was made. Existing files are kept unless the `overwrite`
        configuration setting is on.

        Parameters
        ----------
        save_dir: str
            Directory to write to, created if needed.
        formats: tuple[str], optional
            Which of 'csv', 'obj' and 'json' to write.
        logger: logging.Logger, optional
            Instance of the logging library.

        Returns
        -------
        list[str]
            The files that were written.
        """
        os.makedirs(save_dir, exist_ok=True)

        exports = []
        if 'csv' in formats and self.frame is not None:
            exports.append(('frames', 'csv', io.save_table_csv, (self.frame.table(), io.FRAME_COLUMNS)))
            for tag, assoc in self.associated.items():
                exports.append((tag, 'csv', io.save_table_csv, (assoc.table(), io.CURVE_COLUMNS)))
        if 'obj' in formats and self.frame is not None:
            curves = {'alpha': self.frame.alpha.value(0)}
            curves.update({tag: assoc.points for tag, assoc in self.associated.items()})
            exports.append(('curves', 'obj', io.save_polylines_obj, (curves,)))
        if 'json' in formats:
            exports.append(('report', 'json', io.save_report_json, (self.get_dict(),)))
        if self.sweep is not None:
            exports.append(('sweep', 'csv', io.save_dataframe_csv, (self.sweep,)))

        written = []
        for name, file_format, writer, args in exports:
            file_name = io.export_file_name(save_dir, name, file_format)

            # keep existing files unless configured otherwise
            if os.path.isfile(file_name) and not config.overwrite:
                if logger is not None:
                    logger.warning(f"File {file_name} exists and overwrite is off, not saving.")
                continue

            writer(file_name, *args)
            written.append(file_name)

        if logger is not None:
            logger.extra(f"Saved {len(written)} files to {save_dir}")

        return written
