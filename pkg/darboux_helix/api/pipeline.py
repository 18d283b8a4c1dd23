"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This Python module contains the pipeline class that runs the stages on a scene.
"""
import os
import time as systime

import numpy as np

from darboux_helix.api.scene import SceneConfig
from darboux_helix.api.result import Result

from darboux_helix.core import geometry as geo, frames as frm, classify as cls
from darboux_helix.core import associated as asc, verify as vfy
from darboux_helix.core.errors import DarbouxError, VerificationFailure
from darboux_helix.config.helpers import get_config, get_custom_logger


# load configuration
config = get_config()

STAGES = ['validate', 'frames', 'classify', 'associate', 'verify', 'export']


class Pipeline:
    """A class to run a scene through the kernel.

    Handles the stages validate, frames, classify, associate, verify and export.

    Attributes
    ----------
    scene: SceneConfig
        The scene to process.
    result: Result
        Instance of the Result class collecting the outcome.
    save_dir: str
        Directory where exports are written; nothing is written if empty.
    report_only: bool
        Report failed verdicts instead of raising VerificationFailure.
    sweep: bool
        Add the equivalence sweep of the scene curve to the exports.
    logger: Logger
        Instance of the logging library.
    """

    def __init__(self, scene, save_dir='', report_only=False, sweep=False, logger=None):
        """Initialises the Pipeline object.

        Parameters
        ----------
        scene: SceneConfig
            The scene to process.
        save_dir: str, optional
            Directory for the exports and the log file. If empty, it is loaded from config.
        report_only: bool, optional
            Do not raise on failed verdicts.
        sweep: bool, optional
            Run the equivalence sweep in the export stage.
        logger: logging.Logger, optional
            Instance of the logging library.
        """
        if not isinstance(scene, SceneConfig):
            raise ValueError("Input `scene` should be a SceneConfig object.")

        self.scene = scene
        self.result = Result(scene.name)
        self.result.scene = scene.get_dict()

        if save_dir == '':
            save_dir = config.save_dir
        self.save_dir = save_dir
        self.report_only = report_only
        self.sweep = sweep

        # for saving, make a folder if not there yet
        if self.save_dir != '' and not os.path.isdir(self.save_dir):
            os.makedirs(self.save_dir)

        # initialise custom logger
        self.logger = logger or get_custom_logger(scene.name, self.save_dir, config.verbose)

        return

    def _fail(self, message):
        """Raise a verification failure unless only reporting."""
        if self.report_only:
            self.logger.warning(message)
            return None

        raise VerificationFailure(message)

    def validate(self):
        """Check unit speed, normality and unit normal of the input on the grid."""
        report = geo.validate_surface_curve(self.scene.curve, self.scene.grid)
        self.result.validation = report

        self.logger.info(f"Validation passed= {report.passed}, unit speed dev= {report.unit_speed_dev:1.2e}, "
                         f"normality dev= {report.normality_dev:1.2e}")
        if not report.passed:
            self._fail(f"surface curve failed validation: {report.as_dict()}")

        return None

    def frames(self):
        """Darboux frame and curvatures of the base curve."""
        self.result.frame = frm.darboux_frame(self.scene.curve, self.scene.grid.samples)

        residuals = frm.darboux_residuals(self.result.frame)
        self.logger.extra(f"Darboux equation residuals= {', '.join(f'{r:1.2e}' for r in residuals)}")

        return None

    def classify(self):
        """Predicates on the base curve."""
        classification = cls.classify_curve(self.result.frame)
        self.result.classification = classification

        lines = classification.lines
        self.logger.info(f"geodesic= {lines.is_geodesic}, asymptotic= {lines.is_asymptotic}, "
                         f"principal= {lines.is_principal_line}, helical= {classification.helical.verdict}, "
                         f"relatively normal-slant= {classification.relatively_normal_slant.verdict}, "
                         f"isophote= {classification.isophote.verdict}")

        return None

    def associate(self):
        """Construct the requested associated curves."""
        for family in self.scene.families:
            assoc = asc.construct(family, self.result.frame, self.scene.constants, self.scene.grid)
            self.result.associated[family.tag] = assoc
            self.logger.extra(f"{family.tag}: case {assoc.track.case_tag}")

        return None

    def verify(self):
        """Helix reports, residuals and Runge-Kutta cross-check of the associated curves."""
        for tag, assoc in self.result.associated.items():
            report = vfy.helix_report(assoc)
            self.result.helix_reports[tag] = report
            self.result.residuals[tag] = asc.ode_residual(assoc)

            oracle = asc.rk4_oracle(assoc.family, self.scene.curve, self.scene.constants, self.scene.grid)
            self.result.oracle_deviation[tag] = float(np.max(np.abs(oracle.y - assoc.track.y)))

            self.logger.info(f"{tag}: helix= {report.verdict}, lancret std= {report.lancret.stddev:1.2e}, "
                             f"alignment= {report.alignment:1.2e}, binormal= {report.binormal:1.2e}")
            self.logger.extra(f"{tag}: ode residuals= {self.result.residuals[tag].equalities}, "
                              f"rk4 deviation= {self.result.oracle_deviation[tag]:1.2e}")

        failed = [tag for tag, report in self.result.helix_reports.items() if not report.verdict]
        if len(failed) > 0:
            self._fail(f"associated curves are not certified helices: {failed}")

        return None

    def export(self):
        """Write the exports to the save directory."""
        if self.save_dir == '':
            self.logger.warning("No save directory set, nothing exported.")
            return None

        if self.sweep and self.result.sweep is None:
            fixture = (self.scene.name, self.scene.curve, self.scene.grid, self.scene.constants)
            self.result.sweep = vfy.equivalence_sweep([fixture], logger=self.logger)

        self.result.save(self.save_dir, formats=self.scene.exports, logger=self.logger)

        return None

    def run(self, until='export'):
        """Run the stages in order up to and including `until`.

        Errors raised inside a stage are re-raised with the stage name attached.

        Parameters
        ----------
        until: str, optional
            Last stage to run.

        Returns
        -------
        Result
            Instance of the Result class containing the outcome.
        """
        if until not in STAGES:
            raise ValueError(f"unknown stage '{until}', expected one of {STAGES}")

        t_a = systime.time()
        self.logger.info(f"Start of scene {self.scene.name}")

        for stage in STAGES[:STAGES.index(until) + 1]:
            # frames cannot be computed on a failed validation
            if stage != 'validate' and not self.result.validation.passed:
                break

            t_s = systime.time()
            try:
                getattr(self, stage)()
            except DarbouxError as e:
                e.stage = stage
                self.logger.error(str(e))
                raise

            t_e = systime.time()
            self.logger.extra(f"Stage {stage} done. Time taken= {t_e - t_s:1.1f}s")

        t_b = systime.time()
        self.logger.info(f"End of scene {self.scene.name}. Time taken= {t_b - t_a:1.1f}s")

        return self.result
