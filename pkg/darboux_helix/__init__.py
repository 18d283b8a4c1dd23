"""
# What is Darboux Helix?

Darboux Helix is a Python application for the differential geometry of curves lying on surfaces.
It computes the Darboux frame {T, V, U} of a unit-speed surface curve together with its geodesic curvature,
normal curvature and geodesic torsion, classifies the curve, and constructs the associated helices and slant
helices of the HCC, RNS and ICC families, each certified by its frame equations and a Lancret test.


# Getting started

Install from the project root with

    pip install .

List the built-in scenes and run one:

    darboux-helix list-builtins
    darboux-helix run --scene cylinder-geodesic --out results/

Or from Python:

    import darboux_helix as dh
    scene = dh.SceneConfig.load('cylinder-geodesic')
    result = dh.Pipeline(scene, save_dir='results/').run()


# Settings

Settings are read from config.yaml in the config folder and may be changed at runtime with `update_config`.
The tolerance settings (zero_tol, rel_tol, unit_tol, degenerate_tol, angle_tol, alignment_tol, binormal_tol)
can also be set per scene. See the README for the full list.
"""

from .api.main import update_config, save_config, run_scene, main
from .api.scene import SceneConfig, list_builtins
from .api.result import Result
from .api.pipeline import Pipeline

__all__ = ['api', 'core', 'config', 'data']
