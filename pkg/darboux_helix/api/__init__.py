"""DARBOUX HELIX api __init__ file
"""

from .scene import SceneConfig
from .result import Result
from .pipeline import Pipeline
