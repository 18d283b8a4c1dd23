"""DARBOUX HELIX
Darboux frames, special surface curves and their associated helices

This module contains io functions for writing and reading the exported geometry and reports.

All writers are deterministic: fixed column order, 17 significant digits, no timestamps.
"""
import os
import json

import numpy as np
import pandas as pd

from darboux_helix.config.helpers import get_config

# load configuration
config = get_config()

FLOAT_FORMAT = '%.17g'

FRAME_COLUMNS = ['s', 'alphax', 'alphay', 'alphaz', 'Tx', 'Ty', 'Tz', 'Vx', 'Vy', 'Vz', 'Ux', 'Uy', 'Uz',
                 'k_g', 'k_n', 'tau_g']
CURVE_COLUMNS = ['s', 'gamma_x', 'gamma_y', 'gamma_z', 'y1', 'y2', 'y3']


def save_table_csv(file_name, table, columns=None):
    """Save a dictionary of equally long columns to a csv file.

    Parameters
    ----------
    file_name: str
        File name (including path) for saving the table.
    table: dict
        Column name to sampled values.
    columns: list[str], optional
        Column order. Defaults to the order of the dictionary.

    Returns
    -------
    None
    """
    if columns is None:
        columns = list(table.keys())

    df = pd.DataFrame({name: np.asarray(table[name]) for name in columns}, columns=columns)
    df.to_csv(file_name, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')

    return None


def load_table_csv(file_name):
    """Load a csv table written by `save_table_csv`.

    Parameters
    ----------
    file_name: str
        File name (including path) of the table.

    Returns
    -------
    dict
        Column name to numpy array.
    """
    df = pd.read_csv(file_name, float_precision='round_trip')

    return {name: df[name].to_numpy() for name in df.columns}


def save_dataframe_csv(file_name, df):
    """Save a pandas DataFrame (e.g. the equivalence sweep) to csv."""
    df.to_csv(file_name, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')

    return None


def _format_float(x):
    return FLOAT_FORMAT % x


def save_polylines_obj(file_name, curves):
    """Save curves as Wavefront OBJ polylines.

    Every curve becomes a named object with its vertices and a single `l` record through them,
    with vertex indices counted across the whole file.

    Parameters
    ----------
    file_name: str
        File name (including path) for saving the curves.
    curves: dict
        Curve name to points of shape (n, 3).

    Returns
    -------
    None
    """
    lines = ['# darboux_helix polylines']
    offset = 0
    for name, points in curves.items():
        points = np.asarray(points, dtype=float)
        lines.append(f'o {name}')
        for p in points:
            lines.append('v ' + ' '.join(_format_float(c) for c in p))

        indices = range(offset + 1, offset + len(points) + 1)
        lines.append('l ' + ' '.join(str(i) for i in indices))
        offset += len(points)

    with open(file_name, 'w', newline='\n') as f:
        f.write('\n'.join(lines) + '\n')

    return None


def load_polylines_obj(file_name):
    """Load the polylines of an OBJ file written by `save_polylines_obj`.

    Parameters
    ----------
    file_name: str
        File name (including path) of the OBJ file.

    Returns
    -------
    dict
        Curve name to points of shape (n, 3), in file order.
    """
    vertices = []
    curves = {}
    name = 'curve'

    with open(file_name, 'r') as f:
        for line in f:
            parts = line.split()
            if len(parts) == 0 or parts[0].startswith('#'):
                continue
            if parts[0] == 'o':
                name = parts[1]
            elif parts[0] == 'v':
                vertices.append([float(c) for c in parts[1:4]])
            elif parts[0] == 'l':
                # obj indices are one-based
                indices = [int(i) - 1 for i in parts[1:]]
                curves[name] = np.array(vertices)[indices]

    return curves


def _json_default(obj):
    """Convert numpy types for json."""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()

    raise TypeError(f"object of type {type(obj).__name__} is not json serializable")


def save_report_json(file_name, report):
    """Save a report dictionary to json with sorted keys.

    Parameters
    ----------
    file_name: str
        File name (including path) for saving the report.
    report: dict
        Nested report, may contain numpy arrays and scalars.

    Returns
    -------
    None
    """
    with open(file_name, 'w', newline='\n') as f:
        json.dump(report, f, indent=2, sort_keys=True, default=_json_default)
        f.write('\n')

    return None


def load_report_json(file_name):
    """Load a json report."""
    with open(file_name, 'r') as f:
        report = json.load(f)

    return report


def export_file_name(save_dir, name, file_format):
    """File name of an export in the save directory, e.g. 'hcc1.csv'."""
    return os.path.join(save_dir, f'{name}.{file_format}')
