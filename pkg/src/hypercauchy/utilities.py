"""The utilities module"""

import json
import logging
from datetime import datetime, timezone
from os import environ
from typing import Optional

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

THREADS_VARIABLE = "HYPERCAUCHY_THREADS"

FIELD_COLUMNS = [
    "x",
    "y",
    "q0_re",
    "q0_im",
    "q1_re",
    "q1_im",
    "q2_re",
    "q2_im",
    "q3_re",
    "q3_im",
    "mask",
]


def load_configuration(config_file: str) -> None:
    """Loads the configuration file as global environment variables for use
    by hypercauchy functions.

    :param config_file: The path to the configuration file.
    :returns: None
    :notes: The file is a flat JSON object. The only key read by the package
        is `HYPERCAUCHY_THREADS`, the worker thread count for sweeps over
        many evaluation points. Values are stored as strings.
    """
    with open(config_file, "r", encoding="utf-8") as config:
        config = json.load(config)
        for key, value in config.items():
            environ[key] = str(value)


def get_thread_count(default: int = 1) -> int:
    """
    :param default: Count used when the variable is unset.
    :returns: The worker thread count from `HYPERCAUCHY_THREADS`, at least 1.
    """
    value = environ.get(THREADS_VARIABLE)
    if value is None or value.strip() == "":
        return default
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning("ignoring non-integer %s=%r", THREADS_VARIABLE, value)
        return default


def field_frame(points: np.ndarray, values: np.ndarray, mask: np.ndarray) -> pd.core.frame.DataFrame:
    """
    :param points: Grid points of shape (N, 2).
    :param values: Quaternion values of shape (N, 4); ignored where masked.
    :param mask: Boolean array, True for points in the boundary band.
    :returns: A DataFrame with the `FIELD_COLUMNS` columns. Masked rows keep
        their coordinates and carry NaN values and mask 1.
    """
    values = np.where(mask[:, None], complex(np.nan, np.nan), values)
    data = {"x": points[:, 0], "y": points[:, 1]}
    for k in range(4):
        data[f"q{k}_re"] = values[:, k].real
        data[f"q{k}_im"] = values[:, k].imag
    data["mask"] = mask.astype(int)
    return pd.DataFrame(data, columns=FIELD_COLUMNS)


def write_grid(frame: pd.core.frame.DataFrame, output_path: str) -> None:
    """
    :param frame: The field table to be written.
    :param output_path: The path to write the CSV file to.
    :returns: None
    """
    frame.to_csv(output_path, index=False, encoding="utf-8", float_format="%.17g")


def load_grid(input_path: str) -> pd.core.frame.DataFrame:
    """
    :param input_path: A CSV file written by `write_grid`.
    :returns: The loaded field table.
    """
    return pd.read_csv(input_path, encoding="utf-8")


def write_report(payload, output_path: str, version: Optional[str] = None) -> None:
    """Write a JSON payload and its sidecar

    :param payload: JSON-ready object.
    :param output_path: The path to write the payload to.
    :param version: Package version recorded in the sidecar.
    :returns: None
    :notes: The payload is written with sorted keys and no timestamp, so
        identical inputs give identical files. The creation time and version
        go to `<output_path>.meta.json`.
    """
    with open(output_path, "w", encoding="utf-8") as out:
        json.dump(payload, out, sort_keys=True, indent=2)
        out.write("\n")
    write_sidecar(output_path, version)


def write_sidecar(output_path: str, version: Optional[str] = None) -> None:
    """
    :param output_path: The artifact the sidecar describes.
    :param version: Package version.
    :returns: None
    """
    meta = {
        "artifact": output_path,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": version,
    }
    with open(output_path + ".meta.json", "w", encoding="utf-8") as out:
        json.dump(meta, out, sort_keys=True, indent=2)
        out.write("\n")
