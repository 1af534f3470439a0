"""
Schur Basis Cache
Binary on-disk storage of Schur bases (and other complex arrays) plus an
in-memory cache keyed by (n, d, convention version).

File layout: magic b"RMSB", 4-byte little-endian header length, UTF-8 JSON
header, then the array as row-major little-endian complex doubles.
"""

import json
import struct
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from repcore import build_table
from utils import BasisConstructionError, get_logger, get_settings, log_event
from utils.config import LabSettings, check_dimension_cap
from .schur_basis import CONVENTION_VERSION, SchurBasis, build_schur_basis

logger = get_logger("SchurCache")

MAGIC = b"RMSB"


def write_array(path, header: dict, array: np.ndarray):
    """Write header + complex array in the cache format."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = dict(header, shape=list(array.shape))
    encoded = json.dumps(header).encode("utf-8")
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<I", len(encoded)))
        f.write(encoded)
        f.write(np.ascontiguousarray(array, dtype="<c16").tobytes())


def read_array(path) -> Tuple[dict, np.ndarray]:
    """Read a file written by write_array."""
    with open(path, "rb") as f:
        if f.read(4) != MAGIC:
            raise ValueError(f"{path} is not a Schur cache file")
        (length,) = struct.unpack("<I", f.read(4))
        header = json.loads(f.read(length).decode("utf-8"))
        data = np.frombuffer(f.read(), dtype="<c16")
    shape = tuple(header["shape"])
    if data.size != int(np.prod(shape)):
        raise ValueError(f"{path} holds {data.size} values, header declares shape {shape}")
    return header, data.reshape(shape)


def save_basis(basis: SchurBasis, path):
    header = {
        "n": basis.n,
        "d": basis.d,
        "convention_version": CONVENTION_VERSION,
        "columns": basis.column_map(),
    }
    write_array(path, header, basis.matrix)


def load_basis(path) -> SchurBasis:
    """Load a basis saved by save_basis, checking its layout against the irrep table."""
    header, data = read_array(path)
    if header.get("convention_version") != CONVENTION_VERSION:
        raise BasisConstructionError(
            f"{path} uses convention {header.get('convention_version')}, expected {CONVENTION_VERSION}"
        )
    n, d = int(header["n"]), int(header["d"])
    table = build_table(n, d)
    basis = SchurBasis(n=n, d=d, table=table, matrix=np.ascontiguousarray(data.real))
    if header["columns"] != basis.column_map():
        raise BasisConstructionError(f"{path} has a block layout that does not match the irrep table")
    return basis


class SchurBasisCache:
    """
    Build-once store for Schur bases.

    Bases are kept in memory and, when a cache directory is configured,
    written to `schur_n{n}_d{d}_v{version}.bin` for later runs.
    """

    def __init__(self, directory: Optional[str] = None, settings: Optional[LabSettings] = None, persist: bool = True):
        """
        Initialize the cache.

        Args:
            directory: Cache directory (defaults to settings.cache_dir)
            settings: Lab settings
            persist: Whether to read/write files at all
        """
        self.settings = settings or get_settings()
        self.directory = Path(directory or self.settings.cache_dir)
        self.persist = persist
        self._bases: Dict[Tuple[int, int], SchurBasis] = {}

    def path_for(self, n: int, d: int) -> Path:
        return self.directory / f"schur_n{n}_d{d}_v{CONVENTION_VERSION}.bin"

    def get(self, n: int, d: int) -> SchurBasis:
        """Return the basis for (n, d), loading or building it on a miss."""
        key = (n, d)
        if key in self._bases:
            return self._bases[key]
        check_dimension_cap(n, d, self.settings)

        basis = None
        path = self.path_for(n, d)
        if self.persist and path.exists():
            try:
                basis = load_basis(path)
                log_event(logger, "cache_hit", n=n, d=d, path=str(path))
            except (ValueError, BasisConstructionError, OSError) as e:
                log_event(logger, "cache_unreadable", n=n, d=d, path=str(path), error=str(e))
        if basis is None:
            basis = build_schur_basis(n, d, self.settings)
            if self.persist:
                try:
                    save_basis(basis, path)
                except OSError as e:
                    logger.warning(f"Could not write Schur cache {path}: {e}")

        self._bases[key] = basis
        return basis

    def clear(self):
        self._bases.clear()
