"""KMOM1 container: named real/complex arrays for offline inspection.

Layout (little-endian):

    b"KMOM1"
    u32  array count
    per array:
        u16  name length, name (utf-8)
        u8   kind (0 = float64, 1 = complex128)
        u8   ndim
        u64  dims[ndim]
        row-major data
"""

import logging
import struct
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

MAGIC = b"KMOM1"
_KINDS = {0: np.dtype("<f8"), 1: np.dtype("<c16")}


def write_container(path: str | Path, arrays: dict[str, np.ndarray]) -> Path:
    """Write named arrays to a KMOM1 file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(arrays)))
        for name, array in arrays.items():
            array = np.asarray(array)
            kind = 1 if np.iscomplexobj(array) else 0
            encoded = name.encode("utf-8")
            fh.write(struct.pack("<H", len(encoded)))
            fh.write(encoded)
            fh.write(struct.pack("<BB", kind, array.ndim))
            fh.write(struct.pack(f"<{array.ndim}Q", *array.shape))
            fh.write(np.ascontiguousarray(array, dtype=_KINDS[kind]).tobytes(order="C"))
    logger.debug(f"Wrote KMOM1 container {path} ({len(arrays)} arrays)")
    return path


def read_container(path: str | Path) -> dict[str, np.ndarray]:
    """Read every array of a KMOM1 file."""
    data = Path(path).read_bytes()
    if not data.startswith(MAGIC):
        raise ValueError(f"{path} is not a KMOM1 container")
    offset = len(MAGIC)
    (count,) = struct.unpack_from("<I", data, offset)
    offset += 4
    arrays = {}
    for _ in range(count):
        (name_len,) = struct.unpack_from("<H", data, offset)
        offset += 2
        name = data[offset:offset + name_len].decode("utf-8")
        offset += name_len
        kind, ndim = struct.unpack_from("<BB", data, offset)
        offset += 2
        shape = struct.unpack_from(f"<{ndim}Q", data, offset)
        offset += 8 * ndim
        dtype = _KINDS[kind]
        size = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
        arrays[name] = np.frombuffer(data, dtype=dtype, count=size // dtype.itemsize,
                                     offset=offset).reshape(shape).copy()
        offset += size
    return arrays
