"""Binary ``HCT1`` containment-index files.

Layout (little-endian)::

    magic     4s   b"HCT1"
    count     u64  number of triangles n
    eps       f64
    linear    4 f64, row major
    translate 2 f64
    rotation  f64, shear slope f64, scale factors 2 f64
    points    3n f64, rows (a, b, -a - b - alpha)
    ids       n i64
    crc32     u32  over everything before it

The dominance structure itself is rebuilt on load; the build is
deterministic, so answers are identical to the in-process index.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from .containment import ContainmentIndex, FamilyFrame
from .geometry import Affine2

MAGIC = b"HCT1"
_HEADER = struct.Struct("<4sQd6d4d")


class IndexFileError(ValueError):
    pass


def dumps(index: ContainmentIndex) -> bytes:
    frame = index.frame
    (l11, l12), (l21, l22) = frame.map.linear
    header = _HEADER.pack(
        MAGIC,
        len(index),
        index.eps,
        l11, l12, l21, l22,
        *frame.map.translate,
        frame.rotation_angle,
        frame.shear_slope,
        *frame.scale_factors,
    )
    body = header + index.points.astype("<f8").tobytes() + index.ids.astype("<i8").tobytes()
    return body + struct.pack("<I", zlib.crc32(body))


def loads(data: bytes) -> ContainmentIndex:
    if len(data) < _HEADER.size + 4 or data[:4] != MAGIC:
        raise IndexFileError("not an HCT1 index file")
    body, (crc,) = data[:-4], struct.unpack("<I", data[-4:])
    if zlib.crc32(body) != crc:
        raise IndexFileError("index file checksum mismatch")
    fields = _HEADER.unpack_from(body)
    n, eps = fields[1], fields[2]
    l11, l12, l21, l22, tx, ty, rot, slope, sx, sy = fields[3:]
    expected = _HEADER.size + n * 3 * 8 + n * 8
    if len(body) != expected:
        raise IndexFileError("index file has the wrong length")
    points = np.frombuffer(body, dtype="<f8", count=3 * n, offset=_HEADER.size).reshape(n, 3)
    ids = np.frombuffer(body, dtype="<i8", count=n, offset=_HEADER.size + 24 * n)
    frame = FamilyFrame(Affine2(((l11, l12), (l21, l22)), (tx, ty)), rot, slope, (sx, sy))
    return ContainmentIndex(frame, points.astype(np.float64), ids.astype(np.int64), eps)


def save_index(index: ContainmentIndex, path) -> None:
    Path(path).write_bytes(dumps(index))


def load_index(path) -> ContainmentIndex:
    return loads(Path(path).read_bytes())
