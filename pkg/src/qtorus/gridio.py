"""File formats: CoeffGrid JSON, PGM images, atomic output, run manifests.

Grid JSON: {"n": N, "tag": "fourier-real"|"hermitian"|"general",
"entries": [[re, im], ...]} with (2N+1)^2 pairs in row-major order,
k outer from -N to N, l inner from -N to N.

PGM: both ASCII (P2) and binary (P5), maxval up to 65535; pixel v maps
to f = v / maxval in [0, 1].

Outputs are written to a temp file in the target directory and renamed
into place, so interrupted runs never leave partial files.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, FormatError
from .grids import TAGS, CoeffGrid, SampleGrid
from .spectral import analyze

TOOL_VERSION = "0.1.0"


def grid_to_json(grid: CoeffGrid) -> str:
    flat = grid.data.reshape(-1)
    entries = [[float(z.real), float(z.imag)] for z in flat]
    return json.dumps({"n": grid.n, "tag": grid.tag, "entries": entries})


def grid_from_json(text: str) -> CoeffGrid:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("invalid grid JSON: %s" % exc)
    if not isinstance(obj, dict):
        raise FormatError("grid JSON must be an object")
    for key in ("n", "tag", "entries"):
        if key not in obj:
            raise FormatError("grid JSON missing key %r" % key)
    n = obj["n"]
    tag = obj["tag"]
    if not isinstance(n, int) or n < 0:
        raise FormatError("grid JSON: n must be a non-negative integer")
    if tag not in TAGS:
        raise FormatError("grid JSON: unknown tag %r" % (tag,))
    side = 2 * n + 1
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != side * side:
        raise FormatError(
            "grid JSON: expected %d entries, got %s"
            % (side * side, len(entries) if isinstance(entries, list) else "non-list")
        )
    data = np.empty((side * side,), dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (not isinstance(pair, list)) or len(pair) != 2:
            raise FormatError("grid JSON: entry %d is not a [re, im] pair" % i)
        data[i] = complex(float(pair[0]), float(pair[1]))
    return CoeffGrid(n, data.reshape(side, side), tag)


def read_grid(path) -> CoeffGrid:
    with open(path, "r") as fh:
        return grid_from_json(fh.read())


def atomic_write_bytes(path, payload: bytes):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qtorus-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path, text: str):
    atomic_write_bytes(path, text.encode())


def write_grid(path, grid: CoeffGrid):
    atomic_write_text(path, grid_to_json(grid) + "\n")


@dataclass
class RunManifest:
    """JSON sidecar describing how an output file was produced."""

    inputs: list
    params: dict
    tool_version: str = TOOL_VERSION
    duration_s: float = 0.0
    started: float = field(default_factory=time.time)

    def write_for(self, out_path):
        self.duration_s = time.time() - self.started
        payload = {
            "inputs": [str(p) for p in self.inputs],
            "params": self.params,
            "tool_version": self.tool_version,
            "duration_s": self.duration_s,
        }
        atomic_write_text(str(out_path) + ".manifest.json",
                          json.dumps(payload, sort_keys=True, default=str) + "\n")


def _read_pgm_tokens(blob: bytes, count: int, offset: int):
    """Header tokens: whitespace-separated, '#' starts a comment to EOL."""
    tokens = []
    i = offset
    while len(tokens) < count and i < len(blob):
        c = blob[i:i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            j = blob.find(b"\n", i)
            i = len(blob) if j < 0 else j + 1
        else:
            j = i
            while j < len(blob) and not blob[j:j + 1].isspace() and blob[j:j + 1] != b"#":
                j += 1
            tokens.append(blob[i:j])
            i = j
    if len(tokens) < count:
        raise FormatError("truncated PGM header")
    return tokens, i


def read_pgm(path):
    """Read P2/P5 into (float array in [0,1], maxval)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:2] not in (b"P2", b"P5"):
        raise FormatError("not a PGM file (magic %r)" % blob[:2])
    binary = blob[:2] == b"P5"
    tokens, pos = _read_pgm_tokens(blob, 3, 2)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise FormatError("malformed PGM header fields %r" % tokens)
    if width <= 0 or height <= 0 or not (0 < maxval < 65536):
        raise FormatError("invalid PGM dimensions or maxval")
    npix = width * height
    if binary:
        pos += 1  # single whitespace byte after maxval
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        raster = blob[pos:pos + npix * dtype.itemsize]
        if len(raster) < npix * dtype.itemsize:
            raise FormatError("truncated PGM raster")
        pix = np.frombuffer(raster, dtype=dtype).astype(np.float64)
    else:
        try:
            pix = np.array(blob[pos:].split()[:npix], dtype=np.float64)
        except ValueError:
            raise FormatError("malformed PGM raster")
        if pix.size < npix:
            raise FormatError("truncated PGM raster")
    if pix.max() > maxval or pix.min() < 0:
        raise FormatError("PGM pixel outside [0, maxval]")
    img = pix.reshape(height, width) / float(maxval)
    return img, maxval


def write_pgm(path, values: np.ndarray, maxval: int = 255, binary: bool = False):
    """Quantize values in [0,1] to a PGM file (row-major, P2 or P5)."""
    arr = np.asarray(values, dtype=np.float64)
    pix = np.clip(np.rint(arr * maxval), 0, maxval).astype(np.uint16)
    h, w = pix.shape
    header = "%s\n%d %d\n%d\n" % ("P5" if binary else "P2", w, h, maxval)
    if binary:
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        atomic_write_bytes(path, header.encode() + pix.astype(dtype).tobytes())
    else:
        body = "\n".join(" ".join(str(int(v)) for v in row) for row in pix)
        atomic_write_text(path, header + body + "\n")


def center_fit(img: np.ndarray, side: int) -> np.ndarray:
    """Center-crop or zero-pad a 2D array to side x side."""
    out = img
    for axis in (0, 1):
        size = out.shape[axis]
        if size > side:
            start = (size - side) // 2
            sl = [slice(None), slice(None)]
            sl[axis] = slice(start, start + side)
            out = out[tuple(sl)]
        elif size < side:
            before = (side - size) // 2
            pad = [(0, 0), (0, 0)]
            pad[axis] = (before, side - size - before)
            out = np.pad(out, pad)
    return out


def ingest_pgm(path, n: int) -> CoeffGrid:
    """PGM to Fourier coefficients at band limit n (crop/pad to 2n+1)."""
    img, _ = read_pgm(path)
    if img.shape[0] != img.shape[1]:
        warnings.warn(
            "PGM is %dx%d, not square; center-cropping" % (img.shape[1], img.shape[0]),
            RuntimeWarning,
        )
        side = min(img.shape)
        img = center_fit(img, side)
    m = 2 * n + 1
    img = center_fit(img, m)
    return analyze(SampleGrid(m, img))
