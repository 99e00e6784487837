"""File formats: symbol and Potapov JSON specs, matrix CSV/binary dumps, reports.

Complex matrices in JSON are either plain nested lists of reals or an object
``{"re": [[...]], "im": [[...]]}``.  The binary matrix format is a 16-byte
little-endian header (magic ``BTOP``, ``u32 n``, ``u32 N``, ``u32 kind``)
followed by the entries as interleaved ``float64`` real/imaginary pairs in
row-major order.
"""

from __future__ import annotations

import json
import math
import struct
from pathlib import Path

import numpy as np

from .operators import KIND_CODES
from .potapov import BlaschkeFactor, ModelSpaceBasis, PotapovProduct
from .symbol import LaurentMatrixSymbol

MAGIC = b"BTOP"
_HEADER = struct.Struct("<4sIII")
SIGNIFICANT_DIGITS = 12


class SpecParseError(ValueError):
    """A spec file is malformed; the CLI maps this to exit code 2."""


# -- JSON specs -------------------------------------------------------

def _matrix(value, what: str) -> np.ndarray:
    try:
        if isinstance(value, dict):
            re = np.asarray(value["re"], dtype=float)
            im = value.get("im")
            im = np.zeros_like(re) if im is None else np.asarray(im, dtype=float)
            if re.shape != im.shape:
                raise SpecParseError(f"{what}: re and im shapes differ")
            m = re + 1j * im
        else:
            m = np.asarray(value, dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise SpecParseError(f"{what}: cannot read matrix ({exc})") from None
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise SpecParseError(f"{what}: expected a 2-d matrix, got shape {m.shape}")
    return m


def _complex(value, what: str) -> complex:
    if isinstance(value, dict):
        try:
            return complex(float(value.get("re", 0)), float(value.get("im", 0)))
        except (TypeError, ValueError):
            raise SpecParseError(f"{what}: bad complex number") from None
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    try:
        return complex(value)
    except (TypeError, ValueError):
        raise SpecParseError(f"{what}: bad complex number") from None


def _load_json(source) -> dict:
    if isinstance(source, dict):
        return source
    try:
        return json.loads(Path(source).read_text())
    except OSError as exc:
        raise SpecParseError(f"cannot read {source}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{source}: invalid JSON ({exc})") from None


def symbol_from_json(source) -> LaurentMatrixSymbol:
    """Parse ``{"n", "coeffs": [{"k", "re", "im"}], "bounded_type"}``.

    ``source`` is a path or an already decoded dict.  Duplicate ``k`` is an
    error, as is a coefficient whose size disagrees with ``n``.
    """
    data = _load_json(source)
    if not isinstance(data, dict) or "n" not in data or "coeffs" not in data:
        raise SpecParseError("symbol spec needs keys 'n' and 'coeffs'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise SpecParseError(f"'n' must be a positive integer, got {n!r}")
    coeffs = {}
    for i, entry in enumerate(data["coeffs"]):
        if not isinstance(entry, dict) or "k" not in entry:
            raise SpecParseError(f"coeffs[{i}] needs a 'k' field")
        k = entry["k"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise SpecParseError(f"coeffs[{i}]: k must be an integer")
        if k in coeffs:
            raise SpecParseError(f"duplicate coefficient index k = {k}")
        if "re" not in entry:
            raise SpecParseError(f"coeffs[{i}] needs 're' (and optionally 'im')")
        m = _matrix({"re": entry["re"], "im": entry.get("im")}, f"coeffs[{i}]")
        if m.shape != (n, n):
            raise SpecParseError(f"coeffs[{i}] has shape {m.shape}, expected {(n, n)}")
        coeffs[k] = m
    bounded = data.get("bounded_type", True)
    if not isinstance(bounded, bool):
        raise SpecParseError("'bounded_type' must be a boolean")
    return LaurentMatrixSymbol.from_dict(coeffs, n=n, bounded_type=bounded)


def symbol_to_json(phi: LaurentMatrixSymbol) -> dict:
    return {
        "n": phi.n,
        "coeffs": [{"k": k, "re": np.real(c).tolist(), "im": np.imag(c).tolist()}
                   for k, c in phi.items() if np.any(c)],
        "bounded_type": phi.bounded_type,
    }


def potapov_from_json(source) -> PotapovProduct:
    """Parse ``{"v": matrix, "factors": [{"alpha": {re, im}, "P": matrix}]}``."""
    data = _load_json(source)
    if not isinstance(data, dict) or "v" not in data:
        raise SpecParseError("Potapov spec needs key 'v'")
    v = _matrix(data["v"], "v")
    factors = []
    for i, f in enumerate(data.get("factors", [])):
        if not isinstance(f, dict) or "alpha" not in f or "P" not in f:
            raise SpecParseError(f"factors[{i}] needs 'alpha' and 'P'")
        try:
            factors.append(BlaschkeFactor(_complex(f["alpha"], f"factors[{i}].alpha"),
                                          _matrix(f["P"], f"factors[{i}].P")))
        except SpecParseError:
            raise
        except ValueError as exc:
            raise SpecParseError(f"factors[{i}]: {exc}") from None
    try:
        return PotapovProduct(v, tuple(factors))
    except ValueError as exc:
        raise SpecParseError(str(exc)) from None


def potapov_to_json(Q: PotapovProduct) -> dict:
    return {
        "v": {"re": np.real(Q.v).tolist(), "im": np.imag(Q.v).tolist()},
        "factors": [{"alpha": {"re": f.alpha.real, "im": f.alpha.imag},
                     "P": {"re": np.real(f.P).tolist(), "im": np.imag(f.P).tolist()}}
                    for f in Q.factors],
    }


# -- deterministic report serialisation -------------------------------

def _round(x: float):
    if math.isnan(x) or math.isinf(x):
        return None
    if x == 0:
        return 0.0
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def canonical(obj):
    """Plain JSON data with rounded floats; key order is preserved as built."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_dict"):
        return canonical(obj.to_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """Byte-stable JSON text for reports."""
    return json.dumps(canonical(obj), indent=2, allow_nan=False) + "\n"


# -- matrices ---------------------------------------------------------

def write_matrix_csv(path, M: np.ndarray) -> None:
    """Complex entries written as ``a+bj`` strings, one matrix row per line."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    rows = [",".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row) for row in M]
    Path(path).write_text("".join(r + "\n" for r in rows))


def read_matrix_csv(path) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, delimiter=",", dtype=complex, ndmin=2))


def write_btop(path, M: np.ndarray, n: int, N: int, kind: str | int = "composite") -> None:
    code = KIND_CODES[kind] if isinstance(kind, str) else int(kind)
    M = np.ascontiguousarray(M, dtype="<c16")
    if M.shape != (n * N, n * N):
        raise ValueError(f"matrix shape {M.shape} does not match n = {n}, N = {N}")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, n, N, code))
        fh.write(M.tobytes(order="C"))


def read_btop(path):
    """Returns ``(matrix, n, N, kind_code)``."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise SpecParseError("file too short for a BTOP header")
    magic, n, N, kind = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SpecParseError(f"bad magic {magic!r}")
    size = n * N
    body = raw[_HEADER.size:]
    if len(body) != size * size * 16:
        raise SpecParseError("payload length does not match header")
    M = np.frombuffer(body, dtype="<c16").reshape(size, size).astype(complex)
    return M, n, N, kind


def write_model_space_csv(path, basis: ModelSpaceBasis) -> None:
    """One column per basis vector; row ``i * n + a`` is coefficient ``i``, entry ``a``."""
    write_matrix_csv(path, basis.vectors if basis.dim else np.zeros((basis.n * basis.N, 0)))
