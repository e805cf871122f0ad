"""JSON file formats and canonical serialization.

Complex numbers are always ``[re, im]`` pairs. :func:`dumps` writes sorted
keys and floats with 17 significant digits, so equal inputs give
byte-identical files.
"""

import json
import math
import numbers

import numpy as np

from .errors import ParseError
from .hilbert import PhysicalState, StateVector
from .kahler import Chart
from .operators import Observable
from .symdata import SymmetryData


def _format_float(x):
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return format(x, ".17g")


def dumps(obj) -> str:
    """Canonical JSON text (no whitespace, sorted keys, 17-digit floats)."""
    parts = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, numbers.Integral):
        out.append(str(int(obj)))
    elif isinstance(obj, numbers.Real):
        out.append(_format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(obj, numbers.Complex):
        _emit(encode_complex(obj), out)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def encode_complex(c):
    c = complex(c)
    return [c.real, c.imag]


def decode_complex(pair):
    if isinstance(pair, (list, tuple)) and len(pair) == 2:
        re, im = pair
        if all(isinstance(v, numbers.Real) and not isinstance(v, bool) for v in (re, im)):
            return complex(float(re), float(im))
    raise ParseError(f"expected a [re, im] pair, got {pair!r}")


def encode_vector(v):
    return [encode_complex(c) for c in np.asarray(v).ravel()]


def decode_vector(data):
    if not isinstance(data, list):
        raise ParseError("expected a list of [re, im] pairs")
    return np.array([decode_complex(p) for p in data], dtype=complex)


def encode_matrix(M):
    return [encode_vector(row) for row in np.asarray(M)]


def decode_matrix(data):
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("expected a list of rows")
    rows = [decode_vector(r) for r in data]
    if len({len(r) for r in rows}) > 1:
        raise ParseError("ragged matrix rows")
    return np.array(rows, dtype=complex).reshape(len(rows), -1)


def _field(data, key):
    if not isinstance(data, dict):
        raise ParseError(f"expected a JSON object, got {type(data).__name__}")
    try:
        return data[key]
    except KeyError:
        raise ParseError(f"missing field {key!r}") from None


def _hbar(data):
    hbar = _field(data, "hbar")
    if isinstance(hbar, bool) or not isinstance(hbar, numbers.Real):
        raise ParseError("hbar must be a number")
    return float(hbar)


def state_to_json(s) -> dict:
    z = s.z_fixed if isinstance(s, PhysicalState) else s.z
    return {"dim": int(z.shape[0]), "hbar": s.hbar, "z": encode_vector(z)}


def state_from_json(data) -> StateVector:
    dim = _field(data, "dim")
    z = decode_vector(_field(data, "z"))
    if not isinstance(dim, int) or dim != z.shape[0]:
        raise ParseError(f"dim {dim!r} does not match {z.shape[0]} coordinates")
    return StateVector(z, _hbar(data))


def observable_to_json(beta) -> dict:
    return {"dim": beta.dim, "hbar": beta.hbar, "B": encode_matrix(beta.B)}


def observable_from_json(data) -> Observable:
    dim = _field(data, "dim")
    B = decode_matrix(_field(data, "B"))
    if not isinstance(dim, int) or B.shape != (dim, dim):
        raise ParseError(f"dim {dim!r} does not match matrix shape {B.shape}")
    return Observable(B, _hbar(data))


def symdata_to_json(sd) -> dict:
    return {
        "chart": sd.chart.value,
        "f": encode_complex(sd.f),
        "X": encode_vector(sd.X),
        "Xbar": encode_vector(sd.Xbar),
        "K": encode_matrix(sd.K),
        "state": state_to_json(sd.state),
    }


def symdata_from_json(data) -> SymmetryData:
    try:
        chart = Chart.parse(_field(data, "chart"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    state = state_from_json(_field(data, "state"))
    if chart is Chart.w:
        try:
            state = PhysicalState(state.z, state.hbar)
        except ValueError as exc:
            raise ParseError(f"affine symmetry data needs a phase-fixed state: {exc}") from None
    X = decode_vector(_field(data, "X"))
    Xbar = decode_vector(_field(data, "Xbar"))
    K = decode_matrix(_field(data, "K"))
    n = X.shape[0]
    if Xbar.shape != (n,) or K.shape != (n, n):
        raise ParseError("inconsistent component shapes in symmetry data")
    return SymmetryData(chart, decode_complex(_field(data, "f")), X, Xbar, K, state)


def moment_report_to_json(report, sampled=None) -> dict:
    out = {
        "exact": [float(x) for x in report.exact],
        "spectral": [float(x) for x in report.spectral],
        "chained": [float(x) for x in report.chained],
        "p": [float(x) for x in report.probabilities],
        "eigenvalues": [float(x) for x in report.eigenvalues],
        "K": report.order,
        "scale": report.scale,
    }
    if sampled is not None:
        out["sampled"] = [float(x) for x in sampled]
    return out


def load(path):
    """Read a JSON file, mapping any decoding problem to :class:`ParseError`."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write(obj, path=None):
    """Write canonical JSON to ``path``, or return the text when ``path`` is None."""
    text = dumps(obj) + "\n"
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
