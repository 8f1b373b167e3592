"""Seeded random matrices for every class the deciders are tested on.

Random stream
-------------
Each ``(seed, trial)`` pair owns an independent Philox4x64-10 stream with
key ``(seed, trial)`` and counter starting at zero (numpy's ``Philox``).
Uniform doubles are ``(x >> 11) * 2**-53`` of successive 64-bit outputs.
Standard normals come from the Marsaglia polar method applied to successive
uniform pairs ``(2 U1 - 1, 2 U2 - 1)``, emitting both variates of each
accepted pair in order.  A standard complex Gaussian is ``(x + i y)/sqrt(2)``
from two consecutive normals, and matrices are filled row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .linalg_core import InvalidInputError, adjoint

__all__ = ["GenSpec", "GaussianStream", "generate", "CLASSES"]

CLASSES = (
    "ginibre",
    "hermitian",
    "unitary",
    "normal_with_spectrum",
    "trace_zero_2x2",
    "symmetric_spectrum_normal",
    "orthogonal_pair",
    "mirrored_block",
)

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GenSpec:
    cls: str
    n: int
    seed: int = 0
    trial: int = 0
    params: Mapping[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict:
        params = {k: ([[complex(z).real, complex(z).imag] for z in v] if k in ("spectrum", "half_spectrum") else v)
                  for k, v in self.params.items()}
        return {"class": self.cls, "n": self.n, "seed": self.seed, "trial": self.trial, "params": params}


class GaussianStream:
    """Standard normal variates from a keyed Philox stream via the polar method."""

    def __init__(self, seed: int, trial: int = 0, block: int = 256):
        key = np.array([seed & _MASK64, trial & _MASK64], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))
        self._block = block
        self._buf = np.empty(0)

    def _refill(self):
        u = 2.0 * self._gen.random(2 * self._block) - 1.0
        x, y = u[0::2], u[1::2]
        s = x * x + y * y
        ok = (s > 0.0) & (s < 1.0)
        x, y, s = x[ok], y[ok], s[ok]
        f = np.sqrt(-2.0 * np.log(s) / s)
        pairs = np.empty(2 * len(s))
        pairs[0::2], pairs[1::2] = x * f, y * f
        self._buf = np.concatenate([self._buf, pairs])

    def normal(self, size: int) -> np.ndarray:
        while len(self._buf) < size:
            self._refill()
        out, self._buf = self._buf[:size], self._buf[size:]
        return out

    def complex_normal(self, shape) -> np.ndarray:
        k = int(np.prod(shape))
        z = self.normal(2 * k)
        return ((z[0::2] + 1j * z[1::2]) / np.sqrt(2.0)).reshape(shape)


def _ginibre(rs: GaussianStream, n: int) -> np.ndarray:
    return rs.complex_normal((n, n))


def _unitary(rs: GaussianStream, n: int) -> np.ndarray:
    # QR of a Ginibre sample with R's diagonal made positive (the Gram-Schmidt factor)
    Q, R = np.linalg.qr(_ginibre(rs, n))
    d = np.diag(R)
    phase = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return Q * phase[None, :]


def _normal(rs, spectrum) -> np.ndarray:
    spectrum = np.asarray(spectrum, dtype=np.complex128)
    U = _unitary(rs, len(spectrum))
    return (U * spectrum[None, :]) @ adjoint(U)


def _mirror(half: np.ndarray, n: int) -> np.ndarray:
    full = np.concatenate([half, -half])
    if n % 2:
        full = np.append(full, 0.0)
    return full


def generate(spec: GenSpec):
    """Build the matrix (or pair of matrices for ``orthogonal_pair``) described by ``spec``."""
    n, p = spec.n, dict(spec.params)
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"invalid dimension {n!r}")
    if spec.cls not in CLASSES:
        raise InvalidInputError(f"unknown class {spec.cls!r}; choose from {', '.join(CLASSES)}")
    rs = GaussianStream(spec.seed, spec.trial)

    if spec.cls == "ginibre":
        out = _ginibre(rs, n)
    elif spec.cls == "hermitian":
        G = _ginibre(rs, n)
        out = (G + adjoint(G)) / 2
    elif spec.cls == "unitary":
        out = _unitary(rs, n)
    elif spec.cls == "normal_with_spectrum":
        if "spectrum" not in p or len(p["spectrum"]) != n:
            raise InvalidInputError("normal_with_spectrum needs params['spectrum'] of length n")
        out = _normal(rs, p["spectrum"])
    elif spec.cls == "trace_zero_2x2":
        if n != 2:
            raise InvalidInputError("trace_zero_2x2 needs n = 2")
        G = _ginibre(rs, 2)
        out = G - (np.trace(G) / 2) * np.eye(2)
    elif spec.cls == "symmetric_spectrum_normal":
        if n < 2:
            raise InvalidInputError("symmetric_spectrum_normal needs n >= 2")
        half = p.get("half_spectrum")
        if half is None:
            half = rs.complex_normal((n // 2,))
        elif len(half) != n // 2:
            raise InvalidInputError(f"half_spectrum must have {n // 2} values for n = {n}")
        out = _normal(rs, _mirror(np.asarray(half, dtype=np.complex128), n))
    elif spec.cls == "mirrored_block":
        # V (X (+) -X) V*, unitarily similar to its negative
        if n < 2:
            raise InvalidInputError("mirrored_block needs n >= 2")
        k = n // 2
        X = _ginibre(rs, k)
        M = np.zeros((n, n), dtype=np.complex128)
        M[:k, :k], M[k:2 * k, k:2 * k] = X, -X
        V = _unitary(rs, n)
        out = V @ M @ adjoint(V)
    else:  # orthogonal_pair
        if n < 2:
            raise InvalidInputError("orthogonal_pair needs n >= 2")
        k = int(p.get("k", n // 2))
        if not 1 <= k < n:
            raise InvalidInputError("orthogonal_pair needs 1 <= k < n")
        A = _ginibre(rs, n)
        B = _ginibre(rs, n)
        A[k:, :] = 0.0
        B[:k, :] = 0.0
        V = _unitary(rs, n)
        out = (V @ A @ adjoint(V), V @ B @ adjoint(V))
    if isinstance(out, tuple):
        for M in out:
            M.setflags(write=False)
    else:
        out.setflags(write=False)
    return out
