"""Fourier transform on a finite abelian group.

``fhat(xi) = sum_x f(x) e(-xi . x)``; the dual group is identified with the
group itself, so spectra are indexed exactly like functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import DomainError, GroupSpec


@dataclass(frozen=True, eq=False)
class Spectrum:
    group: GroupSpec
    values: np.ndarray

    def __len__(self):
        return len(self.values)


def _as_vector(g: GroupSpec, f) -> np.ndarray:
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (g.size,):
        raise DomainError(f"function has shape {f.shape}, expected ({g.size},)")
    return f


def character_matrix(g: GroupSpec, sign: int = -1) -> np.ndarray:
    """Dense N x N matrix of e(sign * xi . x); reference only."""
    idx = np.arange(g.size)
    c = g.coords(idx)
    phase = np.zeros((g.size, g.size))
    for axis, n in enumerate(g.orders):
        phase += np.outer(c[:, axis], c[:, axis]) % n / n
    return np.exp(sign * 2j * np.pi * phase)


def dft_naive(g: GroupSpec, f) -> Spectrum:
    f = _as_vector(g, f)
    return Spectrum(g, character_matrix(g) @ f)


def walsh_hadamard(v: np.ndarray) -> np.ndarray:
    """Unnormalised fast Walsh-Hadamard transform of a length 2^n vector."""
    v = np.array(v, dtype=np.result_type(v, np.complex128)).copy()
    n = len(v)
    h = 1
    while h < n:
        v = v.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = a + b
        v[:, 1, :] = a - b
        v = v.reshape(n)
        h *= 2
    return v


def _axes_transform(g: GroupSpec, f: np.ndarray, sign: int) -> np.ndarray:
    if g.rank == 0:
        return f.copy()
    t = f.reshape(g.orders)
    for axis, n in enumerate(g.orders):
        if n == 1:
            continue
        t = np.moveaxis(t, axis, 0)
        if n == 2:
            t = np.stack([t[0] + t[1], t[0] - t[1]])
        else:
            k = np.arange(n)
            w = np.exp(sign * 2j * np.pi * (np.outer(k, k) % n) / n)
            t = np.tensordot(w, t, axes=(1, 0))
        t = np.moveaxis(t, 0, axis)
    return t.reshape(g.size)


def dft(g: GroupSpec, f, method: str = "auto") -> Spectrum:
    """Transform ``f``; ``method`` is one of auto, naive, axes, wht."""
    f = _as_vector(g, f)
    if method == "auto":
        method = "wht" if g.is_elementary_2 and g.rank > 0 else "axes"
    if method == "naive":
        return dft_naive(g, f)
    if method == "wht":
        if not g.is_elementary_2:
            raise DomainError("Walsh-Hadamard path needs every order equal to 2")
        return Spectrum(g, walsh_hadamard(f))
    if method == "axes":
        return Spectrum(g, _axes_transform(g, f, -1))
    raise ValueError(f"unknown method {method!r}")


def idft(g: GroupSpec, s) -> np.ndarray:
    values = s.values if isinstance(s, Spectrum) else s
    if isinstance(s, Spectrum) and s.group != g:
        raise DomainError("spectrum belongs to a different group")
    values = _as_vector(g, values)
    if g.is_elementary_2 and g.rank > 0:
        return walsh_hadamard(values) / g.size
    return _axes_transform(g, values, +1) / g.size


def energy_spectral(A, B) -> float:
    """(1/N) sum_xi |A^(xi)|^2 |B^(xi)|^2 for two GroupSets."""
    if A.group != B.group:
        raise DomainError("sets live in different groups")
    g = A.group
    fa = dft(g, A.indicator()).values
    fb = dft(g, B.indicator()).values
    return float(np.sum(np.abs(fa) ** 2 * np.abs(fb) ** 2) / g.size)
