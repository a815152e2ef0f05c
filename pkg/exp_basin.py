"""Scratch experiment: capture radius of local solvers around the truth."""
from fractions import Fraction as F
import itertools
import random

import numpy as np
from scipy.optimize import least_squares, minimize

import poncelet as P
from poncelet.membership import antisym_matrix_float
from poncelet.recovery import _normalize_vec, frame_from_vec

rng = random.Random(3)


def rand_pencil(c):
    while True:
        try:
            return P.Pencil(
                P.BinaryForm(c + 1, tuple(F(rng.randint(-9, 9)) for _ in range(c + 2))),
                P.BinaryForm(c + 1, tuple(F(rng.randint(-9, 9)) for _ in range(c + 2))),
            )
        except P.DegeneratePencilError:
            pass


def rand_frame():
    while True:
        try:
            return P.ConicFrame(
                tuple(tuple(F(rng.randint(-3, 3)) for _ in range(3)) for _ in range(3))
            )
        except P.GeometryError:
            pass


def make(seedc, c=5):
    global rng
    rng = random.Random(seedc)
    frame = rand_frame()
    pen = rand_pencil(c)
    crv = P.poncelet_curve(frame, pen).to_float()
    return frame, np.array([complex(x) for x in crv.coeffs]), P.conic_vec(frame)


QUADS = list(itertools.combinations(range(7), 4))


def rv_sigma(v, coeffs, degree=5):
    t = frame_from_vec(_normalize_vec(v))
    if t is None:
        return np.full(degree, 1e3)
    m = antisym_matrix_float(t, degree, coeffs)
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return np.full(degree, 1e3)
    return s[2:] / s[0]


def rv_pf(v, coeffs, degree=5):
    t = frame_from_vec(_normalize_vec(v))
    if t is None:
        return np.full(2 * len(QUADS), 1e3)
    m = antisym_matrix_float(t, degree, coeffs)
    nrm = np.linalg.norm(m)
    out = np.empty(len(QUADS), dtype=complex)
    for idx, (i, j, k, l) in enumerate(QUADS):
        out[idx] = m[i, j] * m[k, l] - m[i, k] * m[j, l] + m[i, l] * m[j, k]
    out /= nrm**2
    return np.concatenate([out.real, out.imag])


def try_capture(solver, v0, coeffs, tvec):
    vec, resid = solver(v0, coeffs)
    return resid < 1e-8 and P.projective_distance(vec, tvec) < 1e-4


def solver_ls_sigma(v0, coeffs):
    res = least_squares(rv_sigma, v0, args=(coeffs,), method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    v = _normalize_vec(res.x)
    return v, float(np.max(np.abs(rv_sigma(v, coeffs))))


def solver_ls_pf(v0, coeffs):
    res = least_squares(rv_pf, v0, args=(coeffs,), method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    v = _normalize_vec(res.x)
    return v, float(np.max(np.abs(rv_sigma(v, coeffs))))


def solver_nm_gn(v0, coeffs):
    from poncelet.recovery import _gauss_newton_polish

    def obj(v):
        r = rv_sigma(v, coeffs)
        return float(r[0])

    res = minimize(obj, v0, method="Nelder-Mead", options={"maxfev": 600, "fatol": 1e-15, "xatol": 1e-12})
    vec, best = _gauss_newton_polish(np.asarray(res.x), 5, coeffs, max_iter=60)
    return vec, float(np.max(np.abs(rv_sigma(vec, coeffs))))


if __name__ == "__main__":
    nprng = np.random.default_rng(99)
    frame, coeffs, tvec = make(1)
    for name, solver in (
        ("LM sigma-tail", solver_ls_sigma),
        ("LM pfaffian", solver_ls_pf),
        ("NM+GN sigma", solver_nm_gn),
    ):
        print(name)
        for eps in (0.03, 0.1, 0.2, 0.4, 0.8):
            wins = 0
            for k in range(10):
                d = nprng.standard_normal(6)
                d /= np.linalg.norm(d)
                v0 = _normalize_vec(tvec + eps * d)
                wins += try_capture(solver, v0, coeffs, tvec)
            print(f"  eps={eps}: {wins}/10")
