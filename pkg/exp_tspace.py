"""Scratch experiment: conic recovery by least squares in frame space."""
from fractions import Fraction as F
import itertools
import random
import time

import numpy as np

import poncelet as P
from poncelet.membership import antisym_matrix_float
from poncelet.recovery import _normalize_vec

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


def pfaff_res(m):
    nrm = np.linalg.norm(m)
    out = np.empty(len(QUADS), dtype=complex)
    for idx, (i, j, k, l) in enumerate(QUADS):
        out[idx] = m[i, j] * m[k, l] - m[i, k] * m[j, l] + m[i, l] * m[j, k]
    return out / nrm**2


def sig_res(m):
    s = np.linalg.svd(m, compute_uv=False)
    return s[2:] / s[0]


def conic_vec_of_t(t):
    m0 = np.array([[0, 0, 0.5], [0, -1, 0], [0.5, 0, 0]], dtype=complex)
    inv = np.linalg.inv(t)
    mm = inv.T @ m0 @ inv
    vec = np.array([mm[0, 0], mm[1, 1], mm[2, 2], 2 * mm[0, 1], 2 * mm[0, 2], 2 * mm[1, 2]])
    # rotate phase to closest real representative
    piv = np.argmax(np.abs(vec))
    vec = vec / vec[piv]
    return _normalize_vec(vec.real) if np.linalg.norm(vec.imag) < 1e-6 * np.linalg.norm(vec.real) else None


def t_to_x(t):
    return np.concatenate([t.real.ravel(), t.imag.ravel()])


def x_to_t(x):
    return (x[:9] + 1j * x[9:]).reshape(3, 3)


def lm_solve(coeffs, degree, x0, resfun, max_iter=60, det_tol=1e-8):
    x = x0.copy()

    def rv(xx):
        t = x_to_t(xx)
        tn = t / np.linalg.norm(t)
        if abs(np.linalg.det(tn)) < det_tol:
            return None
        m = antisym_matrix_float(tn, degree, coeffs)
        r = resfun(m)
        rr = np.concatenate([r.real, r.imag]) if np.iscomplexobj(r) else r
        return rr

    r = rv(x)
    if r is None:
        return x, float("inf")
    best = float(np.linalg.norm(r, np.inf))
    lam = 1e-3
    for _ in range(max_iter):
        jac = np.zeros((len(r), 18))
        h = 1e-7
        bad = False
        for k in range(18):
            xp = x.copy()
            xp[k] += h
            rp = rv(xp)
            if rp is None:
                bad = True
                break
            jac[:, k] = (rp - r) / h
        if bad:
            break
        improved = False
        for _ in range(8):
            a = jac.T @ jac + lam * np.eye(18)
            g = jac.T @ r
            try:
                step = np.linalg.solve(a, -g)
            except np.linalg.LinAlgError:
                lam *= 10
                continue
            rn = rv(x + step)
            if rn is not None:
                nn = float(np.linalg.norm(rn, np.inf))
                if nn < best:
                    x = x + step
                    r, best = rn, nn
                    lam = max(lam / 3, 1e-12)
                    improved = True
                    break
            lam *= 10
        if not improved:
            break
        if best < 1e-13:
            break
    return x, best


def run(resfun, label, curveseeds=(1, 2, 5), tries=15):
    nprng = np.random.default_rng(42)
    t0 = time.time()
    total = hits = 0
    for cs in curveseeds:
        frame, coeffs, tvec = make(cs)
        cur = 0
        for _ in range(tries):
            x0 = nprng.standard_normal(18)
            x, best = lm_solve(coeffs, 5, x0, resfun)
            total += 1
            ok = False
            if best < 1e-10:
                vec = conic_vec_of_t(x_to_t(x) / np.linalg.norm(x_to_t(x)))
                if vec is not None and P.projective_distance(vec, tvec) < 1e-4:
                    ok = True
            hits += ok
            cur += ok
        print(f"  curve {cs}: {cur}/{tries}")
    print(f"{label}: {hits}/{total} captures in {time.time()-t0:.1f}s")


if __name__ == "__main__":
    run(sig_res, "T-space LM on sigma tail")
    run(pfaff_res, "T-space LM on pfaffians")
