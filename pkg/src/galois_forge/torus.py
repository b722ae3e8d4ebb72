"""Numerical model of the complex torus attached to a scenic polynomial.

The lattice is ``Z^d = Z[x]/(f)`` with the endomorphism "multiply by x",
i.e. the companion matrix ``C`` (subdiagonal ones, last column ``-a_i``).
For a root ``mu`` the Vandermonde row ``(1, mu, ..., mu^(d-1))`` is a left
eigenvector of ``C``; stacking one root from each conjugate pair gives the
period matrix ``Pi`` and the complex structure

    J = P^-1 diag(i, ..., i, -i, ..., -i) P,    P = [Pi; conj(Pi)],

which is real, squares to ``-I`` and commutes with ``C``.

The Poincare part works on ``Lambda + Lambda^dual`` with the alternating
form ``((l1, h1), (l2, h2)) -> h2(phi l1) - h1(phi l2)`` whose Gram matrix is
``[[0, phi^T], [-phi, 0]]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import mpmath
import numpy as np

from .errors import IllConditioned, NoConvergence, NotMonic, RealRootDetected
from .intpoly import (
    IntPoly,
    bareiss_det,
    cauchy_bound,
    discriminant,
    squarefree_part_check,
    sturm_real_root_count,
)

DEFAULT_TOL = 1e-8
MAX_ITER = 500


@dataclass(frozen=True)
class Endomorphism:
    dim: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Endomorphism":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("endomorphism matrix must be square")
        return cls(len(rows), rows)

    @classmethod
    def identity(cls, d: int) -> "Endomorphism":
        return cls.from_rows([[int(i == j) for j in range(d)] for i in range(d)])

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object)

    def transpose(self) -> "Endomorphism":
        return Endomorphism.from_rows(list(zip(*self.entries)))

    def det(self) -> int:
        return bareiss_det(self.entries)


def charpoly(matrix: Sequence[Sequence[int]]) -> IntPoly:
    """Exact characteristic polynomial ``det(xI - A)`` by Faddeev-LeVerrier."""
    n = len(matrix)
    a = [list(map(int, row)) for row in matrix]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    # M_1 = I; c_{n-k} = -tr(A M_k) / k; M_{k+1} = A M_k + c_{n-k} I
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        c, rem = divmod(-tr, k)
        assert rem == 0, "Faddeev-LeVerrier division must be exact over Z"
        coeffs[n - k] = c
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return IntPoly(coeffs)


def companion(f: IntPoly) -> Endomorphism:
    if f.is_zero() or not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    d = f.degree
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -f.coeffs[i]
    endo = Endomorphism.from_rows(rows)
    if charpoly(endo.entries) != f:
        raise AssertionError("companion matrix characteristic polynomial mismatch")
    return endo


# ------------------------------------------------------------------ roots


@dataclass
class SpectrumData:
    roots: np.ndarray
    pairs: list[tuple[int, int]]
    selected: list[int]
    residuals: np.ndarray
    min_imag: float
    iterations: int = 0
    roots_mp: list = field(default_factory=list, repr=False)
    dps: int = 0


def _horner_with_derivative(desc: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p = np.full_like(z, desc[0])
    dp = np.zeros_like(z)
    for a in desc[1:]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def aberth(f: IntPoly, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> tuple[np.ndarray, int]:
    """All roots of monic ``f`` by Aberth-Ehrlich iteration in double precision.

    Starts from a slightly perturbed circle of radius ``|a_0|^(1/d)`` (clipped
    inside the Cauchy bound) and stops once every correction is below ``tol``
    relative to ``max(1, |z|)``.
    """
    d = f.degree
    desc = np.array([float(c) for c in reversed(f.coeffs)], dtype=complex)
    bound = float(cauchy_bound(f))
    radius = min(abs(float(f.coeffs[0])) ** (1.0 / d) if f.coeffs[0] else 1.0, bound * 0.9)
    radius = max(radius, 1e-3)
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    z = radius * np.exp(1j * angles) * (1 + 0.01 * np.cos(3.0 * np.arange(d)))
    for it in range(1, max_iter + 1):
        p, dp = _horner_with_derivative(desc, z)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))) and np.all(np.isfinite(z)):
            return z, it
    raise NoConvergence(f"Aberth iteration did not converge in {max_iter} steps")


def scaled_residuals(f: IntPoly, z: np.ndarray) -> np.ndarray:
    """``|f(z)| / sum |a_i| |z|^i`` per root."""
    desc = np.array([float(c) for c in reversed(f.coeffs)], dtype=complex)
    p, _ = _horner_with_derivative(desc, z)
    scale, _ = _horner_with_derivative(np.abs(desc).astype(complex), np.abs(z).astype(complex))
    return np.abs(p) / np.abs(scale)


def working_precision(f: IntPoly, z: np.ndarray) -> int:
    """Decimal digits covering the Vandermonde conditioning plus a safety margin."""
    rmax = max(2.0, float(np.max(np.abs(z))))
    rmin = min(1.0, float(np.min(np.abs(z))))
    gap = min(
        (abs(z[i] - z[j]) for i in range(len(z)) for j in range(i + 1, len(z))), default=1.0
    )
    grow = f.degree * (np.log10(rmax) - np.log10(rmin)) - 2 * np.log10(min(1.0, gap))
    return int(40 + 2 * grow)


def _eval_mp(desc, x):
    p = dp = mpmath.mpc(0)
    for a in desc:
        dp = dp * x + p
        p = p * x + a
    return p, dp


def _polish(desc: list, z: complex, dps: int) -> mpmath.mpc:
    x = mpmath.mpc(z)
    eps = mpmath.mpf(10) ** (-(dps - 5))
    for _ in range(200):
        p, dp = _eval_mp(desc, x)
        step = p / dp
        x -= step
        if abs(step) <= eps * max(1, abs(x)):
            return x
    raise NoConvergence(f"Newton polishing stalled near {z}")


def _vieta_ok(f: IntPoly, mus: list, dps: int) -> bool:
    poly = [mpmath.mpc(1)]
    for mu in mus:
        poly = [a - mu * b for a, b in zip(poly + [0], [0] + poly)]
    # poly is ascending-by-degree reversed: highest first after this loop
    expected = list(reversed(f.coeffs))
    scale = max(abs(c) for c in f.coeffs)
    err = max(abs(a - b) for a, b in zip(poly, expected))
    return err <= scale * mpmath.mpf(10) ** (-(dps // 2))


def high_precision_roots(f: IntPoly, z: np.ndarray, dps: int) -> list:
    """Newton-polish double-precision roots to ``dps`` digits, falling back to mpmath.polyroots."""
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c) for c in reversed(f.coeffs)]
        try:
            mus = [_polish(desc, zi, dps) for zi in z]
            if _vieta_ok(f, mus, dps):
                return mus
        except (NoConvergence, ZeroDivisionError):
            pass
        mus = mpmath.polyroots(desc, maxsteps=2000, extraprec=2 * dps)
        if not _vieta_ok(f, mus, dps):
            raise NoConvergence("high-precision root refinement failed")
        return list(mus)


def _root_error_bounds(f: IntPoly, mus: list, dps: int) -> list:
    """``d |f(mu) / f'(mu)|``: a disc of that radius around ``mu`` contains a root."""
    with mpmath.workdps(dps):
        desc = [mpmath.mpf(c) for c in reversed(f.coeffs)]
        out = []
        for mu in mus:
            p, dp = _eval_mp(desc, mu)
            out.append(f.degree * abs(p / dp) + mpmath.mpf(10) ** (-(dps - 10)) * max(1, abs(mu)))
        return out


def pair_conjugates(mus: list, errs: list) -> list[tuple[int, int]]:
    """Greedy perfect matching of each upper-half-plane root with its conjugate."""
    d = len(mus)
    upper = sorted((i for i in range(d) if mpmath.im(mus[i]) > 0), key=lambda i: (mpmath.re(mus[i]), mpmath.im(mus[i])))
    lower = {i for i in range(d) if mpmath.im(mus[i]) <= 0}
    pairs = []
    for a in upper:
        if not lower:
            break
        b = min(lower, key=lambda j: abs(mus[a] - mpmath.conj(mus[j])))
        if abs(mus[a] - mpmath.conj(mus[b])) > 10 * (errs[a] + errs[b]):
            raise NoConvergence(f"root {complex(mus[a])} has no conjugate partner")
        lower.remove(b)
        pairs.append((a, b))
    if lower or len(pairs) * 2 != d:
        raise NoConvergence("roots do not split into conjugate pairs")
    return pairs


def roots(f: IntPoly, tol: float = DEFAULT_TOL, selection: Sequence[bool] | None = None) -> SpectrumData:
    """Spectrum of a monic even-degree polynomial with no real roots.

    Aberth-Ehrlich in double precision, then Newton polishing at a working
    precision chosen from the root spread.  A real root is reported when the
    exact Sturm count is positive or when some root's imaginary part is not
    larger than its own error bound.

    ``selection`` (one flag per conjugate pair, ordered by real part) picks
    the lower-half-plane member instead of the upper one where False.
    """
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if f.degree % 2 or f.degree < 2:
        raise ValueError(f"need even positive degree, got {f.degree}")
    if squarefree_part_check(f) and sturm_real_root_count(f) > 0:
        raise RealRootDetected(f"{f} has {sturm_real_root_count(f)} real roots (Sturm)")
    z, iters = aberth(f, tol)
    dps = working_precision(f, z)
    mus = high_precision_roots(f, z, dps)
    errs = _root_error_bounds(f, mus, dps)
    with mpmath.workdps(dps):
        for mu, err in zip(mus, errs):
            if abs(mpmath.im(mu)) <= 10 * err:
                raise RealRootDetected(f"root {complex(mu)} cannot be separated from the real axis")
        pairs = pair_conjugates(mus, errs)
    if selection is None:
        selected = [a for a, _ in pairs]
    else:
        if len(selection) != len(pairs):
            raise ValueError(f"selection mask needs {len(pairs)} entries")
        selected = [a if keep else b for (a, b), keep in zip(pairs, selection)]
    z = np.array([complex(mu) for mu in mus])
    min_imag = float(min(abs(mpmath.im(mu)) for mu in mus))
    return SpectrumData(z, pairs, selected, scaled_residuals(f, z), min_imag, iters, mus, dps)


# ------------------------------------------------------------ period matrix


@dataclass
class TorusModel:
    f: IntPoly
    C: Endomorphism
    spectrum: SpectrumData
    Pi: mpmath.matrix
    J_mp: mpmath.matrix
    tol: float
    dps: int
    residual_report: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.f.degree // 2

    @property
    def J(self) -> np.ndarray:
        return _mp_to_real(self.J_mp)

    @property
    def Pi_array(self) -> np.ndarray:
        return np.array(
            [[complex(self.Pi[i, j]) for j in range(self.Pi.cols)] for i in range(self.Pi.rows)]
        )

    def ok(self) -> bool:
        checked = ("Pi_C_minus_D_Pi", "J_squared_plus_I", "J_C_minus_C_J", "J_imag_residue")
        return all(self.residual_report[k] < self.tol for k in checked) and self.residual_report["abs_det_P"] > 1e-6

    def to_json(self) -> dict:
        def fmt(x):
            return float(mpmath.nstr(x, 17))

        return {
            "n": self.n,
            "roots": [[float(z.real), float(z.imag)] for z in self.spectrum.roots],
            "selected": list(self.spectrum.selected),
            "period_matrix": [
                [[fmt(mpmath.re(self.Pi[i, j])), fmt(mpmath.im(self.Pi[i, j]))] for j in range(self.Pi.cols)]
                for i in range(self.Pi.rows)
            ],
            "J": [[fmt(self.J_mp[i, j]) for j in range(self.J_mp.cols)] for i in range(self.J_mp.rows)],
            "companion": [[str(v) for v in row] for row in self.C.entries],
        }


def _mp_to_real(m: mpmath.matrix) -> np.ndarray:
    return np.array([[float(mpmath.re(m[i, j])) for j in range(m.cols)] for i in range(m.rows)])


def _inf_norm(m: mpmath.matrix) -> mpmath.mpf:
    return max((abs(m[i, j]) for i in range(m.rows) for j in range(m.cols)), default=mpmath.mpf(0))


def period_matrix(
    f: IntPoly,
    tol: float = DEFAULT_TOL,
    *,
    require_scenic: bool = True,
    selection: Sequence[bool] | None = None,
    dps: int | None = None,
) -> TorusModel:
    """Period matrix, complex structure and residual report for ``f``.

    With ``require_scenic`` the full scenic certificate must pass first;
    pass False to model any monic even-degree polynomial without real roots.
    """
    if require_scenic:
        from .galois import scenic_check

        cert = scenic_check(f)
        if not cert.scenic:
            raise ValueError(f"{f} is not scenic: {', '.join(cert.failures)}")
    C = companion(f)
    spec = roots(f, tol, selection)
    d, n = f.degree, f.degree // 2
    dps = dps or spec.dps
    with mpmath.workdps(dps):
        mus = [spec.roots_mp[i] for i in spec.selected]
        Pi = mpmath.matrix(n, d)
        for i, mu in enumerate(mus):
            v = mpmath.mpc(1)
            for j in range(d):
                Pi[i, j] = v
                v *= mu
        P = mpmath.matrix(d, d)
        for i in range(n):
            for j in range(d):
                P[i, j] = Pi[i, j]
                P[n + i, j] = mpmath.conj(Pi[i, j])
        Dm = mpmath.diag([mpmath.mpc(0, 1)] * n + [mpmath.mpc(0, -1)] * n)
        J_complex = mpmath.inverse(P) * Dm * P
        imag_residue = max(abs(mpmath.im(J_complex[i, j])) for i in range(d) for j in range(d))
        J = mpmath.matrix([[mpmath.re(J_complex[i, j]) for j in range(d)] for i in range(d)])
        Cm = mpmath.matrix([list(r) for r in C.entries])

        # row scaling: each row of Pi divided by its largest entry
        scaled = Pi.copy()
        for i in range(n):
            s = max(abs(Pi[i, j]) for j in range(d))
            for j in range(d):
                scaled[i, j] /= s
        Dsel = mpmath.diag(mus)
        pc = _inf_norm(scaled * Cm - Dsel * scaled)
        eye = mpmath.eye(d)
        j2 = _inf_norm(J * J + eye)
        jc = _inf_norm(J * Cm - Cm * J)
        Ps = mpmath.matrix(d, d)
        for i in range(n):
            for j in range(d):
                Ps[i, j] = scaled[i, j]
                Ps[n + i, j] = mpmath.conj(scaled[i, j])
        det_scaled = abs(mpmath.det(Ps))
        det_raw = abs(mpmath.det(P))
        report = {
            "Pi_C_minus_D_Pi": float(pc),
            "J_squared_plus_I": float(j2),
            "J_C_minus_C_J": float(jc),
            "J_imag_residue": float(imag_residue),
            "abs_det_P": float(det_raw),
            "abs_det_P_scaled": float(det_scaled),
            # |det P|^2 = |disc f| for the full Vandermonde on all roots
            "det_P_vs_sqrt_disc": float(abs(det_raw**2 - abs(discriminant(f))) / abs(discriminant(f))),
            "max_root_residual": float(np.max(spec.residuals)),
        }
    # the row-scaled determinant is only a conditioning diagnostic: it shrinks
    # geometrically with root spread even though |det P| = sqrt|disc f| >= 1
    if det_raw < 1e-6:
        raise IllConditioned(f"|det [Pi; conj Pi]| = {float(det_raw):.3g}")
    return TorusModel(f, C, spec, Pi, J, tol, dps, report)


def dual_structure(J):
    """Complex structure ``-J^T`` on the dual lattice span."""
    if isinstance(J, mpmath.matrix):
        return -J.T
    return -np.asarray(J).T


# ----------------------------------------------------------- Poincare form


@dataclass(frozen=True)
class PoincareFormModel:
    n: int
    twist: Endomorphism
    M: tuple[tuple[int, ...], ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.M, dtype=object)

    def det(self) -> int:
        return bareiss_det(self.M)

    def is_antisymmetric(self) -> bool:
        size = len(self.M)
        return all(self.M[i][j] == -self.M[j][i] for i in range(size) for j in range(size))


def poincare_form(n: int, twist: Endomorphism | None = None) -> PoincareFormModel:
    """Gram matrix ``[[0, phi^T], [-phi, 0]]`` of the twisted Poincare Chern form."""
    d = 2 * n
    twist = twist or Endomorphism.identity(d)
    if twist.dim != d:
        raise ValueError(f"twist must be {d}x{d}, got {twist.dim}x{twist.dim}")
    phi = twist.entries
    M = [[0] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        for j in range(d):
            M[i][d + j] = phi[j][i]
            M[d + i][j] = -phi[i][j]
    return PoincareFormModel(n, twist, tuple(tuple(r) for r in M))


def standard_symplectic(d: int) -> tuple[tuple[int, ...], ...]:
    return poincare_form(d // 2).M


def _block_diag(a, b):
    a, b = mpmath.matrix(a), mpmath.matrix(b)
    out = mpmath.zeros(a.rows + b.rows, a.cols + b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[i, j] = a[i, j]
    for i in range(b.rows):
        for j in range(b.cols):
            out[a.rows + i, a.cols + j] = b[i, j]
    return out


def check_type11(form: PoincareFormModel, J, J_dual) -> float:
    """``max |Jt^T M Jt - M|`` with ``Jt = blockdiag(J, J_dual)``; zero iff the form is J-invariant."""
    if isinstance(J, np.ndarray):
        J = mpmath.matrix(J.tolist())
    if isinstance(J_dual, np.ndarray):
        J_dual = mpmath.matrix(J_dual.tolist())
    Jt = _block_diag(J, J_dual)
    M = mpmath.matrix([list(r) for r in form.M])
    return float(_inf_norm(Jt.T * M * Jt - M))


def pullback_sign_checks(form: PoincareFormModel | Sequence[Sequence[int]]) -> bool:
    """Exact check that negating either factor of ``T x T^dual`` negates the form."""
    M = form.M if isinstance(form, PoincareFormModel) else tuple(tuple(r) for r in form)
    size = len(M)
    d = size // 2
    for flip_first in (True, False):
        s = [(-1 if (i < d) == flip_first else 1) for i in range(size)]
        # (S^T M S)_{ij} = s_i s_j M_{ij} for diagonal S
        if any(s[i] * s[j] * M[i][j] != -M[i][j] for i in range(size) for j in range(size)):
            return False
    return True
