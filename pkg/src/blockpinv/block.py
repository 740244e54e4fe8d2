"""Moore-Penrose inverse and range projectors of a 2x2 block matrix.

Given ``E = [[a, b], [c, d]]`` with ``a`` of shape ``(p, s)``, everything is
computed from {1}-inverses of four Hermitian nonnegative matrices of block
size: ``mu`` (p x p), ``sigma`` (s x s), ``nu`` (q x q) and ``omega`` (t x t).
Any {1}-inverses may be used; the default is the SVD pseudoinverse, and
``sampled_supplier`` draws random ones for invariance testing.

Naming follows the block formulas::

    Y = [a, b]    Z = [c, d]    S = [a; c]    T = [b; d]
    mu = Y Y*     sigma = S* S  zeta = Z Z*   tau = T* T
    rho = Z Y*    lam = S* T
    phi = c - rho mu1 a         psi = d - rho mu1 b
    eta = b - a sigma1 lam      theta = d - c sigma1 lam
    V = [phi, psi]              W = [eta; theta]
    nu = V V*                   omega = W* W
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .errors import DimensionError, NotHermitianPSDError
from .geninv import DEFAULT_TOL, one_inverse, one_inverse_sample, require_member
from .matrix import (
    EPS,
    Block2x2,
    BlockPartition,
    as_matrix,
    compose,
    nonzero_condition,
    singular_values,
    split,
)

# A supplier maps (target, rank_tol) to a {1}-inverse of target.  A plain
# array is also accepted where the target is known in advance.
Supplier = Callable[[np.ndarray, float], np.ndarray]
Choice = Union[None, np.ndarray, Supplier]

ILL_CONDITIONED = 1e8
ILL_CONDITIONED_E = 1e10


def _h(x: np.ndarray) -> np.ndarray:
    return x.conj().T


def pinv_supplier(target: np.ndarray, rank_tol: float) -> np.ndarray:
    return one_inverse(target, rank_tol)


def sampled_supplier(seed: int) -> Supplier:
    """Supplier returning a seeded random {1}-inverse of its target."""

    def supply(target: np.ndarray, rank_tol: float) -> np.ndarray:
        return one_inverse_sample(target, seed, rank_tol)

    return supply


def seeded_choices(seed: int) -> dict[str, Supplier]:
    """Independent sampled suppliers for mu1, sigma1, nu1 and omega1 derived from one seed."""
    states = np.random.SeedSequence(seed).generate_state(4)
    names = ("mu1", "sigma1", "nu1", "omega1")
    return {name: sampled_supplier(int(st)) for name, st in zip(names, states)}


def _resolve(choice: Choice, target: np.ndarray, rank_tol: float, name: str, tol: float) -> np.ndarray:
    if choice is None:
        return pinv_supplier(target, rank_tol)
    X = choice(target, rank_tol) if callable(choice) else as_matrix(choice, name)
    if X.shape != target.shape:
        raise DimensionError(f"{name} has shape {X.shape}, expected {target.shape}")
    require_member(target, X, {1}, tol, name)
    return X


@dataclass(frozen=True, eq=False)
class BlockAux:
    """All intermediate quantities of the block construction."""

    blocks: Block2x2
    Y: np.ndarray
    Z: np.ndarray
    S: np.ndarray
    T: np.ndarray
    mu: np.ndarray
    sigma: np.ndarray
    zeta: np.ndarray
    tau: np.ndarray
    rho: np.ndarray
    lam: np.ndarray
    mu1: np.ndarray
    sigma1: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    eta: np.ndarray
    theta: np.ndarray
    V: np.ndarray
    W: np.ndarray
    nu: np.ndarray
    omega: np.ndarray
    nu1: np.ndarray
    omega1: np.ndarray
    rank_tol: float
    warnings: tuple[str, ...] = ()

    @property
    def partition(self) -> BlockPartition:
        return self.blocks.partition

    @property
    def E(self) -> np.ndarray:
        return compose(self.blocks)


def gram_rank_tol(E: np.ndarray) -> float:
    """Rank threshold shared by the four block Gram matrices.

    Scaled by ``||E||_2^2``, the largest eigenvalue of ``E E*``, so that
    Schur-complement noise in ``nu``/``omega`` is not promoted to rank.
    """
    smax = float(singular_values(E)[0])
    return max(E.shape) * EPS * smax * smax


def build_aux(
    blocks: Block2x2,
    mu1: Choice = None,
    sigma1: Choice = None,
    nu1: Choice = None,
    omega1: Choice = None,
    *,
    tol: float = DEFAULT_TOL,
    rank_tol: Optional[float] = None,
) -> BlockAux:
    """Compute every auxiliary block quantity.

    ``mu1`` .. ``omega1`` select the {1}-inverses; each may be ``None`` (SVD
    pseudoinverse), an array, or a supplier ``f(target, rank_tol)``.  Supplied
    inverses are checked against their targets at `tol`.
    """
    a, b, c, d = (as_matrix(x, n) for x, n in zip((blocks.a, blocks.b, blocks.c, blocks.d), "abcd"))
    blocks = Block2x2(a, b, c, d)
    E = compose(blocks)
    if rank_tol is None:
        rank_tol = gram_rank_tol(E)

    Y = np.hstack([a, b])
    Z = np.hstack([c, d])
    S = np.vstack([a, c])
    T = np.vstack([b, d])

    mu = a @ _h(a) + b @ _h(b)
    sigma = _h(a) @ a + _h(c) @ c
    zeta = c @ _h(c) + d @ _h(d)
    tau = _h(b) @ b + _h(d) @ d
    rho = c @ _h(a) + d @ _h(b)
    lam = _h(a) @ b + _h(c) @ d

    mu1_ = _resolve(mu1, mu, rank_tol, "mu1", tol)
    sigma1_ = _resolve(sigma1, sigma, rank_tol, "sigma1", tol)

    rho_mu1 = rho @ mu1_
    phi = c - rho_mu1 @ a
    psi = d - rho_mu1 @ b
    sigma1_lam = sigma1_ @ lam
    eta = b - a @ sigma1_lam
    theta = d - c @ sigma1_lam
    V = np.hstack([phi, psi])
    W = np.vstack([eta, theta])

    nu = phi @ _h(phi) + psi @ _h(psi)
    omega = _h(eta) @ eta + _h(theta) @ theta

    nu1_ = _resolve(nu1, nu, rank_tol, "nu1", tol)
    omega1_ = _resolve(omega1, omega, rank_tol, "omega1", tol)

    flags = []
    for name, g in (("mu", mu), ("sigma", sigma), ("nu", nu), ("omega", omega)):
        cond = nonzero_condition(g, rank_tol)
        if cond > ILL_CONDITIONED:
            flags.append(f"{name}: condition {cond:.3g} of nonzero part exceeds {ILL_CONDITIONED:g}")

    return BlockAux(
        blocks=blocks, Y=Y, Z=Z, S=S, T=T,
        mu=mu, sigma=sigma, zeta=zeta, tau=tau, rho=rho, lam=lam,
        mu1=mu1_, sigma1=sigma1_,
        phi=phi, psi=psi, eta=eta, theta=theta, V=V, W=W,
        nu=nu, omega=omega, nu1=nu1_, omega1=omega1_,
        rank_tol=rank_tol, warnings=tuple(flags),
    )


def build_L(aux: BlockAux) -> Block2x2:
    """Blocks ``l11, l12, l21, l22`` of the left factor ``L`` (in ``E{1,2,4}``)."""
    a, b = aux.blocks.a, aux.blocks.b
    l12 = _h(aux.phi) @ aux.nu1
    l11 = (_h(a) - l12 @ aux.rho) @ aux.mu1
    l22 = _h(aux.psi) @ aux.nu1
    l21 = (_h(b) - l22 @ aux.rho) @ aux.mu1
    return Block2x2(l11, l12, l21, l22)


def build_R(aux: BlockAux) -> Block2x2:
    """Blocks ``r11, r12, r21, r22`` of the right factor ``R`` (in ``E{1,2,3}``)."""
    a, c = aux.blocks.a, aux.blocks.c
    r21 = aux.omega1 @ _h(aux.eta)
    r11 = aux.sigma1 @ (_h(a) - aux.lam @ r21)
    r22 = aux.omega1 @ _h(aux.theta)
    r12 = aux.sigma1 @ (_h(c) - aux.lam @ r22)
    return Block2x2(r11, r12, r21, r22)


def range_projector(aux: BlockAux) -> np.ndarray:
    """Orthogonal projector onto ``ran(E)``: ``S sigma1 S* + W omega1 W*`` assembled blockwise."""
    a, c = aux.blocks.a, aux.blocks.c
    eta, theta = aux.eta, aux.theta
    s1, w1 = aux.sigma1, aux.omega1
    e11 = a @ s1 @ _h(a) + eta @ w1 @ _h(eta)
    e12 = a @ s1 @ _h(c) + eta @ w1 @ _h(theta)
    e21 = c @ s1 @ _h(a) + theta @ w1 @ _h(eta)
    e22 = c @ s1 @ _h(c) + theta @ w1 @ _h(theta)
    return compose(Block2x2(e11, e12, e21, e22))


def corange_projector(aux: BlockAux) -> np.ndarray:
    """Orthogonal projector onto ``ran(E*)``: ``Y* mu1 Y + V* nu1 V``."""
    Y, V = aux.Y, aux.V
    return _h(Y) @ aux.mu1 @ Y + _h(V) @ aux.nu1 @ V


@dataclass(frozen=True, eq=False)
class LRFactors:
    """Left and right factors with ``E^+ = L E R``."""

    L_blocks: Block2x2
    R_blocks: Block2x2

    @property
    def L(self) -> np.ndarray:
        return compose(self.L_blocks)

    @property
    def R(self) -> np.ndarray:
        return compose(self.R_blocks)


@dataclass(frozen=True, eq=False)
class BlockPinvResult:
    """``E^+`` together with its blocks, the factors and the auxiliary data."""

    pinv: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray
    factors: LRFactors
    aux: BlockAux
    warnings: tuple[str, ...] = field(default=())

    @property
    def blocks(self) -> Block2x2:
        return Block2x2(self.alpha, self.beta, self.gamma, self.delta)


def block_pinv(
    E,
    part: BlockPartition,
    mu1: Choice = None,
    sigma1: Choice = None,
    nu1: Choice = None,
    omega1: Choice = None,
    *,
    seed: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    rank_tol: Optional[float] = None,
) -> BlockPinvResult:
    """Moore-Penrose inverse of `E` from block-sized {1}-inverses.

    ``pinv`` is ``L E R``; ``alpha .. delta`` are computed independently from
    the sixteen-term block expansion.  With `seed`, every {1}-inverse not
    given explicitly is drawn by ``seeded_choices(seed)``.
    """
    E = as_matrix(E, "E")
    blocks = split(E, part)
    choices = {"mu1": mu1, "sigma1": sigma1, "nu1": nu1, "omega1": omega1}
    if seed is not None:
        for name, supplier in seeded_choices(seed).items():
            if choices[name] is None:
                choices[name] = supplier
    aux = build_aux(blocks, **choices, tol=tol, rank_tol=rank_tol)
    Lb = build_L(aux)
    Rb = build_R(aux)
    factors = LRFactors(Lb, Rb)

    a, b, c, d = blocks.a, blocks.b, blocks.c, blocks.d
    l11, l12, l21, l22 = Lb.a, Lb.b, Lb.c, Lb.d
    r11, r12, r21, r22 = Rb.a, Rb.b, Rb.c, Rb.d
    alpha = l11 @ a @ r11 + l11 @ b @ r21 + l12 @ c @ r11 + l12 @ d @ r21
    beta = l11 @ a @ r12 + l11 @ b @ r22 + l12 @ c @ r12 + l12 @ d @ r22
    gamma = l21 @ a @ r11 + l21 @ b @ r21 + l22 @ c @ r11 + l22 @ d @ r21
    delta = l21 @ a @ r12 + l21 @ b @ r22 + l22 @ c @ r12 + l22 @ d @ r22

    pinv = factors.L @ E @ factors.R

    flags = list(aux.warnings)
    cond_E = nonzero_condition(E)
    if cond_E > ILL_CONDITIONED_E:
        flags.append(f"E: condition {cond_E:.3g} of nonzero part exceeds {ILL_CONDITIONED_E:g}; result not certified")
    return BlockPinvResult(pinv, alpha, beta, gamma, delta, factors, aux, tuple(flags))


def _check_hermitian_psd(M: np.ndarray, name: str) -> None:
    scale = float(np.linalg.norm(M, "fro"))
    dev = float(np.linalg.norm(M - _h(M), "fro"))
    if dev > 1e-12 * scale:
        raise NotHermitianPSDError(f"{name} is not Hermitian (deviation {dev:.3e})")
    lo = float(np.linalg.eigvalsh((M + _h(M)) / 2)[0])
    if lo < -1e-10 * scale:
        raise NotHermitianPSDError(f"{name} has negative eigenvalue {lo:.3e}")


def rohde_one_inverse(M, p: int, m11_inv, *, tol: float = DEFAULT_TOL, rank_tol: Optional[float] = None) -> np.ndarray:
    """{1}-inverse of a Hermitian nonnegative 2x2 block matrix from one of its leading block.

    ``varsigma = m22 - m21 m11_inv m12`` is inverted with the SVD pseudoinverse
    at a threshold scaled by ``||M||_2`` (not by ``varsigma`` itself).
    """
    M = as_matrix(M, "M")
    n = M.shape[0]
    if M.shape[1] != n:
        raise DimensionError(f"M must be square, got {M.shape}")
    if not 1 <= p < n:
        raise DimensionError(f"leading block size p={p} must satisfy 1 <= p < {n}")
    _check_hermitian_psd(M, "M")
    m11, m12, m21, m22 = M[:p, :p], M[:p, p:], M[p:, :p], M[p:, p:]
    m11_inv = as_matrix(m11_inv, "m11_inv")
    if m11_inv.shape != m11.shape:
        raise DimensionError(f"m11_inv has shape {m11_inv.shape}, expected {m11.shape}")
    require_member(m11, m11_inv, {1}, tol, "m11_inv")
    if rank_tol is None:
        rank_tol = n * EPS * float(singular_values(M)[0])
    vs = m22 - m21 @ m11_inv @ m12
    vs1 = one_inverse(vs, rank_tol)
    x12 = -m11_inv @ m12 @ vs1
    x21 = -vs1 @ m21 @ m11_inv
    x11 = m11_inv - x12 @ m21 @ m11_inv
    return np.block([[x11, x12], [x21, vs1]])


def gh_one_inverses(aux: BlockAux) -> tuple[np.ndarray, np.ndarray]:
    """{1}-inverses of ``G = E E*`` and ``H = E* E`` from mu1, nu1 and sigma1, omega1."""
    mu1, nu1, rho = aux.mu1, aux.nu1, aux.rho
    mrn = mu1 @ _h(rho) @ nu1
    G1 = np.block([[mu1 + mrn @ rho @ mu1, -mrn], [-nu1 @ rho @ mu1, nu1]])
    s1, w1, lam = aux.sigma1, aux.omega1, aux.lam
    slw = s1 @ lam @ w1
    H1 = np.block([[s1 + slw @ _h(lam) @ s1, -slw], [-w1 @ _h(lam) @ s1, w1]])
    return G1, H1


def alt_LR(aux: BlockAux) -> LRFactors:
    """The same ``L`` and ``R`` as ``build_L``/``build_R``, as ``E* G1`` and ``H1 E*``."""
    part = aux.partition
    E = aux.E
    G1, H1 = gh_one_inverses(aux)
    L = _h(E) @ G1
    R = H1 @ _h(E)
    swapped = BlockPartition(part.s, part.t, part.p, part.q)
    return LRFactors(split(L, swapped), split(R, swapped))
