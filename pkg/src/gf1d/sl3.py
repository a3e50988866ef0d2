"""3x3 matrix realization of the scattering algebra.

Nine traceless generators built from three overlapping sl2 triples
(J, K, L) whose diagonal elements sum to zero.  The 2x2 evolution
matrix embeds into the upper-left block; its Gauss factorization

    U = exp(-R_r J+) tau^(2 J3) exp(R_l J-)

holds exactly in this realization because 2*J3 has integer spectrum.
The module also carries the Green function route built from the two
decaying solutions and their Wronskian.
"""

from __future__ import annotations

import numpy as np

from .errors import LogBranch, WronskianZero
from .green import GreenValue
from .polyrep import RELATIONS
from .transfer import interval_triple, semi_infinite_coefficients

__all__ = [
    "GeneratorSet3",
    "commutation_table_check",
    "embed_transfer",
    "gauss_factorization",
    "gauss_factorization_check",
    "intertwiner_check",
    "green_wronskian",
]

WRONSKIAN_THRESHOLD = 1e-12


def _m(rows):
    return np.array(rows, dtype=complex)


class GeneratorSet3:
    """The nine generators as 3x3 matrices, keyed by name."""

    def __init__(self, matrices=None):
        if matrices is None:
            matrices = {
                "J3": _m([[-0.5, 0, 0], [0, 0.5, 0], [0, 0, 0]]),
                "J+": _m([[0, 0, 0], [-1, 0, 0], [0, 0, 0]]),
                "J-": _m([[0, -1, 0], [0, 0, 0], [0, 0, 0]]),
                "K3": _m([[0, 0, 0], [0, -0.5, 0], [0, 0, 0.5]]),
                "K+": _m([[0, 0, 0], [0, 0, 0], [0, -1, 0]]),
                "K-": _m([[0, 0, 0], [0, 0, -1], [0, 0, 0]]),
                "L3": _m([[0.5, 0, 0], [0, 0, 0], [0, 0, -0.5]]),
                "L+": _m([[0, 0, -1], [0, 0, 0], [0, 0, 0]]),
                "L-": _m([[0, 0, 0], [0, 0, 0], [-1, 0, 0]]),
            }
        self.matrices = {k: np.array(v, dtype=complex) for k, v in matrices.items()}

    def __getitem__(self, name):
        return self.matrices[name]

    def perturbed(self, name, eps, i=0, j=2):
        """Copy with one entry of one generator shifted (negative control)."""
        out = {k: v.copy() for k, v in self.matrices.items()}
        out[name][i, j] += eps
        return GeneratorSet3(out)


def commutation_table_check(gens=None):
    """Residual of every bracket relation, plus the hermitian sl2 combinations.

    Returns a list of (relation-id, residual) using the same table as the
    polynomial realization, extended with the J1/J2/J3 form of the J triple
    and the zero-sum of the three diagonal generators.
    """
    if gens is None:
        gens = GeneratorSet3()
    report = []
    for rel_id, a, b, rhs in RELATIONS:
        lhs = gens[a] @ gens[b] - gens[b] @ gens[a]
        want = np.zeros((3, 3), dtype=complex)
        for gname, coeff in rhs.items():
            want = want + coeff * gens[gname]
        report.append((rel_id, float(np.max(np.abs(lhs - want)))))
    j1 = 0.5 * (gens["J+"] + gens["J-"])
    j2 = (gens["J+"] - gens["J-"]) / 2j
    j3 = gens["J3"]
    for rel_id, a, b, c in (
        ("[J1,J2]", j1, j2, 1j * j3),
        ("[J2,J3]", j2, j3, 1j * j1),
        ("[J3,J1]", j3, j1, 1j * j2),
    ):
        report.append((rel_id, float(np.max(np.abs(a @ b - b @ a - c)))))
    report.append(
        ("J3+K3+L3", float(np.max(np.abs(gens["J3"] + gens["K3"] + gens["L3"]))))
    )
    return report


def embed_transfer(m):
    """3x3 evolution: 2x2 amplitude block extended by an invariant direction."""
    u = np.eye(3, dtype=complex)
    u[:2, :2] = m.as_matrix()
    return u


def gauss_factorization(triple, gens=None):
    """Product of the three factors exp(-R_r J+) tau^(2 J3) exp(R_l J-).

    The nilpotent exponentials terminate after the linear term; the
    diagonal factor is diag(1/tau, tau, 1), single-valued in tau because
    2*J3 has eigenvalues (-1, 1, 0).
    """
    if gens is None:
        gens = GeneratorSet3()
    if triple.tau == 0:
        raise LogBranch("tau == 0: diagonal Gauss factor undefined")
    eye = np.eye(3, dtype=complex)
    upper = eye - triple.r_right * gens["J+"]
    diag = np.diag([1.0 / triple.tau, triple.tau, 1.0]).astype(complex)
    lower = eye + triple.r_left * gens["J-"]
    return upper @ diag @ lower


def gauss_factorization_check(m, triple, gens=None):
    """Max entry residual between the embedded evolution and its factorization."""
    return float(
        np.max(np.abs(embed_transfer(m) - gauss_factorization(triple, gens)))
    )


def intertwiner_check(m, triple, gens=None):
    """Exchange identities between the evolution and the endpoint ladders.

    Returns [(id, residual)] for the four first-order identities and the
    quadratic element L+ L- + K- K+ that commutes with the evolution.
    """
    if gens is None:
        gens = GeneratorSet3()
    u = embed_transfer(m)
    tau, rr, rl = triple.tau, triple.r_right, triple.r_left
    lm, lp = gens["L-"], gens["L+"]
    km, kp = gens["K-"], gens["K+"]
    checks = [
        ("U.L- exchange", u @ lm - (tau * lm @ u + rl * u @ kp)),
        ("K+.U exchange", kp @ u - (tau * u @ kp + rr * lm @ u)),
        ("U.K- exchange", u @ km - (tau * km @ u - rl * u @ lp)),
        ("L+.U exchange", lp @ u - (tau * u @ lp - rr * km @ u)),
    ]
    cas = lp @ lm + km @ kp
    checks.append(("quadratic commutant", cas @ u - u @ cas))
    return [(cid, float(np.max(np.abs(r)))) for cid, r in checks]


def _phi_plus(spec, x, x0, k, method, step):
    # solution decaying to the right, normalized at x0
    _, rl = semi_infinite_coefficients(spec, x, k, method, step)
    t = interval_triple(spec, x0, x, k, method, step)  # coefficients of U(x, x0)
    return (1.0 + rl) * t.tau / (1.0 - rl * t.r_right)


def _phi_minus(spec, x, x0, k, method, step):
    # solution decaying to the left, normalized at x0
    rr, _ = semi_infinite_coefficients(spec, x, k, method, step)
    t = interval_triple(spec, x, x0, k, method, step)  # coefficients of U(x0, x)
    return (1.0 + rr) * t.tau / (1.0 - t.r_left * rr)


def green_wronskian(spec, x, y, k, method="exact_piecewise", step=1e-3):
    """Green function from the two decaying solutions.

    G(x, y) = -phi_plus(max) phi_minus(min) / W with the x-independent
    Wronskian evaluated at the support midpoint x0, where it reduces to
    W = -2ik (1 - R_l(+inf, x0) R_r(x0, -inf)).
    """
    k = complex(k)
    x_l, x_r = spec.support
    x0 = 0.5 * (x_l + x_r)
    hi, lo = (x, y) if x >= y else (y, x)
    rr0, rl0 = semi_infinite_coefficients(spec, x0, k, method, step)
    denom = 1.0 - rl0 * rr0
    if abs(denom) < WRONSKIAN_THRESHOLD:
        raise WronskianZero(
            f"|W| / |2ik| = {abs(denom):.3e} below threshold at k = {k}"
        )
    two_ik_g = (
        _phi_plus(spec, hi, x0, k, method, step)
        * _phi_minus(spec, lo, x0, k, method, step)
        / denom
    )
    return GreenValue(
        value=two_ik_g / (2j * k), x=x, y=y, k=k, route="wronskian",
        truncation_loss=0.0,
    )
