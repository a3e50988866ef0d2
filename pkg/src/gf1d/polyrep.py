"""Representation of the scattering algebra on polynomials in two variables.

Vectors live in the span of xi**p * mu**q with integer p in [0, P] and q
running over q0 + integers (q0 = 0 for the default space).  The nine
generators act as first-order differential operators; the evolution
operator acts by the substitution xi -> Lhat(xi), mu -> That(xi, mu) with

    Lhat(xi) = R_l + xi tau**2 / (1 - xi R_r),
    That(xi, mu) = mu tau / (1 - xi R_r),

expanded as truncated power series in xi.  Coefficients dropped beyond the
cutoff are tallied into a scalar truncation-loss estimate carried on each
vector.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainViolation, GammaPole, TruncationOverflow

__all__ = [
    "PolyVec",
    "MobiusAction",
    "GENERATORS",
    "apply_generator",
    "inner_product",
    "basis_weight",
    "apply_U",
    "lambda_r",
    "lambda_l",
    "lambda_r_power",
    "lambda_l_power",
    "mu_over_one_minus_c_xi",
    "ladder_power",
    "inverse_operator",
    "adjoint_check",
    "inner_product_integral_check",
    "commutation_action_check",
]

GENERATORS = ("J+", "J-", "J3", "K+", "K-", "K3", "L+", "L-", "L3")

# geometric-tail ratio is capped here when estimating dropped coefficients
_RHO_CAP = 0.99


@dataclass
class PolyVec:
    """Sparse vector: coeffs[(p, n)] is the coefficient of xi**p mu**(q0+n)."""

    coeffs: dict
    P: int
    q0: float = 0.0
    loss: float = 0.0

    @classmethod
    def basis(cls, p, n, P, q0=0.0):
        return cls({(p, n): 1.0 + 0j}, P, q0)

    def copy(self):
        return PolyVec(dict(self.coeffs), self.P, self.q0, self.loss)

    def q_of(self, n):
        return self.q0 + n

    def mu_degrees(self):
        return sorted({n for (_, n) in self.coeffs})

    def component(self, n):
        """Coefficient array c[p] of the mu-degree-(q0+n) part, length P+1."""
        c = np.zeros(self.P + 1, dtype=complex)
        for (p, m), v in self.coeffs.items():
            if m == n:
                c[p] = v
        return c

    @classmethod
    def from_components(cls, comps, P, q0=0.0, loss=0.0):
        coeffs = {}
        for n, arr in comps.items():
            for p, v in enumerate(arr[: P + 1]):
                if v != 0:
                    coeffs[(p, n)] = complex(v)
        return cls(coeffs, P, q0, loss)

    def __add__(self, other):
        if self.P != other.P or self.q0 != other.q0:
            raise ValueError("incompatible vectors")
        out = dict(self.coeffs)
        for key, v in other.coeffs.items():
            out[key] = out.get(key, 0j) + v
        return PolyVec(out, self.P, self.q0, self.loss + other.loss)

    def __sub__(self, other):
        return self + (other * -1.0)

    def __mul__(self, scalar):
        return PolyVec(
            {k: v * scalar for k, v in self.coeffs.items()},
            self.P,
            self.q0,
            self.loss * abs(scalar),
        )

    __rmul__ = __mul__

    def max_abs_diff(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return max(
            (abs(self.coeffs.get(k, 0j) - other.coeffs.get(k, 0j)) for k in keys),
            default=0.0,
        )


def apply_generator(name, v):
    """Action of one generator; coefficients pushed beyond P are tallied as loss."""
    out = {}
    lost = 0.0

    def put(p, n, c):
        nonlocal lost
        if c == 0:
            return
        if p > v.P:
            lost += abs(c)
            return
        out[(p, n)] = out.get((p, n), 0j) + c

    for (p, n), c in v.coeffs.items():
        q = v.q_of(n)
        if name == "J+":
            put(p + 1, n, -(p + q) * c)
        elif name == "J-":
            put(p - 1, n, p * c)
        elif name == "K+":
            put(p - 1, n + 1, p * c)
        elif name == "K-":
            put(p + 1, n - 1, q * c)
        elif name == "L+":
            put(p, n - 1, -q * c)
        elif name == "L-":
            put(p, n + 1, (p + q) * c)
        elif name == "J3":
            put(p, n, (p + q / 2.0) * c)
        elif name == "K3":
            put(p, n, ((q - p) / 2.0) * c)
        elif name == "L3":
            put(p, n, (-q - p / 2.0) * c)
        else:
            raise ValueError(f"unknown generator {name!r}")
    return PolyVec(out, v.P, v.q0, v.loss + lost)


def basis_weight(p, q):
    """Diagonal inner-product weight Gamma(p+1)Gamma(q+1)/Gamma(p+q)."""
    if p == 0 and q == 0:
        return 0.0
    if float(q).is_integer() and float(p + q).is_integer():
        qi, si = int(round(q)), int(round(p + q))
        if qi + 1 <= 0 or (si <= 0 and (p, qi) != (0, 0)):
            raise GammaPole(f"weight undefined at (p, q) = ({p}, {q})")
        # p! q! / (p+q-1)! exactly
        return float(
            Fraction(math.factorial(p) * math.factorial(qi), math.factorial(si - 1))
        )
    try:
        return math.exp(
            math.lgamma(p + 1) + math.lgamma(q + 1) - math.lgamma(p + q)
        ) * math.copysign(1.0, math.gamma(q + 1)) * math.copysign(
            1.0, math.gamma(p + q)
        )
    except ValueError as exc:
        raise GammaPole(f"weight undefined at (p, q) = ({p}, {q})") from exc


def inner_product(left, right):
    """Conjugate-linear in left, linear in right."""
    if left.q0 != right.q0:
        raise ValueError("inner product needs matching q-offsets")
    total = 0j
    for key, lv in left.coeffs.items():
        rv = right.coeffs.get(key)
        if rv is None:
            continue
        p, n = key
        total += lv.conjugate() * rv * basis_weight(p, left.q_of(n))
    return total


# ---------------------------------------------------------------------------
# evolution action

@dataclass(frozen=True)
class MobiusAction:
    tau: complex
    r_right: complex
    r_left: complex

    @classmethod
    def from_triple(cls, t):
        return cls(tau=t.tau, r_right=t.r_right, r_left=t.r_left)

    @classmethod
    def identity(cls):
        return cls(1.0 + 0j, 0j, 0j)


def _series_mul(a, b, n):
    """Truncated Cauchy product of coefficient arrays, length n+1."""
    return np.convolve(a[: n + 1], b[: n + 1])[: n + 1]


def _compose_series(g, lhat, n):
    """g(lhat(xi)) truncated at order n, by Horner over the series lhat."""
    out = np.zeros(n + 1, dtype=complex)
    for c in g[::-1]:
        out = _series_mul(out, lhat, n)
        out[0] += c
    return out


def apply_U(action, v, tol=None):
    """Evolution applied to v, expanded to the cutoff of v.

    Each mu-homogeneous component mu**q g(xi) maps to
    tau**q (1 - xi R_r)**(-q) g(Lhat(xi)).
    """
    tau, rr, rl = action.tau, action.r_right, action.r_left
    n_work = v.P + 1  # one extra order for the tail estimate
    lhat = np.zeros(n_work + 1, dtype=complex)
    lhat[0] = rl
    if n_work >= 1:
        lhat[1] = tau * tau
        for m in range(2, n_work + 1):
            lhat[m] = lhat[m - 1] * rr
    comps = {}
    tail = 0.0
    emp_ratio = 0.0
    for n in v.mu_degrees():
        q = v.q_of(n)
        g = np.zeros(n_work + 1, dtype=complex)
        g[: v.P + 1] = v.component(n)
        res = _compose_series(g, lhat, n_work)
        # (1 - xi R_r)^(-q): binomial series, valid for any real/complex q
        b = np.zeros(n_work + 1, dtype=complex)
        b[0] = 1.0
        for m in range(1, n_work + 1):
            b[m] = b[m - 1] * rr * (q + m - 1) / m
        res = _series_mul(res, b, n_work)
        if float(q).is_integer():
            tq = tau ** int(round(q))
        else:
            tq = cmath.exp(q * cmath.log(tau))
        res *= tq
        tail += abs(res[n_work])
        if abs(res[n_work - 1]) > 0:
            emp_ratio = max(emp_ratio, abs(res[n_work]) / abs(res[n_work - 1]))
        comps[n] = res[: v.P + 1]
    # geometric extrapolation of the dropped tail; no bound when the
    # coefficient ratio reaches 1
    rho = max(abs(rr), emp_ratio)
    if rho >= _RHO_CAP:
        loss = math.inf if rho >= 1.0 else (v.loss + tail) / (1.0 - rho)
    else:
        loss = (v.loss + tail) / (1.0 - rho)
    if tol is not None and loss > tol:
        raise TruncationOverflow(f"estimated truncation loss {loss:.3e} > {tol:.3e}")
    return PolyVec.from_components(comps, v.P, v.q0, loss)


# ---------------------------------------------------------------------------
# generating vectors

def lambda_r(r, P):
    """(1 + r) sum_p r**p Psi_{p,1}: the resummed multiple-reflection vector."""
    coeffs = {}
    c = 1.0 + r
    for p in range(P + 1):
        coeffs[(p, 1)] = c
        c = c * r
    return PolyVec(coeffs, P)


def lambda_l(r_l, P):
    """Left counterpart; stored conjugated so the left inner-product slot
    reproduces (1 + R_l) sum R_l**p."""
    return lambda_r(complex(r_l).conjugate(), P)


def _lambda_power_coeffs(r, n, P):
    # mu**n (1+r)**n / (1 - r xi)**n
    pref = (1.0 + r) ** n
    coeffs = {}
    b = 1.0 + 0j
    for p in range(P + 1):
        coeffs[(p, n)] = pref * b
        b = b * r * (n + p) / (p + 1)
    return coeffs


def lambda_r_power(r, n, P):
    """Coefficient-wise n-th function power of lambda_r."""
    return PolyVec(_lambda_power_coeffs(r, n, P), P)


def lambda_l_power(r_l, n, P):
    return PolyVec(_lambda_power_coeffs(complex(r_l).conjugate(), n, P), P)


def mu_over_one_minus_c_xi(m, c, P, scale=1.0):
    """Truncated coefficients of scale * (mu / (1 - c xi))**m."""
    coeffs = {}
    b = complex(scale)
    for p in range(P + 1):
        coeffs[(p, m)] = b
        b = b * c * (m + p) / (p + 1)
    return PolyVec(coeffs, P)


def ladder_power(n, m, c, P):
    """(L- + K+)**n applied to (mu/(1 - c xi))**m, by repeated generator action.

    Computed with an enlarged internal cutoff so that the returned
    coefficients up to P are free of truncation artifacts; equals
    [(m+n-1)!/(m-1)!] (1+c)**n (mu/(1-c xi))**(m+n) truncated at P.
    """
    if m < 1 or n < 1:
        raise ValueError("needs m >= 1 and n >= 1")
    v = mu_over_one_minus_c_xi(m, c, P + n)
    for _ in range(n):
        v = apply_generator("L-", v) + apply_generator("K+", v)
    out = {k: val for k, val in v.coeffs.items() if k[0] <= P}
    return PolyVec(out, P, v.q0)


# ---------------------------------------------------------------------------
# inverse operators

def _single_mu_degree(v, op_name):
    degs = v.mu_degrees()
    if len(degs) != 1:
        raise DomainViolation(f"{op_name} needs a mu-homogeneous input")
    return degs[0]


def inverse_operator(name, v):
    """Inverses of the endpoint ladder operators on their stated domains.

    ``L+inv`` and ``(L+-K-)inv`` integrate in mu (input must vanish at
    mu = 0); ``L-inv`` and ``(L-+K+)inv`` act on mu-homogeneous input of
    degree m > 1 and are diagonal in the xi- and (1+xi)-power bases.
    """
    if name in ("L+inv", "(L+-K-)inv"):
        comps = {}
        for n in v.mu_degrees():
            q = v.q_of(n)
            if q.real < 1 and not (q == 0 and not np.any(v.component(n))):
                raise DomainViolation(
                    f"{name} needs input vanishing at mu=0; found mu-degree {q}"
                )
            g = v.component(n)
            g = -g / (q + 1)
            if name == "(L+-K-)inv":
                inv1pxi = np.array(
                    [(-1.0) ** m for m in range(v.P + 1)], dtype=complex
                )
                g = _series_mul(g, inv1pxi, v.P)
            comps[n + 1] = g
        return PolyVec.from_components(comps, v.P, v.q0, v.loss)
    if name in ("L-inv", "(L-+K+)inv"):
        n = _single_mu_degree(v, name)
        m = v.q_of(n)
        if not m.real > 1:
            raise DomainViolation(f"{name} needs mu-degree m > 1, got {m}")
        g = v.component(n)
        if name == "L-inv":
            out = g / np.array([m + j - 1 for j in range(v.P + 1)])
        else:
            # solve (m-1+p) w_p + (p+1) w_{p+1} = g_p backward; diagonal in
            # powers of 1+xi, but this bidiagonal form is numerically stable
            out = np.zeros(v.P + 1, dtype=complex)
            out[v.P] = g[v.P] / (m + v.P - 1)
            for p in range(v.P - 1, -1, -1):
                out[p] = (g[p] - (p + 1) * out[p + 1]) / (m + p - 1)
        return PolyVec.from_components({n - 1: out}, v.P, v.q0, v.loss)
    raise ValueError(f"unknown inverse operator {name!r}")


# ---------------------------------------------------------------------------
# reporting checks

_ADJOINT = {
    "J+": ("J-", -1.0),
    "J-": ("J+", -1.0),
    "K+": ("K-", 1.0),
    "K-": ("K+", 1.0),
    "L+": ("L-", -1.0),
    "L-": ("L+", -1.0),
    "J3": ("J3", 1.0),
    "K3": ("K3", 1.0),
    "L3": ("L3", 1.0),
}


def adjoint_check(P, q_values=(0, 1, 2, 3), q0=0.0):
    """Verify <Psi', A Psi> = <A^dag Psi', Psi> on all basis pairs up to P."""
    report = []
    for name in GENERATORS:
        dag, sign = _ADJOINT[name]
        worst = 0.0
        for n in q_values:
            for p in range(P):
                psi = PolyVec.basis(p, n, P, q0)
                a_psi = apply_generator(name, psi)
                for key in a_psi.coeffs:
                    psi2 = PolyVec.basis(key[0], key[1], P, q0)
                    lhs = inner_product(psi2, a_psi)
                    rhs = sign * inner_product(apply_generator(dag, psi2), psi)
                    worst = max(worst, abs(lhs - rhs))
        report.append((name, worst))
    return report


def inner_product_integral_check(p, q, n_nodes=80):
    """Radial quadrature of the diagonal weight vs the factorial formula."""
    if p + q < 1:
        raise ValueError("needs p + q >= 1")
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    r = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    integral = float(np.sum(w * r ** (2 * p + 1) * (1.0 - r**2) ** q))
    quad = 2.0 * (1 + p + q) * (p + q) * integral
    formula = basis_weight(p, q)
    return quad, formula


# the full bracket table: (id, A, B, {generator: coefficient})
RELATIONS = []


def _build_relations():
    rel = []
    for x in ("J", "K", "L"):
        rel.append((f"[{x}+,{x}-]", f"{x}+", f"{x}-", {f"{x}3": 2.0}))
        rel.append((f"[{x}3,{x}+]", f"{x}3", f"{x}+", {f"{x}+": 1.0}))
        rel.append((f"[{x}3,{x}-]", f"{x}3", f"{x}-", {f"{x}-": -1.0}))
    for a, b in (("J", "K"), ("K", "L"), ("L", "J")):
        rel.append((f"[{a}3,{b}+]", f"{a}3", f"{b}+", {f"{b}+": -0.5}))
        rel.append((f"[{a}3,{b}-]", f"{a}3", f"{b}-", {f"{b}-": 0.5}))
        rel.append((f"[{b}3,{a}+]", f"{b}3", f"{a}+", {f"{a}+": -0.5}))
        rel.append((f"[{b}3,{a}-]", f"{b}3", f"{a}-", {f"{a}-": 0.5}))
    third = {("J", "K"): "L", ("K", "L"): "J", ("L", "J"): "K"}
    for (a, b), c in third.items():
        rel.append((f"[{a}+,{b}+]", f"{a}+", f"{b}+", {f"{c}-": 1.0}))
        rel.append((f"[{a}-,{b}-]", f"{a}-", f"{b}-", {f"{c}+": -1.0}))
        rel.append((f"[{a}+,{b}-]", f"{a}+", f"{b}-", {}))
        rel.append((f"[{a}-,{b}+]", f"{a}-", f"{b}+", {}))
    for a, b in (("J", "K"), ("K", "L"), ("L", "J")):
        rel.append((f"[{a}3,{b}3]", f"{a}3", f"{b}3", {}))
    return rel


RELATIONS = _build_relations()


def commutation_action_check(P, q_values=(0, 1, 2, 3), q0=0.0):
    """Residual of every bracket relation acting on basis vectors p <= P-2."""
    report = []
    for rel_id, a, b, rhs in RELATIONS:
        worst = 0.0
        for n in q_values:
            for p in range(P - 1):
                psi = PolyVec.basis(p, n, P, q0)
                lhs = apply_generator(a, apply_generator(b, psi)) - apply_generator(
                    b, apply_generator(a, psi)
                )
                want = PolyVec({}, P, q0)
                for gname, coeff in rhs.items():
                    want = want + coeff * apply_generator(gname, psi)
                worst = max(worst, lhs.max_abs_diff(want))
        report.append((rel_id, worst))
    return report
