"""Assembly of the Langlands parameter data.

The parameter is only ever handled through finite data: monomial matrices
with opaque cocycle symbols, the adjoint decomposition into induced
pieces, and the conductor / L-factor / gamma / root number computed by
independent methods that the tests compare.

Cocycle units are never evaluated; any trace or product that still
carries a symbol raises, so every number that leaves this module is
provably cocycle-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import Cyclotomic, HalfPowerScalar, RatFunc
from .local_factors import LocalFactorTriple, induced_factor, lambda_tame
from .tame_galois import (
    GAL_ID,
    GalElt,
    TameParams,
    abelianization_order,
    abelianization_orders,
    gal_elements,
    gal_inv,
    gal_mul,
    norm_index,
    order_two_set,
    weighted_conductor_sum,
)


class RingModelRequired(RuntimeError):
    pass


class CocycleDependent(ArithmeticError):
    """A quantity failed to cancel its opaque cocycle symbols."""


# ---------------------------------------------------------------------------
# monomial matrices over the symbolic unit group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolicUnit:
    """A cyclotomic number times a formal product of opaque cocycle symbols."""

    coef: Cyclotomic
    symbols: Tuple[Tuple[object, int], ...] = ()

    def __mul__(self, other: "SymbolicUnit") -> "SymbolicUnit":
        acc: Dict[object, int] = dict(self.symbols)
        for s, k in other.symbols:
            acc[s] = acc.get(s, 0) + k
            if acc[s] == 0:
                del acc[s]
        return SymbolicUnit(
            self.coef * other.coef, tuple(sorted(acc.items(), key=repr))
        )

    @property
    def is_concrete(self) -> bool:
        return not self.symbols

    def value(self) -> Cyclotomic:
        if self.symbols:
            raise CocycleDependent(f"unresolved cocycle symbols {self.symbols}")
        return self.coef

    @classmethod
    def of(cls, c: Cyclotomic) -> "SymbolicUnit":
        return cls(c)

    @classmethod
    def symbol(cls, name: object) -> "SymbolicUnit":
        return cls(Cyclotomic.one(), ((name, 1),))


class MonomialMatrix:
    """A monomial matrix on the basis v_gamma, gamma in Gal(K/F).

    Stored as gamma -> (image index, entry): column v_gamma maps to
    entry * v_image.
    """

    def __init__(self, P: TameParams, action: Dict[GalElt, Tuple[GalElt, SymbolicUnit]]):
        self.P = P
        self.action = action
        targets = [t for t, _ in action.values()]
        assert len(set(targets)) == len(targets), "not a monomial matrix"

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        out = {}
        for g, (mid, u1) in other.action.items():
            tgt, u2 = self.action[mid]
            out[g] = (tgt, u2 * u1)
        return MonomialMatrix(self.P, out)

    def trace(self) -> Cyclotomic:
        total = Cyclotomic.zero()
        for g, (tgt, u) in self.action.items():
            if tgt == g:
                total = total + u.value()
        return total


def phi1_of_sigma(P: TameParams, sigma: GalElt) -> MonomialMatrix:
    """phi_1 on a Galois-section element: permutation gamma -> sigma gamma
    with opaque cocycle entries alpha(sigma, gamma)."""
    act = {}
    for g in gal_elements(P):
        # normalized cocycle: alpha(1, .) = 1
        unit = (
            SymbolicUnit.of(Cyclotomic.one())
            if sigma == GAL_ID
            else SymbolicUnit.symbol(("alpha", sigma, g))
        )
        act[g] = (gal_mul(sigma, g, P), unit)
    return MonomialMatrix(P, act)


def phi1_of_unit(sys, x) -> MonomialMatrix:
    """phi_1 on x in the unit part of K^x: diagonal with entries
    theta-tilde(x^gamma)."""
    P = sys.P
    act = {}
    for g in gal_elements(P):
        val = sys.theta_tilde.value_on_coords(sys.U.dlog(sys.M.galois_act(g, x)))
        act[g] = (g, SymbolicUnit.of(val))
    return MonomialMatrix(P, act)


def phi1_trace(sys, sigma: GalElt, x) -> Cyclotomic:
    """Trace of phi_1 at (sigma, x): zero off sigma = 1, else the sum of
    theta-tilde over the Galois orbit of x.  Computed through the monomial
    matrices so cocycle-independence is verified, not assumed."""
    m = phi1_of_sigma(sys.P, sigma) * phi1_of_unit(sys, x)
    return m.trace()


# ---------------------------------------------------------------------------
# adjoint decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdjointDecomposition:
    """Pieces of Ad of phi: (Ind_K^F 1 - 1) plus Ind of each twist character.

    unramified_frob_values are the Frobenius eigenvalues of the inertia-fixed
    part (the nontrivial characters of the unramified quotient); paired lists
    each {gamma, gamma^{-1}} orbit once; order_two are the self-paired gamma.
    """

    P: TameParams
    unramified_frob_values: Tuple[Cyclotomic, ...]
    base_change_conductor: int
    induced: Tuple[GalElt, ...]
    paired: Tuple[Tuple[GalElt, GalElt], ...]
    order_two: Tuple[GalElt, ...]

    @property
    def total_dim(self) -> int:
        n = self.P.n
        return (n - 1) + n * len(self.induced)


def adjoint_decompose(P: TameParams) -> AdjointDecomposition:
    f = P.f
    frob_vals = tuple(Cyclotomic.root_of_unity(f, j) for j in range(1, f))
    o2 = order_two_set(P)
    induced = tuple(g for g in sorted(gal_elements(P)) if g != GAL_ID)
    paired = []
    order_two = []
    seen = set()
    for g in induced:
        if g in seen:
            continue
        gi = gal_inv(g, P)
        if gi == g:
            order_two.append(g)
            seen.add(g)
        else:
            paired.append((g, gi))
            seen.add(g)
            seen.add(gi)
    assert set(order_two) == set(o2.elements) - {GAL_ID}
    dec = AdjointDecomposition(
        P=P,
        unramified_frob_values=frob_vals,
        base_change_conductor=f * (P.e - 1),
        induced=induced,
        paired=tuple(paired),
        order_two=tuple(order_two),
    )
    assert dec.total_dim == P.n * P.n - 1
    return dec


# ---------------------------------------------------------------------------
# adjoint L-factor: three methods
# ---------------------------------------------------------------------------

def frobenius_matrix(f: int) -> List[List[int]]:
    """The matrix of Frobenius on the (f-1)-dimensional fixed space, in the
    basis where the regular representation of Z/f drops the invariant line."""
    return [
        [-1 if j == 0 else (1 if j == i + 1 else 0) for j in range(f - 1)]
        for i in range(f - 1)
    ]


def adjoint_L(P: TameParams, method: str = "closed") -> RatFunc:
    f = P.f
    if method == "closed":
        return RatFunc([Fraction(1)], [Fraction(1)] * f)
    if method == "decomposition":
        dec = adjoint_decompose(P)
        coeffs = [Cyclotomic.one()]
        for val in dec.unramified_frob_values:
            nxt = [Cyclotomic.zero()] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] = nxt[i] + c
                nxt[i + 1] = nxt[i + 1] - c * val
            coeffs = nxt
        den = []
        for c in coeffs:
            assert c.is_rational(), "eigenvalue product must be rational"
            den.append(c.rational_value())
        return RatFunc([Fraction(1)], den)
    if method == "matrix":
        m = frobenius_matrix(f)
        size = f - 1
        # det(1 - u M) by Gaussian elimination over the rational-function field
        rows = [
            [
                RatFunc.constant(1 if i == j else 0) - RatFunc.monomial(m[i][j], 1)
                for j in range(size)
            ]
            for i in range(size)
        ]
        det = RatFunc.one()
        for col in range(size):
            piv = next(
                (r for r in range(col, size) if rows[r][col].num), None
            )
            if piv is None:
                det = RatFunc.constant(0)
                break
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = det * Fraction(-1)
            det = det * rows[col][col]
            inv = rows[col][col].inv()
            for r in range(col + 1, size):
                fac = rows[r][col] * inv
                for c in range(col, size):
                    rows[r][c] = rows[r][c] - fac * rows[col][c]
        return det.inv()
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# adjoint conductor: two methods
# ---------------------------------------------------------------------------

def twist_conductor_predicted(P: TameParams, gamma: GalElt) -> int:
    """The conductor break of the twist character: e(r-1) when gamma fixes
    the unramified part (gamma in <delta>), e(r-1) + 1 otherwise."""
    base = P.e * (P.r - 1)
    return base if gamma.j == 0 else base + 1


def adjoint_conductor(P: TameParams, method: str = "filtration") -> int:
    if method == "filtration":
        total = weighted_conductor_sum(P)
        assert total.denominator == 1
        return int(total)
    if method == "additivity":
        f, e = P.f, P.e
        total = f * (e - 1)
        for g in gal_elements(P):
            if g == GAL_ID:
                continue
            total += f * (e - 1) + f * twist_conductor_predicted(P, g)
        return total
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# gamma at zero and the root number
# ---------------------------------------------------------------------------

def adjoint_gamma0(P: TameParams) -> Tuple[HalfPowerScalar, Fraction]:
    """(|eps| at 0 as q^{rn(n-1)/2}, L(1)/L(0)); the product is |gamma(0)|."""
    n = P.n
    eps_abs = HalfPowerScalar.q_half_power(P.q, P.r * n * (n - 1))
    ratio = Fraction(P.f) * (1 - Fraction(1, P.q)) / (1 - Fraction(1, P.q ** P.f))
    return eps_abs, ratio


def adjoint_gamma0_abs(P: TameParams) -> Fraction:
    eps_abs, ratio = adjoint_gamma0(P)
    assert eps_abs.half_exp % 2 == 0
    return P.q ** (eps_abs.half_exp // 2) * ratio


def model_lambda(sys) -> Cyclotomic:
    """lambda(K/F, psi) evaluated on the ring model's uniformizer data."""
    P = sys.P
    u0_log = (
        sys.M.zeta_exp * (P.e * (P.e - 1) // 2) + sys.M.c_exp
    ) % (P.q_K - 1)
    return lambda_tame(P.p, P.a * P.f, P.e, u0_log, method="closed")


def adjoint_root_number(sys, method: str = "closed") -> Cyclotomic:
    """w(Ad of phi), by the closed formula or assembled from Gauss sums.

    closed: vartheta((-1)^{n-1}) times (-1)^{(q-1)f/2} for e even (1 for e
    odd).  assembled: lambda(K/F)^n times the product of the root numbers of
    the induced twist pieces.
    """
    P = sys.P
    n = P.n
    if method == "closed":
        if n % 2:
            val = Cyclotomic.one()
        else:
            val = sys.vartheta_of(sys.M.neg(sys.M.one()))
        if P.e % 2 == 0:
            sign = (-1) ** (((P.q - 1) * P.f // 2) % 2)
            val = val * sign
        return val
    if method == "assembled":
        lam = model_lambda(sys)
        w = lam  # the Ind_K^F 1 - 1 piece
        for g in gal_elements(P):
            if g == GAL_ID:
                continue
            w = w * induced_factor(sys, g, lam).root_number()
        return w
    raise ValueError(f"unknown method {method!r}")


def adjoint_triple(sys) -> LocalFactorTriple:
    """The full (L, a, eps) of Ad of phi assembled from the decomposition."""
    from .local_factors import AbelianCharData, eps_abelian, trivial_triple

    P = sys.P
    dec = adjoint_decompose(P)
    lam = model_lambda(sys)
    # Ind_K^F 1 - 1: unramified part gives the L; the ramified remainder
    # contributes conductor f(e-1) and the lambda root number
    total: Optional[LocalFactorTriple] = None
    for val in dec.unramified_frob_values:
        t = eps_abelian(AbelianCharData(P.q, 0, val))
        total = t if total is None else total.direct_sum(t)
    base = LocalFactorTriple(
        P.q,
        HalfPowerScalar(lam, dec.base_change_conductor, P.q),
        dec.base_change_conductor,
        (Cyclotomic.one(),),
    )
    total = base if total is None else total.direct_sum(base)
    for g in dec.induced:
        total = total.direct_sum(induced_factor(sys, g, lam))
    return total


# ---------------------------------------------------------------------------
# the centralizer group A_phi
# ---------------------------------------------------------------------------

def centralizer_order(P: TameParams) -> int:
    """|A_phi| = (O_F^x : N(O_K^x)) * f, realized as |Gamma^ab|."""
    out = abelianization_order(P)
    assert out == norm_index(P) * P.f
    return out


def centralizer_order_bruteforce(P: TameParams) -> int:
    """Literal count of the characters of the abelianized Galois group."""
    count = 0
    orders = abelianization_orders(P)
    idx = [0] * len(orders)
    while True:
        count += 1
        k = 0
        while k < len(orders) and idx[k] == orders[k] - 1:
            idx[k] = 0
            k += 1
        if k == len(orders):
            break
        idx[k] += 1
    return count


# ---------------------------------------------------------------------------
# character identity of the adjoint
# ---------------------------------------------------------------------------

def ad_character_identity(sys, x) -> Tuple[Cyclotomic, Cyclotomic]:
    """(|tr phi_1(1,x)|^2 - 1, character of the decomposition at (1,x)).

    The two must be equal for every unit x; this is a cocycle-independent
    sample of Ad of phi's character.
    """
    tr = phi1_trace(sys, GAL_ID, x)
    lhs = tr * tr.conj() - Cyclotomic.one()
    P = sys.P
    rhs = Cyclotomic.from_rational(P.n - 1)
    for g in gal_elements(P):
        if g == GAL_ID:
            continue
        tw = sys.theta_tilde_twist(g)
        for sigma in gal_elements(P):
            rhs = rhs + tw.value_on_coords(
                sys.U.dlog(sys.M.galois_act(sigma, x))
            )
    return lhs, rhs
