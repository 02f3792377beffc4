"""Characters on the ring model: theta, the chi-data sign c, twists and
Gauss sums.

All multiplicative characters are stored as exponent vectors against the
invariant-factor generators of a unit-group presentation, so values are
exact fractions of a full turn and only become Cyclotomic numbers at the
edges.  Gauss sums have a literal-summation path (used whenever the unit
group is small enough) and a stationary-phase path for high conductor,
and the two are compared in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import Cyclotomic, HalfPowerScalar
from .intlinalg import (
    SubgroupPresentation,
    extend_character,
    intersect_subgroups,
    kernel_subgroup,
    solve_left,
)
from .ring_model import (
    Elt,
    Model,
    UnitGroupPresentation,
    find_beta,
    kernel_of_norm,
)
from .tame_galois import GAL_ID, GalElt, TameParams, order_two_set

LITERAL_GAUSS_THRESHOLD = 20000


class NotInSubgroup(ValueError):
    pass


class PrecisionTooLow(RuntimeError):
    pass


class ExtensionObstruction(RuntimeError):
    pass


def additive_char_value(p: int, k: int, x: int) -> Cyclotomic:
    """zeta_{p^k}^x: the level-k additive character of Z/p^k."""
    if k == 0:
        return Cyclotomic.one()
    return Cyclotomic.root_of_unity(p ** k, x % p ** k)


@dataclass(frozen=True)
class MultCharacter:
    """Character of (+) Z/d_i by exponents: value on e_i is zeta_{d_i}^{w_i}."""

    orders: Tuple[int, ...]
    exps: Tuple[int, ...]
    value_at_uniformizer: Optional[Cyclotomic] = None

    def fraction_on_coords(self, coords: Sequence[int]) -> Fraction:
        acc = Fraction(0)
        for w, d, c in zip(self.exps, self.orders, coords):
            if w and c:
                acc += Fraction(w * c, d)
        return acc % 1

    def value_on_coords(self, coords: Sequence[int]) -> Cyclotomic:
        fr = self.fraction_on_coords(coords)
        return Cyclotomic.root_of_unity(fr.denominator, fr.numerator)

    def __mul__(self, other: "MultCharacter") -> "MultCharacter":
        assert self.orders == other.orders
        return MultCharacter(
            self.orders,
            tuple((a + b) % d for a, b, d in zip(self.exps, other.exps, self.orders)),
        )

    def inverse(self) -> "MultCharacter":
        return MultCharacter(
            self.orders,
            tuple((-a) % d for a, d in zip(self.exps, self.orders)),
            None if self.value_at_uniformizer is None
            else self.value_at_uniformizer.inv(),
        )

    def is_trivial_on_units(self) -> bool:
        return all(a == 0 for a in self.exps)

    @classmethod
    def trivial(cls, orders: Sequence[int]) -> "MultCharacter":
        return cls(tuple(orders), tuple(0 for _ in orders))


# ---------------------------------------------------------------------------
# theta: extension of chi_beta from the congruence subgroup to U-bar
# ---------------------------------------------------------------------------

def chi_beta(M: Model, beta: Elt, x: Elt) -> Cyclotomic:
    """psi(varpi_F^{-l'} T_{K/F}(y beta)) for x = 1 + varpi_F^l y."""
    P = M.P
    l = P.level_l
    lp = P.level_l_prime
    diff = M.sub(x, M.one())
    if M.pi_valuation(diff) < P.e * l:
        raise NotInSubgroup("x is not in 1 + p^l O_K")
    pl = P.p ** l
    y = tuple(tuple(a // pl for a in c) for c in diff)
    tracef = M.trace_functional()
    val = tracef(M.mul(y, beta))
    return additive_char_value(P.p, lp, val)


def chi_beta_fraction(M: Model, beta: Elt, x: Elt) -> Tuple[int, int]:
    P = M.P
    l, lp = P.level_l, P.level_l_prime
    diff = M.sub(x, M.one())
    if M.pi_valuation(diff) < P.e * l:
        raise NotInSubgroup("x is not in 1 + p^l O_K")
    pl = P.p ** l
    y = tuple(tuple(a // pl for a in c) for c in diff)
    val = M.trace_functional()(M.mul(y, beta)) % (P.p ** lp)
    den = P.p ** lp
    g = gcd(val, den) or 1
    return val // g, den // g


class CharacterSystem:
    """Everything attached to one parameter tuple on the ring model:

    the full unit group U = (R/pi^{er})^x, the norm-one subgroup U-bar,
    the generator beta, the character theta on U-bar extending chi_beta,
    the chi-data sign character c, and the Galois twists.
    """

    def __init__(self, M: Model, beta: Optional[Elt] = None):
        self.M = M
        self.P = M.P
        self.U = UnitGroupPresentation(M, M.P.e * M.P.r)
        self.Ubar = kernel_of_norm(M, self.U)
        self.beta = find_beta(M) if beta is None else beta
        self._theta: Optional[MultCharacter] = None
        self._c_char: Optional[MultCharacter] = None
        self._c_records: Optional[List[dict]] = None
        self._theta_tilde: Optional[MultCharacter] = None
        self._minus_one_coords: Optional[List[int]] = None

    # -- coordinates ---------------------------------------------------------

    def ubar_coords(self, x: Elt) -> List[int]:
        w = self.U.dlog(x)
        coords = self.Ubar.coords(w)
        if coords is None:
            raise NotInSubgroup("element is not norm-one")
        return coords

    def minus_one_coords(self) -> List[int]:
        if self._minus_one_coords is None:
            self._minus_one_coords = self.U.dlog(self.M.neg(self.M.one()))
        return self._minus_one_coords

    # -- theta ---------------------------------------------------------------

    def congruence_subgroup(self) -> SubgroupPresentation:
        """H = U-bar intersected with (1 + pi^{el}), in U coordinates."""
        el = self.P.e * self.P.level_l
        rows = [
            self.U.dlog(g)
            for g, (i, _) in zip(self.U.gens, self.U.levels)
            if i >= el
        ]
        return intersect_subgroups(list(self.U.orders), self.Ubar.basis, rows)

    @property
    def theta(self) -> MultCharacter:
        if self._theta is None:
            H = self.congruence_subgroup()
            rows_sub = []
            fracs = []
            for b in H.basis:
                coords = self.Ubar.coords(b)
                assert coords is not None, "H must sit inside U-bar"
                rows_sub.append(coords)
                elt = self.U.element_from_coords(b)
                fracs.append(chi_beta_fraction(self.M, self.beta, elt))
            try:
                exps = extend_character(list(self.Ubar.orders), rows_sub, fracs)
            except ValueError as ex:
                raise ExtensionObstruction(str(ex)) from ex
            self._theta = MultCharacter(tuple(self.Ubar.orders), tuple(exps))
        return self._theta

    def theta_of(self, x: Elt) -> Cyclotomic:
        return self.theta.value_on_coords(self.ubar_coords(x))

    def vartheta_fraction(self, x: Elt) -> Fraction:
        """vartheta = c * theta on U-bar, as a fraction of a full turn."""
        fr = self.theta.fraction_on_coords(self.ubar_coords(x))
        fr += self.c_char().fraction_on_coords(self.U.dlog(x))
        return fr % 1

    def vartheta_of(self, x: Elt) -> Cyclotomic:
        fr = self.vartheta_fraction(x)
        return Cyclotomic.root_of_unity(fr.denominator, fr.numerator)

    # -- chi-data ------------------------------------------------------------

    def _build_chi_data(self):
        P = self.P
        M = self.M
        U = self.U
        o2 = order_two_set(P)
        records: List[dict] = []
        total_exps = [0] * len(U.orders)
        level2_rows = [
            U.dlog(g) for g, (i, _) in zip(U.gens, U.levels) if i >= 2
        ]
        for gamma in sorted(o2.elements):
            if gamma == GAL_ID:
                continue
            ramified = o2.ramified[gamma]
            amat = U.act_matrix(gamma)
            fixed = kernel_subgroup(
                list(U.orders),
                [
                    [(amat[i][j] - (1 if i == j else 0)) % U.orders[j]
                     for j in range(len(U.orders))]
                    for i in range(len(U.orders))
                ],
                list(U.orders),
            )
            rows = []
            fracs: List[Tuple[int, int]] = []
            for b in fixed.basis:
                rows.append(list(b))
                if ramified:
                    elt = U.element_from_coords(b)
                    k = M.tau_res_log[M.gr.residue(elt[0])]
                    fracs.append((k % 2, 2) if k % 2 else (0, 1))
                else:
                    fracs.append((0, 1))
            rows += level2_rows
            fracs += [(0, 1)] * len(level2_rows)
            try:
                exps = extend_character(list(U.orders), rows, fracs)
            except ValueError as ex:
                raise ExtensionObstruction(
                    f"chi-data character for {gamma}: {ex}"
                ) from ex
            chi_gamma = MultCharacter(tuple(U.orders), tuple(exps))
            # brute-force norm test: is -1 a norm from the gamma-fixed field?
            norm_rows = [
                U.dlog(M.mul(h, M.galois_act(gamma, h))) for h in U.inv_gens
            ]
            norm_sub = SubgroupPresentation(list(U.orders), norm_rows)
            minus_is_norm = norm_sub.contains(self.minus_one_coords())
            value_at_minus_one = chi_gamma.value_on_coords(self.minus_one_coords())
            closed = (
                Cyclotomic.root_of_unity(2, ((P.q_K - 1) // 2) % 2)
                if ramified
                else Cyclotomic.one()
            )
            records.append(
                dict(
                    gamma=gamma,
                    ramified=ramified,
                    chi=chi_gamma,
                    value_at_minus_one=value_at_minus_one,
                    closed_value=closed,
                    minus_one_is_norm=minus_is_norm,
                )
            )
            total_exps = [
                (t - a) % d for t, a, d in zip(total_exps, exps, U.orders)
            ]
        self._c_records = records
        self._c_char = MultCharacter(tuple(U.orders), tuple(total_exps))

    def c_char(self) -> MultCharacter:
        if self._c_char is None:
            self._build_chi_data()
        return self._c_char

    def c_records(self) -> List[dict]:
        if self._c_records is None:
            self._build_chi_data()
        return self._c_records

    def c_at_minus_one(self) -> Cyclotomic:
        return self.c_char().value_on_coords(self.minus_one_coords())

    # -- extension to the full unit group and twists ------------------------

    @property
    def theta_tilde(self) -> MultCharacter:
        """Deterministic extension of vartheta = c * theta from U-bar to U.

        The value at the uniformizer is a free choice; the trivial value is
        recorded, and nothing downstream may depend on it.
        """
        if self._theta_tilde is None:
            rows = [list(b) for b in self.Ubar.basis]
            fracs = []
            for b in rows:
                elt = self.U.element_from_coords(b)
                fr = self.vartheta_fraction(elt)
                fracs.append((fr.numerator, fr.denominator))
            try:
                exps = extend_character(list(self.U.orders), rows, fracs)
            except ValueError as ex:
                raise ExtensionObstruction(str(ex)) from ex
            self._theta_tilde = MultCharacter(
                tuple(self.U.orders), tuple(exps), Cyclotomic.one()
            )
        return self._theta_tilde

    def theta_tilde_twist(self, gamma: GalElt) -> MultCharacter:
        """The character x -> vartheta(x^{1-gamma}), with its uniformizer value.

        This is canonical: x^{1-gamma} lies in ker(N), so no extension choice
        enters.  The value at pi is vartheta(u^{-1}) where gamma(pi) = u pi.
        """
        M = self.M
        exps = []
        for h, d in zip(self.U.inv_gens, self.U.orders):
            z = M.mul(h, M.inv(M.galois_act(gamma, h)))
            fr = self.vartheta_fraction(z)
            ex = fr * d
            assert ex.denominator == 1, "twist is not a character of U"
            exps.append(int(ex) % d)
        u = M.pi_multiplier(gamma)
        uinv = M.inv(M.from_gr(u))
        val = self.vartheta_of(uinv)
        return MultCharacter(tuple(self.U.orders), tuple(exps), val)

    def restrict_to_level(
        self, chi: MultCharacter, Uk: UnitGroupPresentation
    ) -> MultCharacter:
        """Restriction of a character of U(er) to U(k) coordinates."""
        exps = []
        for h, d in zip(Uk.inv_gens, Uk.orders):
            fr = chi.fraction_on_coords(self.U.dlog(h)) * d
            assert fr.denominator == 1, "character does not factor through level"
            exps.append(int(fr) % d)
        return MultCharacter(tuple(Uk.orders), tuple(exps))


def extend_theta(M: Model, beta: Optional[Elt] = None) -> CharacterSystem:
    """Build the character system (U, U-bar, beta, theta) for a model."""
    return CharacterSystem(M, beta)


# ---------------------------------------------------------------------------
# conductors
# ---------------------------------------------------------------------------

def conductor_bruteforce(sys: CharacterSystem, chi: MultCharacter) -> int:
    """Minimal k with chi trivial on the (1 + pi^k)-units, by generator tests."""
    U = sys.U
    top = 0
    for g, (i, _) in zip(U.gens, U.levels):
        if i == 0:
            continue
        if chi.fraction_on_coords(U.dlog(g)) != 0:
            top = max(top, i + 1)
    if top:
        return top
    tau_val = chi.fraction_on_coords(U.dlog(U.gens[0]))
    return 1 if tau_val != 0 else 0


# ---------------------------------------------------------------------------
# Gauss sums
# ---------------------------------------------------------------------------

def _psi_K_data(M: Model, k: int, sign: int):
    """Precompute the additive character t -> psi_K(sign * pi^{-(d_K+k)} t).

    Returns (level, func) with func giving the exponent mod p^level.
    """
    P = M.P
    dK = P.e - 1  # valuation of the different of K/F (tame, d(F) = 0)
    shift = dK + k
    lev = -(-shift // P.e)  # ceil
    if lev > P.r:
        raise PrecisionTooLow(f"need p-level {lev} > r = {P.r}")
    pi_pow = P.e * lev - shift
    c_elt = M.from_gr(M.c)
    prefac = M.pow(M.pi(), pi_pow)
    prefac = M.mul(prefac, M.pow(c_elt, -lev))
    if sign < 0:
        prefac = M.neg(prefac)
    tracef = M.trace_functional()
    plev = P.p ** lev

    def func(t: Elt) -> int:
        return tracef(M.mul(prefac, t)) % plev

    return lev, func


def gauss_sum(
    sys: CharacterSystem,
    chi: MultCharacter,
    k: int,
    sign: int = 1,
    method: str = "auto",
) -> HalfPowerScalar:
    """Normalized Gauss sum q_K^{-k/2} sum chi^{-1}(t) psi_K(sign pi^{-(d_K+k)} t).

    chi is a character of U(er) trivial on (1 + pi^k); the sum runs over the
    units of R/pi^k.  Result modulus is 1 for chi of conductor exactly k.
    """
    M = sys.M
    P = sys.P
    qK = P.q_K
    if k == 0:
        return HalfPowerScalar.one(qK)
    lev, psi = _psi_K_data(M, k, sign)
    Uk = UnitGroupPresentation(M, k)
    chik = sys.restrict_to_level(chi, Uk)
    if method == "auto":
        method = "literal" if Uk.order() <= LITERAL_GAUSS_THRESHOLD else "stationary"
    if method == "literal":
        return _gauss_literal(sys, chik, Uk, psi, lev, k)
    if method == "stationary":
        if k < 2:
            raise ValueError("stationary phase needs conductor at least 2")
        return _gauss_stationary(sys, chi, chik, Uk, psi, lev, k)
    raise ValueError(f"unknown method {method!r}")


def _gauss_literal(sys, chik, Uk, psi, lev, k) -> HalfPowerScalar:
    P = sys.P
    plev = P.p ** lev
    char_den = lcm(*(list(chik.orders) + [1]))
    N = lcm(char_den, plev)
    buckets: Dict[int, int] = {}
    for coords, elt in Uk.enumerate():
        fr = -chik.fraction_on_coords(coords) + Fraction(psi(elt), plev)
        key = int((fr % 1) * N)
        buckets[key] = buckets.get(key, 0) + 1
    coeffs = {key: Fraction(v) for key, v in buckets.items()}
    total = Cyclotomic(N, coeffs)
    return HalfPowerScalar(total, -k, P.q_K).normalized()


def _critical_point(sys, chi, psi, lev, l1, l2, k):
    """The unique unit b mod pi^{l1} with chi(1+v) = psi_K-shift(b v) for all
    one-units 1+v at levels l2 <= i < k.

    The psi side is additive in b, so writing b against the additive basis
    x^s pi^i of R/pi^{l1} turns the matching conditions into an integer
    linear system mod p^lev.
    """
    M = sys.M
    P = sys.P
    plev = P.p ** lev
    test_gens = [
        (g, i)
        for g, (i, _) in zip(sys.U.gens, sys.U.levels)
        if l2 <= i < k
    ]
    # additive basis of R/pi^{l1} with the p-precision of each line
    basis = []
    for i in range(P.e):
        prec = -(-(l1 - i) // P.e)
        if prec <= 0:
            continue
        for s in range(P.f):
            gr_unit = tuple(1 if t == s else 0 for t in range(P.f))
            m = M.mul(M.from_gr(gr_unit), M.pow(M.pi(), i))
            basis.append((m, P.p ** prec))
    targets = []
    vs = []
    for g, _ in test_gens:
        fr = chi.fraction_on_coords(sys.U.dlog(g)) * plev
        if fr.denominator != 1:
            raise ArithmeticError(
                "stationary phase found 0 critical points; "
                "character is not primitive at this level"
            )
        targets.append(int(fr) % plev)
        vs.append(M.sub(g, M.one()))
    rows = [[psi(M.mul(m, v)) for v in vs] for m, _ in basis]
    slack = [
        [plev if t == g else 0 for t in range(len(vs))]
        for g in range(len(vs))
    ]
    sol = solve_left(rows + slack, targets)
    if sol is None:
        raise ArithmeticError(
            "stationary phase found 0 critical points; "
            "character is not primitive at this level"
        )
    # a unique critical point means the homogeneous system has trivial kernel
    ker = kernel_subgroup(
        [prec for _, prec in basis],
        [[t % plev for t in row] for row in rows],
        [plev] * len(vs),
    )
    if ker.order != 1:
        raise ArithmeticError(
            f"stationary phase found {ker.order} critical points; "
            "character is not primitive at this level"
        )
    b = M.zero()
    for c, (m, prec) in zip(sol, basis):
        b = M.add(b, M.mul(M.from_int(c % prec), m))
    assert M.is_unit(b), "critical point must be a unit"
    return b


def _gauss_stationary(sys, chi, chik, Uk, psi, lev, k) -> HalfPowerScalar:
    """Split t = b(1+v): the inner sum over v at half level kills everything
    except the critical point b with chi(1+v) = psi_K-shift(b v)."""
    M = sys.M
    P = sys.P
    qK = P.q_K
    l2 = -(-k // 2)  # ceil(k/2)
    l1 = k - l2
    b = _critical_point(sys, chi, psi, lev, l1, l2, k)
    fr_b = -chik.fraction_on_coords(Uk.dlog(b)) + Fraction(psi(b), P.p ** lev)
    fr_b %= 1
    head = Cyclotomic.root_of_unity(fr_b.denominator, fr_b.numerator)
    if k % 2 == 0:
        return HalfPowerScalar(head, 0, qK)
    # odd conductor: one residue-field Gauss sum remains
    pi_l1 = M.pow(M.pi(), l1)
    terms: Dict[int, int] = {}
    plev = P.p ** lev
    N = lcm(plev, *(list(chik.orders) + [2]))
    residues = [M.zero()] + [
        M.from_gr(M.gr.pow(M.tau, j)) for j in range(qK - 1)
    ]
    for w in residues:
        one_plus = M.add(M.one(), M.mul(w, pi_l1))
        fr = -chik.fraction_on_coords(Uk.dlog(one_plus))
        fr += Fraction(psi(M.mul(M.mul(b, w), pi_l1)), plev)
        key = int((fr % 1) * N)
        terms[key] = terms.get(key, 0) + 1
    tail = Cyclotomic(N, {key: Fraction(v) for key, v in terms.items()})
    return (HalfPowerScalar(head, 0, qK)
            * HalfPowerScalar(tail, -1, qK)).normalized()


def quadratic_gauss_sum_field(p: int, d: int) -> HalfPowerScalar:
    """Literal normalized quadratic Gauss sum over the field F_{p^d}."""
    from .ring_model import GaloisRing

    gf = GaloisRing(p, 1, d)
    q = p ** d
    # find a multiplicative generator
    gen = None
    from .ring_model import _prime_divisors
    for code in range(1, q):
        coeffs = []
        cc = code
        for _ in range(d):
            coeffs.append(cc % p)
            cc //= p
        cand = tuple(coeffs)
        if all(
            gf.pow(cand, (q - 1) // ell) != gf.one
            for ell in _prime_divisors(q - 1)
        ):
            gen = cand
            break
    assert gen is not None
    buckets: Dict[int, int] = {}
    N = lcm(2, p)
    cur = gf.one
    for j in range(q - 1):
        fr = Fraction(j % 2, 2) + Fraction(gf.trace_abs(cur) % p, p)
        key = int((fr % 1) * N)
        buckets[key] = buckets.get(key, 0) + 1
        cur = gf.mul(cur, gen)
    total = Cyclotomic(N, {key: Fraction(v) for key, v in buckets.items()})
    return HalfPowerScalar(total, -1, q).normalized()


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------

def regularity_check(sys: CharacterSystem, chi: MultCharacter) -> bool:
    """True iff every nontrivial Galois conjugate of chi differs from chi."""
    from .tame_galois import gal_elements

    M = sys.M
    for sigma in gal_elements(sys.P):
        if sigma == GAL_ID:
            continue
        moved = False
        for h in sys.U.inv_gens:
            fr1 = chi.fraction_on_coords(sys.U.dlog(M.galois_act(sigma, h)))
            fr2 = chi.fraction_on_coords(sys.U.dlog(h))
            if (fr1 - fr2) % 1 != 0:
                moved = True
                break
        if not moved:
            return False
    return True
