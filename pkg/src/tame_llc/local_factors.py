"""Local L-, epsilon- and gamma-factor arithmetic.

Factors of abelian characters, lambda-factors of tame extensions (closed
form against brute-force inductivity), factors of induced characters, the
principal (Steinberg) parameter's adjoint factors, the invariant pairing
on symmetric powers, and the Weil-Deligne assembly formulas.

Everything is normalized at n(psi) = 0 with the O-selfdual measure; the
L-factor of a triple is stored through its inverse polynomial so that
pieces with irrational Frobenius eigenvalues can still be multiplied
exactly before the product is recognized as rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Tuple

from .exactnum import Cyclotomic, HalfPowerScalar, RatFunc, cyc_conj_norm
from .ring_model import GaloisRing, _prime_divisors


class BruteForceUnsupported(ValueError):
    pass


# ---------------------------------------------------------------------------
# factor triples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalFactorTriple:
    """(L, a, eps) of a Weil representation over a base with residue size q.

    l_inv_poly holds 1/L as a polynomial in u = q^{-s} with Cyclotomic
    coefficients (constant term 1); its degree is the dimension of the
    inertia-fixed subspace.  eps is the value at s = 0, of modulus q^{a/2}.
    """

    q: int
    eps: HalfPowerScalar
    a: int
    l_inv_poly: Tuple[Cyclotomic, ...]

    @property
    def L(self) -> RatFunc:
        den = []
        for c in self.l_inv_poly:
            if not c.is_rational():
                raise ValueError("L-factor has irrational coefficients: %s"
                                 % [x.to_text() for x in self.l_inv_poly])
            den.append(c.rational_value())
        return RatFunc([Fraction(1)], den)

    @property
    def fixed_dim(self) -> int:
        return len(self.l_inv_poly) - 1

    def root_number(self) -> Cyclotomic:
        w = HalfPowerScalar(self.eps.coef, self.eps.half_exp - self.a, self.eps.q)
        return w.root_number()

    def direct_sum(self, other: "LocalFactorTriple") -> "LocalFactorTriple":
        assert self.q == other.q
        return LocalFactorTriple(
            self.q,
            self.eps * other.eps,
            self.a + other.a,
            _poly_mul_cyc(self.l_inv_poly, other.l_inv_poly),
        )

    def to_text(self) -> str:
        try:
            l_text = self.L.to_text()
        except ValueError:
            l_text = "1/(" + " + ".join(
                "(%s)*u^%d" % (c.to_text(), i)
                for i, c in enumerate(self.l_inv_poly) if not c.is_zero()
            ) + ")"
        return "L=1/(%s) a=%d eps=%s" % (l_text, self.a, self.eps)


def _poly_mul_cyc(a: Sequence[Cyclotomic], b: Sequence[Cyclotomic]) -> Tuple[Cyclotomic, ...]:
    out = [Cyclotomic.zero() for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return tuple(out)


def trivial_triple(q: int) -> LocalFactorTriple:
    """The factors of the trivial character: L = (1-u)^{-1}, a = 0, eps = 1."""
    return LocalFactorTriple(
        q, HalfPowerScalar.one(q), 0,
        (Cyclotomic.one(), -Cyclotomic.one()),
    )


# ---------------------------------------------------------------------------
# abelian characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianCharData:
    """A character of the multiplicative group of a local field.

    cond is the conductor exponent f(chi); gauss must carry the normalized
    Gauss sum (modulus one) whenever cond > 0.
    """

    q_base: int
    cond: int
    value_at_uniformizer: Cyclotomic
    gauss: Optional[HalfPowerScalar] = None

    def __post_init__(self):
        if self.cond < 0:
            raise ValueError("conductor exponent must be nonnegative")
        if self.cond > 0 and self.gauss is None:
            raise ValueError("ramified character needs its Gauss sum")


def eps_abelian(chi: AbelianCharData) -> LocalFactorTriple:
    """Tate's local factors of an abelian character at n(psi) = 0.

    Unramified: eps = 1, L = (1 - chi(pi) u)^{-1}, a = 0.  Ramified:
    eps = G * chi(pi)^{f} * q^{f/2} with the normalized Gauss sum G, L = 1,
    a = f(chi).
    """
    q = chi.q_base
    if chi.cond == 0:
        return LocalFactorTriple(
            q, HalfPowerScalar.one(q), 0,
            (Cyclotomic.one(), -chi.value_at_uniformizer),
        )
    g = chi.gauss.normalized()
    eps = HalfPowerScalar(
        g.coef * chi.value_at_uniformizer ** chi.cond,
        g.half_exp + chi.cond,
        q,
    )
    return LocalFactorTriple(q, eps, chi.cond, (Cyclotomic.one(),))


def eps_twisted_by_power(t: LocalFactorTriple, two_s: int) -> HalfPowerScalar:
    """eps of the |.|^s-twist, s = two_s/2: the conductor is unchanged and
    eps picks up q^{-s*a}."""
    return HalfPowerScalar(t.eps.coef, t.eps.half_exp - two_s * t.a, t.q)


def gamma_at_zero_abs(t: LocalFactorTriple) -> Fraction:
    """|gamma(0)| = |eps| * L(1)/L(0) for a triple with rational L.

    |eps| = q^{a/2} is rational only for even a, so the square is computed
    first and its exact square root extracted at the end.
    """
    from .exactnum import ratfunc_eval
    num = ratfunc_eval(t.L, Fraction(1, t.q))
    den = ratfunc_eval(t.L, Fraction(1))
    val2 = t.q ** t.a * (num / den) ** 2
    return _fraction_sqrt(val2)


def _fraction_sqrt(x: Fraction) -> Fraction:
    from math import isqrt
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise ValueError("not a rational square: %s" % x)
    return Fraction(rn, rd)


# ---------------------------------------------------------------------------
# lambda factors of tame extensions
# ---------------------------------------------------------------------------

def _field_generator(gf: GaloisRing) -> Tuple[Tuple[int, ...], dict]:
    """A multiplicative generator of the residue field and its log table."""
    q = gf.p ** gf.d
    for code in range(1, q):
        coeffs = []
        cc = code
        for _ in range(gf.d):
            coeffs.append(cc % gf.p)
            cc //= gf.p
        cand = tuple(coeffs)
        if all(
            gf.pow(cand, (q - 1) // ell) != gf.one
            for ell in _prime_divisors(q - 1)
        ):
            log = {}
            cur = gf.one
            for k in range(q - 1):
                log[cur] = k
                cur = gf.mul(cur, cand)
            return cand, log
    raise AssertionError("no generator found")


def quadratic_gauss_root(p: int, d: int) -> Cyclotomic:
    """The normalized quadratic Gauss sum of F_{p^d} as a modulus-one value."""
    from .characters import quadratic_gauss_sum_field

    return quadratic_gauss_sum_field(p, d).root_number()


def lambda_tame(p: int, d: int, e: int, u0_log: int, method: str = "closed") -> Cyclotomic:
    """lambda(K/K_0, psi_{K_0}) for the totally ramified degree-e piece.

    The base has residue field F_Q, Q = p^d, and d-valuation 0; the prime
    element below is pi_0 = u_0 * p with unit residue gen^u0_log.  Closed
    form: 1 for e odd; for e even the parity sign times the Legendre symbol
    of u_0 times the quadratic Gauss sum of F_Q.  Brute force: the
    inductivity quotient eps(Ind 1)/eps(1_K), supported for e | Q - 1.
    """
    Q = p ** d
    if method == "closed":
        if e % 2:
            return Cyclotomic.one()
        sign_exp = ((Q - 1) // e) * (e * (e + 2) // 8)
        legendre = (-1) ** (u0_log % 2)
        out = Cyclotomic.from_rational((-1) ** (sign_exp % 2) * legendre)
        return out * quadratic_gauss_root(p, d)
    if method != "bruteforce":
        raise ValueError(f"unknown method {method!r}")
    if e == 1:
        return Cyclotomic.one()
    if (Q - 1) % e != 0:
        raise BruteForceUnsupported(
            f"e = {e} does not divide Q - 1 = {Q - 1}: extension is not cyclic"
        )
    gf = GaloisRing(p, 1, d)
    gen, log = _field_generator(gf)
    u0 = gf.pow(gen, u0_log)
    u0inv = gf.inv(u0)
    out = HalfPowerScalar.one(Q)
    for j in range(1, e):
        # chi_j(t) = zeta_e^{j log t}; epsilon of chi_j is the normalized
        # Gauss sum against t -> psi(-pi_0^{-1} t), i.e. shift -u0^{-1}
        total = Cyclotomic.zero()
        cur = gf.one
        for k in range(Q - 1):
            chi_inv = Cyclotomic.root_of_unity(e, (-j * k) % e)
            psi = Cyclotomic.root_of_unity(
                p, (-gf.trace_abs(gf.mul(cur, u0inv))) % p
            )
            total = total + chi_inv * psi
            cur = gf.mul(cur, gen)
        out = out * HalfPowerScalar(total, -1, Q)
    return out.root_number()


def lambda_chain(p: int, d_base: int, e: int, f: int, u0_log_K0: int) -> Tuple[Cyclotomic, Cyclotomic]:
    """(lambda(K/F), lambda(K/K_0) * lambda(K_0/F)^e) for F < K_0 < K.

    K_0/F is unramified of degree f and K/K_0 totally ramified of degree e.
    The left side is computed from scratch through the decomposition
    Ind_K^F 1 = (+) Ind_{K_0}^F chi_j (brute-force epsilon quotient over the
    residue field of K_0); the right side composes the closed forms with
    lambda(K_0/F) = (-1)^{(f-1) n(psi)} = 1.  The chain rule asserts the two
    are equal.
    """
    lam_unram = Cyclotomic.one()
    lhs = lambda_tame(p, d_base * f, e, u0_log_K0, method="bruteforce")
    rhs = lambda_tame(p, d_base * f, e, u0_log_K0, method="closed") * lam_unram ** e
    return lhs, rhs


# ---------------------------------------------------------------------------
# induced characters
# ---------------------------------------------------------------------------

def induced_factor(sys, gamma, lam: Optional[Cyclotomic] = None) -> LocalFactorTriple:
    """Factors over F of Ind_K^F of the twist character attached to gamma.

    Conductor by the conductor-discriminant formula a = f(e-1) + f n(twist);
    eps by inductivity: eps(twist, psi_K) * lambda(K/F, psi), where psi_K
    has level d_K = e - 1.
    """
    from .characters import conductor_bruteforce, gauss_sum

    P = sys.P
    q = P.q
    dK = P.e - 1
    tw = sys.theta_tilde_twist(gamma)
    k = conductor_bruteforce(sys, tw)
    a = P.f * (P.e - 1) + P.f * k
    if lam is None:
        lam = lambda_tame(
            P.p, P.a * P.f, P.e,
            (sys.M.zeta_exp * (P.e * (P.e - 1) // 2) + sys.M.c_exp) % (P.q_K - 1),
        )
    if k == 0:
        # restriction to units trivial: the L-factor lives in u_K = u^f
        val = tw.value_at_uniformizer
        poly = [Cyclotomic.one()] + [Cyclotomic.zero()] * (P.f - 1) + [-val]
        eps = HalfPowerScalar(val ** dK * lam, P.f * dK, q)
        return LocalFactorTriple(q, eps, a, tuple(poly))
    g = gauss_sum(sys, tw, k)
    w = g.root_number() * tw.value_at_uniformizer ** (dK + k)
    eps = HalfPowerScalar(w * lam, a, q)
    return LocalFactorTriple(q, eps, a, (Cyclotomic.one(),))


# ---------------------------------------------------------------------------
# the principal parameter
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrincipalData:
    triple: LocalFactorTriple
    gamma0: Fraction
    ad_eigen_exponents: Tuple[int, ...]  # Frobenius exponents on ker ad(N_0)


def principal_triple(n: int, q: int) -> PrincipalData:
    """Adjoint factors of the Steinberg parameter Sym^{n-1} of SL_2.

    N_0 is the regular nilpotent and Frobenius acts through the diagonal
    q^{(n-1)/2}, ..., q^{-(n-1)/2}; the centralizer of N_0 in sl_n is
    spanned by N_0, ..., N_0^{n-1} with adjoint Frobenius eigenvalues
    q^{-1}, ..., q^{-(n-1)}.  All of this is recomputed from the matrices.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    # kernel of ad(N_0) on gl_n over Q, by linear algebra
    N0 = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)]
    rows = []
    for i in range(n):
        for j in range(n):
            # image of E_ij under X -> N0 X - X N0, flattened
            img = [[0] * n for _ in range(n)]
            for k in range(n):
                img[k][j] += N0[k][i]
            for k in range(n):
                img[i][k] -= N0[j][k]
            rows.append([img[r][c] for r in range(n) for c in range(n)])
    from .intlinalg import hnf_row, left_kernel_basis
    ker = left_kernel_basis(rows)
    assert len(ker) == n, "regular nilpotent centralizer must have dimension n"
    # the kernel must be exactly span(N_0^0, ..., N_0^{n-1}); compare lattices
    powers = []
    pw = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(n):
        powers.append([pw[r][c] for r in range(n) for c in range(n)])
        pw = [[sum(pw[i][k] * N0[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
    ker_h = [r for r in hnf_row([list(v) for v in ker])[0] if any(r)]
    pow_h = [r for r in hnf_row(powers)[0] if any(r)]
    assert ker_h == pow_h, "centralizer is not the span of the powers of N_0"
    # adjoint Frobenius acts on E_ij by q^{j-i}, hence on N_0^k by q^{-k}
    # (every entry of N_0^k sits on the diagonal j - i = k)
    for k, vec in enumerate(powers):
        for idx, c in enumerate(vec):
            if c:
                i, j = divmod(idx, n)
                assert j - i == k
    ad_exps = tuple(range(1, n))
    # L from the eigenvalues q^{-k}
    poly = (Cyclotomic.one(),)
    for k in ad_exps:
        poly = _poly_mul_cyc(poly, (Cyclotomic.one(),
                                    Cyclotomic.from_rational(Fraction(-1, q ** k))))
    a = n * (n - 1)
    eps = HalfPowerScalar.q_half_power(q, a)
    triple = LocalFactorTriple(q, eps, a, poly)
    gamma0 = Fraction(q ** (n * (n - 1) // 2)) * (1 - Fraction(1, q)) / (1 - Fraction(1, q ** n))
    # cross-check gamma0 against eps * L(1)/L(0)
    from .exactnum import ratfunc_eval
    ratio = ratfunc_eval(triple.L, Fraction(1, q)) / ratfunc_eval(triple.L, Fraction(1))
    assert gamma0 == q ** (n * (n - 1) // 2) * ratio
    return PrincipalData(triple, gamma0, ad_exps)


# ---------------------------------------------------------------------------
# the invariant pairing on symmetric powers
# ---------------------------------------------------------------------------

def sym_pairing(n: int, i: int, j: int) -> int:
    """<X^{n-i}Y^i, X^{n-j}Y^j> = (-1)^{n-i} (n-i)! i! [i + j = n]."""
    if i + j != n:
        return 0
    return (-1) ** (n - i) * factorial(n - i) * factorial(i)


def _sym_matrix(n: int, g: Sequence[Sequence[Cyclotomic]]) -> List[List[Cyclotomic]]:
    """Matrix of Sym^n(g) on the basis X^{n-i} Y^i, i = 0..n."""
    (a, b), (c, d) = g
    cols: List[List[Cyclotomic]] = []
    for i in range(n + 1):
        # (aX + cY)^{n-i} (bX + dY)^i expanded in the monomial basis
        poly = {0: Cyclotomic.one()}  # key: power of Y
        for _ in range(n - i):
            nxt = {}
            for k, coef in poly.items():
                for dk, fac in ((0, a), (1, c)):
                    key = k + dk
                    add = coef * fac
                    nxt[key] = nxt.get(key, Cyclotomic.zero()) + add
            poly = nxt
        for _ in range(i):
            nxt = {}
            for k, coef in poly.items():
                for dk, fac in ((0, b), (1, d)):
                    key = k + dk
                    add = coef * fac
                    nxt[key] = nxt.get(key, Cyclotomic.zero()) + add
            poly = nxt
        cols.append([poly.get(k, Cyclotomic.zero()) for k in range(n + 1)])
    return [[cols[j][i] for j in range(n + 1)] for i in range(n + 1)]


def sym_pairing_check(n: int, gs: Sequence[Sequence[Sequence[Cyclotomic]]]) -> bool:
    """Invariance of the pairing under Sym^n(g) and its (-1)^n symmetry."""
    for i in range(n + 1):
        for j in range(n + 1):
            if sym_pairing(n, i, j) != (-1) ** n * sym_pairing(n, j, i):
                return False
    for g in gs:
        m = _sym_matrix(n, g)
        for i in range(n + 1):
            for j in range(n + 1):
                acc = Cyclotomic.zero()
                for k in range(n + 1):
                    for l in range(n + 1):
                        pk = sym_pairing(n, k, l)
                        if pk:
                            acc = acc + m[k][i] * m[l][j] * pk
                if acc != Cyclotomic.from_rational(sym_pairing(n, i, j)):
                    return False
    return True


# ---------------------------------------------------------------------------
# Weil-Deligne assembly
# ---------------------------------------------------------------------------

def wd_factors(pieces: Sequence[Tuple[LocalFactorTriple, int]], q: int) -> LocalFactorTriple:
    """Factors of a sum of pieces V_n (tensor) Sym_n.

    a = sum (n+1) a(V_n) + n dim V_n^I; w = prod w(V_n)^{n+1}; the L-factor
    of a piece shifts the Frobenius eigenvalues of V_n by q^{-n/2} (only
    even n carry an L here, which covers every descriptor in this package).
    """
    total_a = 0
    total_w = Cyclotomic.one()
    poly: Tuple[Cyclotomic, ...] = (Cyclotomic.one(),)
    for t, sym_n in pieces:
        assert t.q == q
        total_a += (sym_n + 1) * t.a + sym_n * t.fixed_dim
        total_w = total_w * t.root_number() ** (sym_n + 1)
        if t.fixed_dim:
            if sym_n % 2:
                raise ValueError("odd Sym index with nontrivial L is unsupported")
            scale = Fraction(1, q ** (sym_n // 2))
            shifted = tuple(
                c * scale ** i for i, c in enumerate(t.l_inv_poly)
            )
            poly = _poly_mul_cyc(poly, shifted)
    eps = HalfPowerScalar(total_w, total_a, q)
    return LocalFactorTriple(q, eps, total_a, poly)


def principal_descriptor(n: int, q: int) -> List[Tuple[LocalFactorTriple, int]]:
    """The adjoint of the principal parameter as Sym-isotypic pieces:
    Ad of Sym^{n-1} decomposes as the sum of Sym_{2k}, k = 1..n-1, each with
    trivial Galois part."""
    return [(trivial_triple(q), 2 * k) for k in range(1, n)]
