"""Finite ring model R = GR(p^r, af)[pi]/(pi^e - c p) of O_K / p_K^{er}.

The base is the Galois ring GR(p^r, af) (unramified coefficient ring with
residue field F_{q^f}); the uniformizer pi carries the tame ramification.
The Galois action is delta(pi) = zeta_e pi on pi and the identity on
coefficients, while rho acts as the inverse Frobenius on coefficients and
as pi -> t pi.  The triple (c, zeta_e, t) of Teichmuller units is found by
a deterministic lexicographic search over the consistency congruences.

Unit groups of the quotients R / pi^N are presented by generators and a
relation lattice in Smith normal form, which gives exact discrete
logarithms; this is the engine behind character extension, conductor
brute forcing and Gauss sums.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .intlinalg import (
    SubgroupPresentation,
    invert_unimodular,
    smith_normal_form,
)
from .tame_galois import GAL_ID, GalElt, TameParams, gal_elements, gal_inv

GRElt = Tuple[int, ...]


class NoConsistentModel(RuntimeError):
    pass


class NoGenerator(RuntimeError):
    pass


class TooLarge(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _fp_poly_mulmod(a, b, h, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    d = len(h) - 1
    # h is monic
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            for j in range(d + 1):
                out[k - d + j] = (out[k - d + j] - c * h[j]) % p
    out = out[:d]
    while len(out) < d:
        out.append(0)
    return out


def _fp_poly_powmod(a, n, h, p):
    result = [1] + [0] * (len(h) - 2)
    base = list(a)
    while n:
        if n & 1:
            result = _fp_poly_mulmod(result, base, h, p)
        base = _fp_poly_mulmod(base, base, h, p)
        n >>= 1
    return result


def _fp_poly_gcd(a, b, p):
    a, b = list(a), list(b)

    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = (a[-1] * inv) % p
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _fp_irreducible(h, p):
    """Rabin test for a monic polynomial h over F_p (low degree first)."""
    d = len(h) - 1
    x = [0, 1] if d > 1 else [0]
    if d == 1:
        return True
    xq = _fp_poly_powmod(x, p ** d, h, p)
    if xq != x[:d] + [0] * (d - len(x)):
        return False
    dd = d
    primes = []
    k = 2
    while k * k <= dd:
        if dd % k == 0:
            primes.append(k)
            while dd % k == 0:
                dd //= k
        k += 1
    if dd > 1:
        primes.append(dd)
    for ell in primes:
        xe = _fp_poly_powmod(x, p ** (d // ell), h, p)
        diff = [(xe[i] - (x + [0] * d)[i]) % p for i in range(d)]
        if any(diff):
            g = _fp_poly_gcd(diff, h, p)
            if len(g) > 1:
                return False
        else:
            return False
    return True


def _least_irreducible(p: int, d: int) -> List[int]:
    """Lexicographically least monic irreducible of degree d over F_p.

    Coefficient tuples (c_0, ..., c_{d-1}) are ordered as base-p counters.
    """
    for code in range(p ** d):
        coeffs = []
        cc = code
        for _ in range(d):
            coeffs.append(cc % p)
            cc //= p
        h = coeffs + [1]
        if _fp_irreducible(h, p):
            return h
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# Galois ring GR(p^r, d)
# ---------------------------------------------------------------------------

class GaloisRing:
    """GR(p^r, d) = (Z/p^r)[x]/(h) with h a fixed monic irreducible lift.

    Elements are coefficient tuples of length d with entries mod p^r.
    """

    def __init__(self, p: int, r: int, d: int):
        self.p = p
        self.r = r
        self.d = d
        self.mod = p ** r
        self.h = _least_irreducible(p, d)  # monic lift, entries in [0, p)
        # reduction table: x^(d+j) mod h for j = 0..d-2
        self._red: List[GRElt] = []
        cur = tuple((-self.h[i]) % self.mod for i in range(d))  # x^d
        self._red.append(cur)
        for _ in range(d - 2):
            cur = self._shift_reduce(cur)
            self._red.append(cur)
        self.zero: GRElt = tuple([0] * d)
        self.one: GRElt = tuple([1] + [0] * (d - 1))
        self.gen: GRElt = tuple(([0, 1] + [0] * (d - 2))[:d])
        self._frob_matrix: Optional[List[GRElt]] = None
        self._teich_cache: Dict[GRElt, GRElt] = {}

    # -- basic arithmetic ---------------------------------------------------

    def _shift_reduce(self, x: GRElt) -> GRElt:
        # multiply by x, reducing once by h
        d, mod = self.d, self.mod
        carry = x[d - 1]
        out = [0] + list(x[: d - 1])
        if carry:
            top = self._red[0]
            out = [(out[i] + carry * top[i]) % mod for i in range(d)]
        else:
            out = [v % mod for v in out]
        return tuple(out)

    def add(self, x: GRElt, y: GRElt) -> GRElt:
        mod = self.mod
        return tuple((a + b) % mod for a, b in zip(x, y))

    def sub(self, x: GRElt, y: GRElt) -> GRElt:
        mod = self.mod
        return tuple((a - b) % mod for a, b in zip(x, y))

    def neg(self, x: GRElt) -> GRElt:
        mod = self.mod
        return tuple((-a) % mod for a in x)

    def scalar(self, c: int, x: GRElt) -> GRElt:
        mod = self.mod
        return tuple((c * a) % mod for a in x)

    def from_int(self, c: int) -> GRElt:
        return tuple([c % self.mod] + [0] * (self.d - 1))

    def mul(self, x: GRElt, y: GRElt) -> GRElt:
        d, mod = self.d, self.mod
        conv = [0] * (2 * d - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    conv[i + j] += xi * yj
        out = [c % mod for c in conv[:d]]
        for j in range(d - 1):
            c = conv[d + j] % mod
            if c:
                red = self._red[j]
                for i in range(d):
                    out[i] = (out[i] + c * red[i]) % mod
        return tuple(out)

    def pow(self, x: GRElt, n: int) -> GRElt:
        if n < 0:
            return self.pow(self.inv(x), -n)
        out = self.one
        base = x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def residue(self, x: GRElt) -> GRElt:
        p = self.p
        return tuple(a % p for a in x)

    def is_unit(self, x: GRElt) -> bool:
        return any(a % self.p for a in x)

    def inv(self, x: GRElt) -> GRElt:
        if not self.is_unit(x):
            raise ZeroDivisionError("not a unit in GR")
        # inverse in the residue field, then Newton lifting
        y = self.pow(self.residue(x), self.p ** self.d - 2)
        y = self.residue(y)
        prec = 1
        while prec < self.r:
            y = self.sub(self.scalar(2, y), self.mul(x, self.mul(y, y)))
            prec *= 2
        return y

    # -- Teichmuller structure ---------------------------------------------

    def teichmuller(self, x: GRElt) -> GRElt:
        """The Teichmuller element congruent to x mod p."""
        key = self.residue(x)
        hit = self._teich_cache.get(key)
        if hit is not None:
            return hit
        z = x
        for _ in range(self.r):
            z = self.pow(z, self.p ** self.d)
        self._teich_cache[key] = z
        return z

    def digits(self, x: GRElt) -> List[GRElt]:
        """Teichmuller digits: x = sum digits[i] * p^i."""
        out = []
        cur = x
        for i in range(self.r):
            t = self.teichmuller(cur)
            out.append(t)
            diff = self.sub(cur, t)
            assert all(a % self.p == 0 for a in diff)
            cur = tuple(a // self.p for a in diff)
        return out

    def frobenius(self, x: GRElt, k: int = 1) -> GRElt:
        """The ring automorphism acting as t -> t^{p^k} on Teichmuller digits."""
        k %= self.d
        if k == 0:
            return x
        if self._frob_matrix is None:
            fx = self._frob_of_gen()
            # image of basis monomial x^b is Frob(x)^b; Frobenius is additive
            self._frob_matrix = [self.pow(fx, b) for b in range(self.d)]
        out = x
        for _ in range(k):
            cols = self._frob_matrix
            acc = [0] * self.d
            for b, xb in enumerate(out):
                if xb:
                    col = cols[b]
                    for i in range(self.d):
                        acc[i] = (acc[i] + xb * col[i]) % self.mod
            out = tuple(acc)
        return out

    def _frob_of_gen(self) -> GRElt:
        digs = self.digits(self.gen)
        out = self.zero
        ppow = 1
        for t in digs:
            out = self.add(out, self.scalar(ppow, self.pow(t, self.p)))
            ppow *= self.p
        return out

    def trace_abs(self, x: GRElt) -> int:
        """Absolute trace to Z/p^r (sum of all Frobenius conjugates)."""
        acc = self.zero
        cur = x
        for _ in range(self.d):
            acc = self.add(acc, cur)
            cur = self.frobenius(cur)
        assert all(a == 0 for a in acc[1:]), "trace did not land in Z/p^r"
        return acc[0]


# ---------------------------------------------------------------------------
# the tame model
# ---------------------------------------------------------------------------

Elt = Tuple[GRElt, ...]  # coefficient vector (x_0, ..., x_{e-1}) for sum x_i pi^i


@dataclass
class Model:
    P: TameParams
    gr: GaloisRing
    tau: GRElt                # Teichmuller generator of order q_K - 1
    tau_res_log: Dict[GRElt, int]  # residue -> exponent of tau
    c_exp: int
    zeta_exp: int             # zeta_e = tau^zeta_exp
    t_exp: int                # t = tau^t_exp

    # filled in __post_init__
    c: GRElt = field(default=())
    zeta: GRElt = field(default=())
    t: GRElt = field(default=())

    def __post_init__(self):
        self.c = self.gr.pow(self.tau, self.c_exp)
        self.zeta = self.gr.pow(self.tau, self.zeta_exp)
        self.t = self.gr.pow(self.tau, self.t_exp)
        self._trace_vec: Optional[List[int]] = None

    # -- element construction ----------------------------------------------

    @property
    def e(self) -> int:
        return self.P.e

    def zero(self) -> Elt:
        return tuple(self.gr.zero for _ in range(self.e))

    def one(self) -> Elt:
        return tuple([self.gr.one] + [self.gr.zero] * (self.e - 1))

    def from_gr(self, x: GRElt) -> Elt:
        return tuple([x] + [self.gr.zero] * (self.e - 1))

    def from_int(self, c: int) -> Elt:
        return self.from_gr(self.gr.from_int(c))

    def pi(self) -> Elt:
        if self.e == 1:
            # pi^e = c p degenerates to pi = c p
            return self.from_gr(self.gr.scalar(self.P.p, self.c))
        return tuple(
            [self.gr.zero, self.gr.one] + [self.gr.zero] * (self.e - 2)
        )

    # -- ring operations ----------------------------------------------------

    def add(self, x: Elt, y: Elt) -> Elt:
        return tuple(self.gr.add(a, b) for a, b in zip(x, y))

    def sub(self, x: Elt, y: Elt) -> Elt:
        return tuple(self.gr.sub(a, b) for a, b in zip(x, y))

    def neg(self, x: Elt) -> Elt:
        return tuple(self.gr.neg(a) for a in x)

    def mul(self, x: Elt, y: Elt) -> Elt:
        e = self.e
        cp = self.gr.scalar(self.P.p, self.c)
        acc = [self.gr.zero] * e
        for i, xi in enumerate(x):
            if xi == self.gr.zero:
                continue
            for j, yj in enumerate(y):
                prod = self.gr.mul(xi, yj)
                k = i + j
                if k >= e:
                    prod = self.gr.mul(prod, cp)
                    k -= e
                acc[k] = self.gr.add(acc[k], prod)
        return tuple(acc)

    def pow(self, x: Elt, n: int) -> Elt:
        if n < 0:
            return self.pow(self.inv(x), -n)
        out = self.one()
        base = x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_unit(self, x: Elt) -> bool:
        return self.gr.is_unit(x[0])

    def inv(self, x: Elt) -> Elt:
        if not self.is_unit(x):
            raise ZeroDivisionError("not a unit")
        x0inv = self.from_gr(self.gr.inv(x[0]))
        w = self.sub(self.mul(x0inv, x), self.one())  # in pi R, nilpotent
        out = self.one()
        term = self.one()
        for _ in range(self.e * self.P.r):
            term = self.neg(self.mul(term, w))
            if term == self.zero():
                break
            out = self.add(out, term)
        return self.mul(x0inv, out)

    def pi_valuation(self, x: Elt) -> int:
        """Largest N <= er with x in pi^N R (er if x = 0)."""
        er = self.e * self.P.r
        for N in range(er):
            k, i = divmod(N, self.e)
            # coefficient of pi^i must vanish mod p^{k+1} for val > N
            if any(v % (self.P.p ** (k + 1)) for v in x[i]):
                return N
        return er

    # -- Galois action -------------------------------------------------------

    def _rho_gr(self, x: GRElt, j: int = 1) -> GRElt:
        # rho acts on coefficients as the inverse q-Frobenius
        return self.gr.frobenius(x, (self.P.a * (self.P.f - 1) * j) % self.gr.d)

    def pi_multiplier(self, g: GalElt) -> GRElt:
        """The Teichmuller unit u with g(pi) = u pi."""
        # rho^j(pi) = t rho(t) ... rho^{j-1}(t) pi; then delta^i adds zeta^i
        u = self.gr.one
        for s in range(g.j):
            u = self.gr.mul(u, self._rho_gr(self.t, s))
        u = self.gr.mul(u, self.gr.pow(self.zeta, g.i))
        return u

    def galois_act(self, g: GalElt, x: Elt) -> Elt:
        # coefficient of pi^i picks up u^i where g(pi) = u pi
        u = self.pi_multiplier(g)
        out = []
        upow = self.gr.one
        for i in range(self.e):
            out.append(self.gr.mul(self._rho_gr(x[i], g.j), upow))
            upow = self.gr.mul(upow, u)
        return tuple(out)

    def trace_K_F(self, x: Elt) -> GRElt:
        """T_{K/F}(x), returned as its GR-coefficient (the F-subring part)."""
        acc = self.zero()
        for g in gal_elements(self.P):
            acc = self.add(acc, self.galois_act(g, x))
        assert all(c == self.gr.zero for c in acc[1:]), "trace not in F"
        assert self.gr.frobenius(acc[0], self.P.a) == acc[0], "trace not in F"
        return acc[0]

    def norm_K_F(self, x: Elt) -> GRElt:
        acc = self.one()
        for g in gal_elements(self.P):
            acc = self.mul(acc, self.galois_act(g, x))
        assert all(c == self.gr.zero for c in acc[1:]), "norm not in F"
        return acc[0]

    def psi_exponent(self, z: GRElt) -> int:
        """Additive character exponent of z in the F-subring: T_{F/Q_p}(z) mod p^r.

        The absolute GR-trace of an F-element counts each conjugate f times,
        so divide by f (a unit mod p).
        """
        finv = pow(self.P.f, -1, self.gr.mod)
        return (self.gr.trace_abs(z) * finv) % self.gr.mod

    def trace_functional(self) -> Callable[[Elt], int]:
        """x -> T_{F/Q_p}(T_{K/F}(x)) mod p^r as a precomputed linear map."""
        if self._trace_vec is None:
            vec = []
            d = self.gr.d
            for i in range(self.e):
                for b in range(d):
                    basis = [self.gr.zero] * self.e
                    basis[i] = tuple(1 if bb == b else 0 for bb in range(d))
                    vec.append(self.psi_exponent(self.trace_K_F(tuple(basis))))
            self._trace_vec = vec
        vec = self._trace_vec
        mod = self.gr.mod
        d = self.gr.d

        def func(x: Elt) -> int:
            acc = 0
            idx = 0
            for i in range(self.e):
                xi = x[i]
                for b in range(d):
                    acc += vec[idx] * xi[b]
                    idx += 1
            return acc % mod

        return func


def build_model(P: TameParams) -> Model:
    """Deterministic lexicographic search for a consistent (c, zeta_e, t)."""
    gr = GaloisRing(P.p, P.r, P.a * P.f)
    qK = P.q_K
    # Teichmuller generator: least residue (as a base-p counter) of order qK-1
    tau = None
    for code in range(1, P.p ** gr.d):
        coeffs = []
        cc = code
        for _ in range(gr.d):
            coeffs.append(cc % P.p)
            cc //= P.p
        cand = tuple(coeffs)
        # multiplicative order in the residue field
        ok = True
        for ell in _prime_divisors(qK - 1):
            if gr.residue(gr.pow(cand, (qK - 1) // ell)) == gr.residue(gr.one):
                ok = False
                break
        if ok:
            tau = gr.teichmuller(cand)
            break
    if tau is None:
        raise NoConsistentModel("no residue field generator found")
    res_log: Dict[GRElt, int] = {}
    cur = gr.one
    for k in range(qK - 1):
        res_log[gr.residue(cur)] = k
        cur = gr.mul(cur, tau)

    e, f, m, q = P.e, P.f, P.m, P.q
    L = qK - 1
    if e == 1:
        model = Model(P, gr, tau, res_log, c_exp=0, zeta_exp=0, t_exp=0)
        _verify_model(model)
        return model

    S = sum(pow(q, s * (f - 1), L) for s in range(f)) % L
    for c_exp in range(L):
        rhs1 = (c_exp * (pow(q, f - 1, L) - 1)) % L
        g1 = gcd(e, L)
        if rhs1 % g1 != 0:
            continue
        t0 = (rhs1 // g1) * pow(e // g1, -1, L // g1) % (L // g1)
        for j in range(1, e + 1):
            if gcd(j, e) != 1:
                continue
            z_exp = (L // e) * j % L
            for k in range(g1):
                t_exp = (t0 + k * (L // g1)) % L
                if (S * t_exp - m * z_exp) % L == 0:
                    model = Model(
                        P, gr, tau, res_log,
                        c_exp=c_exp, zeta_exp=z_exp, t_exp=t_exp,
                    )
                    _verify_model(model)
                    return model
    raise NoConsistentModel(f"no (c, zeta, t) for {P}")


def _prime_divisors(n: int) -> List[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _verify_model(M: Model):
    P = M.P
    gr = M.gr
    # zeta_e has exact order e
    assert gr.pow(M.zeta, P.e) == gr.one
    for ell in _prime_divisors(P.e):
        assert gr.pow(M.zeta, P.e // ell) != gr.one, "zeta order too small"
    pi = M.pi()
    # pi^e = c p
    assert M.pow(pi, P.e) == M.from_gr(gr.scalar(P.p, M.c))
    # group homomorphism property on a generating pair, applied to pi and
    # the coefficient generator
    samples = [pi, M.from_gr(gr.gen), M.from_gr(M.tau)]
    for g1 in (GalElt(1 % P.e, 0), GalElt(0, 1 % P.f)):
        for g2 in (GalElt(1 % P.e, 0), GalElt(0, 1 % P.f)):
            from .tame_galois import gal_mul
            g12 = gal_mul(g1, g2, P)
            for x in samples:
                lhs = M.galois_act(g1, M.galois_act(g2, x))
                assert lhs == M.galois_act(g12, x), "action not a homomorphism"


# ---------------------------------------------------------------------------
# unit group presentations
# ---------------------------------------------------------------------------

class UnitGroupPresentation:
    """Invariant-factor presentation of (R/pi^N)^x with exact discrete logs.

    Generators: the Teichmuller generator tau, then the one-units
    1 + x^b pi^i for each level 1 <= i < N and monomial basis index b.
    The relation lattice has determinant equal to the group order, so it
    is the full lattice and Smith normal form yields the group structure.
    """

    def __init__(self, M: Model, N: int):
        if not 1 <= N <= M.e * M.P.r:
            raise ValueError("level out of range")
        self.M = M
        self.N = N
        gr = M.gr
        d = gr.d
        gens: List[Elt] = [M.from_gr(M.tau)]
        self.levels: List[Tuple[int, int]] = [(0, 0)]
        for i in range(1, N):
            for b in range(d):
                mono = tuple(1 if bb == b else 0 for bb in range(d))
                one_unit = list(M.zero())
                one_unit[0] = gr.one
                k, ii = divmod(i, M.e)
                one_unit[ii] = gr.add(
                    one_unit[ii], gr.scalar(M.P.p ** k, mono)
                ) if ii == 0 else gr.scalar(M.P.p ** k, mono)
                gens.append(tuple(one_unit))
                self.levels.append((i, b))
        self.gens = gens
        g = len(gens)
        qK = M.P.q_K
        rows: List[List[int]] = []
        rows.append([qK - 1] + [0] * (g - 1))
        for idx in range(1, g):
            w = self._raw_dlog(M.pow(gens[idx], M.P.p))
            row = [-x for x in w]
            row[idx] += M.P.p
            rows.append(row)
        s, u, v = smith_normal_form(rows)
        self._v = v
        vinv = invert_unimodular(v)
        diag = [s[i][i] for i in range(g)]
        self.all_orders = diag
        self._keep = [i for i in range(g) if diag[i] != 1]
        self.orders = [diag[i] for i in self._keep]
        # generators of the invariant-factor coordinates
        self.inv_gens: List[Elt] = []
        for k in self._keep:
            h = M.one()
            for jj, ex in enumerate(vinv[k]):
                if ex:
                    h = M.mul(h, M.pow(gens[jj], ex))
            self.inv_gens.append(h)

    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    # -- discrete logs -------------------------------------------------------

    def _residue_log(self, x: Elt) -> int:
        return self.M.tau_res_log[self.M.gr.residue(x[0])]

    def _raw_dlog(self, x: Elt) -> List[int]:
        M = self.M
        gr = M.gr
        assert M.is_unit(x)
        w = [0] * len(self.gens)
        k0 = self._residue_log(x)
        w[0] = k0
        cur = M.mul(x, M.pow(self.gens[0], -k0))
        for i in range(1, self.N):
            # cur = 1 + v pi^i mod pi^{i+1}; read off v's residue coefficients
            k, ii = divmod(i, M.e)
            coeff = cur[ii]
            if ii == 0:
                coeff = gr.sub(coeff, gr.one)
            assert all(a % M.P.p ** k == 0 for a in coeff)
            vres = tuple((a // (M.P.p ** k)) % M.P.p for a in coeff)
            base = 1 + (i - 1) * gr.d
            for b in range(gr.d):
                cb = vres[b]
                if cb:
                    w[base + b] = cb
                    cur = M.mul(cur, M.pow(self.gens[base + b], -cb))
        # cur must now be 1 mod pi^N
        assert self._is_one_mod(cur), "dlog failed to terminate"
        return w

    def _is_one_mod(self, x: Elt) -> bool:
        diff = self.M.sub(x, self.M.one())
        return self.M.pi_valuation(diff) >= self.N

    def dlog(self, x: Elt) -> List[int]:
        """Coordinates of x in the invariant-factor basis."""
        w = self._raw_dlog(x)
        full = [0] * len(self.all_orders)
        for j in range(len(full)):
            acc = 0
            for i, wi in enumerate(w):
                acc += wi * self._v[i][j]
            full[j] = acc % self.all_orders[j]
        return [full[k] for k in self._keep]

    def element_from_coords(self, coords: Sequence[int]) -> Elt:
        out = self.M.one()
        for h, c in zip(self.inv_gens, coords):
            if c:
                out = self.M.mul(out, self.M.pow(h, c))
        return out

    def enumerate(self):
        """Yield (coords, element) over the whole group."""
        orders = self.orders
        s = len(orders)
        coords = [0] * s
        elt = self.M.one()
        yield tuple(coords), elt
        total = self.order()
        # odometer enumeration with incremental multiplication
        count = 1
        cache_pows = self.inv_gens
        while count < total:
            k = 0
            while coords[k] == orders[k] - 1:
                coords[k] = 0
                k += 1
            coords[k] += 1
            # recompute from scratch for carry positions (cheap: few carries)
            elt = self.element_from_coords(coords)
            yield tuple(coords), elt
            count += 1

    def act_matrix(self, g: GalElt) -> List[List[int]]:
        """Matrix of the Galois action of g in invariant coordinates."""
        return [self.dlog(self.M.galois_act(g, h)) for h in self.inv_gens]


class BaseUnitPresentation:
    """Units of the F-subring GR(p^r, a) sitting inside the big model ring.

    Same invariant-factor machinery as UnitGroupPresentation, with p-levels
    and residue basis the powers of the Teichmuller generator of F_q.
    """

    def __init__(self, M: Model):
        self.M = M
        gr = M.gr
        P = M.P
        q, qK = P.q, P.q_K
        self.tauF = gr.pow(M.tau, (qK - 1) // (q - 1))
        # residue log table for F_q^* inside the big residue field
        self.res_log: Dict[GRElt, int] = {}
        cur = gr.one
        for k in range(q - 1):
            self.res_log[gr.residue(cur)] = k
            cur = gr.mul(cur, self.tauF)
        # residue basis of F_q over F_p: powers of tauF
        self.res_basis = [
            gr.residue(gr.pow(self.tauF, b)) for b in range(P.a)
        ]
        gens: List[GRElt] = [self.tauF]
        for i in range(1, P.r):
            for b in range(P.a):
                gens.append(
                    gr.add(gr.one, gr.scalar(P.p ** i, gr.pow(self.tauF, b)))
                )
        self.gens = gens
        g = len(gens)
        rows: List[List[int]] = [[q - 1] + [0] * (g - 1)]
        for idx in range(1, g):
            w = self._raw_dlog(gr.pow(gens[idx], P.p))
            row = [-x for x in w]
            row[idx] += P.p
            rows.append(row)
        s, u, v = smith_normal_form(rows)
        self._v = v
        diag = [s[i][i] for i in range(g)]
        self.all_orders = diag
        self._keep = [i for i in range(g) if diag[i] != 1]
        self.orders = [diag[i] for i in self._keep]

    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def _solve_res(self, v: GRElt) -> List[int]:
        """Write a residue of F_q as an F_p-combination of the residue basis."""
        gr = self.M.gr
        p = self.M.P.p
        # tiny dense solve over F_p in the big residue coordinates
        cols = [list(b) for b in self.res_basis]
        target = list(v)
        ncols = len(cols)
        nrows = len(target)
        aug = [[cols[c][rr] for c in range(ncols)] + [target[rr]]
               for rr in range(nrows)]
        sol = [0] * ncols
        rr = 0
        pivots = []
        for c in range(ncols):
            piv = None
            for r2 in range(rr, nrows):
                if aug[r2][c] % p:
                    piv = r2
                    break
            if piv is None:
                continue
            aug[rr], aug[piv] = aug[piv], aug[rr]
            inv = pow(aug[rr][c], -1, p)
            aug[rr] = [(x * inv) % p for x in aug[rr]]
            for r2 in range(nrows):
                if r2 != rr and aug[r2][c] % p:
                    fac = aug[r2][c]
                    aug[r2] = [(x - fac * y) % p for x, y in zip(aug[r2], aug[rr])]
            pivots.append(c)
            rr += 1
        for k, c in enumerate(pivots):
            sol[c] = aug[k][ncols]
        # consistency
        for r2 in range(rr, nrows):
            assert aug[r2][ncols] % p == 0, "residue not in F_q"
        return sol

    def _raw_dlog(self, x: GRElt) -> List[int]:
        gr = self.M.gr
        P = self.M.P
        w = [0] * len(self.gens)
        k0 = self.res_log[gr.residue(x)]
        w[0] = k0
        cur = gr.mul(x, gr.inv(gr.pow(self.tauF, k0))) if k0 else x
        for i in range(1, P.r):
            diff = gr.sub(cur, gr.one)
            assert all(a % P.p ** i == 0 for a in diff)
            vres = tuple((a // P.p ** i) % P.p for a in diff)
            if any(vres):
                sol = self._solve_res(vres)
                base = 1 + (i - 1) * P.a
                for b, cb in enumerate(sol):
                    if cb:
                        w[base + b] = cb
                        cur = gr.mul(
                            cur, gr.inv(gr.pow(self.gens[base + b], cb))
                        )
        assert all(a % gr.mod == 0 for a in gr.sub(cur, gr.one)), "dlog failed"
        return w

    def dlog(self, x: GRElt) -> List[int]:
        w = self._raw_dlog(x)
        full = [0] * len(self.all_orders)
        for j in range(len(full)):
            acc = 0
            for i, wi in enumerate(w):
                acc += wi * self._v[i][j]
            full[j] = acc % self.all_orders[j]
        return [full[k] for k in self._keep]


def kernel_of_norm(M: Model, U: UnitGroupPresentation) -> SubgroupPresentation:
    """The subgroup U-bar = ker(N_{K/F}) of the full unit group U(er)."""
    from .intlinalg import kernel_subgroup
    B = BaseUnitPresentation(M)
    # matrix of the norm map in invariant coordinates
    rows = [B.dlog(M.norm_K_F(h)) for h in U.inv_gens]
    return kernel_subgroup(list(U.orders), rows, list(B.orders))


# ---------------------------------------------------------------------------
# the generator beta and brute-force structure checks
# ---------------------------------------------------------------------------

def find_beta(M: Model) -> Elt:
    """A trace-zero Shintani generator beta with O_K = O_F[beta]."""
    P = M.P
    gr = M.gr
    if P.f == 1:
        beta = M.pi()
    else:
        # tau minus the balanced trace correction; add pi when also ramified
        tau_elt = M.from_gr(M.tau)
        tr = M.trace_K_F(tau_elt)
        ninv = pow(P.n, -1, gr.mod)
        corr = M.from_gr(gr.scalar(ninv, tr))
        beta = M.sub(tau_elt, corr)
        if P.e > 1:
            beta = M.add(beta, M.pi())
    assert M.trace_K_F(beta) == gr.zero, "beta has nonzero trace"
    if not _is_generator(M, beta):
        raise NoGenerator(f"search produced a non-generator for {P}")
    return beta


def _flatten_res(M: Model, x: Elt) -> List[int]:
    """Residue of x as an F_p-vector of length e*d."""
    p = M.P.p
    out = []
    for c in x:
        out.extend(a % p for a in c)
    return out


def _is_generator(M: Model, beta: Elt) -> bool:
    """Nakayama test: {w^c beta^k} spans R/pR over F_p, w a basis of F_q."""
    P = M.P
    gr = M.gr
    qK = P.q_K
    omega = M.from_gr(gr.pow(M.tau, (qK - 1) // (P.q - 1)))
    vecs = []
    bpow = M.one()
    for k in range(P.n):
        opow = M.one()
        for c in range(P.a):
            vecs.append(_flatten_res(M, M.mul(opow, bpow)))
            opow = M.mul(opow, omega)
        bpow = M.mul(bpow, beta)
    return _fp_rank(vecs, P.p) == len(vecs[0])


def _fp_rank(rows: List[List[int]], p: int) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0])
    rr = 0
    for c in range(ncols):
        piv = None
        for r2 in range(rr, len(rows)):
            if rows[r2][c] % p:
                piv = r2
                break
        if piv is None:
            continue
        rows[rr], rows[piv] = rows[piv], rows[rr]
        inv = pow(rows[rr][c], -1, p)
        rows[rr] = [(x * inv) % p for x in rows[rr]]
        for r2 in range(len(rows)):
            if r2 != rr and rows[r2][c] % p:
                fac = rows[r2][c]
                rows[r2] = [(x - fac * y) % p for x, y in zip(rows[r2], rows[rr])]
        rank += 1
        rr += 1
    return rank


def regular_rep_matrix(M: Model, beta: Elt, level: int) -> List[List[int]]:
    """Matrix of multiplication by beta on O_K over O_F mod p^level.

    Only supported for a = 1 (O_F/p^level = Z/p^level), where the flattened
    coordinates are already O_F-coordinates.
    """
    P = M.P
    if P.a != 1:
        raise TooLarge("regular representation matrix needs a = 1")
    mod = P.p ** level
    n = P.n
    d = M.gr.d

    def flatten(x: Elt) -> List[int]:
        out = []
        for c in x:
            out.extend(a % mod for a in c)
        return out

    cols = []
    # basis of R over Z/p^r: x^b pi^i flattens to the standard basis
    for i in range(P.e):
        for b in range(d):
            basis = [M.gr.zero] * P.e
            basis[i] = tuple(1 if bb == b else 0 for bb in range(d))
            cols.append(flatten(M.mul(tuple(basis), beta)))
    # matrix with column j = image of basis j (n x n, row-major)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def centralizer_bruteforce(M: Model, beta: Elt, level: int) -> bool:
    """Check {X : [X, beta] = 0} = span(1, beta, ..., beta^{n-1}) in M_n(Z/p^level)."""
    P = M.P
    n = P.n
    mod = P.p ** level
    if mod ** (n * n) > 10 ** 7:
        raise TooLarge(f"{mod}^{n * n} matrices is beyond the brute-force bound")
    B = regular_rep_matrix(M, beta, level)

    def mat_mul_mod(A, C):
        return [
            [sum(A[i][k] * C[k][j] for k in range(n)) % mod for j in range(n)]
            for i in range(n)
        ]

    # span of powers of beta
    span = set()
    pw = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    powers = []
    for _ in range(n):
        powers.append(pw)
        pw = mat_mul_mod(pw, B)
    for code in range(mod ** n):
        cc = code
        acc = [[0] * n for _ in range(n)]
        for pk in powers:
            lam = cc % mod
            cc //= mod
            for i in range(n):
                for j in range(n):
                    acc[i][j] = (acc[i][j] + lam * pk[i][j]) % mod
        span.add(tuple(tuple(r) for r in acc))

    count = 0
    for code in range(mod ** (n * n)):
        cc = code
        X = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                X[i][j] = cc % mod
                cc //= mod
        if mat_mul_mod(X, B) == mat_mul_mod(B, X):
            count += 1
            if tuple(tuple(r) for r in X) not in span:
                return False
    return count == len(span)


def symplectic_check(M: Model, beta: Elt) -> Tuple[bool, int]:
    """The form D(X, Y) = tr([X, Y] beta) on sl_n(F_p)/centralizer part.

    Returns (non-degenerate and alternating, quotient dimension).  Only for
    a = 1 so that the residue field of F is the prime field.
    """
    P = M.P
    if P.a != 1:
        raise TooLarge("symplectic check needs a = 1")
    p = P.p
    n = P.n
    B = [[x % p for x in row] for row in regular_rep_matrix(M, beta, 1)]

    def mmul(A, C):
        return [
            [sum(A[i][k] * C[k][j] for k in range(n)) % p for j in range(n)]
            for i in range(n)
        ]

    def tr(A):
        return sum(A[i][i] for i in range(n)) % p

    # basis of sl_n(F_p)
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                E = [[0] * n for _ in range(n)]
                E[i][j] = 1
                basis.append(E)
    for i in range(n - 1):
        E = [[0] * n for _ in range(n)]
        E[i][i] = 1
        E[i + 1][i + 1] = p - 1
        basis.append(E)

    def bracket(A, C):
        AC = mmul(A, C)
        CA = mmul(C, A)
        return [[(AC[i][j] - CA[i][j]) % p for j in range(n)] for i in range(n)]

    gram = [
        [tr(mmul(bracket(X, Y), B)) % p for Y in basis] for X in basis
    ]
    for i in range(len(basis)):
        if gram[i][i] % p:
            return False, -1
    rank = _fp_rank_square(gram, p)
    return rank == n * (n - 1), rank


def _fp_rank_square(rows, p):
    return _fp_rank([list(r) for r in rows], p)


# ---------------------------------------------------------------------------
# optional model-table cache
# ---------------------------------------------------------------------------

def dump_model_cache(M: Model) -> Optional[str]:
    """Write Teichmuller log and model constants to TAME_LLC_CACHE if set."""
    cache_dir = os.environ.get("TAME_LLC_CACHE")
    if not cache_dir:
        return None
    os.makedirs(cache_dir, exist_ok=True)
    P = M.P
    key = hashlib.sha256(
        repr((P.p, P.a, P.e, P.f, P.m, P.r)).encode()
    ).hexdigest()[:16]
    path = os.path.join(cache_dir, f"model-{key}.txt")
    with open(path, "w") as fh:
        fh.write(f"params p={P.p} a={P.a} e={P.e} f={P.f} m={P.m} r={P.r}\n")
        fh.write(f"h {' '.join(map(str, M.gr.h))}\n")
        fh.write(f"c_exp {M.c_exp}\nzeta_exp {M.zeta_exp}\nt_exp {M.t_exp}\n")
        for res, k in sorted(M.tau_res_log.items()):
            fh.write(f"log {' '.join(map(str, res))} -> {k}\n")
    return path
