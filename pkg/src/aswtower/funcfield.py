"""Function fields of Artin-Schreier chains over the projective line.

A chain adjoins variables y_0, ..., y_{n-1} to F_q(x), the level-i relation
being y_i^p - y_i = g_i with g_i an element of the level-i field.  Elements
are kept in the canonical reduced form sum_J c_J(x) y^J with every exponent
below p; multiplication rewrites y_i^p as y_i + g_i.

The Cartier operator comes from the p-basis {1, x, ..., x^{p-1}}: writing
u = sum u_a^p x^a with u_a in the function field, V(u dx) = u_{p-1} dx.  The
decomposition is computed one chain level at a time by substituting
y = y^p - g into the top variable, which leaves coefficients one level down,
where the same rule applies until plain rational functions remain.
"""

from __future__ import annotations

from math import comb

from .errors import AswError
from .field import Fq
from .polyrat import (LSeries, PolyRing, QuotientField, Rat, RatField, ls_add, ls_const,
                      ls_mul, ls_pow, ls_sub, ls_zero)

FFElem = dict  # {exponent tuple: Rat}


class Chain:
    """Artin-Schreier chain arithmetic; immutable once all levels are pushed."""

    def __init__(self, F: Fq):
        self.F = F
        self.R = PolyRing(F)
        self.Q = RatField(self.R)
        self.gs: list[FFElem] = []
        self._y_derivs: list[FFElem] = []

    @property
    def n(self) -> int:
        return len(self.gs)

    def push_level(self, g: FFElem) -> None:
        """Append a relation y_n^p - y_n = g; g must live in the current levels."""
        for J in g:
            if len(J) != self.n or any(e < 0 or e >= self.F.p for e in J):
                raise AswError("relation must be reduced and one level down")
        self.gs.append(self._pad(g, self.n + 1))
        self._y_derivs = []  # recomputed lazily against the new depth

    @staticmethod
    def _pad(u: FFElem, n: int) -> FFElem:
        return {tuple(J) + (0,) * (n - len(J)): c for J, c in u.items()}

    # -- constructors ---------------------------------------------------------

    def zero(self) -> FFElem:
        return {}

    def one(self) -> FFElem:
        return {(0,) * self.n: self.Q.one}

    def from_rat(self, h: Rat) -> FFElem:
        return {} if h.is_zero() else {(0,) * self.n: h}

    def from_poly(self, a) -> FFElem:
        return self.from_rat(Rat(a, self.R.one)) if a else {}

    def var(self, i: int) -> FFElem:
        J = tuple(1 if t == i else 0 for t in range(self.n))
        return {J: self.Q.one}

    def x_elem(self) -> FFElem:
        return self.from_rat(self.Q.x)

    def lift(self, u: FFElem) -> FFElem:
        """Re-key an element from a shorter chain prefix into this chain."""
        return self._pad(u, self.n)

    # -- ring operations ------------------------------------------------------

    def add(self, u: FFElem, v: FFElem) -> FFElem:
        out = dict(u)
        for J, c in v.items():
            if J in out:
                s = self.Q.add(out[J], c)
                if s.is_zero():
                    del out[J]
                else:
                    out[J] = s
            else:
                out[J] = c
        return out

    def neg(self, u: FFElem) -> FFElem:
        return {J: self.Q.neg(c) for J, c in u.items()}

    def sub(self, u: FFElem, v: FFElem) -> FFElem:
        return self.add(u, self.neg(v))

    def scale(self, h: Rat, u: FFElem) -> FFElem:
        if h.is_zero():
            return {}
        return {J: self.Q.mul(h, c) for J, c in u.items()}

    def mul(self, u: FFElem, v: FFElem) -> FFElem:
        raw: dict = {}
        for J1, c1 in u.items():
            for J2, c2 in v.items():
                key = tuple(a + b for a, b in zip(J1, J2))
                c = self.Q.mul(c1, c2)
                if key in raw:
                    raw[key] = self.Q.add(raw[key], c)
                else:
                    raw[key] = c
        return self._reduce(raw)

    def pow(self, u: FFElem, e: int) -> FFElem:
        out = self.one()
        base = u
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def _reduce(self, raw: dict) -> FFElem:
        """Rewrite exponents >= p via y_i^p = y_i + g_i until canonical."""
        p = self.F.p
        out: FFElem = {}
        # process in decreasing lex order on reversed exponent tuples so each
        # rewrite strictly descends
        work = dict(raw)
        while work:
            J = max(work, key=lambda t: t[::-1])
            c = work.pop(J)
            if c.is_zero():
                continue
            i = next((t for t in range(len(J)) if J[t] >= p), None)
            if i is None:
                if J in out:
                    s = self.Q.add(out[J], c)
                    if s.is_zero():
                        del out[J]
                    else:
                        out[J] = s
                else:
                    out[J] = c
                continue
            base = list(J)
            base[i] -= p
            # y_i^p = y_i + g_i
            lin = tuple(base[t] + (1 if t == i else 0) for t in range(len(J)))
            work[lin] = self.Q.add(work.get(lin, self.Q.zero), c)
            for K, d in self.gs[i].items():
                key = tuple(b + k for b, k in zip(base, K))
                cd = self.Q.mul(c, d)
                work[key] = self.Q.add(work.get(key, self.Q.zero), cd)
        return out

    def equal(self, u: FFElem, v: FFElem) -> bool:
        return not self.sub(u, v)

    # -- Frobenius, derivative, trace ----------------------------------------

    def frob_p(self, u: FFElem) -> FFElem:
        """u^p (freshman's dream plus reduction)."""
        p = self.F.p
        raw = {tuple(e * p for e in J): self.Q.pth_power(c) for J, c in u.items()}
        return self._reduce(raw)

    def _deriv_tables(self) -> list[FFElem]:
        # dy_i/dx = -(total derivative of g_i), built in level order
        if not self._y_derivs:
            derivs: list[FFElem] = []
            for i in range(self.n):
                total = self._deriv_with(self.gs[i], derivs)
                derivs.append(self.neg(total))
            self._y_derivs = derivs
        return self._y_derivs

    def _deriv_with(self, u: FFElem, lower_derivs: list[FFElem]) -> FFElem:
        out = self.zero()
        for J, c in u.items():
            mono = {J: self.Q.one}
            dc = self.Q.deriv(c)
            if not dc.is_zero():
                out = self.add(out, self.scale(dc, mono))
            for i, e in enumerate(J):
                if e % self.F.p == 0:
                    continue
                if i >= len(lower_derivs):
                    raise AswError("derivative of a not-yet-differentiable level")
                down = tuple(J[t] - (1 if t == i else 0) for t in range(len(J)))
                term = self.scale(self.Q.smul(self.F.from_int(e), c), {down: self.Q.one})
                out = self.add(out, self.mul(term, lower_derivs[i]))
        return out

    def deriv(self, u: FFElem) -> FFElem:
        """d/dx in the function field."""
        return self._deriv_with(u, self._deriv_tables())

    def trace_step(self, u: FFElem, level: int) -> FFElem:
        """Trace over the degree-p step that drops variable y_{level-1}.

        Powers y^j of the dropped variable have trace 0 for j < p-1 and -1 for
        j = p-1.
        """
        i = level - 1
        p = self.F.p
        out: FFElem = {}
        for J, c in u.items():
            if any(J[t] and t >= level for t in range(len(J))):
                raise AswError("element not in the claimed level")
            if J[i] != p - 1:
                continue
            key = tuple(0 if t == i else J[t] for t in range(len(J)))
            nc = self.Q.neg(c)
            out[key] = self.Q.add(out.get(key, self.Q.zero), nc)
        return {J: c for J, c in out.items() if not c.is_zero()}

    def trace_to(self, u: FFElem, from_level: int, to_level: int) -> FFElem:
        out = u
        for lvl in range(from_level, to_level, -1):
            out = self.trace_step(out, lvl)
        return out

    def substitute(self, u: FFElem, images: list[FFElem]) -> FFElem:
        """Apply the x-fixing endomorphism y_i -> images[i]."""
        out = self.zero()
        powers: dict[tuple[int, int], FFElem] = {}

        def img_pow(i, e):
            if e == 0:
                return self.one()
            if (i, e) not in powers:
                powers[(i, e)] = self.mul(img_pow(i, e - 1), images[i])
            return powers[(i, e)]

        for J, c in u.items():
            term = self.from_rat(c)
            for i, e in enumerate(J):
                if e:
                    term = self.mul(term, img_pow(i, e))
            out = self.add(out, term)
        return out

    # -- Cartier --------------------------------------------------------------

    def cartier_rat(self, h: Rat) -> Rat:
        """V(h dx) for rational h: the x^{p-1}-component of the p-basis expansion."""
        R, F = self.R, self.F
        p = F.p
        if h.is_zero():
            return self.Q.zero
        N = R.mul(h.num, R.pow(h.den, p - 1))
        comp = [F.zero] * ((len(N) + p - 1) // p) if N else []
        for k, c in enumerate(N):
            if k % p == p - 1 and c != F.zero:
                comp[k // p] = F.pth_root(c)
        Np = R.trim(list(comp))
        return Rat.make(R, Np, h.den)

    def _top_coeffs(self, u: FFElem, level: int) -> list[FFElem]:
        p = self.F.p
        coeffs = [self.zero() for _ in range(p)]
        for J, c in u.items():
            j = J[level - 1]
            key = tuple(0 if t == level - 1 else J[t] for t in range(len(J)))
            coeffs[j] = self.add(coeffs[j], {key: c})
        return coeffs

    def cartier(self, u: FFElem, level: int | None = None) -> FFElem:
        """V(u dx) as an element of the same chain (coefficient of dx)."""
        if level is None:
            level = self.n
        if not u:
            return {}
        if level == 0:
            (J, c), = u.items()
            if any(J):
                raise AswError("level-0 element expected")
            return self.from_rat(self.cartier_rat(c))
        p = self.F.p
        uj = self._top_coeffs(u, level)
        g = self.gs[level - 1]
        neg_g_pows = [self.one()]
        for _ in range(p - 1):
            neg_g_pows.append(self.mul(neg_g_pows[-1], self.neg(g)))
        y = self.var(level - 1)
        out = self.zero()
        for i in range(p):
            vi = self.zero()
            for j in range(i, p):
                coeff = comb(j, i) % p
                if coeff and uj[j]:
                    term = self.scale(self.Q.from_int(coeff), self.mul(neg_g_pows[j - i], uj[j]))
                    vi = self.add(vi, term)
            Vvi = self.cartier(vi, level - 1)
            out = self.add(out, self.mul(self.pow(y, i), Vvi))
        return out

    # -- local expansions ------------------------------------------------------

    def y_series(self, g_series: LSeries, y0, K: QuotientField, prec: int) -> LSeries:
        """Solve Y^p - Y = G in K[[s]] from the residue root y0 (regular case).

        The contraction Y <- Y^p - G converges p-adically in s since the
        linear part of Y^p - Y at a simple root has invertible derivative.
        """
        p = self.F.p
        Y = ls_const(K, y0, prec)
        steps = max(2, prec + 1)
        for _ in range(steps):
            Y2 = ls_sub(ls_pow(Y, p), g_series)
            if series_eq(Y, Y2, prec):
                return Y2
            Y = Y2
        raise AswError("y-series iteration failed to stabilize")

    def evaluate_series(self, u: FFElem, xs: LSeries, ys: list[LSeries],
                        K: QuotientField, prec: int) -> LSeries:
        from .polyrat import ls_eval_rat

        out = ls_zero(K, prec)
        for J, c in u.items():
            term = ls_eval_rat(self.R, c, xs, K, prec)
            for i, e in enumerate(J):
                if e:
                    term = ls_mul(term, ls_pow(ys[i], e))
            out = ls_add(out, term)
        return out


def series_eq(a: LSeries, b: LSeries, upto: int) -> bool:
    d = ls_sub(a, b).normalized()
    return not d.coeffs or d.start >= upto


def linear_coordinates(chain: Chain, elems: list[FFElem]):
    """Coordinate vectors over F_q for a family of chain elements.

    For each monomial key J, all coefficients are put over one common
    denominator; the resulting numerator coefficients, concatenated over the
    keys in sorted order, give exact finite-dimensional coordinates suitable
    for rank/solve computations.
    """
    R, Q = chain.R, chain.Q
    keys = sorted({J for u in elems for J in u})
    dens = {}
    for J in keys:
        d = R.one
        for u in elems:
            if J in u:
                den = u[J].den
                g = R.gcd(d, den)
                d = R.mul(d, R.divmod(den, g)[0])
        dens[J] = d
    blocks = []
    for J in keys:
        width = 0
        nums = []
        for u in elems:
            if J in u:
                c = u[J]
                mult = R.divmod(dens[J], c.den)[0]
                num = R.mul(c.num, mult)
            else:
                num = ()
            nums.append(num)
            width = max(width, len(num))
        blocks.append((nums, width))
    F = chain.F
    vectors = []
    for idx in range(len(elems)):
        vec = []
        for nums, width in blocks:
            num = nums[idx]
            vec.extend([num[i] if i < len(num) else F.zero for i in range(width)])
        vectors.append(vec)
    return vectors


def solve_in_span(chain: Chain, basis: list[FFElem], target: FFElem):
    """Coordinates of target in span(basis) over F_q, or None."""
    from . import linalg

    vecs = linear_coordinates(chain, basis + [target])
    bvecs, tvec = vecs[:-1], vecs[-1]
    if not bvecs:
        return [] if all(x == chain.F.zero for x in tvec) else None
    return linalg.in_span(chain.F, bvecs, tvec)
