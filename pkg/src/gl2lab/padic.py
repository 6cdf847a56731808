"""Truncated unramified p-adic arithmetic and scaled 2x2 matrices.

The ring GR(p^N, r) = Z_{p^r} / p^N is represented by coefficient vectors
of length r modulo p^N with respect to a fixed monic lift of the
lexicographically smallest irreducible polynomial of degree r over F_p.
A matrix over Q_{p^r} is stored as p^e * M with M primitive (M != 0 mod p),
together with the number of certified p-adic digits of M.  Matrices built
from integer data additionally carry their exact integer entries, which is
what allows answers like "this valuation is infinite" to be certified.
"""

from __future__ import annotations

import itertools
from functools import total_ordering

from .errors import DomainError, PrecisionExhausted


# ---------------------------------------------------------------------------
# extended naturals


@total_ordering
class ExtendedNat:
    """A non-negative integer or infinity, totally ordered with INF maximal."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None and value < 0:
            raise ValueError("ExtendedNat must be >= 0")
        self.value = value  # None encodes infinity

    @property
    def is_infinite(self):
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, ExtendedNat):
            return self.value == other.value
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = ExtendedNat(other)
        if not isinstance(other, ExtendedNat):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "oo" if self.value is None else str(self.value)


INF = ExtendedNat(None)


def vp_int(x: int, p: int) -> ExtendedNat:
    """p-adic valuation of an integer, INF for 0."""
    if x == 0:
        return INF
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return ExtendedNat(v)


# ---------------------------------------------------------------------------
# polynomials over F_p (defining polynomial selection)


def _fp_polydivmod(a, b, p):
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(da - db + 1, 1)
    for i in range(da - db, -1, -1):
        c = (a[i + db] * inv_lead) % p
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] = (a[i + j] - c * b[j]) % p
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _fp_irreducible(f, p):
    """Monic f over F_p is irreducible (trial division up to deg/2)."""
    r = len(f) - 1
    if r == 1:
        return True
    for deg in range(1, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = list(tail) + [1]
            _, rem = _fp_polydivmod(f, g, p)
            if rem == [0]:
                return False
    return True


def smallest_irreducible(p, r):
    """Monic degree-r polynomial over F_p, irreducible, least coefficient code.

    Coefficient code is c0 + c1*p + ...; coefficients lifted to [0, p).
    """
    for code in range(p**r):
        c, coeffs = code, []
        for _ in range(r):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if _fp_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# exact arithmetic in the order O = Z[x]/(f), f the fixed monic lift


def _o_reduce(coeffs, f):
    """Reduce an integer polynomial mod the monic integer polynomial f."""
    c = list(coeffs)
    r = len(f) - 1
    for i in range(len(c) - 1, r - 1, -1):
        lead = c[i]
        if lead:
            c[i] = 0
            for j in range(r):
                c[i - r + j] -= lead * f[j]
    if len(c) < r:
        c += [0] * (r - len(c))
    return tuple(c[:r])


def _o_mul(a, b, f):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _o_reduce(out, f)


def _o_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _o_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# the local context


_CTX_CACHE = {}


class LocalContext:
    """Parameters (p, r, N): arithmetic in GR(p^N, r), q = p^r."""

    def __init__(self, p: int, r: int, N: int):
        if not _is_prime(p):
            raise DomainError(f"p = {p} is not prime")
        if r < 1 or N < 1:
            raise DomainError("need r >= 1 and N >= 1")
        self.p = p
        self.r = r
        self.N = N
        self.q = p**r
        self.pN = p**N
        self.defining_poly = smallest_irreducible(p, r)
        self._sigma_cols = None  # lazily computed images of basis powers

    # -- basic element helpers ---------------------------------------------

    def el(self, coeffs) -> "GaloisRingElement":
        if isinstance(coeffs, GaloisRingElement):
            if coeffs.ctx.key() != self.key():
                raise DomainError("context mismatch")
            return coeffs
        if isinstance(coeffs, int):
            coeffs = (coeffs,) + (0,) * (self.r - 1)
        coeffs = tuple(int(c) % self.pN for c in coeffs)
        if len(coeffs) != self.r:
            raise DomainError("coefficient vector has wrong length")
        return GaloisRingElement(self, coeffs)

    @property
    def zero(self):
        return self.el(0)

    @property
    def one(self):
        return self.el(1)

    @property
    def generator(self):
        return self.el((0, 1) + (0,) * (self.r - 2)) if self.r > 1 else self.zero

    def key(self):
        return (self.p, self.r, self.N)

    def __repr__(self):
        return f"LocalContext(p={self.p}, r={self.r}, N={self.N})"

    def all_elements(self, level=None):
        """All elements with coefficients mod p^level (default: full precision N)."""
        j = self.N if level is None else level
        pj = self.p**j
        for coeffs in itertools.product(range(pj), repeat=self.r):
            yield self.el(coeffs)

    # -- Frobenius ----------------------------------------------------------

    def _sigma_columns(self):
        if self._sigma_cols is not None:
            return self._sigma_cols
        if self.r == 1:
            self._sigma_cols = [(1,)]
            return self._sigma_cols
        g = self.generator
        # Hensel lift of the root of f reducing to g^p
        x = g**self.p
        f = self.defining_poly
        fprime = tuple(i * f[i] for i in range(1, len(f)))
        for _ in range(self.N.bit_length() + 2):
            x = x - self._poly_eval(f, x) * self._poly_eval(fprime, x).inverse()
        assert self._poly_eval(f, x).coeffs == (0,) * self.r
        cols, power = [], self.one
        for _ in range(self.r):
            cols.append(power.coeffs)
            power = power * x
        self._sigma_cols = cols
        return cols

    def _poly_eval(self, coeffs, x: "GaloisRingElement"):
        acc = self.zero
        for c in reversed(coeffs):
            acc = acc * x + self.el(c)
        return acc

    def sigma_coeffs(self, coeffs):
        cols = self._sigma_columns()
        out = [0] * self.r
        for i, ci in enumerate(coeffs):
            if ci:
                col = cols[i]
                for j in range(self.r):
                    out[j] += ci * col[j]
        return tuple(c % self.pN for c in out)

    # -- exact sigma on the order O (only r <= 2 stays inside O) ------------

    def sigma_exact(self, ocoeffs):
        if self.r == 1 or all(c == 0 for c in ocoeffs[1:]):
            return tuple(ocoeffs)
        if self.r == 2:
            c1 = self.defining_poly[1]
            a, b = ocoeffs
            return (a - b * c1, -b)
        return None  # conjugate root does not lie in O for r >= 3


def get_context(p: int, r: int, N: int) -> LocalContext:
    """Cached context factory (contexts are immutable once built)."""
    key = (p, r, N)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = LocalContext(p, r, N)
    return _CTX_CACHE[key]


def context_for_level(p: int, r: int, n: int) -> LocalContext:
    """Working precision N = 2n + 4 suffices for every level-n branch predicate."""
    return get_context(p, r, 2 * n + 4)


# ---------------------------------------------------------------------------
# ring elements


class GaloisRingElement:
    """Element of GR(p^N, r): coefficient vector mod p^N w.r.t. 1, g, ..., g^(r-1)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: LocalContext, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(c % ctx.pN for c in coeffs)

    def __add__(self, other):
        other = self.ctx.el(other)
        return GaloisRingElement(self.ctx, _o_add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ctx.el(other)
        return GaloisRingElement(self.ctx, _o_sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self.ctx.el(other) - self

    def __neg__(self):
        return GaloisRingElement(self.ctx, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = self.ctx.el(other)
        prod = _o_mul(self.coeffs, other.coeffs, self.ctx.defining_poly)
        return GaloisRingElement(self.ctx, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        acc, base = self.ctx.one, self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.el(other)
        if not isinstance(other, GaloisRingElement):
            return NotImplemented
        return self.ctx.key() == other.ctx.key() and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.key(), self.coeffs))

    def __repr__(self):
        return f"GR{self.coeffs}"

    # -- valuation and units -------------------------------------------------

    def valuation_below(self, cap: int):
        """Minimal coefficient valuation if < cap, else None.

        Only digits below ``cap`` are consulted, so the answer is certified
        whenever cap <= certified digits of this element.
        """
        p = self.ctx.p
        pcap = p**cap
        best = None
        for c in self.coeffs:
            c %= pcap
            if c == 0:
                continue
            v = vp_int(c, p).value
            if best is None or v < best:
                best = v
        return best

    def is_unit(self):
        return self.valuation_below(1) is not None and self.valuation_below(1) == 0

    def inverse(self):
        """Newton-lifted inverse; the element must be a unit."""
        ctx = self.ctx
        if not self.is_unit():
            raise DomainError("not a unit")
        fq = get_context(ctx.p, ctx.r, 1)
        red = GaloisRingElement(fq, self.coeffs)
        v0 = red**(ctx.q - 2) if ctx.q > 2 else red
        v = ctx.el(v0.coeffs)
        for _ in range(ctx.N.bit_length() + 1):
            v = v * (2 - self * v)
        assert (self * v).coeffs == ctx.one.coeffs
        return v

    def frobenius(self):
        return GaloisRingElement(self.ctx, self.ctx.sigma_coeffs(self.coeffs))

    def shift(self, k: int):
        """Multiply by p^k (k may be negative; stored digits must allow it)."""
        p = self.ctx.p
        if k >= 0:
            return GaloisRingElement(self.ctx, tuple(c * p**k for c in self.coeffs))
        pk = p**(-k)
        if any(c % pk for c in self.coeffs):
            raise PrecisionExhausted("element not divisible by requested power of p")
        return GaloisRingElement(self.ctx, tuple(c // pk for c in self.coeffs))

    def coeffs_mod(self, j: int):
        pj = self.ctx.p**j
        return tuple(c % pj for c in self.coeffs)

    # -- canonical textual encoding ------------------------------------------

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coeffs) + f" (mod {self.ctx.p}^{self.ctx.N})"

    @classmethod
    def from_text(cls, ctx: LocalContext, text: str):
        body = text.split("(")[0].strip()
        return ctx.el(tuple(int(t) for t in body.split(",")))


def frobenius(x: GaloisRingElement) -> GaloisRingElement:
    """The unique automorphism lifting y -> y^p on the residue field."""
    return x.frobenius()


# ---------------------------------------------------------------------------
# scaled matrices


def _as_ocoeffs(entry, r):
    """Integer entry / coefficient sequence -> exact coefficient tuple over Z."""
    if isinstance(entry, int):
        return (entry,) + (0,) * (r - 1)
    t = tuple(int(c) for c in entry)
    if len(t) != r:
        raise DomainError("entry coefficient vector has wrong length")
    return t


def _exact_min_val(flat_entries, p):
    vals = [vp_int(c, p) for entry in flat_entries for c in entry]
    return min(vals)


class LocalMatrix:
    """g = p^e * M with M a primitive 2x2 matrix over GR(p^N, r).

    ``prec`` counts the certified digits of M.  ``exact`` (optional) holds
    untruncated integer coefficient vectors for the entries; ``exact_tr`` /
    ``exact_det`` hold exact scaled invariants (exponent, coefficient tuple)
    and survive conjugation, where the entries themselves stop being exact.
    """

    __slots__ = ("ctx", "e", "m", "prec", "exact", "exact_tr", "exact_det")

    def __init__(self, ctx, e, m, prec=None, exact=None, exact_tr=None, exact_det=None):
        self.ctx = ctx
        self.e = e
        self.m = tuple(m)  # (a, b, c, d) row-major
        self.prec = ctx.N if prec is None else prec
        if self.prec <= 0:
            raise PrecisionExhausted("no certified digits remain")
        self.exact = exact
        if exact is not None:
            f = ctx.defining_poly
            exact_tr = (e, _o_add(exact[0], exact[3]))
            ad = _o_mul(exact[0], exact[3], f)
            bc = _o_mul(exact[1], exact[2], f)
            exact_det = (2 * e, _o_sub(ad, bc))
        self.exact_tr = exact_tr
        self.exact_det = exact_det

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_integers(cls, ctx, rows, e=0):
        """Exact construction of p^e * [[a, b], [c, d]] from integer(-vector) entries."""
        flat = [_as_ocoeffs(x, ctx.r) for row in rows for x in row]
        v = _exact_min_val(flat, ctx.p)
        if v.is_infinite:
            raise DomainError("the zero matrix has no primitive representation")
        pv = ctx.p**v.value
        flat = tuple(tuple(c // pv for c in entry) for entry in flat)
        m = tuple(ctx.el(entry) for entry in flat)
        return cls(ctx, e + v.value, m, prec=ctx.N, exact=flat)

    @classmethod
    def identity(cls, ctx):
        return cls.from_integers(ctx, [[1, 0], [0, 1]])

    # -- internal: renormalize to a primitive representation -------------------

    def _build(self, e, entries, prec, exact=None, exact_tr=None, exact_det=None):
        ctx = self.ctx
        if exact is not None:
            v = _exact_min_val(exact, ctx.p)
            if v.is_infinite:
                raise DomainError("zero matrix")
            pv = ctx.p**v.value
            exact = tuple(tuple(c // pv for c in ent) for ent in exact)
            m = tuple(ctx.el(ent) for ent in exact)
            return LocalMatrix(ctx, e + v.value, m, prec=ctx.N, exact=exact)
        if prec <= 0:
            raise PrecisionExhausted("no certified digits remain")
        vals = [x.valuation_below(prec) for x in entries]
        vals = [v for v in vals if v is not None]
        if not vals:
            raise PrecisionExhausted("cannot certify the content of the matrix")
        v = min(vals)
        entries = tuple(x.shift(-v) for x in entries)
        return LocalMatrix(ctx, e + v, entries, prec=prec - v,
                           exact_tr=exact_tr, exact_det=exact_det)

    # -- ring structure ---------------------------------------------------------

    def __matmul__(self, other):
        a1, b1, c1, d1 = self.m
        a2, b2, c2, d2 = other.m
        prod = (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
                c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)
        prec = min(self.prec, other.prec)
        exact = None
        if self.exact is not None and other.exact is not None:
            f = self.ctx.defining_poly
            x, y = self.exact, other.exact
            exact = (
                _o_add(_o_mul(x[0], y[0], f), _o_mul(x[1], y[2], f)),
                _o_add(_o_mul(x[0], y[1], f), _o_mul(x[1], y[3], f)),
                _o_add(_o_mul(x[2], y[0], f), _o_mul(x[3], y[2], f)),
                _o_add(_o_mul(x[2], y[1], f), _o_mul(x[3], y[3], f)),
            )
        return self._build(self.e + other.e, prod, prec, exact=exact)

    def scale(self, k: int):
        """p^k * g."""
        tr = det = None
        if self.exact is None:
            if self.exact_tr is not None:
                tr = (self.exact_tr[0] + k, self.exact_tr[1])
            if self.exact_det is not None:
                det = (self.exact_det[0] + 2 * k, self.exact_det[1])
        return LocalMatrix(self.ctx, self.e + k, self.m, prec=self.prec,
                           exact=self.exact, exact_tr=tr, exact_det=det)

    def inverse(self):
        a, b, c, d = self.m
        det = a * d - b * c
        dv = det.valuation_below(self.prec)
        if dv is None:
            raise PrecisionExhausted("determinant valuation not certified")
        u = det.shift(-dv)
        uinv = u.inverse()
        adj = (d * uinv, -b * uinv, -c * uinv, a * uinv)
        return self._build(-self.e - dv, adj, self.prec - dv)

    def frobenius_matrix(self):
        ent = tuple(x.frobenius() for x in self.m)
        exact = None
        if self.exact is not None:
            imgs = [self.ctx.sigma_exact(t) for t in self.exact]
            if all(i is not None for i in imgs):
                exact = tuple(imgs)
        return LocalMatrix(self.ctx, self.e, ent, prec=self.prec, exact=exact)

    def conjugate_by(self, h):
        """h^-1 g h, carrying over the exact trace/determinant of g."""
        out = h.inverse() @ self @ h
        out.exact = None
        out.exact_tr = self.exact_tr
        out.exact_det = self.exact_det
        return out

    # -- invariants ---------------------------------------------------------------

    def det_gre(self):
        a, b, c, d = self.m
        return a * d - b * c

    def trace_gre(self):
        return self.m[0] + self.m[3]

    def det_valuation(self) -> int:
        if self.exact_det is not None:
            sh, coeffs = self.exact_det
            v = min(vp_int(c, self.ctx.p) for c in coeffs)
            if v.is_infinite:
                raise DomainError("matrix is not invertible")
            return sh + v.value
        v = self.det_gre().valuation_below(self.prec)
        if v is None:
            raise PrecisionExhausted("determinant valuation not certified")
        return 2 * self.e + v

    def trace_valuation(self) -> ExtendedNat:
        """v_p(tr g) as an ExtendedNat (INF when the trace is exactly zero)."""
        if self.exact_tr is not None:
            sh, coeffs = self.exact_tr
            v = min(vp_int(c, self.ctx.p) for c in coeffs)
            if v.is_infinite:
                return INF
            if sh + v.value < 0:
                raise DomainError("trace has negative valuation")
            return ExtendedNat(sh + v.value)
        v = self.trace_gre().valuation_below(self.prec)
        if v is None:
            raise PrecisionExhausted("trace valuation not certified")
        if self.e + v < 0:
            raise DomainError("trace has negative valuation")
        return ExtendedNat(self.e + v)

    def trace_val_ge(self, k: int) -> bool:
        """Certified predicate v_p(tr g) >= k."""
        if self.exact_tr is not None:
            sh, coeffs = self.exact_tr
            pk = self.ctx.p**max(k - sh, 0)
            return all(c % pk == 0 for c in coeffs)
        need = k - self.e
        if need <= 0:
            return True
        if need > self.prec:
            raise PrecisionExhausted("trace predicate deeper than certified digits")
        return self.trace_gre().valuation_below(need) is None

    # -- equality / encoding ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LocalMatrix):
            return NotImplemented
        if self.ctx.key()[:2] != other.ctx.key()[:2] or self.e != other.e:
            return False
        k = min(self.prec, other.prec)
        return all(x.coeffs_mod(k) == y.coeffs_mod(k) for x, y in zip(self.m, other.m))

    def __repr__(self):
        return self.to_text()

    def to_text(self) -> str:
        def ent(x):
            if self.ctx.r == 1:
                return str(x.coeffs[0])
            return "[" + ",".join(str(c) for c in x.coeffs) + "]"
        a, b, c, d = self.m
        return f"p^{self.e} * [[{ent(a)},{ent(b)}],[{ent(c)},{ent(d)}]]"

    @classmethod
    def from_text(cls, ctx, text: str):
        import json
        head, body = text.split("*", 1)
        e = int(head.strip().split("^")[1])
        rows = json.loads(body.strip())
        return cls.from_integers(ctx, rows, e=e)


# ---------------------------------------------------------------------------
# the named operations


def k_of(g: LocalMatrix) -> int:
    """Minimal k with p^k g integral; the primitive representation makes it -e."""
    g.det_valuation()  # certifies invertibility
    return -g.e


def _scaled_gre(x: GaloisRingElement, shift: int, prec: int):
    """(value, certified digits) of p^shift * x as an integral ring element."""
    ctx = x.ctx
    if shift >= 0:
        return x.shift(shift), min(ctx.N, prec + shift)
    if prec < -shift:
        raise PrecisionExhausted("shift consumes all certified digits")
    if x.valuation_below(-shift) is not None:
        raise DomainError("value is not integral at this scale")
    return x.shift(shift), prec + shift


def _one_minus_tr_plus_det(g: LocalMatrix):
    """(D, K): D = 1 - tr g + det g known modulo p^K."""
    tr, ktr = _scaled_gre(g.trace_gre(), g.e, g.prec)
    det, kdet = _scaled_gre(g.det_gre(), 2 * g.e, g.prec)
    K = min(ktr, kdet)
    return 1 - tr + det, K


def ell_min(g: LocalMatrix, cap: int):
    """min(ell(g), cap), certified; needs v_p(det g) >= 1 and v_p(tr g) = 0."""
    if g.det_valuation() < 1:
        raise DomainError("ell is defined only for v_p(det) >= 1")
    if g.trace_val_ge(1) or not g.trace_val_ge(0):
        raise DomainError("ell is defined only for v_p(tr) = 0")
    D, K = _one_minus_tr_plus_det(g)
    if K < cap:
        raise PrecisionExhausted(f"need {cap} certified digits, have {K}")
    v = D.valuation_below(cap)
    return cap if v is None else v


def _o_scale_exact(coeffs, shift, p):
    """p^shift * (exact order element); exactness of the division is checked."""
    if shift >= 0:
        return tuple(c * p**shift for c in coeffs)
    ps = p**(-shift)
    if any(c % ps for c in coeffs):
        raise DomainError("value is not integral at this scale")
    return tuple(c // ps for c in coeffs)


def ell_of(g: LocalMatrix) -> ExtendedNat:
    """v_p(1 - tr g + det g); INF needs exact input data to certify."""
    if g.det_valuation() < 1:
        raise DomainError("ell is defined only for v_p(det) >= 1")
    if g.trace_val_ge(1) or not g.trace_val_ge(0):
        raise DomainError("ell is defined only for v_p(tr) = 0")
    if g.exact_tr is not None and g.exact_det is not None:
        p, r = g.ctx.p, g.ctx.r
        (st, ct), (sd, cd) = g.exact_tr, g.exact_det
        one = (1,) + (0,) * (r - 1)
        D = _o_add(_o_sub(one, _o_scale_exact(ct, st, p)),
                   _o_scale_exact(cd, sd, p))
        v = min(vp_int(c, p) for c in D)
        return INF if v.is_infinite else v
    D, K = _one_minus_tr_plus_det(g)
    v = D.valuation_below(K)
    if v is None:
        raise PrecisionExhausted("vanishes to working precision, not provably zero")
    return ExtendedNat(v)


def norm_map(delta):
    """N(delta) = delta * delta^sigma * ... * delta^(sigma^(r-1))."""
    if isinstance(delta, LocalMatrix):
        acc, cur = delta, delta
        for _ in range(delta.ctx.r - 1):
            cur = cur.frobenius_matrix()
            acc = acc @ cur
        return acc
    if isinstance(delta, GaloisRingElement):
        acc, cur = delta, delta
        for _ in range(delta.ctx.r - 1):
            cur = cur.frobenius()
            acc = acc * cur
        return acc
    # finite-level 2x2 tuple of GaloisRingElements

    def mat_mul(x, y):
        return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])

    a, b, c, d = delta
    acc = cur = (a, b, c, d)
    for _ in range(a.ctx.r - 1):
        cur = tuple(x.frobenius() for x in cur)
        acc = mat_mul(acc, cur)
    return acc


def sigma_conjugate(h: LocalMatrix, delta: LocalMatrix) -> LocalMatrix:
    """h^-1 delta h^sigma."""
    return h.inverse() @ delta @ h.frobenius_matrix()


def unit_eigenvalue(gamma: LocalMatrix, n: int) -> GaloisRingElement:
    """Hensel-lifted unit root of x^2 - tr(gamma) x + det(gamma) mod p^n."""
    if gamma.trace_val_ge(1):
        raise DomainError("no unit eigenvalue: v_p(tr) >= 1")
    if gamma.det_valuation() < 1:
        raise DomainError("unit eigenvalue needs v_p(det) >= 1")
    tr, ktr = _scaled_gre(gamma.trace_gre(), gamma.e, gamma.prec)
    det, kdet = _scaled_gre(gamma.det_gre(), 2 * gamma.e, gamma.prec)
    if min(ktr, kdet) < n:
        raise PrecisionExhausted("not enough digits for the requested level")
    ctx = gamma.ctx
    x = tr
    for _ in range(n.bit_length() + 2):
        x = x - (x * x - tr * x + det) * (2 * x - tr).inverse()
    out = ctx.el(x.coeffs_mod(n))
    assert (out * out - tr * out + det).coeffs_mod(n) == (0,) * ctx.r
    return out
