"""Decision procedures for equivalence of curves and isomorphism of punctured lines.

Every positive answer carries a witness that has been replayed by exact
substitution; every negative answer over a finite field carries the number
of candidates that were exhausted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Sequence

import gmpy2

from .errors import (
    DegenerateTriple,
    DegreeMismatch,
    FieldMismatch,
    NotHomogeneous,
    NotSquarefree,
    PreconditionViolated,
    TooFewPoints,
    YDividesP,
)
from .fields import QQ, FieldDescriptor, Scalar
from .parallel import first_hit
from .poly import (
    MultiPoly,
    NotSquarefreeDecidable,
    is_squarefree,
    ul_eval,
    ul_gcd,
    ul_mul,
    ul_scale,
    ul_taylor_shift,
)

UNDECIDED = "undecided"

# PGL2(F_q) has q^3 - q elements; past this the enumeration stops being a desk job
PGL2_MAX_Q = 31


@dataclass
class Decision:
    """Outcome of an equivalence test.

    ``equivalent`` is True, False or ``UNDECIDED``; ``witness`` is set exactly
    when it is True.
    """

    equivalent: Any
    witness: Any = None
    candidates_tested: int = 0
    method: str = ""
    reason: str | None = None

    @property
    def decided(self) -> bool:
        return self.equivalent != UNDECIDED

    def to_json(self) -> dict:
        w = self.witness
        if w is not None:
            if hasattr(w, "to_json"):
                w = w.to_json()
            elif isinstance(w, dict):
                w = {k: str(v) for k, v in w.items()}
        out = {"equivalent": self.equivalent, "witness": w, "candidates_tested": self.candidates_tested}
        if self.method:
            out["method"] = self.method
        if self.reason:
            out["reason"] = self.reason
        return out


# projective line ------------------------------------------------------------------
class ProjPoint:
    """[u : v] on the projective line; t = u/v, infinity is [1 : 0]."""

    __slots__ = ("field", "u", "v")

    def __init__(self, field: FieldDescriptor, u, v=1):
        F = field
        u, v = F.coerce(u), F.coerce(v)
        if not u and not v:
            raise ValueError("[0 : 0] is not a point")
        if v:
            u, v = F.div(u, v), F.one
        else:
            u = F.one
        self.field = F
        self.u = u
        self.v = v

    @classmethod
    def infinity(cls, field):
        return cls(field, 1, 0)

    @classmethod
    def parse(cls, field, text):
        s = str(text).strip().lower()
        if s in ("inf", "infinity", "oo"):
            return cls.infinity(field)
        return cls(field, s)

    @property
    def is_infinity(self) -> bool:
        return not self.v

    def key(self):
        return (0, 0) if self.is_infinity else (1, self.u)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash((self.field, self.key()))

    def __repr__(self):
        return f"ProjPoint({self})"

    def __str__(self):
        return "inf" if self.is_infinity else str(self.u)


def _sort_key(p: ProjPoint):
    return (0, 0) if p.is_infinity else (1, p.u)


class MobiusTransform:
    """sigma[u : v] = [a u + b v : c u + d v]; equal when the matrices are proportional."""

    def __init__(self, field: FieldDescriptor, a, b, c, d):
        F = field
        a, b, c, d = (F.coerce(x) for x in (a, b, c, d))
        if not F.sub(F.mul(a, d), F.mul(b, c)):
            raise PreconditionViolated("singular matrix")
        # canonical representative: first nonzero entry equal to 1
        lead = next(x for x in (a, b, c, d) if x)
        inv = F.inv(lead)
        self.field = F
        self.a, self.b, self.c, self.d = (F.mul(x, inv) for x in (a, b, c, d))

    @classmethod
    def identity(cls, field):
        return cls(field, 1, 0, 0, 1)

    @property
    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def __call__(self, p: ProjPoint) -> ProjPoint:
        F = self.field
        u = F.add(F.mul(self.a, p.u), F.mul(self.b, p.v))
        v = F.add(F.mul(self.c, p.u), F.mul(self.d, p.v))
        return ProjPoint(F, u, v)

    def compose(self, other: "MobiusTransform") -> "MobiusTransform":
        """self o other."""
        F = self.field
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        ad = F.add
        m = F.mul
        return MobiusTransform(F, ad(m(a, e), m(b, g)), ad(m(a, f), m(b, h)),
                               ad(m(c, e), m(d, g)), ad(m(c, f), m(d, h)))

    def inverse(self) -> "MobiusTransform":
        F = self.field
        return MobiusTransform(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def act_on_form(self, coeffs: Sequence, n: int) -> list:
        """Coefficients of B(a u + b v, c u + d v) for B = sum coeffs[i] u^i v^(n-i)."""
        return _form_pullback(coeffs, n, self.matrix, self.field)

    def __eq__(self, other):
        return isinstance(other, MobiusTransform) and self.field == other.field and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.field, self.matrix))

    def __repr__(self):
        return f"MobiusTransform({self.field}, {self.a}, {self.b}, {self.c}, {self.d})"

    def to_text(self) -> str:
        return f"t -> ({self.a}*t + {self.b})/({self.c}*t + {self.d})"

    def to_json(self) -> dict:
        return {"field": str(self.field), "matrix": [[str(x) for x in row] for row in self.matrix],
                "map": self.to_text()}


def _form_pullback(coeffs, n, matrix, F) -> list:
    (a, b), (c, d) = matrix
    # work with t = u/v: (a t + b)^i (c t + d)^(n - i)
    lin1 = [b, a]
    lin2 = [d, c]
    p1 = [[F.one]]
    p2 = [[F.one]]
    for _ in range(n):
        p1.append(ul_mul(p1[-1], lin1, F))
        p2.append(ul_mul(p2[-1], lin2, F))
    out = [F.zero] * (n + 1)
    for i, h in enumerate(coeffs):
        if not h:
            continue
        term = ul_mul(p1[i], p2[n - i], F)
        for j, x in enumerate(term):
            out[j] = F.add(out[j], F.mul(h, x))
    return out


def _proportional(a: list, b: list, F) -> bool:
    """a = lam * b for some nonzero lam (both lists padded to the same length)."""
    lam = None
    for x, y in zip(a, b):
        if bool(x) != bool(y):
            return False
        if x:
            r = F.div(x, y)
            if lam is None:
                lam = r
            elif r != lam:
                return False
    return lam is not None


def _frame(P1: ProjPoint, P2: ProjPoint, P3: ProjPoint):
    """Matrix sending infinity, 0, 1 to P1, P2, P3."""
    F = P1.field
    # columns alpha*P1 and beta*P2 with alpha*P1 + beta*P2 = P3
    det = F.sub(F.mul(P1.u, P2.v), F.mul(P2.u, P1.v))
    if not det:
        raise DegenerateTriple("points coincide")
    alpha = F.div(F.sub(F.mul(P3.u, P2.v), F.mul(P2.u, P3.v)), det)
    beta = F.div(F.sub(F.mul(P1.u, P3.v), F.mul(P3.u, P1.v)), det)
    if not alpha or not beta:
        raise DegenerateTriple("points coincide")
    return ((F.mul(alpha, P1.u), F.mul(beta, P2.u)), (F.mul(alpha, P1.v), F.mul(beta, P2.v)))


def _matrix_inverse(m, F):
    (a, b), (c, d) = m
    det = F.sub(F.mul(a, d), F.mul(b, c))
    inv = F.inv(det)
    return ((F.mul(d, inv), F.mul(F.neg(b), inv)), (F.mul(F.neg(c), inv), F.mul(a, inv)))


def _matmul(m, n, F):
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h))),
            (F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h))))


def mobius_from_triples(src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> MobiusTransform:
    """The unique transform with src[i] -> dst[i], through the frame (inf, 0, 1)."""
    if len(src) != 3 or len(dst) != 3:
        raise DegenerateTriple("need exactly three points on each side")
    for tri in (src, dst):
        if len(set(tri)) != 3:
            raise DegenerateTriple("the points of a triple must be distinct")
    F = src[0].field
    if any(p.field != F for p in (*src, *dst)):
        raise FieldMismatch("points from different fields")
    ms = _frame(*src)
    md = _frame(*dst)
    (a, b), (c, d) = _matmul(md, _matrix_inverse(ms, F), F)
    sigma = MobiusTransform(F, a, b, c, d)
    if [sigma(p) for p in src] != list(dst):
        raise AssertionError("transform does not map the triple")
    return sigma


def pgl2_orbit_test(S, T) -> Decision:
    """Search for sigma with sigma(S) = T as sets.

    A transform is fixed by the images of three points, so a fixed ordered
    triple of S is matched against every injective triple of T.
    """
    S = sorted(set(S), key=_sort_key)
    T = sorted(set(T), key=_sort_key)
    if len(S) < 3 or len(T) < 3:
        raise TooFewPoints("need at least three points")
    if len(S) != len(T):
        return Decision(False, None, 0, "pgl2-orbit", "sets of different sizes")
    Tset = set(T)
    src = S[:3]
    tested = 0
    for tri in itertools.permutations(T, 3):
        tested += 1
        sigma = mobius_from_triples(src, tri)
        if {sigma(p) for p in S} == Tset:
            return Decision(True, sigma, tested, "pgl2-orbit")
    return Decision(False, None, tested, "pgl2-orbit")


# punctured lines -----------------------------------------------------------------
def _univariate_list(P: MultiPoly) -> list:
    var = P.univariate_var()
    if var is None:
        return [P.constant_value()] if P.terms else []
    return P.to_coeff_list(var)


def _boundary_form(P: MultiPoly) -> list:
    """v * P_h(u, v) as coefficients of u^i v^(n-i), n = deg P + 1."""
    a = _univariate_list(P)
    # v carries the extra boundary point at infinity, so u^n never appears
    return list(a) + [P.field.zero]


def _check_squarefree(P: MultiPoly):
    if not P.terms:
        raise PreconditionViolated("the zero polynomial")
    r = is_squarefree(P)
    if r is NotSquarefreeDecidable or not r:
        raise NotSquarefree(f"{P} is not squarefree")


def _pgl2_elements(q: int):
    """Canonical representatives (first nonzero entry 1) in lexicographic order."""
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    first = next((x for x in (a, b, c, d) if x), 0)
                    if first != 1:
                        continue
                    if (a * d - b * c) % q:
                        yield (a, b, c, d)


def _pgl2_scan(args):
    """Worker: first index in [lo, hi) whose transform carries one form onto the other."""
    q, lo, hi, fp, fq = args
    from .fields import GF

    F = GF(q)
    n = len(fp) - 1
    for idx, (a, b, c, d) in enumerate(itertools.islice(_pgl2_elements(q), lo, hi), lo):
        if _proportional(_form_pullback(fp, n, ((a, b), (c, d)), F), fq, F):
            return idx, (a, b, c, d)
    return None


def pgl2_size(q: int) -> int:
    return q**3 - q


def _rational_roots(a: list) -> list:
    """Distinct rational roots of a polynomial over Q, by the rational root test."""
    if not a:
        raise ValueError("zero polynomial")
    roots = []
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    if k:
        roots.append(gmpy2.mpq(0))
    a = a[k:]
    if len(a) <= 1:
        return roots
    den = gmpy2.mpz(1)
    for c in a:
        den = gmpy2.lcm(den, c.denominator)
    ints = [int(c * den) for c in a]
    lead, const = abs(ints[-1]), abs(ints[0])
    for p in _divisors(const):
        for q in _divisors(lead):
            if gmpy2.gcd(p, q) != 1:
                continue
            for s in (1, -1):
                r = gmpy2.mpq(s * p, q)
                if not ul_eval(a, r, QQ):
                    roots.append(r)
    return sorted(set(roots))


def _divisors(n: int) -> list[int]:
    n = abs(int(n))
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _complete(points: list, F) -> list:
    """Pad a point set of size < 3 with canonical extra points (0, 1, 2, ... then inf)."""
    pts = list(points)
    cands = [ProjPoint(F, i) for i in range(3 + len(pts))] + [ProjPoint.infinity(F)]
    for c in cands:
        if len(pts) >= 3:
            break
        if c not in pts:
            pts.append(c)
    return pts


def spec_iso_test(P: MultiPoly, Q: MultiPoly, F: FieldDescriptor | None = None, jobs: int = 1) -> Decision:
    """Is k[t, 1/P] isomorphic to k[t, 1/Q]?

    Such an isomorphism extends to sigma in PGL2(k) carrying the boundary
    {v P_h = 0} of one punctured line onto the other, i.e. with
    (v P_h) o sigma proportional to v Q_h.  Over F_q all of PGL2(F_q) is
    scanned; over Q both boundaries must split into rational points, and
    otherwise the answer is ``UNDECIDED`` unless a rational-point count
    already rules an isomorphism out.
    """
    F = F or P.field
    if P.field != F or Q.field != F:
        raise FieldMismatch(f"{P.field}, {Q.field} vs {F}")
    _check_squarefree(P)
    _check_squarefree(Q)
    fp = _boundary_form(P)
    fq = _boundary_form(Q)
    if len(fp) != len(fq):
        return Decision(False, None, 0, "degree", "the punctured lines miss different numbers of points")
    n = len(fp) - 1
    if _proportional(fp, fq, F):
        return Decision(True, MobiusTransform.identity(F), 1, "identity")
    if F.is_finite:
        q = F.modulus
        if q > PGL2_MAX_Q:
            from .errors import FieldTooLarge

            raise FieldTooLarge(f"PGL2(F{q}) enumeration is limited to q <= {PGL2_MAX_Q}")
        total = pgl2_size(q)
        hit = first_hit(_pgl2_scan, [(q, lo, hi, fp, fq) for lo, hi in _chunks(total, jobs)], jobs)
        if hit is None:
            return Decision(False, None, total, "pgl2-enumeration")
        idx, (a, b, c, d) = hit
        sigma = MobiusTransform(F, a, b, c, d)
        _replay_form(sigma, fp, fq, n)
        return Decision(True, sigma, idx + 1, "pgl2-enumeration")
    # rationals: rational boundary points
    rp = [ProjPoint(F, r) for r in _rational_roots(fp[:-1])] + [ProjPoint.infinity(F)]
    rq = [ProjPoint(F, r) for r in _rational_roots(fq[:-1])] + [ProjPoint.infinity(F)]
    split_p = len(rp) == n
    split_q = len(rq) == n
    if len(rp) != len(rq):
        return Decision(False, None, 0, "rational-points",
                        "the boundaries have different numbers of rational points")
    if not (split_p and split_q):
        return Decision(UNDECIDED, None, 0, "rational-points", "a boundary does not split over Q")
    if n < 3:
        # PGL2 is transitive on ordered pairs of distinct points
        sigma = mobius_from_triples(_complete(rq, F), _complete(rp, F))
        _replay_form(sigma, fp, fq, n)
        return Decision(True, sigma, 1, "pgl2-orbit")
    d = pgl2_orbit_test(rq, rp)
    if d.witness is not None:
        _replay_form(d.witness, fp, fq, n)
    return d


def _replay_form(sigma: MobiusTransform, fp, fq, n):
    if not _proportional(sigma.act_on_form(fp, n), fq, sigma.field):
        raise AssertionError(f"witness {sigma!r} failed the proportionality replay")


def _chunks(total: int, jobs: int):
    parts = max(1, min(jobs, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


# section curves a(y) x + b(y) = 0 ------------------------------------------------
def _compose_affine(a: list, alpha, beta, F) -> list:
    """Coefficients of a(alpha*y + beta)."""
    shifted = ul_taylor_shift(list(a), beta, F) if a else []
    out = []
    p = F.one
    for c in shifted:
        out.append(F.mul(c, p))
        p = F.mul(p, alpha)
    while out and not out[-1]:
        out.pop()
    return out


def _section_witness_ok(a1, b1, a2, b2, alpha, beta, lam, mu, F) -> bool:
    return (ul_scale(_compose_affine(a1, alpha, beta, F), lam, F) == a2
            and ul_scale(_compose_affine(b1, alpha, beta, F), mu, F) == b2)


def _scale_for(target: list, source: list, F):
    """lam with lam*source = target read off leading coefficients (1 when both vanish)."""
    if not source:
        return F.one if not target else None
    if not target:
        return None
    return F.div(target[-1], source[-1])


def _nth_roots_Q(r, m: int) -> list:
    """Rational x with x**m = r."""
    r = gmpy2.mpq(r)
    if not r:
        return [gmpy2.mpq(0)]
    if r < 0 and m % 2 == 0:
        return []
    num, den = abs(r.numerator), r.denominator
    rn, en = gmpy2.iroot(num, m)
    rd, ed = gmpy2.iroot(den, m)
    if not (en and ed):
        return []
    x = gmpy2.mpq(rn, rd)
    if r < 0:
        return [-x]
    return [x, -x] if m % 2 == 0 else [x]


def _section_lists(a1, b1, a2, b2):
    polys = [a1, b1, a2, b2]
    F = a1.field
    for p in polys:
        if p.field != F:
            raise FieldMismatch("curves over different fields")
    lists = [_univariate_list(p) for p in polys]
    for a, b in ((lists[0], lists[1]), (lists[2], lists[3])):
        if not a:
            raise PreconditionViolated("a(y) must be nonzero")
        if len(b) >= len(a):
            raise PreconditionViolated("deg b must be smaller than deg a")
        if b and ul_gcd(a, b, F) != [F.one]:
            raise PreconditionViolated("a and b must be coprime")
        if not b and len(a) > 1:
            raise PreconditionViolated("a and b must be coprime")
    return F, lists


def equiv_section_curves(a1, b1, a2, b2, jobs: int = 1) -> Decision:
    """Search for (alpha, beta, lam, mu) with a2(y) = lam a1(alpha y + beta), b2(y) = mu b1(alpha y + beta).

    Such a witness is what makes a1 x + b1 = 0 and a2 x + b2 = 0 equivalent
    under an automorphism of the plane.  Finite fields are exhausted over
    (alpha, beta); over Q the coefficients are matched after centring both
    a's at the mean of their roots.
    """
    F, (A1, B1, A2, B2) = _section_lists(a1, b1, a2, b2)
    if len(A1) != len(A2) or len(B1) != len(B2):
        return Decision(False, None, 0, "degrees", "degrees of a or b differ")
    D = len(A1) - 1

    def attempt(alpha, beta):
        ca = _compose_affine(A1, alpha, beta, F)
        cb = _compose_affine(B1, alpha, beta, F)
        lam = _scale_for(A2, ca, F)
        mu = _scale_for(B2, cb, F)
        if lam is None or mu is None:
            return None
        if ul_scale(ca, lam, F) == A2 and ul_scale(cb, mu, F) == B2:
            return lam, mu
        return None

    def witness(alpha, beta, lam, mu):
        return {"alpha": Scalar(F, alpha), "beta": Scalar(F, beta), "lambda": Scalar(F, lam), "mu": Scalar(F, mu)}

    if F.is_finite:
        q = F.modulus
        tested = 0
        for alpha in range(1, q):
            for beta in range(q):
                tested += 1
                r = attempt(alpha, beta)
                if r is not None:
                    if not _section_witness_ok(A1, B1, A2, B2, alpha, beta, *r, F):
                        raise AssertionError("section witness failed its replay")
                    return Decision(True, witness(alpha, beta, *r), tested, "exhaustion")
        return Decision(False, None, tested, "exhaustion")
    # centre: a_i(y + s_i) has no y^(D-1) term
    def centre(A):
        if D == 0:
            return F.zero
        return F.neg(F.div(A[D - 1], F.mul(F.coerce(D), A[D])))

    s1, s2 = centre(A1), centre(A2)
    C1 = _compose_affine(A1, F.one, s1, F)
    C2 = _compose_affine(A2, F.one, s2, F)
    E1 = _compose_affine(B1, F.one, s1, F)
    E2 = _compose_affine(B2, F.one, s2, F)
    # a2 ~ a1(alpha y + beta) forces beta = s1 - alpha s2, and then
    # C2_k / C2_D = alpha^(k-D) C1_k / C1_D, E2_k = mu alpha^k E1_k
    constraints = []
    for k in range(D):
        x = F.div(C1[k], C1[D])
        y = F.div(C2[k], C2[D])
        if bool(x) != bool(y):
            return Decision(False, None, 0, "coefficients", f"coefficient of y^{k} vanishes on one side only")
        if x:
            constraints.append((D - k, F.div(x, y)))
    nz = [k for k in range(len(E1)) if E1[k]]
    for k in range(len(E1)):
        if bool(E1[k]) != bool(E2[k] if k < len(E2) else 0):
            return Decision(False, None, 0, "coefficients", f"coefficient of y^{k} in b vanishes on one side only")
    for k, l in zip(nz, nz[1:]):
        r = F.div(F.div(E2[l], E2[k]), F.div(E1[l], E1[k]))
        constraints.append((l - k, r))
    if constraints:
        m, r = min(constraints, key=lambda c: c[0])
        alphas = [x for x in _nth_roots_Q(r, m) if x]
    else:
        alphas = [F.one]
    tested = 0
    for alpha in alphas:
        tested += 1
        beta = F.sub(s1, F.mul(alpha, s2))
        res = attempt(alpha, beta)
        if res is not None:
            if not _section_witness_ok(A1, B1, A2, B2, alpha, beta, *res, F):
                raise AssertionError("section witness failed its replay")
            return Decision(True, witness(alpha, beta, *res), tested, "coefficients")
    return Decision(False, None, tested, "coefficients")


# Costa curves ---------------------------------------------------------------------
def _binary_coeffs(P: MultiPoly) -> tuple[list, int]:
    """p_i = coefficient of x^i y^(d-i)."""
    if not P.is_homogeneous():
        raise NotHomogeneous("expected a binary form")
    extra = [v for v in P.used_vars() if v not in ("x", "y")]
    if extra:
        raise PreconditionViolated(f"binary forms live in x, y (found {extra})")
    F = P.field
    P = P.embed(("x", "y")) if P.vars != ("x", "y") else P
    d = P.total_degree()
    out = [F.zero] * (d + 1)
    for exps, c in P.items():
        out[exps[0]] = c.value if isinstance(c, Scalar) else c
    return out, d


def costa_equiv_test(P: MultiPoly, Pt: MultiPoly) -> Decision:
    """(rho, mu) with Pt(x, y) = rho P(rho^2 x, y) + mu y^d, or none.

    Comparing x^i y^(d-i) coefficients gives pt_i = rho^(2i+1) p_i for i >= 1
    and pt_0 = rho p_0 + mu.
    """
    if P.field != Pt.field:
        raise FieldMismatch("forms over different fields")
    F = P.field
    p, d = _binary_coeffs(P)
    pt, dt = _binary_coeffs(Pt)
    if d != dt:
        raise DegreeMismatch(f"degrees {d} and {dt}")
    if not p[d] or not pt[d]:
        raise YDividesP("y must not divide the forms")
    for i in range(1, d + 1):
        if bool(p[i]) != bool(pt[i]):
            return Decision(False, None, 0, "coefficients", f"x^{i} coefficient vanishes on one side only")
    if F.is_finite:
        cands = list(range(1, F.modulus))
    else:
        cands = _nth_roots_Q(F.div(pt[d], p[d]), 2 * d + 1)
    tested = 0
    for rho in cands:
        tested += 1
        if all(F.mul(F.pow(rho, 2 * i + 1), p[i]) == pt[i] for i in range(1, d + 1)):
            mu = F.sub(pt[0], F.mul(rho, p[0]))
            if _costa_replay(P, Pt, rho, mu):
                return Decision(True, {"rho": Scalar(F, rho), "mu": Scalar(F, mu)}, tested, "coefficients")
            raise AssertionError("Costa witness failed its replay")
    return Decision(False, None, tested, "coefficients")


def _costa_replay(P, Pt, rho, mu) -> bool:
    from .ratmap import substitute_poly

    F = P.field
    vars = ("x", "y")
    x = MultiPoly.var(F, vars, "x")
    y = MultiPoly.var(F, vars, "y")
    Pe = P.embed(vars) if P.vars != vars else P
    lhs = substitute_poly(Pe, {"x": x.scale(F.mul(rho, rho)), "y": y}).scale(rho)
    lhs = lhs + (y ** Pe.total_degree()).scale(mu)
    return lhs == Pt
