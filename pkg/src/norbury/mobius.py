"""2x2 complex matrix algebra, Moebius actions, and complex geodesic length.

Every group element acts on the Riemann sphere as the honest Moebius map
z -> (az + b)/(cz + d).  Lifts to SL^pm(2,C) carry a declared determinant
sign: images of 1-sided curve classes have det -1, images of 2-sided classes
det +1.  Entries are rescaled on construction so det equals the declared
sign up to rounding.

Complex length uses half-trace conventions,

    det +1:  2 cosh(l/2) = s * tr,
    det -1:  2 sinh(l/2) = s * tr,

with the lift sign s in {+1,-1} fixed per conjugacy class so l is real and
positive at a Fuchsian basepoint, and the branch continued sample by sample
along a deformation path (nearest-branch continuation).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchJump, IdentityMatrix

INF = complex(float("inf"), 0.0)

PARABOLIC_TRACE_TOL = 1e-10
IDENTITY_TOL = 1e-12
LENGTH_JUMP_TOL = 0.5 * math.pi  # max |delta l| between consecutive path samples


def is_inf(z) -> bool:
    if isinstance(z, complex):
        return not (math.isfinite(z.real) and math.isfinite(z.imag))
    return z == INF


def mat(a, b, c, d) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=complex)


MAT_ID = mat(1, 0, 0, 1)


def normalize_det(m: np.ndarray, det_sign: int) -> np.ndarray:
    """Rescale so det(m) == det_sign exactly up to rounding."""
    d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if d == 0:
        raise ValueError("singular matrix")
    return m / cmath.sqrt(d / det_sign)


@dataclass(frozen=True)
class MatrixRep:
    """An SL^pm(2,C) lift: 2x2 complex matrix with a declared determinant sign."""

    mat: np.ndarray
    det_sign: int = 1

    @classmethod
    def of(cls, entries, det_sign: int = 1) -> "MatrixRep":
        if det_sign not in (+1, -1):
            raise ValueError("det_sign must be +1 or -1")
        m = normalize_det(np.asarray(entries, dtype=complex).reshape(2, 2), det_sign)
        m.flags.writeable = False
        return cls(m, det_sign)

    @property
    def a(self) -> complex:
        return complex(self.mat[0, 0])

    @property
    def b(self) -> complex:
        return complex(self.mat[0, 1])

    @property
    def c(self) -> complex:
        return complex(self.mat[1, 0])

    @property
    def d(self) -> complex:
        return complex(self.mat[1, 1])

    def trace(self) -> complex:
        return self.a + self.d

    def inv(self) -> "MatrixRep":
        # adjugate; det is already +-1
        m = mat(self.d, -self.b, -self.c, self.a)
        if self.det_sign == -1:
            m = -m
        m.flags.writeable = False
        return MatrixRep(m, self.det_sign)

    def canonical_sign(self) -> "MatrixRep":
        """Flip the projective sign so the first entry of largest modulus
        has argument in (-pi/2, pi/2]."""
        flat = self.mat.reshape(-1)
        k = int(np.argmax(np.abs(flat)))
        z = flat[k]
        if z.real < 0 or (z.real == 0 and z.imag < 0):
            m = -self.mat
            m.flags.writeable = False
            return MatrixRep(m, self.det_sign)
        return self

    def __repr__(self) -> str:
        return f"MatrixRep([[{self.a:.6g}, {self.b:.6g}], [{self.c:.6g}, {self.d:.6g}]], det_sign={self.det_sign:+d})"


def compose(A: MatrixRep, B: MatrixRep) -> MatrixRep:
    """Product matrix; det signs multiply; renormalized to unit-modulus det."""
    return MatrixRep.of(A.mat @ B.mat, A.det_sign * B.det_sign)


def apply(A, z):
    """Moebius action of A (MatrixRep or raw 2x2 array) on a sphere point."""
    m = A.mat if isinstance(A, MatrixRep) else A
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if z == INF or (isinstance(z, complex) and not (math.isfinite(z.real) and math.isfinite(z.imag))):
        return a / c if c != 0 else INF
    den = c * z + d
    if den == 0:
        return INF
    return (a * z + b) / den


def is_projectively_trivial(m: np.ndarray, tol: float = IDENTITY_TOL) -> bool:
    s = m[0, 0]
    if abs(s) < tol:
        return False
    return bool(np.max(np.abs(m - s * MAT_ID)) < tol * max(1.0, abs(s)))


def fixed_points(A) -> tuple:
    """Fixed points on the Riemann sphere, attracting first when the map is
    loxodromic (multiplier moduli distinct).  Parabolic maps return a single
    point.  Raises IdentityMatrix for projectively trivial input."""
    m = A.mat if isinstance(A, MatrixRep) else A
    if is_projectively_trivial(m):
        raise IdentityMatrix("fixed points of the identity are everything")
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if abs(c) < IDENTITY_TOL:
        if abs(a - d) < IDENTITY_TOL:
            return (INF,)
        other = b / (d - a)
        # multiplier at infinity is a/d
        if abs(a) > abs(d):
            return (INF, other)
        if abs(d) > abs(a):
            return (other, INF)
        return (INF, other)
    disc = (a - d) ** 2 + 4 * b * c
    if abs(disc) < IDENTITY_TOL ** 2:
        return (((a - d) / (2 * c)),)
    r = cmath.sqrt(disc)
    z1 = (a - d + r) / (2 * c)
    z2 = (a - d - r) / (2 * c)
    # eigenvalue at fixed point z is cz + d; attracting iff |cz+d| larger
    l1, l2 = abs(c * z1 + d), abs(c * z2 + d)
    if l1 >= l2:
        return (z1, z2)
    return (z2, z1)


def attracting_fixed_point(A) -> complex:
    return fixed_points(A)[0]


def classify(A: MatrixRep, tol: float = PARABOLIC_TRACE_TOL) -> str:
    """One of 'identity', 'parabolic', 'elliptic', 'hyperbolic', 'glide',
    'loxodromic'."""
    if is_projectively_trivial(A.mat):
        return "identity"
    tr = A.trace()
    if A.det_sign == +1:
        if abs(tr - 2) < tol or abs(tr + 2) < tol:
            return "parabolic"
        if abs(tr.imag) < tol:
            if abs(tr.real) < 2:
                return "elliptic"
            return "hyperbolic"
        return "loxodromic"
    # det -1: eigenvalues q, -1/q
    if abs(tr) < tol:
        return "elliptic"  # rotation by pi composed with reflection lift
    if abs(tr.imag) < tol:
        return "glide"
    return "loxodromic"


def multiplier(A) -> complex:
    """Eigenvalue ratio lam_plus/lam_minus with |lam_plus| >= |lam_minus|."""
    m = A.mat if isinstance(A, MatrixRep) else A
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    r = cmath.sqrt(tr * tr - 4 * det)
    l1 = (tr + r) / 2
    l2 = (tr - r) / 2
    if abs(l1) < abs(l2):
        l1, l2 = l2, l1
    return l1 / l2


@dataclass(frozen=True)
class ComplexLength:
    """Complex geodesic length: real part in hyperbolic length units, imaginary
    part in radians; branch_index counts accumulated 2*pi*i windings relative
    to the principal branch at the end of the deformation path."""

    value: complex
    branch_index: int = 0

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag


def fuchsian_lift_sign(tr: complex, det_sign: int) -> int:
    """Lift sign making the length real positive at a Fuchsian basepoint."""
    return +1 if tr.real >= 0 else -1


def length_from_trace(tr: complex, det_sign: int, lift_sign: int = +1) -> complex:
    """Principal-branch complex length from an SL^pm trace."""
    u = lift_sign * tr / 2
    if det_sign == +1:
        if abs(u - 1) < PARABOLIC_TRACE_TOL or abs(u + 1) < PARABOLIC_TRACE_TOL:
            return 0j
        return 2 * cmath.acosh(u)
    return 2 * cmath.asinh(u)


def _nearest_half_length(w_prev: complex, u: complex, det_sign: int) -> complex:
    """Solve cosh w = u (det +1) or sinh w = u (det -1) nearest to w_prev."""
    two_pi = 2 * math.pi
    if det_sign == +1:
        p = cmath.acosh(u)
        cands = []
        for base in (p, -p):
            k = round((w_prev.imag - base.imag) / two_pi)
            cands.append(base + 2j * math.pi * k)
    else:
        p = cmath.asinh(u)
        cands = []
        for base in (p, complex(-p.real, math.pi - p.imag)):
            k = round((w_prev.imag - base.imag) / two_pi)
            cands.append(base + 2j * math.pi * k)
    return min(cands, key=lambda w: abs(w - w_prev))


def complex_length(A: MatrixRep, path=None) -> ComplexLength:
    """Complex length of A, branch-tracked along a deformation path.

    `path` is the sequence of lift traces of the same group word sampled along
    a deformation starting at a Fuchsian basepoint (first entry) and ending at
    the representation whose matrix is A (last entry).  Without a path the
    matrix is assumed Fuchsian and the principal real branch is returned.
    Parabolic input has total complex length 0.
    """
    traces = [A.trace()] if path is None else [complex(t) for t in path]
    return continue_length(traces, A.det_sign)


def continue_length(traces, det_sign: int) -> ComplexLength:
    """Nearest-branch continuation of the length along a sampled trace path.

    The first sample must be a Fuchsian (real-trace) basepoint; it fixes the
    lift sign.  Raises BranchJump when consecutive samples move the length by
    more than LENGTH_JUMP_TOL.
    """
    t0 = complex(traces[0])
    if abs(t0.imag) > 1e-6:
        raise ValueError("continuation must start at a Fuchsian (real trace) basepoint")
    if det_sign == +1 and abs(abs(t0.real) - 2) < PARABOLIC_TRACE_TOL:
        # peripheral class: parabolic along the whole deformation
        return ComplexLength(0j, 0)
    sign = fuchsian_lift_sign(t0, det_sign)
    u0 = sign * t0 / 2
    w = cmath.acosh(u0.real) if det_sign == +1 else cmath.asinh(u0.real)
    w = complex(w.real, 0.0)
    for t in traces[1:]:
        u = sign * complex(t) / 2
        w_next = _nearest_half_length(w, u, det_sign)
        if 2 * abs(w_next - w) > LENGTH_JUMP_TOL:
            raise BranchJump(
                f"length moved by {2 * abs(w_next - w):.3g} in one step; refine the path"
            )
        w = w_next
    value = 2 * w
    principal = length_from_trace(complex(traces[-1]), det_sign, sign)
    branch = round((value.imag - principal.imag) / (2 * math.pi))
    return ComplexLength(value, branch)


# --- geometry helpers on the upper half plane -------------------------------


def eigenframe(m: np.ndarray):
    """(S, lam_plus, lam_minus) with m = S diag(lam_plus, lam_minus) S^-1 and
    |lam_plus| >= |lam_minus|.  Columns of S are eigenvectors; fixed points of
    the Moebius map are S[0,i]/S[1,i]."""
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    tr = a + d
    det = a * d - b * c
    r = cmath.sqrt(tr * tr - 4 * det)
    l1, l2 = (tr + r) / 2, (tr - r) / 2
    if abs(l1) < abs(l2):
        l1, l2 = l2, l1
    cols = []
    for lam in (l1, l2):
        v1 = np.array([b, lam - a], dtype=complex)
        v2 = np.array([lam - d, c], dtype=complex)
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        n = np.linalg.norm(v)
        if n == 0:
            raise IdentityMatrix("no eigenframe for a projectively trivial matrix")
        cols.append(v / n)
    S = np.column_stack(cols)
    if abs(np.linalg.det(S)) < 1e-14:
        raise IdentityMatrix("degenerate eigenframe (parabolic input)")
    return S, l1, l2


def translation_along(m: np.ndarray, t: complex) -> np.ndarray:
    """One-parameter subgroup through the loxodromic m: translation by complex
    distance t along axis(m) toward its attracting endpoint (det +1)."""
    S, _, _ = eigenframe(m)
    E = S @ np.diag([cmath.exp(t / 2), cmath.exp(-t / 2)]) @ np.linalg.inv(S)
    return normalize_det(E, +1)


def glide_square_root(m: np.ndarray) -> np.ndarray:
    """Real glide reflection A (det -1) with A @ A projectively equal to m.

    Requires m real hyperbolic with positive trace (eigenvalues e^l, e^-l);
    the glide translates toward the attracting endpoint of m."""
    S, l1, l2 = eigenframe(m)
    if abs(l1.imag) > 1e-9 or l1.real <= 0:
        raise ValueError("glide square root needs a positive-trace hyperbolic matrix")
    q = math.sqrt(l1.real)
    A = S @ np.diag([q, -1.0 / q]) @ np.linalg.inv(S)
    if abs(np.max(np.abs(A.imag))) > 1e-9:
        raise ValueError("glide square root came out non-real")
    return normalize_det(A.real.astype(complex), -1)
