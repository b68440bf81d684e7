"""LR triples: verification, extension of an LR pair, derived data and scalar recovery.

Conventions used throughout:

* ``phi``, ``phi1``, ``phi2`` are the parameter sequences of the pairs
  (A,B), (B,C), (C,A).
* ``alpha`` parametrises the transition from a (C,B)-basis to the compatible
  (C,A)-basis, ``alpha1`` from an (A,C)-basis to the compatible (A,B)-basis,
  ``alpha2`` from a (B,A)-basis to the compatible (B,C)-basis.
* Transition matrices follow :func:`lrlab.linalg.transition_matrix`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from operator import mul
from typing import NamedTuple

from .decomp import (
    LOWERS,
    RAISES,
    Decomposition,
    IdempotentSequence,
    action_check,
    flag_action_check,
    flags_opposite,
    idempotent_sequence,
    induced_flag,
    opposite_intersection_decomposition,
    tridiagonal_check,
    zero_diagonal_check,
)
from .errors import (
    FieldMismatch,
    InternalContradiction,
    NoScalarRelation,
    NotBipartite,
    NotLRPair,
    NotLRTriple,
    NotToeplitz,
    PreconditionFailed,
    ShapeMismatch,
    ZeroScalar,
)
from .field import FieldElement, FieldSpec
from .linalg import (
    Matrix,
    Subspace,
    basis_matrix,
    inverse,
    representing_matrix,
    transition_matrix,
)
from .lrpair import (
    LRPairData,
    find_lr_decomposition,
    lowered_basis,
    rebase_to_anchor,
    standard_basis,
)
from .toeplitz import (
    ToeplitzParams,
    anti_diagonal_transpose,
    subdiagonal_matrix,
    toeplitz_params,
)

I, II = "I", "II"


# certificates ------------------------------------------------------------------

@dataclass(frozen=True)
class TripleCertificate:
    A: Matrix
    B: Matrix
    C: Matrix
    pairs: dict[str, LRPairData] = dc_field(repr=False, compare=False)
    idempotents: tuple[IdempotentSequence, IdempotentSequence, IdempotentSequence] = \
        dc_field(repr=False, compare=False)
    alpha: ToeplitzParams = None
    alpha1: ToeplitzParams = None
    alpha2: ToeplitzParams = None
    bipartite: bool = False

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def d(self) -> int:
        return self.A.n_rows - 1

    @property
    def phi(self) -> tuple[FieldElement, ...]:
        return self.pairs["AB"].phi

    @property
    def phi1(self) -> tuple[FieldElement, ...]:
        return self.pairs["BC"].phi

    @property
    def phi2(self) -> tuple[FieldElement, ...]:
        return self.pairs["CA"].phi

    @property
    def parameter_array(self):
        return self.phi, self.phi1, self.phi2

    @property
    def toeplitz(self) -> tuple[ToeplitzParams, ToeplitzParams, ToeplitzParams]:
        return self.alpha, self.alpha1, self.alpha2

    def decomposition(self, name: str) -> Decomposition:
        """The (X,Y)-decomposition for ``name`` in AB, BC, CA, BA, CB, AC."""
        return self.pairs[name].decomposition

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "d": self.d,
            "A": self.A.to_list(),
            "B": self.B.to_list(),
            "C": self.C.to_list(),
            "phi": [f.value for f in self.phi],
            "phi1": [f.value for f in self.phi1],
            "phi2": [f.value for f in self.phi2],
            "alpha": self.alpha.to_json(),
            "alpha1": self.alpha1.to_json(),
            "alpha2": self.alpha2.to_json(),
            "bipartite": self.bipartite,
            "decompositions": {k: self.decomposition(k).to_json() for k in ("AB", "BC", "CA")},
        }


def _check_triple_shapes(*mats: Matrix) -> None:
    first = mats[0]
    for M in mats:
        if M.field != first.field:
            raise FieldMismatch("operators live over different fields")
        if not M.is_square or M.shape != first.shape:
            raise ShapeMismatch("operators must be square of equal size")


_ORDERED = (("AB", 0, 1), ("BC", 1, 2), ("CA", 2, 0), ("BA", 1, 0), ("CB", 2, 1), ("AC", 0, 2))


def _basis_inverse(D: Decomposition, basis: list) -> Matrix:
    """Inverse of the matrix with columns ``basis``, where basis[i] spans D_i.

    basis[i] = s_i n_i for the normalized spanning vector n_i, so the rows of
    the inverse are the cached projector rows divided by s_i.
    """
    p = D.field.p
    Q = D._projector_rows.rows
    s_inv = [pow(next(x for x in b if x), p - 2, p) for b in basis]
    return Matrix(D.field, tuple(tuple(x * si % p for x in q) for q, si in zip(Q, s_inv)))


def _transition_params(field: FieldSpec, X: Matrix, D_from: Decomposition,
                       D_to: Decomposition) -> ToeplitzParams:
    """Parameters of the transition from an X-lowered basis of D_from to the
    compatible X-lowered basis of D_to. Both decompositions come from LR-pair
    detection, so X is known to lower them."""
    p = field.p
    u = lowered_basis(X, D_from)
    v = rebase_to_anchor(field, lowered_basis(X, D_to), u[0])
    # u_i = s_i n_i with n_i the normalized spanning vector, so the coordinates
    # of v_j in u are (Q v_j)_i / s_i where Q inverts the matrix of the n_i
    Q = D_from._projector_rows.rows
    s_inv = [pow(next(x for x in ui if x), p - 2, p) for ui in u]
    rows = tuple(tuple(sum(map(mul, q, vj)) * si % p for vj in v) for q, si in zip(Q, s_inv))
    try:
        params = toeplitz_params(Matrix(field, rows))
    except NotToeplitz as exc:
        raise InternalContradiction(f"transition matrix is not upper triangular Toeplitz: {exc}") from exc
    if params.alpha[0] != 1:
        raise InternalContradiction("leading Toeplitz parameter differs from 1")
    return params


def _toeplitz_triple(A: Matrix, B: Matrix, C: Matrix, pairs: dict[str, LRPairData]):
    field = A.field
    D = {k: v.decomposition for k, v in pairs.items()}
    return (_transition_params(field, C, D["CB"], D["CA"]),
            _transition_params(field, A, D["AC"], D["AB"]),
            _transition_params(field, B, D["BA"], D["BC"]))


def _reversed_pair(P: LRPairData) -> LRPairData:
    # (B,A) is an LR pair on the reversed decomposition with reversed parameters
    return LRPairData(P.B, P.A, P.decomposition.reversed(), P.phi[::-1])


def verify_triple(A: Matrix, B: Matrix, C: Matrix, detect_reversed: bool = False) -> TripleCertificate:
    """Certificate for the LR triple A, B, C, or NotLRTriple naming the failing pair.

    The pairs (B,A), (C,B), (A,C) are obtained by reversing (A,B), (B,C), (C,A).
    With ``detect_reversed`` they are also detected from scratch and compared.
    """
    _check_triple_shapes(A, B, C)
    ops = (A, B, C)
    pairs: dict[str, LRPairData] = {}
    for name, x, y in _ORDERED[:3]:
        try:
            pairs[name] = find_lr_decomposition(ops[x], ops[y])
        except NotLRPair as exc:
            raise NotLRTriple(f"({name[0]},{name[1]})", exc.reason) from exc
    for name, fwd in (("BA", "AB"), ("CB", "BC"), ("AC", "CA")):
        pairs[name] = _reversed_pair(pairs[fwd])

    if detect_reversed:
        for name, x, y in _ORDERED[3:]:
            try:
                Q = find_lr_decomposition(ops[x], ops[y])
            except NotLRPair as exc:
                raise InternalContradiction(f"reversed pair {name} is not an LR pair") from exc
            if Q.decomposition != pairs[name].decomposition or Q.phi != pairs[name].phi:
                raise InternalContradiction(f"detected {name} data differs from the reversal")

    D_ab, D_bc, D_ca = (pairs[k].decomposition for k in ("AB", "BC", "CA"))
    idem = (idempotent_sequence(D_ab), idempotent_sequence(D_bc), idempotent_sequence(D_ca))
    alpha, alpha1, alpha2 = _toeplitz_triple(A, B, C, pairs)
    bip = (zero_diagonal_check(A, D_bc)
           and zero_diagonal_check(B, D_ca)
           and zero_diagonal_check(C, D_ab))
    cert = TripleCertificate(A, B, C, pairs, idem, alpha, alpha1, alpha2, bip)

    failed = [name for name, ok in certificate_invariants(cert).items() if not ok]
    if failed:
        raise InternalContradiction(f"certificate invariants fail: {', '.join(failed)}")
    return cert


def toeplitz_data(cert: TripleCertificate) -> tuple[ToeplitzParams, ToeplitzParams, ToeplitzParams]:
    """Recompute (alpha, alpha1, alpha2) from the decompositions held by ``cert``."""
    return _toeplitz_triple(cert.A, cert.B, cert.C, cert.pairs)


def certificate_invariants(cert: TripleCertificate) -> dict[str, bool]:
    """Named structural checks that every certificate of its parity class satisfies.

    Ratio identities x/y = x'/y' are tested in the cross-multiplied form x y' = x' y.
    """
    d, p = cert.d, cert.field.p
    al = [a.values() + [0] for a in cert.toeplitz]
    ph = [[f.value for f in seq] for seq in cert.parameter_array]
    pairs = ((0, 1), (1, 2))
    checks = {"alpha0": all(a[0] == 1 for a in al)}
    if d >= 1:
        # bipartite exactly when alpha1_1 vanishes
        checks["bip_shortcut"] = cert.bipartite == (al[1][1] == 0)
    if not cert.bipartite:
        checks["alpha1_nonzero"] = d >= 1 and all(a[1] for a in al)
        if checks["alpha1_nonzero"]:
            checks["alpha1_ratios"] = all(
                (al[s][1] * ph[t][i] - al[t][1] * ph[s][i]) % p == 0
                for i in range(d) for s, t in pairs)
    else:
        checks["d_even"] = d % 2 == 0
        checks["alpha_parity"] = all(bool(a[i]) == (i % 2 == 0) for a in al for i in range(d + 1))
        if d >= 2 and checks["alpha_parity"]:
            ok = True
            for i in range(d):
                for j in range(d):
                    for s, t in pairs:
                        if (i - j) % 2:
                            diff = al[s][2] * ph[t][i] * ph[t][j] - al[t][2] * ph[s][i] * ph[s][j]
                        else:
                            diff = ph[s][i] * ph[t][j] - ph[t][i] * ph[s][j]
                        ok = ok and diff % p == 0
            checks["alpha2_ratios"] = ok
    return checks


# conditions and the extension ------------------------------------------------------

def condition_check(A: Matrix, B: Matrix, D: Decomposition, which: str) -> bool:
    """Condition I: A lowers D and B is irreducible tridiagonal on D. II swaps A and B."""
    if which == II:
        A, B = B, A
    elif which != I:
        raise ValueError("which must be 'I' or 'II'")
    return action_check(A, D, LOWERS) and tridiagonal_check(B, D).irreducible


def extend_pair(A: Matrix, B: Matrix, Vprime: Decomposition) -> Matrix:
    """The C with C v'_i = phi_{d-i} v'_{i+1} on an A-lowered basis of V'."""
    try:
        pair = find_lr_decomposition(A, B)
    except NotLRPair as exc:
        raise PreconditionFailed("NotLRPair", f"(A,B) is not an LR pair: {exc.reason}") from exc
    if Vprime.d != pair.d or Vprime.field != A.field:
        raise PreconditionFailed("ShapeMismatch", "V' does not live in the space of A and B")
    if not condition_check(A, B, Vprime, I):
        raise PreconditionFailed("ConditionI", "V' does not satisfy condition I")

    field = A.field
    vp = lowered_basis(A, Vprime)  # condition I includes A lowering V'

    if not all(Vprime.lines[i].contains(v) for i, v in enumerate(vp)):
        raise InternalContradiction("A-lowered basis leaves V'")
    W = basis_matrix(field, vp)
    W_inv = _basis_inverse(Vprime, vp)
    C = W @ subdiagonal_matrix(field, pair.phi[::-1]) @ W_inv

    # independent route: C in a compatible (A,B)-basis is the anti-diagonal
    # transpose of B in the A-lowered basis of V'
    v = rebase_to_anchor(field, lowered_basis(A, pair.decomposition), vp[0])
    P = basis_matrix(field, v)
    C_alt = P @ anti_diagonal_transpose(W_inv @ B @ W) @ _basis_inverse(pair.decomposition, v)
    if C_alt != C:
        raise InternalContradiction("the two constructions of C disagree")

    try:
        ca = find_lr_decomposition(C, A)
        find_lr_decomposition(B, C)
    except NotLRPair as exc:
        raise InternalContradiction(f"extension is not an LR triple: {exc.reason}") from exc
    if ca.decomposition != Vprime.reversed():
        raise InternalContradiction("V' is not the (A,C)-decomposition of the extension")
    if ca.phi != pair.phi:
        raise InternalContradiction("parameter sequence of (C,A) differs from that of (A,B)")
    return C


def extend_pair_II(A: Matrix, B: Matrix, Vdoubleprime: Decomposition) -> Matrix:
    """The extension whose (B,C)-decomposition is V''."""
    if not condition_check(A, B, Vdoubleprime, II):
        raise PreconditionFailed("ConditionII", "V'' does not satisfy condition II")
    return extend_pair(B, A, Vdoubleprime)


def joint_extension(A: Matrix, B: Matrix, Vprime: Decomposition,
                    Vdoubleprime: Decomposition) -> Matrix:
    if Vprime.d != Vdoubleprime.d or Vprime.lines[-1] != Vdoubleprime.lines[-1]:
        raise PreconditionFailed("TopLineMismatch", "V'_d and V''_d differ")
    if not condition_check(A, B, Vprime, I):
        raise PreconditionFailed("ConditionI", "V' does not satisfy condition I")
    if not condition_check(A, B, Vdoubleprime, II):
        raise PreconditionFailed("ConditionII", "V'' does not satisfy condition II")
    C = extend_pair(A, B, Vprime)
    if find_lr_decomposition(B, C).decomposition != Vdoubleprime:
        raise InternalContradiction("V'' is not the (B,C)-decomposition of the extension")
    return C


def pair_from_flags(A: Matrix, B: Matrix, Vprime: Decomposition,
                    Vdoubleprime: Decomposition) -> Decomposition:
    """Rebuild the decomposition lowered by A and raised by B from two flags.

    Needs only conditions I and II; no LR-pair assumption is made.
    """
    if not condition_check(A, B, Vprime, I):
        raise PreconditionFailed("ConditionI", "V' does not satisfy condition I")
    if not condition_check(A, B, Vdoubleprime, II):
        raise PreconditionFailed("ConditionII", "V'' does not satisfy condition II")
    F1, F2 = induced_flag(Vprime), induced_flag(Vdoubleprime)
    if not (flag_action_check(A, F1, LOWERS) and flag_action_check(B, F1, RAISES)
            and flag_action_check(B, F2, LOWERS) and flag_action_check(A, F2, RAISES)):
        raise InternalContradiction("induced flags do not inherit the lowering/raising actions")
    if not flags_opposite(F1, F2):
        raise InternalContradiction("induced flags are not opposite")
    Z = opposite_intersection_decomposition(F1, F2)
    if not (action_check(A, Z, LOWERS) and action_check(B, Z, RAISES)):
        raise InternalContradiction("Z decomposition is not lowered by A and raised by B")
    return Z


# bipartite splitting -----------------------------------------------------------------

class OutInSplit(NamedTuple):
    v_out: Subspace
    v_in: Subspace
    p_out: Matrix
    p_in: Matrix
    x_out: Matrix
    x_in: Matrix


def out_in_split(cert: TripleCertificate, X: Matrix) -> OutInSplit:
    if not cert.bipartite:
        raise NotBipartite("out/in splitting needs a bipartite triple")
    field, n = cert.field, cert.d + 1
    names = ("AB", "BC", "CA")
    outs = {Subspace.span(field, n, cert.decomposition(k).vectors[0::2]) for k in names}
    ins = {Subspace.span(field, n, cert.decomposition(k).vectors[1::2]) for k in names}
    if len(outs) != 1 or len(ins) != 1:
        raise InternalContradiction("even/odd idempotent images disagree across decompositions")
    v_out, v_in = outs.pop(), ins.pop()
    E = cert.idempotents[0]
    p_out = Matrix.zeros(field, n)
    for j in range(0, n, 2):
        p_out = p_out + E[j]
    p_in = Matrix.identity(field, n) - p_out
    return OutInSplit(v_out, v_in, p_out, p_in, X @ p_out, X @ p_in)


# scaling -------------------------------------------------------------------------------

@dataclass(frozen=True)
class ScaleReport:
    certificate: TripleCertificate
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def _nonzero_scalars(field: FieldSpec, *scalars) -> list[FieldElement]:
    out = [field(s) for s in scalars]
    if not all(out):
        raise ZeroScalar("scaling factors must be nonzero")
    return out


def _idempotents_equal(c1: TripleCertificate, c2: TripleCertificate) -> bool:
    return all(s1.matrices == s2.matrices for s1, s2 in zip(c1.idempotents, c2.idempotents))


def scale_triple(cert: TripleCertificate, a, b, g) -> ScaleReport:
    """Certificate of (aA, bB, gC) compared against the closed-form predictions."""
    a, b, g = _nonzero_scalars(cert.field, a, b, g)
    new = verify_triple(cert.A.scale(a), cert.B.scale(b), cert.C.scale(g))
    d = cert.d
    checks = {
        "phi = a*b*phi": new.phi == tuple(a * b * x for x in cert.phi),
        "phi1 = b*g*phi1": new.phi1 == tuple(b * g * x for x in cert.phi1),
        "phi2 = g*a*phi2": new.phi2 == tuple(g * a * x for x in cert.phi2),
        "idempotent data unchanged": _idempotents_equal(cert, new),
        "alpha_i = g^-i alpha_i": new.alpha.alpha == tuple(g ** -i * cert.alpha[i] for i in range(d + 1)),
        "alpha1_i = a^-i alpha1_i": new.alpha1.alpha == tuple(a ** -i * cert.alpha1[i] for i in range(d + 1)),
        "alpha2_i = b^-i alpha2_i": new.alpha2.alpha == tuple(b ** -i * cert.alpha2[i] for i in range(d + 1)),
        "bipartite unchanged": new.bipartite == cert.bipartite,
    }
    return ScaleReport(new, checks)


def bipartite_scale(cert: TripleCertificate, a_out, a_in, b_out, b_in, g_out, g_in) -> ScaleReport:
    """Certificate of the out/in rescaled triple compared against predictions."""
    if not cert.bipartite:
        raise NotBipartite("bipartite scaling needs a bipartite triple")
    ao, ai, bo, bi, go, gi = _nonzero_scalars(cert.field, a_out, a_in, b_out, b_in, g_out, g_in)
    sa, sb, sc = (out_in_split(cert, X) for X in (cert.A, cert.B, cert.C))
    new = verify_triple(sa.x_out.scale(ao) + sa.x_in.scale(ai),
                        sb.x_out.scale(bo) + sb.x_in.scale(bi),
                        sc.x_out.scale(go) + sc.x_in.scale(gi))
    d = cert.d
    zero = cert.field.zero

    def f(i, even, odd):
        return even if i % 2 == 0 else odd

    def g_seq(x, y, i):
        return (x * y) ** -(i // 2) if i % 2 == 0 else zero

    checks = {
        "phi = phi*f": new.phi == tuple(cert.phi[i - 1] * f(i, ao * bi, ai * bo) for i in range(1, d + 1)),
        "phi1 = phi1*f1": new.phi1 == tuple(cert.phi1[i - 1] * f(i, bo * gi, bi * go) for i in range(1, d + 1)),
        "phi2 = phi2*f2": new.phi2 == tuple(cert.phi2[i - 1] * f(i, go * ai, gi * ao) for i in range(1, d + 1)),
        "idempotent data unchanged": _idempotents_equal(cert, new),
        "alpha_i = alpha_i*g2_i": new.alpha.alpha == tuple(cert.alpha[i] * g_seq(go, gi, i) for i in range(d + 1)),
        "alpha1_i = alpha1_i*g_i": new.alpha1.alpha == tuple(cert.alpha1[i] * g_seq(ao, ai, i) for i in range(d + 1)),
        "alpha2_i = alpha2_i*g1_i": new.alpha2.alpha == tuple(cert.alpha2[i] * g_seq(bo, bi, i) for i in range(d + 1)),
        "bipartite": new.bipartite,
    }
    return ScaleReport(new, checks)


# recovery -------------------------------------------------------------------------------

def _solve_multiple(field: FieldSpec, target: Matrix, base: Matrix) -> FieldElement:
    """The scalar k with target = k * base, found entrywise."""
    p = field.p
    for rt, rb in zip(target.rows, base.rows):
        for x, y in zip(rt, rb):
            if y:
                k = field(x * field.inv(y) % p)
                if target != base.scale(k) or not k:
                    raise NoScalarRelation("matrix is not a nonzero multiple of the reference")
                return k
    raise NoScalarRelation("reference matrix is zero")


def _companion_certificate(cert: TripleCertificate, Ctilde: Matrix) -> TripleCertificate:
    try:
        other = verify_triple(cert.A, cert.B, Ctilde)
    except NotLRTriple as exc:
        raise PreconditionFailed("NotLRTriple", f"A, B, C~ is not an LR triple: {exc}") from exc
    same_ac = other.decomposition("AC") == cert.decomposition("AC")
    same_bc = other.decomposition("BC") == cert.decomposition("BC")
    if same_ac != same_bc:
        raise InternalContradiction("(A,C)- and (B,C)-decomposition agreement disagree")
    if not same_ac:
        raise PreconditionFailed("DecompositionMismatch",
                                 "the (A,C~)-decomposition differs from the (A,C)-decomposition")
    if other.bipartite != cert.bipartite:
        raise InternalContradiction("bipartiteness differs despite a shared (A,C)-decomposition")
    return other


def recover_gamma_nonbipartite(cert: TripleCertificate, Ctilde: Matrix) -> FieldElement:
    if cert.bipartite:
        raise PreconditionFailed("Bipartite", "certificate is bipartite")
    other = _companion_certificate(cert, Ctilde)
    gamma = cert.alpha[1] / other.alpha[1]
    direct = _solve_multiple(cert.field, Ctilde, cert.C)
    if direct != gamma:
        raise InternalContradiction(f"formula gives {gamma}, direct solve gives {direct}")
    return gamma


def recover_gammas_bipartite(cert: TripleCertificate, Ctilde: Matrix) -> tuple[FieldElement, FieldElement]:
    if cert.d < 2:
        raise PreconditionFailed("DTooSmall", "recovery needs d >= 2")
    if not cert.bipartite:
        raise PreconditionFailed("Nonbipartite", "certificate is not bipartite")
    other = _companion_certificate(cert, Ctilde)
    g_out = other.phi1[0] / cert.phi1[0]
    g_in = cert.alpha[2] * cert.phi1[0] / (other.alpha[2] * other.phi1[0])

    split = out_in_split(cert, cert.C)
    d_out = _solve_multiple(cert.field, Ctilde @ split.p_out, split.x_out)
    d_in = _solve_multiple(cert.field, Ctilde @ split.p_in, split.x_in)
    if (d_out, d_in) != (g_out, g_in):
        raise InternalContradiction(
            f"formula gives ({g_out}, {g_in}), direct solve gives ({d_out}, {d_in})")
    if split.x_out.scale(g_out) + split.x_in.scale(g_in) != Ctilde:
        raise NoScalarRelation("C~ is not gamma_out C_out + gamma_in C_in")
    return g_out, g_in


# convention self-test --------------------------------------------------------------------

def worked_example():
    """The d=2 instance over GF(7): shift A, subdiagonal B, and V' from alpha' = (1,0,1)."""
    from .toeplitz import shift_matrix

    F = FieldSpec(7)
    A = shift_matrix(F, 3)
    B = subdiagonal_matrix(F, [1, 2])
    Vprime = Decomposition.from_vectors(F, [[1, 0, 0], [0, 1, 0], [-1, 0, 1]])
    return A, B, Vprime


@lru_cache(maxsize=None)
def convention_self_test() -> bool:
    """Check the transition-matrix convention against the worked example.

    Raises InternalContradiction on any disagreement.
    """
    A, B, Vp = worked_example()
    C = extend_pair(A, B, Vp)
    if C.to_list() != [[0, 6, 0], [2, 0, 2], [0, 1, 0]]:
        raise InternalContradiction(f"worked extension gave {C.to_list()}")
    cert = verify_triple(A, B, C)
    if cert.alpha1.values() != [1, 0, 1]:
        raise InternalContradiction(f"alpha' of the worked example is {cert.alpha1.values()}")
    # [B] in the (A,C)-basis must be T' S T'^-1
    F = A.field
    vp = standard_basis(A, cert.decomposition("AC"))
    v = rebase_to_anchor(F, standard_basis(A, cert.decomposition("AB")), vp[0])
    T = transition_matrix(F, vp, v)
    if representing_matrix(B, vp) != T @ subdiagonal_matrix(F, cert.phi) @ inverse(T):
        raise InternalContradiction("[B] in the (A,C)-basis is not T' S T'^-1")
    return True
