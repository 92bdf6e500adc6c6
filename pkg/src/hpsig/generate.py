"""Seeded random generators whose signature class is known by construction.

A closed generated complex is a direct sum, over the characters of a cyclic
group, of a middle-degree form with prescribed inertia plus hyperbolic
padding, subsequently disguised by an exact duality perturbation and unitary
changes of basis.  None of the disguising steps can move the class, so the
expected character is the sum of the prescribed inertia numbers weighted by
the characters.

A generated complex with boundary couples an acyclic distinguished subcomplex
to a hyperbolic quotient through a chain homotopy, which satisfies the
boundary compatibility identities on the nose; its boundary complex is
acyclic and its class vanishes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .bordism import ComplexWithBoundary, hyperbolic
from .complexes import (
    ChainComplex,
    DualityOperator,
    HilbertPoincareComplex,
    direct_sum,
    perturb_duality,
    twist,
)
from .errors import ParseError, PreconditionViolated
from .groups import FiniteGroup, GroupAction, K0Class
from .linalg import adjoint

__all__ = [
    "Profile",
    "generate_with_boundary",
    "generate_with_signature",
    "parse_profile",
    "random_unitary",
]

_PROFILE_RE = re.compile(r"^n(\d+)(?:-z(\d+))?(?:-d(\d+))?$")


@dataclass(frozen=True)
class Profile:
    """Generator size parameters: top degree, cyclic group order, and a cap
    on the per-degree dimensions."""

    n: int
    group_order: int = 1
    max_dim: int = 4


def parse_profile(text: str | Profile) -> Profile:
    """Parse ``n{int}[-z{int}][-d{int}]``, e.g. ``n4-z3-d6``."""
    if isinstance(text, Profile):
        return text
    match = _PROFILE_RE.match(text.strip())
    if not match:
        raise ParseError(
            f"profile {text!r} does not match n<int>[-z<int>][-d<int>]"
        )
    n = int(match.group(1))
    order = int(match.group(2)) if match.group(2) else 1
    max_dim = int(match.group(3)) if match.group(3) else 4
    if order < 1:
        raise ParseError("group order must be at least 1")
    if max_dim < 1:
        raise ParseError("dimension cap must be at least 1")
    return Profile(n=n, group_order=order, max_dim=max_dim)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-ish unitary from the QR decomposition of a complex Gaussian."""
    if d == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(a)
    ph = np.diagonal(r).copy()
    ph = np.where(np.abs(ph) > 0, ph / np.abs(ph), 1.0)
    return q * ph


def _well_conditioned(rng: np.random.Generator, d: int) -> np.ndarray:
    """Invertible matrix with singular values in [1, 2]."""
    u = random_unitary(rng, d)
    v = random_unitary(rng, d)
    sv = 1.0 + rng.uniform(size=d)
    return (u * sv) @ adjoint(v)


def _zero_blocks(dims: tuple[int, ...]) -> list[np.ndarray]:
    n = len(dims) - 1
    return [
        np.zeros((dims[k], dims[n - k]), dtype=np.complex128) for k in range(n + 1)
    ]


def _zero_boundaries(dims: tuple[int, ...]) -> tuple[np.ndarray, ...]:
    return tuple(
        np.zeros((dims[k - 1], dims[k]), dtype=np.complex128)
        for k in range(1, len(dims))
    )


def _middle_piece(
    rng: np.random.Generator, n: int, size: int
) -> tuple[HilbertPoincareComplex, int]:
    """Zero-boundary complex concentrated in the middle degree with a
    nondegenerate form of random inertia; returns (complex, signature)."""
    mid = n // 2
    dims = tuple(size if k == mid else 0 for k in range(n + 1))
    signs = rng.integers(0, 2, size=size) * 2 - 1
    u = random_unitary(rng, size)
    form = u @ np.diag(signs.astype(np.complex128)) @ adjoint(u)
    form = (form + adjoint(form)) / 2.0
    blocks = _zero_blocks(dims)
    blocks[mid] = form
    hp = HilbertPoincareComplex(
        ChainComplex(dims, _zero_boundaries(dims)), DualityOperator(tuple(blocks))
    )
    return hp, int(signs.sum())


def _hyperbolic_piece(
    rng: np.random.Generator, n: int, size: int
) -> HilbertPoincareComplex:
    """Signature-zero hyperbolic complex of top degree n (n even)."""
    d = n - 1
    a = int(rng.integers(0, (d + 1) // 2))
    dims = tuple(size if k in (a, d - a) else 0 for k in range(d + 1))
    x = _well_conditioned(rng, size)
    blocks = _zero_blocks(dims)
    blocks[a] = x
    blocks[d - a] = adjoint(x)
    return hyperbolic(ChainComplex(dims, _zero_boundaries(dims)), blocks)


def _empty_piece(n: int) -> HilbertPoincareComplex:
    dims = (0,) * (n + 1)
    return HilbertPoincareComplex(
        ChainComplex(dims, _zero_boundaries(dims)),
        DualityOperator(tuple(_zero_blocks(dims))),
    )


def _isotypic_blockdiag(
    piece_dims: list[tuple[int, ...]],
    degree_row: int,
    degree_col: int,
    maker,
) -> np.ndarray:
    rows = sum(d[degree_row] for d in piece_dims)
    cols = sum(d[degree_col] for d in piece_dims)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for d in piece_dims:
        dr, dc = d[degree_row], d[degree_col]
        out[r : r + dr, c : c + dc] = maker(dr, dc)
        r += dr
        c += dc
    return out


def generate_with_signature(
    seed: int, profile: str | Profile
) -> tuple[HilbertPoincareComplex, K0Class]:
    """Seeded complex of even top degree with its expected signature class.

    The profile's group order 1 yields a plain complex (no action) and an
    integer class over the trivial group.
    """
    profile = parse_profile(profile)
    n = profile.n
    if n % 2:
        raise PreconditionViolated(
            f"the generator needs an even top degree, got {n}"
        )
    rng = np.random.default_rng(seed)
    order = profile.group_order
    cap_mid = max(1, profile.max_dim // order)
    cap_hyp = max(1, profile.max_dim // (2 * order))
    sizes_mid = [int(rng.integers(0, cap_mid + 1)) for _ in range(order)]
    # hyperbolic padding needs room below the top degree
    sizes_hyp = [
        int(rng.integers(0, cap_hyp + 1)) if n >= 2 else 0 for _ in range(order)
    ]
    if not any(sizes_mid) and not any(sizes_hyp):
        sizes_mid[int(rng.integers(0, order))] = 1

    pieces: list[HilbertPoincareComplex] = []
    inertia: list[int] = []
    for j in range(order):
        parts: list[HilbertPoincareComplex] = []
        sig_j = 0
        if sizes_mid[j]:
            hp_mid, sig_j = _middle_piece(rng, n, sizes_mid[j])
            parts.append(hp_mid)
        if sizes_hyp[j]:
            parts.append(_hyperbolic_piece(rng, n, sizes_hyp[j]))
        pieces.append(reduce(direct_sum, parts) if parts else _empty_piece(n))
        inertia.append(sig_j)
    total = reduce(direct_sum, pieces)
    piece_dims = [p.dims for p in pieces]

    if order > 1:
        group = FiniteGroup.cyclic(order)
        omega = np.exp(2j * np.pi / order)
        fams = []
        for g in range(order):
            fam = []
            for k in range(n + 1):
                mat = np.zeros((total.dims[k], total.dims[k]), dtype=np.complex128)
                off = 0
                for j, d in enumerate(piece_dims):
                    mat[off : off + d[k], off : off + d[k]] = (
                        omega ** ((j * g) % order)
                    ) * np.eye(d[k])
                    off += d[k]
                fam.append(mat)
            fams.append(tuple(fam))
        action = GroupAction(group, tuple(fams))
        hp = HilbertPoincareComplex(total.chain, total.duality, action)
    else:
        group = FiniteGroup.trivial()
        hp = total

    # exact duality perturbation, block-diagonal over the isotypic pieces so
    # it commutes with the action
    r_blocks: list[np.ndarray | None] = [None] * (n + 1)
    for j in range(2, n + 1):
        partner = n + 2 - j
        if j > partner:
            continue
        blk = _isotypic_blockdiag(
            piece_dims,
            j,
            partner,
            lambda dr, dc: 0.3 * (rng.normal(size=(dr, dc)) + 1j * rng.normal(size=(dr, dc))),
        )
        if j == partner:
            blk = (blk + adjoint(blk)) / 2.0
            r_blocks[j] = blk
        else:
            r_blocks[j] = blk
            r_blocks[partner] = adjoint(blk)
    hp = perturb_duality(hp, r_blocks)

    # equivariant change of basis inside each isotypic piece, then a global one
    eq_us = [
        _isotypic_blockdiag(piece_dims, k, k, lambda dr, dc: random_unitary(rng, dr))
        for k in range(n + 1)
    ]
    hp = twist(hp, eq_us)
    hp = twist(hp, [random_unitary(rng, hp.dims[k]) for k in range(n + 1)])

    if order > 1:
        values = []
        for cls in group.conjugacy_classes:
            g = cls[0]
            values.append(
                complex(sum(omega ** ((j * g) % order) * inertia[j] for j in range(order)))
            )
        expected = K0Class(group, tuple(values))
    else:
        expected = K0Class(group, (complex(sum(inertia)),))
    return hp, expected


def generate_with_boundary(seed: int, profile: str | Profile) -> ComplexWithBoundary:
    """Seeded complex with boundary satisfying the compatibility identities.

    ``profile.n`` is the boundary dimension (even, at least 2); the total
    complex has odd top degree ``n + 1``.  The distinguished subcomplex is
    acyclic and avoids the top degree, the quotient is hyperbolic, and the
    coupling blocks come from a degree-zero homotopy, so the structure is
    valid by construction and the boundary class vanishes.
    """
    profile = parse_profile(profile)
    n = profile.n
    if n < 2 or n % 2:
        raise PreconditionViolated(
            f"the boundary generator needs an even boundary dimension >= 2, got {n}"
        )
    if profile.group_order != 1:
        raise PreconditionViolated("the boundary generator has no equivariant mode")
    rng = np.random.default_rng(seed)
    big_n = n + 1
    cap = max(1, min(2, profile.max_dim // 2))

    # acyclic subcomplex: identity blocks between consecutive degrees < big_n
    dims0 = [0] * (big_n + 1)
    rounds = []
    for _ in range(1 + int(rng.integers(0, 2))):
        k = int(rng.integers(0, big_n - 1))
        s = 1 + int(rng.integers(0, cap))
        rounds.append((k, dims0[k], dims0[k + 1], s))
        dims0[k] += s
        dims0[k + 1] += s
    b0 = [np.zeros((0, 0), dtype=np.complex128)]
    for m in range(1, big_n + 1):
        b0.append(np.zeros((dims0[m - 1], dims0[m]), dtype=np.complex128))
    for k, row0, col0, s in rounds:
        b0[k + 1][row0 : row0 + s, col0 : col0 + s] = np.eye(s)
    u0 = [random_unitary(rng, dims0[k]) for k in range(big_n + 1)]
    for m in range(1, big_n + 1):
        b0[m] = u0[m - 1] @ b0[m] @ adjoint(u0[m])

    # hyperbolic quotient of top degree big_n from middle-degree input data
    mid = n // 2
    t = 1 + int(rng.integers(0, cap))
    dims_in = [0] * (n + 1)
    dims_in[mid] = t
    s_in_sizes = dict.fromkeys(range(n + 1), 0)
    s_in_sizes[mid] = t
    if n >= 4 and rng.integers(0, 2):
        a = int(rng.integers(0, mid))
        dims_in[a] += 1
        dims_in[n - a] += 1
        s_in_sizes[a] = 1
        s_in_sizes[n - a] = 1
    dims_in = tuple(dims_in)
    s_in = _zero_blocks(dims_in)
    u = random_unitary(rng, t)
    signs = rng.integers(0, 2, size=t) * 2 - 1
    form = u @ np.diag(signs.astype(np.complex128)) @ adjoint(u)
    s_in[mid][:t, :t] = (form + adjoint(form)) / 2.0
    for a in range(mid):
        if dims_in[a]:
            x = _well_conditioned(rng, dims_in[a])
            s_in[a][-dims_in[a] :, -dims_in[a] :] = x
            s_in[n - a][-dims_in[a] :, -dims_in[a] :] = adjoint(x)
    quotient = hyperbolic(ChainComplex(dims_in, _zero_boundaries(dims_in)), s_in)
    dims1 = quotient.dims
    b1 = [np.zeros((0, 0), dtype=np.complex128)]
    b1.extend(quotient.chain.boundary(m) for m in range(1, big_n + 1))
    s1 = [quotient.duality.block(k) for k in range(big_n + 1)]

    # coupling through a degree-zero homotopy x: quotient -> sub
    x = [
        0.4 * (rng.normal(size=(dims0[m], dims1[m])) + 1j * rng.normal(size=(dims0[m], dims1[m])))
        for m in range(big_n + 1)
    ]
    h = [np.zeros((0, 0), dtype=np.complex128)]
    for m in range(1, big_n + 1):
        h.append(b0[m] @ x[m] - x[m - 1] @ b1[m])
    f_up = [-x[k] @ s1[k] for k in range(big_n + 1)]
    s2: list[np.ndarray] = [np.zeros((0, 0), dtype=np.complex128)] * (big_n + 1)
    for k in range(big_n + 1):
        if k < big_n - k:
            s2[k] = 0.5 * (
                rng.normal(size=(dims0[k], dims0[big_n - k]))
                + 1j * rng.normal(size=(dims0[k], dims0[big_n - k]))
            )
    for k in range(big_n + 1):
        if k > big_n - k:
            s2[k] = adjoint(s2[big_n - k])

    dims = tuple(dims0[m] + dims1[m] for m in range(big_n + 1))
    bnds = []
    for m in range(1, big_n + 1):
        blk = np.zeros((dims[m - 1], dims[m]), dtype=np.complex128)
        blk[: dims0[m - 1], : dims0[m]] = b0[m]
        blk[: dims0[m - 1], dims0[m] :] = h[m]
        blk[dims0[m - 1] :, dims0[m] :] = b1[m]
        bnds.append(blk)
    sblocks = []
    for k in range(big_n + 1):
        blk = np.zeros((dims[k], dims[big_n - k]), dtype=np.complex128)
        blk[: dims0[k], : dims0[big_n - k]] = s2[k]
        blk[: dims0[k], dims0[big_n - k] :] = f_up[k]
        blk[dims0[k] :, : dims0[big_n - k]] = adjoint(f_up[big_n - k])
        blk[dims0[k] :, dims0[big_n - k] :] = s1[k]
        sblocks.append(blk)
    split = tuple(tuple(range(dims0[m])) for m in range(big_n + 1))
    return ComplexWithBoundary(
        ChainComplex(dims, tuple(bnds)), DualityOperator(tuple(sblocks)), split
    )
