"""Explicit almost-representations with known winding obstructions.

Every family here packages, for one finitely presented group, a tuple of
exactly unitary matrices (compositions of permutations, diagonals of
unit-modulus entries, and one 2x2 rotation -- unitary to 1e-12 by
construction), the presentation they almost satisfy, and the homogeneous
relator(s) whose winding number obstructs closeness to an exact
representation.

The seed of everything is the clock-and-shift pair (the Voiculescu
matrices): Omega_n = diag(w, w^2, ..., w^n) with w = exp(2 pi i / n) and the
cyclic shift S_n.  Their multiplicative commutator is the scalar w * 1, so
group words that reduce to commutator powers evaluate to scalar matrices
whose winding is read off directly.

Registered families (see :data:`FAMILIES`): voiculescu, p2, p3, p4, p6,
surface, bs_mm, nilpotent, bs23, identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MatrixError, StabilityLabError
from .linalg import UnitaryTuple, adjoint
from .relators import Generator, Presentation, Word, is_homogeneous, parse_word

ZOO_UNITARITY_TOL = 1e-12


class FamilyParameterError(StabilityLabError, ValueError):
    """A zoo family was requested with out-of-range parameters."""


@dataclass(frozen=True)
class NamedConstruction:
    """A presentation, a unitary tuple for its generators, and the
    homogeneous relators to test.

    ``expected_wind`` holds the family's designated winding value per test
    relator (asymptotically n-independent); ``defect_relator`` is the
    relator whose defect the family tracks as the parameter grows, and
    ``defect_constant`` the c of the closed form 2|sin(pi c / n)| when one
    exists.
    """

    family: str
    n_parameter: int
    presentation: Presentation
    unitaries: UnitaryTuple
    test_relators: tuple[Word, ...]
    expected_wind: tuple[int | None, ...]
    defect_relator: Word | None
    defect_constant: int | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.test_relators) != len(self.expected_wind):
            raise FamilyParameterError("one expected wind per test relator")
        for w in self.test_relators:
            if not is_homogeneous(w):
                raise FamilyParameterError("test relators must be homogeneous")


def voiculescu(n: int) -> tuple[np.ndarray, np.ndarray]:
    """The clock/shift pair (Omega_n, S_n), both exactly unitary.

    S_n has 1 in the top-right corner and on the subdiagonal; Omega_n is
    diagonal with entries w^1, ..., w^n, w = exp(2 pi i / n).
    """
    if n < 2:
        raise FamilyParameterError(f"voiculescu matrices need n >= 2, got {n}")
    ks = np.arange(1, n + 1)
    omega = np.diag(np.exp(2j * np.pi * (ks % n) / n))
    shift = np.zeros((n, n), dtype=np.complex128)
    shift[0, n - 1] = 1.0
    shift[np.arange(1, n), np.arange(n - 1)] = 1.0
    return omega, shift


def _zeros(n: int) -> np.ndarray:
    return np.zeros((n, n), dtype=np.complex128)


def _presentation(name: str, gen_names: list[str], relator_texts: list[str]) -> Presentation:
    gens = tuple(Generator(g) for g in gen_names)
    rels = tuple(parse_word(t, gens) for t in relator_texts)
    return Presentation(gens, rels, name=name)


def _construction(family, n, pres, mats, test_texts, winds, defect_text, c, **params):
    tup = UnitaryTuple(tuple(mats), pres.generator_names, ZOO_UNITARITY_TOL)
    tests = tuple(parse_word(t, pres.generators) for t in test_texts)
    defect_rel = parse_word(defect_text, pres.generators) if defect_text else None
    return NamedConstruction(
        family=family,
        n_parameter=n,
        presentation=pres,
        unitaries=tup,
        test_relators=tests,
        expected_wind=tuple(winds),
        defect_relator=defect_rel,
        defect_constant=c,
        params=dict(params),
    )


def voiculescu_pair(n: int) -> NamedConstruction:
    """The almost-commuting pair as a family: relator [x, y], winding +1."""
    om, sh = voiculescu(n)
    pres = _presentation("Z^2", ["x", "y"], ["[x,y]"])
    return _construction("voiculescu", n, pres, [om, sh], ["[x,y]"], [1], "[x,y]", 1)


def identity_pair(n: int) -> NamedConstruction:
    """Debug family: two identity matrices, exactly commuting."""
    if n < 1:
        raise FamilyParameterError(f"identity family needs n >= 1, got {n}")
    pres = _presentation("Z^2", ["x", "y"], ["[x,y]"])
    eye = np.eye(n, dtype=np.complex128)
    return _construction("identity", n, pres, [eye, eye.copy()], ["[x,y]"], [0], "[x,y]", None)


def _require_wallpaper_n(n: int) -> None:
    if n < 3:
        raise FamilyParameterError(f"wallpaper constructions need n >= 3, got {n}")


def wallpaper_p2(n: int) -> NamedConstruction:
    """p2 = <t1,t2,t3 | ti^2 = (t1 t2 t3)^2 = e>; three symmetries of
    dimension 2n whose composite squared is the scalar conj(w) * 1."""
    _require_wallpaper_n(n)
    om, sh = voiculescu(n)
    eye = np.eye(n, dtype=np.complex128)
    t1 = np.block([[_zeros(n), om], [adjoint(om), _zeros(n)]])
    t2 = np.block([[_zeros(n), sh], [adjoint(sh), _zeros(n)]])
    t3 = np.block([[_zeros(n), eye], [eye, _zeros(n)]])
    pres = _presentation(
        "p2",
        ["t1", "t2", "t3"],
        ["t1^2", "t2^2", "t3^2", "t1 t2 t3 t1 t2 t3"],
    )
    return _construction(
        "p2", n, pres, [t1, t2, t3],
        ["t1 t2 t3 t1^-1 t2^-1 t3^-1"], [-2],
        "t1 t2 t3 t1^-1 t2^-1 t3^-1", 1,
    )


def wallpaper_p4(n: int) -> NamedConstruction:
    """p4 = <r,t | r^4 = t^2 = (rt)^4 = e>; dimension 4n, (RT)^4 equals the
    scalar conj(w)^2 * 1."""
    _require_wallpaper_n(n)
    om, sh = voiculescu(n)
    z = _zeros(n)
    ish, iom = adjoint(sh), adjoint(om)
    r = np.block([[z, z, z, sh], [sh, z, z, z], [z, ish, z, z], [z, z, ish, z]])
    t = np.block([[z, z, om, z], [z, z, z, om], [iom, z, z, z], [z, iom, z, z]])
    pres = _presentation("p4", ["r", "t"], ["r^4", "t^2", "r t r t r t r t"])
    return _construction(
        "p4", n, pres, [r, t],
        ["r^-3 t r t r t^-1 r t^-1"], [-8],
        "r^-3 t r t r t^-1 r t^-1", 2,
    )


def wallpaper_p3(n: int) -> NamedConstruction:
    """p3 = <r,t | r^3 = t^3 = (rt)^3 = e>; dimension 3n, (RT)^3 equals the
    scalar conj(w) * 1."""
    _require_wallpaper_n(n)
    om, sh = voiculescu(n)
    z = _zeros(n)
    eye = np.eye(n, dtype=np.complex128)
    r = np.block([[z, z, adjoint(sh)], [sh, z, z], [z, eye, z]])
    t = np.block([[z, z, eye], [om, z, z], [z, adjoint(om), z]])
    pres = _presentation("p3", ["r", "t"], ["r^3", "t^3", "r t r t r t"])
    return _construction(
        "p3", n, pres, [r, t],
        ["r^-2 t^-2 r t r t"], [-3],
        "r^-2 t^-2 r t r t", 1,
    )


def wallpaper_p6(n: int) -> NamedConstruction:
    """p6 = <r,t | r^3 = t^2 = (rt)^6 = e>; dimension 6n, (RT)^6 equals the
    scalar conj(w)^2 * 1."""
    _require_wallpaper_n(n)
    om, sh = voiculescu(n)
    z = _zeros(n)
    eye = np.eye(n, dtype=np.complex128)
    ish, iom = adjoint(sh), adjoint(om)
    r = np.block([
        [z, z, z, z, ish, z],
        [z, z, z, z, z, ish],
        [sh, z, z, z, z, z],
        [z, sh, z, z, z, z],
        [z, z, eye, z, z, z],
        [z, z, z, eye, z, z],
    ])
    t = np.block([
        [z, z, z, om, z, z],
        [z, z, z, z, om, z],
        [z, z, z, z, z, om],
        [iom, z, z, z, z, z],
        [z, iom, z, z, z, z],
        [z, z, iom, z, z, z],
    ])
    pres = _presentation(
        "p6", ["r", "t"], ["r^3", "t^2", "r t r t r t r t r t r t"]
    )
    return _construction(
        "p6", n, pres, [r, t],
        ["r^-2 t r^-2 t^-1 r t r t^-1 r t r t^-1"], [-12],
        "r^-2 t r^-2 t^-1 r t r t^-1 r t r t^-1", 2,
    )


def surface(g: int, n: int) -> NamedConstruction:
    """Genus-g surface group; the clock/shift pair sits in the first handle
    and every further handle carries identities, so the product of
    commutators evaluates to w * 1 (winding +1)."""
    if g < 1:
        raise FamilyParameterError(f"surface genus must be >= 1, got {g}")
    if n < 2:
        raise FamilyParameterError(f"surface construction needs n >= 2, got {n}")
    om, sh = voiculescu(n)
    eye = np.eye(n, dtype=np.complex128)
    gen_names = []
    mats = []
    for i in range(1, g + 1):
        gen_names += [f"a{i}", f"b{i}"]
        if i == 1:
            mats += [om, sh]
        else:
            mats += [eye.copy(), eye.copy()]
    relator = " ".join(f"[a{i},b{i}]" for i in range(1, g + 1))
    pres = _presentation(f"surface genus {g}", gen_names, [relator])
    return _construction("surface", n, pres, mats, [relator], [1], relator, 1, g=g)


def bs_mm(m: int, n: int) -> NamedConstruction:
    """BS(m, m) = <a,b | a b^m a^-1 = b^m> on (Omega_n, S_n).

    Both the defining relator a b^m a^-1 b^-m and the designated test
    relator a^m b a^-m b^-1 evaluate to the scalar w^m * 1; the winding of
    the test relator is m.  Requires n > 2|m| so the defect 2|sin(pi m/n)|
    is below 2 and the test relator's winding is m without aliasing.
    """
    if m == 0:
        raise FamilyParameterError("bs_mm needs m != 0")
    if n <= 2 * abs(m):
        raise FamilyParameterError(f"bs_mm needs n > 2|m|, got m={m}, n={n}")
    om, sh = voiculescu(n)
    pres = _presentation(f"BS({m},{m})", ["a", "b"], [f"a b^{m} a^-1 b^{-m}"])
    test = f"a^{m} b a^{-m} b^-1"
    return _construction("bs_mm", n, pres, [om, sh], [test], [m], test, m, m=m)


def nilpotent(M: int, l: int) -> NamedConstruction:
    """Three-generator slice of a 2-step nilpotent presentation:
    a1 -> A_l, a2 -> S_l, c1 -> B_l with [a1, a2] = c1^M and [a1, c1] = e
    holding exactly, while [c1, a2] evaluates to the scalar conj(w_l) * 1
    (winding -1, defect 2 sin(pi / l)).

    A_l = diag(conj(w)^(M k(k+1)/2)), B_l = diag(conj(w)^k) for
    k = 1..l, and S_l the cyclic shift; l must be odd so the diagonal of
    [A_l, S_l] closes up exactly to B_l^M.
    """
    if M == 0:
        raise FamilyParameterError("nilpotent family needs M != 0")
    if l < 3 or l % 2 == 0:
        raise FamilyParameterError(f"nilpotent family needs odd l >= 3, got {l}")
    ks = np.arange(1, l + 1)
    a_exp = (M * (ks * (ks + 1) // 2)) % l
    a_mat = np.diag(np.exp(-2j * np.pi * a_exp / l))
    b_mat = np.diag(np.exp(-2j * np.pi * (ks % l) / l))
    _, s_mat = voiculescu(l)
    pres = _presentation(
        "nilpotent slice",
        ["a1", "a2", "c1"],
        [f"a1 a2 a1^-1 a2^-1 c1^{-M}", "[a1,c1]", "[a2,c1]"],
    )
    return _construction(
        "nilpotent", l, pres, [a_mat, s_mat, b_mat],
        ["[c1,a2]"], [-1],
        "[c1,a2]", 1, M=M,
    )


def bs23_index_rules(n: int) -> list[tuple[int, int]]:
    """The six (source, target) index families defining the BS(2,3)
    permutation, flattened over k = 0..n-1."""
    if n < 1:
        raise FamilyParameterError(f"bs23 needs n >= 1, got {n}")
    pairs = []
    for k in range(n):
        pairs += [
            (2 * k, 3 * k),
            (2 * k + 1, 3 * k + 1),
            (2 * n + 2 * k, 3 * k + 2),
            (2 * n + 2 * k + 1, 3 * n + 3 * k + 2),
            (4 * n + 2 * k, 3 * n + 3 * k),
            (4 * n + 2 * k + 1, 3 * n + 3 * k + 1),
        ]
    return pairs


def bs23_matrices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The diagonal u_n, the permutation v_n, and the rotation vtilde_n of
    the BS(2,3) almost-representation, each 6n x 6n and exactly unitary.

    u_n e_k = exp(2 pi i k / 6n) e_k (k = 0 included with phase 1); v_n is
    the permutation given by :func:`bs23_index_rules`; vtilde_n rotates
    span{e_0, e_{3n}} by 45 degrees and fixes everything else.
    """
    dim = 6 * n
    pairs = bs23_index_rules(n)
    sources = sorted(src for src, _ in pairs)
    targets = sorted(tgt for _, tgt in pairs)
    if sources != list(range(dim)) or targets != list(range(dim)):
        raise MatrixError("BS(2,3) index families do not partition the basis")
    u = np.diag(np.exp(2j * np.pi * np.arange(dim) / dim))
    v = np.zeros((dim, dim), dtype=np.complex128)
    for src, tgt in pairs:
        v[tgt, src] = 1.0
    vtilde = np.eye(dim, dtype=np.complex128)
    h = 1.0 / np.sqrt(2.0)
    vtilde[0, 0] = h
    vtilde[3 * n, 0] = -h
    vtilde[0, 3 * n] = h
    vtilde[3 * n, 3 * n] = h
    return u, v, vtilde


def bs23(n: int) -> NamedConstruction:
    """Almost-representation of BS(2,3) = <a,b | a b^2 a^-1 = b^3>:
    a -> vtilde_n v_n, b -> u_n in dimension 6n.

    The shipped decaying relator is a b^3 a^-1 b^-2 (the orientation the
    printed permutation actually almost satisfies; the mirror presentation
    is the same group via a -> a^-1).  No homogeneous winding relator is
    designated: the obstruction for this family is the commutator gap of
    :func:`bs23_commutator_gap`, which stays >= sqrt(3) while the relator
    defect decays.
    """
    u, v, vtilde = bs23_matrices(n)
    pres = _presentation("BS(2,3)", ["a", "b"], ["a b^3 a^-1 b^-2"])
    return _construction(
        "bs23", n, pres, [vtilde @ v, u],
        [], [],
        "a b^3 a^-1 b^-2", None,
    )


def bs23_commutator_gap(n: int) -> float:
    """``|| [pi(a b a^-1), pi(b)] - 1 ||`` for the BS(2,3) tuple
    (multiplicative commutator).

    Every finite-dimensional representation kills this commutator, yet here
    its distance from 1 is exactly |1 - exp(4 pi i / 3)| = sqrt(3) for all
    n: the additive commutator is supported on span{e_0, e_{3n}} where it
    restricts to [[0, 1-lambda], [lambda-1, 0]].
    """
    u, v, vtilde = bs23_matrices(n)
    a = vtilde @ v
    aba = a @ u @ adjoint(a)
    mc = aba @ u @ adjoint(aba) @ adjoint(u)
    return float(np.linalg.norm(mc - np.eye(6 * n), 2))


def build_family(name: str, **params) -> NamedConstruction:
    """Build a registered family by name.

    Accepted parameters: ``n`` (all families; plays the role of l for
    ``nilpotent``), ``m`` (bs_mm), ``g`` (surface), ``M`` (nilpotent).
    """
    if name not in FAMILIES:
        raise FamilyParameterError(
            f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}"
        )
    spec = FAMILIES[name]
    kwargs = {}
    for key in spec["params"]:
        if params.get(key) is None:
            if key in spec["defaults"]:
                kwargs[key] = spec["defaults"][key]
            else:
                raise FamilyParameterError(f"family {name!r} needs parameter {key!r}")
        else:
            kwargs[key] = params[key]
    extra = {k for k, v in params.items() if v is not None} - set(spec["params"])
    if extra:
        raise FamilyParameterError(
            f"family {name!r} does not take parameters {sorted(extra)}"
        )
    return spec["build"](**kwargs)


FAMILIES: dict[str, dict] = {
    "voiculescu": {"build": lambda n: voiculescu_pair(n), "params": ("n",), "defaults": {}},
    "p2": {"build": lambda n: wallpaper_p2(n), "params": ("n",), "defaults": {}},
    "p3": {"build": lambda n: wallpaper_p3(n), "params": ("n",), "defaults": {}},
    "p4": {"build": lambda n: wallpaper_p4(n), "params": ("n",), "defaults": {}},
    "p6": {"build": lambda n: wallpaper_p6(n), "params": ("n",), "defaults": {}},
    "surface": {"build": lambda n, g: surface(g, n), "params": ("n", "g"), "defaults": {"g": 1}},
    "bs_mm": {"build": lambda n, m: bs_mm(m, n), "params": ("n", "m"), "defaults": {"m": 1}},
    "nilpotent": {
        "build": lambda n, M: nilpotent(M, n),
        "params": ("n", "M"),
        "defaults": {"M": 1},
    },
    "bs23": {"build": lambda n: bs23(n), "params": ("n",), "defaults": {}},
    "identity": {"build": lambda n: identity_pair(n), "params": ("n",), "defaults": {}},
}
