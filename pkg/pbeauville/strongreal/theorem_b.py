"""
Constructive witnesses for triangle quotients
Builds θ, g1, g2 for any Beauville structure of the class-3 quotient of the (2^e, 2^e, 2^e) triangle group
"""
import logging

from pydantic import BaseModel, ConfigDict, model_validator

from pbeauville.beauville.sigma import GeneratingPair
from pbeauville.beauville.structures import BeauvilleStructure
from pbeauville.engine.frattini import frattini_quotient
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.errors import WitnessVerificationFailed, WrongForm
from pbeauville.strongreal.automorphisms import (
    Automorphism,
    extend_to_automorphism,
    inversion_automorphism,
    relations_hold,
)
from pbeauville.strongreal.decision import StrongRealWitness, is_strong_real_witness
from pbeauville.strongreal.witness import (
    basis_change_transfer,
    inversion_witness,
    is_inversion_witness,
    require_triangle,
)

logger = logging.getLogger("pbeauville.strongreal")


class CongruenceParams(BaseModel):
    """
    Exponents of u = x^{1+2 i1} y^{2 j1} z^{k1} and v = y^{1+2 j2} x^{2 i2} z^{k2},
    with n and m the inverses of 1 + 2 i1 and 1 + 2 j2 modulo 2^e.
    """
    model_config = ConfigDict(frozen=True)

    e: int
    i1: int
    j1: int
    k1: int
    i2: int
    j2: int
    k2: int
    n: int
    m: int

    @model_validator(mode="after")
    def check_inverses(self):
        modulus = 2 ** self.e
        if self.e < 2:
            raise ValueError(f"e must be at least 2, got {self.e}")
        if (1 + 2 * self.i1) * self.n % modulus != 1:
            raise ValueError("n is not the inverse of 1 + 2 i1 modulo 2^e")
        if (1 + 2 * self.j2) * self.m % modulus != 1:
            raise ValueError("m is not the inverse of 1 + 2 j2 modulo 2^e")
        return self

    @classmethod
    def from_exponents(cls, e: int, i1: int, j1: int, k1: int, i2: int, j2: int, k2: int) -> "CongruenceParams":
        modulus = 2 ** e
        return cls(
            e=e, i1=i1, j1=j1, k1=k1, i2=i2, j2=j2, k2=k2,
            n=pow(1 + 2 * i1, -1, modulus), m=pow(1 + 2 * j2, -1, modulus),
        )


def decompose_uv(G: GroupTable, u: Element, v: Element) -> CongruenceParams:
    """
    Read (i1, j1, k1) and (i2, j2, k2) off the normal forms of u and v, modulo Z(G) = <t, w>.

    Raises:
        WrongForm: u is not in <x, Φ(G)> minus Φ(G), or v not in <y, Φ(G)> minus Φ(G)
    """
    params = require_triangle(G)
    if u[0] % 2 == 0 or u[1] % 2:
        raise WrongForm("u needs an odd exponent of x and an even exponent of y")
    if v[0] % 2 or v[1] % 2 == 0:
        raise WrongForm("v needs an even exponent of x and an odd exponent of y")
    low = 2 ** (params.e - 1)
    # x^a y^b z^c = y^b x^a z^{c - ab} modulo Z(G).
    return CongruenceParams.from_exponents(
        params.e,
        i1=(u[0] - 1) // 2, j1=u[1] // 2, k1=u[2],
        i2=v[0] // 2, j2=(v[1] - 1) // 2, k2=(v[2] - v[0] * v[1]) % low,
    )


def solve_rs(params: CongruenceParams) -> tuple[int, int]:
    """
    (R, S) modulo 2^e with
        (1 + 2 i1) S ≡ 2 i2 (R - 1) - 2 k2 m
        2 j1 (S - 1) + 2 k1 n ≡ (1 + 2 j2) R.

    Eliminating S leaves R with the odd coefficient (1 + 2 i1)(1 + 2 j2) - 4 i2 j1.
    """
    q = 2 ** params.e
    i1, j1, k1, i2, j2, k2, n, m = (params.i1, params.j1, params.k1, params.i2, params.j2, params.k2, params.n, params.m)
    D = (1 + 2 * i1) * (1 + 2 * j2) - 4 * i2 * j1
    rhs = (1 + 2 * i1) * (2 * k1 * n - 2 * j1) - 4 * j1 * i2 - 4 * j1 * k2 * m
    R = rhs * pow(D, -1, q) % q
    S = n * (2 * i2 * (R - 1) - 2 * k2 * m) % q
    return R, S


def congruences_hold(params: CongruenceParams, R: int, S: int) -> dict[str, bool]:
    """The x, y and z exponent congruences for a candidate (R, S)."""
    q, half = 2 ** params.e, 2 ** (params.e - 1)
    i1, j1, k1, i2, j2, k2, n, m = (params.i1, params.j1, params.k1, params.i2, params.j2, params.k2, params.n, params.m)
    return {
        "powers_of_x": ((1 + 2 * i1) * S - (2 * i2 * (R - 1) - 2 * k2 * m)) % q == 0,
        "powers_of_y": (2 * j1 * (S - 1) + 2 * k1 * n - (1 + 2 * j2) * R) % q == 0,
        "powers_of_z": ((1 + 2 * i1) * j1 * S * (S - 1) + k1 * S
                        - ((1 + 2 * j2) * i2 * R * (R - 1) - k2 * R)) % half == 0,
    }


def pair_witness(G: GroupTable, u: Element, v: Element) -> Element:
    """g with θ(u) = (u^-1)^g and θ(v) = (v^-1)^g for θ the inversion automorphism, namely u^S y^{2 k1 n - 2 j1}."""
    params = decompose_uv(G, u, v)
    _, S = solve_rs(params)
    tail = G.power_of(G.named["y"], 2 * params.k1 * params.n - 2 * params.j1)
    return G.multiply(G.power_of(u, S), tail)


def _basis_witness(G: GroupTable, iota: Automorphism, x: Element, y: Element) -> Element:
    # Among x, y and xy pick a in <x, Φ> and b in <y, Φ>; any two of the three span.
    quotient = frattini_quotient(G)
    xy = G.multiply(x, y)
    named = {quotient.coords(w): (label, w) for label, w in (("x", x), ("y", y), ("xy", xy))}
    (a_label, a), (b_label, b) = named[(1, 0)], named[(0, 1)]
    h = pair_witness(G, a, b)
    labels = {a_label, b_label}
    if labels == {"x", "y"}:
        return h
    basis = "xy_x" if "x" in labels else "xy_y"
    return basis_change_transfer(G, iota, x, y, basis, h)


class TriangleWitnessBuilder:
    """
    Strongly real witnesses for every structure with a given first pair.

    ψ sends the distinguished pair to the first pair; θ = ψ ∘ ι ∘ ψ^-1 with ι the
    inversion automorphism, g1 = 1, and g2 is ψ of the constructive witness for
    the second pair pulled back through ψ.
    """

    def __init__(self, G: GroupTable, pair1: GeneratingPair):
        require_triangle(G)
        self.G = G
        self.pair1 = pair1
        psi = extend_to_automorphism(G, pair1.x, pair1.y)
        if psi is None:
            raise WitnessVerificationFailed("first pair does not extend to an automorphism", {"pair1": pair1.to_json()})
        self.psi = psi
        self.psi_inv = psi.inverse()
        self.iota = inversion_automorphism(G)
        self.theta = psi.compose(self.iota.compose(self.psi_inv))
        if not (relations_hold(G, self.theta.images) and is_inversion_witness(G, self.theta, pair1.x, pair1.y, G.identity)):
            raise WitnessVerificationFailed("conjugated inversion does not invert the first pair", {"pair1": pair1.to_json()})

    def witness(self, pair2: GeneratingPair) -> StrongRealWitness:
        """
        Raises:
            WitnessVerificationFailed: neither the construction nor an exhaustive search produced g2
        """
        G, theta = self.G, self.theta
        x2, y2 = self.psi_inv.apply(pair2.x), self.psi_inv.apply(pair2.y)
        try:
            g2 = self.psi.apply(_basis_witness(G, self.iota, x2, y2))
            if is_inversion_witness(G, theta, pair2.x, pair2.y, g2):
                return StrongRealWitness(theta, G.identity, g2)
            logger.warning(f"Constructive witness failed verification for {pair2.to_json()}")
        except (ValueError, RuntimeError) as e:
            logger.warning(f"Constructive witness construction failed: {e}")

        g2 = inversion_witness(G, theta, pair2.x, pair2.y)
        if g2 is not None:
            logger.warning("Using exhaustive witness in place of the constructive one")
            return StrongRealWitness(theta, G.identity, g2, constructive=False)
        structure = BeauvilleStructure(self.pair1, pair2)
        raise WitnessVerificationFailed("no inversion witness for the second pair", {"structure": structure.to_json()})


def theorem_b_witness(G: GroupTable, structure: BeauvilleStructure) -> StrongRealWitness:
    """
    A verified strongly real witness for a Beauville structure of a triangle quotient.

    Raises:
        NotTriangleQuotient: G is not a triangle quotient
        WitnessVerificationFailed: neither the construction nor the search produced a witness
    """
    witness = TriangleWitnessBuilder(G, structure.pair1).witness(structure.pair2)
    if not is_strong_real_witness(G, structure, witness):
        raise WitnessVerificationFailed("witness does not satisfy the definition", {"structure": structure.to_json()})
    return witness
