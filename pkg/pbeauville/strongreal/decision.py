"""
Strongly real decision
Witnesses for Beauville structures and the purely (non-)strongly real classification
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Literal, Optional, Sequence

import numpy as np

from pbeauville.beauville.sigma import GeneratingPair
from pbeauville.beauville.structures import (
    BeauvilleStructure,
    count_beauville_structures,
    disjoint_partners,
    is_beauville_structure,
    pair_index,
    random_beauville_structure,
)
from pbeauville.engine.frattini import frattini_quotient
from pbeauville.engine.pcgroup import Element, GroupTable
from pbeauville.errors import SearchBudgetExceeded
from pbeauville.strongreal.automorphisms import (
    Automorphism,
    induced_matrix_mod_frattini,
    is_minus_identity,
    relations_hold,
)
from pbeauville.strongreal.witness import inversion_witness, is_inversion_witness

logger = logging.getLogger("pbeauville.strongreal")

Verdict = Literal["purely_strongly_real", "purely_non_strongly_real", "mixed", "not_beauville", "unknown"]


@dataclass(frozen=True)
class StrongRealWitness:
    """θ with g1, g2 such that g_i θ(x_i) g_i^-1 = x_i^-1 and g_i θ(y_i) g_i^-1 = y_i^-1."""
    theta: Automorphism
    g1: Element
    g2: Element
    constructive: bool = field(default=True, compare=False)

    def to_json(self) -> dict:
        return {"theta": self.theta.to_json(), "g1": list(self.g1), "g2": list(self.g2)}

    @classmethod
    def from_json(cls, G: GroupTable, data: dict) -> "StrongRealWitness":
        g1, g2 = tuple(int(e) for e in data["g1"]), tuple(int(e) for e in data["g2"])
        if not (G.is_element(g1) and G.is_element(g2)):
            raise ValueError("g1 and g2 must be exponent vectors of group elements")
        return cls(Automorphism.from_json(G, data["theta"]), g1, g2)


def is_strong_real_witness(G: GroupTable, structure: BeauvilleStructure, witness: StrongRealWitness) -> bool:
    """Check a witness against the definition, including that θ really is an automorphism."""
    theta = witness.theta
    if not relations_hold(G, theta.images) or not frattini_quotient(G).spans(*theta.images):
        return False
    for pair, g in ((structure.pair1, witness.g1), (structure.pair2, witness.g2)):
        if not is_inversion_witness(G, theta, pair.x, pair.y, g):
            return False
    return True


def find_strong_real_witness(G: GroupTable, structure: BeauvilleStructure, auts: Sequence[Automorphism]) -> Optional[StrongRealWitness]:
    """Search auts for θ admitting inversion witnesses on both pairs; only θ inducing -1 on G/Φ(G) can work."""
    for theta in auts:
        if not is_minus_identity(G, induced_matrix_mod_frattini(G, theta)):
            continue
        h1 = inversion_witness(G, theta, structure.pair1.x, structure.pair1.y)
        if h1 is None:
            continue
        h2 = inversion_witness(G, theta, structure.pair2.x, structure.pair2.y)
        if h2 is None:
            continue
        # θ(x) = (x^-1)^h = h^-1 x^-1 h is the same condition as h θ(x) h^-1 = x^-1.
        return StrongRealWitness(theta, h1, h2, constructive=False)
    return None


def inversion_matrix(G: GroupTable, theta: Automorphism) -> np.ndarray:
    """M[u, g] is True iff (u^-1)^g = θ(u)."""
    tables = G.require_tables()
    everything = np.arange(G.order)
    perm = theta.permutation()
    conjugated = tables.conj(tables.inverse[everything][:, None], everything[None, :])
    return conjugated == perm[:, None]


def witnessed_generating_pair(G: GroupTable, theta: Automorphism) -> Optional[tuple[Element, Element, Element]]:
    """
    Some generating pair (x, y) with an inversion witness g under θ, as (x, y, g), or None.

    For fixed g the elements u with (u^-1)^g = θ(u) contain a generating pair
    exactly when their images in G/Φ(G) meet two different lines.
    """
    quotient = frattini_quotient(G)
    coords = quotient.all_coords()
    p = G.prime
    if quotient.dim != 2:
        raise ValueError("needs a 2-generated group")
    # Line of (a, b) != 0: normalize the first nonzero coordinate to 1.
    lead = np.where(coords[:, 0] % p != 0, coords[:, 0], coords[:, 1]) % p
    lead_inv = np.array([0] + [pow(int(v), -1, p) for v in range(1, p)], dtype=np.int64)[lead]
    normalized = (coords * lead_inv[:, None]) % p
    line = np.where(normalized[:, 0] == 1, normalized[:, 1], p)
    line[lead == 0] = -1
    onehot = np.zeros((G.order, p + 1), dtype=np.int64)
    nonzero = line >= 0
    onehot[np.flatnonzero(nonzero), line[nonzero]] = 1

    M = inversion_matrix(G, theta)
    hits = M.T.astype(np.int64) @ onehot
    good = np.flatnonzero((hits > 0).sum(axis=1) >= 2)
    if not good.size:
        return None
    g = int(good[0])
    members = np.flatnonzero(M[:, g] & nonzero)
    x = int(members[0])
    y = int(next(r for r in members if line[r] != line[x]))
    return G.unrank(x), G.unrank(y), G.unrank(g)


@dataclass
class Classification:
    verdict: Verdict
    structures: int
    strongly_real: int
    sampled: bool = False
    evidence: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "structures": self.structures,
            "strongly_real": self.strongly_real,
            "sampled": self.sampled,
            "evidence": self.evidence,
        }


def _verdict(total: int, strongly_real: int) -> Verdict:
    if total == 0:
        return "not_beauville"
    if strongly_real == total:
        return "purely_strongly_real"
    if strongly_real == 0:
        return "purely_non_strongly_real"
    return "mixed"


def classify_structures(
        G: GroupTable,
        auts: Sequence[Automorphism],
        samples: Optional[int] = None,
        seed: int = 0,
) -> Classification:
    """
    Decide for every Beauville structure whether some θ in auts makes it strongly real.

    Only automorphisms inducing -1 on G/Φ(G) can invert a generating pair up to
    conjugation, so the rest are dropped first. With samples the structures are
    drawn at random; the verdict is then "unknown" unless the sample is mixed
    or no candidate θ is left.

    Args:
        G: A tabled group within limits.exhaustive_order
        auts: Aut(G) or a family of automorphisms known to contain every relevant one
        samples: Number of random structures instead of full enumeration
        seed: Seed for the sampled mode
    """
    limit = G.settings.report.evidence_limit
    candidates = [t for t in auts if is_minus_identity(G, induced_matrix_mod_frattini(G, t))]
    logger.info(f"{len(candidates)} of {len(auts)} automorphisms induce -1 on the Frattini quotient")

    if samples is not None:
        return _classify_sampled(G, candidates, samples, seed)

    index = pair_index(G)
    if not candidates:
        # No structure can be strongly real; count without enumerating.
        total = count_beauville_structures(G)
        evidence = [
            {**structure.to_json(), "strongly_real": False}
            for structure in itertools.islice(_structures_of(G, index), limit)
        ]
        verdict = _verdict(total, 0)
        logger.info(f"✓ Classified {total} structures of group of order {G.order}: {verdict}")
        return Classification(verdict, total, 0, evidence=evidence)

    # witnessed[pair] packs one bit per candidate θ.
    columns = []
    for theta in candidates:
        packed = np.packbits(inversion_matrix(G, theta), axis=1)
        columns.append((packed[index.x] & packed[index.y]).any(axis=1))
    witnessed = np.packbits(np.stack(columns, axis=1), axis=1)

    total = strongly_real = 0
    evidence: list[dict] = []
    for i, js in disjoint_partners(index):
        total += len(js)
        flags = (witnessed[js] & witnessed[i]).any(axis=1)
        strongly_real += int(flags.sum())
        for j, flag in zip(js[:max(0, limit - len(evidence))], flags):
            evidence.append({
                "pair1": index.pair(G, i).to_json(),
                "pair2": index.pair(G, int(j)).to_json(),
                "strongly_real": bool(flag),
            })
    verdict = _verdict(total, strongly_real)
    logger.info(f"✓ Classified {total} structures of group of order {G.order}: {verdict}")
    return Classification(verdict, total, strongly_real, evidence=evidence)


def _structures_of(G: GroupTable, index) -> Iterator[BeauvilleStructure]:
    for i, js in disjoint_partners(index):
        for j in js:
            yield BeauvilleStructure(index.pair(G, i), index.pair(G, int(j)))


def _classify_sampled(G: GroupTable, candidates: list[Automorphism], samples: int, seed: int) -> Classification:
    rng = np.random.default_rng(seed)
    limit = G.settings.report.evidence_limit
    strongly_real = 0
    evidence: list[dict] = []
    for _ in range(samples):
        structure = random_beauville_structure(G, rng)
        if structure is None:
            raise SearchBudgetExceeded("could not draw a random Beauville structure")
        witness = find_strong_real_witness(G, structure, candidates) if candidates else None
        strongly_real += witness is not None
        if len(evidence) < limit:
            evidence.append({**structure.to_json(), "strongly_real": witness is not None})
    if not candidates:
        verdict: Verdict = "purely_non_strongly_real"
    elif 0 < strongly_real < samples:
        verdict = "mixed"
    else:
        verdict = "unknown"
    return Classification(verdict, samples, strongly_real, sampled=True, evidence=evidence)


def structure_from_pairs(G: GroupTable, pair1: GeneratingPair, pair2: GeneratingPair) -> BeauvilleStructure:
    """A verified structure, or ValueError."""
    if not is_beauville_structure(G, pair1, pair2):
        raise ValueError("the two pairs do not form a Beauville structure")
    return BeauvilleStructure(pair1, pair2)
