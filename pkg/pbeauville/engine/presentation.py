"""
Power-conjugate presentations
The data model for finite p-groups and its one-relation-per-line text format
"""
import re
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, model_validator

from pbeauville.errors import PresentationSyntaxError

# A word is a sequence of (generator index, exponent) factors, read left to right.
Word = tuple[tuple[int, int], ...]

# A definition term is ("pow", i, e) for g_i^e or ("comm", i, j) for [g_i, g_j].
DefinitionTerm = tuple[str, int, int]
Definition = tuple[DefinitionTerm, ...]

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power_exponent(n: int, p: int) -> Optional[int]:
    """Return k with n == p**k, or None."""
    if n < 1:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


class PcPresentation(BaseModel):
    """
    A power-conjugate presentation g_1..g_n of a finite p-group.

    power_rels[i] is the word equal to g_i^{r_i} (missing means the identity);
    conj_rels[(i, j)] for i < j is the word equal to g_j^{g_i} = g_i^-1 g_j g_i
    (missing means g_j commutes with g_i).
    """
    model_config = ConfigDict(frozen=True)

    prime: int
    gens: tuple[str, ...]
    rel_orders: tuple[int, ...]
    power_rels: dict[int, Word] = {}
    conj_rels: dict[tuple[int, int], Word] = {}
    distinguished: Optional[tuple[str, str]] = None
    definitions: dict[int, Definition] = {}

    @model_validator(mode="before")
    @classmethod
    def normalize_relations(cls, data):
        # Empty power words and trivial conjugates carry no information; drop them
        # so that equal presentations compare equal after a text round trip.
        if not isinstance(data, dict):
            return data
        data = dict(data)
        power = {}
        for i, word in dict(data.get("power_rels") or {}).items():
            word = tuple((k, e) for k, e in word if e != 0)
            if word:
                power[i] = word
        conj = {}
        for (i, j), word in dict(data.get("conj_rels") or {}).items():
            word = tuple((k, e) for k, e in word if e != 0)
            if word != ((j, 1),):
                conj[(i, j)] = word
        data["power_rels"] = power
        data["conj_rels"] = conj
        return data

    @model_validator(mode="after")
    def check_relations(self):
        p = self.prime
        if not is_prime(p):
            raise ValueError(f"prime must be a prime number, got {p}")
        n = len(self.gens)
        if len(self.rel_orders) != n:
            raise ValueError("gens and rel_orders must have the same length")
        if len(set(self.gens)) != n:
            raise ValueError("generator names must be distinct")
        for name, r in zip(self.gens, self.rel_orders):
            k = prime_power_exponent(r, p)
            if k is None or k < 1:
                raise ValueError(f"relative order of {name} must be a positive power of {p}, got {r}")
        for i, word in self.power_rels.items():
            if not 0 <= i < n:
                raise ValueError(f"power relation for unknown generator index {i}")
            if any(k <= i or k >= n for k, _ in word):
                raise ValueError(f"power relation of {self.gens[i]} may only use later generators")
        for (i, j), word in self.conj_rels.items():
            if not 0 <= i < j < n:
                raise ValueError(f"conjugate relation ({i}, {j}) needs i < j < {n}")
            if any(k < j or k >= n for k, _ in word):
                raise ValueError(
                    f"conjugate {self.gens[j]}^{self.gens[i]} may only use generators from {self.gens[j]} on")
        if self.distinguished is not None:
            first, second = self.distinguished
            if first not in self.gens or second not in self.gens or first == second:
                raise ValueError(f"distinguished pair {self.distinguished} must name two distinct generators")
        available = set(self.distinguished_indices())
        for i in sorted(self.definitions):
            if not 0 <= i < n:
                raise ValueError(f"definition for unknown generator index {i}")
            for kind, a, b in self.definitions[i]:
                if kind == "pow":
                    used = (a,)
                elif kind == "comm":
                    used = (a, b)
                else:
                    raise ValueError(f"unknown definition term {kind!r}")
                missing = [self.gens[u] for u in used if u not in available]
                if missing:
                    raise ValueError(f"definition of {self.gens[i]} uses undefined generators {missing}")
            available.add(i)
        return self

    def index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise ValueError(f"Unknown generator: {name}")

    def distinguished_indices(self) -> tuple[int, ...]:
        if self.distinguished is None:
            return ()
        return tuple(self.index(name) for name in self.distinguished)

    @property
    def order(self) -> int:
        result = 1
        for r in self.rel_orders:
            result *= r
        return result


# ---------------------------------------------------------------------------
# Text format
#
#   # comment
#   prime 2;
#   gen x order 4;
#   distinguished x y;
#   pow y = z^2 w;          (empty right-hand side = identity)
#   conj y^x = y z;         (y^x means x^-1 y x)
#   def z = [y, x];         (commutator [u, v] = u^-1 v^-1 u v)
# ---------------------------------------------------------------------------

_STATEMENTS = {
    "prime": re.compile(r"prime\s+(\d+)"),
    "gen": re.compile(rf"gen\s+({_NAME})\s+order\s+(\d+)"),
    "distinguished": re.compile(rf"distinguished\s+({_NAME})\s+({_NAME})"),
    "pow": re.compile(rf"pow\s+({_NAME})\s*=\s*(.*)"),
    "conj": re.compile(rf"conj\s+({_NAME})\s*\^\s*({_NAME})\s*=\s*(.*)"),
    "def": re.compile(rf"def\s+({_NAME})\s*=\s*(.*)"),
}
_FACTOR = re.compile(rf"({_NAME})(?:\^(-?\d+))?$")
_COMM = re.compile(rf"\[\s*({_NAME})\s*,\s*({_NAME})\s*\]")


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.endswith(";"):
            raise PresentationSyntaxError("statement must end with ';'", lineno)
        body = line[:-1].strip()
        keyword = body.split(None, 1)[0]
        pattern = _STATEMENTS.get(keyword)
        match = pattern.fullmatch(body) if pattern else None
        if match is None:
            raise PresentationSyntaxError(f"cannot parse {body!r}", lineno)
        yield lineno, keyword, match.groups()


def _parse_word(text: str, index: dict[str, int], lineno: int) -> Word:
    factors = []
    for token in text.split():
        match = _FACTOR.match(token)
        if match is None or match.group(1) not in index:
            raise PresentationSyntaxError(f"bad word factor {token!r}", lineno)
        factors.append((index[match.group(1)], int(match.group(2) or 1)))
    return tuple(factors)


def _parse_definition(text: str, index: dict[str, int], lineno: int) -> Definition:
    terms = []
    rest = text.strip()
    while rest:
        comm = _COMM.match(rest)
        if comm:
            a, b = comm.groups()
            if a not in index or b not in index:
                raise PresentationSyntaxError(f"unknown generator in {comm.group(0)!r}", lineno)
            terms.append(("comm", index[a], index[b]))
            rest = rest[comm.end():].lstrip()
            continue
        token, _, rest = rest.partition(" ")
        rest = rest.lstrip()
        (i, e), = _parse_word(token, index, lineno)
        terms.append(("pow", i, e))
    if not terms:
        raise PresentationSyntaxError("empty definition", lineno)
    return tuple(terms)


def parse_presentation(text: str) -> PcPresentation:
    """Parse the text format into a validated PcPresentation."""
    statements = list(_statements(text))

    prime = None
    gens: list[str] = []
    orders: list[int] = []
    for lineno, keyword, groups in statements:
        if keyword == "prime":
            if prime is not None:
                raise PresentationSyntaxError("prime declared twice", lineno)
            prime = int(groups[0])
        elif keyword == "gen":
            if groups[0] in gens:
                raise PresentationSyntaxError(f"generator {groups[0]} declared twice", lineno)
            gens.append(groups[0])
            orders.append(int(groups[1]))
    if prime is None:
        raise PresentationSyntaxError("missing 'prime' statement")

    index = {name: i for i, name in enumerate(gens)}

    def lookup(name: str, lineno: int) -> int:
        if name not in index:
            raise PresentationSyntaxError(f"unknown generator {name}", lineno)
        return index[name]

    power_rels: dict[int, Word] = {}
    conj_rels: dict[tuple[int, int], Word] = {}
    definitions: dict[int, Definition] = {}
    distinguished = None
    for lineno, keyword, groups in statements:
        if keyword == "pow":
            power_rels[lookup(groups[0], lineno)] = _parse_word(groups[1], index, lineno)
        elif keyword == "conj":
            j, i = lookup(groups[0], lineno), lookup(groups[1], lineno)
            if not i < j:
                raise PresentationSyntaxError(f"conjugate {groups[0]}^{groups[1]} needs the exponent generator first", lineno)
            conj_rels[(i, j)] = _parse_word(groups[2], index, lineno)
        elif keyword == "def":
            definitions[lookup(groups[0], lineno)] = _parse_definition(groups[1], index, lineno)
        elif keyword == "distinguished":
            lookup(groups[0], lineno)
            lookup(groups[1], lineno)
            distinguished = (groups[0], groups[1])

    try:
        return PcPresentation(
            prime=prime,
            gens=tuple(gens),
            rel_orders=tuple(orders),
            power_rels=power_rels,
            conj_rels=conj_rels,
            distinguished=distinguished,
            definitions=definitions,
        )
    except ValueError as e:
        raise PresentationSyntaxError(str(e))


def _format_word(pres: PcPresentation, word: Word) -> str:
    return " ".join(pres.gens[k] if e == 1 else f"{pres.gens[k]}^{e}" for k, e in word)


def _format_definition(pres: PcPresentation, definition: Definition) -> str:
    parts = []
    for kind, a, b in definition:
        if kind == "comm":
            parts.append(f"[{pres.gens[a]}, {pres.gens[b]}]")
        else:
            parts.append(pres.gens[a] if b == 1 else f"{pres.gens[a]}^{b}")
    return " ".join(parts)


def format_presentation(pres: PcPresentation) -> str:
    """Canonical text form; parse_presentation(format_presentation(p)) == p."""
    lines = [f"prime {pres.prime};"]
    lines += [f"gen {g} order {r};" for g, r in zip(pres.gens, pres.rel_orders)]
    if pres.distinguished:
        lines.append(f"distinguished {pres.distinguished[0]} {pres.distinguished[1]};")
    for i in sorted(pres.power_rels):
        lines.append(f"pow {pres.gens[i]} = {_format_word(pres, pres.power_rels[i])};")
    for i, j in sorted(pres.conj_rels):
        lines.append(f"conj {pres.gens[j]}^{pres.gens[i]} = {_format_word(pres, pres.conj_rels[(i, j)])};")
    for i in sorted(pres.definitions):
        lines.append(f"def {pres.gens[i]} = {_format_definition(pres, pres.definitions[i])};")
    return "\n".join(lines) + "\n"


def load_presentation(path: Union[str, Path]) -> PcPresentation:
    with open(path, 'r') as f:
        return parse_presentation(f.read())


DATA_DIR = Path(__file__).parent.parent / "data" / "presentations"


def packaged_presentation(name: str) -> PcPresentation:
    """Load one of the presentations shipped in pbeauville/data/presentations."""
    path = DATA_DIR / f"{name}.pc"
    if not path.exists():
        raise ValueError(f"Unknown packaged presentation: {name}")
    return load_presentation(path)
