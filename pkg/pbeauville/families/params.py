"""
Family parameters
Tagged union of the group families, serializable as {"family": ..., ...}
"""
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from pbeauville.engine.presentation import is_prime
from pbeauville.errors import InvalidParams


class _Params(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    def label(self) -> str:
        values = ",".join(str(v) for k, v in self.model_dump().items() if k != "family")
        return f"{self.family}({values})"


class _PrimeParams(_Params):
    p: int

    @model_validator(mode="after")
    def check_prime(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        return self


class Metacyclic(_PrimeParams):
    """<a, b | a^{p^e} = b^{p^e} = 1, [a, b] = a^{p^i}> with 1 <= i <= e-1."""
    family: Literal["metacyclic"] = "metacyclic"
    e: int
    i: int

    @model_validator(mode="after")
    def check_ranges(self):
        if not 1 <= self.i <= self.e - 1:
            raise ValueError(f"metacyclic needs 1 <= i <= e-1, got e={self.e}, i={self.i}")
        return self


class Class2FiveTuple(_PrimeParams):
    """Two-generator class-2 group of the five-tuple (alpha, beta, gamma; rho, sigma)."""
    family: Literal["class2_five_tuple"] = "class2_five_tuple"
    alpha: int
    beta: int
    gamma: int
    rho: int
    sigma: int

    @model_validator(mode="after")
    def check_ranges(self):
        if not self.alpha >= self.beta >= self.gamma >= 1:
            raise ValueError("five-tuple needs alpha >= beta >= gamma >= 1")
        if not (0 <= self.rho <= self.gamma and 0 <= self.sigma <= self.gamma):
            raise ValueError("five-tuple needs 0 <= rho, sigma <= gamma")
        return self

    @property
    def order(self) -> int:
        return self.p ** (self.alpha + self.beta + self.gamma)


class Class2Beauville(_PrimeParams):
    """<a, b | a^{p^e} = [b,a]^{p^j} = 1, [b,a] central, b^{p^i} = [b,a]^{p^k}> with e = i + j - k."""
    family: Literal["class2_beauville"] = "class2_beauville"
    e: int
    i: int
    j: int
    k: int

    @model_validator(mode="after")
    def check_ranges(self):
        if not 0 <= self.k <= self.j <= self.i <= self.e:
            raise ValueError("class2_beauville needs 0 <= k <= j <= i <= e")
        if self.e != self.i + self.j - self.k:
            raise ValueError("class2_beauville needs e = i + j - k")
        if self.j < 1:
            raise ValueError("class2_beauville needs j >= 1 (otherwise the group is abelian)")
        return self


class SpecialClass2(_PrimeParams):
    """<x, y, z | x^{p^n} = y^{p^n} = z^{p^r} = 1, z central, [x, y] = z> with n >= r >= 1."""
    family: Literal["special_class2"] = "special_class2"
    n: int
    r: int

    @model_validator(mode="after")
    def check_ranges(self):
        if not self.n >= self.r >= 1:
            raise ValueError("special_class2 needs n >= r >= 1")
        return self


class TriangleQuotient(_Params):
    """The class-3 2-group on x, y with z = [y,x], t = [z,x], w = [z,y]; e >= 2."""
    family: Literal["triangle_quotient"] = "triangle_quotient"
    e: int

    @model_validator(mode="after")
    def check_ranges(self):
        if self.e < 2:
            raise ValueError("triangle_quotient needs e >= 2")
        return self

    @property
    def p(self) -> int:
        return 2


class Abelian(_PrimeParams):
    """C_{p^e} x C_{p^e}."""
    family: Literal["abelian"] = "abelian"
    e: int

    @model_validator(mode="after")
    def check_ranges(self):
        if self.e < 1:
            raise ValueError("abelian needs e >= 1")
        return self


FamilyParams = Annotated[
    Union[Metacyclic, Class2FiveTuple, Class2Beauville, SpecialClass2, TriangleQuotient, Abelian],
    Field(discriminator="family"),
]

_ADAPTER = TypeAdapter(FamilyParams)

FAMILY_NAMES = ("metacyclic", "class2_five_tuple", "class2_beauville", "special_class2", "triangle_quotient", "abelian")

# Short names accepted on the command line.
_ALIASES = {
    "five_tuple": "class2_five_tuple",
    "class2": "class2_beauville",
    "triangle": "triangle_quotient",
    "special": "special_class2",
}


def normalize_family(name: str) -> str:
    name = name.strip().lower().replace("-", "_")
    name = _ALIASES.get(name, name)
    if name not in FAMILY_NAMES:
        raise InvalidParams(f"Unknown family: {name}")
    return name


def parse_params(data: dict[str, Any]) -> FamilyParams:
    """Validate a {"family": ..., ...} mapping, raising InvalidParams on any violation."""
    data = dict(data)
    if "family" not in data:
        raise InvalidParams("params need a 'family' field")
    data["family"] = normalize_family(str(data["family"]))
    try:
        return _ADAPTER.validate_python(data)
    except ValidationError as e:
        messages = "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())
        raise InvalidParams(f"Invalid {data['family']} parameters: {messages}")


def make_params(family: str, **fields: Any) -> FamilyParams:
    return parse_params({"family": family, **fields})


def params_to_json(params: FamilyParams) -> dict[str, Any]:
    return {"family": params.family, **params.model_dump(exclude={"family"})}
