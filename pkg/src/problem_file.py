"""
Problem files and JSON report schemas.

A problem file is one JSON document naming the factor sizes and the three
sigma-algebras A (on X), F and G (on U), each given either by a partition
or by a generating family:

    {"x_size": 2, "u_size": 4,
     "A": {"partition": [[0], [1]]},
     "F": {"partition": [[0, 1], [2, 3]]},
     "G": {"generators": [[0, 1]]}}

An entry with neither key stands for the trivial sigma-algebra.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .core import SigmaAlgebra
from .errors import ProblemFileError, SigmaError
from .lattice import SetFamily, generate


class SigmaSpec(BaseModel):
    """One sigma-algebra entry: a partition, a generating family, or neither."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    partition: Optional[List[List[int]]] = None
    generators: Optional[List[List[int]]] = None

    @model_validator(mode="after")
    def _at_most_one_source(self) -> "SigmaSpec":
        if self.partition is not None and self.generators is not None:
            raise ValueError("give either 'partition' or 'generators', not both")
        return self

    @classmethod
    def from_algebra(cls, C: SigmaAlgebra) -> "SigmaSpec":
        return cls(partition=C.atom_lists())

    def build(self, size: int, name: str) -> SigmaAlgebra:
        """Turn the entry into a SigmaAlgebra on `size` points."""
        if self.partition is not None:
            try:
                return SigmaAlgebra.from_blocks(size, self.partition)
            except SigmaError as e:
                raise ProblemFileError(f"{name}.partition", str(e))
        if self.generators is not None:
            try:
                return generate(SetFamily.from_indices(size, self.generators))
            except SigmaError as e:
                raise ProblemFileError(f"{name}.generators", str(e))
        try:
            return SigmaAlgebra.trivial(size)
        except SigmaError as e:
            raise ProblemFileError(name, str(e))


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    x_size: int = Field(..., ge=1)
    u_size: int = Field(..., ge=1)
    A: SigmaSpec = Field(default_factory=SigmaSpec)
    F: SigmaSpec = Field(default_factory=SigmaSpec)
    G: SigmaSpec = Field(default_factory=SigmaSpec)

    @classmethod
    def from_algebras(cls, A: SigmaAlgebra, F: SigmaAlgebra, G: SigmaAlgebra) -> "ProblemFile":
        return cls(
            x_size=A.size,
            u_size=F.size,
            A=SigmaSpec.from_algebra(A),
            F=SigmaSpec.from_algebra(F),
            G=SigmaSpec.from_algebra(G),
        )

    def algebras(self) -> Tuple[SigmaAlgebra, SigmaAlgebra, SigmaAlgebra]:
        """Build (A, F, G); raises ProblemFileError naming the bad field."""
        return (
            self.A.build(self.x_size, "A"),
            self.F.build(self.u_size, "F"),
            self.G.build(self.u_size, "G"),
        )


def _field_path(loc: Tuple[Union[int, str], ...]) -> str:
    return ".".join(str(part) for part in loc) or "<document>"


def parse_problem(text: str) -> ProblemFile:
    """Parse and fully validate a problem document."""
    try:
        problem = ProblemFile.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        raise ProblemFileError(_field_path(tuple(first["loc"])), first["msg"])
    problem.algebras()
    return problem


def load_problem(path: Union[str, Path]) -> ProblemFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemFileError("", f"cannot read {path}: {e.strerror or e}")
    except UnicodeDecodeError as e:
        raise ProblemFileError("<document>", f"not valid UTF-8 (byte {e.start}): {path}")
    return parse_problem(text)


def dump_problem(problem: ProblemFile) -> str:
    """Compact JSON; parse_problem(dump_problem(p)) == p."""
    return problem.model_dump_json(exclude_none=True)


# ----------------------------------------------------------------------
# Report schemas (--json output)
# ----------------------------------------------------------------------


class CheckReport(BaseModel):
    equal: bool
    same_atoms: bool
    lhs_atoms_are_rectangles: bool
    witness: Optional[List[int]]
    lhs_atoms: List[List[int]]
    rhs_atoms: List[List[int]]
    inclusion_holds: bool
    witness_pairs: Optional[List[Tuple[int, int]]] = None


class DecompositionPair(BaseModel):
    A_i: List[int]
    H_i: List[int]


class DecompositionReport(BaseModel):
    set: List[int]
    in_product: bool
    pairs: List[DecompositionPair] = []
    reconstructed: Optional[bool] = None
    error: Optional[str] = None


class AtomsReport(BaseModel):
    A: List[List[int]]
    F: List[List[int]]
    G: List[List[int]]
    F_meet_G: List[List[int]]
    A_times_F: List[List[int]]
    A_times_G: List[List[int]]
    A_times_F_meet_G: List[List[int]]


class StratumModel(BaseModel):
    x_size: int
    u_size: int
    triples: int
    failures: int


class VerificationReport(BaseModel):
    max_x: int
    max_u: int
    triples_checked: int
    expected_triples: int
    failures: int
    strata: List[StratumModel]
    first_failure: Optional[Dict[str, Any]] = None


def to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


__all__ = [
    "SigmaSpec",
    "ProblemFile",
    "parse_problem",
    "load_problem",
    "dump_problem",
    "CheckReport",
    "DecompositionPair",
    "DecompositionReport",
    "AtomsReport",
    "StratumModel",
    "VerificationReport",
    "to_json",
]
