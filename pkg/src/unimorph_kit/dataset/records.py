"""
Dataset Records
Value types shared by the dataset readers, validators and every command that
reports per-row problems.
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from unimorph_kit.schema.features import FeatureBundle


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Diagnostic(BaseModel):
    """A problem attached to one input line."""

    model_config = ConfigDict(frozen=True)

    line_number: int = Field(ge=1)
    severity: Severity
    code: str
    message: str
    path: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.severity == Severity.ERROR

    def format(self) -> str:
        location = f"{self.path}:{self.line_number}" if self.path else f"line {self.line_number}"
        return f"{location}: {self.severity.value}: {self.code}: {self.message}"


class InflectionRecord(BaseModel):
    """One lemma/form/features row, optionally with its morph segmentation."""

    model_config = ConfigDict(frozen=True)

    lemma: str = Field(min_length=1)
    form: str = Field(min_length=1)
    features: FeatureBundle
    segmentation: Optional[tuple[str, ...]] = Field(
        default=None, description="Morphs in surface order"
    )
    feature_segmentation: Optional[str] = Field(
        default=None, description="Features column with '|' between morph slots, kept verbatim"
    )
    line_number: Optional[int] = Field(default=None, exclude=True)


class PosCounts(BaseModel):
    lemmas: int = 0
    forms: int = 0


class DatasetStats(BaseModel):
    """Distinct lemma count and row count, overall and per part of speech."""

    lemma_count: int = 0
    form_count: int = 0
    per_pos_counts: dict[str, PosCounts] = Field(default_factory=dict)
    missing_pos: list[Diagnostic] = Field(default_factory=list)

    def summary(self) -> str:
        return f"lemmas={self.lemma_count} forms={self.form_count}"
