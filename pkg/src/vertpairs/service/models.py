"""Request/response models for the HTTP service (and the in-process CLI)."""

from __future__ import annotations

from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_serializer


class InsertionSpec(BaseModel):
    """One divisorial descendent insertion: degree alpha, pairing kappa.D
    as a canonical rational string."""

    alpha: int = Field(ge=0)
    pairing: str = "1"

    @field_validator("pairing")
    @classmethod
    def _rational(cls, v: str) -> str:
        return str(Fraction(v))

    def pairing_value(self) -> Fraction:
        return Fraction(self.pairing)


class SeriesTerm(BaseModel):
    exp: int
    t_exp: int
    re: str
    im: str


class SeriesDoc(BaseModel):
    """Wire form of a series: scaled integer exponents, canonical rational
    coefficient strings, truncation (null = exact).  Windowed Laurent
    objects carry an extra window field."""

    variable: str
    exponent_denominator: int
    terms: list[SeriesTerm]
    truncation: Optional[int] = None
    window: Optional[list[int]] = None

    @model_serializer(mode="wrap")
    def _drop_absent_window(self, handler):
        data = handler(self)
        if data.get("window") is None:
            data.pop("window", None)
        return data


class GaussEntry(BaseModel):
    re: str
    im: str


class PairsRequest(BaseModel):
    d: int = Field(ge=1)
    h: int = Field(ge=0)
    chi_parity: Literal["even", "odd"]
    insertions: list[InsertionSpec] = Field(default_factory=list)
    oracle: bool = False
    window: Optional[tuple[int, int]] = None


class OracleReport(BaseModel):
    window: tuple[int, int]
    match: bool
    bruteforce: SeriesDoc


class PairsResponse(BaseModel):
    t_power: int
    exact: bool
    series: SeriesDoc
    oracle: Optional[OracleReport] = None


class GwRequest(BaseModel):
    d: int = Field(ge=1)
    h: int = Field(ge=0)
    chi_parity: Literal["even", "odd"]
    order: int = Field(ge=1)
    insertions: list[InsertionSpec] = Field(default_factory=list)


class GwResponse(BaseModel):
    t_power: int
    series: SeriesDoc
    valuation: Optional[int]
    conjecture_conditional: bool


class HurwitzRequest(BaseModel):
    d: int = Field(ge=1)
    h: int = Field(ge=0)
    chi_parity: Literal["even", "odd"]


class HurwitzResponse(BaseModel):
    value: str


class MpCheckRequest(BaseModel):
    d: Literal[1, 2]
    h: int = Field(ge=0)
    chi_parity: Literal["even", "odd"]
    insertions: list[InsertionSpec] = Field(default_factory=list)


class MpCheckResponse(BaseModel):
    match: bool
    pipeline_value: str
    closed_value: str
    conjecture_conditional: bool = True


class MatricesRequest(BaseModel):
    size: int = Field(ge=1)


class MatricesResponse(BaseModel):
    size: int
    K: list[list[GaussEntry]]
    L: list[list[GaussEntry]]
    inverse_check: bool
    conjecture_conditional: bool = True


class AppendixRequest(BaseModel):
    alpha_max: int = Field(ge=1)
    pix: bool = False
    x_order: int = Field(default=21, ge=1)
    v_order: int = Field(default=9, ge=1)


class AppendixAlphaReport(BaseModel):
    alpha: int
    order_ok: bool
    leading: str
    solve_matches: bool


class AppendixResponse(BaseModel):
    reports: list[AppendixAlphaReport]
    pix_ok: Optional[bool] = None
    passed: bool


class VerifyRequest(BaseModel):
    suite: Literal["all", "oracle", "symmetry", "gw", "mp", "appendix"] = "all"


class CheckReport(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    suite: str
    passed: bool
    total: int
    failed: int
    checks: list[CheckReport]
