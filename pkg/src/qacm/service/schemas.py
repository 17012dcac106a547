"""Pydantic request/response models for the qacm service."""

from __future__ import annotations

from pydantic import BaseModel, Field


# ---------------------------------------------------------------- requests


class BaseRequest(BaseModel):
    session_text: str | None = None
    # accepted for interface parity with the CLI; all operations are
    # deterministic and ignore it
    seed: int | None = None


class AboutRequest(BaseRequest):
    about: str


class WindowRequest(AboutRequest):
    window: tuple[int, int] | None = None


class E0Request(BaseRequest):
    line: str | None = None


class MfRequest(BaseRequest):
    about: str = "E0"


class PeriodicityRequest(BaseRequest):
    about: str = "E0"
    window: tuple[int, int] | None = None


class LinkRequest(AboutRequest):
    ci: list[str] = Field(min_length=2, max_length=2)


class SameClassRequest(AboutRequest):
    other: str


# --------------------------------------------------------------- responses


class MapInfo(BaseModel):
    source_twists: list[int]
    target_twists: list[int]
    entries: list[list[str]]


class GbResponse(BaseModel):
    ambient: str
    basis: list[str]


class PolynomialInfo(BaseModel):
    degree: int
    binomial: list[int]
    expanded: list[str]
    stabilizes_at: int


class HilbertResponse(BaseModel):
    window: tuple[int, int]
    values: list[int]
    polynomial: PolynomialInfo | None


class CohomologyResponse(BaseModel):
    window: tuple[int, int]
    h0: list[int]
    h1: str
    h2: str
    pd_s: int
    depth: int


class BettiResponse(BaseModel):
    acm: bool | None = None
    mcm: bool | None = None
    saturated: bool | None = None
    pd_s: int
    hilbert_degree: int | None = None
    betti: dict[str, dict[str, int]]


class RegularityResponse(BaseModel):
    regularity: int


class EtypeResponse(BaseModel):
    middle_twists: list[int]
    kernel_generators: list[str]
    kernel_generator_degrees: list[int]
    kernel_relation_degrees: list[int]
    window: tuple[int, int]


class E0Response(BaseModel):
    generator_degrees: list[int]
    generators: list[str]
    presentation: MapInfo


class MfResponse(BaseModel):
    free: bool
    size: int
    quadric: str
    a: MapInfo | None
    b: MapInfo | None


class PeriodicityResponse(BaseModel):
    periodic: bool
    window: tuple[int, int]


class DecomposeResponse(BaseModel):
    matched: bool
    free_twists: list[int]
    e0_twists: list[int]
    detail: str


class LinkResponse(BaseModel):
    linked_generators: list[str]
    ci_degrees: tuple[int, int]
    degree_sum: int
    ci_degree: int
    degrees_add_up: bool


class FingerprintResponse(BaseModel):
    ci_class: bool
    e0_shifts: list[int]


class SameClassResponse(BaseModel):
    same: bool
    left: FingerprintResponse
    right: FingerprintResponse


class DegreeGenusResponse(BaseModel):
    degree: int
    genus: int


class InfoResponse(BaseModel):
    name: str
    version: str
    endpoints: list[str]
