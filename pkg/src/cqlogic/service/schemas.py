"""Pydantic request/response models for the HTTP service.

Rationals travel as their text form ("p/q" or "p"), subsets as set
literals ("{0,2,5}"), logics and states as whole QLF/QSF documents, so
every payload is exact and round-trips through the file formats.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class EvenLogicRequest(BaseModel):
    n: int = Field(description="even universe size, 2..20")


class LogicResponse(BaseModel):
    qlf: str
    member_count: int


class ClosureRequest(BaseModel):
    mode: Literal["concrete", "delta"]
    generators_qlf: str = Field(description="QLF document whose sets are the generators")


class ValidateLogicRequest(BaseModel):
    qlf: str


class LogicReportResponse(BaseModel):
    is_logic: bool
    contains_x: bool
    complement_closed: bool
    disjoint_union_closed: bool
    difference_closed: bool
    complement_violation: Optional[str] = None
    disjoint_union_violation: Optional[tuple[str, str]] = None


class StatePayload(BaseModel):
    logic_qlf: str
    state_qsf: str


class ValidateStateResponse(BaseModel):
    valid: bool
    violation: Optional[str] = None


class SubadditiveResponse(BaseModel):
    status: Literal["ok", "invalid_state"]
    subadditive: Optional[bool] = None
    witness: Optional[tuple[str, str]] = None
    violation: Optional[str] = None


class ExtendRequest(StatePayload):
    kind: Literal["signed", "state"]


class CertificateEntry(BaseModel):
    index: int = Field(description="member index in canonical order")
    coefficient: str


class ExtendResponse(BaseModel):
    status: Literal["feasible", "infeasible", "invalid_state"]
    unique: Optional[bool] = None
    masses: Optional[list[str]] = None
    certificate: Optional[list[CertificateEntry]] = None
    machine: Optional[str] = None
    violation: Optional[str] = None


class ClassifyResponse(BaseModel):
    status: Literal["ok", "invalid_state"]
    signed_extendable: Optional[bool] = None
    state_extendable: Optional[bool] = None
    subadditive: Optional[bool] = None
    two_valued: Optional[bool] = None
    dirac: Optional[int] = None
    violation: Optional[str] = None


class SampleRequest(BaseModel):
    n: int
    seed: int
    mode: Literal["nonneg", "one_negative"]
    logic_path: str = Field(default="even.qlf", description="path written into the QSF header")


class SampleResponse(BaseModel):
    logic_qlf: str
    state_qsf: str


class SuiteRequest(BaseModel):
    samples_per_size: int = Field(default=20, ge=1, le=500)


class SuiteCheck(BaseModel):
    locus: str
    name: str
    passed: bool
    detail: str


class SuiteResponse(BaseModel):
    all_passed: bool
    checks: list[SuiteCheck]
