"""FastAPI service wrapping the core package.

Every computation the CLI offers is exposed as a POST endpoint taking
QLF/QSF documents in the request body. Domain and format errors map to
HTTP 400; mathematically negative answers (invalid state, infeasible
extension, not subadditive) are regular 200 responses with a status
field, since they are answers, not failures.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CqlogicError
from ..extend import (
    FeasibleExtension,
    classify_state,
    serialize_outcome,
    solve_signed_extension,
    solve_state_extension,
)
from ..exactla import format_rational
from ..setlogic import (
    concrete_closure,
    difference_closure,
    family_from_qlf,
    make_even_logic,
    parse_qlf,
    serialize_qlf,
    set_literal,
    validate_logic,
)
from ..states import (
    is_subadditive,
    sample_state_even,
    serialize_qsf,
    state_from_qsf,
    validate_state,
)
from ..suite import run_suite
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="cqlogic",
        version=__version__,
        description="Finite concrete quantum logics: closures, state validation, "
        "and exact signed-measure/state extension.",
    )

    @app.exception_handler(CqlogicError)
    async def _domain_error(request, exc: CqlogicError):  # noqa: ANN001
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/logic/even", response_model=schemas.LogicResponse)
    def logic_even(request: schemas.EvenLogicRequest) -> schemas.LogicResponse:
        fam = make_even_logic(request.n)
        return schemas.LogicResponse(qlf=serialize_qlf(fam), member_count=len(fam))

    @app.post("/logic/closure", response_model=schemas.LogicResponse)
    def logic_closure(request: schemas.ClosureRequest) -> schemas.LogicResponse:
        doc = parse_qlf(request.generators_qlf)
        close = concrete_closure if request.mode == "concrete" else difference_closure
        fam = close(doc.universe, list(doc.masks))
        return schemas.LogicResponse(qlf=serialize_qlf(fam), member_count=len(fam))

    @app.post("/logic/validate", response_model=schemas.LogicReportResponse)
    def logic_validate(request: schemas.ValidateLogicRequest) -> schemas.LogicReportResponse:
        fam = family_from_qlf(request.qlf)
        report = validate_logic(fam)
        return schemas.LogicReportResponse(
            is_logic=report.is_logic,
            contains_x=report.contains_x,
            complement_closed=report.complement_closed,
            disjoint_union_closed=report.disjoint_union_closed,
            difference_closed=report.difference_closed,
            complement_violation=(
                set_literal(report.complement_violation)
                if report.complement_violation is not None else None),
            disjoint_union_violation=(
                tuple(set_literal(m) for m in report.disjoint_union_violation)
                if report.disjoint_union_violation is not None else None),
        )

    def _load_pair(payload: schemas.StatePayload):
        fam = family_from_qlf(payload.logic_qlf)
        state = state_from_qsf(payload.state_qsf, fam)
        return fam, state

    @app.post("/state/validate", response_model=schemas.ValidateStateResponse)
    def state_validate(request: schemas.StatePayload) -> schemas.ValidateStateResponse:
        fam, state = _load_pair(request)
        report = validate_state(fam, state.values)
        return schemas.ValidateStateResponse(
            valid=report.valid,
            violation=report.violation.message if report.violation else None,
        )

    @app.post("/state/subadditive", response_model=schemas.SubadditiveResponse)
    def state_subadditive(request: schemas.StatePayload) -> schemas.SubadditiveResponse:
        fam, state = _load_pair(request)
        report = validate_state(fam, state.values)
        if not report.valid:
            return schemas.SubadditiveResponse(
                status="invalid_state", violation=report.violation.message)
        result = is_subadditive(fam, state)
        witness = None
        if result.witness is not None:
            witness = tuple(set_literal(m) for m in result.witness)
        return schemas.SubadditiveResponse(
            status="ok", subadditive=result.subadditive, witness=witness)

    @app.post("/extend", response_model=schemas.ExtendResponse)
    def extend(request: schemas.ExtendRequest) -> schemas.ExtendResponse:
        fam, state = _load_pair(request)
        report = validate_state(fam, state.values)
        if not report.valid:
            return schemas.ExtendResponse(
                status="invalid_state", violation=report.violation.message)
        solver = solve_signed_extension if request.kind == "signed" else solve_state_extension
        outcome = solver(fam, state)
        machine = serialize_outcome(outcome)
        if isinstance(outcome, FeasibleExtension):
            return schemas.ExtendResponse(
                status="feasible",
                unique=outcome.unique,
                masses=[format_rational(v) for v in outcome.witness],
                machine=machine,
            )
        certificate = None
        if outcome.certificate is not None:
            certificate = [
                schemas.CertificateEntry(index=i, coefficient=format_rational(c))
                for i, c in enumerate(outcome.certificate) if c
            ]
        return schemas.ExtendResponse(status="infeasible", certificate=certificate, machine=machine)

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(request: schemas.StatePayload) -> schemas.ClassifyResponse:
        fam, state = _load_pair(request)
        report = validate_state(fam, state.values)
        if not report.valid:
            return schemas.ClassifyResponse(
                status="invalid_state", violation=report.violation.message)
        summary = classify_state(fam, state)
        return schemas.ClassifyResponse(
            status="ok",
            signed_extendable=summary.signed_extendable,
            state_extendable=summary.state_extendable,
            subadditive=summary.subadditive,
            two_valued=summary.two_valued,
            dirac=summary.dirac,
        )

    @app.post("/state/sample", response_model=schemas.SampleResponse)
    def state_sample(request: schemas.SampleRequest) -> schemas.SampleResponse:
        state = sample_state_even(request.n, request.seed, request.mode)
        return schemas.SampleResponse(
            logic_qlf=serialize_qlf(state.family),
            state_qsf=serialize_qsf(state, request.logic_path),
        )

    @app.post("/suite/paper", response_model=schemas.SuiteResponse)
    def suite_paper(request: schemas.SuiteRequest) -> schemas.SuiteResponse:
        checks = run_suite(request.samples_per_size)
        return schemas.SuiteResponse(
            all_passed=all(c.passed for c in checks),
            checks=[
                schemas.SuiteCheck(locus=c.locus, name=c.name, passed=c.passed, detail=c.detail)
                for c in checks
            ],
        )

    return app


app = create_app()
