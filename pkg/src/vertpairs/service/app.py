"""FastAPI service wrapping the calculator.

Each endpoint body lives in a plain ``compute_*`` function taking and
returning the pydantic models, so the CLI can call the same handlers
in-process without a running server.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import appendix as appendix_mod
from .. import gw, verify
from ..algebra import ExactDivisionError, TLaurentPoly, series_to_json
from ..pairs import (
    Insertion,
    SurfaceGeometry,
    vertical_bruteforce,
    vertical_closed_descendents,
    vertical_closed_descendents_window,
)
from .models import (
    AppendixAlphaReport,
    AppendixRequest,
    AppendixResponse,
    CheckReport,
    GaussEntry,
    GwRequest,
    GwResponse,
    HurwitzRequest,
    HurwitzResponse,
    MatricesRequest,
    MatricesResponse,
    MpCheckRequest,
    MpCheckResponse,
    OracleReport,
    PairsRequest,
    PairsResponse,
    SeriesDoc,
    VerifyRequest,
    VerifyResponse,
)


def _geometry(req) -> SurfaceGeometry:
    return SurfaceGeometry(h=req.h, chi_parity=req.chi_parity)


def _insertions(req) -> list:
    return [Insertion(i.alpha, i.pairing_value()) for i in req.insertions]


def _series_doc(series, variable=None) -> SeriesDoc:
    return SeriesDoc.model_validate(series_to_json(series, variable=variable))


def compute_pairs(req: PairsRequest) -> PairsResponse:
    geom = _geometry(req)
    ins = _insertions(req)
    try:
        if req.window is None:
            t_power, series = vertical_closed_descendents(geom, req.d, ins)
            exact = True
        else:
            try:
                t_power, full = vertical_closed_descendents(geom, req.d, ins)
                series = full.restrict(tuple(req.window))
                exact = True
            except ExactDivisionError:
                t_power, series = vertical_closed_descendents_window(
                    geom, req.d, ins, tuple(req.window)
                )
                exact = False
    except ExactDivisionError as exc:
        raise HTTPException(
            status_code=400,
            detail=f"the descendent series is not a Laurent polynomial here ({exc}); "
            "supply a window for an expansion",
        ) from exc
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    oracle = None
    if req.oracle:
        if req.window is None:
            raise HTTPException(status_code=400, detail="--oracle needs a window")
        window = tuple(req.window)
        tb, brute = vertical_bruteforce(geom, req.d, ins, window)
        windowed = series if series.window == window else series.restrict(window)
        oracle = OracleReport(
            window=window,
            match=(tb == t_power and brute == windowed),
            bruteforce=_series_doc(brute),
        )
    return PairsResponse(
        t_power=t_power, exact=exact, series=_series_doc(series), oracle=oracle
    )


def compute_gw(req: GwRequest) -> GwResponse:
    geom = _geometry(req)
    ins = _insertions(req)
    try:
        series = gw.gw_vertical(geom, req.d, req.order)
        t_power = 0
        if ins:
            need = max(i.alpha + 1 for i in ins)
            t_power, factor = gw.gw_descendent_factor(req.d, ins, req.order, gw.L_matrix(need))
            series = (series * factor).truncate(req.order)
            for i in ins:
                series = series * (req.d * i.pairing)
    except (ValueError, ArithmeticError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return GwResponse(
        t_power=t_power,
        series=_series_doc(series),
        valuation=series.valuation(),
        conjecture_conditional=bool(ins),
    )


def compute_hurwitz(req: HurwitzRequest) -> HurwitzResponse:
    geom = _geometry(req)
    try:
        value = gw.spin_hurwitz_vertical(geom, req.d)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return HurwitzResponse(value=str(value))


def compute_mp_check(req: MpCheckRequest) -> MpCheckResponse:
    geom = _geometry(req)
    ins = _insertions(req)
    try:
        g = gw.genus_from_dimension(geom, req.d, ins)
        order = 2 * g
        need = max((i.alpha + 1 for i in ins), default=1)
        t_power, factor = gw.gw_descendent_factor(req.d, ins, order, gw.L_matrix(need))
        series = gw.gw_vertical(geom, req.d, order) * factor
        for i in ins:
            series = series * (req.d * i.pairing)
        series = series * TLaurentPoly.t_power(t_power)
        pipeline = gw.extract_surface_invariant(geom, req.d, ins, series)
        closed = gw.mp_invariant(geom, req.d, ins)
    except (ValueError, ArithmeticError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return MpCheckResponse(
        match=(pipeline == closed),
        pipeline_value=str(pipeline),
        closed_value=str(closed),
    )


def _matrix_rows(m) -> list:
    return [
        [GaussEntry(re=str(m[(a, b)].re), im=str(m[(a, b)].im)) for b in range(1, a + 1)]
        for a in range(1, m.size + 1)
    ]


def compute_matrices(req: MatricesRequest) -> MatricesResponse:
    K = gw.K_matrix(req.size)
    L = gw.L_matrix(req.size)
    return MatricesResponse(
        size=req.size,
        K=_matrix_rows(K),
        L=_matrix_rows(L),
        inverse_check=(K @ L).is_identity(),
    )


def compute_appendix(req: AppendixRequest) -> AppendixResponse:
    reports = []
    for alpha in range(1, req.alpha_max + 1):
        series = appendix_mod.appendix_lhs(alpha, 2 * alpha + 2)
        lead = series.coeff(2 * alpha - 1).const_value().re
        order_ok = series.valuation() == 2 * alpha - 1 and lead == appendix_mod.leading_value(alpha)
        solve_ok = appendix_mod.solve_c_unique(alpha) == appendix_mod.c_coefficients(alpha)
        reports.append(
            AppendixAlphaReport(
                alpha=alpha, order_ok=order_ok, leading=str(lead), solve_matches=solve_ok
            )
        )
    pix_ok = None
    if req.pix:
        pix_ok = appendix_mod.pix_identity_check(req.alpha_max, req.x_order, req.v_order)
    passed = all(r.order_ok and r.solve_matches for r in reports) and pix_ok is not False
    return AppendixResponse(reports=reports, pix_ok=pix_ok, passed=passed)


def compute_verify(req: VerifyRequest) -> VerifyResponse:
    results = verify.run_suite(req.suite)
    failed = sum(1 for r in results if not r.passed)
    return VerifyResponse(
        suite=req.suite,
        passed=failed == 0,
        total=len(results),
        failed=failed,
        checks=[CheckReport(name=r.name, passed=r.passed, detail=r.detail) for r in results],
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="vertpairs",
        version="0.1.0",
        description="Exact vertical stable-pair series calculator",
    )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/pairs", response_model=PairsResponse)
    def pairs(req: PairsRequest):
        return compute_pairs(req)

    @app.post("/gw", response_model=GwResponse)
    def gw_endpoint(req: GwRequest):
        return compute_gw(req)

    @app.post("/hurwitz", response_model=HurwitzResponse)
    def hurwitz(req: HurwitzRequest):
        return compute_hurwitz(req)

    @app.post("/mp-check", response_model=MpCheckResponse)
    def mp_check(req: MpCheckRequest):
        return compute_mp_check(req)

    @app.post("/matrices", response_model=MatricesResponse)
    def matrices(req: MatricesRequest):
        return compute_matrices(req)

    @app.post("/appendix", response_model=AppendixResponse)
    def appendix(req: AppendixRequest):
        return compute_appendix(req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify_endpoint(req: VerifyRequest):
        return compute_verify(req)

    return app


app = create_app()
