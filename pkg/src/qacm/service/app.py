"""FastAPI service exposing the qacm operations.

Stateless: every request carries (or defaults) the session; results are pure
functions of the inputs.  Error mapping: UserInputError -> 400, engine
invariant violations -> 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import EngineError, UserInputError
from ..groebner import Ideal
from ..hilbert import (
    NONZERO_MARK,
    acm_curve_check,
    cohomology_table,
    degree_genus,
    hilbert_function,
    hilbert_polynomial,
    mcm_check,
    regularity,
)
from ..liaison import ci_link, fingerprint
from ..mcm import construct_e0, decompose_acm, extract_mf, verify_periodicity
from ..poly import parse_polynomial
from ..resolutions import GradedMap, GradedModule, PROBE_WINDOW
from ..session import Session, session_from_text
from . import schemas as sc

app = FastAPI(
    title="qacm",
    version=__version__,
    description="ACM curves, MCM modules and matrix factorizations on the "
                "smooth quadric threefold in P^4",
)


@app.exception_handler(UserInputError)
async def _user_error(request: Request, exc: UserInputError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(EngineError)
async def _engine_error(request: Request, exc: EngineError):
    return JSONResponse(status_code=500, content={"detail": str(exc)})


@app.exception_handler(Exception)
async def _unexpected_error(request: Request, exc: Exception):
    return JSONResponse(
        status_code=500,
        content={"detail": f"internal error: {type(exc).__name__}: {exc}"},
    )


# ------------------------------------------------------------------ helpers


def _session(req: sc.BaseRequest) -> Session:
    return session_from_text(req.session_text)


def _ideal(session: Session, name: str) -> Ideal:
    kind, obj = session.lookup(name)
    if kind != "ideal":
        raise UserInputError(f"{name!r} is a module; this operation needs an ideal")
    return obj


def _module(session: Session, name: str) -> GradedModule:
    kind, obj = session.lookup(name)
    if kind == "module":
        return obj
    return GradedModule.from_ideal(obj)


WINDOW_SPAN_LIMIT = 64
WINDOW_DEGREE_LIMIT = 48


def _window(req, default=PROBE_WINDOW) -> tuple[int, int]:
    w = getattr(req, "window", None)
    if w is None:
        return default
    lo, hi = int(w[0]), int(w[1])
    if lo > hi:
        raise UserInputError(f"empty window {lo}..{hi}")
    if hi - lo > WINDOW_SPAN_LIMIT or abs(lo) > WINDOW_DEGREE_LIMIT \
            or abs(hi) > WINDOW_DEGREE_LIMIT:
        raise UserInputError(
            f"window {lo}..{hi} is out of range (span <= {WINDOW_SPAN_LIMIT},"
            f" degrees within +-{WINDOW_DEGREE_LIMIT})"
        )
    return (lo, hi)


def _map_info(gmap: GradedMap) -> sc.MapInfo:
    return sc.MapInfo(
        source_twists=list(gmap.source.twists),
        target_twists=list(gmap.target.twists),
        entries=[[str(e) for e in row] for row in gmap.entries],
    )


def _vector_str(v) -> str:
    return "[" + ", ".join(str(c) for c in v.components) + "]"


def _betti_json(table: dict) -> dict:
    return {str(step): {str(d): c for d, c in row.items()}
            for step, row in table.items()}


def _poly_info(data) -> sc.PolynomialInfo | None:
    try:
        poly = hilbert_polynomial(data)
    except UserInputError:
        return None
    return sc.PolynomialInfo(
        degree=poly.degree if poly.degree is not None else -1,
        binomial=poly.binomial_coefficients(),
        expanded=poly.expanded_strings(),
        stabilizes_at=data.stabilization_degree,
    )


def _fingerprint_response(fp) -> sc.FingerprintResponse:
    return sc.FingerprintResponse(ci_class=fp.is_ci_class,
                                  e0_shifts=list(fp.e0_shifts))


# ---------------------------------------------------------------- endpoints


@app.get("/", response_model=sc.InfoResponse)
def info() -> sc.InfoResponse:
    paths = sorted(
        r.path for r in app.routes if r.path.startswith("/v1/")
    )
    return sc.InfoResponse(name="qacm", version=__version__, endpoints=paths)


@app.post("/v1/gb", response_model=sc.GbResponse)
def gb(req: sc.AboutRequest) -> sc.GbResponse:
    session = _session(req)
    ideal = _ideal(session, req.about)
    basis = [str(g) for g in ideal.gb().polynomials]
    return sc.GbResponse(ambient="R", basis=basis)


@app.post("/v1/hilbert", response_model=sc.HilbertResponse)
def hilbert(req: sc.WindowRequest) -> sc.HilbertResponse:
    session = _session(req)
    module = _module(session, req.about)
    window = _window(req)
    data = hilbert_function(module, window)
    return sc.HilbertResponse(window=window, values=data.row(),
                              polynomial=_poly_info(data))


@app.post("/v1/cohomology-table", response_model=sc.CohomologyResponse)
def cohomology(req: sc.WindowRequest) -> sc.CohomologyResponse:
    session = _session(req)
    module = _module(session, req.about)
    window = _window(req)
    table = cohomology_table(module, window)
    return sc.CohomologyResponse(
        window=window,
        h0=table.row(0),
        h1="0" if table.h1_zero else NONZERO_MARK,
        h2="0" if table.h2_zero else NONZERO_MARK,
        pd_s=table.pd,
        depth=table.depth,
    )


@app.post("/v1/acm-check", response_model=sc.BettiResponse)
def acm(req: sc.AboutRequest) -> sc.BettiResponse:
    session = _session(req)
    cert = acm_curve_check(_ideal(session, req.about))
    return sc.BettiResponse(acm=cert.acm, saturated=cert.saturated,
                            pd_s=cert.pd, betti=_betti_json(cert.betti))


@app.post("/v1/mcm-check", response_model=sc.BettiResponse)
def mcm(req: sc.AboutRequest) -> sc.BettiResponse:
    session = _session(req)
    cert = mcm_check(_module(session, req.about))
    return sc.BettiResponse(mcm=cert.mcm, pd_s=cert.pd,
                            hilbert_degree=cert.hp_degree,
                            betti=_betti_json(cert.betti))


@app.post("/v1/regularity", response_model=sc.RegularityResponse)
def reg(req: sc.AboutRequest) -> sc.RegularityResponse:
    session = _session(req)
    return sc.RegularityResponse(regularity=regularity(_module(session, req.about)))


@app.post("/v1/etype", response_model=sc.EtypeResponse)
def etype(req: sc.WindowRequest) -> sc.EtypeResponse:
    from ..resolutions import etype_resolution

    session = _session(req)
    window = _window(req)
    result = etype_resolution(_ideal(session, req.about), window=window)
    kernel = result.kernel
    pres = kernel.minimal_presentation()
    return sc.EtypeResponse(
        middle_twists=list(result.middle_twists),
        kernel_generators=[_vector_str(g) for g in kernel.gens],
        kernel_generator_degrees=list(pres.target.twists),
        kernel_relation_degrees=list(pres.source.twists),
        window=window,
    )


@app.post("/v1/construct-e0", response_model=sc.E0Response)
def e0(req: sc.E0Request) -> sc.E0Response:
    session = _session(req)
    if req.line is None:
        _, module = session.lookup("E0")
    else:
        module = construct_e0(session.ring, _ideal(session, req.line))
    pres = module.minimal_presentation()
    return sc.E0Response(
        generator_degrees=list(pres.target.twists),
        generators=[_vector_str(g) for g in module.gens],
        presentation=_map_info(pres),
    )


@app.post("/v1/mf", response_model=sc.MfResponse)
def mf(req: sc.MfRequest) -> sc.MfResponse:
    session = _session(req)
    result = extract_mf(_module(session, req.about))
    return sc.MfResponse(
        free=result.is_free,
        size=result.size if not result.is_free else 0,
        quadric=str(result.quadric),
        a=None if result.is_free else _map_info(result.a),
        b=None if result.is_free else _map_info(result.b),
    )


@app.post("/v1/periodicity", response_model=sc.PeriodicityResponse)
def periodicity(req: sc.PeriodicityRequest) -> sc.PeriodicityResponse:
    session = _session(req)
    window = _window(req, default=(0, 8))
    ok = verify_periodicity(_module(session, req.about), window=window)
    return sc.PeriodicityResponse(periodic=ok, window=window)


@app.post("/v1/decompose", response_model=sc.DecomposeResponse)
def decompose(req: sc.AboutRequest) -> sc.DecomposeResponse:
    session = _session(req)
    report = decompose_acm(_module(session, req.about))
    return sc.DecomposeResponse(
        matched=report.matched,
        free_twists=report.free_twists,
        e0_twists=report.e0_twists,
        detail=report.detail,
    )


@app.post("/v1/link", response_model=sc.LinkResponse)
def link(req: sc.LinkRequest) -> sc.LinkResponse:
    session = _session(req)
    ideal = _ideal(session, req.about)
    f = parse_polynomial(req.ci[0], session.field)
    g = parse_polynomial(req.ci[1], session.field)
    result = ci_link(ideal, f, g)
    return sc.LinkResponse(
        linked_generators=[str(h) for h in result.linked_ideal.minimal_generators()],
        ci_degrees=result.ci_degrees,
        degree_sum=result.degree_left,
        ci_degree=result.degree_right,
        degrees_add_up=result.degrees_add_up,
    )


@app.post("/v1/fingerprint", response_model=sc.FingerprintResponse)
def fp(req: sc.AboutRequest) -> sc.FingerprintResponse:
    session = _session(req)
    return _fingerprint_response(fingerprint(_ideal(session, req.about)))


@app.post("/v1/same-class", response_model=sc.SameClassResponse)
def same_class(req: sc.SameClassRequest) -> sc.SameClassResponse:
    session = _session(req)
    left = fingerprint(_ideal(session, req.about))
    right = fingerprint(_ideal(session, req.other))
    return sc.SameClassResponse(
        same=(left == right),
        left=_fingerprint_response(left),
        right=_fingerprint_response(right),
    )


@app.post("/v1/degree-genus", response_model=sc.DegreeGenusResponse)
def dg(req: sc.AboutRequest) -> sc.DegreeGenusResponse:
    session = _session(req)
    d, g = degree_genus(_ideal(session, req.about))
    return sc.DegreeGenusResponse(degree=d, genus=g)
