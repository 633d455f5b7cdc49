"""
Inflex — Polinomios de inflexión de pencils superelípticos
Main FastAPI application entry point.
"""
import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from inflex.core.algebra import InflexError
from inflex.core.constants import APP_NAME, APP_VERSION
from inflex.core.reports import UnknownCheckError
from inflex.routes import api

logger = logging.getLogger("uvicorn.error").getChild("inflex")

app = FastAPI(
    title=APP_NAME,
    description="Aritmética exacta y verificación de polinomios de inflexión",
    version=APP_VERSION,
    docs_url="/docs",
    redoc_url="/redoc",
)


# ── Exception handlers ───────────────────────────────────────────────────────

@app.exception_handler(UnknownCheckError)
async def unknown_check(request: Request, exc: UnknownCheckError):
    return JSONResponse(status_code=404, content={"detail": str(exc)})


@app.exception_handler(InflexError)
async def inflex_error(request: Request, exc: InflexError):
    logger.warning(f"[API] {request.url.path}: {type(exc).__name__}: {exc}")
    return JSONResponse(status_code=422, content={"detail": f"{type(exc).__name__}: {exc}"})


# ── Routers ──────────────────────────────────────────────────────────────────

app.include_router(api.router)          # REST API v1 — /api/v1/...


@app.get("/", include_in_schema=False)
async def root():
    return {"name": APP_NAME, "version": APP_VERSION, "docs": "/docs"}
