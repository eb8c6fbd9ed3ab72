"""FastAPI application wrapping the toolkit.

POST /run executes a QASM score; POST /algorithms/{name} dispatches to the
named algorithm with its typed request body; GET /health and GET /schema
serve liveness and the published report schema.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException, Request

from .. import __version__
from ..qasm import QasmError
from . import handlers
from .schemas import Report, RunRequest

app = FastAPI(title="qdesk", version=__version__)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/schema")
def schema() -> dict:
    return Report.model_json_schema()


@app.post("/run", response_model=Report)
def run(req: RunRequest) -> Report:
    try:
        return handlers.handle_run(req)
    except QasmError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.post("/algorithms/{name}", response_model=Report)
async def algorithm(name: str, request: Request) -> Report:
    entry = handlers.HANDLERS.get(name)
    if entry is None:
        raise HTTPException(status_code=404, detail=f"unknown algorithm {name!r}")
    model, fn = entry
    body = await request.json()
    try:
        req = model.model_validate(body)
    except Exception as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    try:
        return fn(req)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
