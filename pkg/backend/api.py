#!/usr/bin/env python3
"""
RepLab FastAPI Backend
RESTful API over the irrep tables, cost model, figure series and protocol simulations
"""

import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field
from typing import Optional, List, Dict, Any
from datetime import datetime

# RepLab imports
from baselines import naive_teleport_cost
from costmodel import FIGURES, Task, cost_report, default_range, figure_series
from costmodel.figures import DEFAULT_D
from harness.session import PROTOCOLS, simulate
from repcore import build_table
from schur import SchurBasisCache
from utils import LabError, get_logger, get_settings, log_event

API_VERSION = "1.0.0"

logger = get_logger("API")

# Initialize FastAPI app
app = FastAPI(
    title="RepLab API",
    description="Representation matching cost model and protocol simulator",
    version=API_VERSION
)

# CORS middleware for local notebooks and dashboards
app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:3000", "http://localhost:5173", "http://127.0.0.1:5173"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Global instances (initialized lazily)
_instances = {}

def get_basis_cache():
    if 'basis_cache' not in _instances:
        # In-memory only; the service never writes bases to disk
        _instances['basis_cache'] = SchurBasisCache(settings=get_settings(), persist=False)
    return _instances['basis_cache']


def _bad_request(e: Exception, endpoint: str):
    log_event(logger, "request_rejected", endpoint=endpoint, error=str(e))
    return HTTPException(status_code=400, detail=str(e))


# =============================================================================
# Pydantic Models
# =============================================================================

class TableRequest(BaseModel):
    n: int = Field(..., ge=1, le=200)
    d: int = Field(..., ge=1, le=12)
    role: str = Field(default="unitary-array", description="'unitary-array' or 'permutation'")

class TableResponse(BaseModel):
    success: bool
    rows: List[Dict[str, Any]]
    aggregates: Dict[str, Any]

class CostRequest(BaseModel):
    n: int = Field(..., ge=1, le=1000)
    d: int = Field(..., ge=2, le=12)
    task: str = Field(default="unitary-array")

class FigureRequest(BaseModel):
    which: str = Field(..., description="'fig4', 'fig5' or 'fig6'")
    d: Optional[int] = Field(default=None, ge=2, le=12)
    nmax: Optional[int] = Field(default=None, ge=1, le=200)

class FigureResponse(BaseModel):
    success: bool
    which: str
    d: int
    rows: List[Dict[str, Any]]

class SimulateRequest(BaseModel):
    protocol: str = Field(default="repmatch")
    task: str = Field(default="unitary-array")
    n: int = Field(..., ge=1, le=12)
    d: int = Field(..., ge=2, le=8)
    seed: int = Field(default=0, ge=0)
    trials: int = Field(default=1000, ge=1, le=100000)
    eps: Optional[float] = Field(default=None, gt=0, lt=1)


# =============================================================================
# Health
# =============================================================================

@app.get("/")
async def root():
    return {"status": "ok", "service": "RepLab API", "version": API_VERSION}

@app.get("/health")
async def health_check():
    return {
        "status": "healthy",
        "version": API_VERSION,
        "timestamp": datetime.utcnow().isoformat(),
        "dim_cap": get_settings().dim_cap,
    }


# =============================================================================
# Calculators
# =============================================================================

@app.post("/api/table", response_model=TableResponse)
async def irrep_table(request: TableRequest):
    """Irrep table rows and aggregates for (n, d, role)"""
    try:
        table = build_table(request.n, request.d, request.role)
    except (LabError, ValueError) as e:
        raise _bad_request(e, "table")
    return TableResponse(
        success=True,
        rows=table.to_dataframe().to_dict(orient="records"),
        aggregates=table.aggregates(),
    )

@app.post("/api/costs")
async def costs(request: CostRequest):
    """Cost report; unitary gate arrays also get the naive teleportation baseline"""
    try:
        report = cost_report(request.n, request.d, request.task)
    except (LabError, ValueError) as e:
        raise _bad_request(e, "costs")
    result = {"success": True, **report.to_dict()}
    if report.task == Task.UNITARY_ARRAY:
        result["naive_teleport"] = naive_teleport_cost(request.n, request.d).to_dict()
    return result

@app.post("/api/figure", response_model=FigureResponse)
async def figure(request: FigureRequest):
    if request.which not in FIGURES:
        raise _bad_request(ValueError(f"Unknown figure '{request.which}', expected one of {FIGURES}"), "figure")
    try:
        frame = figure_series(request.which, d=request.d, n_range=default_range(request.which, request.nmax))
    except (LabError, ValueError) as e:
        raise _bad_request(e, "figure")
    return FigureResponse(
        success=True,
        which=request.which,
        d=request.d or DEFAULT_D[request.which],
        rows=frame.to_dict(orient="records"),
    )


# =============================================================================
# Simulation
# =============================================================================

@app.post("/api/simulate")
async def simulate_protocol(request: SimulateRequest):
    """
    Run one metered session and a success-frequency estimate.

    Bases are built on demand and kept in the in-memory cache, so the first
    request for a given (n, d) is the slow one.
    """
    if request.protocol not in PROTOCOLS:
        raise _bad_request(ValueError(f"Unknown protocol '{request.protocol}', expected one of {PROTOCOLS}"), "simulate")
    try:
        summary = simulate(
            request.protocol,
            request.task,
            request.n,
            request.d,
            trials=request.trials,
            seed=request.seed,
            eps=request.eps,
            cache=get_basis_cache(),
        )
    except (LabError, ValueError) as e:
        raise _bad_request(e, "simulate")
    return {"success": True, **summary}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
