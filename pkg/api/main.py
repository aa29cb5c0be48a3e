from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from api.routers import codec, bench, export
from models.bench_model import SCHEMES
from models.meta import MetaInfo
from services.stream_codec import VERSION as CONTAINER_VERSION
import datetime

# to run backend:
# python3 -m uvicorn api.main:app --reload --port 8000

APP_VERSION = "0.1.0"

app = FastAPI(
    title="DeXOR API",
    description="Lossless streaming compression of double-precision values: decimal XOR with an adaptive exception handler.",
    version=APP_VERSION,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],  # dev default; tighten per deployment
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(codec.router, prefix="/codec", tags=["Codec"])
app.include_router(bench.router, tags=["Benchmark"])
app.include_router(export.router, tags=["Export"])


@app.get("/health")
def health():
    return {"status": "ok"}


@app.get("/meta/version", response_model=MetaInfo)
def meta_version():
    return MetaInfo(
        version=APP_VERSION,
        build_time=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        container_version=CONTAINER_VERSION,
        schemes=list(SCHEMES),
        feature_flags=["exception_only_mode", "gorilla_baseline", "trace_analyze", "export_pdf"],
    )
