"""
Export router - PDF, JSON, and Markdown benchmark reports
"""

from datetime import datetime, timezone
from typing import Optional

from fastapi import APIRouter, HTTPException, Query
from fastapi.responses import JSONResponse, Response

from models.bench_model import BenchReport
from services.report_service import generate_markdown_report, generate_pdf_report

router = APIRouter()


def _filename(ext: str) -> str:
    return f"bench-report-{datetime.now(timezone.utc).strftime('%Y%m%d-%H%M%S')}.{ext}"


@router.post("/export/bench-report")
def export_bench_report(
    report: BenchReport,
    format: Optional[str] = Query("pdf", description="Output format: pdf, json, or md"),
):
    """
    Render a benchmark report (as returned by POST /bench).

    Query params:
    - format: "pdf" (default), "json", or "md" (markdown)
    """
    if format == "json":
        return JSONResponse(content=report.model_dump())

    if format in ("md", "markdown"):
        return Response(
            content=generate_markdown_report(report),
            media_type="text/markdown",
            headers={"Content-Disposition": f"attachment; filename={_filename('md')}"},
        )

    if format != "pdf":
        raise HTTPException(status_code=400, detail=f"unknown format '{format}'")

    return Response(
        content=generate_pdf_report(report),
        media_type="application/pdf",
        headers={"Content-Disposition": f"attachment; filename={_filename('pdf')}"},
    )
