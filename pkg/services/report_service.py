"""
Report rendering: flat key=value lines, aligned text tables, markdown and PDF.
"""

from typing import Dict, List, Mapping, Sequence

from fpdf import FPDF

from models.bench_model import BenchReport
from models.stats_model import CASE_LABELS


TABLE_COLUMNS = (
    ("scheme", "Scheme"),
    ("acb", "ACB"),
    ("compression_ratio", "Ratio"),
    ("compress_mb_s", "Comp MB/s"),
    ("decompress_mb_s", "Decomp MB/s"),
    ("round_trip", "Round trip"),
)


def _fmt(value: object) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, float):
        return f"{value:.4g}" if abs(value) >= 1e4 else f"{value:.3f}"
    return str(value)


def render_flat(fields: Mapping[str, object], prefix: str = "") -> str:
    """One `key=value` per line, keys in insertion order."""
    return "\n".join(f"{prefix}{k}={'' if v is None else v}" for k, v in fields.items())


def render_kv(fields: Mapping[str, object]) -> str:
    """Aligned two-column `key  value` view of a single record."""
    width = max((len(k) for k in fields), default=0)
    return "\n".join(f"{k.ljust(width)}  {_fmt(v)}" for k, v in fields.items())


def render_table(rows: Sequence[Mapping[str, object]], columns=TABLE_COLUMNS) -> str:
    headers = [title for _, title in columns]
    body = [[_fmt(row.get(key)) for key, _ in columns] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(headers)]

    def line(cells: List[str]) -> str:
        return "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(cells, widths)))

    out = [line(headers), "  ".join("-" * w for w in widths)]
    out.extend(line(r) for r in body)
    return "\n".join(out)


def render_bench_flat(report: BenchReport) -> str:
    blocks = [render_flat({"source": report.source, "value_count": report.value_count,
                           "tolerance": report.tolerance, "rho": report.rho})]
    for r in report.results:
        blocks.append(render_flat(r.as_flat(), prefix=f"{r.scheme}."))
    return "\n".join(blocks)


def render_bench_table(report: BenchReport) -> str:
    return render_table([r.as_flat() for r in report.results])


def histogram_line(histogram: Dict[str, int]) -> str:
    return "  ".join(f"{label}:{histogram.get(label, 0)}" for label in CASE_LABELS)


# -----------------------------
# Markdown
# -----------------------------
def generate_markdown_report(report: BenchReport) -> str:
    lines = []

    lines.append("# DeXOR Benchmark Report")
    lines.append("")
    lines.append(f"- **Report Date:** {report.timestamp[:10]}")
    lines.append(f"- **Source:** {report.source}")
    lines.append(f"- **Values:** {report.value_count} ({report.input_bytes} bytes)")
    lines.append(f"- **Tolerance / rho:** {report.tolerance:g} / {report.rho}")
    lines.append("")

    lines.append("## Results")
    lines.append("")
    lines.append("| " + " | ".join(title for _, title in TABLE_COLUMNS) + " |")
    lines.append("|" + "|".join("-" * (len(title) + 2) for _, title in TABLE_COLUMNS) + "|")
    for r in report.results:
        flat = r.as_flat()
        lines.append("| " + " | ".join(_fmt(flat.get(key)) for key, _ in TABLE_COLUMNS) + " |")
    lines.append("")

    with_cases = [r for r in report.results if r.case_histogram]
    if with_cases:
        lines.append("## Case Codes")
        lines.append("")
        lines.append("| Scheme | " + " | ".join(CASE_LABELS) + " | Overflows |")
        lines.append("|--------|" + "|".join("----" for _ in CASE_LABELS) + "|-----------|")
        for r in with_cases:
            counts = " | ".join(str(r.case_histogram.get(label, 0)) for label in CASE_LABELS)
            lines.append(f"| {r.scheme} | {counts} | {r.exception_overflows} |")
        lines.append("")

    lines.append("---")
    lines.append(f"*Generated by dexor | {report.timestamp}*")
    return "\n".join(lines)


# -----------------------------
# PDF
# -----------------------------
class BenchReportPDF(FPDF):
    """PDF layout for benchmark reports."""

    def __init__(self):
        super().__init__()
        self.set_auto_page_break(auto=True, margin=15)

    def header(self):
        self.set_font("Helvetica", "B", 16)
        self.cell(0, 10, "DeXOR", align="C", new_x="LMARGIN", new_y="NEXT")
        self.set_font("Helvetica", "B", 12)
        self.cell(0, 8, "Benchmark Report", align="C", new_x="LMARGIN", new_y="NEXT")
        self.ln(5)

    def footer(self):
        self.set_y(-15)
        self.set_font("Helvetica", "I", 8)
        self.cell(0, 10, f"Page {self.page_no()}/{{nb}} | Generated by dexor", align="C")

    def add_summary_section(self, report: BenchReport):
        self.set_font("Helvetica", "B", 14)
        self.cell(0, 10, "Summary", new_x="LMARGIN", new_y="NEXT")
        self.line(10, self.get_y(), 200, self.get_y())
        self.ln(5)

        self.set_font("Helvetica", "", 10)
        self.cell(0, 6, f"Report Date: {report.timestamp[:10]}", new_x="LMARGIN", new_y="NEXT")
        self.cell(0, 6, f"Source: {report.source[:80]}", new_x="LMARGIN", new_y="NEXT")
        self.cell(0, 6, f"Values: {report.value_count} ({report.input_bytes} bytes)", new_x="LMARGIN", new_y="NEXT")
        self.cell(0, 6, f"Tolerance: {report.tolerance:g} | rho: {report.rho}", new_x="LMARGIN", new_y="NEXT")
        self.ln(5)

    def add_results_table(self, report: BenchReport):
        widths = (45, 22, 22, 30, 32, 28)
        self.set_font("Helvetica", "B", 9)
        for (_, title), w in zip(TABLE_COLUMNS, widths):
            self.cell(w, 7, title, border=1)
        self.ln()

        self.set_font("Helvetica", "", 9)
        for r in report.results:
            flat = r.as_flat()
            for (key, _), w in zip(TABLE_COLUMNS, widths):
                self.cell(w, 6, _fmt(flat.get(key)), border=1)
            self.ln()
        self.ln(6)

    def add_case_section(self, report: BenchReport):
        with_cases = [r for r in report.results if r.case_histogram]
        if not with_cases:
            return
        self.set_font("Helvetica", "B", 12)
        self.cell(0, 8, "Case Codes", new_x="LMARGIN", new_y="NEXT")
        self.set_font("Helvetica", "", 10)
        for r in with_cases:
            self.cell(
                0, 6,
                f"{r.scheme}: {histogram_line(r.case_histogram)} | overflows {r.exception_overflows}",
                new_x="LMARGIN", new_y="NEXT",
            )


def generate_pdf_report(report: BenchReport) -> bytes:
    pdf = BenchReportPDF()
    pdf.alias_nb_pages()
    pdf.add_page()
    pdf.add_summary_section(report)
    pdf.add_results_table(report)
    pdf.add_case_section(report)
    return bytes(pdf.output())
