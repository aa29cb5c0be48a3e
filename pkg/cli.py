#!/usr/bin/env python3
"""
dexor CLI
Compress, decompress, benchmark and inspect streams of doubles.

Usage:
    dexor compress values.txt out.dxor --format text
    dexor compress values.csv out.dxor --format csv --column 1 --mode exception-only
    dexor decompress out.dxor values.bin --format raw64le
    dexor bench values.bin --scheme dexor --scheme gorilla --report flat
    dexor analyze values.txt --format text --cbl

Environment:
    DEXOR_TOLERANCE - integrality tolerance (default: 1e-6)
    DEXOR_RHO       - EL contraction threshold (default: 8)
    DEXOR_MODE      - compress mode: full, exception-only, gorilla (default: full)

Exit codes: 0 ok, 2 input/format/config error, 3 decode error, 4 round-trip failure.
"""

import functools
import logging
import sys
import time
from pathlib import Path

import click

from models.bench_model import SCHEMES
from services.bench_service import run_bench, throughput_mb_s
from services.config import DEFAULT_RHO, DEFAULT_TOLERANCE, CodecConfig, StreamMode
from services.errors import (
    AnalysisError,
    ConfigError,
    DecodeError,
    FormatError,
    InputParseError,
    RoundTripError,
)
from services.input_reader import FORMATS, OUTPUT_FORMATS, InputSpec, read_values, write_values
from services.metrics import converter_cbl_report
from services.report_service import (
    histogram_line,
    render_bench_flat,
    render_bench_table,
    render_flat,
    render_kv,
    render_table,
)
from services.stream_codec import compress_stream_with_stats, decompress_stream, trace_stream

__version__ = "0.1.0"

EXIT_USAGE = 2
EXIT_DECODE = 3
EXIT_ROUND_TRIP = 4

logger = logging.getLogger("dexor")

MODE_LABELS = [m.label for m in StreamMode]


def guarded(fn):
    """Map codec errors to exit codes with a one-line message on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DecodeError as e:
            where = "" if e.byte_offset is None else f" (payload byte {e.byte_offset})"
            click.echo(f"Error: decode failed{where}: {e}", err=True)
            sys.exit(EXIT_DECODE)
        except RoundTripError as e:
            click.echo(f"Error: round-trip verification failed: {e}", err=True)
            sys.exit(EXIT_ROUND_TRIP)
        except (FormatError, InputParseError, ConfigError, AnalysisError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)
        except OSError as e:
            click.echo(f"Error: {e.strerror or e}: {e.filename or ''}".rstrip(": "), err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


def input_options(fn):
    fn = click.option("--limit", type=int, default=None, help="Read at most this many values")(fn)
    fn = click.option("--column", type=int, default=None, help="0-based column (csv input)")(fn)
    fn = click.option("--format", "-f", "input_format", default="raw64le",
                      type=click.Choice(FORMATS), help="Input format")(fn)
    return fn


def codec_options(fn):
    fn = click.option("--rho", envvar="DEXOR_RHO", type=int, default=DEFAULT_RHO, show_default=True,
                      help="Consecutive half-range fits before EL contracts")(fn)
    fn = click.option("--tolerance", envvar="DEXOR_TOLERANCE", type=float, default=DEFAULT_TOLERANCE,
                      show_default=True, help="Integrality tolerance")(fn)
    return fn


def report_option(fn):
    return click.option("--report", "report_format", default="table",
                        type=click.Choice(["table", "flat"]), help="Report layout")(fn)


@click.group()
@click.version_option(version=__version__, prog_name="dexor")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
def cli(verbose):
    """dexor - lossless decimal-XOR compression for streams of doubles."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


# ============================================
# compress
# ============================================
@cli.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@click.argument("output_path", type=click.Path(path_type=Path))
@input_options
@click.option("--mode", "-m", envvar="DEXOR_MODE", default="full", type=click.Choice(MODE_LABELS),
              help="Compression scheme")
@codec_options
@report_option
@guarded
def compress(input_path, output_path, input_format, column, limit, mode, tolerance, rho, report_format):
    """Compress INPUT_PATH into a container at OUTPUT_PATH."""
    spec = InputSpec(input_path, input_format, column, limit)
    config = CodecConfig(tolerance=tolerance, rho=rho, mode=StreamMode.from_label(mode))
    values = read_values(spec)

    t0 = time.perf_counter()
    container, stats = compress_stream_with_stats(values, config)
    elapsed = time.perf_counter() - t0
    output_path.write_bytes(container)

    if stats.value_count == 0:
        click.echo("Warning: input is empty; acb is undefined", err=True)

    fields = stats.as_flat()
    fields["container_bytes"] = len(container)
    mb_s = throughput_mb_s(stats.value_count, elapsed)
    fields["compress_mb_s"] = None if mb_s is None else round(mb_s, 3)

    if report_format == "flat":
        click.echo(render_flat(fields))
    else:
        click.echo(render_kv({k: v for k, v in fields.items() if not k.startswith("case_")}))
        if config.mode is StreamMode.FULL:
            click.echo(f"cases  {histogram_line(stats.case_histogram)}")


# ============================================
# decompress
# ============================================
@cli.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@click.argument("output_path", type=click.Path(path_type=Path))
@click.option("--format", "-f", "output_format", default="raw64le",
              type=click.Choice(OUTPUT_FORMATS), help="Output format")
@codec_options
@guarded
def decompress(input_path, output_path, output_format, tolerance, rho):
    """Decode the container at INPUT_PATH; the scheme comes from its header."""
    config = CodecConfig(tolerance=tolerance, rho=rho)
    values = decompress_stream(input_path.read_bytes(), config)
    write_values(output_path, values, output_format)
    logger.info("decoded %d values", len(values))


# ============================================
# bench
# ============================================
@cli.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@input_options
@click.option("--scheme", "-s", "schemes", multiple=True, type=click.Choice(SCHEMES),
              help="Scheme to run (repeatable; default: all)")
@codec_options
@report_option
@guarded
def bench(input_path, input_format, column, limit, schemes, tolerance, rho, report_format):
    """Compare ACB and throughput of the schemes on INPUT_PATH."""
    spec = InputSpec(input_path, input_format, column, limit)
    config = CodecConfig(tolerance=tolerance, rho=rho)
    values = read_values(spec)
    if not values:
        click.echo("Warning: input is empty; acb is undefined", err=True)

    report = run_bench(values, schemes or SCHEMES, config, source=str(input_path))
    if report_format == "flat":
        click.echo(render_bench_flat(report))
    else:
        click.echo(render_bench_table(report))


# ============================================
# analyze
# ============================================
TRACE_COLUMNS = (
    ("index", "#"),
    ("value", "Value"),
    ("path", "Case"),
    ("q", "q"),
    ("o", "o"),
    ("beta", "Suffix"),
    ("bits", "Bits"),
    ("reason", "Reason"),
)


@cli.command()
@click.argument("input_path", type=click.Path(path_type=Path))
@input_options
@codec_options
@click.option("--rows", "max_rows", type=int, default=20, show_default=True,
              help="Trace rows to print (0 for none)")
@click.option("--cbl", "show_cbl", is_flag=True, help="Also report average CBL per converter")
@guarded
def analyze(input_path, input_format, column, limit, tolerance, rho, max_rows, show_cbl):
    """Trace how the full pipeline encodes each value of INPUT_PATH."""
    spec = InputSpec(input_path, input_format, column, limit)
    config = CodecConfig(tolerance=tolerance, rho=rho)
    values = read_values(spec)

    entries = trace_stream(values, config)
    if max_rows:
        rows = [
            {
                "index": e.index,
                "value": repr(e.value),
                "path": e.path,
                "q": e.q,
                "o": e.o,
                "beta": e.beta,
                "bits": e.bits,
                "reason": e.reason,
            }
            for e in entries[:max_rows]
        ]
        click.echo(render_table(rows, TRACE_COLUMNS))

    total = sum(e.bits for e in entries)
    click.echo(f"values={len(entries)} payload_bits={total}")

    if show_cbl:
        click.echo(render_flat(converter_cbl_report(values, config).as_flat(), prefix="cbl."))


if __name__ == "__main__":
    cli()
